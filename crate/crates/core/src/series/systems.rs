//! The generating-function systems: plain terms, normal forms, truncated
//! closed ladders and their parameter-marked variants.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::coefficient::powers;
use super::ladder::{conv, conv_int, Ladder, Level};
use super::{Coefficient, Series, SeriesError};

/// Term class a series counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// All terms.
    Plain,
    /// m-open terms; `Open(0)` is the closed terms.
    Open(usize),
}

impl Family {
    pub const CLOSED: Family = Family::Open(0);
}

/// Marked parameters with a bivariate generating function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parameter {
    Variables,
    Redexes,
    Successors,
    Abstractions,
    HeadAbstractions,
    LoCost,
    /// Pooled over occurrences: the weight of a term is its index-value
    /// profile, so `[z^n u^k]` counts occurrences of index `k`.
    IndexValues,
    FreeVariables,
}

impl Parameter {
    pub const ALL: [Parameter; 8] = [
        Parameter::Variables,
        Parameter::Redexes,
        Parameter::Successors,
        Parameter::Abstractions,
        Parameter::HeadAbstractions,
        Parameter::LoCost,
        Parameter::IndexValues,
        Parameter::FreeVariables,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Parameter::Variables => "variables",
            Parameter::Redexes => "redexes",
            Parameter::Successors => "successors",
            Parameter::Abstractions => "abstractions",
            Parameter::HeadAbstractions => "head_abs",
            Parameter::LoCost => "lo_cost",
            Parameter::IndexValues => "index_value_profile",
            Parameter::FreeVariables => "free_variables",
        }
    }
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown parameter {0:?}")]
pub struct UnknownParameter(pub alloc::string::String);

impl FromStr for Parameter {
    type Err = UnknownParameter;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "variables" => Parameter::Variables,
            "redexes" => Parameter::Redexes,
            "successors" => Parameter::Successors,
            "abstractions" => Parameter::Abstractions,
            "head_abs" | "head_abstractions" => Parameter::HeadAbstractions,
            "lo_cost" => Parameter::LoCost,
            "index_value_profile" | "index_values" => Parameter::IndexValues,
            "free_variables" => Parameter::FreeVariables,
            other => return Err(UnknownParameter(other.into())),
        })
    }
}

fn int(k: u64) -> BigInt {
    BigInt::from(k)
}

/// Plain terms `L = zL + zL^2 + z/(1 - z)` by coefficient iteration.
pub fn solve_plain(order: usize) -> Series<BigInt> {
    closed_ladder(order, 0).limit_series(0)
}

/// Plain terms from the explicit radical
/// `(1 - z - sqrt((1 - z)^2 - 4z^2/(1 - z))) / (2z)`.
pub fn plain_closed_form(order: usize) -> Result<Series<BigInt>, SeriesError> {
    let o = order + 1;
    let one = Series::<BigRational>::one(o);
    let z = Series::<BigRational>::z(o);
    let one_minus_z = one.sub(&z);
    let four_z2 = z.mul(&z).scale(&BigRational::from_integer(int(4)));
    let radicand = one_minus_z
        .mul(&one_minus_z)
        .sub(&four_z2.mul(&one_minus_z.reciprocal()?));
    let numerator = one_minus_z.sub(&radicand.sqrt()?);
    let half = BigRational::new(BigInt::one(), int(2));
    numerator.div_z().scale(&half).to_integer()
}

/// β-normal forms `N` and neutral terms `M`:
/// `N = zN + M`, `M = zMN + z/(1 - z)`.
pub fn solve_normal_forms(order: usize) -> (Series<BigInt>, Series<BigInt>) {
    let l = normal_ladder(order, 0);
    (l.limit_series(0), l.limit_series(1))
}

/// Neutral terms from `M = (1 - z - sqrt((1 + z)(1 - 3z))) / (2z)`.
pub fn neutral_closed_form(order: usize) -> Result<Series<BigInt>, SeriesError> {
    let o = order + 1;
    let one = Series::<BigRational>::one(o);
    let z = Series::<BigRational>::z(o);
    let three_z = z.scale(&BigRational::from_integer(int(3)));
    let radicand = one.add(&z).mul(&one.sub(&three_z));
    let numerator = one.sub(&z).sub(&radicand.sqrt()?);
    let half = BigRational::new(BigInt::one(), int(2));
    numerator.div_z().scale(&half).to_integer()
}

/// Unmarked m-open ladder `L_m = zL_{m+1} + zL_m^2 + z(1 - z^m)/(1 - z)`
/// closed by the plain equation.
pub(crate) fn closed_ladder(order: usize, depth: usize) -> Ladder<BigInt> {
    Ladder::solve(order, depth, 1, |level, n, here, next| {
        if n == 0 {
            return vec![BigInt::from(0)];
        }
        let mut c = next[0][n - 1].clone();
        c += conv(&here[0], &here[0], n - 1);
        if level.index_available(n) {
            c += 1;
        }
        vec![c]
    })
}

/// m-open normal forms and neutral terms: unknowns `[N_m, M_m]`.
pub(crate) fn normal_ladder(order: usize, depth: usize) -> Ladder<BigInt> {
    Ladder::solve(order, depth, 2, |level, n, here, next| {
        if n == 0 {
            return vec![BigInt::from(0), BigInt::from(0)];
        }
        let mut m = conv(&here[1], &here[0], n - 1);
        if level.index_available(n) {
            m += 1;
        }
        let nf = &next[0][n - 1] + &m;
        vec![nf, m]
    })
}

/// The truncated closed system: levels `0..depth` of the m-open ladder
/// closed by the plain equation. Level `m` counts m-open terms and is kept
/// to order `order - m`.
#[derive(Clone, Debug)]
pub struct TruncatedSystem {
    requested_depth: usize,
    ladder: Ladder<BigInt>,
}

impl TruncatedSystem {
    pub fn solve(order: usize, depth: usize) -> Self {
        assert!(depth >= 1, "truncation depth must be positive");
        TruncatedSystem {
            requested_depth: depth,
            ladder: closed_ladder(order, depth),
        }
    }

    pub fn order(&self) -> usize {
        self.ladder.order()
    }

    pub fn depth(&self) -> usize {
        self.requested_depth
    }

    /// Levels actually solved before the closure (the depth, capped at the
    /// order).
    pub fn solved_depth(&self) -> usize {
        self.ladder.depth()
    }

    /// `L_m`; levels at or past the solved depth return the closure.
    pub fn level(&self, m: usize) -> Series<BigInt> {
        self.ladder.series(m, 0)
    }

    /// The closing series (plain terms).
    pub fn limit(&self) -> Series<BigInt> {
        self.ladder.limit_series(0)
    }

    /// Closed terms.
    pub fn closed(&self) -> Series<BigInt> {
        self.level(0)
    }
}

/// Closed terms whose indices never exceed `h`: levels `m <= h` follow the
/// m-open ladder and level `h + 1` saturates the index supply at `h + 1`
/// values.
pub fn solve_h_shallow(order: usize, h: usize) -> Series<BigInt> {
    let saturated = Level::Finite(h + 1);
    Ladder::solve(order, h + 1, 1, |level, n, here, next| {
        if n == 0 {
            return vec![BigInt::from(0)];
        }
        let supply = match level {
            Level::Limit => saturated,
            l => l,
        };
        let mut c = next[0][n - 1].clone();
        c += conv(&here[0], &here[0], n - 1);
        if supply.index_available(n) {
            c += 1;
        }
        vec![c]
    })
    .series(0, 0)
}

fn ladder_for(family: Family, order: usize, depth: usize) -> (usize, usize, usize) {
    match family {
        Family::Plain => (order, 0, 0),
        Family::Open(m) => (order + m, depth + m, m),
    }
}

/// Default truncation depth for an exact series of the given order.
pub fn default_depth(order: usize) -> usize {
    order.max(1)
}

/// Joint marking `[u_var, u_red, u_suc, u_abs]` (variables, redexes,
/// successors, abstractions):
/// `L_m = u_abs z L_{m+1} + A_m`,
/// `A_m = u_var sum_{j<m} u_suc^j z^{j+1} + u_red u_abs z^2 L_m L_{m+1} + z A_m L_m`.
pub fn solve_joint<C: Coefficient>(
    marks: &[C; 4],
    family: Family,
    order: usize,
    depth: usize,
) -> Series<C> {
    let [u_var, u_red, u_suc, u_abs] = marks;
    let (lo, ld, read) = ladder_for(family, order, depth);
    let suc_pow = powers(u_suc, lo);
    let redex = u_red.mul(u_abs);
    let index: Vec<C> = suc_pow.iter().map(|p| u_var.mul(p)).collect();
    Ladder::solve(lo, ld, 2, |level, n, here, next| {
        if n == 0 {
            return vec![C::nil(), C::nil()];
        }
        let (l_here, a_here, l_next) = (&here[0], &here[1], &next[0]);
        let mut a = conv(a_here, l_here, n - 1);
        if n >= 2 {
            let r = conv(l_next, l_here, n - 2);
            a.add_mul(&redex, &r);
        }
        if level.index_available(n) {
            a.add_assign(&index[n - 1]);
        }
        let mut l = a.clone();
        l.add_mul(u_abs, &l_next[n - 1]);
        vec![l, a]
    })
    .series(read, 0)
}

/// Marks for a single joint parameter, the others held at 1.
pub fn single_marks<C: Coefficient>(parameter: Parameter) -> Option<[C; 4]> {
    let slot = match parameter {
        Parameter::Variables => 0,
        Parameter::Redexes => 1,
        Parameter::Successors => 2,
        Parameter::Abstractions => 3,
        _ => return None,
    };
    let mut marks = [C::unit(), C::unit(), C::unit(), C::unit()];
    marks[slot] = C::mark(0);
    Some(marks)
}

/// The bivariate series of `parameter` over `family`, mark `u = C::mark(0)`.
/// `depth` is the truncation depth for open families (ignored for plain,
/// except by the free-variable ladder which always needs one).
pub fn solve_marked<C: Coefficient>(
    parameter: Parameter,
    family: Family,
    order: usize,
    depth: usize,
) -> Series<C> {
    if let Some(marks) = single_marks::<C>(parameter) {
        return solve_joint(&marks, family, order, depth);
    }
    match parameter {
        Parameter::HeadAbstractions => head_abstractions(family, order, depth),
        Parameter::LoCost => lo_cost(family, order, depth),
        Parameter::IndexValues => index_values(family, order, depth),
        Parameter::FreeVariables => free_variables(family, order, depth),
        _ => unreachable!("joint parameters handled above"),
    }
}

/// `L_m(z,u) = zu L_{m+1}(z,u) + z L_m(z,1)^2 + z(1 - z^m)/(1 - z)`.
fn head_abstractions<C: Coefficient>(family: Family, order: usize, depth: usize) -> Series<C> {
    let (lo, ld, read) = ladder_for(family, order, depth);
    let support = closed_ladder(lo, ld);
    let u = C::mark(0);
    Ladder::solve(lo, ld, 1, |level, n, _here, next| {
        if n == 0 {
            return vec![C::nil()];
        }
        let p = &support.level(level)[0];
        let mut apps: BigInt = conv(p, p, n - 1);
        if level.index_available(n) {
            apps += 1;
        }
        let mut l = C::from_int(apps);
        l.add_mul(&u, &next[0][n - 1]);
        vec![l]
    })
    .series(read, 0)
}

/// Index-value profile `E_m = zE_{m+1} + 2zL_mE_m + z(1 - (wz)^m)/(1 - wz)`.
fn index_values<C: Coefficient>(family: Family, order: usize, depth: usize) -> Series<C> {
    let (lo, ld, read) = ladder_for(family, order, depth);
    let support = closed_ladder(lo, ld);
    let w_pow = powers(&C::mark(0), lo);
    let two = int(2);
    Ladder::solve(lo, ld, 1, |level, n, here, next| {
        if n == 0 {
            return vec![C::nil()];
        }
        let p = &support.level(level)[0];
        let apps: C = conv_int(&here[0], p, n - 1);
        let mut e = next[0][n - 1].clone();
        e.add_mul_int(&apps, &two);
        if level.index_available(n) {
            e.add_assign(&w_pow[n - 1]);
        }
        vec![e]
    })
    .series(read, 0)
}

/// Leftmost-outermost search cost, unknowns `[L, A, Q, F]`:
/// `Q_m = zu D_m + zu Q_m F_m` (neutral terms, weight = node count = cost),
/// `F_m = zu F_{m+1} + Q_m` (normal forms),
/// `A_m = zu D_m + z^2u^2 L_{m+1}(1) L_m(1) + zu Q_m L_m + zu (A_m - Q_m) L_m(1)`,
/// `L_m = zu L_{m+1} + A_m`, with `D_m` the index block.
fn lo_cost<C: Coefficient>(family: Family, order: usize, depth: usize) -> Series<C> {
    let (lo, ld, read) = ladder_for(family, order, depth);
    let support = closed_ladder(lo, ld);
    let u = C::mark(0);
    let u2 = u.mul(&u);
    Ladder::solve(lo, ld, 4, |level, n, here, next| {
        if n == 0 {
            return vec![C::nil(), C::nil(), C::nil(), C::nil()];
        }
        let p_here = &support.level(level)[0];
        let p_next = &support.level(match level {
            Level::Finite(m) => Level::Finite(m + 1),
            Level::Limit => Level::Limit,
        })[0];
        let (l, a, q, f) = (&here[0], &here[1], &here[2], &here[3]);
        let index = level.index_available(n);

        let mut q_n = conv(q, f, n - 1);
        if index {
            q_n.add_assign(&C::unit());
        }
        let q_n = q_n.mul(&u);
        let mut f_n = q_n.clone();
        f_n.add_mul(&u, &next[3][n - 1]);

        let mut a_n = conv(q, l, n - 1);
        a_n.add_assign(&conv_int(a, p_here, n - 1));
        a_n.sub_assign(&conv_int(q, p_here, n - 1));
        if index {
            a_n.add_assign(&C::unit());
        }
        let mut a_n = a_n.mul(&u);
        if n >= 2 {
            let redexes: BigInt = conv(p_next, p_here, n - 2);
            a_n.add_mul_int(&u2, &redexes);
        }
        let mut l_n = a_n.clone();
        l_n.add_mul(&u, &next[0][n - 1]);
        vec![l_n, a_n, q_n, f_n]
    })
    .series(read, 0)
}

/// Free variables. Level `d` holds terms under `d` binders inside an
/// m-open (or plain) term: indices below `d` are bound, the next `m` (or
/// all further) ones are free and marked. The closure is the unmarked plain
/// equation, exact below order `2 * depth`.
fn free_variables<C: Coefficient>(family: Family, order: usize, depth: usize) -> Series<C> {
    let open = match family {
        Family::Plain => None,
        Family::Open(m) => Some(m),
    };
    let u = C::mark(0);
    Ladder::solve(order, depth.max(1), 1, |level, n, here, next| {
        if n == 0 {
            return vec![C::nil()];
        }
        let mut l = next[0][n - 1].clone();
        l.add_assign(&conv(&here[0], &here[0], n - 1));
        if level.index_available(n) {
            l.add_assign(&C::unit());
        }
        if let Level::Finite(d) = level {
            let value = n - 1;
            let free = value >= d && open.map_or(true, |m| value < d + m);
            if free {
                l.add_assign(&u);
            }
        }
        vec![l]
    })
    .series(0, 0)
}

/// Node kinds for height profiles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Variables,
    Abstractions,
    Applications,
}

/// Unary height counts abstraction ancestors; natural height counts all.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Height {
    Unary,
    Natural,
}

/// Series whose `[z^n]` is the number of `kind` nodes at height `k`, summed
/// over all terms of size `n` in `family`.
///
/// Unary: `U_{m,k} = [k=0] S_m + zU_{m+1,k-1} + 2zL_mU_{m,k}`;
/// natural: `V_{m,k} = [k=0] S_m + zV_{m+1,k-1} + 2zL_mV_{m,k-1}`;
/// seeds `S_m` are the index block, `zL_{m+1}` or `zL_m^2`.
pub fn level_profile_series(
    kind: NodeKind,
    height: Height,
    k: usize,
    family: Family,
    order: usize,
    depth: usize,
) -> Series<BigInt> {
    let (lo, ld, read) = ladder_for(family, order, depth);
    let support = closed_ladder(lo, ld);
    let two = int(2);
    Ladder::solve(lo, ld, k + 1, |level, n, here, next| {
        let mut out = vec![BigInt::from(0); k + 1];
        if n == 0 {
            return out;
        }
        let p = &support.level(level)[0];
        for j in 0..=k {
            let mut c = BigInt::from(0);
            if j == 0 {
                c += match kind {
                    NodeKind::Variables => BigInt::from(u8::from(level.index_available(n))),
                    NodeKind::Abstractions => {
                        let p_next = &support.level(match level {
                            Level::Finite(m) => Level::Finite(m + 1),
                            Level::Limit => Level::Limit,
                        })[0];
                        p_next[n - 1].clone()
                    }
                    NodeKind::Applications => conv(p, p, n - 1),
                };
            } else {
                c += &next[j - 1][n - 1];
            }
            let spine = match height {
                Height::Unary => Some(j),
                Height::Natural => j.checked_sub(1),
            };
            if let Some(s) = spine {
                let t: BigInt = conv(&here[s], p, n - 1);
                c += t * &two;
            }
            out[j] = c;
        }
        out
    })
    .series(read, k)
}
