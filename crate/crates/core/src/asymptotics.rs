//! Limit constants: the dominant singularity, Puiseux ladders of the m-open
//! generating functions and the derived limit means.
//!
//! Near the singularity every `L_m(z)` behaves like `a_m - b_m sqrt(1 - z/ρ)`.
//! The ladder is evaluated backward from the plain values `a∞`, `b∞`:
//!
//! ```text
//! R_m = 1 - 4ρ²(1 - ρ^m)/(1 - ρ) - 4ρ² a_{m+1}
//! a_m = (1 - sqrt(R_m)) / 2ρ,   b_m = ρ b_{m+1} / sqrt(R_m)
//! ```

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use libm::{pow, sqrt};

use crate::numeric::bisect;

/// `β = 2 b∞` as printed with the unary height profile.
pub const BETA_PRINTED: f64 = 4.301868701457;

/// Default ladder depth.
pub const DEFAULT_DEPTH: usize = 64;

const PI: f64 = core::f64::consts::PI;

fn cubic(z: f64) -> f64 {
    ((z + 1.0) * z + 3.0) * z - 1.0
}

/// The positive root of `z³ + z² + 3z - 1`, by bisection then Newton.
pub fn rho() -> f64 {
    let mut z = bisect(0.0, 1.0, 1e-10, cubic);
    for _ in 0..4 {
        let d = (3.0 * z + 2.0) * z + 3.0;
        z -= cubic(z) / d;
    }
    z
}

/// `C = sqrt((ρ + 2)/π) / (2(1 - ρ))`, so that `[z^n]L∞ ~ C ρ^{-n} n^{-3/2}`.
pub fn c_plain(rho: f64) -> f64 {
    sqrt((rho + 2.0) / PI) / (2.0 * (1.0 - rho))
}

/// `L∞(ρ) = (1 - ρ)/2ρ`.
pub fn a_inf(rho: f64) -> f64 {
    (1.0 - rho) / (2.0 * rho)
}

/// `b∞` from the radicand `R(z) = (1 - z)² - 4z²/(1 - z)`:
/// `b∞ = sqrt(-ρ R'(ρ)) / 2ρ`.
pub fn b_inf_derived(rho: f64) -> f64 {
    let one = 1.0 - rho;
    let r_prime = -2.0 * one - (8.0 * rho - 4.0 * rho * rho) / (one * one);
    sqrt(-rho * r_prime) / (2.0 * rho)
}

/// Radicand of the plain equation, `(1 - z)² - 4z²/(1 - z)`; vanishes at ρ.
pub fn plain_radicand(z: f64) -> f64 {
    (1.0 - z) * (1.0 - z) - 4.0 * z * z / (1.0 - z)
}

/// Error returned when a ladder radicand goes negative (ρ too large).
#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
#[error("negative radicand {value} at ladder level {level}")]
pub struct NegativeRadicand {
    pub level: usize,
    pub value: f64,
}

/// Puiseux coefficient ladders `a_0..=a_M`, `b_0..=b_M` with `a_M = a∞` and
/// `b_M = b∞`.
pub fn puiseux_ladder(
    rho: f64,
    depth: usize,
    b_inf: f64,
) -> Result<(Vec<f64>, Vec<f64>), NegativeRadicand> {
    let mut a = vec![0.0; depth + 1];
    let mut b = vec![0.0; depth + 1];
    a[depth] = a_inf(rho);
    b[depth] = b_inf;
    let r2 = rho * rho;
    for m in (0..depth).rev() {
        // Same radicand, rewritten with (1 - ρ)² = 4ρ²/(1 - ρ) as ρ² plus
        // nonnegative terms so the ladder stays monotone under rounding.
        let radicand =
            r2 + 4.0 * r2 * pow(rho, m as f64) / (1.0 - rho) + 4.0 * r2 * (a[depth] - a[m + 1]);
        if radicand.is_nan() || radicand < 0.0 {
            return Err(NegativeRadicand {
                level: m,
                value: radicand,
            });
        }
        let s = sqrt(radicand);
        a[m] = (1.0 - s) / (2.0 * rho);
        b[m] = b[m + 1] * (rho / s);
    }
    Ok((a, b))
}

/// `sum_{k<M} (1 - b_k/b∞)`, the limit mean of the openness of a random
/// plain term.
pub fn m_openness_mean(b: &[f64], b_inf: f64) -> f64 {
    let depth = b.len() - 1;
    b[..depth].iter().map(|bk| 1.0 - bk / b_inf).sum()
}

/// Limit law of head abstractions in closed terms from
/// `b_0(u) = 2ρ sum_m (uρ)^m a_m b_m`: normalized probabilities and mean.
pub fn closed_head_abs_distribution(rho: f64, a: &[f64], b: &[f64]) -> (Vec<f64>, f64) {
    let weights: Vec<f64> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(m, (am, bm))| pow(rho, m as f64) * am * bm)
        .collect();
    let total: f64 = weights.iter().sum();
    let probs: Vec<f64> = weights.iter().map(|w| w / total).collect();
    let mean = probs.iter().enumerate().map(|(m, p)| m as f64 * p).sum();
    (probs, mean)
}

/// `b_0(1) = 2ρ sum_m ρ^m a_m b_m`, which must reproduce `b_0`.
pub fn closed_head_abs_total(rho: f64, a: &[f64], b: &[f64]) -> f64 {
    2.0 * rho
        * a.iter()
            .zip(b)
            .enumerate()
            .map(|(m, (am, bm))| pow(rho, m as f64) * am * bm)
            .sum::<f64>()
}

/// Limit mean of the leftmost-outermost search cost, `g'(1)/g(1)` where
/// `g(u)` is the `P`-derivative of the marked solution
/// `F(P, u) = (zuMP - (zuP)² - zu/(1 - z)) / (zuM - (1 - zuP)(1 - zu))`
/// at `z = ρ`, `P = a∞`, with `M = M(zu)` the neutral-term series.
/// Differentiated in `u` with dual numbers.
pub fn lo_mean_plain(rho: f64) -> f64 {
    let p = Dual::constant(a_inf(rho));
    let zu = Dual { v: rho, d: rho };
    let one = Dual::constant(1.0);
    let x = zu;
    let m = (one - x - ((one + x) * (one - x * 3.0)).sqrt()) / (x * 2.0);
    let n = zu * m * p - zu * zu * p * p - zu * (1.0 / (1.0 - rho));
    let d = zu * m - (one - zu * p) * (one - zu);
    let n_p = zu * m - zu * zu * p * 2.0;
    let d_p = zu * (one - zu);
    let g = (n_p * d - n * d_p) / (d * d);
    g.d / g.v
}

#[derive(Clone, Copy)]
struct Dual {
    v: f64,
    d: f64,
}

impl Dual {
    fn constant(v: f64) -> Self {
        Dual { v, d: 0.0 }
    }

    fn sqrt(self) -> Self {
        let r = sqrt(self.v);
        Dual {
            v: r,
            d: self.d / (2.0 * r),
        }
    }
}

impl core::ops::Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual {
            v: self.v + o.v,
            d: self.d + o.d,
        }
    }
}

impl core::ops::Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual {
            v: self.v - o.v,
            d: self.d - o.d,
        }
    }
}

impl core::ops::Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual {
            v: self.v * o.v,
            d: self.d * o.v + self.v * o.d,
        }
    }
}

impl core::ops::Mul<f64> for Dual {
    type Output = Dual;
    fn mul(self, k: f64) -> Dual {
        Dual {
            v: self.v * k,
            d: self.d * k,
        }
    }
}

impl core::ops::Div for Dual {
    type Output = Dual;
    fn div(self, o: Dual) -> Dual {
        Dual {
            v: self.v / o.v,
            d: (self.d * o.v - self.v * o.d) / (o.v * o.v),
        }
    }
}

/// `M(x) = (1 - x - sqrt((1 + x)(1 - 3x))) / 2x`.
pub fn neutral_gf(x: f64) -> f64 {
    (1.0 - x - sqrt((1.0 + x) * (1.0 - 3.0 * x))) / (2.0 * x)
}

/// Limit mean number of free variables in a plain term.
pub fn free_var_mean(rho: f64) -> f64 {
    2.0 / pow(1.0 - rho, 3.0)
}

/// Named constants with the accuracy each one is claimed to.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Constant {
    pub value: f64,
    pub tolerance: f64,
}

/// Everything the limit analysis produces.
#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticTable {
    pub rho: f64,
    pub c_plain: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub a_inf: f64,
    pub b_inf: f64,
    pub b_inf_derived: f64,
    pub derived: BTreeMap<&'static str, Constant>,
}

impl AsymptoticTable {
    pub fn new(depth: usize) -> Result<Self, NegativeRadicand> {
        let rho = rho();
        let b_inf = BETA_PRINTED / 2.0;
        let (a, b) = puiseux_ladder(rho, depth, b_inf)?;
        let (_, closed_head_mean) = closed_head_abs_distribution(rho, &a, &b);
        let beta = 2.0 * b_inf;
        let mut derived = BTreeMap::new();
        let mut put = |name, value, tolerance| {
            derived.insert(name, Constant { value, tolerance });
        };
        put("rho", rho, 1e-12);
        put("C_plain", c_plain(rho), 1e-12);
        put("a_inf", a_inf(rho), 1e-12);
        put("b_inf", b_inf, 1e-12);
        put("head_abs_mean_plain", rho / (1.0 - rho), 1e-12);
        put("head_abs_mean_closed", closed_head_mean, 1e-9);
        put("lo_mean_plain", lo_mean_plain(rho), 1e-8);
        put("free_var_mean", free_var_mean(rho), 1e-12);
        put("m_openness_mean", m_openness_mean(&b, b_inf), 1e-9);
        put("closed_density", b[0] / b_inf, 1e-12);
        put("height_unary_C", beta, 1e-12);
        put("height_natural_C", beta * rho, 1e-12);
        put("index_value_ratio", rho, 1e-12);
        put(
            "profile_amplitude_unary_variables",
            (1.0 - rho) / rho,
            1e-12,
        );
        put(
            "profile_amplitude_unary_abstractions",
            (1.0 - rho) * (1.0 - rho) / (2.0 * rho * rho),
            1e-12,
        );
        put(
            "profile_amplitude_natural_variables",
            rho * (1.0 - rho),
            1e-12,
        );
        put(
            "profile_amplitude_natural_abstractions",
            (1.0 - rho) * (1.0 - rho) / 2.0,
            1e-12,
        );
        Ok(AsymptoticTable {
            rho,
            c_plain: c_plain(rho),
            a,
            b,
            a_inf: a_inf(rho),
            b_inf,
            b_inf_derived: b_inf_derived(rho),
            derived,
        })
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.derived.get(name).map(|c| c.value)
    }

    /// Depth of the ladder.
    pub fn depth(&self) -> usize {
        self.a.len() - 1
    }

    /// Mean height (unary, scaled by `β`) of a random node, `sqrt(πn)/β`.
    pub fn mean_unary_height(&self, n: f64) -> f64 {
        sqrt(PI * n) / (2.0 * self.b_inf)
    }

    /// Mode of the unary height profile, `sqrt(2n)/β`.
    pub fn peak_unary_height(&self, n: f64) -> f64 {
        sqrt(2.0 * n) / (2.0 * self.b_inf)
    }
}

/// Values `L_0(z)..=L_M(z)` of the m-open ladder at `0 < z <= ρ`, with
/// `L_M(z)` replaced by the plain value.
pub fn ladder_values(z: f64, depth: usize) -> Vec<f64> {
    let top = plain_value(z);
    values_below(z, depth, top)
}

/// `L∞(z) = (1 - z - sqrt(R(z))) / 2z`, the radicand clamped at 0.
pub fn plain_value(z: f64) -> f64 {
    (1.0 - z - sqrt(plain_radicand(z).max(0.0))) / (2.0 * z)
}

fn values_below(z: f64, top_level: usize, top: f64) -> Vec<f64> {
    let mut l = vec![0.0; top_level + 1];
    l[top_level] = top;
    for m in (0..top_level).rev() {
        let supply = z * (1.0 - pow(z, m as f64)) / (1.0 - z);
        let radicand = 1.0 - 4.0 * z * (z * l[m + 1] + supply);
        l[m] = (1.0 - sqrt(radicand.max(0.0))) / (2.0 * z);
    }
    l
}

/// Radicand of the saturated level of the h-shallow system,
/// `(1 - z)² - 4z²(1 - z^{h+1})/(1 - z)`.
pub fn shallow_radicand(z: f64, h: usize) -> f64 {
    (1.0 - z) * (1.0 - z) - 4.0 * z * z * (1.0 - pow(z, (h + 1) as f64)) / (1.0 - z)
}

/// Dominant singularity of the h-shallow system, where the saturated
/// level's radicand vanishes.
pub fn shallow_rho(h: usize) -> f64 {
    bisect(1e-9, 0.5, 1e-15, |z| shallow_radicand(z, h))
}

/// Values `L_0(z)..=L_{h+1}(z)` of the h-shallow system.
pub fn shallow_values(z: f64, h: usize) -> Vec<f64> {
    let s = z * (1.0 - pow(z, (h + 1) as f64)) / (1.0 - z);
    let top = (1.0 - z - sqrt(shallow_radicand(z, h).max(0.0))) / (2.0 * z);
    debug_assert!(top.is_finite() && s >= 0.0);
    values_below(z, h + 1, top)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_is_root() {
        let r = rho();
        assert!(cubic(r).abs() < 1e-12);
        assert!((r - 0.29559774).abs() < 1e-8);
        assert!((1.0 / r - 3.38298).abs() < 1e-5);
    }

    #[test]
    fn radicand_vanishes_at_rho() {
        let r = rho();
        assert!(((1.0 - r) * (1.0 - r) - 4.0 * r * r / (1.0 - r)).abs() < 1e-10);
        assert!((plain_value(r) - a_inf(r)).abs() < 1e-9);
    }

    #[test]
    fn shallow_rho_limits() {
        assert!((shallow_rho(0) - 1.0 / 3.0).abs() < 1e-12);
        assert!((shallow_rho(60) - rho()).abs() < 1e-12);
        assert!(shallow_rho(3) > shallow_rho(4));
    }
}
