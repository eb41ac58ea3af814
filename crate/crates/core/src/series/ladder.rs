//! Coefficient-by-coefficient solver for forward-recursive systems.
//!
//! A ladder has levels `0..depth` and a closing limit level. Each level holds
//! several unknown series. Every equation is guarded by a factor `z`, so the
//! coefficient of `z^n` at level `m` only needs coefficients below `n` at
//! levels `m` and `m + 1`. Level `m` is solved up to order `order - m`, which
//! is all level 0 needs; the limit level refers to itself as its successor.

use alloc::vec::Vec;

use super::{Coefficient, Series};

/// Where a step is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    /// Level `m` of the truncated system.
    Finite(usize),
    /// The closing equation.
    Limit,
}

impl Level {
    /// `[z^n]` of the index block `z(1 - z^m)/(1 - z)` (or `z/(1 - z)` at the
    /// limit): whether an index of size `n` is available here.
    pub fn index_available(self, n: usize) -> bool {
        match self {
            Level::Finite(m) => n >= 1 && n <= m,
            Level::Limit => n >= 1,
        }
    }
}

/// Solutions per level; `unknowns[u][n]` is `[z^n]` of unknown `u`.
#[derive(Clone, Debug)]
pub struct Ladder<C> {
    order: usize,
    depth: usize,
    levels: Vec<Vec<Vec<C>>>,
}

impl<C: Coefficient> Ladder<C> {
    /// `step(level, n, here, next)` returns the `z^n` coefficients of every
    /// unknown at `level`, given lower coefficients of this level (`here`)
    /// and of the next one (`next`). A depth above the order is clamped: the
    /// extra levels cannot influence any kept coefficient.
    pub fn solve<F>(order: usize, depth: usize, unknowns: usize, step: F) -> Self
    where
        F: Fn(Level, usize, &[Vec<C>], &[Vec<C>]) -> Vec<C>,
    {
        let depth = depth.min(order);
        let mut levels: Vec<Vec<Vec<C>>> = (0..=depth)
            .map(|m| {
                (0..unknowns)
                    .map(|_| Vec::with_capacity(order - m.min(order) + 1))
                    .collect()
            })
            .collect();
        for n in 0..=order - depth {
            let here = &levels[depth];
            let v = step(Level::Limit, n, here, here);
            debug_assert_eq!(v.len(), unknowns);
            for (u, c) in v.into_iter().enumerate() {
                levels[depth][u].push(c);
            }
        }
        for n in 0..=order {
            for m in (0..depth).rev() {
                if n > order - m {
                    continue;
                }
                let (lo, hi) = levels.split_at_mut(m + 1);
                let v = step(Level::Finite(m), n, &lo[m], &hi[0]);
                for (u, c) in v.into_iter().enumerate() {
                    lo[m][u].push(c);
                }
            }
        }
        Ladder {
            order,
            depth,
            levels,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Effective depth (index of the limit level).
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Unknowns at `level`; levels at or beyond the depth read the limit.
    pub fn level(&self, level: Level) -> &[Vec<C>] {
        match level {
            Level::Finite(m) if m < self.depth => &self.levels[m],
            _ => &self.levels[self.depth],
        }
    }

    /// Unknown `u` at level `m` as a series of order `order - m`.
    pub fn series(&self, m: usize, u: usize) -> Series<C> {
        Series::from_coeffs(self.levels[m.min(self.depth)][u].clone())
    }

    pub fn limit_series(&self, u: usize) -> Series<C> {
        Series::from_coeffs(self.levels[self.depth][u].clone())
    }

    pub fn into_levels(self) -> Vec<Vec<Vec<C>>> {
        self.levels
    }
}

/// `sum_{k} a[k] * b[n - k]` over the available coefficients.
pub(crate) fn conv<C: Coefficient>(a: &[C], b: &[C], n: usize) -> C {
    let mut acc = C::nil();
    if a.is_empty() || b.is_empty() {
        return acc;
    }
    let lo = n.saturating_sub(b.len() - 1);
    let hi = n.min(a.len() - 1);
    for k in lo..=hi {
        acc.add_mul(&a[k], &b[n - k]);
    }
    acc
}

/// `sum_{k} a[k] * b[n - k]` with integer right factors.
pub(crate) fn conv_int<C: Coefficient>(a: &[C], b: &[num_bigint::BigInt], n: usize) -> C {
    let mut acc = C::nil();
    if a.is_empty() || b.is_empty() {
        return acc;
    }
    let lo = n.saturating_sub(b.len() - 1);
    let hi = n.min(a.len() - 1);
    for k in lo..=hi {
        acc.add_mul_int(&a[k], &b[n - k]);
    }
    acc
}
