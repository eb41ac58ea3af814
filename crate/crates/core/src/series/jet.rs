use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

/// Truncated Taylor jet in `D` marks around `u = 1`.
///
/// Marks enter as `u_i = 1 + e_i` and products drop every monomial in the
/// `e_i` of total degree above `J` (1 or 2). The coefficients are then
/// factorial moments: for a class weighted by `prod u_i^{X_i}`, the constant
/// term is the count, `[e_i]` is `sum X_i`, `[e_i^2]` is `sum C(X_i, 2)` and
/// `[e_i e_j]` (`i < j`) is `sum X_i X_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet<const D: usize, const J: usize> {
    coeffs: Vec<BigInt>,
}

impl<const D: usize, const J: usize> Jet<D, J> {
    const LEN: usize = {
        assert!(J == 1 || J == 2, "jet degree must be 1 or 2");
        assert!(D >= 1);
        if J == 2 {
            1 + D + D * (D + 1) / 2
        } else {
            1 + D
        }
    };

    fn quad(i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        (1 + D + i * D + j) - i * i.saturating_sub(1) / 2 - i
    }

    /// Number of objects (all marks at 1).
    pub fn constant(&self) -> &BigInt {
        &self.coeffs[0]
    }

    /// `sum X_i`.
    pub fn linear(&self, i: usize) -> &BigInt {
        &self.coeffs[1 + i]
    }

    /// `sum C(X_i, 2)` when `i == j`, else `sum X_i X_j`.
    pub fn quadratic(&self, i: usize, j: usize) -> &BigInt {
        assert!(J == 2, "quadratic terms need a degree-2 jet");
        &self.coeffs[Self::quad(i, j)]
    }
}

impl<const D: usize, const J: usize> super::Coefficient for Jet<D, J> {
    fn nil() -> Self {
        Jet {
            coeffs: vec![BigInt::zero(); Self::LEN],
        }
    }

    fn unit() -> Self {
        let mut j = Self::nil();
        j.coeffs[0] = BigInt::from(1);
        j
    }

    fn from_int(k: BigInt) -> Self {
        let mut j = Self::nil();
        j.coeffs[0] = k;
        j
    }

    fn mark(i: usize) -> Self {
        assert!(i < D, "mark {i} out of range for a {D}-mark jet");
        let mut j = Self::unit();
        j.coeffs[1 + i] = BigInt::from(1);
        j
    }

    fn is_nil(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    fn sub_assign(&mut self, other: &Self) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::nil();
        out.add_mul(self, other);
        out
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        let (a, b, out) = (&a.coeffs, &b.coeffs, &mut self.coeffs);
        let a0 = !a[0].is_zero();
        let b0 = !b[0].is_zero();
        if a0 && b0 {
            out[0] += &a[0] * &b[0];
        }
        for i in 1..=D {
            if a0 && !b[i].is_zero() {
                out[i] += &a[0] * &b[i];
            }
            if b0 && !a[i].is_zero() {
                out[i] += &a[i] * &b[0];
            }
        }
        if J == 2 {
            for i in 0..D {
                for j in i..D {
                    let q = Self::quad(i, j);
                    let mut acc = BigInt::zero();
                    if a0 && !b[q].is_zero() {
                        acc += &a[0] * &b[q];
                    }
                    if b0 && !a[q].is_zero() {
                        acc += &a[q] * &b[0];
                    }
                    if !a[1 + i].is_zero() && !b[1 + j].is_zero() {
                        acc += &a[1 + i] * &b[1 + j];
                    }
                    if i != j && !a[1 + j].is_zero() && !b[1 + i].is_zero() {
                        acc += &a[1 + j] * &b[1 + i];
                    }
                    out[q] += acc;
                }
            }
        }
    }

    fn add_mul_int(&mut self, a: &Self, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for (s, c) in self.coeffs.iter_mut().zip(&a.coeffs) {
            if !c.is_zero() {
                *s += c * k;
            }
        }
    }

    fn at_one(&self) -> BigInt {
        self.coeffs[0].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Coefficient;

    #[test]
    fn quad_layout_is_dense() {
        let mut seen = Vec::new();
        for i in 0..4 {
            for j in i..4 {
                seen.push(Jet::<4, 2>::quad(i, j));
            }
        }
        let expected: Vec<usize> = (5..15).collect();
        assert_eq!(seen, expected);
        assert_eq!(Jet::<4, 2>::LEN, 15);
    }

    #[test]
    fn factorial_moments_of_powers() {
        // u^3 = (1 + e)^3 -> 1 + 3e + 3e^2 (C(3,2) = 3).
        let u = Jet::<1, 2>::mark(0);
        let u3 = u.mul(&u).mul(&u);
        assert_eq!(u3.constant(), &BigInt::from(1));
        assert_eq!(u3.linear(0), &BigInt::from(3));
        assert_eq!(u3.quadratic(0, 0), &BigInt::from(3));
        // u0^2 u1 -> cross term X0 X1 = 2.
        let v = Jet::<2, 2>::mark(0);
        let w = Jet::<2, 2>::mark(1);
        let p = v.mul(&v).mul(&w);
        assert_eq!(p.quadratic(0, 1), &BigInt::from(2));
        assert_eq!(p.quadratic(0, 0), &BigInt::from(1));
        assert_eq!(p.quadratic(1, 1), &BigInt::from(0));
    }
}
