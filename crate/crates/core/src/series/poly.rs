use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

/// Polynomial in a single mark `u` with exact integer coefficients,
/// `coeffs[k]` being the coefficient of `u^k`. Used for exact distributions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `(k, [u^k])` for every nonzero coefficient.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as u64, c))
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl super::Coefficient for Poly {
    fn nil() -> Self {
        Poly { coeffs: Vec::new() }
    }

    fn unit() -> Self {
        Poly {
            coeffs: vec![BigInt::from(1)],
        }
    }

    fn from_int(k: BigInt) -> Self {
        Poly::from_coeffs(vec![k])
    }

    /// Only one mark exists; every index names `u`.
    fn mark(_: usize) -> Self {
        Poly {
            coeffs: vec![BigInt::zero(), BigInt::from(1)],
        }
    }

    fn is_nil(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_assign(&mut self, other: &Self) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        self.trim();
    }

    fn sub_assign(&mut self, other: &Self) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
        self.trim();
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_nil() || other.is_nil() {
            return Self::nil();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }

    fn add_mul_int(&mut self, a: &Self, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        if self.coeffs.len() < a.coeffs.len() {
            self.coeffs.resize(a.coeffs.len(), BigInt::zero());
        }
        for (s, c) in self.coeffs.iter_mut().zip(&a.coeffs) {
            *s += c * k;
        }
        self.trim();
    }

    fn at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}
