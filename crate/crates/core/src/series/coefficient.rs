use core::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Coefficient ring of a power series in `z`.
///
/// Marked systems are written once over this trait. A mark `u` enters as
/// [`Coefficient::mark`]; for plain integers the mark is `1`, so solving a
/// marked system over [`BigInt`] yields the unmarked counts.
pub trait Coefficient: Clone + PartialEq + Debug {
    fn nil() -> Self;
    fn unit() -> Self;
    fn from_int(k: BigInt) -> Self;
    /// The `i`-th marking variable.
    fn mark(i: usize) -> Self;
    fn is_nil(&self) -> bool;
    fn add_assign(&mut self, other: &Self);
    fn sub_assign(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;
    /// `self += a * b`.
    fn add_mul(&mut self, a: &Self, b: &Self) {
        self.add_assign(&a.mul(b));
    }
    /// `self += a * k` for an unmarked integer `k`.
    fn add_mul_int(&mut self, a: &Self, k: &BigInt);
    /// All marks set to 1.
    fn at_one(&self) -> BigInt;
}

impl Coefficient for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }

    fn unit() -> Self {
        One::one()
    }

    fn from_int(k: BigInt) -> Self {
        k
    }

    fn mark(_: usize) -> Self {
        One::one()
    }

    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }

    fn sub_assign(&mut self, other: &Self) {
        *self -= other;
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        if !a.is_zero() && !b.is_zero() {
            *self += a * b;
        }
    }

    fn add_mul_int(&mut self, a: &Self, k: &BigInt) {
        self.add_mul(a, k);
    }

    fn at_one(&self) -> BigInt {
        self.clone()
    }
}

/// `x^0, x^1, ..., x^n`.
pub fn powers<C: Coefficient>(x: &C, n: usize) -> alloc::vec::Vec<C> {
    let mut out = alloc::vec::Vec::with_capacity(n + 1);
    out.push(C::unit());
    for k in 1..=n {
        let next = out[k - 1].mul(x);
        out.push(next);
    }
    out
}
