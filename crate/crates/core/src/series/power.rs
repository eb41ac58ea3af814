use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Coefficient;

/// Power series in `z` truncated after `z^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series<C> {
    coeffs: Vec<C>,
}

/// Failure of a series operation that needs an invertible or square
/// constant term.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("constant term is zero")]
    ZeroConstant,
    #[error("constant term is not a perfect square")]
    NotSquare,
    #[error("coefficient {0} is not an integer")]
    NotIntegral(usize),
}

impl<C: Coefficient> Series<C> {
    /// Coefficients `0..=order`; must be nonempty.
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a series has at least one coefficient");
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: (0..=order).map(|_| C::nil()).collect(),
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = C::unit();
        s
    }

    /// The series `z`.
    pub fn z(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = C::unit();
        }
        s
    }

    /// `z^from + z^(from+1) + ... + z^to`, truncated.
    pub fn geometric_block(order: usize, from: usize, to: Option<usize>) -> Self {
        let mut s = Self::zero(order);
        for n in from..=order {
            if to.is_some_and(|t| n > t) {
                break;
            }
            s.coeffs[n] = C::unit();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Series {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Series {
            coeffs: (0..=order)
                .map(|n| {
                    let mut c = self.coeffs[n].clone();
                    c.add_assign(&other.coeffs[n]);
                    c
                })
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Series {
            coeffs: (0..=order)
                .map(|n| {
                    let mut c = self.coeffs[n].clone();
                    c.sub_assign(&other.coeffs[n]);
                    c
                })
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Series {
            coeffs: (0..=order)
                .map(|n| {
                    let mut c = C::nil();
                    for k in 0..=n {
                        c.add_mul(&self.coeffs[k], &other.coeffs[n - k]);
                    }
                    c
                })
                .collect(),
        }
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &C) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// `z^k * self`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let mut s = Self::zero(self.order());
        for n in k..=self.order() {
            s.coeffs[n] = self.coeffs[n - k].clone();
        }
        s
    }

    /// All marks set to 1.
    pub fn at_one(&self) -> Series<BigInt> {
        Series {
            coeffs: self.coeffs.iter().map(Coefficient::at_one).collect(),
        }
    }
}

impl Series<BigInt> {
    pub fn to_rational(&self) -> Series<BigRational> {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        }
    }

    /// Widens integer coefficients into another coefficient ring.
    pub fn lift<C: Coefficient>(&self) -> Series<C> {
        Series {
            coeffs: self.coeffs.iter().map(|c| C::from_int(c.clone())).collect(),
        }
    }
}

impl Series<BigRational> {
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(SeriesError::ZeroConstant);
        }
        let inv0 = a0.recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..=self.order() {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                acc += &self.coeffs[k] * &out[n - k];
            }
            out.push(-acc * &inv0);
        }
        Ok(Series { coeffs: out })
    }

    /// Square root with positive constant term.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(SeriesError::ZeroConstant);
        }
        let s0 = rational_sqrt(a0).ok_or(SeriesError::NotSquare)?;
        let two_s0 = &s0 * BigRational::from_integer(BigInt::from(2));
        let mut out: Vec<BigRational> = Vec::with_capacity(self.coeffs.len());
        out.push(s0);
        for n in 1..=self.order() {
            let mut acc = self.coeffs[n].clone();
            for k in 1..n {
                acc -= &out[k] * &out[n - k];
            }
            out.push(acc / &two_s0);
        }
        Ok(Series { coeffs: out })
    }

    /// Drops the coefficient `z^0` and divides by `z`; the order shrinks by one.
    pub fn div_z(&self) -> Self {
        Series {
            coeffs: self.coeffs[1..].to_vec(),
        }
    }

    pub fn to_integer(&self) -> Result<Series<BigInt>, SeriesError> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(SeriesError::NotIntegral(n))
                }
            })
            .collect::<Result<Vec<_>, _>>()
            .map(|coeffs| Series { coeffs })
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.numer() < &BigInt::zero() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}

impl Coefficient for BigRational {
    fn nil() -> Self {
        Zero::zero()
    }

    fn unit() -> Self {
        One::one()
    }

    fn from_int(k: BigInt) -> Self {
        BigRational::from_integer(k)
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

    fn add_mul_int(&mut self, a: &Self, k: &BigInt) {
        *self += a * BigRational::from_integer(k.clone());
    }

    /// Rounds toward zero; only meaningful on integral values.
    fn at_one(&self) -> BigInt {
        self.to_integer()
    }
}
