use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::systems::{solve_marked, Family, Parameter};
use super::{Jet, Poly, Series};

/// Exact distributions are offered up to this size by default.
pub const DEFAULT_DISTRIBUTION_CAP: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MomentError {
    #[error("no objects of size {0}")]
    Empty(usize),
    #[error("size {n} exceeds the series order {order}")]
    BeyondOrder { n: usize, order: usize },
    #[error("exact distributions are capped at size {cap}, asked for {n}")]
    CapExceeded { n: usize, cap: usize },
}

/// Mean and (for degree-2 jets) variance at one size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Moments {
    pub count: BigInt,
    pub mean: BigRational,
    pub variance: Option<BigRational>,
}

fn ratio(num: &BigInt, den: &BigInt) -> BigRational {
    BigRational::new(num.clone(), den.clone())
}

fn coefficient<C>(series: &Series<C>, n: usize) -> Result<&C, MomentError>
where
    C: Clone + super::Coefficient,
{
    if n > series.order() {
        return Err(MomentError::BeyondOrder {
            n,
            order: series.order(),
        });
    }
    Ok(series.coeff(n))
}

/// `E[X_n]` from a degree-1 jet.
pub fn mean_at<const J: usize>(
    series: &Series<Jet<1, J>>,
    n: usize,
) -> Result<Moments, MomentError> {
    let c = coefficient(series, n)?;
    let count = c.constant().clone();
    if count.is_zero() {
        return Err(MomentError::Empty(n));
    }
    let mean = ratio(c.linear(0), &count);
    let variance = (J == 2).then(|| {
        let two = BigRational::from_integer(BigInt::from(2));
        two * ratio(c.quadratic(0, 0), &count) + &mean - &mean * &mean
    });
    Ok(Moments {
        count,
        mean,
        variance,
    })
}

/// Means and covariance matrix of the four jointly marked parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointMoments {
    pub count: BigInt,
    pub means: [BigRational; 4],
    pub covariance: [[BigRational; 4]; 4],
}

pub fn joint_moments_at(series: &Series<Jet<4, 2>>, n: usize) -> Result<JointMoments, MomentError> {
    let c = coefficient(series, n)?;
    let count = c.constant().clone();
    if count.is_zero() {
        return Err(MomentError::Empty(n));
    }
    let means: [BigRational; 4] = core::array::from_fn(|i| ratio(c.linear(i), &count));
    let two = BigRational::from_integer(BigInt::from(2));
    let covariance = core::array::from_fn(|i| {
        core::array::from_fn(|j| {
            if i == j {
                &two * ratio(c.quadratic(i, i), &count) + &means[i] - &means[i] * &means[i]
            } else {
                ratio(c.quadratic(i, j), &count) - &means[i] * &means[j]
            }
        })
    });
    Ok(JointMoments {
        count,
        means,
        covariance,
    })
}

/// Exact distribution: value -> count at size `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution {
    pub n: usize,
    pub counts: Vec<(u64, BigInt)>,
}

impl Distribution {
    pub fn total(&self) -> BigInt {
        self.counts.iter().map(|(_, c)| c).sum()
    }

    /// `(value, count, probability)` rows.
    pub fn rows(&self) -> Vec<(u64, BigInt, BigRational)> {
        let total = self.total();
        self.counts
            .iter()
            .map(|(v, c)| (*v, c.clone(), ratio(c, &total)))
            .collect()
    }

    pub fn mean(&self) -> Option<BigRational> {
        let total = self.total();
        if total.is_zero() {
            return None;
        }
        let s: BigInt = self.counts.iter().map(|(v, c)| c * BigInt::from(*v)).sum();
        Some(ratio(&s, &total))
    }
}

impl From<(usize, &Poly)> for Distribution {
    fn from((n, p): (usize, &Poly)) -> Self {
        Distribution {
            n,
            counts: p.terms().map(|(k, c)| (k, c.clone())).collect(),
        }
    }
}

/// Exact distribution of `parameter` at size `n`, refusing sizes above `cap`.
pub fn exact_distribution(
    parameter: Parameter,
    family: Family,
    n: usize,
    depth: usize,
    cap: usize,
) -> Result<Distribution, MomentError> {
    if n > cap {
        return Err(MomentError::CapExceeded { n, cap });
    }
    let s = solve_marked::<Poly>(parameter, family, n, depth);
    Ok(Distribution::from((n, s.coeff(n))))
}
