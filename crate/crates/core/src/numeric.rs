//! Small floating-point helpers shared by the numeric modules.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Nearest `f64`, or NaN when out of range.
pub fn ratio_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// `num / den` as `f64`, exact up to the final rounding.
pub fn quotient_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    ratio_to_f64(&BigRational::new(num.clone(), den.clone()))
}

/// Root of a continuous `f` on `[lo, hi]` with a sign change, by bisection to
/// width `tol`.
pub fn bisect(mut lo: f64, mut hi: f64, tol: f64, f: impl Fn(f64) -> f64) -> f64 {
    let mut f_lo = f(lo);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
