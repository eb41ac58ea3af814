//! Exact truncated power series and the generating-function systems built
//! on them.
//!
//! Coefficient rings: [`BigInt`](num_bigint::BigInt) for counts,
//! [`Poly`] for exact distributions in one mark, [`Jet`] for factorial
//! moments in up to four marks, and `BigRational` for the radical routes.

mod coefficient;
mod jet;
mod ladder;
mod moments;
mod poly;
mod power;
mod systems;

pub use coefficient::{powers, Coefficient};
pub use jet::Jet;
pub use ladder::{Ladder, Level};
pub use moments::{
    exact_distribution, joint_moments_at, mean_at, Distribution, JointMoments, MomentError,
    Moments, DEFAULT_DISTRIBUTION_CAP,
};
pub use poly::Poly;
pub use power::{Series, SeriesError};
pub use systems::{
    default_depth, level_profile_series, neutral_closed_form, plain_closed_form, single_marks,
    solve_h_shallow, solve_joint, solve_marked, solve_normal_forms, solve_plain, Family, Height,
    NodeKind, Parameter, TruncatedSystem, UnknownParameter,
};
