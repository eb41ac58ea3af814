//! Combinatorics of lambda terms in de Bruijn notation under the natural
//! size model.
//!
//! The crate is `no_std` (it needs `alloc`). It covers:
//!
//! * [`term`]: a flat prefix-order term representation with structural
//!   metrics, and [`text`] for the canonical textual syntax;
//! * [`enumerate`]: exhaustive generation of all (m-open) terms of a size;
//! * [`stats`]: every per-term parameter used by the statistics pipeline;
//! * [`series`]: exact truncated power series and the generating-function
//!   systems for plain, closed, m-open and h-shallow terms;
//! * [`asymptotics`]: the dominant singularity, Puiseux ladders and the
//!   limit constants derived from them;
//! * [`sampler`]: singular Boltzmann samplers with size-window rejection.
//!
//! Every traversal is iterative, so terms with hundreds of thousands of
//! nodes are fine on an ordinary thread stack.
#![no_std]

extern crate alloc;

/// Crate version, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub mod asymptotics;
pub mod enumerate;
pub mod numeric;
pub mod sampler;
pub mod series;
pub mod stats;
pub mod term;
pub mod text;

pub use enumerate::{enumerate, Enumerator, OpennessBound};
pub use stats::{measure, ParameterReport};
pub use term::{Node, Term, TermArena, TermMetrics, View};
pub use text::{parse, ParseError};
