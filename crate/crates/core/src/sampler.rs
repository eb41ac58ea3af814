//! Singular Boltzmann samplers with size-window rejection.
//!
//! Closed, m-open and h-shallow terms are drawn by a state machine whose
//! state is the number of enclosing abstractions (the supply of indices).
//! In state `m` the branching probabilities are
//!
//! ```text
//! P(λ) = z L_{m+1}/L_m,   P(@) = z L_m,   P(index j) = z^{j+1}/L_m  (j < m)
//! ```
//!
//! which sum to one by the defining equation of `L_m`.

use alloc::vec;
use alloc::vec::Vec;

use libm::{floor, log, pow};
use rand::Rng;

use crate::asymptotics::{
    ladder_values, plain_value, rho, shallow_rho, shallow_values, DEFAULT_DEPTH,
};
use crate::term::{Node, Term};

pub const DEFAULT_WINDOW: (u64, u64) = (20_000, 50_000);
pub const DEFAULT_MAX_ATTEMPTS: u64 = 1_000_000;
pub const NORMALIZATION_TOLERANCE: f64 = 1e-12;

/// Which terms a sampler draws.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SamplerFamily {
    Plain,
    Open(u64),
    Closed,
    Shallow(u64),
}

impl SamplerFamily {
    /// The dominant singularity of the family's generating function.
    pub fn singularity(self) -> f64 {
        match self {
            SamplerFamily::Shallow(h) => shallow_rho(h as usize),
            _ => rho(),
        }
    }

    /// Whether `term` belongs to the family.
    pub fn admits(self, term: &Term) -> bool {
        match self {
            SamplerFamily::Plain => true,
            SamplerFamily::Open(m) => term.openness() <= m,
            SamplerFamily::Closed => term.is_closed(),
            SamplerFamily::Shallow(h) => term.is_closed() && term.max_index() <= h,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SamplerConfig {
    pub family: SamplerFamily,
    /// Evaluation point; `None` means the family's singularity.
    pub z: Option<f64>,
    /// Accepted sizes, inclusive.
    pub window: (u64, u64),
    pub seed: u64,
    pub max_attempts: u64,
    pub ladder_depth: usize,
}

impl SamplerConfig {
    pub fn new(family: SamplerFamily) -> Self {
        SamplerConfig {
            family,
            z: None,
            window: DEFAULT_WINDOW,
            seed: 0,
            max_attempts: DEFAULT_MAX_ATTEMPTS,
            ladder_depth: DEFAULT_DEPTH,
        }
    }

    pub fn window(mut self, lo: u64, hi: u64) -> Self {
        self.window = (lo, hi);
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn z(mut self, z: f64) -> Self {
        self.z = Some(z);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
pub enum CalibrationError {
    #[error("evaluation point {z} outside (0, {singularity}]")]
    OutOfRange { z: f64, singularity: f64 },
    #[error("empty size window [{lo}, {hi}]")]
    EmptyWindow { lo: u64, hi: u64 },
    #[error("ladder depth must be at least 1")]
    ZeroDepth,
    #[error("branching probabilities of state {state} sum to {sum}")]
    Unnormalized { state: usize, sum: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SampleError {
    #[error("no term in the size window after {attempts} attempts")]
    AttemptsExhausted { attempts: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    /// One state; unbounded geometric indices.
    Plain,
    /// States `0..top`, then `top` stands for every state `>= top`.
    Ladder,
    /// States `0..=h`, then `h + 1` is the saturated state with `h + 1` indices.
    Shallow,
}

/// Branching probabilities per state.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchingTables {
    pub z: f64,
    pub lambda: Vec<f64>,
    pub app: Vec<f64>,
    pub index: Vec<f64>,
    shape: Shape,
    start: u64,
}

impl BranchingTables {
    fn row(&self, state: u64) -> usize {
        let top = self.lambda.len() as u64 - 1;
        match self.shape {
            Shape::Plain => 0,
            _ => state.min(top) as usize,
        }
    }

    fn after_lambda(&self, state: u64) -> u64 {
        match self.shape {
            Shape::Plain => state,
            Shape::Ladder => state + 1,
            Shape::Shallow => (state + 1).min(self.lambda.len() as u64 - 1),
        }
    }

    /// Number of index values available, `None` if unbounded.
    fn supply(&self, state: u64) -> Option<u64> {
        match self.shape {
            Shape::Plain => None,
            _ => Some(state),
        }
    }

    /// Largest normalization error over all rows.
    pub fn max_normalization_error(&self) -> f64 {
        (0..self.lambda.len())
            .map(|i| (self.lambda[i] + self.app[i] + self.index[i] - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// The state sampling starts from.
    pub fn start_state(&self) -> u64 {
        self.start
    }
}

/// Computes the branching tables of a configuration.
pub fn calibrate(config: &SamplerConfig) -> Result<BranchingTables, CalibrationError> {
    let (lo, hi) = config.window;
    if lo > hi {
        return Err(CalibrationError::EmptyWindow { lo, hi });
    }
    if config.ladder_depth == 0 {
        return Err(CalibrationError::ZeroDepth);
    }
    let singularity = config.family.singularity();
    let z = config.z.unwrap_or(singularity);
    if !(z > 0.0 && z <= singularity) {
        return Err(CalibrationError::OutOfRange { z, singularity });
    }
    let index_mass = |supply: f64, l: f64| z * (1.0 - pow(z, supply)) / ((1.0 - z) * l);
    let tables = match config.family {
        SamplerFamily::Plain => {
            let l = plain_value(z);
            BranchingTables {
                z,
                lambda: vec![z],
                app: vec![z * l],
                index: vec![z / ((1.0 - z) * l)],
                shape: Shape::Plain,
                start: 0,
            }
        }
        SamplerFamily::Open(_) | SamplerFamily::Closed => {
            let depth = config.ladder_depth;
            let l = ladder_values(z, depth);
            let mut t = BranchingTables {
                z,
                lambda: Vec::with_capacity(depth + 1),
                app: Vec::with_capacity(depth + 1),
                index: Vec::with_capacity(depth + 1),
                shape: Shape::Ladder,
                start: match config.family {
                    SamplerFamily::Open(m) => m,
                    _ => 0,
                },
            };
            for m in 0..depth {
                t.lambda.push(z * l[m + 1] / l[m]);
                t.app.push(z * l[m]);
                t.index.push(index_mass(m as f64, l[m]));
            }
            // The closure row: plain probabilities, indices truncated on use.
            let top = l[depth];
            t.lambda.push(z);
            t.app.push(z * top);
            t.index.push(z / ((1.0 - z) * top));
            t
        }
        SamplerFamily::Shallow(h) => {
            let h = h as usize;
            let l = shallow_values(z, h);
            let mut t = BranchingTables {
                z,
                lambda: Vec::with_capacity(h + 2),
                app: Vec::with_capacity(h + 2),
                index: Vec::with_capacity(h + 2),
                shape: Shape::Shallow,
                start: 0,
            };
            for m in 0..=h + 1 {
                let next = l[(m + 1).min(h + 1)];
                t.lambda.push(z * next / l[m]);
                t.app.push(z * l[m]);
                t.index.push(index_mass(m as f64, l[m]));
            }
            t
        }
    };
    for state in 0..tables.lambda.len() {
        let sum = tables.lambda[state] + tables.app[state] + tables.index[state];
        if sum.is_nan() || (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(CalibrationError::Unnormalized { state, sum });
        }
    }
    Ok(tables)
}

/// An accepted draw together with the attempt that produced it (1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub term: Term,
    pub attempt: u64,
}

/// A calibrated sampler; immutable and shareable between threads.
#[derive(Clone, Debug)]
pub struct Sampler {
    config: SamplerConfig,
    tables: BranchingTables,
}

impl Sampler {
    pub fn new(config: SamplerConfig) -> Result<Self, CalibrationError> {
        let tables = calibrate(&config)?;
        Ok(Sampler { config, tables })
    }

    pub fn config(&self) -> &SamplerConfig {
        &self.config
    }

    pub fn tables(&self) -> &BranchingTables {
        &self.tables
    }

    /// Draws until a term lands in the size window.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Sample, SampleError> {
        let (lo, hi) = self.config.window;
        let mut nodes = Vec::new();
        for attempt in 1..=self.config.max_attempts {
            if let Some(size) = self.draw(rng, hi, &mut nodes) {
                if size >= lo {
                    return Ok(Sample {
                        term: Term::from_prefix_unchecked(core::mem::take(&mut nodes)),
                        attempt,
                    });
                }
            }
        }
        Err(SampleError::AttemptsExhausted {
            attempts: self.config.max_attempts,
        })
    }

    /// One unconditioned draw, abandoned as soon as its size exceeds `limit`.
    /// Returns the size on completion; the prefix is left in `nodes`.
    pub fn draw<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        limit: u64,
        nodes: &mut Vec<Node>,
    ) -> Option<u64> {
        let t = &self.tables;
        let ln_z = log(t.z);
        nodes.clear();
        let mut size = 0u64;
        let mut pending = vec![t.start];
        while let Some(state) = pending.pop() {
            size += 1;
            if size > limit {
                return None;
            }
            let row = t.row(state);
            let u: f64 = rng.gen::<f64>();
            if u < t.lambda[row] {
                nodes.push(Node::Abs);
                pending.push(t.after_lambda(state));
            } else if u < t.lambda[row] + t.app[row] {
                nodes.push(Node::App);
                pending.push(state);
                pending.push(state);
            } else if t.supply(state) == Some(0) {
                // Rounding residue of an empty index row: draw again.
                size -= 1;
                pending.push(state);
            } else {
                let v: f64 = rng.gen::<f64>();
                let j = match t.supply(state) {
                    None => floor(log(1.0 - v) / ln_z),
                    Some(m) => {
                        let tail = 1.0 - pow(t.z, m as f64);
                        floor(log(1.0 - v * tail) / ln_z).min(m as f64 - 1.0)
                    }
                };
                let j = if j.is_finite() && j >= 0.0 {
                    j as u64
                } else {
                    0
                };
                size += j;
                if size > limit {
                    return None;
                }
                nodes.push(Node::Index(j));
            }
        }
        Some(size)
    }
}
