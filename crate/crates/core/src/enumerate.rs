//! Exhaustive enumeration of terms of a given size, the brute-force oracle
//! for every series in this crate.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::term::Term;

/// Limit on free indices: `Bounded(m)` admits exactly the m-open terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpennessBound {
    Bounded(u64),
    Unbounded,
}

impl OpennessBound {
    pub const CLOSED: OpennessBound = OpennessBound::Bounded(0);

    fn under_lambda(self) -> Self {
        match self {
            OpennessBound::Bounded(m) => OpennessBound::Bounded(m + 1),
            OpennessBound::Unbounded => OpennessBound::Unbounded,
        }
    }

    /// A bound of `n` or more never bites on terms of size `n`.
    fn normalize(self, n: u64) -> Self {
        match self {
            OpennessBound::Bounded(m) if m >= n => OpennessBound::Unbounded,
            b => b,
        }
    }

    pub fn admits(self, openness: u64) -> bool {
        match self {
            OpennessBound::Bounded(m) => openness <= m,
            OpennessBound::Unbounded => true,
        }
    }
}

/// Memoizing enumerator; reuse one instance across sizes to share work.
#[derive(Debug, Default)]
pub struct Enumerator {
    memo: BTreeMap<(u64, OpennessBound), Vec<Term>>,
}

impl Enumerator {
    pub fn new() -> Self {
        Self::default()
    }

    /// All terms of size `n` within `bound`, in the fixed order: the index
    /// (if any), then abstractions, then applications by ascending left size.
    pub fn terms(&mut self, n: u64, bound: OpennessBound) -> &[Term] {
        let key = (n, bound.normalize(n));
        if !self.memo.contains_key(&key) {
            let built = self.build(key.0, key.1);
            self.memo.insert(key, built);
        }
        &self.memo[&key]
    }

    pub fn count(&mut self, n: u64, bound: OpennessBound) -> usize {
        self.terms(n, bound).len()
    }

    fn build(&mut self, n: u64, bound: OpennessBound) -> Vec<Term> {
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        let value = n - 1;
        if bound.admits(value + 1) {
            out.push(Term::index(value));
        }
        if n >= 2 {
            out.extend(
                self.terms(n - 1, bound.under_lambda())
                    .iter()
                    .cloned()
                    .map(Term::abs),
            );
        }
        for left in 1..n.saturating_sub(1) {
            let right = n - 1 - left;
            let lefts = self.terms(left, bound).to_vec();
            let rights = self.terms(right, bound).to_vec();
            for l in &lefts {
                for r in &rights {
                    out.push(Term::app(l.clone(), r.clone()));
                }
            }
        }
        out
    }
}

/// Every term of size `n` within `bound`, in the enumeration order.
pub fn enumerate(n: u64, bound: OpennessBound) -> Vec<Term> {
    Enumerator::new().terms(n, bound).to_vec()
}
