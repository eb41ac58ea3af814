//! Per-term parameters: everything the series and sampler results are
//! compared against.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::term::{subterm_lens, Node, Term, TermMetrics};

/// An unreduced ratio of counts, `numerator / denominator`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Fraction {
    pub numerator: u64,
    pub denominator: u64,
}

impl Fraction {
    pub fn new(numerator: u64, denominator: u64) -> Self {
        Fraction {
            numerator,
            denominator,
        }
    }

    pub fn to_f64(self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

/// Level -> node count.
pub type Histogram = BTreeMap<u64, u64>;

/// One histogram per node kind.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct KindHistograms {
    pub variables: Histogram,
    pub abstractions: Histogram,
    pub applications: Histogram,
}

impl KindHistograms {
    fn bump(&mut self, node: Node, level: u64) {
        let h = match node {
            Node::Index(_) => &mut self.variables,
            Node::Abs => &mut self.abstractions,
            Node::App => &mut self.applications,
        };
        *h.entry(level).or_insert(0) += 1;
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HeightProfiles {
    /// Level = number of strict abstraction ancestors.
    pub unary: KindHistograms,
    /// Level = number of strict abstraction or application ancestors.
    pub natural: KindHistograms,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BindingStats {
    /// Share of abstractions binding at least one occurrence; `None` when
    /// there are no abstractions.
    pub binding_fraction: Option<Fraction>,
    pub max_bound: u64,
}

/// All per-term parameters in one bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ParameterReport {
    pub metrics: TermMetrics,
    pub lo_cost: u64,
    pub free_variable_occurrences: u64,
    pub open_subterm_fraction: Fraction,
    pub binding_abstraction_fraction: Option<Fraction>,
    pub max_bound_per_abstraction: u64,
    pub index_value_histogram: Histogram,
    pub unary_height_histograms: KindHistograms,
    pub natural_height_histograms: KindHistograms,
}

/// `normal[i]`: the subterm rooted at node `i` contains no redex.
fn normal_flags(nodes: &[Node], lens: &[usize]) -> Vec<bool> {
    let mut normal = vec![false; nodes.len()];
    for i in (0..nodes.len()).rev() {
        normal[i] = match nodes[i] {
            Node::Index(_) => true,
            Node::Abs => normal[i + 1],
            Node::App => {
                let l = i + 1;
                let r = l + lens[l];
                nodes[l] != Node::Abs && normal[l] && normal[r]
            }
        };
    }
    normal
}

/// Nodes visited by the leftmost-outermost redex search. A neutral left
/// branch is walked completely; an index counts as one node.
pub fn lo_cost(t: &Term) -> u64 {
    let nodes = t.nodes();
    let lens = subterm_lens(nodes);
    let normal = normal_flags(nodes, &lens);
    let mut cost = 0;
    let mut p = 0;
    loop {
        match nodes[p] {
            Node::Index(_) => return cost + 1,
            Node::Abs => {
                cost += 1;
                p += 1;
            }
            Node::App => {
                let l = p + 1;
                if nodes[l] == Node::Abs {
                    return cost + 2;
                }
                if normal[l] {
                    cost += 1 + lens[l] as u64;
                    p = l + lens[l];
                } else {
                    cost += 1;
                    p = l;
                }
            }
        }
    }
}

/// No subterm of shape `(λP)Q`.
pub fn is_normal_form(t: &Term) -> bool {
    let nodes = t.nodes();
    nodes
        .windows(2)
        .all(|w| !(w[0] == Node::App && w[1] == Node::Abs))
}

/// Normal and not an abstraction.
pub fn is_neutral(t: &Term) -> bool {
    t.nodes()[0] != Node::Abs && is_normal_form(t)
}

/// Index occurrences not bound by any enclosing abstraction.
pub fn free_variable_occurrences(t: &Term) -> u64 {
    let mut free = 0;
    crate::term::for_each_index_depth(t.nodes(), |n, depth| {
        if n >= depth {
            free += 1;
        }
    });
    free
}

/// Share of subterms (indices atomic) that are open.
pub fn open_subterm_fraction(t: &Term) -> Fraction {
    let nodes = t.nodes();
    let lens = subterm_lens(nodes);
    let mut openness = vec![0u64; nodes.len()];
    let mut open = 0;
    for i in (0..nodes.len()).rev() {
        openness[i] = match nodes[i] {
            Node::Index(n) => n + 1,
            Node::Abs => openness[i + 1].saturating_sub(1),
            Node::App => {
                let l = i + 1;
                openness[l].max(openness[l + lens[l]])
            }
        };
        if openness[i] > 0 {
            open += 1;
        }
    }
    Fraction::new(open, nodes.len() as u64)
}

/// Which abstractions bind something, and the most occurrences any single
/// abstraction binds.
pub fn binding_stats(t: &Term) -> BindingStats {
    let nodes = t.nodes();
    let mut bound: Vec<u64> = Vec::new();
    let mut binders: Vec<usize> = Vec::new();
    let mut pending: Vec<usize> = vec![0];
    for node in nodes {
        let depth = pending.pop().expect("well-formed prefix");
        binders.truncate(depth);
        match *node {
            Node::Index(n) => {
                let n = n as usize;
                if n < depth {
                    bound[binders[depth - 1 - n]] += 1;
                }
            }
            Node::Abs => {
                binders.push(bound.len());
                bound.push(0);
                pending.push(depth + 1);
            }
            Node::App => {
                pending.push(depth);
                pending.push(depth);
            }
        }
    }
    let binding = bound.iter().filter(|c| **c > 0).count() as u64;
    BindingStats {
        binding_fraction: (!bound.is_empty()).then(|| Fraction::new(binding, bound.len() as u64)),
        max_bound: bound.iter().copied().max().unwrap_or(0),
    }
}

/// Node counts per unary and natural level, one histogram per node kind.
/// An index sits at the level of its topmost atom.
pub fn height_profiles(t: &Term) -> HeightProfiles {
    let mut out = HeightProfiles::default();
    let mut pending: Vec<(u64, u64)> = vec![(0, 0)];
    for &node in t.nodes() {
        let (unary, natural) = pending.pop().expect("well-formed prefix");
        out.unary.bump(node, unary);
        out.natural.bump(node, natural);
        match node {
            Node::Index(_) => {}
            Node::Abs => pending.push((unary + 1, natural + 1)),
            Node::App => {
                pending.push((unary, natural + 1));
                pending.push((unary, natural + 1));
            }
        }
    }
    out
}

/// Index value -> number of occurrences.
pub fn index_value_histogram(t: &Term) -> Histogram {
    let mut h = Histogram::new();
    for node in t.nodes() {
        if let Node::Index(n) = node {
            *h.entry(*n).or_insert(0) += 1;
        }
    }
    h
}

pub fn measure(t: &Term) -> ParameterReport {
    let binding = binding_stats(t);
    let heights = height_profiles(t);
    ParameterReport {
        metrics: t.metrics(),
        lo_cost: lo_cost(t),
        free_variable_occurrences: free_variable_occurrences(t),
        open_subterm_fraction: open_subterm_fraction(t),
        binding_abstraction_fraction: binding.binding_fraction,
        max_bound_per_abstraction: binding.max_bound,
        index_value_histogram: index_value_histogram(t),
        unary_height_histograms: heights.unary,
        natural_height_histograms: heights.natural,
    }
}
