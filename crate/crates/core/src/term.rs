//! De Bruijn terms stored as a flat prefix-order node sequence.
//!
//! A term `λ(0 1)` is stored as `[Abs, App, Index(0), Index(1)]`. The prefix
//! form determines the tree uniquely, every subterm occupies a contiguous
//! slice, and cloning, comparing, hashing and dropping never recurse. All
//! analyses below walk the slice with explicit stacks or backward passes.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// One constructor of a term, in prefix order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    /// De Bruijn index `n`; weighs `n + 1` atoms (`n` successors and a zero).
    Index(u64),
    /// Abstraction; its body follows.
    Abs,
    /// Application; the left operand follows, then the right operand.
    App,
}

/// An immutable de Bruijn lambda term.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    nodes: Vec<Node>,
}

/// The root constructor of a term with borrowed children.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum View<'a> {
    Index(u64),
    Abs(TermRef<'a>),
    App(TermRef<'a>, TermRef<'a>),
}

/// A borrowed complete term (a subterm slice of some [`Term`]).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct TermRef<'a> {
    nodes: &'a [Node],
}

/// Returned by [`Term::from_prefix`] when a node sequence is not exactly one
/// complete term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MalformedPrefix {
    #[error("empty node sequence")]
    Empty,
    #[error("node sequence ends before the term is complete")]
    Incomplete,
    #[error("trailing nodes after a complete term at position {0}")]
    Trailing(usize),
}

/// Structural counts of a term.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TermMetrics {
    pub size: u64,
    pub variables: u64,
    pub abstractions: u64,
    pub applications: u64,
    pub successors: u64,
    pub redexes: u64,
    pub head_abstractions: u64,
    pub openness: u64,
    pub generalized_openness: i64,
}

impl Term {
    pub fn index(n: u64) -> Self {
        Term {
            nodes: vec![Node::Index(n)],
        }
    }

    pub fn abs(body: Term) -> Self {
        let mut nodes = Vec::with_capacity(body.nodes.len() + 1);
        nodes.push(Node::Abs);
        nodes.extend_from_slice(&body.nodes);
        Term { nodes }
    }

    pub fn app(left: Term, right: Term) -> Self {
        let mut nodes = Vec::with_capacity(left.nodes.len() + right.nodes.len() + 1);
        nodes.push(Node::App);
        nodes.extend_from_slice(&left.nodes);
        nodes.extend_from_slice(&right.nodes);
        Term { nodes }
    }

    /// `k` abstractions wrapped around `body`.
    pub fn abs_n(k: usize, body: Term) -> Self {
        let mut nodes = Vec::with_capacity(body.nodes.len() + k);
        nodes.resize(k, Node::Abs);
        nodes.extend_from_slice(&body.nodes);
        Term { nodes }
    }

    /// Builds a term from its prefix-order nodes, checking that they form
    /// exactly one complete term.
    pub fn from_prefix(nodes: Vec<Node>) -> Result<Self, MalformedPrefix> {
        if nodes.is_empty() {
            return Err(MalformedPrefix::Empty);
        }
        check_prefix(&nodes)?;
        Ok(Term { nodes })
    }

    /// Builds a term from prefix-order nodes the caller knows are complete.
    pub(crate) fn from_prefix_unchecked(nodes: Vec<Node>) -> Self {
        debug_assert!(check_prefix(&nodes).is_ok());
        Term { nodes }
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn into_nodes(self) -> Vec<Node> {
        self.nodes
    }

    pub fn as_ref(&self) -> TermRef<'_> {
        TermRef { nodes: &self.nodes }
    }

    /// Root constructor; see [`TermRef::view`] for the cost.
    pub fn view(&self) -> View<'_> {
        self.as_ref().view()
    }

    /// Number of constructor nodes (indices count once).
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Natural size: abstractions + applications + successors + zeros.
    pub fn size(&self) -> u64 {
        size_of(&self.nodes)
    }

    /// Smallest `m` such that `m` prepended abstractions close the term.
    pub fn openness(&self) -> u64 {
        let mut worst: u64 = 0;
        for_each_index_depth(&self.nodes, |n, depth| {
            let need = (n + 1).saturating_sub(depth);
            worst = worst.max(need);
        });
        worst
    }

    pub fn is_closed(&self) -> bool {
        self.openness() == 0
    }

    /// Number of leading abstractions.
    pub fn head_abstractions(&self) -> u64 {
        self.nodes.iter().take_while(|n| **n == Node::Abs).count() as u64
    }

    /// Openness for open terms; for closed terms `-k`, where `k` counts the
    /// outermost head abstractions that bind nothing (dropping them leaves a
    /// closed term).
    pub fn generalized_openness(&self) -> i64 {
        let head = self.head_abstractions();
        let mut worst: u64 = 0;
        // slack = depth - (n + 1): how many outer binders the index can lose.
        let mut slack = u64::MAX;
        for_each_index_depth(&self.nodes, |n, depth| {
            worst = worst.max((n + 1).saturating_sub(depth));
            slack = slack.min(depth.saturating_sub(n + 1));
        });
        if worst > 0 {
            worst as i64
        } else {
            -(head.min(slack) as i64)
        }
    }

    /// Largest index value in the term.
    pub fn max_index(&self) -> u64 {
        self.nodes
            .iter()
            .filter_map(|n| match n {
                Node::Index(v) => Some(*v),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn metrics(&self) -> TermMetrics {
        let mut m = TermMetrics::default();
        let nodes = &self.nodes;
        for (i, node) in nodes.iter().enumerate() {
            match *node {
                Node::Index(n) => {
                    m.variables += 1;
                    m.successors += n;
                }
                Node::Abs => m.abstractions += 1,
                Node::App => {
                    m.applications += 1;
                    if nodes[i + 1] == Node::Abs {
                        m.redexes += 1;
                    }
                }
            }
        }
        m.size = m.abstractions + m.applications + m.successors + m.variables;
        m.head_abstractions = self.head_abstractions();
        m.openness = self.openness();
        m.generalized_openness = self.generalized_openness();
        m
    }
}

impl<'a> TermRef<'a> {
    pub fn nodes(&self) -> &'a [Node] {
        self.nodes
    }

    pub fn to_term(&self) -> Term {
        Term {
            nodes: self.nodes.to_vec(),
        }
    }

    pub fn size(&self) -> u64 {
        size_of(self.nodes)
    }

    /// Root constructor with borrowed children. Splitting an application
    /// scans the left operand, so this is linear in its node count.
    pub fn view(&self) -> View<'a> {
        match self.nodes[0] {
            Node::Index(n) => View::Index(n),
            Node::Abs => View::Abs(TermRef {
                nodes: &self.nodes[1..],
            }),
            Node::App => {
                let split = 1 + subterm_len(&self.nodes[1..]);
                View::App(
                    TermRef {
                        nodes: &self.nodes[1..split],
                    },
                    TermRef {
                        nodes: &self.nodes[split..],
                    },
                )
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Term({})", self)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::text::write_term(f, &self.nodes)
    }
}

impl fmt::Debug for TermRef<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TermRef(")?;
        crate::text::write_term(f, self.nodes)?;
        write!(f, ")")
    }
}

/// Arena for building terms bottom-up in O(1) per constructor, then
/// flattening once into prefix order.
#[derive(Debug, Default)]
pub struct TermArena {
    cells: Vec<Cell>,
}

#[derive(Clone, Copy, Debug)]
enum Cell {
    Index(u64),
    Abs(usize),
    App(usize, usize),
}

/// Handle to a term inside a [`TermArena`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CellId(usize);

impl TermArena {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn index(&mut self, n: u64) -> CellId {
        self.push(Cell::Index(n))
    }

    pub fn abs(&mut self, body: CellId) -> CellId {
        self.push(Cell::Abs(body.0))
    }

    pub fn app(&mut self, left: CellId, right: CellId) -> CellId {
        self.push(Cell::App(left.0, right.0))
    }

    fn push(&mut self, cell: Cell) -> CellId {
        self.cells.push(cell);
        CellId(self.cells.len() - 1)
    }

    /// Flattens the term rooted at `root` into prefix order.
    pub fn build(&self, root: CellId) -> Term {
        let mut nodes = Vec::new();
        let mut stack = vec![root.0];
        while let Some(id) = stack.pop() {
            match self.cells[id] {
                Cell::Index(n) => nodes.push(Node::Index(n)),
                Cell::Abs(b) => {
                    nodes.push(Node::Abs);
                    stack.push(b);
                }
                Cell::App(l, r) => {
                    nodes.push(Node::App);
                    stack.push(r);
                    stack.push(l);
                }
            }
        }
        Term::from_prefix_unchecked(nodes)
    }
}

fn check_prefix(nodes: &[Node]) -> Result<(), MalformedPrefix> {
    let mut pending: usize = 1;
    for (i, node) in nodes.iter().enumerate() {
        if pending == 0 {
            return Err(MalformedPrefix::Trailing(i));
        }
        pending -= 1;
        match node {
            Node::Index(_) => {}
            Node::Abs => pending += 1,
            Node::App => pending += 2,
        }
    }
    if pending == 0 {
        Ok(())
    } else {
        Err(MalformedPrefix::Incomplete)
    }
}

fn size_of(nodes: &[Node]) -> u64 {
    nodes
        .iter()
        .map(|n| match n {
            Node::Index(v) => v + 1,
            Node::Abs | Node::App => 1,
        })
        .sum()
}

/// Node count of the complete subterm starting at `nodes[0]`.
pub(crate) fn subterm_len(nodes: &[Node]) -> usize {
    let mut pending: usize = 1;
    for (i, node) in nodes.iter().enumerate() {
        pending -= 1;
        match node {
            Node::Index(_) => {}
            Node::Abs => pending += 1,
            Node::App => pending += 2,
        }
        if pending == 0 {
            return i + 1;
        }
    }
    nodes.len()
}

/// Node count of the subterm rooted at every position, by a backward pass.
pub(crate) fn subterm_lens(nodes: &[Node]) -> Vec<usize> {
    let mut len = vec![0usize; nodes.len()];
    for i in (0..nodes.len()).rev() {
        len[i] = match nodes[i] {
            Node::Index(_) => 1,
            Node::Abs => 1 + len[i + 1],
            Node::App => {
                let l = len[i + 1];
                1 + l + len[i + 1 + l]
            }
        };
    }
    len
}

/// Calls `f(value, binder_depth)` for every index occurrence, where
/// `binder_depth` is the number of abstractions above it.
pub(crate) fn for_each_index_depth(nodes: &[Node], mut f: impl FnMut(u64, u64)) {
    // Depths of the subterms still to be visited, in prefix order.
    let mut pending: Vec<u64> = vec![0];
    for node in nodes {
        let depth = pending.pop().expect("well-formed prefix");
        match *node {
            Node::Index(n) => f(n, depth),
            Node::Abs => pending.push(depth + 1),
            Node::App => {
                pending.push(depth);
                pending.push(depth);
            }
        }
    }
}
