//! The signed graph data model: switching, signed neighborhoods, degeneracy
//! orderings, and switching-equivalence testing.
//!
//! A signed graph is a simple graph whose every edge carries a sign.
//! Vertices are dense ids `0..n`; each vertex stores its positive and
//! negative neighbor sets separately so that common-signed-neighborhood
//! queries are plain bitset intersections.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// Edge sign.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    /// Flips the sign iff `flip` is true. Switching a single endpoint of an
    /// edge flips it; switching both leaves it unchanged.
    #[inline]
    pub fn xor(self, flip: bool) -> Sign {
        if flip {
            self.flip()
        } else {
            self
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A simple graph on vertices `0..n` with a sign on every edge.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedGraph {
    n: usize,
    m: usize,
    pos: Vec<VertexSet>,
    neg: Vec<VertexSet>,
    adj: Vec<VertexSet>,
}

/// Subset of vertices at which switching (re-signing) is applied.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SwitchSet {
    set: VertexSet,
}

impl SwitchSet {
    pub fn empty(n: usize) -> Self {
        SwitchSet {
            set: VertexSet::empty(n),
        }
    }

    pub fn full(n: usize) -> Self {
        SwitchSet {
            set: VertexSet::full(n),
        }
    }

    pub fn from_members<I: IntoIterator<Item = usize>>(n: usize, members: I) -> Result<Self> {
        let mut set = VertexSet::empty(n);
        for v in members {
            if v >= n {
                return Err(Error::VertexOutOfRange(v, n));
            }
            set.insert(v);
        }
        Ok(SwitchSet { set })
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut set = VertexSet::empty(bits.len());
        for (v, &b) in bits.iter().enumerate() {
            if b {
                set.insert(v);
            }
        }
        SwitchSet { set }
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.set.contains(v)
    }

    pub fn n(&self) -> usize {
        self.set.capacity()
    }

    pub fn members(&self) -> Vec<usize> {
        self.set.to_vec()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn complement(&self) -> SwitchSet {
        SwitchSet {
            set: self.set.complement(),
        }
    }

    pub fn symmetric_difference(&self, other: &SwitchSet) -> Result<SwitchSet> {
        if self.n() != other.n() {
            return Err(Error::LengthMismatch(self.n(), other.n()));
        }
        let mut set = VertexSet::empty(self.n());
        for v in 0..self.n() {
            if self.contains(v) != other.contains(v) {
                set.insert(v);
            }
        }
        Ok(SwitchSet { set })
    }
}

/// Degree, regularity, connectivity, and degeneracy of a graph.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GraphStats {
    pub max_degree: usize,
    pub is_regular: bool,
    pub is_connected: bool,
    pub degeneracy: usize,
}

impl SignedGraph {
    pub fn new(n: usize) -> Self {
        SignedGraph {
            n,
            m: 0,
            pos: vec![VertexSet::empty(n); n],
            neg: vec![VertexSet::empty(n); n],
            adj: vec![VertexSet::empty(n); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange(v, self.n))
        } else {
            Ok(())
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize, sign: Sign) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::LoopEdge(u));
        }
        if self.adj[u].contains(v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        let side = match sign {
            Sign::Positive => &mut self.pos,
            Sign::Negative => &mut self.neg,
        };
        side[u].insert(v);
        side[v].insert(u);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.m += 1;
        Ok(())
    }

    /// Removes the edge `uv` if present; returns whether it was.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u >= self.n || v >= self.n || !self.adj[u].contains(v) {
            return false;
        }
        self.pos[u].remove(v);
        self.pos[v].remove(u);
        self.neg[u].remove(v);
        self.neg[v].remove(u);
        self.adj[u].remove(v);
        self.adj[v].remove(u);
        self.m -= 1;
        true
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    /// The sign of edge `uv`, or `None` if `uv` is not an edge (including
    /// `u == v`).
    #[inline]
    pub fn sign(&self, u: usize, v: usize) -> Option<Sign> {
        if u >= self.n || v >= self.n {
            return None;
        }
        if self.pos[u].contains(v) {
            Some(Sign::Positive)
        } else if self.neg[u].contains(v) {
            Some(Sign::Negative)
        } else {
            None
        }
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    /// `N^+(v)` or `N^-(v)`.
    pub fn signed_neighbors(&self, v: usize, sign: Sign) -> Result<&VertexSet> {
        self.check_vertex(v)?;
        Ok(match sign {
            Sign::Positive => &self.pos[v],
            Sign::Negative => &self.neg[v],
        })
    }

    /// Edges as `(u, v, sign)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize, Sign)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    out.push((u, v, self.sign(u, v).unwrap()));
                }
            }
        }
        out
    }

    /// Switches (re-signs) every vertex of `s`: the sign of an edge flips
    /// iff exactly one endpoint is in `s`.
    pub fn switch(&self, s: &SwitchSet) -> Result<SignedGraph> {
        if s.n() != self.n {
            return Err(Error::LengthMismatch(s.n(), self.n));
        }
        let mut out = SignedGraph::new(self.n);
        for (u, v, sign) in self.edges() {
            out.add_edge(u, v, sign.xor(s.contains(u) != s.contains(v)))?;
        }
        Ok(out)
    }

    /// `N^{a}(J)`: the vertices that are an `a[i]`-neighbor of `tuple[i]`
    /// for every `i`. An empty tuple yields all of `V` (the condition is
    /// vacuous).
    ///
    /// Note a member of the tuple can never belong to the result: it would
    /// have to be its own neighbor.
    pub fn common_signed_neighborhood(&self, tuple: &[usize], signs: &[Sign]) -> Result<VertexSet> {
        if tuple.len() != signs.len() {
            return Err(Error::LengthMismatch(tuple.len(), signs.len()));
        }
        for (i, &v) in tuple.iter().enumerate() {
            self.check_vertex(v)?;
            if tuple[..i].contains(&v) {
                return Err(Error::RepeatedVertex(v));
            }
        }
        let mut out = VertexSet::full(self.n);
        for (&v, &a) in tuple.iter().zip(signs) {
            out.intersect_with(self.signed_neighbors(v, a)?);
        }
        Ok(out)
    }

    pub fn same_underlying(&self, other: &SignedGraph) -> bool {
        self.n == other.n && (0..self.n).all(|v| self.adj[v] == other.adj[v])
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = VertexSet::empty(self.n);
        let mut stack = vec![0];
        seen.insert(0);
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for w in self.adj[v].iter() {
                if !seen.contains(w) {
                    seen.insert(w);
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Whether every pair of distinct vertices is an edge.
    pub fn is_complete(&self) -> bool {
        self.m == self.n * self.n.saturating_sub(1) / 2
    }

    /// An ordering `v_1..v_n` in which every vertex has at most `d`
    /// neighbors among its predecessors, obtained by repeatedly removing a
    /// minimum-degree vertex (smallest id on ties) and reversing. Returns
    /// `None` iff the graph is not `d`-degenerate.
    pub fn degeneracy_ordering(&self, d: usize) -> Option<Vec<usize>> {
        let (order, degeneracy) = self.peel();
        if degeneracy > d {
            None
        } else {
            Some(order)
        }
    }

    /// Min-degree peeling. Returns the reversed removal order together with
    /// the degeneracy (maximum removal-time degree).
    fn peel(&self) -> (Vec<usize>, usize) {
        let mut deg: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut removed = vec![false; self.n];
        let mut removal = Vec::with_capacity(self.n);
        let mut degeneracy = 0;
        for _ in 0..self.n {
            let v = (0..self.n)
                .filter(|&v| !removed[v])
                .min_by_key(|&v| (deg[v], v))
                .unwrap();
            degeneracy = degeneracy.max(deg[v]);
            removed[v] = true;
            removal.push(v);
            for w in self.adj[v].iter() {
                if !removed[w] {
                    deg[w] -= 1;
                }
            }
        }
        removal.reverse();
        (removal, degeneracy)
    }

    pub fn stats(&self) -> GraphStats {
        let max_degree = (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0);
        let min_degree = (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0);
        let (_, degeneracy) = self.peel();
        GraphStats {
            max_degree,
            is_regular: max_degree == min_degree,
            is_connected: self.is_connected(),
            degeneracy,
        }
    }
}

/// Decides whether `g2` can be obtained from `g1` by re-signing some vertex
/// set, and returns a witnessing set if so.
///
/// Per connected component the switch bits are forced once the root's bit is
/// fixed: propagate along a spanning tree so tree edges agree, then check the
/// non-tree edges. Complementing the bits inside a component yields the same
/// re-signing, so the root bit can be pinned to 0.
pub fn switching_equivalent(g1: &SignedGraph, g2: &SignedGraph) -> Result<Option<SwitchSet>> {
    if !g1.same_underlying(g2) {
        return Err(Error::UnderlyingMismatch);
    }
    let n = g1.n();
    let mut bit = vec![false; n];
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for w in g1.neighbors(v).iter() {
                let flip = g1.sign(v, w) != g2.sign(v, w);
                if !seen[w] {
                    seen[w] = true;
                    bit[w] = bit[v] != flip;
                    queue.push_back(w);
                } else if (bit[v] != bit[w]) != flip {
                    return Ok(None);
                }
            }
        }
    }
    let s = SwitchSet::from_bits(&bit);
    debug_assert_eq!(&g1.switch(&s)?, g2);
    Ok(Some(s))
}
