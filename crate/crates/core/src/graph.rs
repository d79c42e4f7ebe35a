//! Chord graphs on a circle: crossing, parallel classes, rotation, reflection
//! and canonical forms up to rotation.
//!
//! Points are labeled `1..=n` counterclockwise. All predicates are index
//! arithmetic; nothing here touches geometry.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

use crate::error::{Error, Result};

/// An unordered chord `{lo, hi}` with `lo < hi`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    lo: usize,
    hi: usize,
}

impl Edge {
    /// Builds an edge from two distinct endpoints in either order.
    ///
    /// Panics on a self-loop; use [`Edge::checked`] for untrusted input.
    pub fn new(a: usize, b: usize) -> Edge {
        assert_ne!(a, b, "self-loop");
        Edge { lo: a.min(b), hi: a.max(b) }
    }

    pub fn checked(n: usize, a: usize, b: usize) -> Result<Edge> {
        for p in [a, b] {
            if p == 0 || p > n {
                return Err(Error::PointOutOfRange { point: p, n });
            }
        }
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        Ok(Edge::new(a, b))
    }

    pub fn lo(self) -> usize {
        self.lo
    }

    pub fn hi(self) -> usize {
        self.hi
    }

    pub fn endpoints(self) -> [usize; 2] {
        [self.lo, self.hi]
    }

    pub fn has(self, p: usize) -> bool {
        self.lo == p || self.hi == p
    }

    pub fn shares_endpoint(self, other: Edge) -> bool {
        self.has(other.lo) || self.has(other.hi)
    }

    /// The endpoint opposite `p`, if `p` is an endpoint.
    pub fn other(self, p: usize) -> Option<usize> {
        if p == self.lo {
            Some(self.hi)
        } else if p == self.hi {
            Some(self.lo)
        } else {
            None
        }
    }

    /// Strict interleaving of endpoints. Edges sharing an endpoint never cross.
    pub fn crosses(self, other: Edge) -> bool {
        if self.shares_endpoint(other) {
            return false;
        }
        let inside = |p: usize| self.lo < p && p < self.hi;
        inside(other.lo) != inside(other.hi)
    }

    fn map(self, f: impl Fn(usize) -> usize) -> Edge {
        Edge::new(f(self.lo), f(self.hi))
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lo, self.hi)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

impl From<(usize, usize)> for Edge {
    fn from((a, b): (usize, usize)) -> Edge {
        Edge::new(a, b)
    }
}

/// `crosses` with endpoint validation.
pub fn crosses(n: usize, e1: Edge, e2: Edge) -> Result<bool> {
    for e in [e1, e2] {
        Edge::checked(n, e.lo, e.hi)?;
    }
    if e1 == e2 {
        return Err(Error::SameEdge(e1));
    }
    Ok(e1.crosses(e2))
}

/// Rotation of a single point by `s` steps counterclockwise on `n` points.
pub(crate) fn rotate_point(p: usize, s: usize, n: usize) -> usize {
    (p - 1 + s) % n + 1
}

/// `n` labeled points on a circle plus a set of chords.
///
/// Edges are kept sorted and duplicate-free.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CircleGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl CircleGraph {
    pub fn new<I, E>(n: usize, edges: I) -> Result<CircleGraph>
    where
        I: IntoIterator<Item = E>,
        E: Into<(usize, usize)>,
    {
        if n < 3 {
            return Err(Error::TooFewPoints(n));
        }
        let mut out = Vec::new();
        for e in edges {
            let (a, b) = e.into();
            out.push(Edge::checked(n, a, b)?);
        }
        out.sort_unstable();
        if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0]));
        }
        Ok(CircleGraph { n, edges: out })
    }

    pub fn from_edges(n: usize, edges: Vec<Edge>) -> Result<CircleGraph> {
        CircleGraph::new(n, edges.into_iter().map(|e| (e.lo, e.hi)))
    }

    /// Internal constructor for edge sets already known to be valid.
    pub(crate) fn from_sorted_unchecked(n: usize, mut edges: Vec<Edge>) -> CircleGraph {
        edges.sort_unstable();
        edges.dedup();
        debug_assert!(edges.iter().all(|e| e.hi <= n));
        CircleGraph { n, edges }
    }

    pub fn empty(n: usize) -> Result<CircleGraph> {
        CircleGraph::new(n, core::iter::empty::<(usize, usize)>())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn index_of(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    /// A copy without the given edges; absent edges are ignored.
    pub fn without(&self, removed: &[Edge]) -> CircleGraph {
        let edges = self.edges.iter().copied().filter(|e| !removed.contains(e)).collect();
        CircleGraph { n: self.n, edges }
    }

    /// A copy with `e` added.
    pub fn with_edge(&self, e: Edge) -> Result<CircleGraph> {
        Edge::checked(self.n, e.lo, e.hi)?;
        if self.contains(e) {
            return Err(Error::DuplicateEdge(e));
        }
        let mut edges = self.edges.clone();
        edges.push(e);
        edges.sort_unstable();
        Ok(CircleGraph { n: self.n, edges })
    }

    pub fn degree(&self, p: usize) -> usize {
        self.edges.iter().filter(|e| e.has(p)).count()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n + 1];
        for e in &self.edges {
            adj[e.lo].push(e.hi);
            adj[e.hi].push(e.lo);
        }
        adj
    }

    /// Points touched by at least one edge, ascending.
    pub fn vertices(&self) -> Vec<usize> {
        let mut used = vec![false; self.n + 1];
        for e in &self.edges {
            used[e.lo] = true;
            used[e.hi] = true;
        }
        (1..=self.n).filter(|&p| used[p]).collect()
    }

    /// True when all `n` points form one connected component.
    pub fn is_connected(&self) -> bool {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n + 1];
        let mut stack = vec![1];
        seen[1] = true;
        let mut count = 1;
        while let Some(p) = stack.pop() {
            for &q in &adj[p] {
                if !seen[q] {
                    seen[q] = true;
                    count += 1;
                    stack.push(q);
                }
            }
        }
        count == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.n && self.is_connected()
    }

    /// Edges of the graph crossing `e`.
    pub fn cross_set(&self, e: Edge) -> Result<Vec<Edge>> {
        if !self.contains(e) {
            return Err(Error::EdgeNotInGraph(e));
        }
        Ok(self.edges.iter().copied().filter(|f| f.crosses(e)).collect())
    }

    /// For every edge, the indices of the edges crossing it.
    pub fn cross_indices(&self) -> Vec<Vec<usize>> {
        let m = self.edges.len();
        let mut out = vec![Vec::new(); m];
        for i in 0..m {
            for j in i + 1..m {
                if self.edges[i].crosses(self.edges[j]) {
                    out[i].push(j);
                    out[j].push(i);
                }
            }
        }
        out
    }

    pub fn is_crossed(&self, e: Edge) -> bool {
        self.edges.iter().any(|f| f.crosses(e))
    }

    pub fn has_crossing(&self) -> bool {
        let m = self.edges.len();
        (0..m).any(|i| (i + 1..m).any(|j| self.edges[i].crosses(self.edges[j])))
    }

    /// Edges crossed by nothing.
    pub fn uncrossed_edges(&self) -> Vec<Edge> {
        let cross = self.cross_indices();
        self.edges.iter().zip(&cross).filter(|(_, c)| c.is_empty()).map(|(e, _)| *e).collect()
    }

    /// Partition of the crossed edges by equal cross sets.
    ///
    /// Classes come back sorted by their first edge; each class is ordered
    /// increasingly parallel (outermost first, nested inward).
    pub fn parallel_classes(&self) -> Vec<Vec<Edge>> {
        let cross = self.cross_indices();
        let mut groups: BTreeMap<&[usize], Vec<usize>> = BTreeMap::new();
        for (i, c) in cross.iter().enumerate() {
            if !c.is_empty() {
                groups.entry(c.as_slice()).or_default().push(i);
            }
        }
        let mut classes: Vec<Vec<Edge>> = groups
            .into_iter()
            .map(|(crossing, members)| {
                let axis = self.edges[crossing[0]];
                order_bundle(self.n, axis, members.into_iter().map(|i| self.edges[i]).collect())
            })
            .collect();
        classes.sort_by_key(|c| c.iter().copied().min());
        classes
    }

    /// The parallel class containing `e`, ordered increasingly parallel.
    pub fn parallel_class_of(&self, e: Edge) -> Result<Vec<Edge>> {
        let crossing = self.cross_set(e)?;
        if crossing.is_empty() {
            return Err(Error::EdgeUncrossed(e));
        }
        let members = self
            .edges
            .iter()
            .copied()
            .filter(|&f| f == e || (!f.crosses(e) && self.edges.iter().all(|&x| x.crosses(f) == x.crosses(e))))
            .collect();
        Ok(order_bundle(self.n, crossing[0], members))
    }

    /// `r(i) = i + 1`, `r(n) = 1`.
    pub fn rotate(&self) -> CircleGraph {
        self.rotate_by(1)
    }

    pub fn rotate_by(&self, s: usize) -> CircleGraph {
        let n = self.n;
        let s = s % n;
        let edges = self.edges.iter().map(|e| e.map(|p| rotate_point(p, s, n))).collect();
        CircleGraph::from_sorted_unchecked(n, edges)
    }

    /// Relabel clockwise: `1 -> 1`, `i -> n + 2 - i`.
    pub fn reflect(&self) -> CircleGraph {
        let n = self.n;
        let sigma = |p: usize| if p == 1 { 1 } else { n + 2 - p };
        let edges = self.edges.iter().map(|e| e.map(sigma)).collect();
        CircleGraph::from_sorted_unchecked(n, edges)
    }

    /// Smallest `m >= 1` with `rotate^m(G) = G`.
    pub fn min_period(&self) -> Result<usize> {
        if self.edges.is_empty() {
            return Err(Error::EmptyGraph);
        }
        Ok(smallest_period(self.n, &self.edges))
    }

    /// Drop isolated points, renumber, and take the least rotation.
    pub fn canonicalize(&self) -> CanonicalForm {
        let used = self.vertices();
        if used.is_empty() {
            return CanonicalForm { k: 0, edges: Vec::new(), period: 0 };
        }
        let mut relabel = vec![0; self.n + 1];
        for (i, &p) in used.iter().enumerate() {
            relabel[p] = i + 1;
        }
        let k = used.len();
        let base: Vec<Edge> = self.edges.iter().map(|e| e.map(|p| relabel[p])).collect();
        let mut best: Option<Vec<Edge>> = None;
        for s in 0..k {
            let mut rotated: Vec<Edge> = base.iter().map(|e| e.map(|p| rotate_point(p, s, k))).collect();
            rotated.sort_unstable();
            if best.as_ref().is_none_or(|b| rotated < *b) {
                best = Some(rotated);
            }
        }
        let edges = best.unwrap_or_default();
        let period = smallest_period(k, &edges);
        CanonicalForm { k, edges, period }
    }

    /// Edges in the text format `n=<n>;edges=a-b,...`.
    pub fn to_edge_list(&self) -> alloc::string::String {
        alloc::format!("{self}")
    }
}

impl fmt::Display for CircleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={};edges=", self.n)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CircleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Orders parallel edges along the bundle. Every member crosses `axis`, so
/// each has exactly one endpoint strictly inside `axis`'s arc; sorting by it
/// (ties by the outer endpoint, farthest first) walks the ladder from one
/// outermost rung to the other.
fn order_bundle(n: usize, axis: Edge, mut members: Vec<Edge>) -> Vec<Edge> {
    let key = |e: &Edge| {
        let (inner, outer) = split_by_axis(axis, *e);
        let outer_pos = (outer + n - axis.hi) % n;
        (inner, core::cmp::Reverse(outer_pos))
    };
    members.sort_by_key(key);
    members
}

/// `(inner, outer)` endpoints of `e` relative to a crossing `axis`.
pub(crate) fn split_by_axis(axis: Edge, e: Edge) -> (usize, usize) {
    let inside = |p: usize| axis.lo < p && p < axis.hi;
    if inside(e.lo) {
        (e.lo, e.hi)
    } else {
        (e.hi, e.lo)
    }
}

fn smallest_period(n: usize, edges: &[Edge]) -> usize {
    for s in 1..n {
        if !n.is_multiple_of(s) {
            continue;
        }
        let mut rotated: Vec<Edge> = edges.iter().map(|e| e.map(|p| rotate_point(p, s, n))).collect();
        rotated.sort_unstable();
        if rotated == edges {
            return s;
        }
    }
    n
}

/// A graph up to rotation: isolated points dropped, points renumbered
/// `1..=k`, edge list the least of the `k` rotations.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalForm {
    pub k: usize,
    pub edges: Vec<Edge>,
    pub period: usize,
}

impl CanonicalForm {
    /// The form as a graph on its own `k` points.
    pub fn to_graph(&self) -> Result<CircleGraph> {
        CircleGraph::from_edges(self.k, self.edges.clone())
    }
}

/// A connected circle graph with exactly `n - 1` edges.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CircleTree(CircleGraph);

impl CircleTree {
    pub fn new<I, E>(n: usize, edges: I) -> Result<CircleTree>
    where
        I: IntoIterator<Item = E>,
        E: Into<(usize, usize)>,
    {
        CircleTree::try_from(CircleGraph::new(n, edges)?)
    }

    /// Decodes a Prüfer sequence of length `n - 2` over `1..=n`.
    pub fn from_prufer(seq: &[usize]) -> Result<CircleTree> {
        let n = seq.len() + 2;
        if n < 3 {
            return Err(Error::TooFewPoints(n));
        }
        if let Some(&p) = seq.iter().find(|&&p| p == 0 || p > n) {
            return Err(Error::PointOutOfRange { point: p, n });
        }
        let mut degree = vec![1usize; n + 1];
        for &p in seq {
            degree[p] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        for &p in seq {
            let leaf = (1..=n).find(|&q| degree[q] == 1).expect("a leaf always exists");
            edges.push(Edge::new(leaf, p));
            degree[leaf] -= 1;
            degree[p] -= 1;
        }
        let mut last = (1..=n).filter(|&q| degree[q] == 1);
        let (a, b) = (last.next(), last.next());
        edges.push(Edge::new(a.expect("two leaves remain"), b.expect("two leaves remain")));
        Ok(CircleTree(CircleGraph::from_sorted_unchecked(n, edges)))
    }

    pub fn prufer(&self) -> Vec<usize> {
        let n = self.0.n;
        let adj = self.0.adjacency();
        let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
        let mut removed = vec![false; n + 1];
        let mut seq = Vec::with_capacity(n.saturating_sub(2));
        for _ in 0..n.saturating_sub(2) {
            let leaf = (1..=n).find(|&q| !removed[q] && degree[q] == 1).expect("tree has a leaf");
            let parent = adj[leaf].iter().copied().find(|&q| !removed[q]).expect("leaf has a neighbor");
            seq.push(parent);
            removed[leaf] = true;
            degree[parent] -= 1;
        }
        seq
    }

    pub fn graph(&self) -> &CircleGraph {
        &self.0
    }

    pub fn into_graph(self) -> CircleGraph {
        self.0
    }
}

impl TryFrom<CircleGraph> for CircleTree {
    type Error = Error;

    fn try_from(g: CircleGraph) -> Result<CircleTree> {
        if g.is_tree() {
            Ok(CircleTree(g))
        } else {
            Err(Error::NotATree)
        }
    }
}

impl Deref for CircleTree {
    type Target = CircleGraph;

    fn deref(&self) -> &CircleGraph {
        &self.0
    }
}

impl fmt::Display for CircleTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for CircleTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Every Prüfer sequence on `n` points in lexicographic order.
pub fn prufer_sequences(n: usize) -> impl Iterator<Item = Vec<usize>> {
    let len = n.saturating_sub(2);
    let total = n.checked_pow(len as u32).unwrap_or(0);
    (0..total).map(move |mut idx| {
        let mut seq = vec![1; len];
        for slot in seq.iter_mut().rev() {
            *slot = idx % n + 1;
            idx /= n;
        }
        seq
    })
}

/// All labeled trees on `n` points, via Prüfer sequences.
pub fn all_trees(n: usize) -> impl Iterator<Item = CircleTree> {
    prufer_sequences(n).map(|s| CircleTree::from_prufer(&s).expect("sequence in range"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> CircleGraph {
        CircleGraph::new(n, edges.iter().copied()).unwrap()
    }

    fn worked() -> CircleGraph {
        g(7, &[(1, 4), (2, 7), (3, 6), (4, 5), (2, 3), (5, 6)])
    }

    fn e(a: usize, b: usize) -> Edge {
        Edge::new(a, b)
    }

    #[test]
    fn crossing_examples() {
        assert!(crosses(6, e(1, 4), e(2, 5)).unwrap());
        assert!(!crosses(6, e(1, 2), e(3, 6)).unwrap());
        assert!(!crosses(7, e(4, 5), e(1, 4)).unwrap());
        assert_eq!(crosses(6, e(1, 7), e(2, 5)), Err(Error::PointOutOfRange { point: 7, n: 6 }));
        assert_eq!(crosses(6, e(1, 4), e(1, 4)), Err(Error::SameEdge(e(1, 4))));
    }

    #[test]
    fn graph_validation() {
        assert_eq!(CircleGraph::new(2, [(1, 2)]), Err(Error::TooFewPoints(2)));
        assert_eq!(CircleGraph::new(4, [(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(CircleGraph::new(4, [(1, 2), (2, 1)]), Err(Error::DuplicateEdge(e(1, 2))));
        assert_eq!(CircleGraph::new(4, [(0, 2)]), Err(Error::PointOutOfRange { point: 0, n: 4 }));
    }

    #[test]
    fn cross_set_examples() {
        let w = worked();
        assert_eq!(w.cross_set(e(1, 4)).unwrap(), vec![e(2, 7), e(3, 6)]);
        assert!(w.cross_set(e(4, 5)).unwrap().is_empty());
        assert_eq!(g(4, &[(1, 3), (2, 4)]).cross_set(e(1, 3)).unwrap(), vec![e(2, 4)]);
        assert_eq!(w.cross_set(e(1, 2)), Err(Error::EdgeNotInGraph(e(1, 2))));
    }

    #[test]
    fn parallel_class_examples() {
        assert_eq!(worked().parallel_classes(), vec![vec![e(1, 4)], vec![e(2, 7), e(3, 6)]]);
        assert_eq!(
            g(6, &[(1, 4), (2, 5), (3, 6)]).parallel_classes(),
            vec![vec![e(1, 4)], vec![e(2, 5)], vec![e(3, 6)]]
        );
        assert!(g(5, &[(1, 2), (2, 3), (1, 4)]).parallel_classes().is_empty());
        assert_eq!(worked().parallel_class_of(e(3, 6)).unwrap(), vec![e(2, 7), e(3, 6)]);
    }

    #[test]
    fn shared_endpoint_bundle_is_ordered_as_a_ladder() {
        let h = g(5, &[(1, 3), (1, 4), (2, 5), (4, 5)]);
        assert_eq!(h.parallel_class_of(e(1, 4)).unwrap(), vec![e(1, 3), e(1, 4)]);
    }

    #[test]
    fn rotation_examples() {
        let x = g(4, &[(1, 3), (2, 4)]);
        assert_eq!(x.rotate(), x);
        assert_eq!(g(4, &[(1, 2)]).rotate(), g(4, &[(2, 3)]));
        let mut r = worked();
        for _ in 0..7 {
            r = r.rotate();
        }
        assert_eq!(r, worked());
        assert_ne!(worked().rotate(), worked());
    }

    #[test]
    fn reflection_examples() {
        let x = g(4, &[(1, 3), (2, 4)]);
        assert_eq!(x.reflect(), x);
        assert_eq!(g(5, &[(1, 2)]).reflect(), g(5, &[(1, 5)]));
        assert_eq!(worked().reflect().reflect(), worked());
    }

    #[test]
    fn canonical_examples() {
        // The least rotation of {(1,3),(2,4),(3,4)} on 4 points is {(1,2),(1,3),(2,4)}.
        let c = g(7, &[(1, 4), (2, 7), (4, 7)]).canonicalize();
        assert_eq!(c.k, 4);
        assert_eq!(c.edges, vec![e(1, 2), e(1, 3), e(2, 4)]);
        assert_eq!(c.period, 4);
        assert_eq!(g(4, &[(1, 3), (2, 4), (3, 4)]).canonicalize(), c);

        // A single crossing pair is fixed by every rotation of its four points.
        let c = g(5, &[(2, 4), (3, 5)]).canonicalize();
        assert_eq!((c.k, c.edges.clone(), c.period), (4, vec![e(1, 3), e(2, 4)], 1));

        let c = CircleGraph::empty(5).unwrap().canonicalize();
        assert_eq!((c.k, c.edges.len(), c.period), (0, 0, 0));
    }

    #[test]
    fn min_period_examples() {
        assert_eq!(g(4, &[(1, 2), (1, 3), (1, 4)]).min_period().unwrap(), 4);
        assert_eq!(g(6, &[(1, 4), (2, 5), (3, 6)]).min_period().unwrap(), 1);
        assert_eq!(g(4, &[(1, 3), (2, 4)]).min_period().unwrap(), 1);
        assert_eq!(g(8, &[(1, 5), (3, 7)]).min_period().unwrap(), 2);
        assert_eq!(CircleGraph::empty(4).unwrap().min_period(), Err(Error::EmptyGraph));
    }

    #[test]
    fn prufer_examples() {
        let star = CircleTree::from_prufer(&[1, 1]).unwrap();
        assert_eq!(star.edges(), &[e(1, 2), e(1, 3), e(1, 4)]);
        let path = CircleTree::from_prufer(&[2]).unwrap();
        assert_eq!(path.edges(), &[e(1, 2), e(2, 3)]);
        let all: alloc::collections::BTreeSet<_> = all_trees(4).collect();
        assert_eq!(all.len(), 16);
        assert_eq!(CircleTree::from_prufer(&[5, 1]), Err(Error::PointOutOfRange { point: 5, n: 4 }));
    }

    #[test]
    fn prufer_round_trip_small_n() {
        for n in 3..=6 {
            for seq in prufer_sequences(n) {
                let t = CircleTree::from_prufer(&seq).unwrap();
                assert!(t.is_tree());
                assert_eq!(t.prufer(), seq);
            }
        }
    }

    #[test]
    fn tree_check() {
        assert_eq!(CircleTree::new(4, [(1, 2), (2, 3)]), Err(Error::NotATree));
        assert_eq!(CircleTree::new(4, [(1, 2), (2, 3), (1, 3)]), Err(Error::NotATree));
        assert!(CircleTree::new(4, [(1, 2), (2, 3), (3, 4)]).is_ok());
    }

    fn arb_graph() -> impl Strategy<Value = CircleGraph> {
        (3usize..10).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect();
            proptest::sample::subsequence(pairs.clone(), 0..=pairs.len().min(12))
                .prop_map(move |edges| CircleGraph::new(n, edges).unwrap())
        })
    }

    proptest! {
        #[test]
        fn crossing_is_symmetric(graph in arb_graph()) {
            for &a in graph.edges() {
                for &b in graph.edges() {
                    prop_assert_eq!(a.crosses(b), b.crosses(a));
                    if a.shares_endpoint(b) {
                        prop_assert!(!a.crosses(b));
                    }
                }
            }
        }

        #[test]
        fn parallel_edges_never_cross(graph in arb_graph()) {
            for class in graph.parallel_classes() {
                for &a in &class {
                    for &b in &class {
                        prop_assert!(!a.crosses(b));
                    }
                }
            }
        }

        #[test]
        fn canonical_form_is_rotation_invariant(graph in arb_graph(), s in 0usize..12) {
            let c = graph.canonicalize();
            prop_assert_eq!(graph.rotate_by(s).canonicalize(), c.clone());
            if c.k > 0 {
                prop_assert_eq!(c.k % c.period, 0);
            }
        }

        #[test]
        fn reflection_conjugates_rotation(graph in arb_graph()) {
            let n = graph.n();
            prop_assert_eq!(graph.rotate().reflect(), graph.reflect().rotate_by(n - 1));
            prop_assert_eq!(graph.reflect().reflect(), graph.clone());
        }

        #[test]
        fn rotation_preserves_parallel_classes(graph in arb_graph()) {
            let n = graph.n();
            let rotated: alloc::collections::BTreeSet<Vec<Edge>> = graph
                .parallel_classes()
                .into_iter()
                .map(|c| {
                    let mut c: Vec<Edge> = c.into_iter().map(|e| e.map(|p| rotate_point(p, 1, n))).collect();
                    c.sort();
                    c
                })
                .collect();
            let direct: alloc::collections::BTreeSet<Vec<Edge>> = graph
                .rotate()
                .parallel_classes()
                .into_iter()
                .map(|mut c| { c.sort(); c })
                .collect();
            prop_assert_eq!(rotated, direct);
        }

        #[test]
        fn min_period_divides_n(graph in arb_graph()) {
            if !graph.is_empty() {
                let m = graph.min_period().unwrap();
                prop_assert_eq!(graph.n() % m, 0);
                prop_assert_eq!(graph.rotate_by(m), graph.clone());
            }
        }
    }
}
