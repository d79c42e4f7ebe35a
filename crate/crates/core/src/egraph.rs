//! Edgelike graphs and the three-step e-reduction.
//!
//! An e-graph is a bundle of parallel edges together with the uncrossed edges
//! living on the bundle's two arcs. In a genus-one tree it behaves like a
//! single fat edge: the e-reduction keeps one bundle edge per e-graph, drops
//! every uncrossed edge, and then re-adds one uncrossed bridge for every path
//! of uncrossed edges that joined two e-graphs.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{split_by_axis, CircleGraph, CircleTree, Edge};
use crate::reduction::{class_representative, is_genus_one};

/// Closed counterclockwise interval of points from `start` to `end`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub start: usize,
    pub end: usize,
}

impl Arc {
    pub fn contains(self, p: usize, n: usize) -> bool {
        (p + n - self.start) % n <= (self.end + n - self.start) % n
    }

    /// Strictly between `start` and `end`.
    pub fn contains_open(self, p: usize, n: usize) -> bool {
        self.contains(p, n) && p != self.start && p != self.end
    }

    pub fn points(self, n: usize) -> Vec<usize> {
        let len = (self.end + n - self.start) % n;
        (0..=len).map(|i| (self.start - 1 + i) % n + 1).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EGraph {
    /// Bundle edges, increasingly parallel.
    pub parallel: Vec<Edge>,
    pub uncrossed: Vec<Edge>,
    /// The two arcs, sorted by start point.
    pub arcs: [Arc; 2],
    /// First and last bundle edge; equal for a singleton bundle.
    pub outermost: (Edge, Edge),
}

impl EGraph {
    pub fn edges(&self) -> Vec<Edge> {
        let mut all: Vec<Edge> = self.parallel.iter().chain(&self.uncrossed).copied().collect();
        all.sort_unstable();
        all
    }

    pub fn vertices(&self) -> BTreeSet<usize> {
        self.parallel.iter().chain(&self.uncrossed).flat_map(|e| e.endpoints()).collect()
    }

    pub fn on_arcs(&self, p: usize, n: usize) -> bool {
        self.arcs.iter().any(|a| a.contains(p, n))
    }

    /// Index of the arc holding `p`, if any.
    pub fn arc_of(&self, p: usize, n: usize) -> Option<usize> {
        self.arcs.iter().position(|a| a.contains(p, n))
    }

    /// The bundle's default survivor under e-reduction.
    pub fn representative(&self) -> Edge {
        class_representative(&self.parallel)
    }
}

/// The e-graph of `g` containing the crossed edge `e`.
pub fn egraph_of(g: &CircleGraph, e: Edge) -> Result<EGraph> {
    let n = g.n();
    let class = g.parallel_class_of(e)?;
    let crossing = g.cross_set(e)?;
    let axis = crossing[0];
    let uncrossed = g.uncrossed_edges();

    // Points reachable from `e` along uncrossed edges and bundle edges.
    let walkable: Vec<Edge> = uncrossed.iter().chain(&class).copied().collect();
    let mut reached = vec![false; n + 1];
    let mut stack = vec![e.lo(), e.hi()];
    for p in e.endpoints() {
        reached[p] = true;
    }
    while let Some(p) = stack.pop() {
        for f in &walkable {
            if let Some(q) = f.other(p) {
                if !reached[q] {
                    reached[q] = true;
                    stack.push(q);
                }
            }
        }
    }
    let reached_members: Vec<Edge> = class.iter().copied().filter(|f| reached[f.lo()] && reached[f.hi()]).collect();
    let first = reached_members[0];
    let last = reached_members[reached_members.len() - 1];

    let (inner_first, outer_first) = split_by_axis(axis, first);
    let (inner_last, outer_last) = split_by_axis(axis, last);
    let mut arcs = [Arc { start: inner_first, end: inner_last }, Arc { start: outer_last, end: outer_first }];
    arcs.sort();
    let on_arcs = |p: usize| arcs.iter().any(|a| a.contains(p, n));
    let inside = |f: &Edge| on_arcs(f.lo()) && on_arcs(f.hi());

    Ok(EGraph {
        parallel: class.iter().copied().filter(inside).collect(),
        uncrossed: uncrossed.iter().copied().filter(inside).collect(),
        arcs,
        outermost: (first, last),
    })
}

/// One e-graph per crossed edge, deduplicated by bundle.
pub fn egraph_decomposition(g: &CircleGraph) -> Result<Vec<EGraph>> {
    let mut seen: BTreeMap<Vec<Edge>, EGraph> = BTreeMap::new();
    let cross = g.cross_indices();
    for (i, &e) in g.edges().iter().enumerate() {
        if cross[i].is_empty() {
            continue;
        }
        let eg = egraph_of(g, e)?;
        let mut key = eg.parallel.clone();
        key.sort_unstable();
        seen.entry(key).or_insert(eg);
    }
    Ok(seen.into_values().collect())
}

/// A path of uncrossed edges joining two different e-graphs through no
/// other e-graph point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectingPath {
    /// Points along the path, from the source e-graph to the target.
    pub points: Vec<usize>,
    pub source: usize,
    pub target: usize,
}

impl ConnectingPath {
    pub fn edges(&self) -> Vec<Edge> {
        self.points.windows(2).map(|w| Edge::new(w[0], w[1])).collect()
    }
}

/// The paths the third reduction step bridges, each reported once with
/// `source < target`.
pub fn connecting_paths(g: &CircleGraph, egraphs: &[EGraph]) -> Vec<ConnectingPath> {
    let n = g.n();
    let mut owner: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (i, eg) in egraphs.iter().enumerate() {
        for p in eg.vertices() {
            owner[p].push(i);
        }
    }
    let in_egraph: BTreeSet<Edge> = egraphs.iter().flat_map(EGraph::edges).collect();
    let pool: Vec<Edge> = g.uncrossed_edges().into_iter().filter(|e| !in_egraph.contains(e)).collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for e in &pool {
        adj[e.lo()].push(e.hi());
        adj[e.hi()].push(e.lo());
    }

    let mut found = Vec::new();
    for (source, eg) in egraphs.iter().enumerate() {
        for start in eg.vertices() {
            for &next in &adj[start] {
                let mut points = vec![start];
                walk(&adj, &owner, source, next, &mut points, &mut found);
            }
        }
    }
    found.sort_by(|a: &ConnectingPath, b| (a.source, a.target, &a.points).cmp(&(b.source, b.target, &b.points)));
    found
}

fn walk(
    adj: &[Vec<usize>],
    owner: &[Vec<usize>],
    source: usize,
    at: usize,
    points: &mut Vec<usize>,
    found: &mut Vec<ConnectingPath>,
) {
    if points.contains(&at) {
        return;
    }
    points.push(at);
    if !owner[at].is_empty() {
        for &target in &owner[at] {
            if target > source {
                found.push(ConnectingPath { points: points.clone(), source, target });
            }
        }
    } else {
        for &next in &adj[at] {
            walk(adj, owner, source, next, points, found);
        }
    }
    points.pop();
}

/// Everything the e-reduction produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EReduction {
    pub egraphs: Vec<EGraph>,
    /// Surviving bundle edge per e-graph, same order as `egraphs`.
    pub representatives: Vec<Edge>,
    pub paths: Vec<ConnectingPath>,
    /// After the first two steps.
    pub prereduced: CircleGraph,
    /// After the third step.
    pub reduced: CircleGraph,
}

/// E-reduction with each bundle keeping its default representative.
pub fn e_reduce(t: &CircleTree) -> Result<EReduction> {
    e_reduce_with(t, &mut |eg| eg.representative())
}

/// E-reduction with `pick` choosing the surviving bundle edge.
pub fn e_reduce_with(t: &CircleTree, pick: &mut dyn FnMut(&EGraph) -> Edge) -> Result<EReduction> {
    if !is_genus_one(t) {
        return Err(Error::NotGenusOne);
    }
    let g: &CircleGraph = t;
    let n = g.n();
    let egraphs = egraph_decomposition(g)?;
    let representatives: Vec<Edge> = egraphs.iter().map(pick).collect();
    for (eg, rep) in egraphs.iter().zip(&representatives) {
        if !eg.parallel.contains(rep) {
            return Err(Error::Invariant(format!("representative {rep} is not in its bundle")));
        }
    }

    // First step: one edge per bundle. Second step: drop uncrossed edges.
    let mut dropped: Vec<Edge> = egraphs
        .iter()
        .zip(&representatives)
        .flat_map(|(eg, rep)| eg.parallel.iter().copied().filter(move |e| e != rep))
        .collect();
    let first = g.without(&dropped);
    dropped = first.uncrossed_edges();
    let prereduced = first.without(&dropped);

    // Third step: one bridge per connecting path.
    let paths = connecting_paths(g, &egraphs);
    let mut reduced = prereduced.clone();
    for path in &paths {
        let start = path.points[0];
        let end = *path.points.last().expect("path has two points");
        let a = endpoint_on_arc_of(&egraphs[path.source], representatives[path.source], start, n)?;
        let b = endpoint_on_arc_of(&egraphs[path.target], representatives[path.target], end, n)?;
        let bridge = Edge::new(a, b);
        if !reduced.contains(bridge) {
            reduced = reduced.with_edge(bridge)?;
        }
    }
    Ok(EReduction { egraphs, representatives, paths, prereduced, reduced })
}

fn endpoint_on_arc_of(eg: &EGraph, rep: Edge, p: usize, n: usize) -> Result<usize> {
    let arc = eg.arc_of(p, n).ok_or_else(|| Error::Invariant(format!("path point {p} is off its e-graph's arcs")))?;
    rep.endpoints()
        .into_iter()
        .find(|&q| eg.arcs[arc].contains(q, n))
        .ok_or_else(|| Error::Invariant(format!("representative {rep} misses arc {:?}", eg.arcs[arc])))
}
