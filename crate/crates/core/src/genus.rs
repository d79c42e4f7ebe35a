//! Genus of a circle graph drawn with straight chords.
//!
//! The map is the chords together with the `n` arcs of the circle. Straight
//! chords fix the cyclic order of darts at every point, so the genus follows
//! from Euler's formula once faces are traced.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::CircleGraph;

/// Where a dart leads, seen from its own point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DartKind {
    /// Along the circle to the given neighboring point.
    Arc { to: usize },
    /// Along a chord to the given point.
    Chord { to: usize },
}

/// Darts, the counterclockwise rotation at each point, and the edge
/// involution.
///
/// Edge `k` owns darts `2k` and `2k + 1`. Chords come first, in graph order,
/// then arc `i` joining `i` and `i + 1` (arc `n` joins `n` and `1`).
#[derive(Clone, Debug)]
pub struct RotationSystem {
    n: usize,
    chords: usize,
    /// Point each dart leaves from.
    tail: Vec<usize>,
    kind: Vec<DartKind>,
    rho: Vec<usize>,
    iota: Vec<usize>,
    /// Darts around each point in counterclockwise order, indexed by point.
    order: Vec<Vec<usize>>,
}

impl RotationSystem {
    pub fn dart_count(&self) -> usize {
        self.tail.len()
    }

    pub fn rho(&self) -> &[usize] {
        &self.rho
    }

    pub fn iota(&self) -> &[usize] {
        &self.iota
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.chords + self.n
    }

    /// Counterclockwise dart order around point `p`.
    pub fn rotation_at(&self, p: usize) -> Vec<DartKind> {
        self.order[p].iter().map(|&d| self.kind[d]).collect()
    }

    /// Number of cycles of `rho ∘ iota`.
    pub fn face_count(&self) -> usize {
        let mut seen = vec![false; self.dart_count()];
        let mut faces = 0;
        for start in 0..self.dart_count() {
            if seen[start] {
                continue;
            }
            faces += 1;
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                d = self.rho[self.iota[d]];
            }
        }
        faces
    }

    /// Number of cycles of `rho`; equals `n` for a well-formed system.
    pub fn vertex_cycle_count(&self) -> usize {
        let mut seen = vec![false; self.dart_count()];
        let mut cycles = 0;
        for start in 0..self.dart_count() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                d = self.rho[d];
            }
        }
        cycles
    }
}

/// Builds the rotation system induced by the straight-chord drawing.
///
/// Around point `i`, counterclockwise: the arc dart toward `i + 1`, then chord
/// darts by increasing counterclockwise distance from `i` to the far
/// endpoint, then the arc dart toward `i - 1`.
pub fn build_rotation_system(g: &CircleGraph) -> RotationSystem {
    let n = g.n();
    let chords = g.len();
    let edge_total = chords + n;
    let mut tail = vec![0; 2 * edge_total];
    let mut kind = vec![DartKind::Arc { to: 0 }; 2 * edge_total];
    for (k, e) in g.edges().iter().enumerate() {
        tail[2 * k] = e.lo();
        kind[2 * k] = DartKind::Chord { to: e.hi() };
        tail[2 * k + 1] = e.hi();
        kind[2 * k + 1] = DartKind::Chord { to: e.lo() };
    }
    for i in 1..=n {
        let k = chords + i - 1;
        let next = i % n + 1;
        tail[2 * k] = i;
        kind[2 * k] = DartKind::Arc { to: next };
        tail[2 * k + 1] = next;
        kind[2 * k + 1] = DartKind::Arc { to: i };
    }

    // Sort key: 0 for the arc forward, ccw distance for chords, n for the arc back.
    let key = |d: usize| -> usize {
        let from = tail[d];
        match kind[d] {
            DartKind::Arc { to } if to == from % n + 1 => 0,
            DartKind::Arc { .. } => n,
            DartKind::Chord { to } => (to + n - from) % n,
        }
    };
    let mut order = vec![Vec::new(); n + 1];
    for d in 0..tail.len() {
        order[tail[d]].push(d);
    }
    let mut rho = vec![0; tail.len()];
    for darts in order.iter_mut() {
        darts.sort_by_key(|&d| key(d));
        for (j, &d) in darts.iter().enumerate() {
            rho[d] = darts[(j + 1) % darts.len()];
        }
    }
    let iota = (0..tail.len()).map(|d| d ^ 1).collect();
    RotationSystem { n, chords, tail, kind, rho, iota, order }
}

/// Genus of the graph together with its circle, from `V - E + F = 2 - 2g`.
pub fn genus(g: &CircleGraph) -> Result<usize> {
    let rs = build_rotation_system(g);
    let v = rs.vertex_count() as i64;
    let e = rs.edge_count() as i64;
    let f = rs.face_count() as i64;
    let twice = 2 - v + e - f;
    if twice < 0 || twice % 2 != 0 {
        return Err(Error::Invariant(format!("Euler characteristic gives 2g = {twice} for {g} (V={v}, E={e}, F={f})")));
    }
    Ok((twice / 2) as usize)
}
