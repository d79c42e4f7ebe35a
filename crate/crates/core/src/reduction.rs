//! Uncrossed/parallel reduction to the final offspring, and recognition of
//! the two irreducible genus-one forms.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{CanonicalForm, CircleGraph, Edge};

/// The two deletion moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Operation {
    /// Delete one edge crossed by no other edge.
    DeleteUncrossed,
    /// Delete all but one edge of a parallel class.
    CollapseParallel,
}

impl Operation {
    pub fn id(self) -> &'static str {
        match self {
            Operation::DeleteUncrossed => "delete-uncrossed",
            Operation::CollapseParallel => "collapse-parallel",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub op: Operation,
    pub removed: Vec<Edge>,
}

/// Every deletion performed on the way to the final offspring, in order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
}

impl ReductionTrace {
    /// The graph after each step, starting with `start` itself.
    pub fn replay(&self, start: &CircleGraph) -> Vec<CircleGraph> {
        let mut out = vec![start.clone()];
        for step in &self.steps {
            let next = out.last().expect("nonempty").without(&step.removed);
            out.push(next);
        }
        out
    }
}

/// Edges with an empty cross set.
pub fn uncrossed_edges(g: &CircleGraph) -> Vec<Edge> {
    g.uncrossed_edges()
}

/// The edge kept when a parallel class collapses: the lexicographically
/// smaller of its two outermost edges.
pub fn class_representative(class: &[Edge]) -> Edge {
    let first = class[0];
    let last = class[class.len() - 1];
    first.min(last)
}

/// Reduces `g` until no edge is uncrossed and every parallel class is a
/// singleton.
///
/// Each round deletes every uncrossed edge (one step per edge), then
/// collapses every parallel class of size two or more (one step per class).
pub fn final_offspring(g: &CircleGraph) -> (CircleGraph, ReductionTrace) {
    let mut current = g.clone();
    let mut trace = ReductionTrace::default();
    loop {
        let uncrossed = current.uncrossed_edges();
        if !uncrossed.is_empty() {
            for &e in &uncrossed {
                trace.steps.push(ReductionStep { op: Operation::DeleteUncrossed, removed: vec![e] });
            }
            current = current.without(&uncrossed);
            continue;
        }
        let mut removed = Vec::new();
        for class in current.parallel_classes().into_iter().filter(|c| c.len() > 1) {
            let keep = class_representative(&class);
            let dropped: Vec<Edge> = class.into_iter().filter(|&e| e != keep).collect();
            removed.extend_from_slice(&dropped);
            trace.steps.push(ReductionStep { op: Operation::CollapseParallel, removed: dropped });
        }
        if removed.is_empty() {
            return (current, trace);
        }
        current = current.without(&removed);
    }
}

/// Like [`final_offspring`], but one move at a time with every choice left
/// to `choose(count)`, which must return an index below `count`.
///
/// Moves are: delete any single uncrossed edge, or collapse any parallel
/// class of size two or more keeping any one of its members.
pub fn final_offspring_with(g: &CircleGraph, choose: &mut dyn FnMut(usize) -> usize) -> (CircleGraph, ReductionTrace) {
    let mut current = g.clone();
    let mut trace = ReductionTrace::default();
    loop {
        let uncrossed = current.uncrossed_edges();
        let classes: Vec<Vec<Edge>> = current.parallel_classes().into_iter().filter(|c| c.len() > 1).collect();
        let moves = uncrossed.len() + classes.len();
        if moves == 0 {
            return (current, trace);
        }
        let pick = choose(moves);
        let step = if pick < uncrossed.len() {
            ReductionStep { op: Operation::DeleteUncrossed, removed: vec![uncrossed[pick]] }
        } else {
            let class = &classes[pick - uncrossed.len()];
            let keep = class[choose(class.len())];
            let removed = class.iter().copied().filter(|&e| e != keep).collect();
            ReductionStep { op: Operation::CollapseParallel, removed }
        };
        current = current.without(&step.removed);
        trace.steps.push(step);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormKind {
    Empty,
    /// A single crossing pair.
    Form1,
    /// Three pairwise crossing chords.
    Form2,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinalFormVerdict {
    pub kind: FormKind,
    pub canonical: CanonicalForm,
}

pub fn form1() -> CanonicalForm {
    CircleGraph::new(4, [(1, 3), (2, 4)]).expect("valid").canonicalize()
}

pub fn form2() -> CanonicalForm {
    CircleGraph::new(6, [(1, 4), (2, 5), (3, 6)]).expect("valid").canonicalize()
}

pub fn classify_canonical(canonical: &CanonicalForm) -> FormKind {
    if canonical.edges.is_empty() {
        FormKind::Empty
    } else if *canonical == form1() {
        FormKind::Form1
    } else if *canonical == form2() {
        FormKind::Form2
    } else {
        FormKind::Other
    }
}

pub fn match_final_form(g: &CircleGraph) -> FinalFormVerdict {
    let (offspring, _) = final_offspring(g);
    let canonical = offspring.canonicalize();
    FinalFormVerdict { kind: classify_canonical(&canonical), canonical }
}

/// Genus one exactly when the final offspring is Form 1 or Form 2.
pub fn is_genus_one(g: &CircleGraph) -> bool {
    matches!(match_final_form(g).kind, FormKind::Form1 | FormKind::Form2)
}
