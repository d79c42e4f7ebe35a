//! JSON documents printed by the subcommands. Every document carries
//! `"schema": 1`.

use std::collections::BTreeMap;

use circle_genus_core::egraph::{ConnectingPath, EGraph};
use circle_genus_core::reduction::ReductionStep;
use circle_genus_core::{CanonicalForm, CircleGraph, Edge};
use serde::Serialize;

pub const SCHEMA: u32 = 1;

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: u32,
    #[serde(flatten)]
    body: &'a T,
}

/// Pretty JSON with the schema field first and a trailing newline.
pub fn render<T: Serialize>(body: &T) -> String {
    let mut out = serde_json::to_string_pretty(&Envelope { schema: SCHEMA, body }).expect("serializable");
    out.push('\n');
    out
}

pub fn edge_text(e: Edge) -> String {
    e.to_string()
}

pub fn edge_texts(edges: &[Edge]) -> Vec<String> {
    edges.iter().map(|&e| edge_text(e)).collect()
}

pub fn pairs(edges: &[Edge]) -> Vec<[usize; 2]> {
    edges.iter().map(|e| [e.lo(), e.hi()]).collect()
}

#[derive(Serialize)]
pub struct GenusDoc {
    pub graph: String,
    pub genus: usize,
}

#[derive(Serialize)]
pub struct CanonicalDoc {
    pub k: usize,
    pub edges: Vec<[usize; 2]>,
    pub period: usize,
}

impl From<&CanonicalForm> for CanonicalDoc {
    fn from(c: &CanonicalForm) -> Self {
        CanonicalDoc { k: c.k, edges: pairs(&c.edges), period: c.period }
    }
}

#[derive(Serialize)]
pub struct StepDoc {
    pub op: &'static str,
    pub removed: Vec<String>,
}

impl From<&ReductionStep> for StepDoc {
    fn from(s: &ReductionStep) -> Self {
        StepDoc { op: s.op.id(), removed: edge_texts(&s.removed) }
    }
}

#[derive(Serialize)]
pub struct ReduceDoc {
    pub graph: String,
    pub final_offspring: String,
    pub kind: String,
    pub genus_one: bool,
    pub canonical: CanonicalDoc,
    pub trace: Vec<StepDoc>,
}

#[derive(Serialize)]
pub struct EGraphDoc {
    pub parallel: Vec<String>,
    pub uncrossed: Vec<String>,
    pub arcs: [[usize; 2]; 2],
    pub outermost: [String; 2],
}

impl From<&EGraph> for EGraphDoc {
    fn from(eg: &EGraph) -> Self {
        EGraphDoc {
            parallel: edge_texts(&eg.parallel),
            uncrossed: edge_texts(&eg.uncrossed),
            arcs: eg.arcs.map(|a| [a.start, a.end]),
            outermost: [edge_text(eg.outermost.0), edge_text(eg.outermost.1)],
        }
    }
}

#[derive(Serialize)]
pub struct PathDoc {
    pub points: Vec<usize>,
    pub source: usize,
    pub target: usize,
}

impl From<&ConnectingPath> for PathDoc {
    fn from(p: &ConnectingPath) -> Self {
        PathDoc { points: p.points.clone(), source: p.source, target: p.target }
    }
}

#[derive(Serialize)]
pub struct EReduceDoc {
    pub tree: String,
    pub egraphs: Vec<EGraphDoc>,
    pub representatives: Vec<String>,
    pub paths: Vec<PathDoc>,
    pub added: Vec<String>,
    pub prereduced: String,
    pub reduced: String,
    pub prereduced_form: String,
    pub reduced_form: String,
}

#[derive(Serialize)]
pub struct ClassifyTreeDoc {
    pub tree: String,
    pub form: String,
    pub source: String,
    pub form_points: usize,
    pub form_period: usize,
    pub half_period_form: bool,
    pub l_count: usize,
}

#[derive(Serialize)]
pub struct CensusDoc {
    pub n: usize,
    pub trees: u64,
    pub f_n: u64,
    pub f_mod_n: u64,
    pub classes: u64,
    pub orbit_periods: BTreeMap<usize, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub by_form: Option<BTreeMap<String, u64>>,
    pub half_period_classes: BTreeMap<String, u64>,
    pub p_n: Option<u64>,
    pub verdict: Option<&'static str>,
    pub kernel_version: u32,
}

#[derive(Serialize)]
pub struct ParityDoc {
    pub a: u8,
    pub b: u8,
    pub c: u8,
    pub l: u8,
}

#[derive(Serialize)]
pub struct SeriesRow {
    pub k: usize,
    pub a: String,
    pub b: String,
    pub c: String,
    pub l: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parity: Option<ParityDoc>,
}

#[derive(Serialize)]
pub struct SeriesDoc {
    pub k_max: usize,
    pub rows: Vec<SeriesRow>,
}

#[derive(Serialize)]
pub struct WitnessDoc {
    pub family: String,
    pub v: u64,
    pub negligent: bool,
}

#[derive(Serialize)]
pub struct ClassifyDoc {
    pub n: u64,
    pub verdict: &'static str,
    pub witness: Option<WitnessDoc>,
}

#[derive(Serialize)]
pub struct ClaimDoc {
    pub claim: &'static str,
    /// `pass`, `fail` or `skip`.
    pub status: &'static str,
    pub checked: u64,
    pub failed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub example: Option<String>,
}

#[derive(Serialize)]
pub struct VerifyRowDoc {
    pub n: usize,
    /// `computed` or `cache`.
    pub census: &'static str,
    pub f_n: Option<u64>,
    pub f_mod_n: u64,
    pub claims: Vec<ClaimDoc>,
}

#[derive(Serialize)]
pub struct VerifyDoc {
    pub n_min: usize,
    pub n_max: usize,
    pub passed: bool,
    pub results: Vec<VerifyRowDoc>,
}

/// Graph text for documents.
pub fn graph_text(g: &CircleGraph) -> String {
    crate::edgelist::format(g)
}
