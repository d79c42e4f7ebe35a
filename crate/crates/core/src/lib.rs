//! Genus-one circle trees.
//!
//! A circle tree is a labeled tree whose vertices sit on a circle, labeled
//! `1..=n` counterclockwise, with every edge drawn as a straight chord. This
//! crate decides the genus of such drawings, runs the uncrossed/parallel
//! reduction and the e-graph reduction, derives the catalog of pre-reduced
//! and reduced forms, counts genus-one trees exhaustively, and evaluates the
//! series whose parity decides whether that count is divisible by `n`.
//!
//! The crate is `no_std` and needs only `alloc`. Parallel drivers, caching and
//! file formats live in the `circle-genus` companion crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod catalog;
pub mod census;
pub mod egraph;
mod error;
pub mod genus;
pub mod graph;
pub mod parity;
pub mod reduction;
pub mod series;
pub mod verify;

pub use catalog::{Catalog, FormEntry};
pub use census::{count_f, count_p_n, l_count, CensusOptions, CensusReport, ShardTally};
pub use egraph::{e_reduce, egraph_decomposition, egraph_of, EGraph, EReduction};
pub use error::{Error, Result};
pub use genus::{build_rotation_system, genus, RotationSystem};
pub use graph::{CanonicalForm, CircleGraph, CircleTree, Edge};
pub use parity::{classify_n, negligent, parity_l, DivisibilityVerdict, Family, Verdict, Witness};
pub use reduction::{final_offspring, is_genus_one, match_final_form, FormKind, ReductionTrace};
pub use series::{enumerate_lr_trees, series_tables, LRTree, SeriesTable};
