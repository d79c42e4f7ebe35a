//! The committed catalog snapshot, `data/catalog.json`.
//!
//! The snapshot is regenerated from [`Catalog::derive`] and compared in the
//! test suite; run the tests with `UPDATE_SNAPSHOT=1` to rewrite it.

use circle_genus_core::census::KERNEL_VERSION;
use circle_genus_core::{Catalog, Edge, FormEntry};
use serde::{Deserialize, Serialize};

use crate::json::SCHEMA;

pub const EMBEDDED: &str = include_str!("../data/catalog.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnapshotEntry {
    pub id: String,
    pub points: usize,
    pub edges: Vec<[usize; 2]>,
    pub period: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub source: Option<String>,
    pub mirror: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub slots: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Snapshot {
    pub schema: u32,
    pub kernel_version: u32,
    pub prereduced: Vec<SnapshotEntry>,
    pub reduced: Vec<SnapshotEntry>,
}

#[derive(Debug, thiserror::Error)]
pub enum SnapshotError {
    #[error("malformed catalog snapshot: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("catalog snapshot has schema {found}, expected {expected}")]
    Schema { found: u32, expected: u32 },
    #[error("catalog snapshot was built by kernel version {found}, this is version {expected}")]
    KernelVersion { found: u32, expected: u32 },
    #[error("catalog snapshot entry {id}: {source}")]
    Entry { id: String, source: circle_genus_core::Error },
}

impl From<&FormEntry> for SnapshotEntry {
    fn from(f: &FormEntry) -> Self {
        SnapshotEntry {
            id: f.id.clone(),
            points: f.points,
            edges: f.edges.iter().map(|e| [e.lo(), e.hi()]).collect(),
            period: f.period,
            source: f.source.clone(),
            mirror: f.mirror.clone(),
            slots: f.slots,
        }
    }
}

impl SnapshotEntry {
    fn into_entry(self) -> Result<FormEntry, SnapshotError> {
        let edges = self
            .edges
            .iter()
            .map(|&[a, b]| Edge::checked(self.points, a, b))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|source| SnapshotError::Entry { id: self.id.clone(), source })?;
        Ok(FormEntry {
            id: self.id,
            points: self.points,
            edges,
            period: self.period,
            source: self.source,
            mirror: self.mirror,
            slots: self.slots,
        })
    }
}

impl Snapshot {
    pub fn of(catalog: &Catalog) -> Snapshot {
        Snapshot {
            schema: SCHEMA,
            kernel_version: KERNEL_VERSION,
            prereduced: catalog.prereduced().iter().map(SnapshotEntry::from).collect(),
            reduced: catalog.reduced().iter().map(SnapshotEntry::from).collect(),
        }
    }

    pub fn render(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("serializable");
        out.push('\n');
        out
    }

    pub fn parse(text: &str) -> Result<Snapshot, SnapshotError> {
        let snap: Snapshot = serde_json::from_str(text)?;
        if snap.schema != SCHEMA {
            return Err(SnapshotError::Schema { found: snap.schema, expected: SCHEMA });
        }
        if snap.kernel_version != KERNEL_VERSION {
            return Err(SnapshotError::KernelVersion { found: snap.kernel_version, expected: KERNEL_VERSION });
        }
        Ok(snap)
    }

    pub fn into_catalog(self) -> Result<Catalog, SnapshotError> {
        let pre = self.prereduced.into_iter().map(SnapshotEntry::into_entry).collect::<Result<_, _>>()?;
        let red = self.reduced.into_iter().map(SnapshotEntry::into_entry).collect::<Result<_, _>>()?;
        Ok(Catalog::from_entries(pre, red))
    }
}

/// The catalog compiled into the binary.
pub fn embedded() -> Result<Catalog, SnapshotError> {
    Snapshot::parse(EMBEDDED)?.into_catalog()
}
