//! Census results kept between runs in `census.csv`.
//!
//! The directory is `--cache-dir`, else `$CIRCLE_GENUS_CACHE`, else
//! `circle-genus` under the system temp directory. Rows written by another
//! kernel version are never served.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use circle_genus_core::census::KERNEL_VERSION;
use serde::{Deserialize, Serialize};

pub const FILE_NAME: &str = "census.csv";
pub const ENV_VAR: &str = "CIRCLE_GENUS_CACHE";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRow {
    pub n: usize,
    pub f_n: u64,
    pub f_mod_n: u64,
    pub p_n: Option<u64>,
    pub kernel_version: u32,
}

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Csv { path: PathBuf, source: csv::Error },
    #[error("{path}: row for n={n} was written by kernel version {found}, this is version {expected}")]
    KernelVersion { path: PathBuf, n: usize, found: u32, expected: u32 },
}

#[derive(Clone, Debug)]
pub struct CensusCache {
    path: PathBuf,
}

impl CensusCache {
    pub fn default_dir() -> PathBuf {
        std::env::temp_dir().join("circle-genus")
    }

    /// `dir` is the value of `--cache-dir` (already falling back to the
    /// environment variable).
    pub fn resolve(dir: Option<&Path>) -> CensusCache {
        CensusCache::in_dir(dir.map_or_else(Self::default_dir, Path::to_path_buf))
    }

    pub fn in_dir(dir: impl Into<PathBuf>) -> CensusCache {
        CensusCache { path: dir.into().join(FILE_NAME) }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    fn io(&self, source: io::Error) -> CacheError {
        CacheError::Io { path: self.path.clone(), source }
    }

    fn csv(&self, source: csv::Error) -> CacheError {
        CacheError::Csv { path: self.path.clone(), source }
    }

    /// All rows, whatever their kernel version. A missing file is empty.
    pub fn rows(&self) -> Result<Vec<CacheRow>, CacheError> {
        let file = match fs::File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(self.io(e)),
        };
        csv::Reader::from_reader(file).deserialize().collect::<Result<_, _>>().map_err(|e| self.csv(e))
    }

    /// The row for `n`, refusing one from another kernel version.
    pub fn get(&self, n: usize) -> Result<Option<CacheRow>, CacheError> {
        match self.rows()?.into_iter().find(|r| r.n == n) {
            Some(r) if r.kernel_version != KERNEL_VERSION => Err(CacheError::KernelVersion {
                path: self.path.clone(),
                n,
                found: r.kernel_version,
                expected: KERNEL_VERSION,
            }),
            row => Ok(row),
        }
    }

    /// Inserts or replaces the row for `row.n`; rows stay sorted by `n`.
    pub fn put(&self, row: CacheRow) -> Result<(), CacheError> {
        let mut rows = self.rows()?;
        rows.retain(|r| r.n != row.n);
        rows.push(row);
        rows.sort_by_key(|r| r.n);
        let dir = self.path.parent().expect("cache file has a directory");
        fs::create_dir_all(dir).map_err(|e| self.io(e))?;
        let tmp = self.path.with_extension("csv.tmp");
        {
            let mut w = csv::Writer::from_path(&tmp).map_err(|e| self.csv(e))?;
            for r in &rows {
                w.serialize(r).map_err(|e| self.csv(e))?;
            }
            w.flush().map_err(|e| self.io(e))?;
        }
        fs::rename(&tmp, &self.path).map_err(|e| self.io(e))
    }
}
