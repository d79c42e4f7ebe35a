//! Shard-parallel census and tree verification. Shard results are merged in
//! shard order, so output does not depend on the number of workers.

use circle_genus_core::census::{census_shard, shard_count};
use circle_genus_core::verify::{verify_tree_shard, ClaimTally};
use circle_genus_core::{Catalog, CensusOptions, CensusReport, Result, ShardTally};
use rayon::prelude::*;
use rayon::ThreadPool;

/// A pool of `jobs` workers, or one per core.
pub fn pool(jobs: Option<usize>) -> std::result::Result<ThreadPool, rayon::ThreadPoolBuildError> {
    rayon::ThreadPoolBuilder::new().num_threads(jobs.unwrap_or(0)).build()
}

pub fn census(pool: &ThreadPool, n: usize, catalog: &Catalog, options: CensusOptions) -> Result<CensusReport> {
    let shards = shard_count(n)?;
    let tallies: Vec<ShardTally> = pool
        .install(|| (0..shards).into_par_iter().map(|s| census_shard(n, s, catalog, options)).collect::<Result<_>>())?;
    let mut total = ShardTally::default();
    for t in tallies {
        total.merge(t);
    }
    CensusReport::from_tally(n, total, catalog, options)
}

pub fn verify_trees(pool: &ThreadPool, n: usize, catalog: &Catalog) -> Result<ClaimTally> {
    let shards = shard_count(n)?;
    let tallies: Vec<ClaimTally> =
        pool.install(|| (0..shards).into_par_iter().map(|s| verify_tree_shard(n, s, catalog)).collect::<Result<_>>())?;
    let mut total = ClaimTally::default();
    for t in tallies {
        total.merge(t);
    }
    Ok(total)
}
