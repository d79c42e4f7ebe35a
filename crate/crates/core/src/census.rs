//! Exhaustive counting of genus-one labeled trees, sharded by Prüfer prefix.
//!
//! The inner loop avoids allocation: trees are decoded into fixed arrays,
//! crossings are bitmasks, and the uncrossed/parallel reduction runs on
//! those masks. Only orbit representatives that need a reduced-form label
//! go through the general e-reduction.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::graph::{CircleTree, Edge};
use crate::reduction::is_genus_one;

/// Largest `n` the kernel accepts.
pub const CEILING: usize = 11;

/// Bumped whenever the kernel's results could change; keys the disk cache.
pub const KERNEL_VERSION: u32 = 1;

const MAX_EDGES: usize = CEILING - 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CensusOptions {
    /// Label every orbit with its reduced form, not only the half-period ones.
    pub by_form: bool,
}

/// Counts from one shard; shards combine with [`ShardTally::merge`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ShardTally {
    pub trees: u64,
    pub genus_one: u64,
    /// Number of rotation classes per period.
    pub orbit_periods: BTreeMap<usize, u64>,
    /// Labeled genus-one trees per reduced form; filled with `by_form`.
    pub by_form: BTreeMap<String, u64>,
    /// Half-period rotation classes per reduced form.
    pub half_period_classes: BTreeMap<String, u64>,
}

impl ShardTally {
    pub fn merge(&mut self, other: ShardTally) {
        self.trees += other.trees;
        self.genus_one += other.genus_one;
        for (k, v) in other.orbit_periods {
            *self.orbit_periods.entry(k).or_default() += v;
        }
        for (k, v) in other.by_form {
            *self.by_form.entry(k).or_default() += v;
        }
        for (k, v) in other.half_period_classes {
            *self.half_period_classes.entry(k).or_default() += v;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub n: usize,
    pub trees: u64,
    pub f_n: u64,
    pub f_mod_n: u64,
    /// Rotation classes of genus-one trees per period.
    pub orbit_periods: BTreeMap<usize, u64>,
    pub classes: u64,
    pub by_form: Option<BTreeMap<String, u64>>,
    pub half_period_classes: BTreeMap<String, u64>,
    /// Half-period classes reducing to the self-mirror half-period form,
    /// for `n ≡ 2 (mod 4)`.
    pub p_n: Option<u64>,
}

impl CensusReport {
    /// Final report from merged shards; fails if the orbit bookkeeping does
    /// not add up.
    pub fn from_tally(n: usize, tally: ShardTally, catalog: &Catalog, options: CensusOptions) -> Result<Self> {
        let n64 = n as u64;
        if tally.trees != n64.pow(n as u32 - 2) {
            return Err(Error::Invariant(format!("{} trees enumerated for n={n}", tally.trees)));
        }
        let orbit_sum: u64 = tally.orbit_periods.iter().map(|(&p, &c)| p as u64 * c).sum();
        if orbit_sum != tally.genus_one {
            return Err(Error::Invariant(format!("orbit sizes add to {orbit_sum} but f({n}) = {}", tally.genus_one)));
        }
        let p_n = (n % 4 == 2).then(|| {
            let id = &catalog.self_mirror_half_period().id;
            tally.half_period_classes.get(id).copied().unwrap_or(0)
        });
        Ok(CensusReport {
            n,
            trees: tally.trees,
            f_n: tally.genus_one,
            f_mod_n: tally.genus_one % n64,
            classes: tally.orbit_periods.values().sum(),
            orbit_periods: tally.orbit_periods,
            by_form: options.by_form.then_some(tally.by_form),
            half_period_classes: tally.half_period_classes,
            p_n,
        })
    }
}

pub fn check_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::TooFewPoints(n));
    }
    if n > CEILING {
        return Err(Error::AboveCeiling { n, ceiling: CEILING });
    }
    Ok(())
}

fn prefix_len(n: usize) -> usize {
    (n - 2).min(2)
}

/// Number of shards `n`'s Prüfer space splits into.
pub fn shard_count(n: usize) -> Result<usize> {
    check_n(n)?;
    Ok(n.pow(prefix_len(n) as u32))
}

/// Census over the Prüfer sequences whose leading symbols spell `shard`
/// in base `n`.
pub fn census_shard(n: usize, shard: usize, catalog: &Catalog, options: CensusOptions) -> Result<ShardTally> {
    let shards = shard_count(n)?;
    if shard >= shards {
        return Err(Error::Invariant(format!("shard {shard} of {shards}")));
    }
    let mut tally = ShardTally::default();
    let mut kernel = Kernel::new(n);
    let mut failure = None;
    for_each_in_shard(n, shard, &mut |seq| {
        if failure.is_some() {
            return;
        }
        tally.trees += 1;
        kernel.decode(seq);
        if !kernel.genus_one() {
            return;
        }
        tally.genus_one += 1;
        let Some(period) = kernel.representative_period() else { return };
        *tally.orbit_periods.entry(period).or_default() += 1;
        let half = 2 * period == n;
        if !(half || options.by_form) {
            return;
        }
        match catalog.classify_tree(&kernel.tree()) {
            Ok(form) => {
                if options.by_form {
                    *tally.by_form.entry(form.id.clone()).or_default() += period as u64;
                }
                if half {
                    *tally.half_period_classes.entry(form.id.clone()).or_default() += 1;
                }
            }
            Err(e) => failure = Some(e),
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(tally),
    }
}

/// Calls `visit` with every 0-based Prüfer sequence of the shard.
pub fn for_each_in_shard(n: usize, shard: usize, visit: &mut dyn FnMut(&[u8])) {
    let len = n - 2;
    let fixed = prefix_len(n);
    let mut seq = [0u8; CEILING];
    let mut rest = shard;
    for i in (0..fixed).rev() {
        seq[i] = (rest % n) as u8;
        rest /= n;
    }
    loop {
        visit(&seq[..len]);
        // Odometer over the free positions, last position fastest.
        let mut i = len;
        loop {
            if i == fixed {
                return;
            }
            i -= 1;
            seq[i] += 1;
            if (seq[i] as usize) < n {
                break;
            }
            seq[i] = 0;
        }
    }
}

/// Sequential census over every shard.
pub fn count_f(n: usize, catalog: &Catalog, options: CensusOptions) -> Result<CensusReport> {
    let mut tally = ShardTally::default();
    for shard in 0..shard_count(n)? {
        tally.merge(census_shard(n, shard, catalog, options)?);
    }
    CensusReport::from_tally(n, tally, catalog, options)
}

/// `|P_n|`: half-period classes reducing to the self-mirror half-period form.
pub fn count_p_n(n: usize, catalog: &Catalog) -> Result<u64> {
    check_n(n)?;
    if n % 4 != 2 {
        return Err(Error::WrongResidue { n });
    }
    let report = count_f(n, catalog, CensusOptions::default())?;
    Ok(report.p_n.expect("n is 2 mod 4"))
}

/// Number of distinct labelings of the tree's rotation class.
pub fn l_count(t: &CircleTree) -> Result<usize> {
    if !is_genus_one(t) {
        return Err(Error::NotGenusOne);
    }
    t.min_period()
}

/// Fixed-size tree decoded from a Prüfer sequence, with crossing masks.
pub struct Kernel {
    n: usize,
    m: usize,
    /// Endpoints, smaller first, 0-based.
    ends: [(u8, u8); MAX_EDGES],
    cross: [u16; MAX_EDGES],
    degree: [u8; CEILING],
}

impl Kernel {
    pub fn new(n: usize) -> Kernel {
        assert!((3..=CEILING).contains(&n), "kernel supports 3..={CEILING} points");
        Kernel { n, m: n - 1, ends: [(0, 0); MAX_EDGES], cross: [0; MAX_EDGES], degree: [0; CEILING] }
    }

    /// Linear-time decoding, always removing the smallest leaf.
    pub fn decode(&mut self, seq: &[u8]) {
        let n = self.n;
        self.degree[..n].fill(1);
        for &x in seq {
            self.degree[x as usize] += 1;
        }
        let mut ptr = 0;
        while self.degree[ptr] != 1 {
            ptr += 1;
        }
        let mut leaf = ptr;
        for (k, &x) in seq.iter().enumerate() {
            let x = x as usize;
            self.ends[k] = order(leaf, x);
            self.degree[leaf] = 0;
            self.degree[x] -= 1;
            if self.degree[x] == 1 && x < ptr {
                leaf = x;
            } else {
                ptr += 1;
                while self.degree[ptr] != 1 {
                    ptr += 1;
                }
                leaf = ptr;
            }
        }
        self.ends[n - 2] = order(leaf, n - 1);

        self.cross[..self.m].fill(0);
        for i in 0..self.m {
            let (a, b) = self.ends[i];
            for j in i + 1..self.m {
                let (c, d) = self.ends[j];
                if a == c || a == d || b == c || b == d {
                    continue;
                }
                if (a < c && c < b) != (a < d && d < b) {
                    self.cross[i] |= 1 << j;
                    self.cross[j] |= 1 << i;
                }
            }
        }
    }

    /// Edges as 1-based pairs.
    pub fn edges(&self) -> Vec<Edge> {
        self.ends[..self.m].iter().map(|&(a, b)| Edge::new(a as usize + 1, b as usize + 1)).collect()
    }

    pub fn tree(&self) -> CircleTree {
        let mut edges = self.edges();
        edges.sort_unstable();
        CircleTree::new(self.n, edges.into_iter().map(|e| (e.lo(), e.hi()))).expect("decoded trees are valid")
    }

    /// Uncrossed/parallel reduction on the crossing masks. The survivors
    /// are Form 1 exactly when two chords are left and Form 2 exactly when
    /// three are.
    pub fn genus_one(&self) -> bool {
        let mut alive: u16 = (1 << self.m) - 1;
        loop {
            let mut uncrossed = 0u16;
            let mut bits = alive;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if self.cross[i] & alive == 0 {
                    uncrossed |= 1 << i;
                }
            }
            if uncrossed != 0 {
                alive &= !uncrossed;
                continue;
            }
            let mut removed = 0u16;
            let mut outer = alive;
            while outer != 0 {
                let i = outer.trailing_zeros() as usize;
                outer &= outer - 1;
                if removed & (1 << i) != 0 {
                    continue;
                }
                let key = self.cross[i] & alive;
                let mut inner = outer;
                while inner != 0 {
                    let j = inner.trailing_zeros() as usize;
                    inner &= inner - 1;
                    if self.cross[j] & alive == key {
                        removed |= 1 << j;
                    }
                }
            }
            if removed == 0 {
                break;
            }
            alive &= !removed;
        }
        matches!(alive.count_ones(), 2 | 3)
    }

    fn mask_rotated(&self, s: usize) -> u128 {
        let n = self.n;
        let mut mask = 0u128;
        for &(a, b) in &self.ends[..self.m] {
            let (lo, hi) = order((a as usize + s) % n, (b as usize + s) % n);
            mask |= 1u128 << (lo as usize * n + hi as usize);
        }
        mask
    }

    /// The rotation period if this labeling is its class's representative
    /// (least pair mask over all rotations), otherwise `None`.
    pub fn representative_period(&self) -> Option<usize> {
        let base = self.mask_rotated(0);
        let mut period = None;
        for s in 1..self.n {
            let m = self.mask_rotated(s);
            if m < base {
                return None;
            }
            if m == base && period.is_none() {
                period = Some(s);
            }
        }
        Some(period.unwrap_or(self.n))
    }
}

fn order(a: usize, b: usize) -> (u8, u8) {
    if a < b {
        (a as u8, b as u8)
    } else {
        (b as u8, a as u8)
    }
}
