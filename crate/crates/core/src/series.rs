//! Left-right trees and the exact sequences `a`, `b`, `c`, `l`.
//!
//! An l-r-tree is a plane rooted tree in which every node carries a
//! delimiter splitting its children into a left block and a right block.
//! `a_k` counts l-r-trees with `k` edges, `b_k` those with a right edge at
//! the root, `c_k = a_k - b_k` those without one.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest edge count [`enumerate_lr_trees`] materializes.
pub const ENUMERATION_LIMIT: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LRTree {
    delimiter: usize,
    children: Vec<LRTree>,
}

impl LRTree {
    /// Children at positions `1..delimiter` are left, the rest right.
    pub fn new(delimiter: usize, children: Vec<LRTree>) -> Result<LRTree> {
        if delimiter == 0 || delimiter > children.len() + 1 {
            return Err(Error::InvalidDelimiter { delimiter, children: children.len() });
        }
        Ok(LRTree { delimiter, children })
    }

    pub fn point() -> LRTree {
        LRTree { delimiter: 1, children: Vec::new() }
    }

    pub fn delimiter(&self) -> usize {
        self.delimiter
    }

    pub fn children(&self) -> &[LRTree] {
        &self.children
    }

    pub fn edge_count(&self) -> usize {
        self.children.len() + self.children.iter().map(LRTree::edge_count).sum::<usize>()
    }

    pub fn has_right_root_edge(&self) -> bool {
        self.delimiter <= self.children.len()
    }

    /// Mirror image: blocks swap sides and children reverse, recursively.
    pub fn flip(&self) -> LRTree {
        let c = self.children.len();
        LRTree { delimiter: c + 2 - self.delimiter, children: self.children.iter().rev().map(LRTree::flip).collect() }
    }
}

/// Every l-r-tree with `k` edges, each exactly once.
pub fn enumerate_lr_trees(k: usize) -> Result<Vec<LRTree>> {
    if k > ENUMERATION_LIMIT {
        return Err(Error::TooManyEdges { k, limit: ENUMERATION_LIMIT });
    }
    Ok(enumerate_unchecked(k))
}

fn enumerate_unchecked(k: usize) -> Vec<LRTree> {
    // trees[e]: all trees with e edges; forests[c][e]: ordered c-tuples.
    let mut trees: Vec<Vec<LRTree>> = Vec::with_capacity(k + 1);
    for e in 0..=k {
        let mut here = Vec::new();
        for c in 0..=e {
            for forest in forests(&trees, c, e - c) {
                for d in 1..=c + 1 {
                    here.push(LRTree { delimiter: d, children: forest.clone() });
                }
            }
        }
        trees.push(here);
    }
    trees.pop().unwrap_or_default()
}

/// Ordered `c`-tuples of trees from `trees` with `e` edges in total.
fn forests(trees: &[Vec<LRTree>], c: usize, e: usize) -> Vec<Vec<LRTree>> {
    if c == 0 {
        return if e == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=e.min(trees.len().saturating_sub(1)) {
        for rest in forests(trees, c - 1, e - first) {
            for t in &trees[first] {
                let mut f = Vec::with_capacity(c);
                f.push(t.clone());
                f.extend(rest.iter().cloned());
                out.push(f);
            }
        }
    }
    out
}

/// Exact `a`, `b`, `c`, `l` for indices `0..=k_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesTable {
    pub a: Vec<BigUint>,
    pub b: Vec<BigUint>,
    pub c: Vec<BigUint>,
    pub l: Vec<BigUint>,
}

impl SeriesTable {
    pub fn k_max(&self) -> usize {
        self.a.len() - 1
    }
}

/// `a` from the root-degree decomposition
/// `a_k = Σ_{m≥1} (m+1) [x^{k-m}] A(x)^m`, then `b`, `c` and `l` by
/// convolution.
pub fn series_tables(k_max: usize) -> SeriesTable {
    let a = root_decomposition(k_max);
    let mut b = vec![BigUint::zero(); k_max + 1];
    for m in 1..=k_max {
        b[m] = (0..m).map(|i| &a[i] * &a[m - 1 - i]).sum();
    }
    let c: Vec<BigUint> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
    let mut l = vec![BigUint::zero(); k_max + 1];
    for s in 1..=k_max {
        l[s] = (0..s).map(|i| &a[i] * &b[s - i]).sum();
    }
    SeriesTable { a, b, c, l }
}

fn root_decomposition(k_max: usize) -> Vec<BigUint> {
    let mut a = vec![BigUint::zero(); k_max + 1];
    a[0] = BigUint::one();
    // pow[m][j] = [x^j] A^m, filled by total degree m + j.
    let mut pow: Vec<Vec<BigUint>> = (0..=k_max).map(|m| Vec::with_capacity(k_max + 1 - m)).collect();
    pow[0].push(BigUint::one());
    for k in 1..=k_max {
        pow[0].push(BigUint::zero());
        for m in 1..=k {
            let j = k - m;
            let coeff: BigUint = if m == 1 {
                a[j].clone()
            } else {
                (0..=j).filter(|&i| !pow[m - 1][j - i].is_zero()).map(|i| &a[i] * &pow[m - 1][j - i]).sum()
            };
            pow[m].push(coeff);
        }
        a[k] = (1..=k).map(|m| BigUint::from(m as u64 + 1) * &pow[m][k - m]).sum();
    }
    a
}

/// Parity bit of an exact value.
pub fn parity(x: &BigUint) -> u8 {
    u8::from(x.bit(0))
}
