//! Exhaustive claim checking over every labeled tree on `n` points.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::catalog::Catalog;
use crate::census::{count_f, for_each_in_shard, shard_count, CensusOptions, CensusReport, Kernel};
use crate::egraph::{e_reduce, egraph_decomposition, egraph_of};
use crate::error::Result;
use crate::genus::genus;
use crate::graph::{CircleTree, Edge};
use crate::parity::{classify_n, Verdict};
use crate::reduction::{final_offspring, form1, form2, is_genus_one, match_final_form, FormKind};

/// Per-tree claims are checked up to this many points; beyond it only the
/// census-level claims run.
pub const TREE_CLAIM_LIMIT: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Claim {
    /// Reduction to Form 1/Form 2 agrees with face-traced genus one.
    GenusEquivalence,
    /// Every genus-one tree's final offspring is Form 1 or Form 2.
    FinalForms,
    /// Bundle edges meet each arc once, uncrossed edges lie on the arcs,
    /// and the e-graph is a non-crossing tree.
    EGraphShape,
    /// Every bundle edge of an e-graph yields the same e-graph.
    EGraphUnique,
    /// Every tree edge with both ends on an e-graph's arcs belongs to it.
    ArcClosure,
    /// No edge joins an open e-graph arc to the gap beyond an outermost edge.
    OuterGap,
    /// Different e-graphs share no point.
    DisjointEGraphs,
    /// At most two e-graphs share one bundle direction.
    NoThreeParallel,
    /// T2 ⊆ T3, T3 is a tree on T2's points, and the added edges are
    /// uncrossed and number points − edges − 1.
    ReducedShape,
    /// The reduced form has genus one.
    ReducedGenus,
    /// The pre-reduced form reduces to the tree's own final offspring.
    PrereducedOffspring,
    /// Reduced and pre-reduced forms are in the catalog and agree on the
    /// source; trees of other genus are refused.
    CatalogClosure,
    /// Orbit sizes are `n` or `n/2` and add up to `f(n)`.
    OrbitPeriods,
    /// Half-period classes reduce only to half-period forms.
    HalfPeriodForms,
    /// Mirror forms have equal labeled counts.
    MirrorCensus,
    /// `f(n) mod n` matches the divisibility verdict.
    Divisibility,
}

impl Claim {
    pub const ALL: [Claim; 16] = [
        Claim::GenusEquivalence,
        Claim::FinalForms,
        Claim::EGraphShape,
        Claim::EGraphUnique,
        Claim::ArcClosure,
        Claim::OuterGap,
        Claim::DisjointEGraphs,
        Claim::NoThreeParallel,
        Claim::ReducedShape,
        Claim::ReducedGenus,
        Claim::PrereducedOffspring,
        Claim::CatalogClosure,
        Claim::OrbitPeriods,
        Claim::HalfPeriodForms,
        Claim::MirrorCensus,
        Claim::Divisibility,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::GenusEquivalence => "genus-equivalence",
            Claim::FinalForms => "final-forms",
            Claim::EGraphShape => "egraph-shape",
            Claim::EGraphUnique => "egraph-unique",
            Claim::ArcClosure => "arc-closure",
            Claim::OuterGap => "outer-gap",
            Claim::DisjointEGraphs => "disjoint-egraphs",
            Claim::NoThreeParallel => "no-three-parallel",
            Claim::ReducedShape => "reduced-shape",
            Claim::ReducedGenus => "reduced-genus",
            Claim::PrereducedOffspring => "prereduced-offspring",
            Claim::CatalogClosure => "catalog-closure",
            Claim::OrbitPeriods => "orbit-periods",
            Claim::HalfPeriodForms => "half-period-forms",
            Claim::MirrorCensus => "mirror-census",
            Claim::Divisibility => "divisibility",
        }
    }

    pub fn is_per_tree(self) -> bool {
        !matches!(self, Claim::OrbitPeriods | Claim::HalfPeriodForms | Claim::MirrorCensus | Claim::Divisibility)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClaimStat {
    pub checked: u64,
    pub failed: u64,
    /// First counterexample seen.
    pub example: Option<String>,
}

/// Outcomes per claim. Claims never checked are absent.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClaimTally {
    pub stats: BTreeMap<Claim, ClaimStat>,
}

impl ClaimTally {
    pub fn record(&mut self, claim: Claim, ok: bool, detail: impl FnOnce() -> String) {
        let stat = self.stats.entry(claim).or_default();
        stat.checked += 1;
        if !ok {
            stat.failed += 1;
            if stat.example.is_none() {
                stat.example = Some(detail());
            }
        }
    }

    /// Adds `other`'s counts; counterexamples already held win.
    pub fn merge(&mut self, other: ClaimTally) {
        for (claim, s) in other.stats {
            let stat = self.stats.entry(claim).or_default();
            stat.checked += s.checked;
            stat.failed += s.failed;
            if stat.example.is_none() {
                stat.example = s.example;
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.stats.values().all(|s| s.failed == 0)
    }
}

/// Checks every per-tree claim on `t`.
pub fn check_tree(t: &CircleTree, catalog: &Catalog, tally: &mut ClaimTally) -> Result<()> {
    let n = t.n();
    let reduces = is_genus_one(t);
    let topological = genus(t)? == 1;
    tally.record(Claim::GenusEquivalence, reduces == topological, || format!("{t}"));
    if topological {
        let c = match_final_form(t).canonical;
        tally.record(Claim::FinalForms, c == form1() || c == form2(), || format!("{t} leaves {:?}", c.edges));
    }
    if !reduces {
        let refused = catalog.classify_tree(t).is_err();
        tally.record(Claim::CatalogClosure, refused, || format!("{t} classified despite genus != 1"));
        return Ok(());
    }

    let egraphs = egraph_decomposition(t)?;
    for eg in &egraphs {
        let on = |p: usize| eg.on_arcs(p, n);
        let mut ok = eg
            .parallel
            .iter()
            .all(|e| eg.arcs.iter().all(|a| e.endpoints().iter().filter(|&&p| a.contains(p, n)).count() == 1));
        ok &= eg.uncrossed.iter().all(|e| on(e.lo()) && on(e.hi()));
        let edges = eg.edges();
        let points: Vec<usize> = eg.vertices().into_iter().collect();
        ok &= edges.len() + 1 == points.len() && connected(&points, &edges);
        ok &= edges.iter().enumerate().all(|(i, a)| edges[i + 1..].iter().all(|b| !a.crosses(*b)));
        tally.record(Claim::EGraphShape, ok, || format!("{t} at {:?}", eg.parallel));

        let same = eg.parallel.iter().all(|&e| egraph_of(t, e).is_ok_and(|other| other.edges() == edges));
        tally.record(Claim::EGraphUnique, same, || format!("{t} at {:?}", eg.parallel));

        let inside: Vec<Edge> = t.edges().iter().copied().filter(|e| on(e.lo()) && on(e.hi())).collect();
        tally.record(Claim::ArcClosure, inside == edges, || format!("{t} at {:?}", eg.parallel));

        let open = |p: usize| eg.arcs.iter().any(|a| a.contains_open(p, n));
        let leak = t.edges().iter().any(|e| (open(e.lo()) && !on(e.hi())) || (open(e.hi()) && !on(e.lo())));
        tally.record(Claim::OuterGap, !leak, || format!("{t} at {:?}", eg.parallel));
    }

    let vertex_sets: Vec<BTreeSet<usize>> = egraphs.iter().map(|eg| eg.vertices()).collect();
    let disjoint = vertex_sets.iter().enumerate().all(|(i, a)| vertex_sets[i + 1..].iter().all(|b| a.is_disjoint(b)));
    tally.record(Claim::DisjointEGraphs, disjoint, || format!("{t}"));

    let mut per_direction: BTreeMap<Vec<Edge>, usize> = BTreeMap::new();
    for eg in &egraphs {
        *per_direction.entry(t.parallel_class_of(eg.parallel[0])?).or_default() += 1;
    }
    tally.record(Claim::NoThreeParallel, per_direction.values().all(|&k| k <= 2), || format!("{t}"));

    let r = e_reduce(t)?;
    let t2 = &r.prereduced;
    let t3 = &r.reduced;
    let added: Vec<Edge> = t3.edges().iter().copied().filter(|e| !t2.contains(*e)).collect();
    let points = t2.vertices();
    let mut ok = t2.edges().iter().all(|e| t3.contains(*e));
    ok &= t3.without(&t3.uncrossed_edges()) == *t2;
    ok &= added.len() + t2.len() + 1 == points.len();
    ok &= t3.vertices() == points && connected(&points, t3.edges());
    ok &= added.iter().all(|e| !t3.is_crossed(*e));
    tally.record(Claim::ReducedShape, ok, || format!("{t}"));

    tally.record(Claim::ReducedGenus, genus(t3)? == 1, || format!("{t}"));

    let target = final_offspring(t).0.canonicalize();
    let verdict = match_final_form(t2);
    let ok = verdict.canonical == target && matches!(verdict.kind, FormKind::Form1 | FormKind::Form2);
    tally.record(Claim::PrereducedOffspring, ok, || format!("{t}"));

    let pre = catalog.lookup(&t2.canonicalize()).filter(|f| !f.is_reduced()).map(|f| f.id.clone());
    let red = catalog.classify_tree(t).ok().and_then(|f| f.source.clone());
    tally.record(Claim::CatalogClosure, pre.is_some() && pre == red, || format!("{t}"));
    Ok(())
}

fn connected(points: &[usize], edges: &[Edge]) -> bool {
    let Some(&start) = points.first() else { return true };
    let mut seen: BTreeSet<usize> = BTreeSet::from([start]);
    let mut stack = alloc::vec![start];
    while let Some(p) = stack.pop() {
        for e in edges {
            if let Some(q) = e.other(p) {
                if seen.insert(q) {
                    stack.push(q);
                }
            }
        }
    }
    points.iter().all(|p| seen.contains(p))
}

/// Per-tree claims over one Prüfer shard.
pub fn verify_tree_shard(n: usize, shard: usize, catalog: &Catalog) -> Result<ClaimTally> {
    shard_count(n)?;
    let mut tally = ClaimTally::default();
    let mut kernel = Kernel::new(n);
    let mut failure = None;
    for_each_in_shard(n, shard, &mut |seq| {
        if failure.is_none() {
            kernel.decode(seq);
            if let Err(e) = check_tree(&kernel.tree(), catalog, &mut tally) {
                failure = Some(e);
            }
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(tally),
    }
}

/// Census-level claims from a finished report.
pub fn check_census(report: &CensusReport, catalog: &Catalog, tally: &mut ClaimTally) -> Result<()> {
    let n = report.n;
    let periods_ok = report.orbit_periods.keys().all(|&p| p == n || 2 * p == n)
        && report.orbit_periods.iter().map(|(&p, &c)| p as u64 * c).sum::<u64>() == report.f_n;
    tally.record(Claim::OrbitPeriods, periods_ok, || format!("n={n}: {:?}", report.orbit_periods));

    let stray: Vec<&String> =
        report.half_period_classes.keys().filter(|id| catalog.get(id).map_or(true, |f| !f.is_half_period())).collect();
    tally.record(Claim::HalfPeriodForms, stray.is_empty(), || format!("n={n}: {stray:?}"));

    if let Some(by_form) = &report.by_form {
        let mut ok = true;
        for (id, &count) in by_form {
            let mirror = &catalog.get(id)?.mirror;
            ok &= by_form.get(mirror).copied().unwrap_or(0) == count;
        }
        tally.record(Claim::MirrorCensus, ok, || format!("n={n}: {by_form:?}"));
    }

    check_divisibility(n, report.f_mod_n, report.p_n, tally)
}

/// Divisibility from `f(n) mod n` (and `|P_n|` when known) alone, so cached
/// results can be checked without recounting.
pub fn check_divisibility(n: usize, f_mod_n: u64, p_n: Option<u64>, tally: &mut ClaimTally) -> Result<()> {
    if n < 4 {
        return Ok(());
    }
    let verdict = classify_n(n as u64)?.verdict;
    let expected = match verdict {
        Verdict::DivisibleByN => 0,
        Verdict::OnlyByHalf => n as u64 / 2,
    };
    let mut ok = f_mod_n == expected;
    if let Some(p) = p_n {
        ok &= f_mod_n == (p % 2) * (n as u64 / 2);
    }
    tally.record(Claim::Divisibility, ok, || {
        format!("n={n}: f mod n = {f_mod_n}, p_n = {p_n:?}, verdict {}", verdict.id())
    });
    Ok(())
}

/// All claims at one `n`, sequentially. Per-tree claims are skipped above
/// [`TREE_CLAIM_LIMIT`].
pub fn verify_n(n: usize, catalog: &Catalog) -> Result<(ClaimTally, CensusReport)> {
    let mut tally = ClaimTally::default();
    if n <= TREE_CLAIM_LIMIT {
        for shard in 0..shard_count(n)? {
            tally.merge(verify_tree_shard(n, shard, catalog)?);
        }
    }
    let report = count_f(n, catalog, CensusOptions { by_form: true })?;
    check_census(&report, catalog, &mut tally)?;
    Ok((tally, report))
}

/// [`verify_n`] for every `n` from 4 to `n_max`.
pub fn verify_suite(n_max: usize, catalog: &Catalog) -> Result<Vec<(usize, ClaimTally)>> {
    (4..=n_max).map(|n| verify_n(n, catalog).map(|(t, _)| (n, t))).collect()
}
