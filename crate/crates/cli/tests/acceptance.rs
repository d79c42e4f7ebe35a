//! Acceptance run: one PASS/FAIL line per criterion. Set
//! `CIRCLE_GENUS_SLOW=1` to add the n = 9 and n = 10 checks.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use circle_genus::driver;
use circle_genus::snapshot::{self, Snapshot};
use circle_genus_core::catalog::{generate_prereduced_forms, generate_reduced_catalog};
use circle_genus_core::census::{for_each_in_shard, shard_count};
use circle_genus_core::graph::all_trees;
use circle_genus_core::parity::{negligent_digits, parity_c};
use circle_genus_core::reduction::final_offspring_with;
use circle_genus_core::series::{parity, ENUMERATION_LIMIT};
use circle_genus_core::verify::{check_census, Claim, ClaimTally};
use circle_genus_core::{
    classify_n, enumerate_lr_trees, genus, is_genus_one, match_final_form, negligent, parity_l, series_tables, Catalog,
    CensusOptions, CircleTree, FormKind, Verdict,
};
use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

type Check = Result<String, String>;
type Criterion = (&'static str, fn(&mut Context) -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn slow() -> bool {
    std::env::var("CIRCLE_GENUS_SLOW").is_ok_and(|v| v == "1")
}

/// Genus-one trees on `n` points found by face tracing; also checks the
/// reduction verdict and the final form of each.
fn equivalence(trees: impl Iterator<Item = CircleTree>) -> Result<u64, String> {
    let mut f = 0;
    for t in trees {
        let face = genus(&t).map_err(|e| e.to_string())? == 1;
        let reduced = is_genus_one(&t);
        ensure(face == reduced, || format!("{t}: genus one by faces {face}, by reduction {reduced}"))?;
        if face {
            f += 1;
            let kind = match_final_form(&t).kind;
            ensure(matches!(kind, FormKind::Form1 | FormKind::Form2), || format!("{t}: final form {kind:?}"))?;
        }
    }
    Ok(f)
}

fn equivalence_sharded(n: usize) -> Result<u64, String> {
    let shards = shard_count(n).map_err(|e| e.to_string())?;
    let counts: Vec<u64> = (0..shards)
        .into_par_iter()
        .map(|s| {
            let mut trees = Vec::new();
            for_each_in_shard(n, s, &mut |seq| {
                let seq: Vec<usize> = seq.iter().map(|&x| x as usize + 1).collect();
                trees.push(CircleTree::from_prufer(&seq).expect("in range"));
            });
            equivalence(trees.into_iter())
        })
        .collect::<Result<_, _>>()?;
    Ok(counts.iter().sum())
}

struct Context {
    catalog: Catalog,
    /// `f(n)` by face tracing.
    oracle_f: BTreeMap<usize, u64>,
}

fn c1(ctx: &mut Context) -> Check {
    let mut sizes = Vec::new();
    for n in 4..=8 {
        let f = equivalence(all_trees(n))?;
        ctx.oracle_f.insert(n, f);
        sizes.push(format!("f({n})={f}"));
    }
    if slow() {
        let f = equivalence_sharded(9)?;
        ctx.oracle_f.insert(9, f);
        sizes.push(format!("f(9)={f}"));
    } else {
        sizes.push("n=9 skipped".into());
    }
    Ok(format!("every tree, n=4..; {}", sizes.join(", ")))
}

fn c2(ctx: &mut Context) -> Check {
    let pre = generate_prereduced_forms().map_err(|e| e.to_string())?;
    let mut profile: Vec<(usize, usize)> = pre.iter().map(|f| (f.points, f.edges.len())).collect();
    profile.sort();
    ensure(profile == [(4, 2), (6, 3), (6, 3), (8, 4), (8, 4), (10, 5), (12, 6)], || format!("profile {profile:?}"))?;
    let mut slots: Vec<usize> = pre.iter().map(|f| f.slots.unwrap_or(0)).collect();
    slots.sort();
    ensure(slots == [4, 4, 4, 6, 6, 6, 6], || format!("slots {slots:?}"))?;
    let reduced = generate_reduced_catalog(&pre).map_err(|e| e.to_string())?;
    let counts: Vec<usize> =
        pre.iter().map(|p| reduced.iter().filter(|r| r.source.as_deref() == Some(p.id.as_str())).count()).collect();
    ensure(counts == [1, 3, 1, 2, 6, 6, 0], || format!("per-source counts {counts:?}"))?;
    ensure(reduced.len() == 19, || format!("{} reduced forms", reduced.len()))?;
    let derived = Catalog::from_entries(pre, reduced);
    ensure(Snapshot::of(&derived) == Snapshot::of(&ctx.catalog), || {
        "embedded snapshot differs from derivation".into()
    })?;
    Ok("7 prereduced forms, per-source counts (1,3,1,2,6,6,0), 19 reduced forms".into())
}

fn c3(ctx: &mut Context) -> Check {
    let pool = driver::pool(None).map_err(|e| e.to_string())?;
    let mut tally = ClaimTally::default();
    for n in 4..=8 {
        tally.merge(driver::verify_trees(&pool, n, &ctx.catalog).map_err(|e| e.to_string())?);
    }
    let wanted = [
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
    ];
    let mut checked = 0;
    for claim in wanted {
        let stat = tally.stats.get(&claim).ok_or_else(|| format!("{} never checked", claim.id()))?;
        ensure(stat.checked > 0 && stat.failed == 0, || {
            format!("{}: {} of {} failed, e.g. {:?}", claim.id(), stat.failed, stat.checked, stat.example)
        })?;
        checked += stat.checked;
    }
    Ok(format!("{checked} checks over 10 structural claims, n=4..8, no violations"))
}

fn c4(ctx: &mut Context) -> Check {
    let half_ids: BTreeSet<&str> = ctx.catalog.half_period_forms().iter().map(|f| f.id.as_str()).collect();
    ensure(half_ids.len() == 5, || format!("half-period forms {half_ids:?}"))?;
    let fixed: Vec<&str> =
        ctx.catalog.half_period_forms().iter().filter(|f| f.mirror == f.id).map(|f| f.id.as_str()).collect();
    ensure(fixed == ["T3^6[5]"], || format!("reflect-fixed half-period forms {fixed:?}"))?;
    let pool = driver::pool(None).map_err(|e| e.to_string())?;
    let mut total_classes = 0;
    for n in 4..=8 {
        // Independent oracle: canonical classes straight from the trees.
        let mut classes = BTreeMap::new();
        for t in all_trees(n).filter(|t| is_genus_one(t)) {
            let c = t.canonicalize();
            if let Entry::Vacant(slot) = classes.entry(c) {
                slot.insert(ctx.catalog.classify_tree(&t).map_err(|e| e.to_string())?.id.clone());
            }
        }
        for (c, form) in &classes {
            ensure(c.period == n || 2 * c.period == n, || format!("n={n}: period {} for {:?}", c.period, c.edges))?;
            if c.period != n {
                ensure(half_ids.contains(form.as_str()), || format!("n={n}: half period class reduces to {form}"))?;
            }
        }
        let report =
            driver::census(&pool, n, &ctx.catalog, CensusOptions { by_form: true }).map_err(|e| e.to_string())?;
        ensure(report.classes == classes.len() as u64, || {
            format!("n={n}: census has {} classes, oracle {}", report.classes, classes.len())
        })?;
        let mut tally = ClaimTally::default();
        check_census(&report, &ctx.catalog, &mut tally).map_err(|e| e.to_string())?;
        for claim in [Claim::OrbitPeriods, Claim::HalfPeriodForms, Claim::MirrorCensus] {
            let ok = tally.stats.get(&claim).is_some_and(|s| s.failed == 0);
            ensure(ok, || format!("n={n}: {} failed", claim.id()))?;
        }
        total_classes += classes.len();
    }
    Ok(format!("{total_classes} classes at n=4..8, periods n or n/2, T3^6[5] the only reflect-fixed half-period form"))
}

fn c5(ctx: &mut Context) -> Check {
    let pool = driver::pool(None).map_err(|e| e.to_string())?;
    let mut notes = Vec::new();
    let last = if slow() { 10 } else { 8 };
    for n in 4..=last {
        let started = Instant::now();
        let r = driver::census(&pool, n, &ctx.catalog, CensusOptions::default()).map_err(|e| e.to_string())?;
        if let Some(&f) = ctx.oracle_f.get(&n) {
            ensure(r.f_n == f, || format!("f({n}) = {} by census, {f} by face tracing", r.f_n))?;
        }
        let expected = if n == 10 { 5 } else { 0 };
        ensure(r.f_mod_n == expected, || format!("f({n}) = {} is {} mod {n}", r.f_n, r.f_mod_n))?;
        if n == 10 {
            let p = r.p_n.ok_or("no p_10")?;
            ensure(p % 2 == 1, || format!("|P_10| = {p} is even"))?;
            let v = classify_n(10).map_err(|e| e.to_string())?;
            ensure(v.verdict == Verdict::OnlyByHalf, || "classify_n(10) is not OnlyByHalf".into())?;
            notes.push(format!("f(10)={} mod 10 = 5, |P_10|={p} ({:.0?})", r.f_n, started.elapsed()));
        } else {
            notes.push(format!("f({n})={}", r.f_n));
        }
    }
    if !slow() {
        notes.push("n=9,10 skipped".into());
    }
    Ok(notes.join(", "))
}

fn binomial(n: u64, k: u64) -> BigUint {
    (0..k).fold(BigUint::from(1u8), |acc, i| acc * (n - i) / (i + 1))
}

fn c6(_: &mut Context) -> Check {
    let t = series_tables(50);
    for k in 0..=6.min(ENUMERATION_LIMIT) {
        let trees = enumerate_lr_trees(k).map_err(|e| e.to_string())?;
        let right = trees.iter().filter(|x| x.has_right_root_edge()).count();
        let counts = [trees.len(), right, trees.len() - right].map(|c| BigUint::from(c as u64));
        ensure(counts == [t.a[k].clone(), t.b[k].clone(), t.c[k].clone()], || format!("k={k}: {counts:?}"))?;
    }
    for k in 0..=50u64 {
        ensure(&t.a[k as usize] * (k + 1) == binomial(3 * k + 1, k), || format!("closed form fails at k={k}"))?;
    }
    for k in 0..=4 {
        let fixed = enumerate_lr_trees(2 * k).map_err(|e| e.to_string())?.iter().filter(|x| x.flip() == **x).count();
        ensure(BigUint::from(fixed as u64) == t.c[k], || format!("k={k}: {fixed} flip-fixed trees"))?;
    }
    Ok("enumeration k<=6, closed form k<=50, flip fixed points k<=4".into())
}

fn c7(_: &mut Context) -> Check {
    let t = series_tables(512);
    let p = |v: &[BigUint], i: usize| parity(&v[i]);
    for s in 0..=512 {
        ensure(parity_l(s as u64) == p(&t.l, s), || format!("parity_l({s})"))?;
        ensure(parity_c(s as u64) == p(&t.c, s), || format!("c_{s} parity"))?;
    }
    let rule =
        |name: &str, index: usize, got: u8, want: u8| ensure(got == want, || format!("{name} fails at index {index}"));
    for k in 0..=256 {
        if 2 * k <= 512 {
            rule("b_2k = 0", 2 * k, p(&t.b, 2 * k), 0)?;
            rule("a_2k = c_k", 2 * k, p(&t.a, 2 * k), p(&t.c, k))?;
            rule("c_2k = c_k", 2 * k, p(&t.c, 2 * k), p(&t.c, k))?;
        }
        if 2 * k < 512 {
            rule("b_2k+1 = a_k", 2 * k + 1, p(&t.b, 2 * k + 1), p(&t.a, k))?;
            rule("a_2k+1 = 0", 2 * k + 1, p(&t.a, 2 * k + 1), 0)?;
        }
        if 4 * k < 512 {
            rule("c_4k+1 = c_k", 4 * k + 1, p(&t.c, 4 * k + 1), p(&t.c, k))?;
            rule("b_4k+1 = a_2k", 4 * k + 1, p(&t.b, 4 * k + 1), p(&t.a, 2 * k))?;
        }
        if 4 * k + 3 <= 512 {
            rule("c_4k+3 = 0", 4 * k + 3, p(&t.c, 4 * k + 3), 0)?;
            rule("b_4k+3 = 0", 4 * k + 3, p(&t.b, 4 * k + 3), 0)?;
        }
    }
    Ok("parity_l, c parity and rules a)-f) match exact values to 512".into())
}

fn c8(_: &mut Context) -> Check {
    let limit = 100_000u64;
    let mut only_half = 0;
    for n in 4..=limit {
        let d = classify_n(n).map_err(|e| e.to_string())?;
        let expected = if n % 4 == 2 && parity_l((n - 2) / 4 - 1) == 1 {
            only_half += 1;
            Verdict::OnlyByHalf
        } else {
            Verdict::DivisibleByN
        };
        ensure(d.verdict == expected, || format!("classify_n({n}) = {:?}", d.verdict))?;
        ensure(n % 4 == 2 || d.verdict == Verdict::DivisibleByN, || format!("n={n}"))?;
    }
    for v in 0..=limit {
        ensure(negligent(v) == negligent_digits(v), || format!("negligent({v})"))?;
    }
    let big = classify_n(69802).map_err(|e| e.to_string())?;
    ensure(big.verdict == Verdict::OnlyByHalf, || "classify_n(69802) is not OnlyByHalf".into())?;
    Ok(format!("n<=10^5: {only_half} OnlyByHalf values, all n = 2 mod 4; 69802 OnlyByHalf"))
}

fn c9(ctx: &mut Context) -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed_c0de);
    let random_tree = |rng: &mut StdRng| {
        let n = rng.gen_range(4..=12);
        let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(1..=n)).collect();
        CircleTree::from_prufer(&seq).expect("in range")
    };
    let (mut genus_one, mut other, mut divergent) = (0, 0, 0);
    while genus_one < 100 || other < 100 {
        let t = random_tree(&mut rng);
        let g1 = is_genus_one(&t);
        if (g1 && genus_one == 100) || (!g1 && other == 100) {
            continue;
        }
        let runs: Vec<_> = (0..10)
            .map(|_| {
                let (offspring, _) = final_offspring_with(&t, &mut |k| rng.gen_range(0..k));
                offspring
            })
            .collect();
        let canon: BTreeSet<_> = runs.iter().map(|g| g.canonicalize()).collect();
        if g1 {
            genus_one += 1;
            ensure(canon.len() == 1, || format!("{t}: {} distinct final offspring", canon.len()))?;
        } else {
            other += 1;
            let kinds: BTreeSet<_> = canon.iter().map(circle_genus_core::reduction::classify_canonical).collect();
            let genera: BTreeSet<_> = runs.iter().map(|g| genus(g).unwrap_or(usize::MAX)).collect();
            ensure(kinds.len() == 1 && genera.len() == 1, || format!("{t}: kinds {kinds:?}, genera {genera:?}"))?;
            divergent += usize::from(canon.len() > 1);
        }
    }
    let mut reports = Vec::new();
    for jobs in [1, 4, 16] {
        let pool = driver::pool(Some(jobs)).map_err(|e| e.to_string())?;
        reports
            .push(driver::census(&pool, 8, &ctx.catalog, CensusOptions { by_form: true }).map_err(|e| e.to_string())?);
    }
    ensure(reports.windows(2).all(|w| w[0] == w[1]), || "census differs across worker counts".into())?;
    Ok(format!(
        "100 genus-one trees x 10 schedules identical; 100 other trees agree on form and genus \
         ({divergent} with schedule-dependent offspring); census n=8 identical for 1, 4, 16 workers"
    ))
}

fn main() -> ExitCode {
    let catalog = snapshot::embedded().expect("embedded catalog loads");
    let mut ctx = Context { catalog, oracle_f: BTreeMap::new() };
    let criteria: [Criterion; 9] = [
        ("genus-reduction equivalence", c1),
        ("catalog derivation", c2),
        ("e-graph structure", c3),
        ("orbits", c4),
        ("divisibility", c5),
        ("series oracles", c6),
        ("parity engine", c7),
        ("classifier", c8),
        ("confluence and determinism", c9),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let started = Instant::now();
        let outcome =
            panic::catch_unwind(AssertUnwindSafe(|| check(&mut ctx))).unwrap_or_else(|_| Err("panicked".into()));
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name} [{secs:.1}s]: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name} [{secs:.1}s]: {detail}", i + 1);
            }
        }
    }
    if slow() {
        println!("slow checks included");
    } else {
        println!("slow checks skipped; set CIRCLE_GENUS_SLOW=1 to include them");
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
