//! Subcommands and their execution.

use std::path::PathBuf;

use circle_genus_core::census::check_n;
use circle_genus_core::series::parity;
use circle_genus_core::verify::{check_census, check_divisibility, Claim, ClaimTally, TREE_CLAIM_LIMIT};
use circle_genus_core::{
    classify_n, e_reduce, final_offspring, genus, l_count, match_final_form, Catalog, CensusOptions, CensusReport,
    CircleGraph, CircleTree, Error as CoreError, FormKind, Verdict,
};
use clap::{Args, Parser, Subcommand};
use rayon::ThreadPool;

use crate::cache::{CacheError, CacheRow, CensusCache, ENV_VAR};
use crate::edgelist::{self, ParseError};
use crate::json::*;
use crate::snapshot::{self, Snapshot, SnapshotError};

/// Census sizes from this one up need `--slow`.
pub const CENSUS_SLOW_FROM: usize = 10;
/// Verification bounds from this one up need `--slow`.
pub const VERIFY_SLOW_FROM: usize = 9;
/// Largest `--max` accepted by `series`.
pub const SERIES_LIMIT: usize = 1024;

#[derive(Debug, Parser)]
#[command(name = "circle-genus", version, about = "Genus-one circle trees: reduction, census and divisibility")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Genus of a circle graph.
    Genus(GraphArgs),
    /// Final offspring of a circle graph, with the deletion trace.
    Reduce(GraphArgs),
    /// E-graphs, prereduced and reduced form of a genus-one tree.
    Ereduce(GraphArgs),
    /// Catalog form of a genus-one tree.
    ClassifyTree(GraphArgs),
    /// Print the catalog of prereduced and reduced forms.
    Catalog,
    /// Count genus-one trees on n points and tabulate rotation classes.
    Census(CensusArgs),
    /// Exact a, b, c, l up to --max.
    Series(SeriesArgs),
    /// Whether f(n) is divisible by n or only by n/2.
    Classify(ClassifyArgs),
    /// Check the structural and counting claims for every n up to --max.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Graph as `n=<int>;edges=a-b,...`.
    #[arg(value_name = "GRAPH", required_unless_present = "edges", conflicts_with = "edges")]
    pub graph: Option<String>,
    #[arg(long, value_name = "GRAPH")]
    pub edges: Option<String>,
}

impl GraphArgs {
    fn text(&self) -> &str {
        self.graph.as_deref().or(self.edges.as_deref()).unwrap_or_default()
    }
}

#[derive(Debug, Args)]
pub struct CacheArgs {
    /// Directory holding census.csv.
    #[arg(long, env = ENV_VAR, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    /// Points on the circle, 3 to 11.
    #[arg(long)]
    pub n: usize,
    /// Tabulate genus-one trees by reduced form.
    #[arg(long)]
    pub by_form: bool,
    /// Allow n >= 10.
    #[arg(long)]
    pub slow: bool,
    /// Worker threads; one per core by default.
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: Option<u16>,
    #[command(flatten)]
    pub cache: CacheArgs,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(long = "max", value_name = "K")]
    pub k_max: usize,
    /// Add parity bits.
    #[arg(long)]
    pub parity: bool,
    /// CSV instead of JSON.
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Any n > 3.
    #[arg(long)]
    pub n: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long = "min", value_name = "N", default_value_t = 4)]
    pub n_min: usize,
    #[arg(long = "max", value_name = "N", default_value_t = 8)]
    pub n_max: usize,
    /// Allow --max >= 9, and compute missing censuses for n >= 10.
    #[arg(long)]
    pub slow: bool,
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: Option<u16>,
    #[command(flatten)]
    pub cache: CacheArgs,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("cannot parse graph {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Snapshot(#[from] SnapshotError),
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 2 for a broken internal invariant, 1 for anything the caller can fix.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) | CliError::Parse(ParseError::Graph(e)) if e.is_invariant() => 2,
            CliError::Snapshot(_) => 2,
            _ => 1,
        }
    }
}

/// Text for stdout and the exit status to finish with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub status: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { stdout, status: 0 }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Genus(a) => {
            let g = edgelist::parse(a.text())?;
            Ok(Outcome::ok(render(&GenusDoc { graph: graph_text(&g), genus: genus(&g)? })))
        }
        Command::Reduce(a) => reduce(&edgelist::parse(a.text())?),
        Command::Ereduce(a) => ereduce(&tree(a)?),
        Command::ClassifyTree(a) => classify_tree(&tree(a)?),
        Command::Catalog => Ok(Outcome::ok(Snapshot::of(&snapshot::embedded()?).render())),
        Command::Census(a) => census(a),
        Command::Series(a) => series(a),
        Command::Classify(a) => classify(a.n),
        Command::Verify(a) => verify(a),
    }
}

fn tree(a: &GraphArgs) -> Result<CircleTree, CliError> {
    Ok(CircleTree::try_from(edgelist::parse(a.text())?)?)
}

fn kind_name(kind: FormKind) -> String {
    format!("{kind:?}")
}

fn reduce(g: &CircleGraph) -> Result<Outcome, CliError> {
    let (offspring, trace) = final_offspring(g);
    let verdict = match_final_form(g);
    let doc = ReduceDoc {
        graph: graph_text(g),
        final_offspring: graph_text(&offspring),
        kind: kind_name(verdict.kind),
        genus_one: matches!(verdict.kind, FormKind::Form1 | FormKind::Form2),
        canonical: (&verdict.canonical).into(),
        trace: trace.steps.iter().map(StepDoc::from).collect(),
    };
    Ok(Outcome::ok(render(&doc)))
}

fn ereduce(t: &CircleTree) -> Result<Outcome, CliError> {
    let catalog = snapshot::embedded()?;
    let r = e_reduce(t)?;
    let form_id = |g: &CircleGraph| -> Result<String, CliError> {
        let canonical = g.canonicalize();
        let entry = catalog
            .lookup(&canonical)
            .ok_or_else(|| CoreError::Invariant(format!("{:?} is not in the catalog", canonical.edges)))?;
        Ok(entry.id.clone())
    };
    let added: Vec<_> = r.reduced.edges().iter().copied().filter(|&e| !r.prereduced.contains(e)).collect();
    let doc = EReduceDoc {
        tree: graph_text(t),
        egraphs: r.egraphs.iter().map(EGraphDoc::from).collect(),
        representatives: edge_texts(&r.representatives),
        paths: r.paths.iter().map(PathDoc::from).collect(),
        added: edge_texts(&added),
        prereduced: graph_text(&r.prereduced),
        reduced: graph_text(&r.reduced),
        prereduced_form: form_id(&r.prereduced)?,
        reduced_form: form_id(&r.reduced)?,
    };
    Ok(Outcome::ok(render(&doc)))
}

fn classify_tree(t: &CircleTree) -> Result<Outcome, CliError> {
    let catalog = snapshot::embedded()?;
    let form = catalog.classify_tree(t)?;
    let doc = ClassifyTreeDoc {
        tree: graph_text(t),
        form: form.id.clone(),
        source: form.source.clone().unwrap_or_default(),
        form_points: form.points,
        form_period: form.period,
        half_period_form: form.is_half_period(),
        l_count: l_count(t)?,
    };
    Ok(Outcome::ok(render(&doc)))
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::DivisibleByN => "DivisibleByN",
        Verdict::OnlyByHalf => "OnlyByHalf",
    }
}

fn census(a: &CensusArgs) -> Result<Outcome, CliError> {
    check_n(a.n)?;
    if a.n >= CENSUS_SLOW_FROM && !a.slow {
        return Err(CliError::Usage(format!(
            "a census at n={} enumerates {}^{} trees; pass --slow to run it",
            a.n,
            a.n,
            a.n - 2
        )));
    }
    let catalog = snapshot::embedded()?;
    let pool = crate::driver::pool(a.jobs.map(usize::from))?;
    let report = crate::driver::census(&pool, a.n, &catalog, CensusOptions { by_form: a.by_form })?;
    CensusCache::resolve(a.cache.cache_dir.as_deref()).put(cache_row(&report))?;
    let verdict = if a.n >= 4 { Some(verdict_name(classify_n(a.n as u64)?.verdict)) } else { None };
    let doc = CensusDoc {
        n: report.n,
        trees: report.trees,
        f_n: report.f_n,
        f_mod_n: report.f_mod_n,
        classes: report.classes,
        orbit_periods: report.orbit_periods,
        by_form: report.by_form,
        half_period_classes: report.half_period_classes,
        p_n: report.p_n,
        verdict,
        kernel_version: circle_genus_core::census::KERNEL_VERSION,
    };
    Ok(Outcome::ok(render(&doc)))
}

fn cache_row(r: &CensusReport) -> CacheRow {
    CacheRow {
        n: r.n,
        f_n: r.f_n,
        f_mod_n: r.f_mod_n,
        p_n: r.p_n,
        kernel_version: circle_genus_core::census::KERNEL_VERSION,
    }
}

fn series(a: &SeriesArgs) -> Result<Outcome, CliError> {
    if a.k_max > SERIES_LIMIT {
        return Err(CliError::Usage(format!("--max {} is above the limit {SERIES_LIMIT}", a.k_max)));
    }
    let t = circle_genus_core::series_tables(a.k_max);
    if a.csv {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["k", "a", "b", "c", "l"];
        if a.parity {
            header.extend(["a_mod2", "b_mod2", "c_mod2", "l_mod2"]);
        }
        w.write_record(&header).expect("in-memory write");
        for k in 0..=a.k_max {
            let mut rec =
                vec![k.to_string(), t.a[k].to_string(), t.b[k].to_string(), t.c[k].to_string(), t.l[k].to_string()];
            if a.parity {
                rec.extend([&t.a[k], &t.b[k], &t.c[k], &t.l[k]].map(|x| parity(x).to_string()));
            }
            w.write_record(&rec).expect("in-memory write");
        }
        let bytes = w.into_inner().expect("in-memory flush");
        return Ok(Outcome::ok(String::from_utf8(bytes).expect("ascii")));
    }
    let rows = (0..=a.k_max)
        .map(|k| SeriesRow {
            k,
            a: t.a[k].to_string(),
            b: t.b[k].to_string(),
            c: t.c[k].to_string(),
            l: t.l[k].to_string(),
            parity: a.parity.then(|| ParityDoc {
                a: parity(&t.a[k]),
                b: parity(&t.b[k]),
                c: parity(&t.c[k]),
                l: parity(&t.l[k]),
            }),
        })
        .collect();
    Ok(Outcome::ok(render(&SeriesDoc { k_max: a.k_max, rows })))
}

fn classify(n: u64) -> Result<Outcome, CliError> {
    let d = classify_n(n)?;
    let doc = ClassifyDoc {
        n,
        verdict: verdict_name(d.verdict),
        witness: d.witness.map(|w| WitnessDoc { family: w.family.formula(), v: w.v, negligent: w.negligent }),
    };
    Ok(Outcome::ok(render(&doc)))
}

fn verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    if a.n_min < 4 {
        return Err(CoreError::BelowMinimum { n: a.n_min as u64, minimum: 4 }.into());
    }
    check_n(a.n_max)?;
    if a.n_min > a.n_max {
        return Err(CliError::Usage(format!("--min {} is above --max {}", a.n_min, a.n_max)));
    }
    if a.n_max >= VERIFY_SLOW_FROM && !a.slow {
        return Err(CliError::Usage(format!(
            "verification up to n={} walks every tree through the e-reduction; pass --slow to run it",
            a.n_max
        )));
    }
    let catalog = snapshot::embedded()?;
    let cache = CensusCache::resolve(a.cache.cache_dir.as_deref());
    let pool = crate::driver::pool(a.jobs.map(usize::from))?;
    let mut results = Vec::new();
    for n in a.n_min..=a.n_max {
        results.push(verify_one(n, a.slow, &catalog, &cache, &pool)?);
    }
    let passed = results.iter().all(|r| r.claims.iter().all(|c| c.status != "fail"));
    let doc = VerifyDoc { n_min: a.n_min, n_max: a.n_max, passed, results };
    Ok(Outcome { stdout: render(&doc), status: if passed { 0 } else { 2 } })
}

fn verify_one(
    n: usize,
    slow: bool,
    catalog: &Catalog,
    cache: &CensusCache,
    pool: &ThreadPool,
) -> Result<VerifyRowDoc, CliError> {
    let mut tally = ClaimTally::default();
    let (census_source, f_n, f_mod_n) = match (n >= CENSUS_SLOW_FROM).then(|| cache.get(n)).transpose()?.flatten() {
        Some(row) => {
            check_divisibility(n, row.f_mod_n, row.p_n, &mut tally)?;
            ("cache", Some(row.f_n), row.f_mod_n)
        }
        None => {
            if n >= CENSUS_SLOW_FROM && !slow {
                return Err(CliError::Usage(format!("no cached census for n={n}; pass --slow to compute it")));
            }
            if n <= TREE_CLAIM_LIMIT {
                tally.merge(crate::driver::verify_trees(pool, n, catalog)?);
            }
            let report = crate::driver::census(pool, n, catalog, CensusOptions { by_form: true })?;
            check_census(&report, catalog, &mut tally)?;
            if n >= CENSUS_SLOW_FROM {
                cache.put(cache_row(&report))?;
            }
            ("computed", Some(report.f_n), report.f_mod_n)
        }
    };
    let claims = Claim::ALL
        .iter()
        .map(|&claim| match tally.stats.get(&claim) {
            None => ClaimDoc { claim: claim.id(), status: "skip", checked: 0, failed: 0, example: None },
            Some(s) => ClaimDoc {
                claim: claim.id(),
                status: if s.failed == 0 { "pass" } else { "fail" },
                checked: s.checked,
                failed: s.failed,
                example: s.example.clone(),
            },
        })
        .collect();
    Ok(VerifyRowDoc { n, census: census_source, f_n, f_mod_n, claims })
}
