//! Batch front-end: configuration, check orchestration and report emission.

pub mod args;
pub mod output;

use std::path::PathBuf;

use serde::Serialize;

use monodromy_core::clifford::{self, LogPhi};
use monodromy_core::enveloping::{self, Enveloping};
use monodromy_core::invariants;
use monodromy_core::lie;
use monodromy_core::poisson::classical_kernel;
use monodromy_core::sector::SectorSpec;
use monodromy_core::word::necklace_count;
use monodromy_core::{Algebra, Error, Metric, SectorReport, Verdict};

pub use args::{Check, Cli, Command, Format};

pub const SCHEMA: &str = "monodromy-report";
pub const SCHEMA_VERSION: u32 = 1;

/// Settings shared by every command. Thread count and cache location are
/// deliberately absent: they must not change the report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub dim: usize,
    pub metric: String,
    pub budget: usize,
    pub command: String,
    #[serde(skip)]
    pub format: Format,
    #[serde(skip)]
    pub threads: usize,
    #[serde(skip)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub suite: String,
    #[serde(flatten)]
    pub report: SectorReport,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub info: usize,
    pub error: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema: &'static str,
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub config: RunConfig,
    pub summary: Summary,
    pub records: Vec<Record>,
}

impl SuiteReport {
    pub fn new(config: RunConfig, mut records: Vec<Record>) -> SuiteReport {
        records.sort_by(|a, b| (&a.suite, &a.report.sector).cmp(&(&b.suite, &b.report.sector)));
        let mut summary = Summary::default();
        for r in &records {
            match r.report.verdict {
                Verdict::Pass => summary.pass += 1,
                Verdict::Fail => summary.fail += 1,
                Verdict::Info => summary.info += 1,
                Verdict::Error => summary.error += 1,
            }
        }
        SuiteReport { schema: SCHEMA, schema_version: SCHEMA_VERSION, tool_version: env!("CARGO_PKG_VERSION"), config, summary, records }
    }

    /// 0 when everything passed, 2 when any check could not run, else 1.
    pub fn exit_code(&self) -> i32 {
        if self.summary.error > 0 {
            2
        } else if self.summary.fail > 0 {
            1
        } else {
            0
        }
    }
}

/// Resolves dimension and metric; a metric alone fixes the dimension.
pub fn resolve_config(cli: &Cli) -> Result<RunConfig, Error> {
    let g = &cli.global;
    let metric = match (&g.metric, g.dim) {
        (Some(s), dim) => {
            let m: Metric = s.parse()?;
            if let Some(d) = dim.filter(|&d| d != m.dim()) {
                return Err(Error::InvalidMetric(format!("signature {s} has {} entries but --dim is {d}", m.dim())));
            }
            m
        }
        (None, dim) => Metric::minkowski(dim.unwrap_or(4))?,
    };
    Ok(RunConfig {
        dim: metric.dim(),
        metric: metric.signature(),
        budget: g.budget,
        command: command_name(&cli.command),
        format: g.format,
        threads: g.threads,
        cache_dir: g.cache_dir.clone(),
    })
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Basis { max_rank } => format!("basis --max-rank {max_rank}"),
        Command::Verify { check, cutoff, pairs, seed } => {
            let name = check_name(*check);
            let cutoff = cutoff.unwrap_or(check.default_cutoff());
            if *check == Check::PiIntertwine {
                format!("verify {name} --cutoff {cutoff} --pairs {pairs} --seed {seed}")
            } else {
                format!("verify {name} --cutoff {cutoff}")
            }
        }
        Command::Kernel { weight, quantum, show_basis, .. } => {
            let side = if *quantum { "--quantum" } else { "--classical" };
            format!("kernel --weight {weight} {side}{}", if *show_basis { " --show-basis" } else { "" })
        }
        Command::Correspond { max_weight } => format!("correspond --max-weight {max_weight}"),
        Command::Quadgen { max_rank, no_exceptionals } => {
            format!("quadgen --max-rank {max_rank}{}", if *no_exceptionals { " --no-exceptionals" } else { "" })
        }
        Command::Counts { max_weight, max_degree } => format!("counts --max-weight {max_weight} --max-degree {max_degree}"),
        Command::Suite { max_weight } => format!("suite --max-weight {max_weight}"),
    }
}

fn check_name(c: Check) -> String {
    use clap::ValueEnum;
    c.to_possible_value().expect("no skipped variants").get_name().to_string()
}

/// Runs with an explicit worker count; `threads == 0` uses rayon's default.
pub fn execute(cli: &Cli) -> Result<SuiteReport, Error> {
    let cfg = resolve_config(cli)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::ResourceLimit(e.to_string()))?;
    let records = pool.install(|| run_command(&cfg, &cli.command))?;
    Ok(SuiteReport::new(cfg, records))
}

fn algebra(cfg: &RunConfig, dim: usize) -> Result<Algebra, Error> {
    let metric = if dim == cfg.dim { cfg.metric.parse()? } else { Metric::minkowski(dim)? };
    let mut alg = Algebra::new(metric).with_sector_budget(cfg.budget);
    if let Some(d) = &cfg.cache_dir {
        alg = alg.with_cache_dir(d);
    }
    Ok(alg)
}

fn rec(suite: &str, report: SectorReport) -> Record {
    Record { suite: suite.to_string(), report }
}

/// Turns a runtime error into an ERROR record so the remaining checks still run.
fn guarded(check: &str, sector: String, r: Result<SectorReport, Error>) -> SectorReport {
    r.unwrap_or_else(|e| SectorReport::error(check, sector, &e))
}

fn run_command(cfg: &RunConfig, cmd: &Command) -> Result<Vec<Record>, Error> {
    let alg = algebra(cfg, cfg.dim)?;
    Ok(match cmd {
        Command::Basis { max_rank } => basis_records(&alg, *max_rank),
        Command::Verify { check, cutoff, pairs, seed } => {
            let cutoff = cutoff.unwrap_or(check.default_cutoff());
            if cutoff < check.minimum_cutoff() {
                return Err(Error::Parse(format!("cutoff {cutoff} below the minimum {}", check.minimum_cutoff())));
            }
            verify_records(&alg, *check, cutoff, *pairs, *seed, None)
        }
        Command::Kernel { weight, quantum, show_basis, .. } => vec![kernel_record(&alg, *weight, *quantum, *show_basis)],
        Command::Correspond { max_weight } => correspond_records(&alg, *max_weight),
        Command::Quadgen { max_rank, no_exceptionals } => vec![quadgen_record(&alg, *max_rank, !no_exceptionals)],
        Command::Counts { max_weight, max_degree } => vec![rec("counts", counts_report(&alg, *max_weight, *max_degree))],
        Command::Suite { max_weight } => suite_records(cfg, &alg, *max_weight)?,
    })
}

pub fn basis_records(alg: &Algebra, max_rank: usize) -> Vec<Record> {
    (1..=max_rank)
        .map(|n| {
            let sector = format!("D={} N={n:02}", alg.dim());
            let r = alg.basis(n).map(|b| {
                let necklaces = necklace_count(n, alg.dim());
                let mut rep = SectorReport::new("basis-dimension", sector.clone());
                rep.cases = 1;
                rep.set_detail("rank", n);
                rep.set_detail("dimension", b.len());
                rep.set_detail("necklace", necklaces);
                if b.len() as u64 != necklaces {
                    rep.fail(format!("rank {n}: echelon dimension {} but necklace count {necklaces}", b.len()));
                }
                rep
            });
            rec("basis", guarded("basis-dimension", sector, r))
        })
        .collect()
}

fn clifford_series(alg: &Algebra, order: usize, cache: Option<&LogPhi>) -> Result<LogPhi, Error> {
    match cache {
        Some(ls) if ls.max_order >= order => Ok(ls.clone()),
        _ => clifford::log_phi_expand(alg, order),
    }
}

fn pr_series(alg: &Algebra, order: usize, cache: Option<&LogPhi>) -> Result<clifford::PrSeries, Error> {
    clifford::extract_pr(&clifford_series(alg, order, cache)?, alg.dim())
}

/// Records for one `verify` check. The Clifford checks reuse `series` when it
/// is deep enough.
pub fn verify_records(alg: &Algebra, check: Check, cutoff: usize, pairs: usize, seed: u64, series: Option<&LogPhi>) -> Vec<Record> {
    let env = Enveloping::new(alg);
    let d = alg.dim();
    let one = |name: &str, sector: String, r: Result<SectorReport, Error>| vec![rec(name, guarded(name, sector, r))];
    match check {
        Check::Jacobi => {
            let mut v = one("jacobi", format!("D={d} rank_sum<={cutoff}"), lie::verify_jacobi(alg, cutoff));
            let c = lie::naive_jacobi_witness(alg, cutoff);
            v.push(rec("jacobi", guarded("naive-rank1-jacobi-control", format!("D={d} rank_sum<={cutoff}"), c)));
            v
        }
        Check::DeltaWelldef => one("delta-welldef", format!("D={d} rank<={cutoff}"), enveloping::verify_delta_well_defined(&env, cutoff)),
        Check::DeltaLeibniz => {
            one("delta-leibniz", format!("D={d} rank_sum<={cutoff}"), enveloping::verify_derivation_property(&env, cutoff))
        }
        Check::Z2 => one("z2", format!("D={d} rank<={cutoff}"), enveloping::verify_z_invariants(&env, cutoff)),
        Check::PiIntertwine => one(
            "pi-intertwine",
            format!("D={d} weight<={cutoff}"),
            enveloping::verify_pi_intertwining(&env, pairs, cutoff, cutoff + 2, seed),
        ),
        Check::CliffordGrades => {
            let mut v = vec![rec("clifford-grades", clifford::verify_tensor_identity(alg.metric()))];
            let r = clifford_series(alg, cutoff, series).map(|ls| clifford::verify_grades(&ls));
            v.push(rec("clifford-grades", guarded("clifford-grades", format!("order<={cutoff}"), r)));
            v
        }
        Check::PrBrackets => one(
            "pr-brackets",
            format!("D={d} order<={cutoff}"),
            pr_series(alg, cutoff - 1, series).and_then(|s| clifford::verify_pr_brackets(&env, &s, cutoff)),
        ),
        Check::BCommute => one(
            "b-commute",
            format!("D={d} n+m<={cutoff}"),
            pr_series(alg, cutoff - 3, series).and_then(|s| clifford::verify_b_commutativity(&env, &s, cutoff)),
        ),
        Check::DeltaLogphi => one(
            "delta-logphi",
            format!("D={d} order<={cutoff}"),
            clifford_series(alg, cutoff, series).and_then(|ls| clifford::verify_delta_logphi(&env, &ls, cutoff)),
        ),
    }
}

pub fn kernel_record(alg: &Algebra, weight: usize, quantum: bool, show_basis: bool) -> Record {
    let side = if quantum { "quantum" } else { "classical" };
    let sector = format!("D={} w={weight} {side}", alg.dim());
    let r = if quantum {
        let env = Enveloping::new(alg);
        let spec = SectorSpec::new(alg.dim(), weight).with_budget(alg.sector_budget());
        invariants::quantum_kernel(&env, &spec).map(|k| kernel_report(&sector, &k, show_basis))
    } else {
        classical_kernel(alg, weight).map(|k| kernel_report(&sector, &k, show_basis))
    };
    rec("kernel", guarded("kernel", sector, r))
}

fn kernel_report<P: Serialize>(sector: &str, k: &monodromy_core::sector::KernelBasis<P>, show_basis: bool) -> SectorReport {
    let mut rep = SectorReport::new("kernel", sector);
    rep.verdict = Verdict::Info;
    rep.cases = k.dim() as u64;
    rep.set_detail("dimension", k.dim());
    rep.set_detail("per_degree", &k.per_degree);
    if show_basis {
        let basis: Vec<_> = k.elements.iter().zip(&k.degrees).map(|(p, l)| serde_json::json!({"degree": l, "element": p})).collect();
        rep.set_detail("basis", basis);
    }
    rep
}

pub fn correspond_records(alg: &Algebra, max_weight: usize) -> Vec<Record> {
    let env = Enveloping::new(alg);
    (1..=max_weight)
        .map(|w| {
            let r = invariants::correspondence_check(&env, w).map(|(_, rep)| rep);
            rec("correspond", guarded("correspond", format!("D={} w={w}", alg.dim()), r))
        })
        .collect()
}

pub fn quadgen_record(alg: &Algebra, max_rank: usize, exceptionals: bool) -> Record {
    let check = if exceptionals { "quadgen" } else { "quadgen-control" };
    let r = invariants::quadratic_generation(alg, max_rank, exceptionals).map(|q| invariants::quadgen_report(&q));
    rec("quadgen", guarded(check, format!("D={} rank<={max_rank}", alg.dim()), r))
}

pub fn counts_report(alg: &Algebra, max_weight: usize, max_degree: i32) -> SectorReport {
    guarded(
        "invariant-counts",
        format!("D={} w<={max_weight}", alg.dim()),
        invariants::invariant_counts(alg, max_weight, max_degree),
    )
}

/// The default suite: every check at its default cutoff for the configured
/// dimension, plus the lower-dimensional sweeps.
pub fn suite_records(cfg: &RunConfig, alg: &Algebra, max_weight: usize) -> Result<Vec<Record>, Error> {
    let mut out = Vec::new();
    let dims: std::collections::BTreeSet<usize> = [2, 3, cfg.dim].into_iter().collect();
    for d in dims {
        out.extend(basis_records(&algebra(cfg, d)?, 8));
    }
    let order = Check::CliffordGrades.default_cutoff();
    let series = clifford::log_phi_expand(alg, order).ok();
    for check in [
        Check::Jacobi,
        Check::DeltaWelldef,
        Check::DeltaLeibniz,
        Check::Z2,
        Check::PiIntertwine,
        Check::CliffordGrades,
        Check::PrBrackets,
        Check::BCommute,
        Check::DeltaLogphi,
    ] {
        out.extend(verify_records(alg, check, check.default_cutoff(), 120, 1, series.as_ref()));
    }
    let small = algebra(cfg, 3)?;
    if cfg.dim != 3 {
        out.extend(verify_records(&small, Check::Z2, 7, 0, 0, None));
        out.extend(correspond_records(&small, max_weight));
    }
    out.extend(correspond_records(alg, max_weight));
    out.push(quadgen_record(alg, 6, true));
    out.push(quadgen_record(alg, 5, false));
    out.push(rec("counts", counts_report(alg, 6, 3)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config() -> RunConfig {
        RunConfig {
            dim: 4,
            metric: "+---".into(),
            budget: 10,
            command: "test".into(),
            format: Format::Json,
            threads: 1,
            cache_dir: None,
        }
    }

    fn report(check: &str, sector: &str, verdict: Verdict) -> Record {
        let mut r = SectorReport::new(check, sector);
        r.verdict = verdict;
        rec(check, r)
    }

    #[test]
    fn exit_codes() {
        let pass = vec![report("a", "x", Verdict::Pass), report("b", "x", Verdict::Info)];
        assert_eq!(SuiteReport::new(config(), pass.clone()).exit_code(), 0);
        let mut fail = pass.clone();
        fail.push(report("c", "x", Verdict::Fail));
        assert_eq!(SuiteReport::new(config(), fail.clone()).exit_code(), 1);
        fail.push(report("d", "x", Verdict::Error));
        assert_eq!(SuiteReport::new(config(), fail).exit_code(), 2);
    }

    #[test]
    fn records_sorted_by_suite_then_sector() {
        let recs = vec![report("b", "D=3", Verdict::Pass), report("a", "D=4", Verdict::Pass), report("a", "D=3", Verdict::Pass)];
        let s = SuiteReport::new(config(), recs);
        let keys: Vec<_> = s.records.iter().map(|r| (r.suite.as_str(), r.report.sector.as_str())).collect();
        assert_eq!(keys, [("a", "D=3"), ("a", "D=4"), ("b", "D=3")]);
        let json = output::json(&s);
        assert!(!json.contains("threads") && !json.contains("cache"));
    }
}
