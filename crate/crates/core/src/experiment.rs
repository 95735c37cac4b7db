//! Seeded random corpora, per-trial stability reports and CSV output.
//!
//! Each trial draws from its own ChaCha8 stream (`stream = trial index`) of a
//! generator keyed by the master seed, so a trial's polynomial does not
//! depend on how many trials precede it or in which order they run.
//!
//! The small-sum corpus emits `x^2 - 2 beta x - 1` with
//! `beta = sqrt(u) 2^g m`, `g` uniform in `{-2, ..., 2}` and `m` uniform in
//! `[0.5, 1)`, so `beta` lies in `[2^-29.5, 2^-24.5)`.

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::scalar::UNIT_ROUNDOFF;
use crate::solver::{solve_with_diagnostics, Quadratic, RootCase, RootPair};
use crate::stability::{assess, StabilityReport, DEFAULT_DELTA};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusKind {
    RealRandom,
    ComplexRandom,
    SmallSum,
}

impl CorpusKind {
    pub fn name(self) -> &'static str {
        match self {
            CorpusKind::RealRandom => "RealRandom",
            CorpusKind::ComplexRandom => "ComplexRandom",
            CorpusKind::SmallSum => "SmallSum",
        }
    }

    fn distribution(self) -> &'static str {
        match self {
            CorpusKind::RealRandom | CorpusKind::ComplexRandom => "standard_normal",
            CorpusKind::SmallSum => "monic_small_sum",
        }
    }
}

impl fmt::Display for CorpusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CorpusKind {
    type Err = Error;

    /// Accepts the variant name, a kebab-case form, or the set number 1-3.
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "realrandom" | "real" | "1" => Ok(CorpusKind::RealRandom),
            "complexrandom" | "complex" | "2" => Ok(CorpusKind::ComplexRandom),
            "smallsum" | "3" => Ok(CorpusKind::SmallSum),
            _ => Err(Error::InvalidArgument(format!(
                "unknown set {s:?}; expected real, complex or small-sum"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub set: CorpusKind,
    pub n_trials: usize,
    pub seed: u64,
    pub delta_threshold: f64,
    pub output_path: Option<PathBuf>,
}

impl ExperimentConfig {
    /// 1000 trials, seed 42, threshold `64 u`, no file output.
    pub fn new(set: CorpusKind) -> Self {
        ExperimentConfig {
            set,
            n_trials: 1000,
            seed: 42,
            delta_threshold: DEFAULT_DELTA,
            output_path: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub trial_index: usize,
    pub polynomial: Quadratic,
    pub roots: RootPair,
    pub case_tag: RootCase,
    pub report: StabilityReport,
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn nonzero_normal(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let x: f64 = rng.sample(StandardNormal);
        if x != 0.0 {
            return x;
        }
    }
}

pub fn gen_real_random(seed: u64, n: usize) -> Vec<Quadratic> {
    (0..n)
        .map(|i| {
            let rng = &mut trial_rng(seed, i);
            Quadratic::real(
                nonzero_normal(rng),
                nonzero_normal(rng),
                nonzero_normal(rng),
            )
        })
        .collect()
}

pub fn gen_complex_random(seed: u64, n: usize) -> Vec<Quadratic> {
    (0..n)
        .map(|i| {
            let rng = &mut trial_rng(seed, i);
            let mut draw = || Complex64::new(nonzero_normal(rng), nonzero_normal(rng));
            let (a, b, c) = (draw(), draw(), draw());
            Quadratic::complex(a, b, c)
        })
        .collect()
}

pub fn gen_small_sum(seed: u64, n: usize) -> Vec<Quadratic> {
    let root_u = UNIT_ROUNDOFF.sqrt();
    (0..n)
        .map(|i| {
            let rng = &mut trial_rng(seed, i);
            let g: i32 = rng.random_range(-2..=2);
            let m: f64 = rng.random_range(0.5..1.0);
            let beta = root_u * 2f64.powi(g) * m;
            Quadratic::real(1.0, -2.0 * beta, -1.0)
        })
        .collect()
}

pub fn generate(set: CorpusKind, seed: u64, n: usize) -> Vec<Quadratic> {
    match set {
        CorpusKind::RealRandom => gen_real_random(seed, n),
        CorpusKind::ComplexRandom => gen_complex_random(seed, n),
        CorpusKind::SmallSum => gen_small_sum(seed, n),
    }
}

pub fn run_trials(cfg: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    if cfg.n_trials == 0 {
        return Err(Error::InvalidArgument(
            "number of trials must be at least 1".into(),
        ));
    }
    generate(cfg.set, cfg.seed, cfg.n_trials)
        .into_iter()
        .enumerate()
        .map(|(trial_index, polynomial)| {
            let solution = solve_with_diagnostics(&polynomial)?;
            let report = assess(&polynomial, &solution.roots, cfg.delta_threshold)?;
            Ok(TrialRecord {
                trial_index,
                polynomial,
                roots: solution.roots,
                case_tag: solution.case,
                report,
            })
        })
        .collect()
}

pub const CSV_COLUMNS: [&str; 17] = [
    "trial",
    "a_re",
    "a_im",
    "b_re",
    "b_im",
    "c_re",
    "c_im",
    "x1_re",
    "x1_im",
    "x2_re",
    "x2_im",
    "fwd_err_1",
    "fwd_err_2",
    "sum_backward_err",
    "prod_backward_err",
    "nbs_ratio",
    "case_tag",
];

/// Writes a `#` comment line with the configuration, the column header and
/// one row per record. Floats use Rust's shortest round-trip `{:e}` form.
pub fn write_csv<W: Write>(
    mut out: W,
    cfg: &ExperimentConfig,
    records: &[TrialRecord],
) -> io::Result<()> {
    writeln!(
        out,
        "# set={} n={} seed={} delta={:e} u={:e} distribution={}",
        cfg.set,
        cfg.n_trials,
        cfg.seed,
        cfg.delta_threshold,
        UNIT_ROUNDOFF,
        cfg.set.distribution()
    )?;
    writeln!(out, "{}", CSV_COLUMNS.join(","))?;
    for r in records {
        let q = &r.polynomial;
        let e = &r.report;
        write!(out, "{}", r.trial_index)?;
        for z in [q.a, q.b, q.c, r.roots.x1, r.roots.x2] {
            write!(out, ",{:e},{:e}", z.re, z.im)?;
        }
        for x in [
            e.fwd_err_1,
            e.fwd_err_2,
            e.sum_backward_err,
            e.prod_backward_err,
            e.nbs_ratio,
        ] {
            write!(out, ",{x:e}")?;
        }
        writeln!(out, ",{}", r.case_tag)?;
    }
    out.flush()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColumnSummary {
    pub name: &'static str,
    pub max: f64,
    pub median: f64,
    pub over_delta: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSummary {
    pub set: CorpusKind,
    pub n_trials: usize,
    pub delta: f64,
    pub columns: Vec<ColumnSummary>,
    pub passed: bool,
}

impl ExperimentSummary {
    pub fn column(&self, name: &str) -> Option<&ColumnSummary> {
        self.columns.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for ExperimentSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "set={} n={} delta={:e}",
            self.set, self.n_trials, self.delta
        )?;
        for c in &self.columns {
            writeln!(
                f,
                "{:<18} max={:<12.4e} median={:<12.4e} over_delta={}",
                c.name, c.max, c.median, c.over_delta
            )?;
        }
        write!(
            f,
            "acceptance={}",
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}

type Column = (&'static str, fn(&StabilityReport) -> f64);

const SUMMARY_COLUMNS: [Column; 5] = [
    ("fwd_err_1", |r| r.fwd_err_1),
    ("fwd_err_2", |r| r.fwd_err_2),
    ("sum_backward_err", |r| r.sum_backward_err),
    ("prod_backward_err", |r| r.prod_backward_err),
    ("nbs_ratio", |r| r.nbs_ratio),
];

pub fn summarize(cfg: &ExperimentConfig, records: &[TrialRecord]) -> ExperimentSummary {
    let columns = SUMMARY_COLUMNS
        .iter()
        .map(|&(name, get)| {
            let mut values: Vec<f64> = records.iter().map(|r| get(&r.report)).collect();
            values.sort_by(f64::total_cmp);
            ColumnSummary {
                name,
                max: values.last().copied().unwrap_or(f64::NAN),
                median: median(&values),
                over_delta: values.iter().filter(|&&v| v > cfg.delta_threshold).count(),
            }
        })
        .collect();
    ExperimentSummary {
        set: cfg.set,
        n_trials: records.len(),
        delta: cfg.delta_threshold,
        columns,
        passed: acceptance(cfg.set, cfg.delta_threshold, records),
    }
}

fn median(sorted: &[f64]) -> f64 {
    match sorted.len() {
        0 => f64::NAN,
        n if n % 2 == 1 => sorted[n / 2],
        n => (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0,
    }
}

/// Random sets: every backward error is at most `delta`. Small-sum set:
/// every product error is at most `delta` and some sum error reaches
/// `sqrt(u) / 64`.
pub fn acceptance(set: CorpusKind, delta: f64, records: &[TrialRecord]) -> bool {
    let prod_ok = records.iter().all(|r| r.report.prod_backward_err <= delta);
    match set {
        CorpusKind::RealRandom | CorpusKind::ComplexRandom => {
            prod_ok && records.iter().all(|r| r.report.sum_backward_err <= delta)
        }
        CorpusKind::SmallSum => {
            let floor = UNIT_ROUNDOFF.sqrt() / 64.0;
            prod_ok && records.iter().any(|r| r.report.sum_backward_err >= floor)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutcome {
    pub records: Vec<TrialRecord>,
    pub summary: ExperimentSummary,
}

/// Runs every trial, writes the CSV when an output path is configured and
/// summarizes the errors.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutcome> {
    let records = run_trials(cfg)?;
    if let Some(path) = &cfg.output_path {
        let io_err = |e: io::Error| Error::Io(format!("{}: {e}", path.display()));
        let file = File::create(path).map_err(io_err)?;
        write_csv(BufWriter::new(file), cfg, &records).map_err(io_err)?;
    }
    let summary = summarize(cfg, &records);
    Ok(ExperimentOutcome { records, summary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::Kind;

    #[test]
    fn generators_are_reproducible() {
        for set in [
            CorpusKind::RealRandom,
            CorpusKind::ComplexRandom,
            CorpusKind::SmallSum,
        ] {
            assert_eq!(generate(set, 1, 3), generate(set, 1, 3));
            assert_ne!(generate(set, 1, 50), generate(set, 2, 50));
        }
    }

    #[test]
    fn trials_do_not_depend_on_corpus_length() {
        let short = gen_real_random(7, 5);
        let long = gen_real_random(7, 500);
        assert_eq!(short[..], long[..5]);
    }

    #[test]
    fn random_coefficients_are_nonzero() {
        for q in gen_real_random(1, 1000) {
            assert!(q.a.re != 0.0 && q.b.re != 0.0 && q.c.re != 0.0);
            assert_eq!(q.kind(), Kind::Real);
        }
        let one = gen_complex_random(1, 1);
        assert_eq!(one.len(), 1);
        for q in gen_complex_random(1, 1000) {
            assert_eq!(q.kind(), Kind::Complex);
            for z in [q.a, q.b, q.c] {
                assert!(z.re != 0.0 && z.im != 0.0);
            }
        }
    }

    #[test]
    fn small_sum_parameters() {
        let lo = 2f64.powf(-29.5);
        let hi = 2f64.powf(-24.5);
        for q in gen_small_sum(3, 1000) {
            assert_eq!((q.a.re, q.c.re), (1.0, -1.0));
            let beta = -q.b.re / 2.0;
            assert!(beta >= lo * (1.0 - 1e-15) && beta < hi && beta < 2f64.powi(-24));
            let s = solve_with_diagnostics(&q).unwrap();
            assert_eq!(s.case, RootCase::Real1);
        }
    }

    #[test]
    fn set_names() {
        assert_eq!("real".parse::<CorpusKind>(), Ok(CorpusKind::RealRandom));
        assert_eq!(
            "ComplexRandom".parse::<CorpusKind>(),
            Ok(CorpusKind::ComplexRandom)
        );
        assert_eq!("small-sum".parse::<CorpusKind>(), Ok(CorpusKind::SmallSum));
        assert_eq!("3".parse::<CorpusKind>(), Ok(CorpusKind::SmallSum));
        assert!("quartic".parse::<CorpusKind>().is_err());
    }

    #[test]
    fn csv_layout_and_determinism() {
        let mut cfg = ExperimentConfig::new(CorpusKind::ComplexRandom);
        cfg.n_trials = 20;
        let records = run_trials(&cfg).unwrap();
        let mut first = Vec::new();
        write_csv(&mut first, &cfg, &records).unwrap();
        let mut second = Vec::new();
        write_csv(&mut second, &cfg, &run_trials(&cfg).unwrap()).unwrap();
        assert_eq!(first, second);

        let text = String::from_utf8(first).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# set=ComplexRandom n=20 seed=42 "));
        assert_eq!(lines[1], CSV_COLUMNS.join(","));
        assert_eq!(lines.len(), 22);
        let row: Vec<&str> = lines[2].split(',').collect();
        assert_eq!(row.len(), CSV_COLUMNS.len());
        assert_eq!(row[0], "0");
        assert_eq!(row[1].parse::<f64>().unwrap(), records[0].polynomial.a.re);
        assert_eq!(row[16], records[0].case_tag.as_str());
    }

    #[test]
    fn acceptance_predicates() {
        let mut cfg = ExperimentConfig::new(CorpusKind::SmallSum);
        cfg.n_trials = 50;
        let records = run_trials(&cfg).unwrap();
        assert!(acceptance(
            CorpusKind::SmallSum,
            cfg.delta_threshold,
            &records
        ));
        // The same records violate the random-set predicate on the sum.
        assert!(!acceptance(
            CorpusKind::RealRandom,
            cfg.delta_threshold,
            &records
        ));
        // A threshold of zero cannot hold for rounded products.
        assert!(!acceptance(CorpusKind::SmallSum, 0.0, &records));
    }

    #[test]
    fn summary_statistics() {
        assert_eq!(median(&[1.0, 2.0, 4.0]), 2.0);
        assert_eq!(median(&[1.0, 2.0, 4.0, 8.0]), 3.0);
        let mut cfg = ExperimentConfig::new(CorpusKind::SmallSum);
        cfg.n_trials = 30;
        let out = run_experiment(&cfg).unwrap();
        let sum = out.summary.column("sum_backward_err").unwrap();
        assert_eq!(sum.over_delta, 30);
        assert!(sum.median <= sum.max);
        assert!(out.summary.passed);
    }

    #[test]
    fn unwritable_output_is_an_error() {
        let mut cfg = ExperimentConfig::new(CorpusKind::RealRandom);
        cfg.n_trials = 1;
        cfg.output_path = Some("/nonexistent-dir/out.csv".into());
        assert!(matches!(run_experiment(&cfg), Err(Error::Io(_))));
        cfg.n_trials = 0;
        cfg.output_path = None;
        assert!(run_experiment(&cfg).is_err());
    }
}
