//! Runs the three random corpora and prints the error summaries.
//!
//! Usage: cargo run --example experiment -- [n] [seed] [csv-dir]

use std::path::PathBuf;

use quadroot::experiment::{run_experiment, CorpusKind, ExperimentConfig};
use quadroot::scalar::UNIT_ROUNDOFF;

fn main() -> quadroot::Result<()> {
    let mut args = std::env::args().skip(1);
    let n = args
        .next()
        .map_or(1000, |s| s.parse().expect("n must be an integer"));
    let seed = args
        .next()
        .map_or(42, |s| s.parse().expect("seed must be an integer"));
    let dir = args.next().map(PathBuf::from);

    for set in [
        CorpusKind::RealRandom,
        CorpusKind::ComplexRandom,
        CorpusKind::SmallSum,
    ] {
        let mut cfg = ExperimentConfig::new(set);
        cfg.n_trials = n;
        cfg.seed = seed;
        cfg.output_path = dir.as_ref().map(|d| d.join(format!("{set}.csv")));
        let out = run_experiment(&cfg)?;
        println!("{}", out.summary);
        let worst = out
            .records
            .iter()
            .max_by(|a, b| {
                let key = |r: &quadroot::experiment::TrialRecord| {
                    r.report.sum_backward_err.max(r.report.prod_backward_err)
                };
                key(a).total_cmp(&key(b))
            })
            .expect("at least one trial");
        let r = &worst.report;
        println!(
            "worst backward trial #{} ({}): sum {:.2} u, prod {:.2} u, ems {:.2} u\n",
            worst.trial_index,
            worst.case_tag,
            r.sum_backward_err / UNIT_ROUNDOFF,
            r.prod_backward_err / UNIT_ROUNDOFF,
            r.ems_residual / UNIT_ROUNDOFF
        );
    }
    Ok(())
}
