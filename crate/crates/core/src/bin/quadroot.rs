use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;

use quadroot::experiment::{run_experiment, CorpusKind, ExperimentConfig};
use quadroot::format::{format_complex, format_real, parse_complex};
use quadroot::scalar::UNIT_ROUNDOFF;
use quadroot::solver::ScaledForm;
use quadroot::stability::ebs_impossibility_search;
use quadroot::{assess, solve_with_diagnostics, Error, Quadratic};

const EXIT_USAGE: u8 = 1;
const EXIT_REJECTED: u8 = 2;
const EXIT_RANGE: u8 = 3;

/// Mixed-stable roots of a x^2 + b x + c and a stability test-bench.
#[derive(Parser)]
#[command(name = "quadroot", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the roots of a x^2 + b x + c.
    Solve {
        #[command(flatten)]
        coefficients: Coefficients,
        /// Also print the case, the standardized form and full-precision roots.
        #[arg(long)]
        diagnostics: bool,
    },
    /// Print the stability report of the computed roots as key=value lines.
    Check {
        #[command(flatten)]
        coefficients: Coefficients,
        /// Threshold for the stability flags, in multiples of u.
        #[arg(long, default_value_t = 64.0)]
        delta_ulps: f64,
    },
    /// Run a random corpus; exit 2 if its acceptance predicate fails.
    Experiment {
        /// real, complex or small-sum.
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 64.0)]
        delta_ulps: f64,
        /// CSV destination; no file is written without it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search the ulp grid around the rounded roots of y^2 - 2 beta y - 1,
    /// beta = 2^-t + 2^-2t, for a backward-stable pair.
    Counterexample {
        #[arg(long, default_value_t = 27)]
        t: u32,
        #[arg(long, default_value_t = 100)]
        radius: u32,
    },
}

/// Coefficients as RE, IMi, RE+IMi or RE-IMi.
#[derive(clap::Args)]
struct Coefficients {
    #[arg(allow_hyphen_values = true)]
    a: String,
    #[arg(allow_hyphen_values = true)]
    b: String,
    #[arg(allow_hyphen_values = true)]
    c: String,
}

impl Coefficients {
    fn quadratic(&self) -> Result<Quadratic, Error> {
        let a = parse_complex(&self.a)?;
        let b = parse_complex(&self.b)?;
        let c = parse_complex(&self.c)?;
        if a.im == 0.0 && b.im == 0.0 && c.im == 0.0 {
            Ok(Quadratic::real(a.re, b.re, c.re))
        } else {
            Ok(Quadratic::complex(a, b, c))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ScalingRange(_)
        | Error::UlpOverflow { .. }
        | Error::GammaOutOfRange(_)
        | Error::InfiniteRelativeError
        | Error::ZeroSign
        | Error::ZeroPhase => EXIT_RANGE,
        _ => EXIT_USAGE,
    }
}

fn delta(ulps: f64) -> Result<f64, Error> {
    if ulps.is_finite() && ulps > 0.0 {
        Ok(ulps * UNIT_ROUNDOFF)
    } else {
        Err(Error::InvalidArgument(
            "--delta-ulps must be positive".into(),
        ))
    }
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Solve {
            coefficients,
            diagnostics,
        } => {
            let q = coefficients.quadratic()?;
            let s = solve_with_diagnostics(&q)?;
            let short = |z| format_complex(z, Some(15));
            println!("x1={} x2={}", short(s.roots.x1), short(s.roots.x2));
            if diagnostics {
                let full = |z| format_complex(z, None);
                println!("case={}", s.case);
                match s.scaled {
                    Some(ScaledForm::Real(f)) => {
                        println!("alpha={}", format_real(f.alpha, None));
                        println!("beta={}", format_real(f.beta, None));
                        println!("e={}", f.e);
                    }
                    Some(ScaledForm::Complex(f)) => {
                        println!("alpha={}", full(f.alpha));
                        println!("beta={}", format_real(f.beta, None));
                        println!("f={}", full(f.f));
                    }
                    None => {}
                }
                println!("x1_full={} x2_full={}", full(s.roots.x1), full(s.roots.x2));
            }
            Ok(0)
        }
        Command::Check {
            coefficients,
            delta_ulps,
        } => {
            let q = coefficients.quadratic()?;
            let s = solve_with_diagnostics(&q)?;
            let r = assess(&q, &s.roots, delta(delta_ulps)?)?;
            let full = |z: Complex64| format_complex(z, None);
            println!("x1={}", full(s.roots.x1));
            println!("x2={}", full(s.roots.x2));
            println!("case={}", s.case);
            for (key, value) in [
                ("fwd_err_1", r.fwd_err_1),
                ("fwd_err_2", r.fwd_err_2),
                ("sum_backward_err", r.sum_backward_err),
                ("prod_backward_err", r.prod_backward_err),
                ("nbs_ratio", r.nbs_ratio),
                ("ems_residual", r.ems_residual),
                ("delta", r.delta),
            ] {
                println!("{key}={value:e}");
            }
            println!("ebs={}", r.ebs_pass);
            println!("ems={}", r.ems_pass);
            println!("nbs={}", r.nbs_pass);
            Ok(0)
        }
        Command::Experiment {
            set,
            n,
            seed,
            delta_ulps,
            out,
        } => {
            let mut cfg = ExperimentConfig::new(set.parse::<CorpusKind>()?);
            cfg.n_trials = n;
            cfg.seed = seed;
            cfg.delta_threshold = delta(delta_ulps)?;
            cfg.output_path = out;
            let outcome = run_experiment(&cfg)?;
            println!("{}", outcome.summary);
            Ok(if outcome.summary.passed {
                0
            } else {
                EXIT_REJECTED
            })
        }
        Command::Counterexample { t, radius } => {
            let r = ebs_impossibility_search(t, radius)?;
            println!("t={}", r.t);
            println!("radius={}", r.search_radius);
            println!("beta={:e}", r.beta);
            println!(
                "rounded_roots={:e},{:e}",
                r.rounded_roots.0, r.rounded_roots.1
            );
            println!("rounded_sum_err={:e}", r.rounded_sum_err);
            println!("min_sum_err={:e}", r.min_sum_err);
            println!("min_sum_err_over_u={:e}", r.min_sum_err / UNIT_ROUNDOFF);
            println!(
                "argmin_offsets={},{}",
                r.argmin_offsets.0, r.argmin_offsets.1
            );
            println!("min_prod_err={:e}", r.min_prod_err);
            println!("min_ebs_residual={:e}", r.min_ebs_residual);
            println!(
                "min_ebs_residual_over_u={:e}",
                r.min_ebs_residual / UNIT_ROUNDOFF
            );
            Ok(0)
        }
    }
}
