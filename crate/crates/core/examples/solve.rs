//! Solves a handful of quadratics and shows which case of the standardized
//! form each one takes.

use quadroot::format::format_complex;
use quadroot::solver::ScaledForm;
use quadroot::{solve_with_diagnostics, Complex64, Quadratic};

fn main() -> quadroot::Result<()> {
    let c = Complex64::new;
    let examples = [
        ("distinct real roots", Quadratic::real(1.0, -2.5, 1.0)),
        ("roots of opposite sign", Quadratic::real(1.0, -1.5, -1.0)),
        ("conjugate pair", Quadratic::real(5.0, -6.0, 5.0)),
        ("b = 0", Quadratic::real(1.0, 0.0, 4.0)),
        ("c = 0", Quadratic::real(3.0, 6.0, 0.0)),
        ("huge and tiny roots", Quadratic::real(1.0, -1e200, 1.0)),
        (
            "complex coefficients",
            Quadratic::complex(c(1.0, 0.0), c(0.0, -3.0), c(-2.0, 0.0)),
        ),
    ];
    for (label, q) in examples {
        let s = solve_with_diagnostics(&q)?;
        println!("{label}: {q:?}");
        let show = |z| format_complex(z, None);
        println!(
            "  case {}: x1 = {}, x2 = {}",
            s.case,
            show(s.roots.x1),
            show(s.roots.x2)
        );
        match s.scaled {
            Some(ScaledForm::Real(f)) => {
                println!("  alpha = {:e}, beta = {:e}, e = {}", f.alpha, f.beta, f.e)
            }
            Some(ScaledForm::Complex(f)) => {
                println!(
                    "  alpha = {}, beta = {:e}, f = {}",
                    show(f.alpha),
                    f.beta,
                    show(f.f)
                )
            }
            None => println!("  solved directly"),
        }
    }
    Ok(())
}
