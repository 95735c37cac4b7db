//! Mixed-stable quadratic roots.
//!
//! A polynomial `a x^2 + b x + c` with nonzero `b` and `c` is first made
//! monic (`b1 = b/a`, `c1 = c/a`) and then rescaled by `x = -alpha y` into
//!
//! ```text
//! q(y) = y^2 - 2 beta y + e,    beta >= 0,  |e| = 1.
//! ```
//!
//! With real `b1, c1` the sign `e` is `+1` or `-1` and three cases cover
//! every `(beta, e)`:
//!
//! | case | condition            | larger root                        | smaller root |
//! |------|----------------------|------------------------------------|--------------|
//! | 1    | `e = -1`             | `beta + sqrt(beta^2 + 1)`          | `-1 / y1`    |
//! | 2    | `e = +1, beta >= 1`  | `beta + sqrt((beta+1)(beta-1))`    | `1 / y1`     |
//! | 3    | `e = +1, beta < 1`   | `beta + i sqrt((beta+1)(1-beta))`  | `conj(y1)`   |
//!
//! None of these subtract nearly equal quantities, so each `y` is accurate
//! to a few ulps relative to the exact roots of the computed `q`. With a
//! complex `b1` or `c1`, `e = f^2` lies on the unit circle and the larger
//! root is `beta + s sqrt((beta - f)(beta + f))` with `s` the sign of the real
//! part of the square root. The smaller root follows from the product `f^2`.
//!
//! When `b = 0` or `c = 0` the roots come straight from a quotient and at
//! most one square root.

use num_complex::Complex64;

use crate::scalar::{complex_div, complex_phase, complex_sqrt, modulus, real_sign};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Real,
    Complex,
}

/// `a x^2 + b x + c` with `a != 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadratic {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

impl Quadratic {
    pub fn real(a: f64, b: f64, c: f64) -> Self {
        Self::complex(a.into(), b.into(), c.into())
    }

    pub fn complex(a: Complex64, b: Complex64, c: Complex64) -> Self {
        Self { a, b, c }
    }

    /// `Real` exactly when every imaginary part is zero.
    pub fn kind(&self) -> Kind {
        if self.a.im == 0.0 && self.b.im == 0.0 && self.c.im == 0.0 {
            Kind::Real
        } else {
            Kind::Complex
        }
    }

    /// Multiplies every coefficient by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self::complex(self.a * factor, self.b * factor, self.c * factor)
    }

    fn validate(&self) -> Result<()> {
        for (name, z) in [("a", self.a), ("b", self.b), ("c", self.c)] {
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::NonFinite(name));
            }
        }
        if self.a == Complex64::new(0.0, 0.0) {
            return Err(Error::DegenerateLeadingCoefficient);
        }
        Ok(())
    }
}

/// `x^2 + b1 x + c1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonicQuadratic {
    pub b1: Complex64,
    pub c1: Complex64,
}

impl MonicQuadratic {
    pub fn kind(&self) -> Kind {
        if self.b1.im == 0.0 && self.c1.im == 0.0 {
            Kind::Real
        } else {
            Kind::Complex
        }
    }
}

/// Standardized real form: `x = -alpha y`, `q(y) = y^2 - 2 beta y + e`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledFormReal {
    pub alpha: f64,
    pub beta: f64,
    pub e: i8,
}

/// Standardized complex form: `x = -alpha y`, `q(y) = y^2 - 2 beta y + f^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledFormComplex {
    pub alpha: Complex64,
    pub beta: f64,
    pub f: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScaledForm {
    Real(ScaledFormReal),
    Complex(ScaledFormComplex),
}

/// The two roots, `x1` the one of larger modulus outside the zero-coefficient
/// paths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootPair {
    pub x1: Complex64,
    pub x2: Complex64,
}

/// Which branch of the solver produced the roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootCase {
    CZero,
    BZero,
    Real1,
    Real2,
    Real3,
    Complex,
}

impl RootCase {
    pub fn as_str(self) -> &'static str {
        match self {
            RootCase::CZero => "CZero",
            RootCase::BZero => "BZero",
            RootCase::Real1 => "Real1",
            RootCase::Real2 => "Real2",
            RootCase::Real3 => "Real3",
            RootCase::Complex => "Complex",
        }
    }
}

impl std::fmt::Display for RootCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Roots together with the intermediate standardized form, when one was
/// built.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Solution {
    pub roots: RootPair,
    pub case: RootCase,
    pub scaled: Option<ScaledForm>,
}

pub fn solve(q: &Quadratic) -> Result<RootPair> {
    solve_with_diagnostics(q).map(|s| s.roots)
}

pub fn solve_with_diagnostics(q: &Quadratic) -> Result<Solution> {
    q.validate()?;
    let zero = Complex64::new(0.0, 0.0);
    if q.b == zero {
        return Ok(Solution {
            roots: solve_b_zero(q)?,
            case: RootCase::BZero,
            scaled: None,
        });
    }
    if q.c == zero {
        return Ok(Solution {
            roots: solve_c_zero(q)?,
            case: RootCase::CZero,
            scaled: None,
        });
    }

    let monic = to_monic(q)?;
    match monic.kind() {
        Kind::Real => {
            let form = scale_variable_real(&monic)?;
            let (y1, y2) = roots_scaled_real(&form);
            Ok(Solution {
                roots: unscale_roots(y1, y2, form.alpha.into())?,
                case: real_case(&form),
                scaled: Some(ScaledForm::Real(form)),
            })
        }
        Kind::Complex => {
            let form = scale_variable_complex(&monic)?;
            let (y1, y2) = roots_scaled_complex(&form);
            Ok(Solution {
                roots: unscale_roots(y1, y2, form.alpha)?,
                case: RootCase::Complex,
                scaled: Some(ScaledForm::Complex(form)),
            })
        }
    }
}

/// `x1 = -b/a`, `x2 = 0`.
pub fn solve_c_zero(q: &Quadratic) -> Result<RootPair> {
    q.validate()?;
    require(q.c == Complex64::new(0.0, 0.0), "solve_c_zero needs c = 0")?;
    require(q.b != Complex64::new(0.0, 0.0), "solve_c_zero needs b != 0")?;
    let b1 = quotient(q.b, q.a, "b/a")?;
    Ok(RootPair {
        x1: -b1,
        x2: Complex64::new(0.0, 0.0),
    })
}

/// `x1 = sqrt(-c/a)`, `x2 = -x1`.
pub fn solve_b_zero(q: &Quadratic) -> Result<RootPair> {
    q.validate()?;
    require(q.b == Complex64::new(0.0, 0.0), "solve_b_zero needs b = 0")?;
    let c1 = quotient(q.c, q.a, "c/a")?;
    let x1 = if c1.im == 0.0 {
        // Real radicand: the root is either real or purely imaginary.
        let r = -c1.re;
        if r >= 0.0 {
            Complex64::new(r.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (-r).sqrt())
        }
    } else {
        complex_sqrt(-c1)
    };
    Ok(RootPair { x1, x2: -x1 })
}

pub fn to_monic(q: &Quadratic) -> Result<MonicQuadratic> {
    q.validate()?;
    Ok(MonicQuadratic {
        b1: quotient(q.b, q.a, "b/a")?,
        c1: quotient(q.c, q.a, "c/a")?,
    })
}

pub fn scale_variable_real(m: &MonicQuadratic) -> Result<ScaledFormReal> {
    require(
        m.kind() == Kind::Real,
        "scale_variable_real needs real b1, c1",
    )?;
    let (b1, c1) = (m.b1.re, m.c1.re);
    let alpha = c1.abs().sqrt() * real_sign(b1)?;
    let beta = b1 / (2.0 * alpha);
    let e = real_sign(c1)? as i8;
    Ok(ScaledFormReal { alpha, beta, e })
}

pub fn scale_variable_complex(m: &MonicQuadratic) -> Result<ScaledFormComplex> {
    let eb = complex_phase(m.b1)?;
    let ec = complex_phase(m.c1)?;
    let root_c = modulus(m.c1).sqrt();
    let alpha = eb * root_c;
    let beta = modulus(m.b1) / (2.0 * root_c);
    let f = complex_div(complex_sqrt(ec), eb);
    Ok(ScaledFormComplex { alpha, beta, f })
}

fn real_case(s: &ScaledFormReal) -> RootCase {
    if s.e < 0 {
        RootCase::Real1
    } else if s.beta >= 1.0 {
        RootCase::Real2
    } else {
        RootCase::Real3
    }
}

pub fn roots_scaled_real(s: &ScaledFormReal) -> (Complex64, Complex64) {
    let beta = s.beta;
    match real_case(s) {
        RootCase::Real1 => {
            let y1 = if beta >= HUGE_BETA {
                2.0 * beta
            } else {
                beta + (beta * beta + 1.0).sqrt()
            };
            (y1.into(), (-(1.0 / y1)).into())
        }
        RootCase::Real2 => {
            let y1 = if beta >= HUGE_BETA {
                2.0 * beta
            } else {
                beta + ((beta + 1.0) * (beta - 1.0)).sqrt()
            };
            (y1.into(), (1.0 / y1).into())
        }
        _ => {
            let im = ((beta + 1.0) * (1.0 - beta)).sqrt();
            (Complex64::new(beta, im), Complex64::new(beta, -im))
        }
    }
}

// From here on `beta +- 1` and `beta^2 +- 1` round to `beta` and `beta^2`, so
// the square root is exactly `beta`; taking the shortcut only avoids the
// overflow of the intermediate square.
const HUGE_BETA: f64 = 6.703903964971299e153; // 2^511

pub fn roots_scaled_complex(s: &ScaledFormComplex) -> (Complex64, Complex64) {
    let beta = Complex64::new(s.beta, 0.0);
    let gamma = if s.beta >= HUGE_BETA {
        beta
    } else {
        complex_sqrt((beta - s.f) * (beta + s.f))
    };
    // A zero real part counts as positive.
    let y1 = if gamma.re >= 0.0 {
        beta + gamma
    } else {
        beta - gamma
    };
    let y2 = complex_div(s.f * s.f, y1);
    (y1, y2)
}

/// `x_i = -alpha y_i`.
pub fn unscale_roots(y1: Complex64, y2: Complex64, alpha: Complex64) -> Result<RootPair> {
    let unscale = |y: Complex64| {
        if alpha.im == 0.0 {
            Complex64::new(-(y.re * alpha.re), -(y.im * alpha.re))
        } else {
            -(y * alpha)
        }
    };
    let roots = RootPair {
        x1: unscale(y1),
        x2: unscale(y2),
    };
    for x in [roots.x1, roots.x2] {
        if !(x.re.is_finite() && x.im.is_finite()) {
            return Err(Error::ScalingRange("root"));
        }
    }
    Ok(roots)
}

fn quotient(n: Complex64, d: Complex64, what: &'static str) -> Result<Complex64> {
    let q = complex_div(n, d);
    if !(q.re.is_finite() && q.im.is_finite()) {
        return Err(Error::ScalingRange(what));
    }
    if q == Complex64::new(0.0, 0.0) && n != q {
        return Err(Error::ScalingRange(what));
    }
    Ok(q)
}

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidArgument(msg.to_owned()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::UNIT_ROUNDOFF as U;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn solve_trivial_examples() {
        // alpha = -sqrt(2) is rounded, so the roots land within an ulp of 2 and 1.
        let r = solve(&Quadratic::real(2.0, -6.0, 4.0)).unwrap();
        assert!((r.x1 - c(2.0, 0.0)).norm() <= 4.0 * U * 2.0);
        assert!((r.x2 - c(1.0, 0.0)).norm() <= 4.0 * U);
        assert_eq!((r.x1.im, r.x2.im), (0.0, 0.0));

        let r = solve(&Quadratic::real(1.0, 0.0, 4.0)).unwrap();
        assert_eq!((r.x1, r.x2), (c(0.0, 2.0), c(-0.0, -2.0)));

        let q = Quadratic::complex(c(1.0, 0.0), c(0.0, -3.0), c(-2.0, 0.0));
        let r = solve(&q).unwrap();
        assert!((r.x1 - c(0.0, 2.0)).norm() <= 8.0 * U * 2.0);
        assert!((r.x2 - c(0.0, 1.0)).norm() <= 8.0 * U);
    }

    #[test]
    fn zero_leading_coefficient_is_rejected() {
        assert_eq!(
            solve(&Quadratic::real(0.0, 1.0, 1.0)),
            Err(Error::DegenerateLeadingCoefficient)
        );
        assert_eq!(
            solve(&Quadratic::real(f64::NAN, 1.0, 1.0)),
            Err(Error::NonFinite("a"))
        );
    }

    #[test]
    fn c_zero_path() {
        let r = solve_c_zero(&Quadratic::real(1.0, 4.0, 0.0)).unwrap();
        assert_eq!((r.x1.re, r.x2.re), (-4.0, 0.0));
        let r = solve_c_zero(&Quadratic::real(2.0, 1.0, 0.0)).unwrap();
        assert_eq!(r.x1.re, -0.5);
        let q = Quadratic::complex(c(1.0, 1.0), c(2.0, 2.0), c(0.0, 0.0));
        let r = solve_c_zero(&q).unwrap();
        assert_eq!(r.x1, c(-2.0, -0.0));
        assert_eq!(r.x2, c(0.0, 0.0));
        assert!(solve_c_zero(&Quadratic::real(1.0, 1.0, 1.0)).is_err());
    }

    #[test]
    fn b_zero_path() {
        let r = solve_b_zero(&Quadratic::real(1.0, 0.0, -9.0)).unwrap();
        assert_eq!((r.x1, r.x2), (c(3.0, 0.0), c(-3.0, -0.0)));
        let r = solve_b_zero(&Quadratic::real(4.0, 0.0, 1.0)).unwrap();
        assert_eq!((r.x1.im, r.x2.im), (0.5, -0.5));
        assert_eq!(r.x1.re, 0.0);
        let r = solve_b_zero(&Quadratic::real(1.0, 0.0, -2.0)).unwrap();
        assert_eq!(r.x1.re, std::f64::consts::SQRT_2);
        assert!(solve_b_zero(&Quadratic::real(1.0, 1.0, 1.0)).is_err());
    }

    #[test]
    fn dispatch_checks_original_coefficients() {
        // b = 0 is tested before c = 0, as in the reference control flow.
        let s = solve_with_diagnostics(&Quadratic::real(1.0, 0.0, 0.0)).unwrap();
        assert_eq!(s.case, RootCase::BZero);
        assert_eq!(s.roots.x1, c(0.0, 0.0));
        let s = solve_with_diagnostics(&Quadratic::real(3.0, 1.0, 0.0)).unwrap();
        assert_eq!(s.case, RootCase::CZero);
    }

    #[test]
    fn monic_scaling() {
        let m = to_monic(&Quadratic::real(2.0, -6.0, 4.0)).unwrap();
        assert_eq!((m.b1.re, m.c1.re), (-3.0, 2.0));
        let m = to_monic(&Quadratic::real(1.0, 0.7, -1.3)).unwrap();
        assert_eq!((m.b1.re, m.c1.re), (0.7, -1.3));
        let m = to_monic(&Quadratic::real(3.0, 1.0, 1.0)).unwrap();
        assert_eq!((m.b1.re, m.c1.re), (1.0 / 3.0, 1.0 / 3.0));
        assert_eq!(
            to_monic(&Quadratic::real(1e-300, 1e300, 1.0)),
            Err(Error::ScalingRange("b/a"))
        );
        assert_eq!(
            to_monic(&Quadratic::real(1e300, 1.0, 1e-300)),
            Err(Error::ScalingRange("c/a"))
        );
    }

    #[test]
    fn variable_scaling_real() {
        let s = scale_variable_real(&to_monic(&Quadratic::real(1.0, 4.0, 4.0)).unwrap()).unwrap();
        assert_eq!(
            s,
            ScaledFormReal {
                alpha: 2.0,
                beta: 1.0,
                e: 1
            }
        );
        let s = scale_variable_real(&to_monic(&Quadratic::real(1.0, 2.0, -1.0)).unwrap()).unwrap();
        assert_eq!(
            s,
            ScaledFormReal {
                alpha: 1.0,
                beta: 1.0,
                e: -1
            }
        );
        // alpha = -sqrt(2) and beta = 3 / (2 sqrt(2)), correctly rounded.
        let s = scale_variable_real(&to_monic(&Quadratic::real(1.0, -3.0, 2.0)).unwrap()).unwrap();
        let alpha = -std::f64::consts::SQRT_2;
        let beta = 1.060_660_171_779_821_3_f64;
        assert!((s.alpha - alpha).abs() <= U * alpha.abs());
        assert!((s.beta - beta).abs() <= 2.0 * U * beta);
        assert_eq!(s.e, 1);
    }

    #[test]
    fn variable_scaling_complex() {
        // f = sqrt(e_c) / e_b = 1 / -1; only f^2 enters q(y).
        let m = MonicQuadratic {
            b1: c(-2.0, 0.0),
            c1: c(1.0, 0.0),
        };
        let s = scale_variable_complex(&m).unwrap();
        assert_eq!((s.alpha, s.beta, s.f), (c(-1.0, 0.0), 1.0, c(-1.0, 0.0)));
        assert_eq!(s.f * s.f, c(1.0, 0.0));

        let m = MonicQuadratic {
            b1: c(0.0, 2.0),
            c1: c(-1.0, 0.0),
        };
        let s = scale_variable_complex(&m).unwrap();
        assert_eq!(s.alpha, c(0.0, 1.0));
        assert_eq!(s.beta, 1.0);
        assert_eq!(s.f * s.f, c(1.0, 0.0));

        let m = MonicQuadratic {
            b1: c(1.0, 1.0),
            c1: c(0.0, 2.0),
        };
        let s = scale_variable_complex(&m).unwrap();
        assert!((s.beta - 0.5).abs() <= 4.0 * U);
        assert!((s.f.norm() - 1.0).abs() <= 8.0 * U);
        // e = e_c / e_b^2 = i / i = 1.
        assert!((s.f * s.f - c(1.0, 0.0)).norm() <= 8.0 * U);
    }

    #[test]
    fn scaled_real_cases() {
        let (y1, y2) = roots_scaled_real(&ScaledFormReal {
            alpha: 1.0,
            beta: 0.75,
            e: -1,
        });
        assert_eq!((y1, y2), (c(2.0, 0.0), c(-0.5, 0.0)));
        let (y1, y2) = roots_scaled_real(&ScaledFormReal {
            alpha: 1.0,
            beta: 1.25,
            e: 1,
        });
        assert_eq!((y1, y2), (c(2.0, 0.0), c(0.5, 0.0)));
        let (y1, y2) = roots_scaled_real(&ScaledFormReal {
            alpha: 1.0,
            beta: 0.6,
            e: 1,
        });
        assert_eq!((y1, y2), (c(0.6, 0.8), c(0.6, -0.8)));
        let (y1, y2) = roots_scaled_real(&ScaledFormReal {
            alpha: 1.0,
            beta: 0.0,
            e: 1,
        });
        assert_eq!((y1, y2), (c(0.0, 1.0), c(0.0, -1.0)));
        // beta = 1 with e = +1 is the double root of case 2.
        let form = ScaledFormReal {
            alpha: 1.0,
            beta: 1.0,
            e: 1,
        };
        assert_eq!(real_case(&form), RootCase::Real2);
        assert_eq!(roots_scaled_real(&form), (c(1.0, 0.0), c(1.0, 0.0)));
    }

    #[test]
    fn scaled_complex_cases() {
        let (y1, y2) = roots_scaled_complex(&ScaledFormComplex {
            alpha: c(1.0, 0.0),
            beta: 1.0,
            f: c(1.0, 0.0),
        });
        assert_eq!((y1, y2), (c(1.0, 0.0), c(1.0, 0.0)));
        let (y1, y2) = roots_scaled_complex(&ScaledFormComplex {
            alpha: c(1.0, 0.0),
            beta: 0.0,
            f: c(1.0, 0.0),
        });
        assert_eq!((y1, y2), (c(0.0, 1.0), c(0.0, -1.0)));
    }

    #[test]
    fn unscale_examples() {
        let r = unscale_roots(c(2.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)).unwrap();
        assert_eq!((r.x1, r.x2), (c(2.0, 0.0), c(1.0, 0.0)));
        let r = unscale_roots(c(0.0, 1.0), c(0.0, -1.0), c(1.0, 0.0)).unwrap();
        assert_eq!((r.x1, r.x2), (c(-0.0, -1.0), c(-0.0, 1.0)));
        let r = unscale_roots(c(0.6, 0.8), c(0.6, -0.8), c(-1.0, 0.0)).unwrap();
        assert_eq!(r.x2, r.x1.conj());
        assert_eq!(r.x1, c(0.6, 0.8));
        let r = unscale_roots(c(2.0, 0.0), c(0.5, 0.0), c(-std::f64::consts::SQRT_2, 0.0)).unwrap();
        assert_eq!(r.x1.re, 2.0 * std::f64::consts::SQRT_2);
        assert_eq!(r.x2.re, std::f64::consts::SQRT_2 / 2.0);
        assert_eq!(
            unscale_roots(c(1e300, 0.0), c(1.0, 0.0), c(1e300, 0.0)),
            Err(Error::ScalingRange("root"))
        );
    }

    #[test]
    fn counterexample_polynomial_roots_are_rounded_exactly() {
        let beta = 2f64.powi(-27) + 2f64.powi(-54);
        let r = solve(&Quadratic::real(1.0, -2.0 * beta, -1.0)).unwrap();
        assert_eq!(r.x1.re, 1.0 + 2f64.powi(-27));
        assert_eq!(r.x2.re, -1.0 + 2f64.powi(-27));
    }

    #[test]
    fn huge_beta_does_not_overflow() {
        assert_eq!(HUGE_BETA, 2f64.powi(511));
        let close = |x: f64, want: f64| (x - want).abs() <= 4.0 * U * want.abs();
        let r = solve(&Quadratic::real(1.0, -1e200, 1.0)).unwrap();
        assert!(close(r.x1.re, 1e200) && close(r.x2.re, 1e-200));
        let r = solve(&Quadratic::real(1.0, 1e200, -1.0)).unwrap();
        assert!(close(r.x1.re, -1e200) && close(r.x2.re, 1e-200));
        let i = Complex64::new(0.0, 1.0);
        let q = Quadratic::complex(
            Complex64::new(1.0, 0.0),
            -1e200 * i,
            Complex64::new(0.0, 1.0),
        );
        let r = solve(&q).unwrap();
        // x1 + x2 = 1e200 i, x1 x2 = i.
        assert!((r.x1 - 1e200 * i).norm() <= 4.0 * U * 1e200);
        assert!((r.x2 - Complex64::new(1e-200, 0.0)).norm() <= 4.0 * U * 1e-200);
    }
}
