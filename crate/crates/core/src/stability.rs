//! Stability measurements for computed root pairs.
//!
//! Three notions are compared, all relative to the coefficients of
//! `a x^2 + b x + c` with `a` left unperturbed:
//!
//! * element-wise backward stability: the computed roots are exact roots of
//!   `a x^2 + b' x + c'` with `|b - b'| <= d |b|` and `|c - c'| <= d |c|`;
//! * element-wise mixed stability: some such `b', c'` have exact roots within
//!   `d` relative of the computed ones;
//! * norm-wise backward stability: `||[0, b - b', c - c']|| <= d ||[a, b', c']||`.
//!
//! Backward figures come from recomposing `b' = -a (x1 + x2)` and
//! `c' = a x1 x2` exactly. Mixed stability needs a witness polynomial; two are
//! tried and the better one is kept (see [`EmsWitness`]).

use num_complex::Complex64;

use crate::oracle::{
    oracle_roots, oracle_roots_extended, recompose, rel_error, relative_gap, vector_norm,
    ExtendedComplex, ExtendedScalar, DEFAULT_PRECISION_BITS,
};
use crate::scalar::{ulp_neighbors, UNIT_ROUNDOFF};
use crate::solver::{Kind, Quadratic, RootPair};
use crate::{Error, Result};

/// Default threshold for the stability flags, `64 u`.
pub const DEFAULT_DELTA: f64 = 64.0 * UNIT_ROUNDOFF;

/// Constant relating mixed stability to norm-wise backward stability.
pub const NBS_FACTOR: f64 = 3.0;

/// Polynomial whose exact roots certify mixed stability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmsWitness {
    /// The input polynomial itself; the root residual is the forward error.
    Original,
    /// The polynomial recomposed from the computed roots; the coefficient
    /// residual is the backward error.
    Recomposed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    /// Forward error of `x1` against the matched exact root.
    pub fwd_err_1: f64,
    pub fwd_err_2: f64,
    /// `|b' - b| / |b|`.
    pub sum_backward_err: f64,
    /// `|c' - c| / |c|`.
    pub prod_backward_err: f64,
    /// `||[0, b - b', c - c']|| / ||[a, b', c']||`.
    pub nbs_ratio: f64,
    /// Smallest `d` for which the witness certifies mixed stability.
    pub ems_residual: f64,
    pub ems_witness: EmsWitness,
    /// `||[0, b - b', c - c']||` over the norm of the witness coefficients.
    pub witness_norm_ratio: f64,
    pub delta: f64,
    pub ebs_pass: bool,
    pub ems_pass: bool,
    pub nbs_pass: bool,
}

/// Pairing of computed roots with reference roots.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootMatch {
    /// Relative errors of `x1` and `x2` under the chosen pairing.
    pub errors: [f64; 2],
    /// `x1` was paired with the second reference root.
    pub crossed: bool,
}

impl RootMatch {
    pub fn max_error(&self) -> f64 {
        self.errors[0].max(self.errors[1])
    }
}

/// Chooses the assignment of computed to reference roots with the smaller
/// worst-case relative error. Ties keep the straight pairing.
pub fn root_pairing(
    computed: &RootPair,
    reference: &(ExtendedComplex, ExtendedComplex),
) -> Result<RootMatch> {
    let err = |x: Complex64, r: &ExtendedComplex| match rel_error(x, r) {
        Err(Error::InfiniteRelativeError) => Ok(f64::INFINITY),
        other => other,
    };
    let straight = [
        err(computed.x1, &reference.0)?,
        err(computed.x2, &reference.1)?,
    ];
    let crossed = [
        err(computed.x1, &reference.1)?,
        err(computed.x2, &reference.0)?,
    ];
    let worst = |e: &[f64; 2]| e[0].max(e[1]);
    let m = if worst(&crossed) < worst(&straight) {
        RootMatch {
            errors: crossed,
            crossed: true,
        }
    } else {
        RootMatch {
            errors: straight,
            crossed: false,
        }
    };
    if m.max_error().is_infinite() {
        return Err(Error::InfiniteRelativeError);
    }
    Ok(m)
}

pub fn assess(q: &Quadratic, roots: &RootPair, delta: f64) -> Result<StabilityReport> {
    let bits = DEFAULT_PRECISION_BITS;
    let exact_roots = oracle_roots(q, bits)?;
    let forward = root_pairing(roots, &exact_roots)?;

    let a = ExtendedComplex::exact(q.a);
    let b = ExtendedComplex::exact(q.b);
    let c = ExtendedComplex::exact(q.c);
    let (b_hat, c_hat) = recompose(roots.x1, roots.x2, q.a);
    let sum_backward_err = relative_gap(&b_hat, &b)?;
    let prod_backward_err = relative_gap(&c_hat, &c)?;

    let residual_norm = vector_norm(&[&(&b - &b_hat), &(&c - &c_hat)]);
    let recomposed_norm = vector_norm(&[&a, &b_hat, &c_hat]);
    let nbs_ratio = ratio(&residual_norm, &recomposed_norm);

    // Witness 1: the input polynomial, root residual = forward error.
    let original = forward.max_error();
    // Witness 2: the recomposed polynomial, solved again by the oracle.
    let real = q.kind() == Kind::Real && b_hat.is_real() && c_hat.is_real();
    let recomposed_roots = oracle_roots_extended(&a, &b_hat, &c_hat, real, bits);
    let recomposed = root_pairing(roots, &recomposed_roots)?
        .max_error()
        .max(sum_backward_err)
        .max(prod_backward_err);

    let (ems_residual, ems_witness, witness_norm) = if original <= recomposed {
        (original, EmsWitness::Original, vector_norm(&[&a, &b, &c]))
    } else {
        (recomposed, EmsWitness::Recomposed, recomposed_norm)
    };
    let witness_norm_ratio = ratio(&residual_norm, &witness_norm);

    Ok(StabilityReport {
        fwd_err_1: forward.errors[0],
        fwd_err_2: forward.errors[1],
        sum_backward_err,
        prod_backward_err,
        nbs_ratio,
        ems_residual,
        ems_witness,
        witness_norm_ratio,
        delta,
        ebs_pass: sum_backward_err <= delta && prod_backward_err <= delta,
        ems_pass: ems_residual <= delta,
        nbs_pass: nbs_ratio <= NBS_FACTOR * delta,
    })
}

fn ratio(num: &ExtendedScalar, den: &ExtendedScalar) -> f64 {
    if num.is_zero() {
        0.0
    } else {
        (num / den).to_f64()
    }
}

/// Whether the norm-wise bound with constant 3 holds for a polynomial whose
/// mixed-stability residuals are at most `delta`.
pub fn check_nbs_bound(report: &StabilityReport, delta: f64) -> bool {
    report.witness_norm_ratio <= NBS_FACTOR * delta
}

/// `(|a| + |b|)^2 + (ab)^2 <= 2c^2 + (a + b)^2 + (1 + 2/c^2)(ab)^2` for
/// `c_sq = c^2 > 0`, decided exactly.
pub fn lemma4_inequality(a: f64, b: f64, c_sq: f64) -> Result<bool> {
    if c_sq <= 0.0 {
        return Err(Error::InvalidArgument("c^2 must be positive".into()));
    }
    let (a, b, c2) = (exact(a, "a")?, exact(b, "b")?, exact(c_sq, "c^2")?);
    let ab2 = (&a * &b).square();
    // Both sides multiplied by c^2 so that no division is needed.
    let lhs = &c2 * &(&(&a.abs() + &b.abs()).square() + &ab2);
    let rhs = &(&c2.square() + &c2.square())
        + &(&(&c2 * &(&a + &b).square()) + &(&(&c2 + &ExtendedScalar::exact(2.0)) * &ab2));
    Ok(lhs <= rhs)
}

/// `||[0, |a| + |b|, |ab|]||^2 <= 3 ||[1, a + b, ab]||^2`, decided exactly.
pub fn lemma4_norm_form(a: f64, b: f64) -> Result<bool> {
    let (a, b) = (exact(a, "a")?, exact(b, "b")?);
    let ab2 = (&a * &b).square();
    let lhs = &(&a.abs() + &b.abs()).square() + &ab2;
    let inner = &(&ExtendedScalar::exact(1.0) + &(&a + &b).square()) + &ab2;
    let rhs = &ExtendedScalar::exact(3.0) * &inner;
    Ok(lhs <= rhs)
}

fn exact(x: f64, name: &'static str) -> Result<ExtendedScalar> {
    if x.is_finite() {
        Ok(ExtendedScalar::exact(x))
    } else {
        Err(Error::NonFinite(name))
    }
}

/// Outcome of the ulp-grid search around the correctly rounded roots of
/// `y^2 - 2 beta y - 1` with `beta = 2^-t + 2^-2t`.
#[derive(Debug, Clone, PartialEq)]
pub struct CounterexampleResult {
    pub t: u32,
    pub beta: f64,
    /// `1 + 2^-t` and `-1 + 2^-t`, the correctly rounded roots.
    pub rounded_roots: (f64, f64),
    /// Sum error of the rounded roots themselves.
    pub rounded_sum_err: f64,
    pub search_radius: u32,
    /// Smallest `|y1 + y2 - 2 beta| / (2 beta)` over the grid.
    pub min_sum_err: f64,
    /// Ulp offsets of the pair attaining `min_sum_err`.
    pub argmin_offsets: (i64, i64),
    /// Smallest `|y1 y2 + 1|` over the grid.
    pub min_prod_err: f64,
    /// Smallest `max(sum error, product error)` over the grid, i.e. the best
    /// element-wise backward error any candidate pair achieves.
    pub min_ebs_residual: f64,
    pub ebs_argmin_offsets: (i64, i64),
}

/// Tries every pair of representable numbers within `radius` ulps of the
/// rounded roots and records the best backward errors on the root sum and
/// product. Requires `2^-2t <= u/2`, i.e. `t >= 27`, and `t <= 52` so that
/// `1 + 2^-t` is representable.
pub fn ebs_impossibility_search(t: u32, radius: u32) -> Result<CounterexampleResult> {
    if !(27..=52).contains(&t) {
        return Err(Error::InvalidExponent(t));
    }
    let small = 2f64.powi(-(t as i32));
    let beta = small + small * small;
    debug_assert_eq!(beta - small, small * small);
    let rounded_roots = (1.0 + small, -1.0 + small);

    let two_beta = real(2.0 * beta);
    let minus_one = real(-1.0);
    let r = i64::from(radius);

    let mut best_sum = (f64::INFINITY, (0, 0));
    let mut best_ebs = (f64::INFINITY, (0, 0));
    let mut min_prod_err = f64::INFINITY;
    let mut rounded_sum_err = f64::NAN;
    for i in -r..=r {
        let y1 = ulp_neighbors(rounded_roots.0, i)?;
        for j in -r..=r {
            let y2 = ulp_neighbors(rounded_roots.1, j)?;
            let (e1, e2) = (real(y1), real(y2));
            let sum_err = relative_gap(&(&e1 + &e2), &two_beta)?;
            let prod_err = relative_gap(&(&e1 * &e2), &minus_one)?;
            if (i, j) == (0, 0) {
                rounded_sum_err = sum_err;
            }
            if sum_err < best_sum.0 {
                best_sum = (sum_err, (i, j));
            }
            let ebs = sum_err.max(prod_err);
            if ebs < best_ebs.0 {
                best_ebs = (ebs, (i, j));
            }
            min_prod_err = min_prod_err.min(prod_err);
        }
    }

    Ok(CounterexampleResult {
        t,
        beta,
        rounded_roots,
        rounded_sum_err,
        search_radius: radius,
        min_sum_err: best_sum.0,
        argmin_offsets: best_sum.1,
        min_prod_err,
        min_ebs_residual: best_ebs.0,
        ebs_argmin_offsets: best_ebs.1,
    })
}

fn real(x: f64) -> ExtendedComplex {
    ExtendedComplex::exact(Complex64::new(x, 0.0))
}
