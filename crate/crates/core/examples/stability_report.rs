//! Measures forward, backward, mixed and norm-wise errors for the roots of
//! a polynomial whose root sum is tiny, where the element-wise backward error
//! on `b` is large although the roots are accurate.

use quadroot::scalar::UNIT_ROUNDOFF;
use quadroot::stability::DEFAULT_DELTA;
use quadroot::{assess, solve, Quadratic};

fn main() -> quadroot::Result<()> {
    let beta = 2f64.powi(-27) + 2f64.powi(-54);
    for q in [
        Quadratic::real(2.0, -7.0, 3.0),
        Quadratic::real(1.0, -2.0 * beta, -1.0),
    ] {
        let roots = solve(&q)?;
        let r = assess(&q, &roots, DEFAULT_DELTA)?;
        let in_u = |x: f64| x / UNIT_ROUNDOFF;
        println!("{q:?}");
        println!("  roots             {:e}, {:e}", roots.x1.re, roots.x2.re);
        println!(
            "  forward errors    {:.3} u, {:.3} u",
            in_u(r.fwd_err_1),
            in_u(r.fwd_err_2)
        );
        println!(
            "  backward on b, c  {:.3} u, {:.3} u",
            in_u(r.sum_backward_err),
            in_u(r.prod_backward_err)
        );
        println!(
            "  mixed residual    {:.3} u ({:?} witness)",
            in_u(r.ems_residual),
            r.ems_witness
        );
        println!("  norm-wise ratio   {:.3} u", in_u(r.nbs_ratio));
        println!(
            "  flags at 64 u     ebs={} ems={} nbs={}",
            r.ebs_pass, r.ems_pass, r.nbs_pass
        );
    }
    Ok(())
}
