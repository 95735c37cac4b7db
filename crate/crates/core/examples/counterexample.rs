//! Searches the ulp grid around the rounded roots of `y^2 - 2 beta y - 1`
//! for a pair with small element-wise backward error.
//!
//! Usage: cargo run --example counterexample -- [t] [radius]

use quadroot::scalar::UNIT_ROUNDOFF;
use quadroot::stability::ebs_impossibility_search;

fn main() -> quadroot::Result<()> {
    let mut args = std::env::args().skip(1);
    let t = args
        .next()
        .map_or(28, |s| s.parse().expect("t must be an integer"));
    let radius = args
        .next()
        .map_or(100, |s| s.parse().expect("radius must be an integer"));

    let r = ebs_impossibility_search(t, radius)?;
    println!("beta = 2^-{t} + 2^-{} = {:e}", 2 * t, r.beta);
    println!(
        "rounded roots: {:e}, {:e}",
        r.rounded_roots.0, r.rounded_roots.1
    );
    println!("grid: {0}x{0} pairs", 2 * radius + 1);
    println!(
        "min sum error   {:e} ({:.3e} u) at offsets {:?}",
        r.min_sum_err,
        r.min_sum_err / UNIT_ROUNDOFF,
        r.argmin_offsets
    );
    println!("min prod error  {:e}", r.min_prod_err);
    println!(
        "best max(sum, prod) {:e} ({:.3e} u) at offsets {:?}",
        r.min_ebs_residual,
        r.min_ebs_residual / UNIT_ROUNDOFF,
        r.ebs_argmin_offsets
    );
    Ok(())
}
