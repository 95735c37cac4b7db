//! Checks the norm inequality `(|a|+|b|)^2 + (ab)^2 <= 3 (1 + (a+b)^2 + (ab)^2)`
//! and its general form with parameter `c^2` on random values spanning 300
//! decades, with exact evaluation.

use quadroot::stability::{lemma4_inequality, lemma4_norm_form};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> quadroot::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .map_or(100_000, |s| s.parse().expect("count"));
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let draw = |rng: &mut ChaCha8Rng| {
        let x = 10f64.powf(rng.random_range(-150.0..150.0));
        if rng.random::<bool>() {
            -x
        } else {
            x
        }
    };
    let mut violations = 0;
    for _ in 0..n {
        let (a, b, c) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
        if !lemma4_norm_form(a, b)? || !lemma4_inequality(a, b, c.abs())? {
            violations += 1;
            println!("violation at a={a:e} b={b:e} c={c:e}");
        }
    }
    println!("{n} random triples, {violations} violations");
    Ok(())
}
