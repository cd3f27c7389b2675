//! Differential test of the focused path against the dense
//! padded-and-permuted matrix.

use lensfocus::check::random_lens;
use lensfocus::focus::focus_apply;
use lensfocus::oracle::{build_full_matrix, DEFAULT_MAX_WIRES};
use lensfocus::{DPState, Gate};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> lensfocus::Result<()> {
    let seed = 2024;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for trial in 0..10 {
        let n = rng.gen_range(2..=8);
        let m = rng.gen_range(1..=3.min(n));
        let lens = random_lens(n, m, &mut rng);
        let gate = Gate::random_unitary(m, 2, &mut rng);
        let dense = build_full_matrix(&lens, &gate)?;
        let s = DPState::random(n, 2, &mut rng)?;
        let d = dense
            .apply(&s)?
            .max_abs_diff(&focus_apply(&lens, &gate, &s)?)?;
        worst = worst.max(d);
        println!("trial {trial}: n={n} lens={lens:<10} deviation {d:.2e}");
    }
    println!("seed {seed}, worst {worst:.2e}");

    let too_big = random_lens(DEFAULT_MAX_WIRES + 1, 1, &mut rng);
    if let Err(e) = build_full_matrix(&too_big, &Gate::hadamard()) {
        println!("{e}");
    }
    Ok(())
}
