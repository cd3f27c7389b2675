//! Focusing a two-wire gate inside a large register, single- and
//! multi-threaded.
//!
//! ```text
//! cargo run --release --example focus_large -- 22
//! ```

use std::time::Instant;

use lensfocus::focus::{focus_apply_in_place, focus_apply_parallel_in_place};
use lensfocus::{DPState, Gate, Lens};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> lensfocus::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(20);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let gate = Gate::random_unitary(2, 2, &mut rng);
    let lens = Lens::new(n, vec![n - 1, 3])?;
    let mut s = DPState::random(n, 2, &mut rng)?;
    println!("{n} wires, {} amplitudes, gate on {lens}", s.len());

    let t = Instant::now();
    focus_apply_in_place(&lens, &gate, &mut s)?;
    println!("single-threaded: {:?}", t.elapsed());

    let t = Instant::now();
    focus_apply_parallel_in_place(&lens, &gate.adjoint(), &mut s)?;
    println!("parallel:        {:?}", t.elapsed());

    println!("norm after G then G†: {:.15}", s.norm());
    Ok(())
}
