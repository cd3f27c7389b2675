//! Wire reversal by swaps, checked on basis states and through marginals.

use lensfocus::circuits::{proj, rev_circuit};
use lensfocus::{DPState, Lens, Tuple};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> lensfocus::Result<()> {
    let n = 6;
    let c = rev_circuit(n);
    let v = Tuple::parse_digits("110100", 2)?;
    let out = c.run(&DPState::ket(&v, 2)?)?;
    print!("{v} -> {}", out.to_text(0.0));

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let s = DPState::random(n, 2, &mut rng)?;
    let r = c.run(&s)?;
    println!("\nwire  marginal before   marginal after (mirrored wire)");
    for i in 0..n {
        let before = proj(&Lens::single(n, i)?, &s)?;
        let after = proj(&Lens::single(n, n - 1 - i)?, &r)?;
        println!(
            "{i:>4}  [{:.4}, {:.4}]  [{:.4}, {:.4}]",
            before[0], before[1], after[0], after[1]
        );
    }
    Ok(())
}
