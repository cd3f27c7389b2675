//! Nine-qubit Shor code: encode a logical qubit, inspect the code word, decode.

use std::f64::consts::FRAC_1_SQRT_2;

use lensfocus::circuits::{shor_components, shor_dec, shor_enc};
use lensfocus::{DPState, C64};

fn main() -> lensfocus::Result<()> {
    for (name, c) in shor_components() {
        println!("{name:<14} {} wires, {:>2} steps", c.n(), c.steps().len());
    }

    // α|0⟩ + β|1⟩ on the first wire, ancillas in |0⟩.
    let (alpha, beta) = (C64::new(0.6, 0.0), C64::new(0.0, 0.8));
    let mut zero = [0; 9];
    let input = DPState::qubits(&zero)?.scaled(alpha);
    zero[0] = 1;
    let input = input.add_scaled(beta, &DPState::qubits(&zero)?)?;

    let encoded = shor_enc().run(&input)?;
    let support = encoded.amps().iter().filter(|a| a.norm() > 1e-12).count();
    println!(
        "\ncode word has {support} nonzero amplitudes out of {}",
        encoded.len()
    );
    let expected = (alpha + beta) * FRAC_1_SQRT_2.powi(3);
    println!(
        "|000000000⟩ amplitude {:.6} (expected {:.6})",
        encoded.amps()[0],
        expected
    );

    let decoded = shor_dec().run(&encoded)?;
    println!("\ndecoded:\n{}", decoded.to_text(1e-12));
    println!("round-trip deviation {:.1e}", decoded.max_abs_diff(&input)?);
    Ok(())
}
