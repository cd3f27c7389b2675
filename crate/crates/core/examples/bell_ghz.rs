//! Bell and GHZ state preparation.
//!
//! ```text
//! cargo run --example bell_ghz -- 6
//! ```

use lensfocus::circuits::{ghz, ghz_state};
use lensfocus::{Circuit, DPState, Tuple};

fn main() -> lensfocus::Result<()> {
    let wires: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(5);

    let mut bell = Circuit::qubits(2);
    bell.add("h", &[0])?.add("cnot", &[0, 1])?;
    let out = bell.run(&DPState::qubits(&[0, 0])?)?;
    println!("bell:\n{}", out.to_text(0.0));

    let circuit = ghz(wires - 1);
    println!("ghz on {wires} wires, {} steps:", circuit.steps().len());
    for step in circuit.steps() {
        println!("  {:<9} {}", step.gate, step.lens);
    }
    let out = circuit.run(&DPState::ket(&Tuple::zeros(wires), 2)?)?;
    print!("{}", out.to_text(1e-12));
    let dev = out.max_abs_diff(&ghz_state(wires)?)?;
    println!("deviation from closed form: {dev:.1e}");
    Ok(())
}
