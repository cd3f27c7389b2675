//! Circuit files with user-defined gates, here on qutrits.

use lensfocus::file::{emit_circuit, parse_circuit_str};
use lensfocus::{DPState, Tuple};

const SHIFT_CIRCUIT: &str = r#"{
  "qudit_dim": 3,
  "wires": 3,
  "gates": [
    {"name": "shift", "wires": 1,
     "matrix": [[0,0],[1,0],[0,0], [0,0],[0,0],[1,0], [1,0],[0,0],[0,0]]}
  ],
  "ops": [
    {"gate": "shift", "lens": [0]},
    {"gate": "shift", "lens": [2]},
    {"gate": "shift", "lens": [2]}
  ]
}"#;

fn main() -> lensfocus::Result<()> {
    let c = parse_circuit_str(SHIFT_CIRCUIT)?;
    for digits in ["000", "120", "222"] {
        let v = Tuple::parse_digits(digits, 3)?;
        print!("{digits} -> {}", c.run(&DPState::ket(&v, 3)?)?.to_text(0.0));
    }
    println!(
        "\nunitarity deviation {:.1e}",
        c.to_gate()?.unitarity_deviation()?
    );
    println!("\n{}", emit_circuit(&c));

    let bad = r#"{"wires": 2, "ops": [{"gate": "toffoli", "lens": [0, 1]}]}"#;
    println!("\n{}", parse_circuit_str(bad).unwrap_err());
    Ok(())
}
