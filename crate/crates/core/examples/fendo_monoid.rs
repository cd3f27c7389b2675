//! Parallel composition of focused endomorphisms.

use lensfocus::fendo::{compn_fendo, compn_mor, Endo};
use lensfocus::{DPState, FocEndo, Gate, Lens};

fn main() -> lensfocus::Result<()> {
    let n = 4;
    let h1 = FocEndo::new(&Lens::single(n, 1)?, &Gate::hadamard())?;
    let cx = FocEndo::new(&Lens::new(n, vec![3, 0])?, &Gate::cnot())?;
    let both = h1.compose(&cx)?;
    println!(
        "H on 1 with CNOT on [3,0]: support {}, {}x{} gate",
        both.lens(),
        both.gate().rows(),
        both.gate().cols()
    );
    println!("commutes: {}", both.approx_eq(&cx.compose(&h1)?, 1e-12));

    let clash = FocEndo::new(&Lens::pair(n, 1, 2)?, &Gate::swap())?;
    println!(
        "overlapping supports give err: {}",
        h1.compose(&clash)?.is_err()
    );

    let family: Vec<FocEndo> = (0..n)
        .map(|i| FocEndo::new(&Lens::single(n, i).unwrap(), &Gate::hadamard()).unwrap())
        .collect();
    let even = |i: usize| i.is_multiple_of(2);
    let par = compn_fendo(n, 2, &family, even)?;
    let seq = compn_mor(n, &family, even)?;
    let s = DPState::qubits(&[0, 1, 1, 0])?;
    let (a, b) = (par.apply(&s)?, seq.apply(&s)?);
    println!(
        "\nH on even wires, folded in parallel:\n{}",
        a.to_text(1e-12)
    );
    println!("sequential fold agrees within {:.1e}", a.max_abs_diff(&b)?);
    Ok(())
}
