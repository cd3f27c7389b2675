//! Circuits as ordered lists of focused gate applications, plus the
//! standard example circuits from error correction and state preparation.
//!
//! Steps run left to right. Nested circuits are flattened when embedded:
//! focusing a step `(ℓ', g)` of an inner circuit along `ℓ` gives the step
//! `(ℓ ∘ ℓ', g)` of the outer one.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use crate::dpstate::{DPState, C64};
use crate::error::{Error, Result};
use crate::fendo::{Endo, Focused};
use crate::focus::{curry, focus_apply_in_place, focus_apply_parallel_in_place};
use crate::gates::{Builtin, Gate};
use crate::lens::{Lens, Tuple};
use crate::oracle::DEFAULT_MAX_WIRES;

/// One gate application: the named gate acts on the wires of `lens`.
#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub lens: Lens,
    pub gate: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n: usize,
    q: usize,
    custom: BTreeMap<String, Gate>,
    steps: Vec<Step>,
}

impl Circuit {
    pub fn new(n: usize, q: usize) -> Self {
        Circuit {
            n,
            q,
            custom: BTreeMap::new(),
            steps: Vec::new(),
        }
    }

    /// Qubit circuit on `n` wires.
    pub fn qubits(n: usize) -> Self {
        Circuit::new(n, 2)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn custom_gates(&self) -> &BTreeMap<String, Gate> {
        &self.custom
    }

    /// Registers a user gate. Custom names shadow builtin ones.
    pub fn define_gate(&mut self, name: &str, gate: Gate) -> Result<()> {
        if !gate.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "gate `{name}` maps {} wires to {}",
                gate.m(),
                gate.n()
            )));
        }
        if gate.q() != self.q {
            return Err(Error::ShapeMismatch(format!(
                "gate `{name}` is over {} symbols, circuit over {}",
                gate.q(),
                self.q
            )));
        }
        self.custom.insert(name.to_string(), gate);
        Ok(())
    }

    /// Looks up a gate by name; `identity`/`null` take their arity from
    /// `arity` unless spelled `identity(k)`.
    pub fn resolve(&self, name: &str, arity: usize) -> Result<Gate> {
        match self.custom.get(name) {
            Some(g) => Ok(g.clone()),
            None => Gate::builtin(Builtin::parse(name, Some(arity))?, self.q),
        }
    }

    pub fn push(&mut self, lens: Lens, gate: &str) -> Result<&mut Self> {
        if lens.n() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                found: lens.n(),
            });
        }
        let g = self.resolve(gate, lens.m())?;
        if g.m() != lens.m() {
            return Err(Error::ArityMismatch {
                expected: g.m(),
                found: lens.m(),
            });
        }
        self.steps.push(Step {
            lens,
            gate: gate.to_string(),
        });
        Ok(self)
    }

    /// `push` with the lens given as an index list.
    pub fn add(&mut self, gate: &str, idx: &[usize]) -> Result<&mut Self> {
        self.push(Lens::new(self.n, idx.to_vec())?, gate)
    }

    /// Appends every step of `inner`, focused along `lens`.
    pub fn append_focused(&mut self, lens: &Lens, inner: &Circuit) -> Result<&mut Self> {
        if lens.n() != self.n || lens.m() != inner.n || inner.q != self.q {
            return Err(Error::ShapeMismatch(format!(
                "cannot focus a {}-wire circuit along {lens} in a {}-wire circuit",
                inner.n, self.n
            )));
        }
        for (name, g) in &inner.custom {
            match self.custom.get(name) {
                Some(existing) if existing != g => {
                    return Err(Error::ShapeMismatch(format!(
                        "custom gate `{name}` defined twice with different matrices"
                    )))
                }
                _ => {
                    self.custom.insert(name.clone(), g.clone());
                }
            }
        }
        for step in &inner.steps {
            let composed = lens.compose(&step.lens)?;
            self.steps.push(Step {
                lens: composed,
                gate: step.gate.clone(),
            });
        }
        Ok(self)
    }

    /// Appends all of `next`'s steps (run after the current ones).
    pub fn then(mut self, next: &Circuit) -> Result<Self> {
        self.append_focused(&Lens::identity(self.n), next)?;
        Ok(self)
    }

    /// `focus(lens, self)` as a circuit on `n` wires.
    pub fn focused(&self, lens: &Lens) -> Result<Circuit> {
        let mut out = Circuit::new(lens.n(), self.q);
        out.append_focused(lens, self)?;
        Ok(out)
    }

    /// Resolved steps as lens/gate pairs.
    pub fn instructions(&self) -> Result<Vec<Focused>> {
        self.steps
            .iter()
            .map(|s| {
                Ok(Focused::new(
                    s.lens.clone(),
                    self.resolve(&s.gate, s.lens.m())?,
                ))
            })
            .collect()
    }

    fn check_state(&self, s: &DPState) -> Result<()> {
        if s.n() != self.n || s.q() != self.q {
            return Err(Error::ShapeMismatch(format!(
                "{}-wire circuit (q = {}) on a {}-wire state (q = {})",
                self.n,
                self.q,
                s.n(),
                s.q()
            )));
        }
        Ok(())
    }

    /// Runs every step in order.
    pub fn run(&self, s: &DPState) -> Result<DPState> {
        self.check_state(s)?;
        let mut out = s.clone();
        for f in self.instructions()? {
            focus_apply_in_place(&f.lens, &f.gate, &mut out)?;
        }
        Ok(out)
    }

    pub fn run_parallel(&self, s: &DPState) -> Result<DPState> {
        self.check_state(s)?;
        let mut out = s.clone();
        for f in self.instructions()? {
            focus_apply_parallel_in_place(&f.lens, &f.gate, &mut out)?;
        }
        Ok(out)
    }

    /// The whole circuit as one dense gate, refused beyond the oracle guard.
    pub fn to_gate(&self) -> Result<Gate> {
        let dense_ok = crate::dpstate::table_len(self.n, self.q)
            .is_some_and(|d| d <= 1usize << DEFAULT_MAX_WIRES);
        if !dense_ok {
            return Err(Error::SizeGuardExceeded {
                wires: self.n,
                limit: DEFAULT_MAX_WIRES,
            });
        }
        Gate::from_columns(self.n, self.n, self.q, |v| {
            self.run(&DPState::ket(v, self.q)?)
        })
    }
}

impl Endo for Circuit {
    fn wires(&self) -> usize {
        self.n
    }

    fn apply(&self, s: &DPState) -> Result<DPState> {
        self.run(s)
    }
}

fn build(n: usize, steps: &[(&str, &[usize])]) -> Circuit {
    let mut c = Circuit::qubits(n);
    for (gate, idx) in steps {
        c.add(gate, idx).expect("example circuit is well formed");
    }
    c
}

fn lens(n: usize, idx: &[usize]) -> Lens {
    Lens::new(n, idx.to_vec()).expect("example lens is well formed")
}

/// `|i, j, k⟩ ↦ |i, i⊕j, i⊕k⟩`.
pub fn bit_flip_enc() -> Circuit {
    build(3, &[("cnot", &[0, 1]), ("cnot", &[0, 2])])
}

/// The encoder followed by a Toffoli with controls on wires 1, 2 and target 0.
pub fn bit_flip_dec() -> Circuit {
    bit_flip_enc()
        .then(&build(3, &[("toffoli", &[1, 2, 0])]))
        .unwrap()
}

/// Hadamard on each of three wires.
pub fn hadamard3() -> Circuit {
    build(
        3,
        &[("hadamard", &[0]), ("hadamard", &[1]), ("hadamard", &[2])],
    )
}

pub fn sign_flip_enc() -> Circuit {
    bit_flip_enc().then(&hadamard3()).unwrap()
}

pub fn sign_flip_dec() -> Circuit {
    hadamard3().then(&bit_flip_dec()).unwrap()
}

const TRIPLES: [[usize; 3]; 3] = [[0, 1, 2], [3, 4, 5], [6, 7, 8]];
const HEADS: [usize; 3] = [0, 3, 6];

/// Sign-flip encoding across wires 0, 3, 6, then a bit-flip encoder on each
/// block of three.
pub fn shor_enc() -> Circuit {
    let mut c = Circuit::qubits(9);
    c.append_focused(&lens(9, &HEADS), &sign_flip_enc())
        .unwrap();
    for t in TRIPLES.iter().rev() {
        c.append_focused(&lens(9, t), &bit_flip_enc()).unwrap();
    }
    c
}

/// Bit-flip decoders on the three blocks, then sign-flip decoding across
/// wires 0, 3, 6.
pub fn shor_dec() -> Circuit {
    let mut c = Circuit::qubits(9);
    for t in &TRIPLES {
        c.append_focused(&lens(9, t), &bit_flip_dec()).unwrap();
    }
    c.append_focused(&lens(9, &HEADS), &sign_flip_dec())
        .unwrap();
    c
}

/// Encoder followed by decoder.
pub fn shor_code() -> Circuit {
    shor_enc().then(&shor_dec()).unwrap()
}

/// All named pieces of the Shor code.
pub fn shor_components() -> Vec<(&'static str, Circuit)> {
    vec![
        ("bit_flip_enc", bit_flip_enc()),
        ("bit_flip_dec", bit_flip_dec()),
        ("hadamard3", hadamard3()),
        ("sign_flip_enc", sign_flip_enc()),
        ("sign_flip_dec", sign_flip_dec()),
        ("shor_enc", shor_enc()),
        ("shor_dec", shor_dec()),
    ]
}

/// GHZ preparation on `depth + 1` wires: a Hadamard on wire 0, then a CNOT
/// chain `(0,1), (1,2), …`. Built recursively: the circuit for `depth`
/// runs on the first `depth + 1` wires of the next one.
pub fn ghz(depth: usize) -> Circuit {
    if depth == 0 {
        return build(1, &[("hadamard", &[0])]);
    }
    let m = depth - 1;
    let n = depth + 1;
    let head = Lens::single(n, m + 1).unwrap().complement();
    let mut c = ghz(m).focused(&head).unwrap();
    c.push(Lens::pair(n, m, m + 1).unwrap(), "cnot").unwrap();
    c
}

/// `(|0…0⟩ + |1…1⟩)/√2` on `n` wires.
pub fn ghz_state(n: usize) -> Result<DPState> {
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    let zeros = DPState::ket(&Tuple::zeros(n), 2)?;
    let ones = DPState::ket(&Tuple::new(vec![1; n]), 2)?;
    zeros.scaled(h).add_scaled(h, &ones)
}

/// Swap gates on wire pairs `(i, n−1−i)` for `i < n/2`.
pub fn rev_family(n: usize) -> Vec<Focused> {
    (0..n / 2)
        .map(|i| Focused::new(Lens::pair(n, i, n - 1 - i).unwrap(), Gate::swap()))
        .collect()
}

pub fn rev_circuit(n: usize) -> Circuit {
    let mut c = Circuit::qubits(n);
    for i in 0..n / 2 {
        c.push(Lens::pair(n, i, n - 1 - i).unwrap(), "swap")
            .unwrap();
    }
    c
}

/// Marginal along a lens: for each tuple `v` on the lens wires, the ℓ₂ norm
/// of the curried block at `v`. Independent of how the complement is ordered.
pub fn proj(lens: &Lens, s: &DPState) -> Result<Vec<f64>> {
    let view = curry(lens, s)?;
    let table = view.table();
    Ok((0..table.block_count())
        .map(|pos| {
            table
                .block_at(pos)
                .iter()
                .map(|a| a.norm_sqr())
                .sum::<f64>()
                .sqrt()
        })
        .collect())
}

/// Names accepted by [`named_example`].
pub const EXAMPLE_NAMES: [&str; 3] = ["shor", "ghz", "reverse"];

/// Looks up an example circuit by name. `size` is the GHZ recursion depth
/// (default 4, giving 5 wires) or the reversal width (default 5); the Shor
/// code ignores it.
pub fn named_example(name: &str, size: Option<usize>) -> Result<Circuit> {
    match name {
        "shor" => Ok(shor_code()),
        "ghz" => Ok(ghz(size.unwrap_or(4))),
        "reverse" => Ok(rev_circuit(size.unwrap_or(5))),
        other => Err(Error::UnknownExample(other.to_string())),
    }
}
