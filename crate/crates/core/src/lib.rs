//! State-vector simulation of quantum circuits by focusing.
//!
//! A gate on `m` wires is run inside an `n`-wire circuit by picking the wires
//! with a [`Lens`], currying the state along it, acting on the outer index
//! and uncurrying. No Kronecker padding or wire permutation matrices are
//! built; the dense construction lives in [`oracle`] and is only used to
//! cross-check the fast path.
//!
//! ```
//! use lensfocus::{focus::focus_apply, DPState, Gate, Lens};
//!
//! let s = DPState::qubits(&[1, 0, 1]).unwrap();
//! let cnot_02 = Lens::new(3, vec![0, 2]).unwrap();
//! let out = focus_apply(&cnot_02, &Gate::cnot(), &s).unwrap();
//! assert_eq!(out, DPState::qubits(&[1, 0, 0]).unwrap());
//! ```

pub mod check;
pub mod circuits;
pub mod dpstate;
pub mod error;
pub mod fendo;
pub mod file;
pub mod focus;
pub mod gates;
pub mod lens;
pub mod oracle;

pub use circuits::{Circuit, Step};
pub use dpstate::{BlockTable, DPState, C64};
pub use error::{Error, Result};
pub use fendo::FocEndo;
pub use gates::{Builtin, Gate};
pub use lens::{Lens, LensKind, Tuple};
