//! Gates as dense matrices.
//!
//! A gate from `m` wires to `n` wires is a linear map that commutes with
//! every blockwise map on its coefficients; such maps are exactly the
//! ones given by a single `q^n × q^m` matrix acting on the outer index. The
//! matrix is therefore the whole representation, and the commuting property
//! becomes something to test (see [`Gate::apply_module`]).

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::dpstate::{table_len, BlockTable, DPState, C64};
use crate::error::{Error, Result};
use crate::lens::Tuple;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// A morphism from `m`-wire states to `n`-wire states.
///
/// `mat` is row-major with `q^n` rows and `q^m` columns; column `j` is the
/// image of the basis ket whose tuple has position `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    m: usize,
    n: usize,
    q: usize,
    mat: Vec<C64>,
}

impl Gate {
    /// Builds a gate from a row-major matrix.
    pub fn from_matrix(m: usize, n: usize, q: usize, mat: Vec<C64>) -> Result<Self> {
        let (rows, cols) = match (table_len(n, q), table_len(m, q)) {
            (Some(r), Some(c)) if q > 0 => (r, c),
            _ => return Err(Error::ShapeMismatch("gate dimensions overflow".into())),
        };
        if rows.checked_mul(cols) != Some(mat.len()) {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                mat.len()
            )));
        }
        Ok(Gate { m, n, q, mat })
    }

    /// Builds a gate from entries listed column after column.
    pub fn from_column_major(m: usize, n: usize, q: usize, entries: &[C64]) -> Result<Self> {
        let rows = table_len(n, q).unwrap_or(0);
        let cols = table_len(m, q).unwrap_or(0);
        if rows * cols != entries.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let mut mat = vec![ZERO; entries.len()];
        for c in 0..cols {
            for r in 0..rows {
                mat[r * cols + c] = entries[c * rows + r];
            }
        }
        Gate::from_matrix(m, n, q, mat)
    }

    /// Builds a gate by giving the image of every basis ket.
    pub fn from_columns<F>(m: usize, n: usize, q: usize, mut image: F) -> Result<Self>
    where
        F: FnMut(&Tuple) -> Result<DPState>,
    {
        let rows = table_len(n, q).ok_or_else(|| Error::ShapeMismatch("too large".into()))?;
        let cols = table_len(m, q).ok_or_else(|| Error::ShapeMismatch("too large".into()))?;
        let mut mat = vec![ZERO; rows * cols];
        for (c, v) in Tuple::all(m, q).enumerate() {
            let col = image(&v)?;
            if col.n() != n || col.q() != q {
                return Err(Error::ShapeMismatch(format!(
                    "column image has {} wires, expected {n}",
                    col.n()
                )));
            }
            for (r, a) in col.amps().iter().enumerate() {
                mat[r * cols + c] = *a;
            }
        }
        Gate::from_matrix(m, n, q, mat)
    }

    /// Classical gate sending `|v⟩` to `|f(v)⟩`.
    pub fn permutation<F>(k: usize, q: usize, f: F) -> Result<Self>
    where
        F: Fn(&Tuple) -> Tuple,
    {
        Gate::from_columns(k, k, q, |v| DPState::ket(&f(v), q))
    }

    pub fn identity(k: usize, q: usize) -> Self {
        let dim = table_len(k, q).expect("identity gate too large");
        let mut mat = vec![ZERO; dim * dim];
        for i in 0..dim {
            mat[i * dim + i] = ONE;
        }
        Gate { m: k, n: k, q, mat }
    }

    /// The zero endomorphism.
    pub fn null(k: usize, q: usize) -> Self {
        let dim = table_len(k, q).expect("null gate too large");
        Gate {
            m: k,
            n: k,
            q,
            mat: vec![ZERO; dim * dim],
        }
    }

    pub fn hadamard() -> Self {
        let k = |v: usize| DPState::qubits(&[v]).unwrap();
        let e = |a: usize, b: usize| ket_bra(&k(a), &k(b)).unwrap();
        // 1/√2 (|0⟩⟨0| + |0⟩⟨1| + |1⟩⟨0| − |1⟩⟨1|)
        e(0, 0)
            .add(&e(0, 1))
            .and_then(|g| g.add(&e(1, 0)))
            .and_then(|g| g.sub(&e(1, 1)))
            .unwrap()
            .scaled(C64::new(FRAC_1_SQRT_2, 0.0))
    }

    /// `|i, j⟩ ↦ |i, i ⊕ j⟩`.
    pub fn cnot() -> Self {
        Gate::permutation(2, 2, |v| {
            let [i, j] = v.entries()[..] else {
                unreachable!()
            };
            Tuple::from([i, i ^ j])
        })
        .unwrap()
    }

    /// `|i, j, k⟩ ↦ |i, j, k ⊕ (i ∧ j)⟩`.
    pub fn toffoli() -> Self {
        Gate::permutation(3, 2, |v| {
            let [i, j, k] = v.entries()[..] else {
                unreachable!()
            };
            Tuple::from([i, j, k ^ (i & j)])
        })
        .unwrap()
    }

    pub fn swap() -> Self {
        Gate::permutation(2, 2, |v| {
            let [i, j] = v.entries()[..] else {
                unreachable!()
            };
            Tuple::from([j, i])
        })
        .unwrap()
    }

    /// Haar-ish random unitary: Gram–Schmidt on a complex Gaussian matrix.
    pub fn random_unitary<R: Rng + ?Sized>(k: usize, q: usize, rng: &mut R) -> Self {
        let dim = table_len(k, q).expect("random unitary too large");
        // Build orthonormal columns, then store row-major.
        let mut cols: Vec<Vec<C64>> = Vec::with_capacity(dim);
        while cols.len() < dim {
            let mut v: Vec<C64> = (0..dim)
                .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect();
            for _ in 0..2 {
                for u in &cols {
                    let proj: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                    for (x, y) in v.iter_mut().zip(u) {
                        *x -= proj * y;
                    }
                }
            }
            let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-8 {
                cols.push(v.into_iter().map(|a| a / norm).collect());
            }
        }
        let mut mat = vec![ZERO; dim * dim];
        for (c, col) in cols.iter().enumerate() {
            for (r, a) in col.iter().enumerate() {
                mat[r * dim + c] = *a;
            }
        }
        Gate { m: k, n: k, q, mat }
    }

    pub fn builtin(b: Builtin, q: usize) -> Result<Self> {
        let qubit_only = |g: fn() -> Gate| {
            if q == 2 {
                Ok(g())
            } else {
                Err(Error::UnsupportedAlphabet {
                    name: b.to_string(),
                    q,
                })
            }
        };
        match b {
            Builtin::Hadamard => qubit_only(Gate::hadamard),
            Builtin::Cnot => qubit_only(Gate::cnot),
            Builtin::Toffoli => qubit_only(Gate::toffoli),
            Builtin::Swap => qubit_only(Gate::swap),
            Builtin::Identity(k) => Ok(Gate::identity(k, q)),
            Builtin::Null(k) => Ok(Gate::null(k, q)),
        }
    }

    /// Input wire count.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Output wire count.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn rows(&self) -> usize {
        self.mat.len() / self.cols()
    }

    pub fn cols(&self) -> usize {
        table_len(self.m, self.q).unwrap()
    }

    pub fn is_square(&self) -> bool {
        self.m == self.n
    }

    /// Row-major entries.
    pub fn matrix(&self) -> &[C64] {
        &self.mat
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.mat[row * self.cols() + col]
    }

    pub fn to_column_major(&self) -> Vec<C64> {
        let (rows, cols) = (self.rows(), self.cols());
        (0..cols)
            .flat_map(|c| (0..rows).map(move |r| (r, c)))
            .map(|(r, c)| self.mat[r * cols + c])
            .collect()
    }

    fn check_same_shape(&self, other: &Gate) -> Result<()> {
        if (self.m, self.n, self.q) != (other.m, other.n, other.q) {
            return Err(Error::ShapeMismatch(format!(
                "gate {}→{} (q = {}) vs {}→{} (q = {})",
                self.m, self.n, self.q, other.m, other.n, other.q
            )));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Gate, f: impl Fn(C64, C64) -> C64) -> Result<Gate> {
        self.check_same_shape(other)?;
        let mat = self
            .mat
            .iter()
            .zip(&other.mat)
            .map(|(a, b)| f(*a, *b))
            .collect();
        Ok(Gate { mat, ..*self })
    }

    pub fn add(&self, other: &Gate) -> Result<Gate> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Gate) -> Result<Gate> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scaled(mut self, c: C64) -> Gate {
        for a in &mut self.mat {
            *a *= c;
        }
        self
    }

    /// `M·s` for an `m`-wire state.
    pub fn apply(&self, s: &DPState) -> Result<DPState> {
        if s.n() != self.m || s.q() != self.q {
            return Err(Error::ShapeMismatch(format!(
                "gate expects {} wires (q = {}), state has {} (q = {})",
                self.m,
                self.q,
                s.n(),
                s.q()
            )));
        }
        let cols = self.cols();
        let out = self
            .mat
            .chunks(cols)
            .map(|row| row.iter().zip(s.amps()).map(|(m, a)| m * a).sum())
            .collect();
        DPState::from_amps(self.n, self.q, out)
    }

    /// Matrix action on a table whose outer index has arity `m`: output block
    /// `i` is `Σⱼ M[i,j]·block j`. Only scalar products and sums of blocks are
    /// used, so this commutes with any linear blockwise map.
    pub fn apply_module(&self, blocks: &BlockTable) -> Result<BlockTable> {
        if blocks.outer() != self.m || blocks.q() != self.q {
            return Err(Error::ShapeMismatch(format!(
                "gate expects {} outer wires (q = {}), table has {} (q = {})",
                self.m,
                self.q,
                blocks.outer(),
                blocks.q()
            )));
        }
        let (rows, cols, len) = (self.rows(), self.cols(), blocks.block_len());
        let mut out = vec![ZERO; rows * len];
        for (i, dst) in out.chunks_mut(len.max(1)).enumerate().take(rows) {
            for j in 0..cols {
                let coef = self.mat[i * cols + j];
                if coef == ZERO {
                    continue;
                }
                for (d, x) in dst.iter_mut().zip(blocks.block_at(j)) {
                    *d += coef * x;
                }
            }
        }
        BlockTable::new(self.n, self.q, len, out)
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &Gate) -> Result<Gate> {
        if self.m != inner.n || self.q != inner.q {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose {}→{} after {}→{}",
                self.m, self.n, inner.m, inner.n
            )));
        }
        let (rows, mid, cols) = (self.rows(), self.cols(), inner.cols());
        let mut mat = vec![ZERO; rows * cols];
        for r in 0..rows {
            for k in 0..mid {
                let a = self.mat[r * mid + k];
                if a == ZERO {
                    continue;
                }
                for c in 0..cols {
                    mat[r * cols + c] += a * inner.mat[k * cols + c];
                }
            }
        }
        Ok(Gate {
            m: inner.m,
            n: self.n,
            q: self.q,
            mat,
        })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Gate {
        let (rows, cols) = (self.rows(), self.cols());
        let mut mat = vec![ZERO; rows * cols];
        for r in 0..rows {
            for c in 0..cols {
                mat[c * rows + r] = self.mat[r * cols + c].conj();
            }
        }
        Gate {
            m: self.n,
            n: self.m,
            q: self.q,
            mat,
        }
    }

    /// `‖M†M − I‖∞` (largest entry modulus).
    pub fn unitarity_deviation(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "unitarity needs a square gate, got {}→{}",
                self.m, self.n
            )));
        }
        let product = self.adjoint().compose(self)?;
        let dim = self.cols();
        Ok(product
            .mat
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let expected = if k / dim == k % dim { ONE } else { ZERO };
                (a - expected).norm()
            })
            .fold(0.0, f64::max))
    }

    pub fn max_entry_diff(&self, other: &Gate) -> Result<f64> {
        self.check_same_shape(other)?;
        Ok(self
            .mat
            .iter()
            .zip(&other.mat)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn approx_eq(&self, other: &Gate, tol: f64) -> bool {
        self.max_entry_diff(other).is_ok_and(|d| d <= tol)
    }
}

/// The column-times-row building block: column `v` of the result is
/// `k(v)·b`, giving a gate from `k`'s arity to `b`'s arity.
pub fn ket_bra(k: &DPState, b: &DPState) -> Result<Gate> {
    if k.q() != b.q() {
        return Err(Error::ShapeMismatch("ket_bra alphabets differ".into()));
    }
    let cols = k.len();
    let mut mat = vec![ZERO; b.len() * cols];
    for (r, bv) in b.amps().iter().enumerate() {
        for (c, kv) in k.amps().iter().enumerate() {
            mat[r * cols + c] = kv * bv;
        }
    }
    Gate::from_matrix(k.n(), b.n(), k.q(), mat)
}

/// Names of the builtin gates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Hadamard,
    Cnot,
    Toffoli,
    Swap,
    Identity(usize),
    Null(usize),
}

impl Builtin {
    /// Wire count the gate acts on.
    pub fn arity(self) -> usize {
        match self {
            Builtin::Hadamard => 1,
            Builtin::Cnot | Builtin::Swap => 2,
            Builtin::Toffoli => 3,
            Builtin::Identity(k) | Builtin::Null(k) => k,
        }
    }

    /// Parses a gate name. `identity` and `null` without an explicit
    /// `(k)` take their arity from `default_arity`.
    pub fn parse(name: &str, default_arity: Option<usize>) -> Result<Self> {
        let unknown = || Error::UnknownGate(name.to_string());
        let sized = |rest: &str| -> Result<usize> {
            match rest {
                "" => default_arity.ok_or_else(unknown),
                _ => rest
                    .strip_prefix('(')
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|r| r.trim().parse().ok())
                    .ok_or_else(unknown),
            }
        };
        match name {
            "hadamard" | "h" => Ok(Builtin::Hadamard),
            "cnot" | "cx" => Ok(Builtin::Cnot),
            "toffoli" | "ccx" => Ok(Builtin::Toffoli),
            "swap" => Ok(Builtin::Swap),
            _ => {
                if let Some(rest) = name.strip_prefix("identity") {
                    sized(rest).map(Builtin::Identity)
                } else if let Some(rest) = name.strip_prefix("null") {
                    sized(rest).map(Builtin::Null)
                } else {
                    Err(unknown())
                }
            }
        }
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Builtin::parse(s, None)
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Hadamard => f.write_str("hadamard"),
            Builtin::Cnot => f.write_str("cnot"),
            Builtin::Toffoli => f.write_str("toffoli"),
            Builtin::Swap => f.write_str("swap"),
            Builtin::Identity(k) => write!(f, "identity({k})"),
            Builtin::Null(k) => write!(f, "null({k})"),
        }
    }
}
