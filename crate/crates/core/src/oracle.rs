//! Dense reference semantics for differential testing.
//!
//! A gate on wires `ℓ` of an `n`-wire register is expanded to a full
//! `q^n × q^n` matrix the textbook way: permute the register so the lens
//! wires come first, pad the gate with an identity on the remaining wires
//! (`M ⊗ I`), and permute back. Nothing here is optimized; it exists to
//! catch mistakes in [`crate::focus`].

use rand::Rng;

use crate::dpstate::{table_len, DPState, C64};
use crate::error::{Error, Result};
use crate::focus::focus_apply;
use crate::gates::Gate;
use crate::lens::{Lens, Tuple};

/// Default guard: dense operators over at most `2^14` basis states.
pub const DEFAULT_MAX_WIRES: usize = 14;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<C64>,
}

impl Matrix {
    pub fn identity(dim: usize) -> Matrix {
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = ONE;
        }
        Matrix {
            rows: dim,
            cols: dim,
            data,
        }
    }

    pub fn from_gate(g: &Gate) -> Matrix {
        Matrix {
            rows: g.rows(),
            cols: g.cols(),
            data: g.matrix().to_vec(),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.data[r * self.cols + c]
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut data = vec![ZERO; self.rows * rhs.cols];
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == ZERO {
                    continue;
                }
                for c in 0..rhs.cols {
                    data[r * rhs.cols + c] += a * rhs.get(k, c);
                }
            }
        }
        Matrix {
            rows: self.rows,
            cols: rhs.cols,
            data,
        }
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) * v[c]).sum())
            .collect()
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Kronecker product: block `(i, j)` of the result is `a[i,j]·b`, so `a`
/// acts on the more significant (leading) wires.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut data = vec![ZERO; rows * cols];
    for ar in 0..a.rows {
        for ac in 0..a.cols {
            let x = a.get(ar, ac);
            for br in 0..b.rows {
                for bc in 0..b.cols {
                    data[(ar * b.rows + br) * cols + ac * b.cols + bc] = x * b.get(br, bc);
                }
            }
        }
    }
    Matrix { rows, cols, data }
}

/// A square operator on all `n` wires.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    pub n: usize,
    pub q: usize,
    pub mat: Matrix,
}

impl DenseOperator {
    pub fn apply(&self, s: &DPState) -> Result<DPState> {
        if s.n() != self.n || s.q() != self.q {
            return Err(Error::ShapeMismatch(format!(
                "{}-wire operator on a {}-wire state",
                self.n,
                s.n()
            )));
        }
        DPState::from_amps(self.n, self.q, self.mat.mul_vec(s.amps()))
    }

    pub fn to_gate(&self) -> Result<Gate> {
        Gate::from_matrix(self.n, self.n, self.q, self.mat.data.clone())
    }
}

fn guard(n: usize, q: usize, max_wires: usize) -> Result<usize> {
    // Compare q^n with 2^max_wires.
    let limit = 1usize.checked_shl(max_wires as u32).unwrap_or(usize::MAX);
    match table_len(n, q) {
        Some(dim) if dim <= limit => Ok(dim),
        _ => Err(Error::SizeGuardExceeded {
            wires: n,
            limit: max_wires,
        }),
    }
}

/// Permutation operator sending `|i₀ … iₙ₋₁⟩` to the ket whose position
/// `perm[k]` holds `iₖ`.
pub fn perm_matrix(n: usize, q: usize, perm: &[usize]) -> Result<DenseOperator> {
    perm_matrix_guarded(n, q, perm, DEFAULT_MAX_WIRES)
}

fn perm_matrix_guarded(
    n: usize,
    q: usize,
    perm: &[usize],
    max_wires: usize,
) -> Result<DenseOperator> {
    let invalid = |detail: String| Error::InvalidPermutation { n, detail };
    if perm.len() != n {
        return Err(invalid(format!("{} entries", perm.len())));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(invalid(format!("{perm:?}")));
        }
    }
    let dim = guard(n, q, max_wires)?;
    let mut data = vec![ZERO; dim * dim];
    for col in 0..dim {
        let t = Tuple::from_index(col, n, q);
        let mut moved = vec![0; n];
        for (k, &e) in t.entries().iter().enumerate() {
            moved[perm[k]] = e;
        }
        let row = Tuple::new(moved).index(q);
        data[row * dim + col] = ONE;
    }
    Ok(DenseOperator {
        n,
        q,
        mat: Matrix {
            rows: dim,
            cols: dim,
            data,
        },
    })
}

fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (k, &p) in perm.iter().enumerate() {
        inv[p] = k;
    }
    inv
}

/// `U(π)⁻¹ · (M ⊗ I) · U(π)` with `π` moving the lens wires to the front in
/// lens order and the remaining wires after them in ascending order.
pub fn build_full_matrix(lens: &Lens, gate: &Gate) -> Result<DenseOperator> {
    build_full_matrix_guarded(lens, gate, DEFAULT_MAX_WIRES)
}

pub fn build_full_matrix_guarded(
    lens: &Lens,
    gate: &Gate,
    max_wires: usize,
) -> Result<DenseOperator> {
    let (n, q) = (lens.n(), gate.q());
    guard(n, q, max_wires)?;
    if !gate.is_square() || gate.m() != lens.m() {
        return Err(Error::ShapeMismatch(format!(
            "{}→{} gate on a lens of {} wires",
            gate.m(),
            gate.n(),
            lens.m()
        )));
    }
    // Wire order after routing: selected wires, then the rest ascending.
    let mut order = lens.indices().to_vec();
    order.extend((0..n).filter(|w| !lens.indices().contains(w)));
    // Routed position k holds original wire order[k], i.e. wire order[k]
    // moves to position k.
    let route = perm_matrix_guarded(n, q, &invert(&order), max_wires)?;
    let unroute = perm_matrix_guarded(n, q, &order, max_wires)?;
    let pad = Matrix::identity(table_len(n - lens.m(), q).unwrap());
    let padded = kron(&Matrix::from_gate(gate), &pad);
    let mat = unroute.mat.mul(&padded).mul(&route.mat);
    Ok(DenseOperator { n, q, mat })
}

/// Largest `‖dense·s − focus(ℓ, G)·s‖∞` over `trials` random states.
pub fn assert_equiv<R: Rng + ?Sized>(
    lens: &Lens,
    gate: &Gate,
    trials: usize,
    rng: &mut R,
) -> Result<f64> {
    let dense = build_full_matrix(lens, gate)?;
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let s = DPState::random(lens.n(), gate.q(), rng)?;
        let d = dense
            .apply(&s)?
            .max_abs_diff(&focus_apply(lens, gate, &s)?)?;
        worst = worst.max(d);
    }
    Ok(worst)
}
