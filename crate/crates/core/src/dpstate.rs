//! Dense states indexed by tuples, and tables of equal-sized blocks.

use std::fmt::Write as _;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::lens::Tuple;

pub type C64 = Complex64;

/// Default absolute tolerance for comparing states.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Largest number of amplitudes a state may allocate unless a caller asks
/// for a different limit.
pub const DEFAULT_MAX_AMPLITUDES: usize = 1 << 30;

/// Number of entries in a table over `arity` symbols of a `q`-letter
/// alphabet, or `None` on overflow.
pub fn table_len(arity: usize, q: usize) -> Option<usize> {
    u32::try_from(arity).ok().and_then(|a| q.checked_pow(a))
}

fn checked_len(n: usize, q: usize, limit: usize) -> Result<usize> {
    match table_len(n, q) {
        Some(len) if len <= limit => Ok(len),
        _ => Err(Error::StateTooLarge { n, q, limit }),
    }
}

/// Amplitudes over all `n`-tuples of a `q`-symbol alphabet.
///
/// Position of tuple `(i₁..iₙ)` is `Σ iₖ·q^(n−k)`: the first wire is the most
/// significant digit, so positions follow lexicographic tuple order.
#[derive(Debug, Clone, PartialEq)]
pub struct DPState {
    n: usize,
    q: usize,
    amps: Vec<C64>,
}

impl DPState {
    pub fn zeros(n: usize, q: usize) -> Result<Self> {
        DPState::zeros_with_limit(n, q, DEFAULT_MAX_AMPLITUDES)
    }

    pub fn zeros_with_limit(n: usize, q: usize, limit: usize) -> Result<Self> {
        if q == 0 {
            return Err(Error::ShapeMismatch(
                "alphabet size must be positive".into(),
            ));
        }
        let len = checked_len(n, q, limit)?;
        Ok(DPState {
            n,
            q,
            amps: vec![C64::new(0.0, 0.0); len],
        })
    }

    pub fn from_amps(n: usize, q: usize, amps: Vec<C64>) -> Result<Self> {
        let len = table_len(n, q).ok_or(Error::StateTooLarge {
            n,
            q,
            limit: usize::MAX,
        })?;
        if q == 0 || amps.len() != len {
            return Err(Error::ShapeMismatch(format!(
                "{} amplitudes for {n} wires over {q} symbols",
                amps.len()
            )));
        }
        Ok(DPState { n, q, amps })
    }

    /// The basis state `|v⟩`.
    pub fn ket(v: &Tuple, q: usize) -> Result<Self> {
        v.check_alphabet(q)?;
        let mut s = DPState::zeros(v.arity(), q)?;
        s.amps[v.index(q)] = C64::new(1.0, 0.0);
        Ok(s)
    }

    /// Qubit shorthand: `DPState::qubits(&[1, 0])` is `|10⟩`.
    pub fn qubits(bits: &[usize]) -> Result<Self> {
        DPState::ket(&Tuple::new(bits.to_vec()), 2)
    }

    /// A normalized state with independent Gaussian real and imaginary parts.
    pub fn random<R: Rng + ?Sized>(n: usize, q: usize, rng: &mut R) -> Result<Self> {
        let mut s = DPState::zeros(n, q)?;
        for a in &mut s.amps {
            *a = C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
        }
        let norm = s.norm();
        Ok(s.scaled(C64::new(1.0 / norm, 0.0)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn amps_mut(&mut self) -> &mut [C64] {
        &mut self.amps
    }

    pub fn into_amps(self) -> Vec<C64> {
        self.amps
    }

    pub fn amp(&self, v: &Tuple) -> Result<C64> {
        self.check_tuple(v)?;
        Ok(self.amps[v.index(self.q)])
    }

    pub fn set_amp(&mut self, v: &Tuple, value: C64) -> Result<()> {
        self.check_tuple(v)?;
        let pos = v.index(self.q);
        self.amps[pos] = value;
        Ok(())
    }

    fn check_tuple(&self, v: &Tuple) -> Result<()> {
        if v.arity() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                found: v.arity(),
            });
        }
        v.check_alphabet(self.q)
    }

    pub fn check_same_shape(&self, other: &DPState) -> Result<()> {
        if self.n != other.n || self.q != other.q {
            return Err(Error::ShapeMismatch(format!(
                "state on {} wires (q = {}) vs {} wires (q = {})",
                self.n, self.q, other.n, other.q
            )));
        }
        Ok(())
    }

    /// `⟨self|other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &DPState) -> Result<C64> {
        self.check_same_shape(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_unit(&self, tol: f64) -> bool {
        (self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>() - 1.0).abs() <= tol
    }

    pub fn scaled(mut self, c: C64) -> Self {
        for a in &mut self.amps {
            *a *= c;
        }
        self
    }

    /// `self + c·other`.
    pub fn add_scaled(mut self, c: C64, other: &DPState) -> Result<Self> {
        self.check_same_shape(other)?;
        for (a, b) in self.amps.iter_mut().zip(&other.amps) {
            *a += c * b;
        }
        Ok(self)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: &DPState) -> Result<Self> {
        self.add_scaled(C64::new(1.0, 0.0), other)
    }

    /// `‖self − other‖∞` over amplitudes.
    pub fn max_abs_diff(&self, other: &DPState) -> Result<f64> {
        self.check_same_shape(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn approx_eq(&self, other: &DPState, tol: f64) -> bool {
        self.max_abs_diff(other).is_ok_and(|d| d <= tol)
    }

    /// Every `(v, σ(v))` pair, in tuple order, zeros included.
    pub fn decompose(&self) -> Vec<(Tuple, C64)> {
        self.amps
            .iter()
            .enumerate()
            .map(|(pos, &a)| (Tuple::from_index(pos, self.n, self.q), a))
            .collect()
    }

    /// `Σ c·|v⟩` over the given terms.
    pub fn recompose(n: usize, q: usize, terms: &[(Tuple, C64)]) -> Result<Self> {
        let mut s = DPState::zeros(n, q)?;
        for (v, c) in terms {
            s = s.add_scaled(*c, &DPState::ket(v, q)?)?;
        }
        Ok(s)
    }

    /// One `<tuple> <re> <im>` line per amplitude whose magnitude is nonzero
    /// and at least `threshold`.
    pub fn to_text(&self, threshold: f64) -> String {
        let mut out = String::new();
        for (pos, a) in self.amps.iter().enumerate() {
            let mag = a.norm();
            if mag == 0.0 || mag < threshold {
                continue;
            }
            let v = Tuple::from_index(pos, self.n, self.q);
            // Adding 0.0 turns -0.0 into 0.0.
            writeln!(out, "{v} {:?} {:?}", a.re + 0.0, a.im + 0.0).unwrap();
        }
        out
    }

    /// Parses the line format produced by [`DPState::to_text`]. Blank lines and
    /// lines starting with `#` are skipped; unlisted tuples are zero.
    pub fn parse_text(text: &str, n: usize, q: usize) -> Result<Self> {
        let mut s = DPState::zeros(n, q)?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let location = format!("line {}", lineno + 1);
            let err = |message: String| Error::Parse {
                location: location.clone(),
                message,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            // A zero-wire state prints its tuple as the empty string.
            let (tuple, re, im) = match fields[..] {
                [tuple, re, im] => (tuple, re, im),
                [re, im] if n == 0 => ("", re, im),
                _ => return Err(err(format!("expected 3 fields, found {}", fields.len()))),
            };
            let v = Tuple::parse_digits(tuple, q).map_err(|e| err(e.to_string()))?;
            if v.arity() != n {
                return Err(err(format!(
                    "tuple has {} entries, expected {n}",
                    v.arity()
                )));
            }
            let parse = |f: &str| f.parse::<f64>().map_err(|e| err(format!("`{f}`: {e}")));
            s.set_amp(&v, C64::new(parse(re)?, parse(im)?))?;
        }
        Ok(s)
    }
}

/// A table of `q^outer` blocks, each holding `block_len` amplitudes, stored
/// contiguously in outer-tuple order.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockTable {
    outer: usize,
    q: usize,
    block_len: usize,
    data: Vec<C64>,
}

impl BlockTable {
    pub fn new(outer: usize, q: usize, block_len: usize, data: Vec<C64>) -> Result<Self> {
        let blocks = table_len(outer, q)
            .ok_or_else(|| Error::ShapeMismatch("block table too large".into()))?;
        if blocks.checked_mul(block_len) != Some(data.len()) {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for {blocks} blocks of {block_len}",
                data.len()
            )));
        }
        Ok(BlockTable {
            outer,
            q,
            block_len,
            data,
        })
    }

    pub fn outer(&self) -> usize {
        self.outer
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn block_len(&self) -> usize {
        self.block_len
    }

    pub fn block_count(&self) -> usize {
        self.data
            .len()
            .checked_div(self.block_len)
            .unwrap_or_else(|| table_len(self.outer, self.q).unwrap_or(0))
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<C64> {
        self.data
    }

    pub fn block_at(&self, pos: usize) -> &[C64] {
        &self.data[pos * self.block_len..(pos + 1) * self.block_len]
    }

    pub fn block(&self, v: &Tuple) -> Result<&[C64]> {
        if v.arity() != self.outer {
            return Err(Error::ArityMismatch {
                expected: self.outer,
                found: v.arity(),
            });
        }
        v.check_alphabet(self.q)?;
        Ok(self.block_at(v.index(self.q)))
    }

    /// Applies `f` to every block. All outputs must share one length.
    pub fn dpmap<F>(&self, f: F) -> Result<BlockTable>
    where
        F: Fn(&[C64]) -> Vec<C64>,
    {
        let mut data = Vec::with_capacity(self.data.len());
        let mut out_len = None;
        for pos in 0..self.block_count() {
            let mapped = f(self.block_at(pos));
            match out_len {
                None => out_len = Some(mapped.len()),
                Some(len) if len != mapped.len() => {
                    return Err(Error::ShapeMismatch(format!(
                        "block map produced lengths {len} and {}",
                        mapped.len()
                    )))
                }
                Some(_) => {}
            }
            data.extend(mapped);
        }
        BlockTable::new(self.outer, self.q, out_len.unwrap_or(0), data)
    }

    /// `dpmap` with a dense `rows × block_len` row-major matrix.
    pub fn dpmap_matrix(&self, rows: usize, mat: &[C64]) -> Result<BlockTable> {
        if mat.len() != rows * self.block_len {
            return Err(Error::ShapeMismatch(format!(
                "{} matrix entries for a {rows}x{} map",
                mat.len(),
                self.block_len
            )));
        }
        let cols = self.block_len;
        self.dpmap(|b| {
            (0..rows)
                .map(|r| {
                    mat[r * cols..(r + 1) * cols]
                        .iter()
                        .zip(b)
                        .map(|(m, x)| m * x)
                        .sum()
                })
                .collect()
        })
    }

    pub fn max_abs_diff(&self, other: &BlockTable) -> Result<f64> {
        if (self.outer, self.q, self.block_len) != (other.outer, other.q, other.block_len) {
            return Err(Error::ShapeMismatch("block tables differ in shape".into()));
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}
