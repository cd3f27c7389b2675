//! Focusing: running an `m`-wire gate on the wires a lens selects.
//!
//! The defining pipeline is
//!
//! ```text
//! focus(ℓ, G) = uncurry(ℓ) ∘ G ∘ curry(ℓ)
//! ```
//!
//! where [`curry`] reshapes an `n`-wire state into a table indexed by the
//! lens wires whose entries are blocks over the complement wires, `G` acts on
//! the outer index ([`Gate::apply_module`]) and [`uncurry`] flattens back.
//! [`focus_apply_reference`] runs exactly that. [`focus_apply`] is the fast
//! path: for every assignment of the complement wires it gathers the `q^m`
//! amplitudes at stride offsets, multiplies by the matrix and scatters them
//! back in place.

use rayon::prelude::*;

use crate::dpstate::{table_len, BlockTable, DPState, C64};
use crate::error::{Error, Result};
use crate::gates::Gate;
use crate::lens::{Lens, Tuple};

const ZERO: C64 = C64::new(0.0, 0.0);

/// A state curried along a lens: one block over the complement wires for
/// each tuple on the lens wires.
#[derive(Debug, Clone, PartialEq)]
pub struct CurriedView {
    inner: usize,
    table: BlockTable,
}

impl CurriedView {
    pub fn new(inner: usize, table: BlockTable) -> Result<Self> {
        if table_len(inner, table.q()) != Some(table.block_len()) {
            return Err(Error::ShapeMismatch(format!(
                "blocks of {} entries cannot hold {inner} wires",
                table.block_len()
            )));
        }
        Ok(CurriedView { inner, table })
    }

    /// Arity of the outer (lens) index.
    pub fn outer(&self) -> usize {
        self.table.outer()
    }

    /// Arity of the blocks (complement wires).
    pub fn inner(&self) -> usize {
        self.inner
    }

    pub fn table(&self) -> &BlockTable {
        &self.table
    }

    pub fn into_table(self) -> BlockTable {
        self.table
    }

    /// The block at outer tuple `v`, as a state over the complement wires.
    pub fn block(&self, v: &Tuple) -> Result<DPState> {
        let b = self.table.block(v)?;
        DPState::from_amps(self.inner, self.table.q(), b.to_vec())
    }
}

fn check_lens_state(lens: &Lens, s: &DPState) -> Result<()> {
    if lens.n() != s.n() {
        return Err(Error::ShapeMismatch(format!(
            "lens into {} wires applied to a {}-wire state",
            lens.n(),
            s.n()
        )));
    }
    Ok(())
}

fn check_focusable(lens: &Lens, gate: &Gate, s: &DPState) -> Result<()> {
    check_lens_state(lens, s)?;
    if !gate.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "only square gates can be focused, got {}→{}",
            gate.m(),
            gate.n()
        )));
    }
    if gate.m() != lens.m() {
        return Err(Error::ShapeMismatch(format!(
            "{}-wire gate on a lens of {} wires",
            gate.m(),
            lens.m()
        )));
    }
    if gate.q() != s.q() {
        return Err(Error::ShapeMismatch(format!(
            "gate over {} symbols on a state over {}",
            gate.q(),
            s.q()
        )));
    }
    Ok(())
}

/// `curry(ℓ, s)(v)(w) = s(merge(ℓ, v, w))`.
pub fn curry(lens: &Lens, s: &DPState) -> Result<CurriedView> {
    check_lens_state(lens, s)?;
    let q = s.q();
    let inner = lens.n() - lens.m();
    let mut data = Vec::with_capacity(s.len());
    for v in Tuple::all(lens.m(), q) {
        for w in Tuple::all(inner, q) {
            data.push(s.amp(&lens.merge(&v, &w)?)?);
        }
    }
    let block_len = table_len(inner, q).expect("fits: state exists");
    CurriedView::new(inner, BlockTable::new(lens.m(), q, block_len, data)?)
}

/// `uncurry(ℓ, f)(t) = f(extract(ℓ, t))(extract(complement(ℓ), t))`.
pub fn uncurry(lens: &Lens, view: &CurriedView) -> Result<DPState> {
    if view.outer() != lens.m() || view.inner() != lens.n() - lens.m() {
        return Err(Error::ShapeMismatch(format!(
            "curried view {}+{} does not fit lens {lens}",
            view.outer(),
            view.inner()
        )));
    }
    let q = view.table.q();
    let comp = lens.complement();
    let mut s = DPState::zeros(lens.n(), q)?;
    for t in Tuple::all(lens.n(), q) {
        let block = view.table.block(&lens.extract(&t)?)?;
        let value = block[comp.extract(&t)?.index(q)];
        s.set_amp(&t, value)?;
    }
    Ok(s)
}

/// Embeds an `m`-wire state into `n` wires, filling the complement wires from
/// `v`: `dpmerge(ℓ, v, |v'⟩) = |merge(ℓ, v', extract(complement(ℓ), v))⟩`,
/// extended linearly.
pub fn dpmerge(lens: &Lens, v: &Tuple, local: &DPState) -> Result<DPState> {
    if v.arity() != lens.n() || local.n() != lens.m() {
        return Err(Error::ShapeMismatch(format!(
            "dpmerge along {lens} with a {}-tuple and a {}-wire state",
            v.arity(),
            local.n()
        )));
    }
    let q = local.q();
    let rest = DPState::ket(&lens.complement().extract(v)?, q)?;
    let scalars = BlockTable::new(lens.m(), q, 1, local.amps().to_vec())?;
    let blocks = scalars.dpmap(|a| rest.amps().iter().map(|x| a[0] * x).collect())?;
    uncurry(lens, &CurriedView::new(lens.n() - lens.m(), blocks)?)
}

/// The curry → apply → uncurry pipeline, materializing every block.
pub fn focus_apply_reference(lens: &Lens, gate: &Gate, s: &DPState) -> Result<DPState> {
    check_focusable(lens, gate, s)?;
    let view = curry(lens, s)?;
    let applied = gate.apply_module(view.table())?;
    uncurry(lens, &CurriedView::new(view.inner(), applied)?)
}

/// `dpmerge(ℓ, v, G|extract(ℓ, v)⟩)`, the image of a basis ket under
/// `focus(ℓ, G)` computed without touching the other basis states.
pub fn focus_dpbasis_step(lens: &Lens, gate: &Gate, v: &Tuple) -> Result<DPState> {
    let q = gate.q();
    if !gate.is_square() || gate.m() != lens.m() {
        return Err(Error::ShapeMismatch(format!(
            "{}→{} gate on a lens of {} wires",
            gate.m(),
            gate.n(),
            lens.m()
        )));
    }
    v.check_alphabet(q)?;
    let local = DPState::ket(&lens.extract(v)?, q)?;
    dpmerge(lens, v, &gate.apply(&local)?)
}

/// Stride arithmetic shared by the fast paths.
struct Plan<'a> {
    /// Amplitude offset of each outer (lens) tuple, in tuple order.
    outer: Vec<usize>,
    /// Stride of each complement wire, ascending wire order.
    inner_strides: Vec<usize>,
    q: usize,
    groups: usize,
    mat: &'a [C64],
}

impl<'a> Plan<'a> {
    fn new(lens: &Lens, gate: &'a Gate, q: usize) -> Self {
        let n = lens.n();
        let stride = |wire: usize| q.pow((n - 1 - wire) as u32);
        let outer = Tuple::all(lens.m(), q)
            .map(|v| {
                v.entries()
                    .iter()
                    .zip(lens.indices())
                    .map(|(&d, &w)| d * stride(w))
                    .sum()
            })
            .collect();
        let inner_strides: Vec<usize> = lens
            .complement()
            .indices()
            .iter()
            .map(|&w| stride(w))
            .collect();
        let groups = table_len(inner_strides.len(), q).unwrap();
        Plan {
            outer,
            inner_strides,
            q,
            groups,
            mat: gate.matrix(),
        }
    }

    /// Base offset of the `pos`-th complement assignment.
    fn base_of(&self, mut pos: usize) -> (usize, Vec<usize>) {
        let mut digits = vec![0; self.inner_strides.len()];
        let mut base = 0;
        for (d, s) in digits.iter_mut().zip(&self.inner_strides).rev() {
            *d = pos % self.q;
            base += *d * s;
            pos /= self.q;
        }
        (base, digits)
    }

    /// Applies the gate to complement groups `start..end`.
    ///
    /// # Safety
    /// `amps` must point to a live buffer covering every offset the plan
    /// produces, and no other thread may touch the offsets of these groups.
    unsafe fn run(&self, amps: *mut C64, start: usize, end: usize) {
        let dim = self.outer.len();
        let mut gathered = vec![ZERO; dim];
        let (mut base, mut digits) = self.base_of(start);
        for _ in start..end {
            for (g, off) in gathered.iter_mut().zip(&self.outer) {
                *g = *amps.add(base + off);
            }
            for (row, off) in self.mat.chunks_exact(dim).zip(&self.outer) {
                let mut acc = ZERO;
                for (m, g) in row.iter().zip(&gathered) {
                    acc += m * g;
                }
                *amps.add(base + off) = acc;
            }
            // Odometer step over the complement digits, last wire fastest.
            for (d, s) in digits.iter_mut().zip(&self.inner_strides).rev() {
                *d += 1;
                base += s;
                if *d < self.q {
                    break;
                }
                *d = 0;
                base -= self.q * s;
            }
        }
    }
}

/// Raw pointer that may cross threads; callers partition the offsets.
#[derive(Clone, Copy)]
struct SharedAmps(*mut C64);

// SAFETY: only used by `focus_apply_parallel_in_place`, whose chunks write
// disjoint offset sets.
unsafe impl Send for SharedAmps {}
unsafe impl Sync for SharedAmps {}

/// In-place fast path.
pub fn focus_apply_in_place(lens: &Lens, gate: &Gate, s: &mut DPState) -> Result<()> {
    check_focusable(lens, gate, s)?;
    let plan = Plan::new(lens, gate, s.q());
    let amps = s.amps_mut();
    // SAFETY: single thread; every offset is a valid position of `amps`
    // because outer and complement strides together address each tuple once.
    unsafe { plan.run(amps.as_mut_ptr(), 0, plan.groups) };
    Ok(())
}

/// `focus(ℓ, G)` applied to `s` with strided gather/scatter.
pub fn focus_apply(lens: &Lens, gate: &Gate, s: &DPState) -> Result<DPState> {
    let mut out = s.clone();
    focus_apply_in_place(lens, gate, &mut out)?;
    Ok(out)
}

const PAR_CHUNK: usize = 1 << 12;

/// Like [`focus_apply_in_place`], with complement groups split across the
/// rayon pool.
pub fn focus_apply_parallel_in_place(lens: &Lens, gate: &Gate, s: &mut DPState) -> Result<()> {
    check_focusable(lens, gate, s)?;
    let plan = Plan::new(lens, gate, s.q());
    if plan.groups <= PAR_CHUNK {
        // SAFETY: as in the sequential path.
        unsafe { plan.run(s.amps_mut().as_mut_ptr(), 0, plan.groups) };
        return Ok(());
    }
    let ptr = SharedAmps(s.amps_mut().as_mut_ptr());
    (0..plan.groups.div_ceil(PAR_CHUNK))
        .into_par_iter()
        .for_each(|chunk| {
            let start = chunk * PAR_CHUNK;
            let end = (start + PAR_CHUNK).min(plan.groups);
            let p = ptr;
            // SAFETY: distinct complement groups touch disjoint amplitude sets,
            // and chunks are disjoint ranges of groups; the buffer outlives the
            // parallel loop.
            unsafe { plan.run(p.0, start, end) };
        });
    Ok(())
}

pub fn focus_apply_parallel(lens: &Lens, gate: &Gate, s: &DPState) -> Result<DPState> {
    let mut out = s.clone();
    focus_apply_parallel_in_place(lens, gate, &mut out)?;
    Ok(out)
}

/// The `n`-wire gate `focus(ℓ, G)` as an explicit matrix, built column by
/// column from basis kets. Dimension grows as `q^(2n)`.
pub fn focus_gate(lens: &Lens, gate: &Gate) -> Result<Gate> {
    let q = gate.q();
    Gate::from_columns(lens.n(), lens.n(), q, |v| {
        focus_apply(lens, gate, &DPState::ket(v, q)?)
    })
}
