//! Focused endomorphisms and their commutative monoid.
//!
//! A [`FocEndo`] is a square gate together with the sorted lens saying which
//! wires of an `n`-wire register it acts on. Two focused endomorphisms with
//! disjoint supports compose in parallel into one whose support is the union;
//! overlapping supports collapse to the absorbing error element. Keeping the
//! lens sorted makes the representation canonical, so the composition is
//! commutative and associative on the nose (up to floating point).

use std::borrow::Cow;

use crate::dpstate::DPState;
use crate::error::{Error, Result};
use crate::focus::{focus_apply, focus_gate};
use crate::gates::Gate;
use crate::lens::Lens;

/// Anything acting linearly on `n`-wire states.
pub trait Endo {
    fn wires(&self) -> usize;
    fn apply(&self, s: &DPState) -> Result<DPState>;
}

/// A gate focused along a lens, used as an `n`-wire action.
#[derive(Debug, Clone, PartialEq)]
pub struct Focused {
    pub lens: Lens,
    pub gate: Gate,
}

impl Focused {
    pub fn new(lens: Lens, gate: Gate) -> Self {
        Focused { lens, gate }
    }
}

impl Endo for Focused {
    fn wires(&self) -> usize {
        self.lens.n()
    }

    fn apply(&self, s: &DPState) -> Result<DPState> {
        focus_apply(&self.lens, &self.gate, s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FocEndo {
    lens: Lens,
    /// `None` marks the error element, whose gate is the zero map on all
    /// `n` wires and is only materialized on request.
    gate: Option<Gate>,
    q: usize,
}

impl FocEndo {
    /// Factors `lens` into a sorted basis and a permutation and folds the
    /// permutation into the gate, so that the result acts as `focus(lens, gate)`.
    pub fn new(lens: &Lens, gate: &Gate) -> Result<Self> {
        if !gate.is_square() || gate.m() != lens.m() {
            return Err(Error::ShapeMismatch(format!(
                "{}→{} gate on a lens of {} wires",
                gate.m(),
                gate.n(),
                lens.m()
            )));
        }
        let (basis, perm) = lens.factor();
        let gate = if perm.is_identity() {
            gate.clone()
        } else {
            focus_gate(&perm, gate)?
        };
        Ok(FocEndo {
            lens: basis,
            q: gate.q(),
            gate: Some(gate),
        })
    }

    /// The unit: empty support, 0-wire identity.
    pub fn unit(n: usize, q: usize) -> Self {
        FocEndo {
            lens: Lens::empty(n),
            gate: Some(Gate::identity(0, q)),
            q,
        }
    }

    /// The absorbing element: full support, zero gate.
    pub fn err(n: usize, q: usize) -> Self {
        FocEndo {
            lens: Lens::identity(n),
            gate: None,
            q,
        }
    }

    pub fn n(&self) -> usize {
        self.lens.n()
    }

    /// Support size.
    pub fn m(&self) -> usize {
        self.lens.m()
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn lens(&self) -> &Lens {
        &self.lens
    }

    /// The gate acting on the support. For the error element this builds
    /// the dense zero matrix on all `n` wires.
    pub fn gate(&self) -> Cow<'_, Gate> {
        match &self.gate {
            Some(g) => Cow::Borrowed(g),
            None => Cow::Owned(Gate::null(self.n(), self.q)),
        }
    }

    pub fn is_err(&self) -> bool {
        self.gate.is_none()
    }

    pub fn is_unit(&self) -> bool {
        self.lens.m() == 0 && self.gate == Some(Gate::identity(0, self.q))
    }

    /// The action `focus(lens, gate)` on `n`-wire states.
    pub fn apply(&self, s: &DPState) -> Result<DPState> {
        match &self.gate {
            Some(g) => focus_apply(&self.lens, g, s),
            None => {
                if s.n() != self.n() || s.q() != self.q {
                    return Err(Error::ShapeMismatch(format!(
                        "{}-wire endomorphism on a {}-wire state",
                        self.n(),
                        s.n()
                    )));
                }
                DPState::zeros(s.n(), s.q())
            }
        }
    }

    /// Parallel composition. Disjoint supports merge; anything else, or an
    /// error operand, yields the error element.
    pub fn compose(&self, other: &FocEndo) -> Result<FocEndo> {
        if self.n() != other.n() || self.q() != other.q() {
            return Err(Error::ShapeMismatch(format!(
                "focused endomorphisms on {} and {} wires",
                self.n(),
                other.n()
            )));
        }
        let (Some(f), Some(g)) = (&self.gate, &other.gate) else {
            return Ok(FocEndo::err(self.n(), self.q));
        };
        if !self.lens.is_disjoint(&other.lens)? {
            return Ok(FocEndo::err(self.n(), self.q));
        }
        let support = self.lens.concat(&other.lens)?;
        FocEndo::new(&support, &par_comp(f, g)?)
    }

    /// Equal flags, supports and gate matrices within `tol`.
    pub fn approx_eq(&self, other: &FocEndo, tol: f64) -> bool {
        let gates_match = match (&self.gate, &other.gate) {
            (Some(f), Some(g)) => f.approx_eq(g, tol),
            (None, None) => self.q == other.q,
            _ => false,
        };
        gates_match && self.lens == other.lens
    }
}

impl Endo for FocEndo {
    fn wires(&self) -> usize {
        self.n()
    }

    fn apply(&self, s: &DPState) -> Result<DPState> {
        FocEndo::apply(self, s)
    }
}

/// `F` on the first `p` wires and `G` on the last `s` wires of `p + s`.
pub fn par_comp(f: &Gate, g: &Gate) -> Result<Gate> {
    let (p, s) = (f.m(), g.m());
    focus_gate(&Lens::left(p, s), f)?.compose(&focus_gate(&Lens::right(p, s), g)?)
}

/// Folds [`FocEndo::compose`] over the selected members in ascending index
/// order, starting from the unit.
pub fn compn_fendo<P>(n: usize, q: usize, family: &[FocEndo], pred: P) -> Result<FocEndo>
where
    P: Fn(usize) -> bool,
{
    family
        .iter()
        .enumerate()
        .filter(|(i, _)| pred(*i))
        .try_fold(FocEndo::unit(n, q), |acc, (_, f)| acc.compose(f))
}

/// Sequential composition `F_{i₀} ∘ F_{i₁} ∘ …` of the selected members,
/// listed in ascending index order. As with any composition the rightmost
/// factor, i.e. the highest selected index, acts first.
pub struct Sequence<'a, E> {
    n: usize,
    members: Vec<&'a E>,
}

pub fn compn_mor<'a, E, P>(n: usize, family: &'a [E], pred: P) -> Result<Sequence<'a, E>>
where
    E: Endo,
    P: Fn(usize) -> bool,
{
    let members: Vec<&E> = family
        .iter()
        .enumerate()
        .filter(|(i, _)| pred(*i))
        .map(|(_, f)| f)
        .collect();
    if let Some(bad) = members.iter().find(|f| f.wires() != n) {
        return Err(Error::ShapeMismatch(format!(
            "{}-wire action in a {n}-wire composition",
            bad.wires()
        )));
    }
    Ok(Sequence { n, members })
}

impl<E: Endo> Endo for Sequence<'_, E> {
    fn wires(&self) -> usize {
        self.n
    }

    fn apply(&self, s: &DPState) -> Result<DPState> {
        self.members
            .iter()
            .rev()
            .try_fold(s.clone(), |acc, f| f.apply(&acc))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lens::Tuple;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn lens(n: usize, idx: &[usize]) -> Lens {
        Lens::new(n, idx.to_vec()).unwrap()
    }

    #[test]
    fn make_sorted_and_unsorted() {
        let f = FocEndo::new(&lens(4, &[1, 3]), &Gate::cnot()).unwrap();
        assert_eq!(f.lens().indices(), &[1, 3]);
        assert_eq!(*f.gate(), Gate::cnot());

        let f = FocEndo::new(&lens(3, &[2, 0]), &Gate::cnot()).unwrap();
        assert_eq!(f.lens().indices(), &[0, 2]);
        for v in Tuple::all(3, 2) {
            let k = DPState::ket(&v, 2).unwrap();
            let expected = focus_apply(&lens(3, &[2, 0]), &Gate::cnot(), &k).unwrap();
            assert!(f.apply(&k).unwrap().approx_eq(&expected, 1e-12));
        }
        // Reversed control/target: the stored gate is CNOT with roles swapped.
        let flipped = Gate::permutation(2, 2, |v| {
            let [a, b] = v.entries()[..] else {
                unreachable!()
            };
            Tuple::from([a ^ b, b])
        })
        .unwrap();
        assert_eq!(*f.gate(), flipped);

        let unit = FocEndo::new(&Lens::empty(3), &Gate::identity(0, 2)).unwrap();
        assert_eq!(unit, FocEndo::unit(3, 2));
        assert!(unit.is_unit());
        assert!(FocEndo::new(&lens(3, &[0]), &Gate::cnot()).is_err());
    }

    #[test]
    fn actions_of_unit_and_err() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = DPState::random(3, 2, &mut rng).unwrap();
        assert_eq!(FocEndo::unit(3, 2).apply(&s).unwrap(), s);
        assert_eq!(
            FocEndo::err(3, 2).apply(&s).unwrap(),
            DPState::zeros(3, 2).unwrap()
        );
        let f = FocEndo::new(&lens(3, &[0, 1]), &Gate::cnot()).unwrap();
        for k in 0..2 {
            assert_eq!(
                f.apply(&DPState::qubits(&[1, 0, k]).unwrap()).unwrap(),
                DPState::qubits(&[1, 1, k]).unwrap()
            );
        }
    }

    #[test]
    fn composition_cases() {
        let phi = FocEndo::new(&lens(3, &[0, 1]), &Gate::cnot()).unwrap();
        let psi = FocEndo::new(&lens(3, &[2]), &Gate::hadamard()).unwrap();
        let both = phi.compose(&psi).unwrap();
        assert_eq!(both.lens().indices(), &[0, 1, 2]);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = DPState::random(3, 2, &mut rng).unwrap();
        let seq = psi.apply(&phi.apply(&s).unwrap()).unwrap();
        assert!(both.apply(&s).unwrap().approx_eq(&seq, 1e-12));

        let overlap = FocEndo::new(&lens(3, &[0, 2]), &Gate::cnot()).unwrap();
        assert!(overlap.compose(&psi).unwrap().is_err());

        let unit = FocEndo::unit(3, 2);
        assert!(unit.compose(&phi).unwrap().approx_eq(&phi, 0.0));
        assert!(phi.compose(&unit).unwrap().approx_eq(&phi, 0.0));
        let err = FocEndo::err(3, 2);
        assert_eq!(*err.gate(), Gate::null(3, 2));
        assert_eq!(err.lens(), &Lens::identity(3));
        assert!(err.compose(&unit).unwrap().is_err());
        assert!(unit.compose(&err).unwrap().is_err());
        assert!(phi.compose(&FocEndo::unit(4, 2)).is_err());
    }

    #[test]
    fn big_composition() {
        let fam: Vec<FocEndo> = (0..4)
            .map(|i| FocEndo::new(&lens(4, &[3 - i]), &Gate::hadamard()).unwrap())
            .collect();
        assert!(compn_fendo(4, 2, &[], |_| true).unwrap().is_unit());
        let all = compn_fendo(4, 2, &fam, |_| true).unwrap();
        assert_eq!(all.lens().indices(), &[0, 1, 2, 3]);
        let some = compn_fendo(4, 2, &fam, |i| i % 2 == 0).unwrap();
        assert_eq!(some.lens().indices(), &[1, 3]);
        let mut with_overlap = fam.clone();
        with_overlap.push(FocEndo::new(&lens(4, &[0, 2]), &Gate::cnot()).unwrap());
        assert!(compn_fendo(4, 2, &with_overlap, |_| true).unwrap().is_err());
    }

    #[test]
    fn sequential_fold() {
        let h = Focused::new(lens(2, &[1]), Gate::hadamard());
        let fam = vec![h.clone(), h.clone()];
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = DPState::random(2, 2, &mut rng).unwrap();
        let hh = compn_mor(2, &fam, |_| true).unwrap();
        assert!(hh.apply(&s).unwrap().approx_eq(&s, 1e-15));
        let single = compn_mor(2, &fam, |i| i == 0).unwrap();
        assert_eq!(single.apply(&s).unwrap(), h.apply(&s).unwrap());
        // Highest index acts first.
        let ordered = vec![
            Focused::new(lens(2, &[0, 1]), Gate::cnot()),
            Focused::new(lens(2, &[0]), Gate::hadamard()),
        ];
        let k = DPState::qubits(&[0, 0]).unwrap();
        let out = compn_mor(2, &ordered, |_| true).unwrap().apply(&k).unwrap();
        let bell = ordered[0].apply(&ordered[1].apply(&k).unwrap()).unwrap();
        assert_eq!(out, bell);
        assert!(compn_mor(3, &ordered, |_| true).is_err());
    }
}
