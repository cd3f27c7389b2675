//! Lenses: duplicate-free injections of `m` wires into `n` wires.
//!
//! A lens `ℓ ⊂ n` is stored as the sequence of target wires it selects. It
//! induces a get/put pair on index tuples: [`Lens::extract`] projects an
//! `n`-tuple onto the selected positions, and [`Lens::merge`] writes an
//! `m`-tuple back into those positions while filling the remaining ones from
//! a tuple over the [complement](Lens::complement).

use std::fmt;

use crate::error::{Error, Result};

/// A tuple of symbols from the index alphabet `{0..q-1}`.
///
/// The alphabet size is not stored; operations that care about it (state
/// encoding, `ket`) take `q` explicitly and validate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Tuple(Vec<usize>);

impl Tuple {
    pub fn new(entries: Vec<usize>) -> Self {
        Tuple(entries)
    }

    pub fn zeros(arity: usize) -> Self {
        Tuple(vec![0; arity])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<usize> {
        self.0
    }

    pub fn get(&self, k: usize) -> Option<usize> {
        self.0.get(k).copied()
    }

    /// Checks every entry is `< q`.
    pub fn check_alphabet(&self, q: usize) -> Result<()> {
        match self.0.iter().find(|&&e| e >= q) {
            Some(&e) => Err(Error::IndexOutOfRange { index: e, bound: q }),
            None => Ok(()),
        }
    }

    /// Position of this tuple in a dense table over `q` symbols, first entry
    /// most significant.
    pub fn index(&self, q: usize) -> usize {
        self.0.iter().fold(0, |acc, &e| acc * q + e)
    }

    /// Inverse of [`Tuple::index`].
    pub fn from_index(mut pos: usize, arity: usize, q: usize) -> Self {
        let mut entries = vec![0; arity];
        for slot in entries.iter_mut().rev() {
            *slot = pos % q;
            pos /= q;
        }
        Tuple(entries)
    }

    /// All `q^arity` tuples in lexicographic order.
    pub fn all(arity: usize, q: usize) -> impl Iterator<Item = Tuple> {
        let count = q
            .checked_pow(arity as u32)
            .expect("tuple space overflows usize");
        (0..count).map(move |pos| Tuple::from_index(pos, arity, q))
    }

    /// Parses a digit string such as `"0110"`.
    pub fn parse_digits(s: &str, q: usize) -> Result<Self> {
        let entries = s
            .chars()
            .enumerate()
            .map(|(k, ch)| {
                ch.to_digit(10)
                    .map(|d| d as usize)
                    .filter(|&d| d < q)
                    .ok_or_else(|| Error::Parse {
                        location: format!("character {k}"),
                        message: format!("`{ch}` is not a symbol below {q}"),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Tuple(entries))
    }
}

impl From<Vec<usize>> for Tuple {
    fn from(v: Vec<usize>) -> Self {
        Tuple(v)
    }
}

impl<const N: usize> From<[usize; N]> for Tuple {
    fn from(v: [usize; N]) -> Self {
        Tuple(v.to_vec())
    }
}

/// Digit-string rendering; only unambiguous for alphabets up to 10 symbols.
impl fmt::Display for Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.0 {
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// An injection of `m` source wires into `n` target wires.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lens {
    n: usize,
    idx: Vec<usize>,
}

/// The named lenses used to build circuits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LensKind {
    Pair(usize, usize),
    Single(usize),
    Empty,
    Id,
    /// First `p` wires of `p + s`.
    Left(usize, usize),
    /// Last `s` wires of `p + s`.
    Right(usize, usize),
}

impl Lens {
    pub fn new(n: usize, idx: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; n];
        for &i in &idx {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, bound: n });
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::DuplicateIndex { index: i });
            }
        }
        Ok(Lens { n, idx })
    }

    /// Caller guarantees the injection invariants.
    fn from_parts(n: usize, idx: Vec<usize>) -> Self {
        debug_assert!(Lens::new(n, idx.clone()).is_ok());
        Lens { n, idx }
    }

    pub fn identity(n: usize) -> Self {
        Lens::from_parts(n, (0..n).collect())
    }

    pub fn empty(n: usize) -> Self {
        Lens::from_parts(n, Vec::new())
    }

    pub fn single(n: usize, i: usize) -> Result<Self> {
        Lens::new(n, vec![i])
    }

    pub fn pair(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == j {
            return Err(Error::EqualIndices { index: i });
        }
        Lens::new(n, vec![i, j])
    }

    /// `[0..p)` inside `p + s` wires.
    pub fn left(p: usize, s: usize) -> Self {
        Lens::from_parts(p + s, (0..p).collect())
    }

    /// `[p..p+s)` inside `p + s` wires.
    pub fn right(p: usize, s: usize) -> Self {
        Lens::from_parts(p + s, (p..p + s).collect())
    }

    pub fn special(kind: LensKind, n: usize) -> Result<Self> {
        match kind {
            LensKind::Pair(i, j) => Lens::pair(n, i, j),
            LensKind::Single(i) => Lens::single(n, i),
            LensKind::Empty => Ok(Lens::empty(n)),
            LensKind::Id => Ok(Lens::identity(n)),
            LensKind::Left(p, s) | LensKind::Right(p, s) => {
                if p + s != n {
                    return Err(Error::ArityMismatch {
                        expected: n,
                        found: p + s,
                    });
                }
                Ok(if matches!(kind, LensKind::Left(..)) {
                    Lens::left(p, s)
                } else {
                    Lens::right(p, s)
                })
            }
        }
    }

    /// Codomain wire count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of selected wires.
    pub fn m(&self) -> usize {
        self.idx.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.idx
    }

    pub fn is_sorted(&self) -> bool {
        self.idx.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_identity(&self) -> bool {
        self.idx.len() == self.n && self.is_sorted()
    }

    fn check_arity(expected: usize, found: usize) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::ArityMismatch { expected, found })
        }
    }

    /// Get: `extract(t)[k] = t[idx[k]]`.
    pub fn extract(&self, t: &Tuple) -> Result<Tuple> {
        Lens::check_arity(self.n, t.arity())?;
        Ok(Tuple(self.idx.iter().map(|&i| t.0[i]).collect()))
    }

    /// The sorted lens onto every wire not selected by `self`.
    pub fn complement(&self) -> Lens {
        let mut selected = vec![false; self.n];
        for &i in &self.idx {
            selected[i] = true;
        }
        let idx = (0..self.n).filter(|&i| !selected[i]).collect();
        Lens::from_parts(self.n, idx)
    }

    /// Put: writes `v` at the selected wires and `c` at the complement wires
    /// (in ascending wire order).
    pub fn merge(&self, v: &Tuple, c: &Tuple) -> Result<Tuple> {
        Lens::check_arity(self.m(), v.arity())?;
        Lens::check_arity(self.n - self.m(), c.arity())?;
        let mut out = vec![0; self.n];
        let mut filled = vec![false; self.n];
        for (&i, &e) in self.idx.iter().zip(&v.0) {
            out[i] = e;
            filled[i] = true;
        }
        let free = out.iter_mut().zip(&filled).filter(|(_, &f)| !f);
        for ((slot, _), &e) in free.zip(&c.0) {
            *slot = e;
        }
        Ok(Tuple(out))
    }

    /// `lens_comp(self, inner)`: first select with `inner` inside `self`'s
    /// domain, then map through `self`.
    pub fn compose(&self, inner: &Lens) -> Result<Lens> {
        Lens::check_arity(self.m(), inner.n)?;
        let idx = inner.idx.iter().map(|&k| self.idx[k]).collect();
        Ok(Lens::from_parts(self.n, idx))
    }

    /// Splits the lens into a sorted basis and a permutation with
    /// `basis.compose(&perm) == self`.
    pub fn factor(&self) -> (Lens, Lens) {
        let mut basis = self.idx.clone();
        basis.sort_unstable();
        let perm = self
            .idx
            .iter()
            .map(|i| basis.binary_search(i).expect("same set"))
            .collect();
        let m = self.m();
        (Lens::from_parts(self.n, basis), Lens::from_parts(m, perm))
    }

    pub fn basis(&self) -> Lens {
        self.factor().0
    }

    /// Ordinal position of wire `i` in the lens.
    pub fn position(&self, i: usize) -> Result<usize> {
        self.idx
            .iter()
            .position(|&e| e == i)
            .ok_or(Error::NotInLens { index: i })
    }

    pub fn contains(&self, i: usize) -> Result<bool> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                bound: self.n,
            });
        }
        Ok(self.idx.contains(&i))
    }

    pub fn is_disjoint(&self, other: &Lens) -> Result<bool> {
        Lens::check_arity(self.n, other.n)?;
        Ok(self.idx.iter().all(|i| !other.idx.contains(i)))
    }

    /// `self ++ other`; fails with `DuplicateIndex` unless the two are disjoint.
    pub fn concat(&self, other: &Lens) -> Result<Lens> {
        Lens::check_arity(self.n, other.n)?;
        let mut idx = self.idx.clone();
        idx.extend_from_slice(&other.idx);
        Lens::new(self.n, idx)
    }

    /// Every lens of size `m` into `n` wires, in lexicographic order of the
    /// index sequence.
    pub fn all_of_size(n: usize, m: usize) -> Vec<Lens> {
        fn go(n: usize, m: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Lens>) {
            if cur.len() == m {
                out.push(Lens::from_parts(n, cur.clone()));
                return;
            }
            for i in 0..n {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    go(n, m, cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        if m <= n {
            go(
                n,
                m,
                &mut Vec::with_capacity(m),
                &mut vec![false; n],
                &mut out,
            );
        }
        out
    }

    /// Every lens into `n` wires, all sizes.
    pub fn all(n: usize) -> Vec<Lens> {
        (0..=n).flat_map(|m| Lens::all_of_size(n, m)).collect()
    }
}

impl fmt::Display for Lens {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}⊂{}", self.idx, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lens(n: usize, idx: &[usize]) -> Lens {
        Lens::new(n, idx.to_vec()).unwrap()
    }

    #[test]
    fn construction() {
        assert_eq!(lens(3, &[0, 2]).indices(), &[0, 2]);
        assert_eq!(
            Lens::new(3, vec![0, 0]),
            Err(Error::DuplicateIndex { index: 0 })
        );
        assert_eq!(
            Lens::new(2, vec![2]),
            Err(Error::IndexOutOfRange { index: 2, bound: 2 })
        );
    }

    #[test]
    fn extract_examples() {
        let (i, j, k) = (1, 0, 1);
        let t = Tuple::from([i, j, k]);
        assert_eq!(lens(3, &[0, 1]).extract(&t).unwrap(), Tuple::from([i, j]));
        let t = Tuple::from([0, 1, 1]);
        assert_eq!(lens(3, &[0, 2]).extract(&t).unwrap(), Tuple::from([0, 1]));
        assert_eq!(Lens::identity(3).extract(&t).unwrap(), t);
        assert!(matches!(
            lens(3, &[0]).extract(&Tuple::zeros(2)),
            Err(Error::ArityMismatch {
                expected: 3,
                found: 2
            })
        ));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(lens(3, &[0, 2]).complement().indices(), &[1]);
        let m = 4;
        let c = Lens::single(m + 2, m + 1).unwrap().complement();
        assert_eq!(c.indices(), (0..=m).collect::<Vec<_>>().as_slice());
        assert_eq!(Lens::empty(4).complement(), Lens::identity(4));
        // Complement is sorted even when the lens is not.
        assert_eq!(lens(5, &[4, 1]).complement().indices(), &[0, 2, 3]);
    }

    #[test]
    fn merge_examples() {
        for (i, j, k) in [(0, 0, 0), (1, 0, 1), (1, 1, 0)] {
            let out = lens(3, &[0, 1])
                .merge(&Tuple::from([i, i ^ j]), &Tuple::from([k]))
                .unwrap();
            assert_eq!(out, Tuple::from([i, i ^ j, k]));
        }
        let out = lens(2, &[1])
            .merge(&Tuple::from([7]), &Tuple::from([9]))
            .unwrap();
        assert_eq!(out, Tuple::from([9, 7]));
        assert!(lens(2, &[1])
            .merge(&Tuple::from([0, 0]), &Tuple::from([0]))
            .is_err());
    }

    #[test]
    fn compose_examples() {
        let l = lens(3, &[0, 2]);
        assert_eq!(l.compose(&lens(2, &[1])).unwrap().indices(), &[2]);
        assert_eq!(Lens::identity(3).compose(&l).unwrap(), l);
        assert!(l.compose(&lens(3, &[0])).is_err());
    }

    #[test]
    fn factor_examples() {
        let (b, p) = lens(3, &[2, 0]).factor();
        assert_eq!((b.indices(), p.indices()), (&[0, 2][..], &[1, 0][..]));
        let (b, p) = lens(3, &[1, 2, 0]).factor();
        assert_eq!((b.indices(), p.indices()), (&[0, 1, 2][..], &[1, 2, 0][..]));
        // [1,2,0] evaluated by hand: basis[1]=1, basis[2]=2, basis[0]=0.
        assert_eq!(b.compose(&p).unwrap().indices(), &[1, 2, 0]);
        let sorted = lens(5, &[1, 3, 4]);
        let (b, p) = sorted.factor();
        assert_eq!(b, sorted);
        assert_eq!(p, Lens::identity(3));
    }

    #[test]
    fn position_and_membership() {
        let l = lens(3, &[0, 2]);
        assert_eq!(l.position(2), Ok(1));
        assert_eq!(l.position(0), Ok(0));
        assert_eq!(l.position(1), Err(Error::NotInLens { index: 1 }));
        assert_eq!(l.contains(2), Ok(true));
        assert_eq!(l.contains(1), Ok(false));
        assert!(l.contains(3).is_err());
        for i in l.complement().indices() {
            assert_eq!(l.contains(*i), Ok(false));
        }
    }

    #[test]
    fn disjointness() {
        assert!(lens(9, &[0, 1]).is_disjoint(&lens(9, &[3, 4])).unwrap());
        assert!(!lens(3, &[0, 2]).is_disjoint(&lens(3, &[2])).unwrap());
        let l = lens(6, &[5, 1, 3]);
        assert!(l.is_disjoint(&l.complement()).unwrap());
        assert!(l.is_disjoint(&lens(5, &[0])).is_err());
    }

    #[test]
    fn special_lenses() {
        let m = 3;
        assert_eq!(
            Lens::special(LensKind::Pair(m, m + 1), m + 2)
                .unwrap()
                .indices(),
            &[m, m + 1]
        );
        assert_eq!(
            Lens::special(LensKind::Left(2, 3), 5).unwrap().indices(),
            &[0, 1]
        );
        assert_eq!(
            Lens::special(LensKind::Right(2, 3), 5).unwrap().indices(),
            &[2, 3, 4]
        );
        assert_eq!(
            Lens::special(LensKind::Pair(1, 1), 3),
            Err(Error::EqualIndices { index: 1 })
        );
        assert!(Lens::special(LensKind::Single(3), 3).is_err());
        assert!(Lens::special(LensKind::Left(2, 2), 5).is_err());
        assert_eq!(Lens::special(LensKind::Id, 2).unwrap(), Lens::identity(2));
        assert_eq!(Lens::special(LensKind::Empty, 2).unwrap().m(), 0);
    }

    #[test]
    fn enumeration_counts() {
        // Partial permutations: sum over m of n!/(n-m)!.
        assert_eq!(Lens::all(3).len(), 1 + 3 + 6 + 6);
        assert_eq!(Lens::all_of_size(5, 2).len(), 20);
        assert_eq!(Lens::all(0), vec![Lens::empty(0)]);
    }

    #[test]
    fn tuple_encoding() {
        assert_eq!(Tuple::from([1, 0]).index(2), 2);
        assert_eq!(Tuple::from([2, 1]).index(3), 7);
        assert_eq!(Tuple::from_index(7, 2, 3), Tuple::from([2, 1]));
        let all: Vec<_> = Tuple::all(3, 2).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(
            Tuple::parse_digits("0110", 2).unwrap(),
            Tuple::from([0, 1, 1, 0])
        );
        assert!(Tuple::parse_digits("012", 2).is_err());
        assert_eq!(Tuple::from([1, 0, 1]).to_string(), "101");
    }
}
