//! Executable law suites.
//!
//! Each scope runs a family of laws and records, per law, how many cases were
//! tried, how many failed and the worst numeric deviation seen. Randomized
//! laws draw from a ChaCha stream seeded by [`Config::seed`], so a report can
//! be reproduced exactly from the seed it prints.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuits::{
    bit_flip_dec, bit_flip_enc, ghz, ghz_state, hadamard3, proj, rev_circuit, shor_code,
    sign_flip_dec, sign_flip_enc, Circuit,
};
use crate::dpstate::{DPState, C64};
use crate::error::{Error, Result};
use crate::fendo::{compn_fendo, compn_mor, Endo, FocEndo};
use crate::focus::{
    focus_apply, focus_apply_parallel, focus_apply_reference, focus_dpbasis_step, focus_gate,
};
use crate::gates::Gate;
use crate::lens::{Lens, Tuple};
use crate::oracle::{self, build_full_matrix_guarded, perm_matrix, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scope {
    LensLaws,
    FocusLaws,
    Unitarity,
    Oracle,
    Monoid,
    Examples,
}

impl Scope {
    pub const ALL: [Scope; 6] = [
        Scope::LensLaws,
        Scope::FocusLaws,
        Scope::Unitarity,
        Scope::Oracle,
        Scope::Monoid,
        Scope::Examples,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scope::LensLaws => "lens-laws",
            Scope::FocusLaws => "focus-laws",
            Scope::Unitarity => "unitarity",
            Scope::Oracle => "oracle",
            Scope::Monoid => "monoid",
            Scope::Examples => "examples",
        }
    }

    /// Size bound used when [`Config::max_wires`] is not set.
    pub fn default_max_wires(self) -> usize {
        match self {
            Scope::LensLaws => 5,
            Scope::FocusLaws | Scope::Oracle | Scope::Monoid => 6,
            Scope::Unitarity => 3,
            Scope::Examples => 16,
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scope::ALL
            .into_iter()
            .find(|scope| scope.name() == s)
            .ok_or_else(|| Error::Parse {
                location: "scope".into(),
                message: format!(
                    "unknown scope `{s}`, expected one of {}",
                    Scope::ALL.map(Scope::name).join(", ")
                ),
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub seed: u64,
    /// Overrides the scope's default size bound.
    pub max_wires: Option<usize>,
    /// Randomized cases per law.
    pub trials: usize,
    /// Adds cross-checks against the dense oracle where a scope has them.
    pub oracle: bool,
    /// Runs focused gates through the multi-threaded path.
    pub parallel: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 0x5eed,
            max_wires: None,
            trials: 200,
            oracle: false,
            parallel: false,
        }
    }
}

impl Config {
    fn bound(&self, scope: Scope) -> usize {
        self.max_wires.unwrap_or_else(|| scope.default_max_wires())
    }

    fn focus(&self, lens: &Lens, gate: &Gate, s: &DPState) -> Result<DPState> {
        if self.parallel {
            focus_apply_parallel(lens, gate, s)
        } else {
            focus_apply(lens, gate, s)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LawResult {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    /// `None` for laws that are exact equalities on discrete data.
    pub max_deviation: Option<f64>,
    pub tolerance: Option<f64>,
}

impl LawResult {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub scope: Scope,
    pub seed: u64,
    pub max_wires: usize,
    pub laws: Vec<LawResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(LawResult::passed)
    }

    pub fn law(&self, name: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.name == name)
    }

    /// Worst deviation over all numeric laws.
    pub fn max_deviation(&self) -> f64 {
        self.laws
            .iter()
            .filter_map(|l| l.max_deviation)
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "check {} (seed {}, max wires {})",
            self.scope, self.seed, self.max_wires
        )?;
        let width = self.laws.iter().map(|l| l.name.len()).max().unwrap_or(0);
        for law in &self.laws {
            let status = if law.passed() { "PASS" } else { "FAIL" };
            write!(f, "  {status} {:<width$} {:>7} cases", law.name, law.cases)?;
            if law.failures > 0 {
                write!(f, ", {} failed", law.failures)?;
            }
            if let (Some(dev), Some(tol)) = (law.max_deviation, law.tolerance) {
                write!(f, "  max dev {dev:.3e} (tol {tol:.0e})")?;
            }
            writeln!(f)?;
        }
        let (ok, total) = (
            self.laws.iter().filter(|l| l.passed()).count(),
            self.laws.len(),
        );
        write!(f, "{ok}/{total} laws passed")
    }
}

/// Accumulates cases of a single law.
struct Law {
    name: &'static str,
    cases: usize,
    failures: usize,
    worst: f64,
    tolerance: Option<f64>,
}

impl Law {
    fn exact(name: &'static str) -> Self {
        Law {
            name,
            cases: 0,
            failures: 0,
            worst: 0.0,
            tolerance: None,
        }
    }

    fn within(name: &'static str, tol: f64) -> Self {
        Law {
            name,
            cases: 0,
            failures: 0,
            worst: 0.0,
            tolerance: Some(tol),
        }
    }

    fn holds(&mut self, ok: bool) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
        }
    }

    fn deviation(&mut self, d: f64) {
        let tol = self.tolerance.expect("numeric law");
        self.cases += 1;
        if d.is_nan() || d > tol {
            self.failures += 1;
        }
        if d > self.worst || d.is_nan() {
            self.worst = d;
        }
    }

    fn finish(self) -> LawResult {
        LawResult {
            name: self.name.to_string(),
            cases: self.cases,
            failures: self.failures,
            max_deviation: self.tolerance.map(|_| self.worst),
            tolerance: self.tolerance,
        }
    }
}

pub fn run(scope: Scope, cfg: &Config) -> Result<Report> {
    let max_wires = cfg.bound(scope);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let laws = match scope {
        Scope::LensLaws => lens_laws(max_wires)?,
        Scope::FocusLaws => focus_laws(cfg, max_wires, &mut rng)?,
        Scope::Unitarity => unitarity(cfg, max_wires, &mut rng)?,
        Scope::Oracle => oracle_laws(cfg, max_wires, &mut rng)?,
        Scope::Monoid => monoid_laws(cfg, max_wires, &mut rng)?,
        Scope::Examples => example_laws(cfg, max_wires, &mut rng)?,
    };
    Ok(Report {
        scope,
        seed: cfg.seed,
        max_wires,
        laws,
    })
}

/// A random lens `m ⊂ n` with its entries in random order.
pub fn random_lens<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Lens {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    idx.truncate(m);
    Lens::new(n, idx).expect("distinct indices below n")
}

/// Random wire counts `(n, m)` with `1 ≤ m ≤ min(n, 3)` and `n ≤ max_wires`.
fn random_shape<R: Rng + ?Sized>(max_wires: usize, rng: &mut R) -> (usize, usize) {
    let n = rng.gen_range(1..=max_wires.max(1));
    (n, rng.gen_range(1..=n.min(3)))
}

fn lens_laws(max_wires: usize) -> Result<Vec<LawResult>> {
    let mut get_put = Law::exact("merge_extract");
    let mut put_get = Law::exact("extract_merge");
    let mut put_get_c = Law::exact("extractC_merge");
    let mut tnth_merge = Law::exact("tnth_merge");
    let mut tnth_merge_c = Law::exact("tnth_mergeC");
    let mut tnth_extract = Law::exact("tnth_extract");
    let mut mem_c = Law::exact("mem_lensC");
    let mut factor = Law::exact("basis_perm_factorization");
    let mut assoc = Law::exact("lens_comp_assoc");

    for n in 0..=max_wires {
        for lens in Lens::all(n) {
            let comp = lens.complement();
            for t in Tuple::all(n, 2) {
                let back = lens.merge(&lens.extract(&t)?, &comp.extract(&t)?)?;
                get_put.holds(back == t);
                let e = lens.extract(&t)?;
                tnth_extract.holds((0..lens.m()).all(|j| e.get(j) == t.get(lens.indices()[j])));
            }
            for v in Tuple::all(lens.m(), 2) {
                for c in Tuple::all(comp.m(), 2) {
                    let t = lens.merge(&v, &c)?;
                    put_get.holds(lens.extract(&t)? == v);
                    put_get_c.holds(comp.extract(&t)? == c);
                    let mut in_lens = true;
                    let mut in_comp = true;
                    for i in 0..n {
                        if lens.contains(i)? {
                            in_lens &= t.get(i) == v.get(lens.position(i)?);
                        } else {
                            in_comp &= t.get(i) == c.get(comp.position(i)?);
                        }
                    }
                    tnth_merge.holds(in_lens);
                    tnth_merge_c.holds(in_comp);
                }
            }
            for i in 0..n {
                mem_c.holds(comp.contains(i)? != lens.contains(i)?);
            }
            let (basis, perm) = lens.factor();
            let mut sorted = lens.indices().to_vec();
            sorted.sort_unstable();
            factor.holds(
                basis.compose(&perm)? == lens
                    && basis.indices().windows(2).all(|w| w[0] < w[1])
                    && basis.indices() == sorted.as_slice(),
            );
        }
    }

    // Composable triples get numerous quickly, so this one stops at 4 wires.
    for n in 0..=max_wires.min(4) {
        for a in Lens::all(n) {
            for b in Lens::all(a.m()) {
                let ab = a.compose(&b)?;
                for c in Lens::all(b.m()) {
                    assoc.holds(ab.compose(&c)? == a.compose(&b.compose(&c)?)?);
                }
            }
        }
    }

    Ok([
        get_put,
        put_get,
        put_get_c,
        tnth_merge,
        tnth_merge_c,
        tnth_extract,
        mem_c,
        factor,
        assoc,
    ]
    .into_iter()
    .map(Law::finish)
    .collect())
}

fn focus_laws(cfg: &Config, max_wires: usize, rng: &mut ChaCha8Rng) -> Result<Vec<LawResult>> {
    const TOL: f64 = 1e-10;
    let mut comp = Law::within("focus_comp", TOL);
    let mut nested = Law::within("focusM", TOL);
    let mut commute = Law::within("focusC", TOL);
    let mut unitary = Law::within("unitary_focus", TOL);
    let mut unitary_comp = Law::within("unitary_comp", TOL);
    let mut dpbasis = Law::within("focus_dpbasis", 1e-12);
    let mut reference = Law::within("fast_path_matches_reference", 1e-12);
    let mut dense = Law::within("focus_matches_dense", TOL);

    for _ in 0..cfg.trials {
        let (n, m) = random_shape(max_wires, rng);
        let lens = random_lens(n, m, rng);
        let f = Gate::random_unitary(m, 2, rng);
        let g = Gate::random_unitary(m, 2, rng);
        let s = DPState::random(n, 2, rng)?;

        let fg = f.compose(&g)?;
        let lhs = cfg.focus(&lens, &fg, &s)?;
        let rhs = cfg.focus(&lens, &f, &cfg.focus(&lens, &g, &s)?)?;
        comp.deviation(lhs.max_abs_diff(&rhs)?);

        let p = rng.gen_range(1..=m);
        let inner = random_lens(m, p, rng);
        let h = Gate::random_unitary(p, 2, rng);
        let lhs = cfg.focus(&lens.compose(&inner)?, &h, &s)?;
        let rhs = cfg.focus(&lens, &focus_gate(&inner, &h)?, &s)?;
        nested.deviation(lhs.max_abs_diff(&rhs)?);

        if n >= 2 {
            let mut wires: Vec<usize> = (0..n).collect();
            wires.shuffle(rng);
            let a = rng.gen_range(1..n).min(3);
            let b = rng.gen_range(1..=(n - a).min(3));
            let la = Lens::new(n, wires[..a].to_vec())?;
            let lb = Lens::new(n, wires[a..a + b].to_vec())?;
            let ga = Gate::random_unitary(a, 2, rng);
            let gb = Gate::random_unitary(b, 2, rng);
            let ab = cfg.focus(&la, &ga, &cfg.focus(&lb, &gb, &s)?)?;
            let ba = cfg.focus(&lb, &gb, &cfg.focus(&la, &ga, &s)?)?;
            commute.deviation(ab.max_abs_diff(&ba)?);
        }

        let t = DPState::random(n, 2, rng)?;
        let before = s.inner(&t)?;
        let after = cfg
            .focus(&lens, &f, &s)?
            .inner(&cfg.focus(&lens, &f, &t)?)?;
        unitary.deviation((after - before).norm());

        if f.unitarity_deviation()? <= 1e-12 && g.unitarity_deviation()? <= 1e-12 {
            unitary_comp.deviation(fg.unitarity_deviation()?);
        }

        let v = Tuple::from_index(rng.gen_range(0..1usize << n), n, 2);
        let via_ket = cfg.focus(&lens, &f, &DPState::ket(&v, 2)?)?;
        dpbasis.deviation(via_ket.max_abs_diff(&focus_dpbasis_step(&lens, &f, &v)?)?);

        reference.deviation(lhs_vs_reference(cfg, &lens, &f, &s)?);

        if cfg.oracle {
            let op = build_full_matrix_guarded(&lens, &f, oracle::DEFAULT_MAX_WIRES)?;
            dense.deviation(op.apply(&s)?.max_abs_diff(&cfg.focus(&lens, &f, &s)?)?);
        }
    }

    let mut laws = vec![
        comp,
        nested,
        commute,
        unitary,
        unitary_comp,
        dpbasis,
        reference,
    ];
    if cfg.oracle {
        laws.push(dense);
    }
    Ok(laws.into_iter().map(Law::finish).collect())
}

fn lhs_vs_reference(cfg: &Config, lens: &Lens, g: &Gate, s: &DPState) -> Result<f64> {
    cfg.focus(lens, g, s)?
        .max_abs_diff(&focus_apply_reference(lens, g, s)?)
}

fn unitarity(cfg: &Config, max_wires: usize, rng: &mut ChaCha8Rng) -> Result<Vec<LawResult>> {
    let mut builtins = Law::within("builtin_gates", 1e-12);
    for g in [
        Gate::hadamard(),
        Gate::cnot(),
        Gate::toffoli(),
        Gate::swap(),
        Gate::identity(2, 2),
        Gate::identity(1, 3),
    ] {
        builtins.deviation(g.unitarity_deviation()?);
    }

    let mut random = Law::within("random_unitaries", 1e-10);
    for _ in 0..cfg.trials {
        let k = rng.gen_range(0..=max_wires.max(1));
        let q = if rng.gen_bool(0.25) { 3 } else { 2 };
        let k = if q == 3 { k.min(2) } else { k };
        random.deviation(Gate::random_unitary(k, q, rng).unitarity_deviation()?);
    }

    let mut perms = Law::exact("permutation_matrices");
    for n in 0..=max_wires.min(5) {
        let mut perm: Vec<usize> = (0..n).collect();
        for _ in 0..4 {
            perm.shuffle(rng);
            let p = perm_matrix(n, 2, &perm)?;
            let pt = Matrix::from_gate(&p.to_gate()?.adjoint());
            let exact_01 = p
                .mat
                .data
                .iter()
                .all(|a| *a == C64::new(0.0, 0.0) || *a == C64::new(1.0, 0.0));
            perms.holds(exact_01 && pt.mul(&p.mat) == Matrix::identity(p.mat.rows));
        }
    }

    let mut circuits = Law::within("example_circuits", 1e-10);
    for c in [
        bit_flip_enc(),
        bit_flip_dec(),
        hadamard3(),
        sign_flip_enc(),
        sign_flip_dec(),
        ghz(3),
        rev_circuit(5),
    ] {
        circuits.deviation(c.to_gate()?.unitarity_deviation()?);
    }
    if cfg.oracle {
        circuits.deviation(shor_code().to_gate()?.unitarity_deviation()?);
    }

    Ok([builtins, random, perms, circuits]
        .into_iter()
        .map(Law::finish)
        .collect())
}

fn oracle_laws(cfg: &Config, max_wires: usize, rng: &mut ChaCha8Rng) -> Result<Vec<LawResult>> {
    let mut equiv = Law::within("dense_equals_focus", 1e-10);
    for _ in 0..cfg.trials {
        let (n, m) = random_shape(max_wires, rng);
        let lens = random_lens(n, m, rng);
        let gate = Gate::random_unitary(m, 2, rng);
        let op = build_full_matrix_guarded(&lens, &gate, oracle::DEFAULT_MAX_WIRES.max(max_wires))?;
        let s = DPState::random(n, 2, rng)?;
        equiv.deviation(op.apply(&s)?.max_abs_diff(&cfg.focus(&lens, &gate, &s)?)?);
    }

    let mut builtins = Law::within("builtin_all_lenses", 1e-12);
    let mut routes = Law::within("dense_equals_columnwise", 1e-12);
    let gates = [
        Gate::hadamard(),
        Gate::cnot(),
        Gate::swap(),
        Gate::toffoli(),
    ];
    for n in 1..=max_wires.min(4) {
        for gate in &gates {
            for lens in Lens::all_of_size(n, gate.m()) {
                let op = build_full_matrix_guarded(&lens, gate, oracle::DEFAULT_MAX_WIRES)?;
                let s = DPState::random(n, 2, rng)?;
                builtins.deviation(op.apply(&s)?.max_abs_diff(&cfg.focus(&lens, gate, &s)?)?);
                routes.deviation(op.to_gate()?.max_entry_diff(&focus_gate(&lens, gate)?)?);
            }
        }
    }

    let mut inverse = Law::exact("perm_self_inverse");
    for n in 0..=max_wires.min(5) {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let mut inv = vec![0; n];
        for (k, &p) in perm.iter().enumerate() {
            inv[p] = k;
        }
        let prod = perm_matrix(n, 2, &perm)?
            .mat
            .mul(&perm_matrix(n, 2, &inv)?.mat);
        inverse.holds(prod == Matrix::identity(1 << n));
    }

    Ok([equiv, builtins, routes, inverse]
        .into_iter()
        .map(Law::finish)
        .collect())
}

/// H on each wire and CNOT on each ascending pair of an `n`-wire register.
pub fn monoid_pool(n: usize) -> Vec<FocEndo> {
    let singles =
        (0..n).map(|i| FocEndo::new(&Lens::single(n, i).unwrap(), &Gate::hadamard()).unwrap());
    let pairs = (0..n).flat_map(|i| {
        (i + 1..n).map(move |j| FocEndo::new(&Lens::pair(n, i, j).unwrap(), &Gate::cnot()).unwrap())
    });
    singles.chain(pairs).collect()
}

/// Pairwise-disjoint family on `n` wires with supports of size 1 to 3, some
/// wires left untouched.
pub fn random_disjoint_family<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Vec<FocEndo>> {
    let mut wires: Vec<usize> = (0..n).collect();
    wires.shuffle(rng);
    let mut family = Vec::new();
    let mut rest = &wires[..];
    while !rest.is_empty() {
        let k = rng.gen_range(1..=rest.len().min(3));
        let (support, tail) = rest.split_at(k);
        rest = tail;
        if rng.gen_bool(0.2) {
            continue;
        }
        let lens = Lens::new(n, support.to_vec())?;
        family.push(FocEndo::new(&lens, &Gate::random_unitary(k, 2, rng))?);
    }
    family.shuffle(rng);
    Ok(family)
}

fn monoid_laws(cfg: &Config, max_wires: usize, rng: &mut ChaCha8Rng) -> Result<Vec<LawResult>> {
    const TOL: f64 = 1e-12;
    let pool = monoid_pool(4);
    let mut comm = Law::within("comp_fendo_comm", TOL);
    let mut assoc = Law::within("comp_fendo_assoc", TOL);
    let mut unit = Law::exact("unit_law");
    let mut absorb = Law::exact("err_absorbs");

    let dev = |a: &FocEndo, b: &FocEndo| -> Result<f64> {
        Ok(match (a.is_err(), b.is_err()) {
            (true, true) => 0.0,
            (false, false) if a.lens() == b.lens() => a.gate().max_entry_diff(&b.gate())?,
            _ => f64::INFINITY,
        })
    };

    let e = FocEndo::unit(4, 2);
    let z = FocEndo::err(4, 2);
    for f in &pool {
        unit.holds(e.compose(f)? == *f && f.compose(&e)? == *f);
        absorb.holds(z.compose(f)?.is_err() && f.compose(&z)?.is_err());
        for g in &pool {
            let fg = f.compose(g)?;
            comm.deviation(dev(&fg, &g.compose(f)?)?);
            for h in &pool {
                assoc.deviation(dev(&fg.compose(h)?, &f.compose(&g.compose(h)?)?)?);
            }
        }
    }

    let mut disjoint = Law::within("compn_mor_disjoint", 1e-10);
    for _ in 0..cfg.trials {
        let n = rng.gen_range(1..=max_wires.max(1));
        let family = random_disjoint_family(n, rng)?;
        let keep: Vec<bool> = (0..family.len()).map(|_| rng.gen_bool(0.8)).collect();
        let seq = compn_mor(n, &family, |i| keep[i])?;
        let par = compn_fendo(n, 2, &family, |i| keep[i])?;
        let s = DPState::random(n, 2, rng)?;
        disjoint.deviation(seq.apply(&s)?.max_abs_diff(&par.apply(&s)?)?);
    }

    Ok([comm, assoc, unit, absorb, disjoint]
        .into_iter()
        .map(Law::finish)
        .collect())
}

fn example_laws(cfg: &Config, max_wires: usize, rng: &mut ChaCha8Rng) -> Result<Vec<LawResult>> {
    let mut shor = Law::within("shor_code_id", 1e-9);
    let code = shor_code();
    for i in 0..2 {
        let mut bits = [0; 9];
        bits[0] = i;
        let k = DPState::qubits(&bits)?;
        shor.deviation(run_circuit(cfg, &code, &k)?.max_abs_diff(&k)?);
    }

    let mut bit_flip = Law::within("bit_flip_enc_ok", 1e-12);
    let mut bit_toffoli = Law::within("bit_flip_toffoli", 1e-10);
    let toffoli_120 = Lens::new(3, vec![1, 2, 0])?;
    for v in Tuple::all(3, 2) {
        let [i, j, k] = v.entries()[..] else {
            unreachable!()
        };
        let out = run_circuit(cfg, &bit_flip_enc(), &DPState::ket(&v, 2)?)?;
        bit_flip.deviation(out.max_abs_diff(&DPState::qubits(&[i, i ^ j, i ^ k])?)?);
        let ket = DPState::ket(&v, 2)?;
        let round = run_circuit(
            cfg,
            &bit_flip_dec(),
            &run_circuit(cfg, &bit_flip_enc(), &ket)?,
        )?;
        bit_toffoli.deviation(round.max_abs_diff(&cfg.focus(
            &toffoli_120,
            &Gate::toffoli(),
            &ket,
        )?)?);
    }

    let mut sign_toffoli = Law::within("sign_flip_toffoli", 1e-9);
    let mut hadamard_k = Law::within("hadamardK", 1e-10);
    for _ in 0..cfg.trials.min(50) {
        let s = DPState::random(3, 2, rng)?;
        let round = run_circuit(
            cfg,
            &sign_flip_dec(),
            &run_circuit(cfg, &sign_flip_enc(), &s)?,
        )?;
        sign_toffoli.deviation(round.max_abs_diff(&cfg.focus(
            &toffoli_120,
            &Gate::toffoli(),
            &s,
        )?)?);
        let hh = run_circuit(cfg, &hadamard3(), &run_circuit(cfg, &hadamard3(), &s)?)?;
        hadamard_k.deviation(hh.max_abs_diff(&s)?);
    }

    let mut ghz_ok = Law::within("ghz_ok", 1e-9);
    for wires in 1..=max_wires.max(1) {
        let out = run_circuit(
            cfg,
            &ghz(wires - 1),
            &DPState::ket(&Tuple::zeros(wires), 2)?,
        )?;
        ghz_ok.deviation(out.max_abs_diff(&ghz_state(wires)?)?);
    }

    let mut rev_basis = Law::within("rev_circuit_basis", 1e-9);
    for n in 0..=max_wires.min(8) {
        let c = rev_circuit(n);
        for v in Tuple::all(n, 2) {
            let mut rev = v.entries().to_vec();
            rev.reverse();
            let out = run_circuit(cfg, &c, &DPState::ket(&v, 2)?)?;
            rev_basis.deviation(out.max_abs_diff(&DPState::qubits(&rev)?)?);
        }
    }

    let mut rev_proj = Law::within("rev_circuit_proj", 1e-10);
    for _ in 0..cfg.trials.min(100) {
        let n = rng.gen_range(1..=max_wires.clamp(1, 6));
        let s = DPState::random(n, 2, rng)?;
        let out = run_circuit(cfg, &rev_circuit(n), &s)?;
        for i in 0..n {
            let before = proj(&Lens::single(n, i)?, &s)?;
            let after = proj(&Lens::single(n, n - 1 - i)?, &out)?;
            let d = before
                .iter()
                .zip(&after)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            rev_proj.deviation(d);
        }
    }

    let mut laws = vec![
        shor,
        bit_flip,
        bit_toffoli,
        sign_toffoli,
        hadamard_k,
        ghz_ok,
        rev_basis,
        rev_proj,
    ];
    if cfg.oracle {
        let mut dense = Law::within("circuits_match_dense", 1e-10);
        for c in [bit_flip_enc(), sign_flip_enc(), ghz(3), rev_circuit(5)] {
            let s = DPState::random(c.n(), 2, rng)?;
            let gate = c.to_gate()?;
            dense.deviation(gate.apply(&s)?.max_abs_diff(&run_circuit(cfg, &c, &s)?)?);
        }
        laws.push(dense);
    }
    Ok(laws.into_iter().map(Law::finish).collect())
}

fn run_circuit(cfg: &Config, c: &Circuit, s: &DPState) -> Result<DPState> {
    if cfg.parallel {
        c.run_parallel(s)
    } else {
        c.run(s)
    }
}
