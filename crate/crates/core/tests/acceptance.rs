//! End-to-end acceptance checks, one line per criterion.
//!
//! Runs without the libtest harness so the lines always appear in
//! `cargo test` output. Exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use lensfocus::check::{self, random_lens, Config, Report, Scope};
use lensfocus::circuits::{bit_flip_enc, ghz, ghz_state, proj, rev_circuit, shor_code};
use lensfocus::focus::{focus_apply, focus_apply_in_place};
use lensfocus::oracle::build_full_matrix;
use lensfocus::{DPState, Gate, Lens, Tuple};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20240917;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn within(dev: f64, tol: f64) -> bool {
    dev <= tol
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn shor_identity() -> Outcome {
    const TOL: f64 = 1e-9;
    const LIMIT: Duration = Duration::from_secs(1);
    let (devs, took) = timed(|| {
        let code = shor_code();
        (0..2)
            .map(|i| {
                let mut bits = [0; 9];
                bits[0] = i;
                let k = DPState::qubits(&bits).unwrap();
                assert_eq!(k.len(), 512);
                code.run(&k).unwrap().max_abs_diff(&k).unwrap()
            })
            .collect::<Vec<_>>()
    });
    let dev = devs.iter().cloned().fold(0.0, f64::max);
    Outcome {
        passed: within(dev, TOL) && took < LIMIT,
        detail: format!(
            "i in {{0,1}}, max dev {dev:.2e} (tol {TOL:.0e}), {took:.2?} (limit {LIMIT:?})"
        ),
    }
}

fn ghz_correctness() -> Outcome {
    const TOL: f64 = 1e-9;
    const LIMIT: Duration = Duration::from_secs(2);
    let mut dev = 0.0f64;
    let mut last = Duration::ZERO;
    for wires in 1..=16 {
        let (d, took) = timed(|| {
            let out = ghz(wires - 1)
                .run(&DPState::ket(&Tuple::zeros(wires), 2).unwrap())
                .unwrap();
            out.max_abs_diff(&ghz_state(wires).unwrap()).unwrap()
        });
        dev = dev.max(d);
        last = took;
    }
    Outcome {
        passed: within(dev, TOL) && last < LIMIT,
        detail: format!("1..=16 wires, max dev {dev:.2e} (tol {TOL:.0e}), 16 wires in {last:.2?} (limit {LIMIT:?})"),
    }
}

fn bit_flip_lemma() -> Outcome {
    const TOL: f64 = 1e-12;
    let c = bit_flip_enc();
    let dev = Tuple::all(3, 2)
        .map(|v| {
            let [i, j, k] = v.entries()[..] else {
                unreachable!()
            };
            let out = c.run(&DPState::ket(&v, 2).unwrap()).unwrap();
            out.max_abs_diff(&DPState::qubits(&[i, i ^ j, i ^ k]).unwrap())
                .unwrap()
        })
        .fold(0.0, f64::max);
    Outcome {
        passed: within(dev, TOL),
        detail: format!("8 basis inputs, max dev {dev:.2e} (tol {TOL:.0e})"),
    }
}

fn oracle_equivalence() -> Outcome {
    const TOL: f64 = 1e-10;
    const TRIALS: usize = 200;
    const LIMIT: Duration = Duration::from_secs(30);
    let (dev, took) = timed(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let mut worst = 0.0f64;
        for _ in 0..TRIALS {
            let n = rng.gen_range(1..=6);
            let m = rng.gen_range(1..=n.min(3));
            let lens = random_lens(n, m, &mut rng);
            let gate = Gate::random_unitary(m, 2, &mut rng);
            let dense = build_full_matrix(&lens, &gate).unwrap();
            let s = DPState::random(n, 2, &mut rng).unwrap();
            let d = dense
                .apply(&s)
                .unwrap()
                .max_abs_diff(&focus_apply(&lens, &gate, &s).unwrap())
                .unwrap();
            worst = worst.max(d);
        }
        worst
    });
    Outcome {
        passed: within(dev, TOL) && took < LIMIT,
        detail: format!("{TRIALS} trials n<=6 m<=3, max dev {dev:.2e} (tol {TOL:.0e}), {took:.2?} (limit {LIMIT:?})"),
    }
}

/// Runs a suite and requires each named law to be present, nonempty,
/// passing, and within `tol` if numeric.
fn suite(
    scope: Scope,
    cfg: &Config,
    laws: &[(&str, Option<f64>)],
    limit: Option<Duration>,
) -> Outcome {
    let (report, took): (Report, Duration) = timed(|| check::run(scope, cfg).unwrap());
    let mut problems = Vec::new();
    let mut dev = 0.0f64;
    let mut cases = 0;
    for (name, tol) in laws {
        match report.law(name) {
            None => problems.push(format!("{name} missing")),
            Some(law) => {
                cases += law.cases;
                if !law.passed() {
                    problems.push(format!("{name} failed {}/{}", law.failures, law.cases));
                }
                if let (Some(tol), Some(d)) = (tol, law.max_deviation) {
                    dev = dev.max(d);
                    if !within(d, *tol) {
                        problems.push(format!("{name} dev {d:.2e} > {tol:.0e}"));
                    }
                }
            }
        }
    }
    if let Some(limit) = limit {
        if took >= limit {
            problems.push(format!("took {took:.2?}, limit {limit:?}"));
        }
    }
    let mut detail = format!(
        "{} laws, {cases} cases, max dev {dev:.2e}, {took:.2?}",
        laws.len()
    );
    if !problems.is_empty() {
        detail.push_str(&format!(" [{}]", problems.join("; ")));
    }
    Outcome {
        passed: problems.is_empty(),
        detail,
    }
}

fn lens_laws() -> Outcome {
    let cfg = Config {
        seed: SEED,
        max_wires: Some(5),
        ..Config::default()
    };
    let laws = [
        "merge_extract",
        "extract_merge",
        "extractC_merge",
        "tnth_merge",
        "tnth_mergeC",
        "tnth_extract",
        "mem_lensC",
        "basis_perm_factorization",
    ]
    .map(|name| (name, None));
    suite(Scope::LensLaws, &cfg, &laws, Some(Duration::from_secs(60)))
}

fn focus_algebra() -> Outcome {
    let cfg = Config {
        seed: SEED,
        max_wires: Some(6),
        trials: 200,
        ..Config::default()
    };
    let laws = [
        "focus_comp",
        "focusM",
        "focusC",
        "unitary_focus",
        "unitary_comp",
    ]
    .map(|name| (name, Some(1e-10)));
    suite(Scope::FocusLaws, &cfg, &laws, None)
}

fn monoid_laws() -> Outcome {
    let cfg = Config {
        seed: SEED,
        max_wires: Some(6),
        trials: 200,
        ..Config::default()
    };
    let laws = [
        ("comp_fendo_comm", Some(1e-12)),
        ("comp_fendo_assoc", Some(1e-12)),
        ("compn_mor_disjoint", Some(1e-10)),
    ];
    suite(Scope::Monoid, &cfg, &laws, None)
}

fn reversal() -> Outcome {
    const BASIS_TOL: f64 = 1e-9;
    const PROJ_TOL: f64 = 1e-10;
    let mut basis_dev = 0.0f64;
    for n in 0..=8 {
        let c = rev_circuit(n);
        for v in Tuple::all(n, 2) {
            let mut rev = v.entries().to_vec();
            rev.reverse();
            let out = c.run(&DPState::ket(&v, 2).unwrap()).unwrap();
            basis_dev = basis_dev.max(out.max_abs_diff(&DPState::qubits(&rev).unwrap()).unwrap());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut proj_dev = 0.0f64;
    for n in 1..=6 {
        for _ in 0..20 {
            let s = DPState::random(n, 2, &mut rng).unwrap();
            let out = rev_circuit(n).run(&s).unwrap();
            for i in 0..n {
                let before = proj(&Lens::single(n, i).unwrap(), &s).unwrap();
                let after = proj(&Lens::single(n, n - 1 - i).unwrap(), &out).unwrap();
                for (a, b) in before.iter().zip(&after) {
                    proj_dev = proj_dev.max((a - b).abs());
                }
            }
        }
    }
    Outcome {
        passed: within(basis_dev, BASIS_TOL) && within(proj_dev, PROJ_TOL),
        detail: format!(
            "basis n<=8 max dev {basis_dev:.2e} (tol {BASIS_TOL:.0e}), proj n<=6 max dev {proj_dev:.2e} (tol {PROJ_TOL:.0e})"
        ),
    }
}

fn performance() -> Outcome {
    const LIMIT: Duration = Duration::from_millis(200);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let gate = Gate::random_unitary(2, 2, &mut rng);
    let lens = Lens::new(20, vec![17, 2]).unwrap();
    let mut s = DPState::random(20, 2, &mut rng).unwrap();
    let runs: Vec<Duration> = (0..3)
        .map(|_| timed(|| focus_apply_in_place(&lens, &gate, &mut s).unwrap()).1)
        .collect();
    let worst = runs.iter().max().copied().unwrap();
    let norm_ok = (s.norm() - 1.0).abs() < 1e-9;
    Outcome {
        passed: worst < LIMIT && norm_ok,
        detail: format!("2-wire gate on 20 wires, slowest of 3 runs {worst:.2?} (limit {LIMIT:?})"),
    }
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("shor code identity", shor_identity),
        ("ghz correctness", ghz_correctness),
        ("bit-flip lemma", bit_flip_lemma),
        ("oracle equivalence", oracle_equivalence),
        ("lens laws", lens_laws),
        ("focus algebra", focus_algebra),
        ("monoid laws", monoid_laws),
        ("reversal", reversal),
        ("performance", performance),
    ];
    println!("acceptance (seed {SEED})");
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        let status = if outcome.passed { "PASS" } else { "FAIL" };
        println!("criterion {} {status} {name}: {}", k + 1, outcome.detail);
        failed += usize::from(!outcome.passed);
    }
    println!(
        "{}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
