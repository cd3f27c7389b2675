use lensfocus::file::{emit_circuit, parse_circuit_str};
use lensfocus::focus::{focus_apply, focus_apply_parallel, focus_apply_reference};
use lensfocus::{Circuit, DPState, FocEndo, Gate, Lens, Tuple};
use proptest::prelude::*;
use proptest::sample::subsequence;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A lens into `n` wires, entries in arbitrary order.
fn lens_into(n: usize) -> impl Strategy<Value = Lens> {
    (0..=n)
        .prop_flat_map(move |m| subsequence((0..n).collect::<Vec<_>>(), m))
        .prop_shuffle()
        .prop_map(move |idx| Lens::new(n, idx).unwrap())
}

fn lens() -> impl Strategy<Value = Lens> {
    (0usize..=8).prop_flat_map(lens_into)
}

fn tuple(arity: usize, q: usize) -> impl Strategy<Value = Tuple> {
    proptest::collection::vec(0..q, arity).prop_map(Tuple::new)
}

/// Nonempty lens together with a q-ary state on its codomain and a seed for
/// drawing the gate.
fn focus_case() -> impl Strategy<Value = (Lens, usize, u64)> {
    (1usize..=7, 2usize..=3).prop_flat_map(|(n, q)| {
        let n = if q == 3 { n.min(5) } else { n };
        let l = (1..=n.min(3))
            .prop_flat_map(move |m| subsequence((0..n).collect::<Vec<_>>(), m))
            .prop_shuffle()
            .prop_map(move |idx| Lens::new(n, idx).unwrap());
        (l, Just(q), any::<u64>())
    })
}

proptest! {
    #[test]
    fn get_put(l in lens(), seed in any::<u64>()) {
        let t = Tuple::from_index(seed as usize % (1usize << l.n()), l.n(), 2);
        let c = l.complement();
        prop_assert_eq!(l.merge(&l.extract(&t).unwrap(), &c.extract(&t).unwrap()).unwrap(), t);
    }

    #[test]
    fn put_get((l, v, c) in lens().prop_flat_map(|l| {
        let (m, k) = (l.m(), l.n() - l.m());
        (Just(l), tuple(m, 3), tuple(k, 3))
    })) {
        let t = l.merge(&v, &c).unwrap();
        prop_assert_eq!(l.extract(&t).unwrap(), v);
        prop_assert_eq!(l.complement().extract(&t).unwrap(), c);
    }

    #[test]
    fn complement_is_sorted_and_disjoint(l in lens()) {
        let c = l.complement();
        prop_assert!(c.is_sorted());
        prop_assert_eq!(c.m() + l.m(), l.n());
        prop_assert!(l.is_disjoint(&c).unwrap());
    }

    #[test]
    fn factorization(l in lens()) {
        let (basis, perm) = l.factor();
        prop_assert!(basis.is_sorted());
        prop_assert_eq!(basis.compose(&perm).unwrap(), l);
    }

    #[test]
    fn compose_is_associative((a, b, c) in lens().prop_flat_map(|a| {
        let m = a.m();
        (Just(a), lens_into(m))
    }).prop_flat_map(|(a, b)| {
        let p = b.m();
        (Just(a), Just(b), lens_into(p))
    })) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn fast_path_matches_reference((l, q, seed) in focus_case()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = Gate::random_unitary(l.m(), q, &mut rng);
        let s = DPState::random(l.n(), q, &mut rng).unwrap();
        let fast = focus_apply(&l, &g, &s).unwrap();
        let slow = focus_apply_reference(&l, &g, &s).unwrap();
        prop_assert!(fast.max_abs_diff(&slow).unwrap() <= 1e-12);
        let par = focus_apply_parallel(&l, &g, &s).unwrap();
        prop_assert!(par.max_abs_diff(&fast).unwrap() <= 1e-12);
        prop_assert!((fast.norm() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn state_text_round_trips(seed in any::<u64>(), n in 0usize..=6, q in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = DPState::random(n, q, &mut rng).unwrap();
        prop_assert_eq!(DPState::parse_text(&s.to_text(0.0), n, q).unwrap(), s);
    }

    #[test]
    fn circuit_files_round_trip(steps in proptest::collection::vec(
        (prop_oneof![Just("hadamard"), Just("cnot"), Just("toffoli"), Just("swap")], any::<u64>()),
        0..12,
    )) {
        let n = 5;
        let mut c = Circuit::qubits(n);
        for (gate, seed) in steps {
            let arity = match gate { "hadamard" => 1, "toffoli" => 3, _ => 2 };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            c.push(lensfocus::check::random_lens(n, arity, &mut rng), gate).unwrap();
        }
        prop_assert_eq!(parse_circuit_str(&emit_circuit(&c)).unwrap(), c);
    }

    #[test]
    fn disjoint_fendos_commute(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fam = lensfocus::check::random_disjoint_family(n, &mut rng).unwrap();
        let fwd = fam.iter().try_fold(FocEndo::unit(n, 2), |acc, f| acc.compose(f)).unwrap();
        let rev = fam.iter().rev().try_fold(FocEndo::unit(n, 2), |acc, f| acc.compose(f)).unwrap();
        prop_assert!(!fwd.is_err());
        prop_assert!(fwd.approx_eq(&rev, 1e-12));
    }
}
