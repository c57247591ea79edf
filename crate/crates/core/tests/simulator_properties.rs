use num_complex::Complex64;
use proptest::prelude::*;
use qas_core::qsim::*;

fn gate_strategy(n: usize) -> impl Strategy<Value = GateAction> {
    let single = (0..6usize, 0..n, -3.2f64..3.2).prop_map(|(k, q, theta)| {
        let kind = match k {
            0 => GateKind::QUARTER_PHASE,
            1 => GateKind::PhaseRot(theta),
            2 => GateKind::PauliX,
            3 => GateKind::PauliY,
            4 => GateKind::PauliZ,
            _ => GateKind::Hadamard,
        };
        GateAction::single(kind, q)
    });
    let cnot = (0..n, 1..n).prop_map(move |(c, off)| GateAction::cnot(c, (c + off) % n).unwrap());
    prop_oneof![3 => single, 1 => cnot]
}

fn circuit_strategy() -> impl Strategy<Value = (usize, Vec<GateAction>)> {
    (2usize..=3).prop_flat_map(|n| (Just(n), prop::collection::vec(gate_strategy(n), 0..25)))
}

fn random_pure(n: usize) -> impl Strategy<Value = PureState> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n).prop_filter_map("zero vector", |v| {
        let norm = v.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
        (norm > 1e-3).then(|| {
            PureState::from_amplitudes(v.into_iter().map(|(a, b)| Complex64::new(a / norm, b / norm)).collect())
                .unwrap()
        })
    })
}

/// Convex mixture of random pure states; PSD and unit trace by construction.
fn random_mixed(n: usize) -> impl Strategy<Value = MixedState> {
    prop::collection::vec((random_pure(n), 0.05f64..1.0), 1..4).prop_map(move |parts| {
        let total: f64 = parts.iter().map(|(_, w)| w).sum();
        let dim = 1 << n;
        let mut rho = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (psi, w) in &parts {
            let m = MixedState::from_pure(psi);
            for (r, x) in rho.iter_mut().zip(m.matrix()) {
                *r += x * (w / total);
            }
        }
        MixedState::from_matrix(n, rho).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn gate_sequences_preserve_norm_and_trace((n, gates) in circuit_strategy(), p in 0.0f64..0.2) {
        let mut pure = PureState::zero(n);
        let mut mixed = MixedState::zero(n);
        let noise = NoiseSpec::new(p, 0.0).unwrap();
        for g in &gates {
            pure.apply_in_place(g).unwrap();
            apply_gate_mixed_in_place(&mut mixed, g, &noise).unwrap();
        }
        prop_assert!((pure.norm_sqr() - 1.0).abs() < 1e-9);
        let tr = mixed.trace();
        prop_assert!((tr.re - 1.0).abs() < 1e-9 && tr.im.abs() < 1e-9);
        prop_assert!(mixed.hermiticity_error() < 1e-10);
    }

    #[test]
    fn zero_noise_mixed_path_agrees_with_pure((n, gates) in circuit_strategy(), target in (2usize..=3).prop_flat_map(random_pure)) {
        let mut pure = PureState::zero(n);
        let mut mixed = MixedState::zero(n);
        for g in &gates {
            pure.apply_in_place(g).unwrap();
            apply_gate_mixed_in_place(&mut mixed, g, &NoiseSpec::NONE).unwrap();
        }
        for q in 0..n {
            for axis in Pauli::AXES {
                let a = pure.pauli_expectation(q, axis).unwrap();
                let b = mixed.pauli_expectation(q, axis).unwrap();
                prop_assert!((a - b).abs() < 1e-9);
            }
        }
        if target.n_qubits() == n {
            let fp = fidelity_pure(&pure, &target).unwrap();
            let fm = fidelity_mixed(&mixed, &target).unwrap();
            prop_assert!((fp - fm).abs() < 1e-9);
        }
    }

    #[test]
    fn pure_fidelity_is_bounded_and_symmetric(a in random_pure(2), b in random_pure(2)) {
        let ab = fidelity_pure(&a, &b).unwrap();
        prop_assert!((0.0..=1.0).contains(&ab));
        prop_assert!((ab - fidelity_pure(&b, &a).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn mixed_fidelity_is_bounded(rho in random_mixed(2), psi in random_pure(2)) {
        let f = fidelity_mixed(&rho, &psi).unwrap();
        prop_assert!((0.0..=1.0).contains(&f));
    }

    #[test]
    fn tomography_round_trip(rho in (1usize..=3).prop_flat_map(random_mixed)) {
        let e = pauli_expectations(&rho).unwrap();
        prop_assert_eq!(e.len(), (1 << (2 * rho.n_qubits())) - 1);
        let back = tomography_reconstruct(&e, rho.n_qubits()).unwrap();
        for (a, b) in back.matrix().iter().zip(rho.matrix()) {
            prop_assert!((a - b).norm() < 1e-9);
        }
    }

    #[test]
    fn depolarizing_keeps_states_physical(rho in random_mixed(2), q in 0usize..2, p in 0.0f64..=1.0) {
        let out = depolarize(&rho, q, p).unwrap();
        prop_assert!((out.trace().re - 1.0).abs() < 1e-12);
        prop_assert!(out.hermiticity_error() < 1e-12);
        // Diagonal of a PSD matrix stays non-negative.
        for i in 0..4 {
            prop_assert!(out.get(i, i).re > -1e-12);
        }
    }
}

#[test]
fn noisy_gates_keep_eigenvalues_non_negative() {
    // Eigenvalues of a 4x4 Hermitian matrix via the characteristic bound:
    // ρ is PSD iff ⟨v|ρ|v⟩ ≥ 0 for all v; probe with many fixed random vectors.
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let noise = NoiseSpec::uniform(0.05).unwrap();
    let actions = qas_core::env::ActionSet::build(2).unwrap();
    let mut rho = MixedState::zero(2);
    for _ in 0..200 {
        let g = actions.get(rng.random_range(0..actions.len())).unwrap();
        apply_gate_mixed_in_place(&mut rho, g, &noise).unwrap();
        for _ in 0..20 {
            let v: Vec<Complex64> = (0..4)
                .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            let mut q = Complex64::new(0.0, 0.0);
            for i in 0..4 {
                for j in 0..4 {
                    q += v[i].conj() * rho.get(i, j) * v[j];
                }
            }
            assert!(q.re >= -1e-9);
        }
    }
}
