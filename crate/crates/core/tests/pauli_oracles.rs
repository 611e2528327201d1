mod common;

use common::*;
use num_complex::Complex64;
use proptest::prelude::*;
use trotter_core::linalg::spectral_norm_of;
use trotter_core::pauli::{
    commutator, commutator_bound, multiply, nested_commutator_sums, to_dense_matrix, PauliString,
};

fn pauli_strategy(n: usize) -> impl Strategy<Value = PauliString> {
    proptest::collection::vec(prop_oneof![Just('I'), Just('X'), Just('Y'), Just('Z')], n)
        .prop_map(|chars| PauliString::parse(&chars.into_iter().collect::<String>()).unwrap())
}

fn triple(max_n: usize) -> impl Strategy<Value = (PauliString, PauliString, PauliString)> {
    (1..=max_n).prop_flat_map(|n| (pauli_strategy(n), pauli_strategy(n), pauli_strategy(n)))
}

#[test]
fn dense_matrix_matches_kronecker_products() {
    for seed in 0..5 {
        let h = weighted_sum(3, 9, seed);
        let dense = to_dense_matrix(&h).unwrap();
        assert!(max_diff(&dense, &kron_sum(&h)) < 1e-12, "seed {seed}");
    }
}

#[test]
fn single_strings_match_kronecker_products() {
    for label in ["X", "Y", "Z", "XY", "YZ", "ZIX", "IYXZ"] {
        let h = trotter_core::pauli::PauliSum::from_labels(&[(label, 1.0)]).unwrap();
        let p = PauliString::parse(label).unwrap();
        assert!(max_diff(&to_dense_matrix(&h).unwrap(), &kron_pauli(&p)) < 1e-15, "{label}");
    }
}

#[test]
fn nested_sums_bound_the_dense_commutators() {
    for seed in 0..4 {
        let n = 2 + (seed as usize % 3);
        let h = weighted_sum(n, 2 * n + 1, seed);
        let mats: Vec<M> = h
            .terms()
            .iter()
            .map(|(a, p)| kron_pauli(p) * c(*a, 0.0))
            .collect();
        let sums = nested_commutator_sums(&h);
        assert_eq!(sums.len(), h.len() - 1);
        let comm = |a: &M, b: &M| a * b - b * a;
        for (b, s) in sums.iter().enumerate() {
            let tail = mats[b + 1..].iter().fold(M::zeros(1 << n, 1 << n), |acc, m| acc + m);
            let inner = comm(&mats[b], &tail);
            let triple_dense = comm(&inner, &tail);
            let double_dense = comm(&inner, &mats[b]);
            let triple_acc = s.triple.to_dense().unwrap();
            let double_acc = s.double.to_dense().unwrap();
            assert!(max_diff(&triple_acc, &triple_dense) < 1e-10);
            assert!(max_diff(&double_acc, &double_dense) < 1e-10);
            assert!(s.triple.l1_norm() + 1e-12 >= spectral_norm_of(&triple_dense));
            assert!(s.double.l1_norm() + 1e-12 >= spectral_norm_of(&double_dense));
        }
        assert!(commutator_bound(&h) >= 0.0);
    }
}

proptest! {
    #[test]
    fn product_matches_dense((a, b, _) in triple(4)) {
        let ab = multiply(&a, &b).unwrap();
        let dense = kron_pauli(&ab.pauli) * ab.coefficient;
        prop_assert!(max_diff(&dense, &(kron_pauli(&a) * kron_pauli(&b))) < 1e-14);
    }

    #[test]
    fn product_is_associative((a, b, c3) in triple(4)) {
        let ab = multiply(&a, &b).unwrap();
        let left = multiply(&ab.pauli, &c3).unwrap();
        let bc = multiply(&b, &c3).unwrap();
        let right = multiply(&a, &bc.pauli).unwrap();
        prop_assert_eq!(left.pauli, right.pauli);
        let lp = ab.coefficient * left.coefficient;
        let rp = bc.coefficient * right.coefficient;
        prop_assert!((lp - rp).norm() < 1e-15);
    }

    #[test]
    fn commutator_is_antisymmetric((a, b, _) in triple(4)) {
        let ab = commutator(&a, &b).unwrap();
        let ba = commutator(&b, &a).unwrap();
        prop_assert_eq!(ab.is_none(), a.commutes_with(&b));
        match (ab, ba) {
            (None, None) => {}
            (Some(x), Some(y)) => {
                prop_assert_eq!(x.pauli, y.pauli);
                let sum: Complex64 = x.coefficient + y.coefficient;
                prop_assert!(sum.norm() < 1e-15);
            }
            _ => prop_assert!(false, "commutator defined in one order only"),
        }
    }

    #[test]
    fn commutator_matches_dense((a, b, _) in triple(3)) {
        let (pa, pb) = (kron_pauli(&a), kron_pauli(&b));
        let dense = &pa * &pb - &pb * &pa;
        let got = match commutator(&a, &b).unwrap() {
            None => M::zeros(pa.nrows(), pa.ncols()),
            Some(s) => kron_pauli(&s.pauli) * s.coefficient,
        };
        prop_assert!(max_diff(&got, &dense) < 1e-14);
    }
}
