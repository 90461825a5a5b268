use hspin_core::identities::*;
use hspin_core::spaces::{build_basis, Kind};

#[test]
fn gram_kernels_reproduce() {
    let o = CheckOptions::default();
    for m in 3..=5 {
        for k in 0..=2 {
            for kind in [Kind::Harmonic, Kind::Monogenic] {
                let r = check_kernel(m, k, kind, 3, &o).unwrap();
                assert!(r.passed(), "m={m} k={k} {kind:?}: {}", r.detail);
            }
        }
    }
}

#[test]
fn quadratic_harmonics_in_three_dimensions() {
    assert_eq!(build_basis(3, 2, Kind::Harmonic).unwrap().elements.len(), 5);
}

#[test]
fn low_order_fundamental_solutions() {
    let o = CheckOptions::default();
    for k in 0..=2 {
        for order in 1..=4 {
            let r = check_fundamental_solution(3, k, order, &o).unwrap();
            assert!(r.passed(), "k={k} order={order}: {}", r.detail);
        }
    }
}

#[test]
fn even_dimension_classical_pole() {
    let o = CheckOptions::default();
    assert!(matches!(check_fundamental_solution(4, 0, 3, &o), Err(hspin_core::Error::Pole(_))));
}
