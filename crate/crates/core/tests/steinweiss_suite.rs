use hspin_core::identities::CheckOptions;
use hspin_core::steinweiss::*;

#[test]
fn projection_equivalence_m3() {
    let o = CheckOptions::default();
    for k in 1..=2 {
        let r = steinweiss_suite(3, k, 10, &o).unwrap();
        assert!(r.passed(), "k={k}: {}", r.detail);
    }
}

#[test]
fn orthogonality_m4_m5() {
    let o = CheckOptions::default();
    for m in 4..=5 {
        for k in 1..=2 {
            assert!(cauchy_orthogonality(m, k, &o).unwrap().passed(), "m={m} k={k}");
        }
    }
}
