use hspin_core::identities::*;
use hspin_core::operators::{constants, BForm};
use hspin_core::scalar::Rational;

#[test]
fn printed_and_recomputed_constant() {
    let o = CheckOptions::default();
    assert_eq!(constants::c_alpha_printed(5, 1, -1).unwrap(), Rational::new(-24, 5));
    assert_eq!(constants::c_alpha_derived(5, 1, -1).unwrap(), Rational::new(14, 5));
    let r = check_c_alpha(5, 1, -1, Source::HighestWeight, &o).unwrap();
    assert!(!r.passed());
    assert!(r.notes.iter().any(|(k, v)| k == "c_operator" && v == "14/5"));
    assert!(check_c_alpha_derived(5, 1, -1, Source::HighestWeight, &o).unwrap().passed());
}

#[test]
fn b_operators_small_case() {
    let o = CheckOptions::default();
    for form in BForm::ALL {
        let r = check_b_action(3, 1, 1, form, Source::HighestWeight, &o).unwrap();
        assert!(r.passed(), "{}: {}", form.name(), r.detail);
    }
    assert_eq!(constants::d_2s(3, 1, 1).unwrap(), Rational::from_int(6));
    assert!(check_telescoping(3, 1, 2, Source::Random(7), &o).unwrap().passed());
    assert!(check_rk_squared(3, 1, 2, &o).unwrap().passed());
    assert!(check_laplace_split(3, 1, 2, &o).unwrap().passed());
}

#[test]
fn classical_limits() {
    let o = CheckOptions::default();
    for order in 1..=4 {
        assert!(check_classical_reduction(3, order, 4, &o).unwrap().passed(), "order={order}");
    }
}

#[test]
fn budget_is_enforced() {
    let o = CheckOptions { budget: Some(10), ..CheckOptions::default() };
    assert!(matches!(check_fundamental_solution(5, 2, 4, &o), Err(hspin_core::Error::Budget(_))));
}
