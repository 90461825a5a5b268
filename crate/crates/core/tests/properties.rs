use proptest::prelude::*;

use hspin_core::clifford::{Blade, Conjugation, Multivector};
use hspin_core::operators::{self, LinearOp};
use hspin_core::poly::{CliffordPoly, Monomial, PolyBuilder, Primitive, Var};
use hspin_core::radial::RadialFn;
use hspin_core::scalar::{GaussianRational, Rational};

const M: usize = 3;

fn arb_gauss() -> impl Strategy<Value = GaussianRational> {
    (-5i64..=5, 1i64..=4, -3i64..=3).prop_map(|(n, d, im)| GaussianRational::new(Rational::new(n, d), Rational::from_int(im)))
}

fn arb_mv() -> impl Strategy<Value = Multivector> {
    prop::collection::vec((0u8..8, arb_gauss()), 1..5).prop_map(|t| Multivector::from_terms(M, t.into_iter().map(|(b, c)| (Blade(b), c))))
}

fn arb_poly(vars: &'static [Var]) -> impl Strategy<Value = CliffordPoly> {
    let mono = prop::collection::vec((0..vars.len(), 1usize..=M), 0..4);
    prop::collection::vec((mono, arb_mv()), 1..4).prop_map(move |terms| {
        let mut b = PolyBuilder::new(M);
        for (factors, c) in terms {
            let mut mono = Monomial::one();
            for (v, i) in factors {
                mono = mono.bump(vars[v], i, 1);
            }
            b.add(mono, c);
        }
        b.finish()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generators_anticommute(i in 1usize..=M, j in 1usize..=M) {
        let (a, b) = (Multivector::e(M, i), Multivector::e(M, j));
        let expect = if i == j { Multivector::scalar(M, GaussianRational::from_int(-2)) } else { Multivector::zero(M) };
        prop_assert_eq!(&(&a * &b) + &(&b * &a), expect);
    }

    #[test]
    fn product_associative(a in arb_mv(), b in arb_mv(), c in arb_mv()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn conjugations_reverse_products(a in arb_mv(), b in arb_mv()) {
        for conv in [Conjugation::Hermitian, Conjugation::Reversion] {
            prop_assert_eq!((&a * &b).conjugate(conv), &b.conjugate(conv) * &a.conjugate(conv));
            prop_assert_eq!(a.conjugate(conv).conjugate(conv), a.clone());
        }
    }

    #[test]
    fn dirac_squares_to_minus_laplacian(p in arb_poly(&[Var::X, Var::U])) {
        let dd = p.apply(Primitive::Dirac(Var::X)).unwrap().apply(Primitive::Dirac(Var::X)).unwrap();
        let lap = p.apply(Primitive::Laplacian(Var::X)).unwrap();
        prop_assert!(dd.add(&lap).unwrap().is_zero());
    }

    #[test]
    fn operators_are_linear(p in arb_poly(&[Var::X, Var::U]), q in arb_poly(&[Var::X, Var::U]), c in arb_gauss()) {
        let op = operators::rarita_schwinger_op(M, 2);
        let lhs = op.apply(&p.scale(&c).add(&q).unwrap(), None).unwrap();
        let rhs = op.apply(&p, None).unwrap().scale(&c).add(&op.apply(&q, None).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn composition_matches_sequential_application(p in arb_poly(&[Var::X, Var::U])) {
        let a = operators::dual_twistor(M, 1);
        let b = LinearOp::prim(Primitive::VectorMul(Var::U)).plus(&operators::laplace_x());
        let seq = a.apply(&b.apply(&p, None).unwrap(), None).unwrap();
        prop_assert_eq!(a.compose(&b).apply(&p, None).unwrap(), seq);
    }

    #[test]
    fn euler_counts_degree(p in arb_poly(&[Var::X])) {
        for (d, piece) in p.by_degree(Var::X) {
            let e = piece.apply(Primitive::Euler(Var::X)).unwrap();
            prop_assert_eq!(e, piece.scale(&GaussianRational::from_int(d as i64)));
        }
    }

    #[test]
    fn inversion_is_an_involution(p in arb_poly(&[Var::X, Var::U]), t in -6i32..=6) {
        let f = RadialFn::from_poly(p, t);
        prop_assert!(f.inversion_substitute().inversion_substitute().sub(&f).unwrap().is_zero());
    }

    #[test]
    fn reflection_is_an_involution(p in arb_poly(&[Var::X, Var::U]), t in -4i32..=4) {
        let f = RadialFn::from_poly(p, t);
        let twice = f.reflect_u().unwrap().reflect_u().unwrap();
        prop_assert!(twice.sub(&f).unwrap().is_zero());
    }

    #[test]
    fn radial_laplacian_of_power(t in -8i32..=8) {
        let f = RadialFn::norm_power(M, t);
        let lap = f.apply(Primitive::Laplacian(Var::X)).unwrap();
        let c = Rational::from_int((t * (t + M as i32 - 2)) as i64);
        prop_assert!(lap.sub(&RadialFn::norm_power(M, t - 2).scale_rational(&c)).unwrap().is_zero());
    }

    #[test]
    fn radial_leibniz(p in arb_poly(&[Var::X]), t in -5i32..=5, i in 1usize..=M) {
        let f = RadialFn::from_poly(p.clone(), t);
        let lhs = f.apply(Primitive::Partial(Var::X, i)).unwrap();
        let dp = RadialFn::from_poly(p.apply(Primitive::Partial(Var::X, i)).unwrap(), t);
        let xi = CliffordPoly::var(M, Var::X, i).scale_rational(&Rational::from_int(t as i64));
        let dr = RadialFn::from_poly(p.mul(&xi).unwrap(), t - 2);
        prop_assert!(lhs.sub(&dp.add(&dr).unwrap()).unwrap().is_zero());
    }
}
