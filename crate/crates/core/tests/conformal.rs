use hspin_core::conformal::*;
use hspin_core::identities::CheckOptions;
use hspin_core::scalar::Rational;
use hspin_core::spaces::Kind;

fn pt(c: &[i64]) -> Vec<Rational> {
    c.iter().map(|&v| Rational::from_int(v)).collect()
}

#[test]
fn rotation_and_inversion_covariance() {
    let o = CheckOptions::default();
    let m = 3;
    for k in 0..=2 {
        let mut fams: Vec<Family> = (1..=4).map(Family::Order).collect();
        for a in [-3, -1, 1] {
            fams.push(Family::AlphaMonogenic(a));
            fams.push(Family::AlphaHarmonic(a));
        }
        for f in fams {
            for s in default_spin_elements(m) {
                assert!(rotation_covariance_check(m, k, f, &s, &o).unwrap().passed(), "k={k} {}", f.tag());
            }
            assert!(inversion_covariance_check(m, k, f, &o).unwrap().passed(), "k={k} {}", f.tag());
        }
    }
}

#[test]
fn reflection_signs() {
    assert_eq!(measured_sign(3, 1, Kind::Harmonic).unwrap(), Some(1));
    assert_eq!(measured_sign(3, 1, Kind::Monogenic).unwrap(), Some(-1));
}

#[test]
fn intertwining_generators() {
    let o = CheckOptions::default();
    for k in 0..=1 {
        for t in 1..=2 {
            for g in IntertwiningGenerator::defaults(3) {
                let r = intertwining_check(3, k, t, &g, &o).unwrap();
                assert!(r.passed(), "k={k} t={t} {}: {}", g.name(), r.detail);
            }
        }
    }
}

#[test]
fn cocycle_order() {
    let x = pt(&[3, 4, 0]);
    let inv = MobiusMap::inversion(3);
    let rot = MobiusMap::rotation(3, &default_spin_elements(3)[2]).unwrap();
    for t in [-3, -2, -1, 1, 2, 3] {
        let c = cocycle_check(t, &inv, &rot, &x).unwrap();
        assert!(c.holds, "t={t}");
        // Odd weights are Clifford valued, so the product order matters.
        assert_eq!(c.reversed_holds, t % 2 == 0, "t={t}");
    }
    let c = cocycle_check(-1, &inv, &rot, &x).unwrap();
    assert!(!c.printed_holds);
}
