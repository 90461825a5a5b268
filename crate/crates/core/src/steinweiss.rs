//! Gradient projections: the Dirac operator as the projection of the gradient
//! onto spinor values, and the Rarita-Schwinger operator as its `M_k`-valued
//! analogue. Both are checked through Fischer inner products; the tensor
//! product decompositions themselves are never built.

use crate::clifford::{witt_and_idempotent, Blade, Conjugation, Multivector};
use crate::error::{Error, Result};
use crate::identities::{space_valued_tests, CheckOptions, Residual};
use crate::operators;
use crate::poly::{CliffordPoly, PolyBuilder, Primitive, Var};
use crate::samples::sample_points;
use crate::spaces::{almansi_split, build_basis, fischer_inner_var, Kind};

/// `(∂f/∂x_1, …, ∂f/∂x_m)`.
#[derive(Clone, Debug)]
pub struct GradientTuple {
    pub parts: Vec<CliffordPoly>,
}

impl GradientTuple {
    pub fn new(f: &CliffordPoly) -> Result<Self> {
        let parts = (1..=f.dim()).map(|i| f.apply(Primitive::Partial(Var::X, i))).collect::<Result<_>>()?;
        Ok(GradientTuple { parts })
    }

    /// `Σ e_i ∂_i f`, which is `D_x f`.
    pub fn contract(&self) -> Result<CliffordPoly> {
        let m = self.parts.first().map(|p| p.dim()).unwrap_or(0);
        let mut b = PolyBuilder::new(m);
        for (i, p) in self.parts.iter().enumerate() {
            b.add_poly(&p.left_mul_mv(&Multivector::e(m, i + 1))?);
        }
        Ok(b.finish())
    }
}

fn scalar_part(p: &CliffordPoly) -> CliffordPoly {
    p.map_coeffs(|c| c.grade_part(0))
}

/// Scalar-valued `(a, b) = [ā b]_0` with the Hermitian bar, pointwise in `x`.
fn pair(a: &CliffordPoly, b: &CliffordPoly) -> Result<CliffordPoly> {
    Ok(scalar_part(&a.conjugate(Conjugation::Hermitian).mul(b)?))
}

/// Spanning set `e_A I` of the spinor space `Cl_m I`.
pub fn spinor_span(m: usize) -> Result<Vec<Multivector>> {
    let idem = witt_and_idempotent(m)?.idempotent;
    let mut out: Vec<Multivector> = Vec::new();
    for bits in 0..(1u16 << m) {
        let s = &Multivector::blade(m, Blade(bits as u8), 1.into()) * &idem;
        if !s.is_zero() && !out.contains(&s) {
            out.push(s);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Duality {
    /// `D_x f = 0` identically.
    pub dirac_zero: bool,
    /// `Σ_i (∂_i f, e_i ω) = 0` for every `ω` in the span.
    pub pairing_zero: bool,
    /// `Σ_i (∂_i f, e_i ω) = −(D_x f, ω)`, i.e. `−e_i` is dual to `e_i`.
    pub sign_consistent: bool,
    /// The two vanishing conditions also agree at every sample point.
    pub pointwise_agree: bool,
}

impl Duality {
    pub fn agrees(&self) -> bool {
        self.dirac_zero == self.pairing_zero && self.sign_consistent && self.pointwise_agree
    }
}

/// Compares `D_x f = 0` with the vanishing of `Σ_i (∂_i f, e_i ω)` over a
/// spanning set of `ω` for spinor-valued `f(x)`.
pub fn dirac_duality_check(f: &CliffordPoly, omegas: &[Multivector]) -> Result<Duality> {
    let m = f.dim();
    if f.uses(Var::U) || f.uses(Var::V) {
        return Err(Error::InvalidParameter("f must depend on x only".into()));
    }
    let grad = GradientTuple::new(f)?;
    let df = grad.contract()?;
    let mut pairing_zero = true;
    let mut sign_consistent = true;
    let mut pairings = Vec::with_capacity(omegas.len());
    for w in omegas {
        let wp = CliffordPoly::constant(w.clone());
        let mut b = PolyBuilder::new(m);
        for (i, p) in grad.parts.iter().enumerate() {
            b.add_poly(&pair(p, &wp.left_mul_mv(&Multivector::e(m, i + 1))?)?);
        }
        let s = b.finish();
        if !s.add(&pair(&df, &wp)?)?.is_zero() {
            sign_consistent = false;
        }
        pairing_zero &= s.is_zero();
        pairings.push(s);
    }
    let mut pointwise_agree = true;
    for x in sample_points(m)? {
        let at = [(Var::X, x)];
        let d0 = df.evaluate(&at)?.is_zero();
        let mut p0 = true;
        for s in &pairings {
            p0 &= s.evaluate(&at)?.is_zero();
        }
        pointwise_agree &= d0 == p0;
    }
    Ok(Duality { dirac_zero: df.is_zero(), pairing_zero, sign_consistent, pointwise_agree })
}

fn require_mk_valued(f: &CliffordPoly, k: u32) -> Result<()> {
    if !f.is_zero() && !f.is_homogeneous(Var::U, k) {
        return Err(Error::NotHomogeneous(k, "u".into()));
    }
    if !f.apply(Primitive::Dirac(Var::U))?.is_zero() {
        return Err(Error::NotInSpace("f is not M_k-valued".into()));
    }
    Ok(())
}

/// `(q, D_x f)_u = (q, R_k f)_u` for every `q` in the `M_k` basis.
pub fn rs_projection_equivalence(m: usize, k: u32, f: &CliffordPoly, o: &CheckOptions) -> Result<Residual> {
    require_mk_valued(f, k)?;
    let df = f.apply(Primitive::Dirac(Var::X))?;
    let rf = operators::rarita_schwinger_op(m, k).apply(f, o.budget)?;
    let basis = build_basis(m, k, Kind::Monogenic)?;
    let mut acc = PolyBuilder::new(m);
    for q in &basis.elements {
        let a = fischer_inner_var(q, &df, Conjugation::Hermitian)?;
        let b = fischer_inner_var(q, &rf, Conjugation::Hermitian)?;
        let d = a.sub(&b)?;
        if !d.is_zero() {
            acc.add_poly(&d);
        }
    }
    let r = Residual::from_poly(&acc.finish(), o.seed)?;
    Ok(r.note("basis_size", basis.elements.len()))
}

/// `(q, u g)_u = 0` for `q` in the `M_k` basis and `g` in the `M_{k−1}` basis.
pub fn cauchy_orthogonality(m: usize, k: u32, o: &CheckOptions) -> Result<Residual> {
    if k == 0 {
        return Ok(Residual::ok().note("pairs", 0));
    }
    let qs = build_basis(m, k, Kind::Monogenic)?;
    let gs = build_basis(m, k - 1, Kind::Monogenic)?;
    let mut acc = PolyBuilder::new(m);
    let mut pairs = 0usize;
    for g in &gs.elements {
        let ug = g.apply(Primitive::VectorMul(Var::U))?;
        for q in &qs.elements {
            acc.add_poly(&CliffordPoly::constant(crate::spaces::fischer_inner(q, &ug, Conjugation::Hermitian)?).map_coeffs(|c| {
                // Collect magnitudes so cancellations between pairs cannot hide a failure.
                let mut s = Multivector::zero(c.dim());
                for (b, z) in c.terms() {
                    s = &s + &Multivector::blade(c.dim(), *b, z.norm_sq().into());
                }
                s
            }));
            pairs += 1;
        }
    }
    Ok(Residual::from_poly(&acc.finish(), o.seed)?.note("pairs", pairs))
}

/// `D_x f = R_k f + u·q` with `(R_k f, q)` the Almansi-Fischer split of `D_x f`.
pub fn almansi_consistency(m: usize, k: u32, f: &CliffordPoly, o: &CheckOptions) -> Result<Residual> {
    require_mk_valued(f, k)?;
    let df = f.apply(Primitive::Dirac(Var::X))?;
    let rf = operators::rarita_schwinger_op(m, k).apply(f, o.budget)?;
    if k == 0 {
        return Residual::from_poly(&df.sub(&rf)?, o.seed);
    }
    let (p, q) = almansi_split(&df, k)?;
    let rebuilt = p.add(&q.apply(Primitive::VectorMul(Var::U))?)?;
    Ok(Residual::combine(vec![
        ("projection".to_string(), Residual::from_poly(&p.sub(&rf)?, o.seed)?),
        ("rebuild".to_string(), Residual::from_poly(&rebuilt.sub(&df)?, o.seed)?),
        ("p_monogenic".to_string(), Residual::from_poly(&p.apply(Primitive::Dirac(Var::U))?, o.seed)?),
        ("q_monogenic".to_string(), Residual::from_poly(&q.apply(Primitive::Dirac(Var::U))?, o.seed)?),
    ]))
}

/// Projection equivalence and Almansi consistency on `count` random
/// `M_k`-valued polynomials, plus the orthogonality of `M_k` and `u M_{k−1}`.
pub fn steinweiss_suite(m: usize, k: u32, count: usize, o: &CheckOptions) -> Result<Residual> {
    let mut parts = vec![("orthogonality".to_string(), cauchy_orthogonality(m, k, o)?)];
    for (i, f) in space_valued_tests(m, k, Kind::Monogenic, count, 2, o.seed)?.iter().enumerate() {
        parts.push((format!("f{i}.projection"), rs_projection_equivalence(m, k, f, o)?));
        parts.push((format!("f{i}.almansi"), almansi_consistency(m, k, f, o)?));
    }
    Ok(Residual::combine(parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational;

    fn spinor(m: usize) -> Multivector {
        witt_and_idempotent(m).unwrap().idempotent
    }

    #[test]
    fn constant_spinor_is_monogenic() {
        let f = CliffordPoly::constant(spinor(3));
        let d = dirac_duality_check(&f, &spinor_span(3).unwrap()).unwrap();
        assert!(d.dirac_zero && d.pairing_zero && d.agrees());
    }

    #[test]
    fn non_monogenic_spinor_field() {
        let m = 3;
        let f = CliffordPoly::vector(m, Var::X).sub(&CliffordPoly::var(m, Var::X, 3).left_mul_mv(&Multivector::e(m, 3)).unwrap()).unwrap();
        let f = f.right_mul_mv(&spinor(m)).unwrap();
        let df = GradientTuple::new(&f).unwrap().contract().unwrap();
        assert_eq!(df, CliffordPoly::constant(spinor(m).scale(&GaussianRational::from(-2))));
        let d = dirac_duality_check(&f, &[spinor(m)]).unwrap();
        assert!(!d.dirac_zero && !d.pairing_zero && d.agrees());
    }

    #[test]
    fn monogenic_witness_from_basis() {
        let m = 3;
        for q in build_basis(m, 1, Kind::Monogenic).unwrap().elements.iter().take(4) {
            let f = q.rename(Var::U, Var::X).unwrap().right_mul_mv(&spinor(m)).unwrap();
            let d = dirac_duality_check(&f, &spinor_span(m).unwrap()).unwrap();
            assert!(d.dirac_zero && d.pairing_zero && d.agrees());
        }
    }

    #[test]
    fn explicit_rs_example() {
        let m = 3;
        let o = CheckOptions::default();
        let u1 = CliffordPoly::var(m, Var::U, 1);
        let u2 = CliffordPoly::var(m, Var::U, 2);
        let e12 = &Multivector::e(m, 1) * &Multivector::e(m, 2);
        let f = CliffordPoly::var(m, Var::X, 2).mul(&u1.sub(&u2.right_mul_mv(&e12).unwrap()).unwrap()).unwrap();
        assert!(rs_projection_equivalence(m, 1, &f, &o).unwrap().passed());
        assert!(almansi_consistency(m, 1, &f, &o).unwrap().passed());
    }

    #[test]
    fn k_zero_is_dirac() {
        let o = CheckOptions::default();
        let f = CliffordPoly::var(3, Var::X, 1).pow(2);
        assert!(rs_projection_equivalence(3, 0, &f, &o).unwrap().passed());
        assert!(cauchy_orthogonality(3, 0, &o).unwrap().passed());
    }

    #[test]
    fn rejects_non_monogenic() {
        let f = CliffordPoly::var(3, Var::U, 1);
        assert!(rs_projection_equivalence(3, 1, &f, &CheckOptions::default()).is_err());
    }
}
