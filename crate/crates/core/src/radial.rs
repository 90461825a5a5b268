//! Finite sums `Σ p_t(x,u,v)·||x||^t` with integer `t`, defined for `x ≠ 0`.

use std::collections::BTreeMap;
use std::fmt;

use crate::clifford::Multivector;
use crate::error::{Error, Result};
use crate::poly::{CliffordPoly, Monomial, PolyBuilder, Primitive, Var};
use crate::scalar::{GaussianRational, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct RadialFn {
    dim: usize,
    /// Exponent of `||x||` → polynomial part; no zero polynomials stored.
    terms: BTreeMap<i32, CliffordPoly>,
}

impl RadialFn {
    pub fn zero(dim: usize) -> Self {
        RadialFn { dim, terms: BTreeMap::new() }
    }

    pub fn from_poly(p: CliffordPoly, t: i32) -> Self {
        let mut f = Self::zero(p.dim());
        f.push(t, p);
        f
    }

    /// `||x||^t`.
    pub fn norm_power(dim: usize, t: i32) -> Self {
        Self::from_poly(CliffordPoly::one(dim), t)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &CliffordPoly)> {
        self.terms.iter().map(|(t, p)| (*t, p))
    }

    /// Total number of stored polynomial terms.
    pub fn size(&self) -> usize {
        self.terms.values().map(|p| p.len()).sum()
    }

    fn push(&mut self, t: i32, p: CliffordPoly) {
        if p.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&t) {
            Some(q) => q.add(&p).expect("same dimension"),
            None => p,
        };
        if !merged.is_zero() {
            self.terms.insert(t, merged);
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            Err(Error::DimensionMismatch(self.dim, other.dim))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (t, p) in &other.terms {
            out.push(*t, p.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_polys(|p| p.neg())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        self.map_polys(|p| p.scale(c))
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(&GaussianRational::real(q.clone()))
    }

    pub fn left_mul_mv(&self, a: &Multivector) -> Result<Self> {
        let mut out = Self::zero(self.dim);
        for (t, p) in &self.terms {
            out.push(*t, p.left_mul_mv(a)?);
        }
        Ok(out)
    }

    pub fn right_mul_mv(&self, a: &Multivector) -> Result<Self> {
        let mut out = Self::zero(self.dim);
        for (t, p) in &self.terms {
            out.push(*t, p.right_mul_mv(a)?);
        }
        Ok(out)
    }

    /// Left multiplication by a polynomial: `q · f`.
    pub fn left_mul_poly(&self, q: &CliffordPoly) -> Result<Self> {
        let mut out = Self::zero(self.dim);
        for (t, p) in &self.terms {
            out.push(*t, q.mul(p)?);
        }
        Ok(out)
    }

    /// Right multiplication by a polynomial: `f · q`.
    pub fn right_mul_poly(&self, q: &CliffordPoly) -> Result<Self> {
        let mut out = Self::zero(self.dim);
        for (t, p) in &self.terms {
            out.push(*t, p.mul(q)?);
        }
        Ok(out)
    }

    /// Clifford-ordered product of two radial functions.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.dim);
        for (t1, p1) in &self.terms {
            for (t2, p2) in &other.terms {
                out.push(t1 + t2, p1.mul(p2)?);
            }
        }
        Ok(out)
    }

    /// Multiply by `||x||^s`.
    pub fn shift(&self, s: i32) -> Self {
        RadialFn { dim: self.dim, terms: self.terms.iter().map(|(t, p)| (t + s, p.clone())).collect() }
    }

    pub fn map_polys(&self, f: impl Fn(&CliffordPoly) -> CliffordPoly) -> Self {
        let mut out = Self::zero(self.dim);
        for (t, p) in &self.terms {
            out.push(*t, f(p));
        }
        out
    }

    pub fn try_map_polys(&self, f: impl Fn(&CliffordPoly) -> Result<CliffordPoly>) -> Result<Self> {
        let mut out = Self::zero(self.dim);
        for (t, p) in &self.terms {
            out.push(*t, f(p)?);
        }
        Ok(out)
    }

    /// One representative per parity class of `t`, at the smallest exponent.
    pub fn normalized(&self) -> Self {
        let mut out = Self::zero(self.dim);
        let r2 = CliffordPoly::norm_sq(self.dim, Var::X);
        for parity in [0, 1] {
            let group: Vec<(&i32, &CliffordPoly)> =
                self.terms.iter().filter(|(t, _)| t.rem_euclid(2) == parity).collect();
            let Some(t_min) = group.iter().map(|(t, _)| **t).min() else { continue };
            let mut acc = PolyBuilder::new(self.dim);
            let mut r_pow = CliffordPoly::one(self.dim);
            let mut at = t_min;
            // Walk upwards through the exponents, reusing powers of r².
            for (t, p) in group {
                while at < *t {
                    r_pow = r_pow.mul(&r2).expect("same dimension");
                    at += 2;
                }
                acc.add_poly(&p.mul(&r_pow).expect("same dimension"));
            }
            out.push(t_min, acc.finish());
        }
        out
    }

    /// Decides `self == 0` on `x ≠ 0`.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() || self.normalized().terms.is_empty()
    }

    pub fn apply(&self, prim: Primitive) -> Result<Self> {
        let m = self.dim;
        let mut out = Self::zero(m);
        for (&t, p) in &self.terms {
            let base = p.apply(prim)?;
            out.push(t, base);
            if t == 0 {
                continue;
            }
            let tq = Rational::from_int(t as i64);
            // Extra terms from differentiating ||x||^t.
            match prim {
                Primitive::Partial(Var::X, i) => {
                    let xi = CliffordPoly::var(m, Var::X, i);
                    out.push(t - 2, xi.mul(p)?.scale_rational(&tq));
                }
                Primitive::Dirac(Var::X) => {
                    out.push(t - 2, p.apply(Primitive::VectorMul(Var::X))?.scale_rational(&tq));
                }
                Primitive::Laplacian(Var::X) => {
                    let euler = p.apply(Primitive::Euler(Var::X))?.scale_rational(&Rational::from_int(2 * t as i64));
                    let c = Rational::from_int((t * (t + m as i32 - 2)) as i64);
                    out.push(t - 2, euler.add(&p.scale_rational(&c))?);
                }
                Primitive::Euler(Var::X) => {
                    out.push(t, p.scale_rational(&tq));
                }
                Primitive::PairVarD(a, Var::X) => {
                    if a == Var::X {
                        out.push(t, p.scale_rational(&tq));
                    } else {
                        let ax = CliffordPoly::inner(m, a, Var::X);
                        out.push(t - 2, ax.mul(p)?.scale_rational(&tq));
                    }
                }
                Primitive::PairDD(a, b) if a == Var::X || b == Var::X => {
                    let other = if a == Var::X { b } else { a };
                    if other == Var::X {
                        let euler =
                            p.apply(Primitive::Euler(Var::X))?.scale_rational(&Rational::from_int(2 * t as i64));
                        let c = Rational::from_int((t * (t + m as i32 - 2)) as i64);
                        out.push(t - 2, euler.add(&p.scale_rational(&c))?);
                    } else {
                        out.push(t - 2, p.apply(Primitive::PairVarD(Var::X, other))?.scale_rational(&tq));
                    }
                }
                _ => {}
            }
        }
        Ok(out)
    }

    /// Exact value at a point with rational `||x||`.
    pub fn evaluate(&self, assignment: &[(Var, Vec<Rational>)]) -> Result<Multivector> {
        let x = assignment
            .iter()
            .find(|(v, _)| *v == Var::X)
            .map(|(_, p)| p.clone())
            .ok_or_else(|| Error::MissingAssignment("x".into()))?;
        let r = norm(&x)?;
        if r.is_zero() {
            return Err(Error::InvalidParameter("radial function evaluated at x = 0".into()));
        }
        let mut acc = Multivector::zero(self.dim);
        for (t, p) in &self.terms {
            let v = p.evaluate(assignment)?;
            acc = &acc + &v.scale_rational(&r.pow(*t).expect("nonzero radius"));
        }
        Ok(acc)
    }

    /// Assign some variables (x must have rational norm if assigned), keeping others symbolic.
    pub fn evaluate_partial(&self, assignment: &[(Var, Vec<Rational>)]) -> Result<CliffordPoly> {
        let r = match assignment.iter().find(|(v, _)| *v == Var::X) {
            Some((_, x)) => Some(norm(x)?),
            None => None,
        };
        let mut acc = PolyBuilder::new(self.dim);
        for (t, p) in &self.terms {
            let q = p.evaluate_partial(assignment)?;
            match &r {
                Some(r) => acc.add_poly(&q.scale_rational(&r.pow(*t).ok_or_else(|| Error::InvalidParameter("x = 0".into()))?)),
                None if *t == 0 => acc.add_poly(&q),
                None => return Err(Error::MissingAssignment("x".into())),
            }
        }
        Ok(acc.finish())
    }

    /// Substitutes `u ↦ xux/||x||²` in every term.
    pub fn reflect_u(&self) -> Result<Self> {
        let m = self.dim;
        let images = reflection_images(m);
        let mut out = Self::zero(m);
        for (t, p) in &self.terms {
            for (d, piece) in p.by_degree(Var::U) {
                let sub = piece.substitute(Var::U, &images)?;
                out.push(t - 2 * d as i32, sub);
            }
        }
        Ok(out)
    }

    /// Pullback along `x ↦ x^{-1} = -x/||x||²`.
    pub fn inversion_substitute(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for (t, p) in &self.terms {
            for (d, piece) in p.by_degree(Var::X) {
                let piece = if d % 2 == 1 { piece.neg() } else { piece };
                out.push(-2 * d as i32 - t, piece);
            }
        }
        out
    }

    /// Homogeneity degree in `x` (polynomial degree plus radial exponent), if uniform.
    pub fn x_degree(&self) -> Option<i32> {
        let mut deg = None;
        for (t, p) in &self.terms {
            for (d, _) in p.by_degree(Var::X) {
                let total = d as i32 + t;
                match deg {
                    None => deg = Some(total),
                    Some(e) if e != total => return None,
                    _ => {}
                }
            }
        }
        deg
    }

    /// Deterministic text; normalized first so equal functions print equally.
    pub fn to_canonical_string(&self) -> String {
        let n = self.normalized();
        if n.terms.is_empty() {
            return "0".to_string();
        }
        n.terms
            .iter()
            .map(|(t, p)| format!("({})*|x|^{}", p.to_canonical_string(), t))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Debug for RadialFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.terms.iter().map(|(t, p)| format!("({})*|x|^{}", p.to_canonical_string(), t)).collect();
        write!(f, "{}", if parts.is_empty() { "0".into() } else { parts.join(" + ") })
    }
}

/// Exact Euclidean norm, failing when it is irrational.
pub fn norm(x: &[Rational]) -> Result<Rational> {
    let mut s = Rational::zero();
    for c in x {
        s += &(c * c);
    }
    s.sqrt().ok_or_else(|| Error::IrrationalNorm(format!("{x:?}")))
}

/// `(xux)_i = ||x||² u_i − 2⟨u,x⟩x_i` for each component.
pub fn reflection_images(m: usize) -> Vec<CliffordPoly> {
    let r2 = CliffordPoly::norm_sq(m, Var::X);
    let ux = CliffordPoly::inner(m, Var::U, Var::X);
    (1..=m)
        .map(|i| {
            let a = r2.mul(&CliffordPoly::var(m, Var::U, i)).expect("same dimension");
            let b = ux.mul(&CliffordPoly::var(m, Var::X, i)).expect("same dimension").scale_rational(&Rational::from_int(2));
            a.sub(&b).expect("same dimension")
        })
        .collect()
}

/// `||x||^t q(xux/||x||²)`, optionally left-multiplied by the vector `x`.
pub fn kelvin_embed(q: &CliffordPoly, t: i32, left_vector_factor: bool) -> Result<RadialFn> {
    let k = match q.homogeneous_degree(Var::U) {
        Some(k) => k,
        None if q.is_zero() => 0,
        None => return Err(Error::NotHomogeneous(0, "u".into())),
    };
    let m = q.dim();
    let sub = q.substitute(Var::U, &reflection_images(m))?;
    let mut f = RadialFn::from_poly(sub, t - 2 * k as i32);
    if left_vector_factor {
        f = f.left_mul_poly(&CliffordPoly::vector(m, Var::X))?;
    }
    Ok(f)
}

pub fn normalize_eq(f: &RadialFn, g: &RadialFn) -> Result<bool> {
    Ok(f.sub(g)?.is_zero())
}

pub fn radial_partial(f: &RadialFn, i: usize) -> Result<RadialFn> {
    f.apply(Primitive::Partial(Var::X, i))
}

/// Monomial helper re-exported for callers building exponents by hand.
pub fn x_monomial(exps: &[u32]) -> Monomial {
    let mut m = Monomial::one();
    for (i, e) in exps.iter().enumerate() {
        m = m.with_exp(Var::X, i + 1, *e);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn normalize_examples() {
        let m = 3;
        let r2 = CliffordPoly::norm_sq(m, Var::X);
        assert!(normalize_eq(&RadialFn::norm_power(m, 2), &RadialFn::from_poly(r2.clone(), 0)).unwrap());
        let x1 = CliffordPoly::var(m, Var::X, 1);
        let f = RadialFn::from_poly(x1.clone(), -1);
        let g = RadialFn::from_poly(x1.mul(&r2).unwrap(), -3);
        assert!(normalize_eq(&f, &g).unwrap());
        assert!(!normalize_eq(&f, &RadialFn::from_poly(x1, -3)).unwrap());
    }

    #[test]
    fn radial_laplacian_closed_form() {
        for m in 3..=5 {
            for a in -6..=4 {
                let f = RadialFn::norm_power(m, a);
                let lap = f.apply(Primitive::Laplacian(Var::X)).unwrap();
                let twice = (1..=m).fold(RadialFn::zero(m), |acc, i| {
                    let d = radial_partial(&radial_partial(&f, i).unwrap(), i).unwrap();
                    acc.add(&d).unwrap()
                });
                let expect = RadialFn::norm_power(m, a - 2).scale_rational(&q((a * (a + m as i32 - 2)) as i64));
                assert!(normalize_eq(&lap, &expect).unwrap());
                assert!(normalize_eq(&twice, &expect).unwrap());
            }
        }
    }

    #[test]
    fn kelvin_examples() {
        let m = 3;
        let f = kelvin_embed(&CliffordPoly::one(m), 2 - m as i32, false).unwrap();
        assert!(normalize_eq(&f, &RadialFn::norm_power(m, -1)).unwrap());
        let u1 = CliffordPoly::var(m, Var::U, 1);
        let k = kelvin_embed(&u1, 0, false).unwrap();
        let v = k.evaluate(&[(Var::X, vec![q(3), q(4), q(0)]), (Var::U, vec![q(0), q(0), q(1)])]).unwrap();
        assert!(v.is_zero());
        let v = k.evaluate(&[(Var::X, vec![q(3), q(4), q(0)]), (Var::U, vec![q(1), q(0), q(0)])]).unwrap();
        // u - 2<u,x>x/|x|^2 with u = e1: 1 - 2*3*3/25.
        assert_eq!(v, Multivector::scalar(3, GaussianRational::ratio(7, 25)));
    }

    #[test]
    fn inversion_examples() {
        let m = 3;
        let x1 = RadialFn::from_poly(CliffordPoly::var(m, Var::X, 1), 0);
        let inv = x1.inversion_substitute();
        assert!(normalize_eq(&inv, &RadialFn::from_poly(CliffordPoly::var(m, Var::X, 1).neg(), -2)).unwrap());
        assert!(normalize_eq(&RadialFn::norm_power(m, 5).inversion_substitute(), &RadialFn::norm_power(m, -5)).unwrap());
    }
}
