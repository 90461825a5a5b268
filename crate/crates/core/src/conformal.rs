//! Möbius maps in Vahlen form, conformal weights, pointwise covariance of the
//! fundamental-solution kernels and intertwining of the operators.

use crate::clifford::{vector_embed, Multivector};
use crate::error::{Error, Result};
use crate::identities::{fundamental_solution_kernel, space_vector, CheckOptions, Residual, Source};
use crate::operators;
use crate::poly::{CliffordPoly, Monomial, Var};
use crate::radial::{kelvin_embed, norm, RadialFn};
use crate::scalar::Rational;
use crate::spaces::{reflection_at, reflection_sign, reproducing_kernel, rotation_images, Kind};

/// Even product of unit vectors with rational coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinElement {
    pub factors: Vec<Vec<Rational>>,
}

impl SpinElement {
    pub fn new(factors: Vec<Vec<Rational>>) -> Result<Self> {
        if factors.len() % 2 != 0 {
            return Err(Error::InvalidParameter("spin element needs an even number of factors".into()));
        }
        let m = factors.first().map_or(0, |f| f.len());
        for f in &factors {
            if f.len() != m {
                return Err(Error::DimensionMismatch(m, f.len()));
            }
            if !norm(f)?.is_one() {
                return Err(Error::InvalidParameter(format!("factor {f:?} is not a unit vector")));
            }
        }
        Ok(SpinElement { factors })
    }

    pub fn identity() -> Self {
        SpinElement { factors: Vec::new() }
    }

    pub fn multivector(&self, m: usize) -> Result<Multivector> {
        let mut s = Multivector::one(m);
        for f in &self.factors {
            s = &s * &vector_embed(m, f)?;
        }
        Ok(s)
    }

    /// `s x s̃`, exact.
    pub fn act(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        let m = x.len();
        let s = self.multivector(m)?;
        let img = &(&s * &vector_embed(m, x)?) * &s.reversion();
        vector_coords(&img)
    }
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&c| Rational::from_int(c)).collect()
}

fn fifths(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&c| Rational::new(c, 5)).collect()
}

/// Shipped rational spin elements for dimension `m` (the first is the identity).
pub fn default_spin_elements(m: usize) -> Vec<SpinElement> {
    let pad = |mut v: Vec<Rational>| {
        v.resize(m, Rational::zero());
        v
    };
    let e = |i: usize| {
        let mut v = vec![0; m];
        v[i] = 1;
        ints(&v)
    };
    vec![
        SpinElement::identity(),
        SpinElement { factors: vec![e(0), e(1)] },
        SpinElement { factors: vec![pad(fifths(&[3, 4])), e(0)] },
        SpinElement { factors: vec![pad(fifths(&[0, 3, 4])), pad(fifths(&[4, 0, 3]))] },
    ]
}

fn vector_coords(v: &Multivector) -> Result<Vec<Rational>> {
    if !v.grades().iter().all(|&g| g == 1) {
        return Err(Error::NotInSpace(format!("expected a vector, got {v:?}")));
    }
    (1..=v.dim())
        .map(|i| {
            let c = v.coeff(crate::clifford::Blade::vector(i));
            if c.is_real() {
                Ok(c.re)
            } else {
                Err(Error::NotInSpace("complex vector".into()))
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub enum Generator {
    Translation(Vec<Rational>),
    /// `x ↦ μ² x`, stored by `μ`.
    Dilation(Rational),
    Rotation(SpinElement),
    /// `x ↦ x^{-1} = −x/||x||²`.
    Inversion,
    Composite(Vec<Generator>),
}

/// `y = (ax+b)(cx+d)^{-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct MobiusMap {
    pub m: usize,
    pub a: Multivector,
    pub b: Multivector,
    pub c: Multivector,
    pub d: Multivector,
    pub generator: Generator,
}

impl MobiusMap {
    pub fn identity(m: usize) -> Self {
        let (o, z) = (Multivector::one(m), Multivector::zero(m));
        MobiusMap { m, a: o.clone(), b: z.clone(), c: z, d: o, generator: Generator::Composite(Vec::new()) }
    }

    pub fn translation(v: &[Rational]) -> Result<Self> {
        let m = v.len();
        let mut g = Self::identity(m);
        g.b = vector_embed(m, v)?;
        g.generator = Generator::Translation(v.to_vec());
        Ok(g)
    }

    pub fn dilation(m: usize, mu: Rational) -> Result<Self> {
        let inv = mu.recip().ok_or_else(|| Error::InvalidParameter("dilation by 0".into()))?;
        let mut g = Self::identity(m);
        g.a = Multivector::scalar(m, mu.clone().into());
        g.d = Multivector::scalar(m, inv.into());
        g.generator = Generator::Dilation(mu);
        Ok(g)
    }

    pub fn rotation(m: usize, s: &SpinElement) -> Result<Self> {
        let sv = s.multivector(m)?;
        let mut g = Self::identity(m);
        g.a = sv.clone();
        g.d = sv;
        g.generator = Generator::Rotation(s.clone());
        Ok(g)
    }

    pub fn inversion(m: usize) -> Self {
        let (o, z) = (Multivector::one(m), Multivector::zero(m));
        MobiusMap { m, a: z.clone(), b: o.clone(), c: o, d: z, generator: Generator::Inversion }
    }

    /// `self ∘ other` by matrix product.
    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        let mul = |p: &Multivector, q: &Multivector| p * q;
        let mut gens = Vec::new();
        for g in [&self.generator, &other.generator] {
            match g {
                Generator::Composite(v) => gens.extend(v.iter().cloned()),
                g => gens.push(g.clone()),
            }
        }
        MobiusMap {
            m: self.m,
            a: &mul(&self.a, &other.a) + &mul(&self.b, &other.c),
            b: &mul(&self.a, &other.b) + &mul(&self.b, &other.d),
            c: &mul(&self.c, &other.a) + &mul(&self.d, &other.c),
            d: &mul(&self.c, &other.b) + &mul(&self.d, &other.d),
            generator: Generator::Composite(gens),
        }
    }

    /// `cx + d` at a point.
    pub fn denominator(&self, x: &[Rational]) -> Result<Multivector> {
        Ok(&(&self.c * &vector_embed(self.m, x)?) + &self.d)
    }

    pub fn apply(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        let xv = vector_embed(self.m, x)?;
        let num = &(&self.a * &xv) + &self.b;
        let den = versor_inverse(&self.denominator(x)?)?;
        vector_coords(&(&num * &den))
    }
}

/// `v^{-1} = ṽ/(v ṽ)` for a versor, whose `v ṽ` is a nonzero scalar.
pub fn versor_inverse(v: &Multivector) -> Result<Multivector> {
    let rev = v.reversion();
    let n = (v * &rev).as_scalar().ok_or_else(|| Error::NotInSpace("not a versor".into()))?;
    let inv = n.recip().ok_or_else(|| Error::Singular("cx+d = 0".into()))?;
    Ok(rev.scale(&inv))
}

/// `||v||²` for a versor, `|v ṽ|`.
pub fn versor_norm_sq(v: &Multivector) -> Result<Rational> {
    let n = (v * &v.reversion()).as_scalar().ok_or_else(|| Error::NotInSpace("not a versor".into()))?;
    if !n.is_real() {
        return Err(Error::NotInSpace("complex versor".into()));
    }
    Ok(n.re.abs())
}

/// The Vahlen conditions: `ab̃, cd̃, b̃c, d̃a` are vectors (or scalars) and `ad̃ − bc̃ = ±1`.
pub fn vahlen_check(g: &MobiusMap) -> bool {
    let vec_or_scalar = |p: Multivector| p.grades().iter().all(|&gr| gr <= 1);
    let (bt, ct, dt) = (g.b.reversion(), g.c.reversion(), g.d.reversion());
    let pseudo = &(&g.a * &dt) - &(&g.b * &ct);
    vec_or_scalar(&g.a * &bt)
        && vec_or_scalar(&g.c * &dt)
        && vec_or_scalar(&bt * &g.c)
        && vec_or_scalar(&dt * &g.a)
        && matches!(pseudo.as_scalar(), Some(s) if s.is_one() || (-&s).is_one())
}

fn rational_norm_pow(n2: &Rational, p: i64) -> Result<Rational> {
    let r = n2.sqrt().ok_or_else(|| Error::IrrationalNorm(format!("||cx+d||² = {n2}")))?;
    r.pow(p as i32).ok_or_else(|| Error::Singular("cx+d = 0".into()))
}

/// `J_t(φ,x)` for `t > 0` and `J_{−t}(φ,x)` for `t < 0`.
///
/// In the odd case both weights carry the reversed denominator, as in the
/// fermionic intertwining identity; [`weight_j_printed`] keeps the
/// unreversed `J_{−t}` of the classical listing.
pub fn weight_j(t: i64, g: &MobiusMap, x: &[Rational]) -> Result<Multivector> {
    weight_impl(t, g, x, true)
}

/// Same as [`weight_j`] but with odd `J_{−t} = (cx+d)/||cx+d||^{m+2j}`.
pub fn weight_j_printed(t: i64, g: &MobiusMap, x: &[Rational]) -> Result<Multivector> {
    weight_impl(t, g, x, false)
}

fn weight_impl(t: i64, g: &MobiusMap, x: &[Rational], reversed: bool) -> Result<Multivector> {
    if t == 0 {
        return Err(Error::InvalidParameter("t = 0".into()));
    }
    let m = g.m as i64;
    let w = g.denominator(x)?;
    let n2 = versor_norm_sq(&w)?;
    if n2.is_zero() {
        return Err(Error::Singular("cx+d = 0".into()));
    }
    let order = t.abs();
    let j = (order + 1) / 2;
    Ok(match (order % 2 == 1, t > 0) {
        (true, true) => w.reversion().scale_rational(&rational_norm_pow(&n2, -(m - 2 * j + 2))?),
        (false, true) => Multivector::scalar(g.m, rational_norm_pow(&n2, 2 * j - m)?.into()),
        (true, false) => {
            let w = if reversed { w.reversion() } else { w };
            w.scale_rational(&rational_norm_pow(&n2, -(m + 2 * j))?)
        }
        (false, false) => Multivector::scalar(g.m, rational_norm_pow(&n2, -m - 2 * j)?.into()),
    })
}

/// Outcome of a cocycle check at one point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cocycle {
    /// `J(φ∘ψ, x) = J(ψ, x)·J(φ, ψ(x))`.
    pub holds: bool,
    /// `J(φ∘ψ, x) = J(φ, ψ(x))·J(ψ, x)`.
    pub reversed_holds: bool,
    /// The first form, using [`weight_j_printed`].
    pub printed_holds: bool,
}

/// Cocycle identity for the weights at `x`.
pub fn cocycle_check(t: i64, phi: &MobiusMap, psi: &MobiusMap, x: &[Rational]) -> Result<Cocycle> {
    let y = psi.apply(x)?;
    let comp = phi.compose(psi);
    let lhs = weight_j(t, &comp, x)?;
    let a = weight_j(t, psi, x)?;
    let b = weight_j(t, phi, &y)?;
    let pl = weight_j_printed(t, &comp, x)?;
    let pa = weight_j_printed(t, psi, x)?;
    let pb = weight_j_printed(t, phi, &y)?;
    Ok(Cocycle { holds: lhs == &a * &b, reversed_holds: lhs == &b * &a, printed_holds: pl == &pa * &pb })
}

/// Sample pairs `(x, y)` with `x`, `y`, `x − y` of rational norm: `y` is `x`
/// reflected in one coordinate.
pub fn sample_pairs(m: usize) -> Vec<(Vec<Rational>, Vec<Rational>)> {
    let base: [(&[i64], usize); 3] = [(&[3, 4, 0], 0), (&[1, 2, 2], 2), (&[2, 3, 6], 0)];
    base.iter()
        .map(|(p, flip)| {
            let mut x = ints(p);
            x.resize(m, Rational::zero());
            let mut y = x.clone();
            y[*flip] = -&y[*flip];
            (x, y)
        })
        .collect()
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(p, q)| p - q).collect()
}

fn inv_point(x: &[Rational]) -> Result<Vec<Rational>> {
    let r2 = x.iter().fold(Rational::zero(), |acc, c| &acc + &(c * c));
    let s = (-&r2).recip().ok_or_else(|| Error::InvalidParameter("x = 0".into()))?;
    Ok(x.iter().map(|c| c * &s).collect())
}

/// Kernel families whose covariance is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `E_t` for order `t`.
    Order(u32),
    /// `x/||x||^α Z^M(xux/||x||², v)`.
    AlphaMonogenic(i64),
    /// `||x||^α Z^H(xux/||x||², v)`.
    AlphaHarmonic(i64),
}

impl Family {
    pub fn kind(&self) -> Kind {
        match self {
            Family::Order(o) if o % 2 == 0 => Kind::Harmonic,
            Family::Order(_) | Family::AlphaMonogenic(_) => Kind::Monogenic,
            Family::AlphaHarmonic(_) => Kind::Harmonic,
        }
    }

    pub fn kernel(&self, m: usize, k: u32) -> Result<RadialFn> {
        match *self {
            Family::Order(o) => fundamental_solution_kernel(m, k, o),
            Family::AlphaMonogenic(a) => kelvin_embed(&reproducing_kernel(m, k, Kind::Monogenic)?.poly, -a as i32, true),
            Family::AlphaHarmonic(a) => kelvin_embed(&reproducing_kernel(m, k, Kind::Harmonic)?.poly, a as i32, false),
        }
    }

    /// Power of `||x||·||y||` in the inversion identity.
    fn inversion_exponent(&self, m: usize) -> i64 {
        let m = m as i64;
        match *self {
            Family::Order(o) => m - 2 * ((o as i64 + 1) / 2),
            Family::AlphaMonogenic(a) => a - 2,
            Family::AlphaHarmonic(a) => -a,
        }
    }

    pub fn tag(&self) -> String {
        match self {
            Family::Order(o) => format!("order={o}"),
            Family::AlphaMonogenic(a) => format!("alpha1={a}"),
            Family::AlphaHarmonic(a) => format!("alpha2={a}"),
        }
    }
}

fn at(e: &RadialFn, w: &[Rational]) -> Result<CliffordPoly> {
    e.evaluate_partial(&[(Var::X, w.to_vec())])
}

fn poly_residual(a: &CliffordPoly, b: &CliffordPoly, seed: u64) -> Result<Residual> {
    Residual::from_poly(&a.sub(b)?, seed)
}

/// `E(x'−y', u', v') = E(x−y,u,v)` (even) or `s E(x−y,u,v) s̃` (odd) with primes = `s(·)s̃`.
pub fn rotation_covariance_check(m: usize, k: u32, family: Family, s: &SpinElement, o: &CheckOptions) -> Result<Residual> {
    let e = family.kernel(m, k)?;
    let sv = s.multivector(m)?;
    let mut parts = Vec::new();
    for (i, (x, y)) in sample_pairs(m).into_iter().enumerate() {
        let w = sub(&x, &y);
        let wp = sub(&s.act(&x)?, &s.act(&y)?);
        let lhs = at(&e, &wp)?
            .substitute(Var::U, &rotation_images(m, Var::U, &sv))?
            .substitute(Var::V, &rotation_images(m, Var::V, &sv))?;
        let base = at(&e, &w)?;
        let rhs = match family.kind() {
            Kind::Harmonic => base,
            Kind::Monogenic => base.left_mul_mv(&sv)?.right_mul_mv(&sv.reversion())?,
        };
        parts.push((format!("pair{i}"), poly_residual(&lhs, &rhs, o.seed)?));
    }
    Ok(Residual::combine(parts))
}

/// Empirical `ε` for the kernel of the given kind, checked at every sample point.
pub fn measured_sign(m: usize, k: u32, kind: Kind) -> Result<Option<i32>> {
    let z = reproducing_kernel(m, k, kind)?;
    let mut sign = None;
    for x in crate::samples::sample_points(m)? {
        match (reflection_sign(&z, &x)?, sign) {
            (None, _) => return Ok(None),
            (Some(s), None) => sign = Some(s),
            (Some(s), Some(t)) if s != t => return Ok(None),
            _ => {}
        }
    }
    Ok(sign)
}

/// Inversion covariance with `x' = x^{-1}`, `y' = y^{-1}`, `u' = yuy/||y||²`, `v' = xvx/||x||²`:
/// even `E' = ε (||x||·||y||)^{p} E`, odd `E' = ε·y E x·(||x||·||y||)^{p}`, with `ε` measured.
pub fn inversion_covariance_check(m: usize, k: u32, family: Family, o: &CheckOptions) -> Result<Residual> {
    let kind = family.kind();
    let eps = measured_sign(m, k, kind)?;
    let Some(eps) = eps else {
        return Ok(Residual {
            symbolic_zero: false,
            pointwise_zero: false,
            detail: "no consistent reflection sign".into(),
            notes: vec![("epsilon".into(), "none".into())],
        });
    };
    let e = family.kernel(m, k)?;
    let p = family.inversion_exponent(m);
    let mut parts = Vec::new();
    for (i, (x, y)) in sample_pairs(m).into_iter().enumerate() {
        let w = sub(&x, &y);
        let wp = sub(&inv_point(&x)?, &inv_point(&y)?);
        let lhs = at(&e, &wp)?
            .substitute(Var::U, &reflection_at(m, Var::U, &y))?
            .substitute(Var::V, &reflection_at(m, Var::V, &x))?;
        let scale = (&norm(&x)? * &norm(&y)?).pow(p as i32).expect("nonzero");
        let scale = &scale * &Rational::from_int(eps as i64);
        let base = at(&e, &w)?;
        let rhs = match kind {
            Kind::Harmonic => base,
            Kind::Monogenic => base.left_mul_mv(&vector_embed(m, &y)?)?.right_mul_mv(&vector_embed(m, &x)?)?,
        }
        .scale_rational(&scale);
        parts.push((format!("pair{i}"), poly_residual(&lhs, &rhs, o.seed)?));
    }
    Ok(Residual::combine(parts).note("epsilon", eps).note("claimed_epsilon", -1))
}

/// Generators used by the intertwining suite.
#[derive(Clone, Debug, PartialEq)]
pub enum IntertwiningGenerator {
    Translation(Vec<Rational>),
    /// Scale factor `λ`; the Vahlen entry is `√λ`, tracked by exponent only.
    Dilation(Rational),
    Rotation(SpinElement),
    Inversion,
}

impl IntertwiningGenerator {
    pub fn name(&self) -> &'static str {
        match self {
            IntertwiningGenerator::Translation(_) => "translation",
            IntertwiningGenerator::Dilation(_) => "dilation",
            IntertwiningGenerator::Rotation(_) => "rotation",
            IntertwiningGenerator::Inversion => "inversion",
        }
    }

    pub fn defaults(m: usize) -> Vec<IntertwiningGenerator> {
        let mut b = ints(&[1, -2, 3]);
        b.resize(m, Rational::from_int(1));
        vec![
            IntertwiningGenerator::Translation(b),
            IntertwiningGenerator::Dilation(Rational::from_int(2)),
            IntertwiningGenerator::Rotation(default_spin_elements(m)[2].clone()),
            IntertwiningGenerator::Inversion,
        ]
    }
}

/// Test functions `p(x) q(u)` with `p` a low-degree monomial and `q` a basis element.
fn intertwining_inputs(m: usize, k: u32, kind: Kind) -> Result<Vec<CliffordPoly>> {
    let monos = [vec![0u32; 0], vec![1], vec![0, 1, 1], vec![2, 0, 1]];
    let mut out = Vec::new();
    for (i, e) in monos.iter().enumerate() {
        let mut mono = Monomial::one();
        for (j, p) in e.iter().enumerate() {
            mono = mono.with_exp(Var::X, j + 1, *p);
        }
        let q = space_vector(m, k, kind, Source::BasisElement(i))?;
        out.push(CliffordPoly::monomial(m, mono, Multivector::one(m)).mul(&q)?);
    }
    Ok(out)
}

/// `D_t(J_t·f∘φ) = J_{−t}·(D_t f)∘φ` with `f∘φ = f(φ(x), (cx+d)u(cx+d)~/||cx+d||²)`.
pub fn intertwining_check(m: usize, k: u32, t: u32, gen: &IntertwiningGenerator, o: &CheckOptions) -> Result<Residual> {
    let op = operators::make_conformal(m, k, t)?;
    let kind = if t % 2 == 0 { Kind::Harmonic } else { Kind::Monogenic };
    let (mi, ti) = (m as i64, t as i64);
    let j = (ti + 1) / 2;
    let mut parts = Vec::new();
    let mut notes = Vec::new();
    for (i, f) in intertwining_inputs(m, k, kind)?.iter().enumerate() {
        let df = op.apply_with_budget(f, o.budget)?;
        let label = format!("f{i}");
        let r = match gen {
            IntertwiningGenerator::Translation(b) => {
                let images: Vec<CliffordPoly> = (1..=m)
                    .map(|i| CliffordPoly::var(m, Var::X, i).add(&CliffordPoly::scalar(m, b[i - 1].clone().into())))
                    .collect::<Result<_>>()?;
                let lhs = op.apply_with_budget(&f.substitute(Var::X, &images)?, o.budget)?;
                poly_residual(&lhs, &df.substitute(Var::X, &images)?, o.seed)?
            }
            IntertwiningGenerator::Dilation(lambda) => {
                // Both weights are powers of μ = √λ: J_t = μ^{a}, J_{−t} = μ^{b}; D_t(f(λx)) = λ^t (D_t f)(λx)
                // so the identity holds iff a + 2t = b.
                let (a, b) = if t % 2 == 0 { (mi - 2 * j, mi + 2 * j) } else { (mi - 2 * j + 1, mi + 2 * j - 1) };
                notes.push(("mu_exponents".to_string(), format!("J_t={a},J_-t={b}")));
                let images: Vec<CliffordPoly> =
                    (1..=m).map(|i| CliffordPoly::var(m, Var::X, i).scale_rational(lambda)).collect();
                let lhs = op.apply_with_budget(&f.substitute(Var::X, &images)?, o.budget)?;
                let lt = lambda.pow(t as i32).expect("nonzero");
                let mut r = poly_residual(&lhs, &df.substitute(Var::X, &images)?.scale_rational(&lt), o.seed)?;
                if a + 2 * ti != b {
                    r.symbolic_zero = false;
                    r.detail = format!("weight exponents {a} + 2t != {b}");
                }
                r
            }
            IntertwiningGenerator::Rotation(s) => {
                let sv = s.multivector(m)?;
                let pull = |g: &CliffordPoly| -> Result<CliffordPoly> {
                    g.substitute(Var::X, &rotation_images(m, Var::X, &sv))?.substitute(Var::U, &rotation_images(m, Var::U, &sv))
                };
                // cx+d = s, ||s|| = 1: both weights are s̃ in the odd case, 1 otherwise.
                let w = if t % 2 == 1 { sv.reversion() } else { Multivector::one(m) };
                let lhs = op.apply_with_budget(&pull(f)?.left_mul_mv(&w)?, o.budget)?;
                let r = poly_residual(&lhs, &pull(&df)?.left_mul_mv(&w)?, o.seed)?;
                if t % 2 == 1 {
                    let unreversed = poly_residual(&lhs, &pull(&df)?.left_mul_mv(&sv)?, o.seed)?;
                    r.note("unreversed_weight_holds", unreversed.passed())
                } else {
                    r
                }
            }
            IntertwiningGenerator::Inversion => {
                // cx+d = x: J_t = x̃/||x||^{m−2j+2} or ||x||^{2j−m}; J_{−t} = x/||x||^{m+2j} or ||x||^{−m−2j}.
                let pull = |g: &CliffordPoly| RadialFn::from_poly(g.clone(), 0).inversion_substitute().reflect_u();
                let weight = |g: RadialFn, neg: bool| -> Result<RadialFn> {
                    if t % 2 == 1 {
                        let e = if neg { -(mi + 2 * j) } else { -(mi - 2 * j + 2) };
                        Ok(g.left_mul_poly(&CliffordPoly::vector(m, Var::X))?.shift(e as i32))
                    } else {
                        let e = if neg { -mi - 2 * j } else { 2 * j - mi };
                        Ok(g.shift(e as i32))
                    }
                };
                let lhs = op.apply_with_budget(&weight(pull(f)?, false)?, o.budget)?;
                let rhs = weight(pull(&df)?, true)?;
                let diff = lhs.sub(&rhs)?;
                let mut r = Residual::from_radial(&diff, o.seed)?;
                if !r.passed() {
                    let flipped = lhs.add(&rhs)?;
                    r = r.note("holds_with_opposite_sign", flipped.is_zero());
                }
                r
            }
        };
        parts.push((label, r));
    }
    let mut r = Residual::combine(parts);
    r.notes.extend(notes.into_iter().take(1));
    Ok(r)
}

/// Checks `s x s̃` is a vector of the same norm for the sample points.
pub fn spin_action_check(m: usize, s: &SpinElement) -> Result<bool> {
    let sv = s.multivector(m)?;
    if (&sv * &sv.reversion()) != Multivector::one(m) {
        return Ok(false);
    }
    for x in crate::samples::sample_points(m)? {
        let y = s.act(&x)?;
        if norm(&y)? != norm(&x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `inversion_substitute` is an involution on the given function.
pub fn inversion_involution_check(f: &RadialFn) -> bool {
    f.inversion_substitute().inversion_substitute().sub(f).map(|d| d.is_zero()).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational;

    fn pt(v: &[i64]) -> Vec<Rational> {
        ints(v)
    }

    #[test]
    fn vahlen_examples() {
        let m = 3;
        assert!(vahlen_check(&MobiusMap::identity(m)));
        assert!(vahlen_check(&MobiusMap::inversion(m)));
        let mut neg = MobiusMap::inversion(m);
        neg.b = -&Multivector::one(m);
        assert!(vahlen_check(&neg));
        let mut refl = MobiusMap::identity(m);
        refl.a = Multivector::e(m, 1);
        refl.d = Multivector::e(m, 1);
        assert!(vahlen_check(&refl));
        assert!(vahlen_check(&MobiusMap::translation(&pt(&[1, 2, 3])).unwrap()));
        assert!(vahlen_check(&MobiusMap::dilation(m, Rational::new(3, 2)).unwrap()));
    }

    #[test]
    fn weights() {
        let m = 3;
        let x = pt(&[3, 4, 0]);
        let inv = MobiusMap::inversion(m);
        assert_eq!(weight_j(2, &inv, &x).unwrap(), Multivector::scalar(m, GaussianRational::ratio(1, 5)));
        let tr = MobiusMap::translation(&pt(&[1, 1, 1])).unwrap();
        for t in [1, 2, 3, -1, -2] {
            assert_eq!(weight_j(t, &tr, &x).unwrap(), Multivector::one(m));
        }
        assert_eq!(inv.apply(&x).unwrap(), vec![Rational::new(-3, 25), Rational::new(-4, 25), Rational::zero()]);
    }

    #[test]
    fn spin_elements_are_rotations() {
        for s in default_spin_elements(3) {
            assert!(spin_action_check(3, &s).unwrap());
        }
    }
}
