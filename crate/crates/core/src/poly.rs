//! Polynomials in the components of the vector variables `x`, `u`, `v`, with
//! multivector coefficients stored on the left, and the primitive operators
//! from which every differential operator here is composed.

use std::collections::HashMap;
use std::fmt;

use rustc_hash::FxHashMap;

use crate::clifford::{Blade, Conjugation, Multivector, MAX_DIM};
use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Var {
    X = 0,
    U = 1,
    V = 2,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::U, Var::V];

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::U => "u",
            Var::V => "v",
        }
    }

    pub fn parse(s: &str) -> Result<Var> {
        match s {
            "x" => Ok(Var::X),
            "u" => Ok(Var::U),
            "v" => Ok(Var::V),
            _ => Err(Error::UnknownVariable(s.to_string())),
        }
    }
}

/// A single scalar component, `index` is 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct VarId {
    pub var: Var,
    pub index: usize,
}

const SLOTS: usize = 3 * MAX_DIM;

/// Exponent vector over all `(var, index)` slots.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Monomial(pub [u8; SLOTS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; SLOTS])
    }

    #[inline]
    fn slot(var: Var, i: usize) -> usize {
        var as usize * MAX_DIM + (i - 1)
    }

    pub fn var(var: Var, i: usize) -> Self {
        let mut m = Self::one();
        m.0[Self::slot(var, i)] = 1;
        m
    }

    #[inline]
    pub fn exp(&self, var: Var, i: usize) -> u32 {
        self.0[Self::slot(var, i)] as u32
    }

    #[inline]
    pub fn with_exp(mut self, var: Var, i: usize, e: u32) -> Self {
        self.0[Self::slot(var, i)] = u8::try_from(e).expect("exponent overflow");
        self
    }

    #[inline]
    pub fn bump(self, var: Var, i: usize, delta: i32) -> Self {
        let e = self.exp(var, i) as i32 + delta;
        self.with_exp(var, i, e as u32)
    }

    pub fn degree(&self, var: Var) -> u32 {
        let b = var as usize * MAX_DIM;
        self.0[b..b + MAX_DIM].iter().map(|&e| e as u32).sum()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        out
    }

    /// The part of the monomial living in `var`, and the rest.
    pub fn split(&self, var: Var) -> (Monomial, Monomial) {
        let mut inside = Monomial::one();
        let mut rest = *self;
        let b = var as usize * MAX_DIM;
        inside.0[b..b + MAX_DIM].copy_from_slice(&self.0[b..b + MAX_DIM]);
        rest.0[b..b + MAX_DIM].fill(0);
        (inside, rest)
    }

    pub fn exponents(&self, var: Var, dim: usize) -> Vec<u32> {
        (1..=dim).map(|i| self.exp(var, i)).collect()
    }

    fn write(&self, f: &mut impl fmt::Write) -> fmt::Result {
        let mut first = true;
        for var in Var::ALL {
            for i in 1..=MAX_DIM {
                let e = self.exp(var, i);
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_char('*')?;
                }
                first = false;
                if e == 1 {
                    write!(f, "{}{}", var.name(), i)?;
                } else {
                    write!(f, "{}{}^{}", var.name(), i, e)?;
                }
            }
        }
        Ok(())
    }

    /// Graded-lex key: total degree, then exponents (larger first).
    fn grlex_key(&self) -> (u32, [std::cmp::Reverse<u8>; SLOTS]) {
        let mut r = [std::cmp::Reverse(0u8); SLOTS];
        for (d, s) in r.iter_mut().zip(self.0.iter()) {
            *d = std::cmp::Reverse(*s);
        }
        (self.total_degree(), r)
    }
}

/// Sparse polynomial with left multivector coefficients.
#[derive(Clone)]
pub struct CliffordPoly {
    dim: u8,
    terms: FxHashMap<Monomial, Multivector>,
}

/// Builder that merges equal monomials.
pub struct PolyBuilder {
    dim: usize,
    terms: FxHashMap<Monomial, Multivector>,
}

impl PolyBuilder {
    pub fn new(dim: usize) -> Self {
        PolyBuilder { dim, terms: FxHashMap::default() }
    }

    pub fn with_capacity(dim: usize, n: usize) -> Self {
        let mut terms = FxHashMap::default();
        terms.reserve(n);
        PolyBuilder { dim, terms }
    }

    pub fn add(&mut self, mono: Monomial, c: Multivector) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(existing) => *existing = &*existing + &c,
            None => {
                self.terms.insert(mono, c);
            }
        }
    }

    pub fn add_poly(&mut self, p: &CliffordPoly) {
        for (m, c) in &p.terms {
            self.add(*m, c.clone());
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn finish(mut self) -> CliffordPoly {
        self.terms.retain(|_, c| !c.is_zero());
        CliffordPoly { dim: self.dim as u8, terms: self.terms }
    }
}

/// Primitive differential and multiplication operators.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Primitive {
    /// `∂/∂var_i`.
    Partial(Var, usize),
    /// `D_var = Σ e_i ∂_{var_i}`, `e_i` multiplied on the left.
    Dirac(Var),
    Laplacian(Var),
    /// `Σ var_i ∂_{var_i}`.
    Euler(Var),
    /// Left multiplication by the vector `Σ var_i e_i`.
    VectorMul(Var),
    /// `⟨a, D_b⟩ = Σ a_i ∂_{b_i}`.
    PairVarD(Var, Var),
    /// `⟨D_a, D_b⟩ = Σ ∂_{a_i} ∂_{b_i}`.
    PairDD(Var, Var),
    /// Multiplication by `Σ var_i²`.
    NormSq(Var),
}

impl Primitive {
    /// Change in the polynomial degree of each variable (x, u, v).
    pub fn degree_shift(self) -> [i32; 3] {
        let mut d = [0; 3];
        match self {
            Primitive::Partial(v, _) | Primitive::Dirac(v) => d[v as usize] -= 1,
            Primitive::Laplacian(v) => d[v as usize] -= 2,
            Primitive::Euler(_) => {}
            Primitive::VectorMul(v) => d[v as usize] += 1,
            Primitive::PairVarD(a, b) => {
                d[a as usize] += 1;
                d[b as usize] -= 1;
            }
            Primitive::PairDD(a, b) => {
                d[a as usize] -= 1;
                d[b as usize] -= 1;
            }
            Primitive::NormSq(v) => d[v as usize] += 2,
        }
        d
    }
}

impl fmt::Display for Primitive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Primitive::Partial(v, i) => write!(f, "d/d{}{}", v.name(), i),
            Primitive::Dirac(v) => write!(f, "D_{}", v.name()),
            Primitive::Laplacian(v) => write!(f, "Lap_{}", v.name()),
            Primitive::Euler(v) => write!(f, "E_{}", v.name()),
            Primitive::VectorMul(v) => write!(f, "{}*", v.name()),
            Primitive::PairVarD(a, b) => write!(f, "<{},D_{}>", a.name(), b.name()),
            Primitive::PairDD(a, b) => write!(f, "<D_{},D_{}>", a.name(), b.name()),
            Primitive::NormSq(v) => write!(f, "|{}|^2*", v.name()),
        }
    }
}

fn int(n: u32) -> Rational {
    Rational::from_int(n as i64)
}

impl CliffordPoly {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_DIM);
        CliffordPoly { dim: dim as u8, terms: FxHashMap::default() }
    }

    pub fn constant(c: Multivector) -> Self {
        let mut b = PolyBuilder::new(c.dim());
        b.add(Monomial::one(), c);
        b.finish()
    }

    pub fn scalar(dim: usize, c: GaussianRational) -> Self {
        Self::constant(Multivector::scalar(dim, c))
    }

    pub fn one(dim: usize) -> Self {
        Self::scalar(dim, GaussianRational::one())
    }

    pub fn monomial(dim: usize, mono: Monomial, c: Multivector) -> Self {
        assert_eq!(c.dim(), dim);
        let mut b = PolyBuilder::new(dim);
        b.add(mono, c);
        b.finish()
    }

    /// The component `var_i` as a scalar polynomial.
    pub fn var(dim: usize, var: Var, i: usize) -> Self {
        assert!(i >= 1 && i <= dim, "component {i} outside dimension {dim}");
        Self::monomial(dim, Monomial::var(var, i), Multivector::one(dim))
    }

    /// `Σ var_i e_i`.
    pub fn vector(dim: usize, var: Var) -> Self {
        let mut b = PolyBuilder::new(dim);
        for i in 1..=dim {
            b.add(Monomial::var(var, i), Multivector::e(dim, i));
        }
        b.finish()
    }

    /// `⟨a, b⟩ = Σ a_i b_i` as a scalar polynomial.
    pub fn inner(dim: usize, a: Var, b: Var) -> Self {
        let mut out = PolyBuilder::new(dim);
        for i in 1..=dim {
            out.add(Monomial::var(a, i).mul(&Monomial::var(b, i)), Multivector::one(dim));
        }
        out.finish()
    }

    /// `Σ var_i²`.
    pub fn norm_sq(dim: usize, var: Var) -> Self {
        Self::inner(dim, var, var)
    }

    /// `Σ c_i var_i` with complex coefficients (e.g. `⟨u, 2f_1⟩ = u_1 - i u_2`).
    pub fn linear_form(dim: usize, var: Var, coeffs: &[GaussianRational]) -> Self {
        let mut out = PolyBuilder::new(dim);
        for (i, c) in coeffs.iter().enumerate() {
            out.add(Monomial::var(var, i + 1), Multivector::scalar(dim, c.clone()));
        }
        out.finish()
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Multivector)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &Monomial) -> Multivector {
        self.terms.get(mono).cloned().unwrap_or_else(|| Multivector::zero(self.dim()))
    }

    /// Terms in canonical order: graded lex on exponents.
    pub fn sorted_terms(&self) -> Vec<(Monomial, Multivector)> {
        let mut v: Vec<(Monomial, Multivector)> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by(|a, b| a.0.grlex_key().cmp(&b.0.grlex_key()));
        v
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            Err(Error::DimensionMismatch(self.dim(), other.dim()))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let (big, small) = if self.len() >= other.len() { (self, other) } else { (other, self) };
        let mut b = PolyBuilder { dim: self.dim(), terms: big.terms.clone() };
        b.add_poly(small);
        Ok(b.finish())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    /// Clifford-ordered product `p·q`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut b = PolyBuilder::with_capacity(self.dim(), self.len() * other.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                b.add(m1.mul(m2), c1 * c2);
            }
        }
        Ok(b.finish())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.dim());
        for _ in 0..e {
            acc = acc.mul(self).expect("same dimension");
        }
        acc
    }

    pub fn left_mul_mv(&self, a: &Multivector) -> Result<Self> {
        if a.dim() != self.dim() {
            return Err(Error::DimensionMismatch(a.dim(), self.dim()));
        }
        Ok(self.map_coeffs(|c| a * c))
    }

    pub fn right_mul_mv(&self, a: &Multivector) -> Result<Self> {
        if a.dim() != self.dim() {
            return Err(Error::DimensionMismatch(a.dim(), self.dim()));
        }
        Ok(self.map_coeffs(|c| c * a))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        self.map_coeffs(|x| x.scale(c))
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.map_coeffs(|x| x.scale_rational(q))
    }

    pub fn map_coeffs(&self, f: impl Fn(&Multivector) -> Multivector) -> Self {
        let mut b = PolyBuilder::with_capacity(self.dim(), self.len());
        for (m, c) in &self.terms {
            b.add(*m, f(c));
        }
        b.finish()
    }

    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> Self {
        let mut b = PolyBuilder::with_capacity(self.dim(), self.len());
        for (m, c) in &self.terms {
            b.add(f(m), c.clone());
        }
        b.finish()
    }

    pub fn conjugate(&self, conv: Conjugation) -> Self {
        self.map_coeffs(|c| c.conjugate(conv))
    }

    /// Renames a variable (`x ↦ y` componentwise); the target must be absent.
    pub fn rename(&self, from: Var, to: Var) -> Result<Self> {
        if from == to {
            return Ok(self.clone());
        }
        let dim = self.dim();
        if self.terms.keys().any(|m| m.degree(to) > 0) {
            return Err(Error::InvalidParameter(format!("rename target {} already present", to.name())));
        }
        Ok(self.map_monomials(|m| {
            let mut out = *m;
            for i in 1..=dim {
                out = out.with_exp(to, i, m.exp(from, i)).with_exp(from, i, 0);
            }
            out
        }))
    }

    /// `Some(k)` if every term has degree `k` in `var` (zero counts as homogeneous of any degree).
    pub fn homogeneous_degree(&self, var: Var) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree(var));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self, var: Var, k: u32) -> bool {
        self.terms.keys().all(|m| m.degree(var) == k)
    }

    pub fn max_degree(&self, var: Var) -> u32 {
        self.terms.keys().map(|m| m.degree(var)).max().unwrap_or(0)
    }

    pub fn uses(&self, var: Var) -> bool {
        self.terms.keys().any(|m| m.degree(var) > 0)
    }

    /// True if every coefficient is a multiple of the identity.
    pub fn is_scalar_valued(&self) -> bool {
        self.terms.values().all(|c| c.as_scalar().is_some())
    }

    /// Split into homogeneous pieces by degree in `var`.
    pub fn by_degree(&self, var: Var) -> Vec<(u32, CliffordPoly)> {
        let mut groups: HashMap<u32, PolyBuilder> = HashMap::new();
        for (m, c) in &self.terms {
            groups.entry(m.degree(var)).or_insert_with(|| PolyBuilder::new(self.dim())).add(*m, c.clone());
        }
        let mut v: Vec<(u32, CliffordPoly)> = groups.into_iter().map(|(d, b)| (d, b.finish())).collect();
        v.sort_by_key(|(d, _)| *d);
        v
    }

    pub fn apply(&self, p: Primitive) -> Result<Self> {
        let dim = self.dim();
        let check = |i: usize| {
            if i == 0 || i > dim {
                Err(Error::UnknownVariable(format!("component {i} for m={dim}")))
            } else {
                Ok(())
            }
        };
        let mut b = PolyBuilder::with_capacity(dim, self.len() * 2);
        match p {
            Primitive::Partial(var, i) => {
                check(i)?;
                for (m, c) in &self.terms {
                    let e = m.exp(var, i);
                    if e > 0 {
                        b.add(m.bump(var, i, -1), c.scale_rational(&int(e)));
                    }
                }
            }
            Primitive::Dirac(var) => {
                for (m, c) in &self.terms {
                    for i in 1..=dim {
                        let e = m.exp(var, i);
                        if e > 0 {
                            b.add(m.bump(var, i, -1), c.left_mul_generator(i).scale_rational(&int(e)));
                        }
                    }
                }
            }
            Primitive::Laplacian(var) => {
                for (m, c) in &self.terms {
                    for i in 1..=dim {
                        let e = m.exp(var, i);
                        if e > 1 {
                            b.add(m.bump(var, i, -2), c.scale_rational(&int(e * (e - 1))));
                        }
                    }
                }
            }
            Primitive::Euler(var) => {
                for (m, c) in &self.terms {
                    let d = m.degree(var);
                    if d > 0 {
                        b.add(*m, c.scale_rational(&int(d)));
                    }
                }
            }
            Primitive::VectorMul(var) => {
                for (m, c) in &self.terms {
                    for i in 1..=dim {
                        b.add(m.bump(var, i, 1), c.left_mul_generator(i));
                    }
                }
            }
            Primitive::PairVarD(a, d) => {
                for (m, c) in &self.terms {
                    for i in 1..=dim {
                        let e = m.exp(d, i);
                        if e > 0 {
                            b.add(m.bump(d, i, -1).bump(a, i, 1), c.scale_rational(&int(e)));
                        }
                    }
                }
            }
            Primitive::PairDD(a, d) => {
                for (m, c) in &self.terms {
                    for i in 1..=dim {
                        let ea = m.exp(a, i);
                        if ea == 0 {
                            continue;
                        }
                        let m1 = m.bump(a, i, -1);
                        let ed = m1.exp(d, i);
                        if ed > 0 {
                            b.add(m1.bump(d, i, -1), c.scale_rational(&int(ea * ed)));
                        }
                    }
                }
            }
            Primitive::NormSq(var) => {
                for (m, c) in &self.terms {
                    for i in 1..=dim {
                        b.add(m.bump(var, i, 2), c.clone());
                    }
                }
            }
        }
        Ok(b.finish())
    }

    /// Replace `var_i` by the scalar polynomial `images[i-1]`.
    pub fn substitute(&self, var: Var, images: &[CliffordPoly]) -> Result<Self> {
        let dim = self.dim();
        if images.len() != dim {
            return Err(Error::DimensionMismatch(dim, images.len()));
        }
        if images.iter().any(|p| !p.is_scalar_valued()) {
            return Err(Error::InvalidParameter("substitution images must be scalar-valued".into()));
        }
        let mut powers: HashMap<(usize, u32), CliffordPoly> = HashMap::new();
        let mut power = |i: usize, e: u32| -> CliffordPoly {
            if let Some(p) = powers.get(&(i, e)) {
                return p.clone();
            }
            let p = images[i - 1].pow(e);
            powers.insert((i, e), p.clone());
            p
        };
        let mut out = PolyBuilder::new(dim);
        for (m, c) in &self.terms {
            let (inside, rest) = m.split(var);
            let mut acc = CliffordPoly::monomial(dim, rest, c.clone());
            for i in 1..=dim {
                let e = inside.exp(var, i);
                if e > 0 {
                    acc = acc.mul(&power(i, e))?;
                }
            }
            out.add_poly(&acc);
        }
        Ok(out.finish())
    }

    /// Assign rational values to some variables, keeping the others symbolic.
    pub fn evaluate_partial(&self, assignment: &[(Var, Vec<Rational>)]) -> Result<Self> {
        let dim = self.dim();
        for (_, pt) in assignment {
            if pt.len() != dim {
                return Err(Error::DimensionMismatch(dim, pt.len()));
            }
        }
        let mut out = PolyBuilder::new(dim);
        for (m, c) in &self.terms {
            let mut value = Rational::one();
            let mut rest = *m;
            for (var, pt) in assignment {
                for i in 1..=dim {
                    let e = m.exp(*var, i);
                    if e > 0 {
                        value *= &pt[i - 1].pow(e as i32).expect("non-negative power");
                        rest = rest.with_exp(*var, i, 0);
                    }
                }
            }
            out.add(rest, c.scale_rational(&value));
        }
        Ok(out.finish())
    }

    /// Exact value at a point; every variable in use must be assigned.
    pub fn evaluate(&self, assignment: &[(Var, Vec<Rational>)]) -> Result<Multivector> {
        for var in Var::ALL {
            if self.uses(var) && !assignment.iter().any(|(v, _)| *v == var) {
                return Err(Error::MissingAssignment(var.name().to_string()));
            }
        }
        let p = self.evaluate_partial(assignment)?;
        Ok(p.coeff(&Monomial::one()))
    }

    /// Canonical text form used in reports.
    pub fn to_canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in self.sorted_terms() {
            let mut mono = String::new();
            m.write(&mut mono).expect("string write");
            for (b, x) in c.terms() {
                let mut s = format!("{x}");
                if *b != Blade::SCALAR {
                    s.push_str(&format!("*{b}"));
                }
                if !mono.is_empty() {
                    s.push('*');
                    s.push_str(&mono);
                }
                parts.push(s);
            }
        }
        parts.join(" + ")
    }
}

impl PartialEq for CliffordPoly {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.terms == other.terms
    }
}

impl Eq for CliffordPoly {}

impl fmt::Debug for CliffordPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_canonical_string())
    }
}

impl fmt::Display for CliffordPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_canonical_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn arithmetic_examples() {
        let u1 = CliffordPoly::var(3, Var::U, 1);
        assert_eq!(u1.mul(&u1).unwrap(), CliffordPoly::monomial(3, Monomial::one().with_exp(Var::U, 1, 2), Multivector::one(3)));
        let u = CliffordPoly::vector(2, Var::U);
        let sq = u.mul(&u).unwrap();
        assert_eq!(sq, CliffordPoly::norm_sq(2, Var::U).neg());
        let lhs = u1.right_mul_mv(&Multivector::e(3, 2)).unwrap().left_mul_mv(&Multivector::e(3, 1)).unwrap();
        let e12 = &Multivector::e(3, 1) * &Multivector::e(3, 2);
        assert_eq!(lhs, CliffordPoly::monomial(3, Monomial::var(Var::U, 1), e12));
    }

    #[test]
    fn primitive_examples() {
        let u = CliffordPoly::vector(3, Var::U);
        assert_eq!(u.apply(Primitive::Dirac(Var::U)).unwrap(), CliffordPoly::scalar(3, GaussianRational::from_int(-3)));
        let r2 = CliffordPoly::norm_sq(4, Var::X);
        assert_eq!(r2.apply(Primitive::Laplacian(Var::X)).unwrap(), CliffordPoly::scalar(4, GaussianRational::from_int(8)));
        let ux = CliffordPoly::var(3, Var::U, 1).mul(&CliffordPoly::var(3, Var::X, 1)).unwrap();
        assert_eq!(ux.apply(Primitive::PairDD(Var::U, Var::X)).unwrap(), CliffordPoly::one(3));
    }

    #[test]
    fn evaluation_and_missing_assignment() {
        let u1 = CliffordPoly::var(3, Var::U, 1);
        let v = u1.evaluate(&[(Var::U, vec![q(3), q(4), q(0)])]).unwrap();
        assert_eq!(v, Multivector::scalar(3, GaussianRational::from_int(3)));
        assert!(matches!(u1.evaluate(&[]), Err(Error::MissingAssignment(_))));
        assert!(CliffordPoly::zero(3).evaluate(&[]).unwrap().is_zero());
    }

    #[test]
    fn xux_identity() {
        let m = 4;
        let x = CliffordPoly::vector(m, Var::X);
        let u = CliffordPoly::vector(m, Var::U);
        let lhs = x.mul(&u).unwrap().mul(&x).unwrap();
        let r2 = CliffordPoly::norm_sq(m, Var::X);
        let ux = CliffordPoly::inner(m, Var::U, Var::X);
        let rhs = r2.mul(&u).unwrap().sub(&ux.mul(&x).unwrap().scale_rational(&q(2))).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn canonical_string_is_ordered() {
        let p = CliffordPoly::var(3, Var::U, 2)
            .add(&CliffordPoly::var(3, Var::U, 1).mul(&CliffordPoly::var(3, Var::U, 1)).unwrap())
            .unwrap()
            .add(&CliffordPoly::one(3))
            .unwrap();
        assert_eq!(p.to_canonical_string(), "1 + 1*u2 + 1*u1^2");
    }
}
