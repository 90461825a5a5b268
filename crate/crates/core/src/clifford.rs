//! Sparse multivectors in the complex Clifford algebra `Cl_m(C)` with
//! `e_i e_j + e_j e_i = -2 δ_ij`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Rational};

/// Largest supported dimension; blades fit in a byte.
pub const MAX_DIM: usize = 8;

/// A basis blade `e_A`, stored as a bitmask (bit `i-1` set iff `i ∈ A`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Blade(pub u8);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    /// Blade `e_i` for a 1-based index.
    pub fn vector(i: usize) -> Blade {
        debug_assert!((1..=MAX_DIM).contains(&i));
        Blade(1 << (i - 1))
    }

    /// Build from 1-based indices in strictly ascending order.
    pub fn from_indices(idx: &[usize]) -> Option<Blade> {
        let mut bits = 0u8;
        let mut last = 0;
        for &i in idx {
            if i <= last || i > MAX_DIM {
                return None;
            }
            bits |= 1 << (i - 1);
            last = i;
        }
        Some(Blade(bits))
    }

    pub fn indices(self) -> Vec<usize> {
        (0..MAX_DIM).filter(|b| self.0 >> b & 1 == 1).map(|b| b + 1).collect()
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    /// Largest index present, 0 for the scalar blade.
    pub fn top(self) -> usize {
        8 - self.0.leading_zeros() as usize
    }

    /// `(-1)^{|A|(|A|-1)/2}`.
    pub fn reversion_sign(self) -> i64 {
        let g = self.grade();
        if (g * g.saturating_sub(1) / 2) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Sign of the Clifford conjugate `ē_A = (-1)^{|A|} ẽ_A`.
    pub fn conjugation_sign(self) -> i64 {
        let g = self.grade();
        let s = self.reversion_sign();
        if g % 2 == 0 {
            s
        } else {
            -s
        }
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Blade {
    /// Graded order, then lexicographic on the ascending index list.
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade()
            .cmp(&other.grade())
            .then_with(|| self.0.reverse_bits().cmp(&other.0.reverse_bits()).reverse())
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.indices().iter().map(|i| format!("e{i}")).collect();
        write!(f, "{}", parts.join(""))
    }
}

/// Sign of `e_A e_B` by counting transpositions and contractions, no table.
pub fn blade_sign_counted(a: Blade, b: Blade) -> i64 {
    let mut swaps = 0u32;
    for j in 0..MAX_DIM {
        if b.0 >> j & 1 == 1 {
            // Each generator of b passes the generators of a with larger index.
            swaps += ((a.0 as u32) >> (j + 1)).count_ones();
        }
    }
    swaps += (a.0 & b.0).count_ones();
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

fn sign_table() -> &'static [i8] {
    static TABLE: OnceLock<Vec<i8>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = 1usize << MAX_DIM;
        let mut t = vec![0i8; n * n];
        for a in 0..n {
            for b in 0..n {
                t[a * n + b] = blade_sign_counted(Blade(a as u8), Blade(b as u8)) as i8;
            }
        }
        t
    })
}

/// `e_A e_B = sign · e_{A Δ B}`.
#[inline]
pub fn blade_product(a: Blade, b: Blade) -> (i64, Blade) {
    let s = sign_table()[(a.0 as usize) << MAX_DIM | b.0 as usize];
    (s as i64, Blade(a.0 ^ b.0))
}

/// Element of `Cl_m(C)` with Gaussian-rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Multivector {
    dim: u8,
    /// Sorted by blade order; no zero coefficients.
    terms: Vec<(Blade, GaussianRational)>,
}

impl Multivector {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        Multivector { dim: dim as u8, terms: Vec::new() }
    }

    pub fn scalar(dim: usize, c: GaussianRational) -> Self {
        Self::blade(dim, Blade::SCALAR, c)
    }

    pub fn one(dim: usize) -> Self {
        Self::scalar(dim, GaussianRational::one())
    }

    pub fn blade(dim: usize, b: Blade, c: GaussianRational) -> Self {
        let mut mv = Self::zero(dim);
        assert!(b.top() <= dim, "blade {b} outside dimension {dim}");
        if !c.is_zero() {
            mv.terms.push((b, c));
        }
        mv
    }

    /// Generator `e_i`, 1-based.
    pub fn e(dim: usize, i: usize) -> Self {
        Self::blade(dim, Blade::vector(i), GaussianRational::one())
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Blade, GaussianRational)>) -> Self {
        let mut acc = Accumulator::new(dim);
        for (b, c) in terms {
            assert!(b.top() <= dim, "blade {b} outside dimension {dim}");
            acc.add(b, &c);
        }
        acc.finish()
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn terms(&self) -> &[(Blade, GaussianRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: Blade) -> GaussianRational {
        self.terms
            .iter()
            .find(|(t, _)| *t == b)
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    pub fn scalar_part(&self) -> GaussianRational {
        self.coeff(Blade::SCALAR)
    }

    /// Some(c) if this is `c · 1`.
    pub fn as_scalar(&self) -> Option<GaussianRational> {
        match self.terms.as_slice() {
            [] => Some(GaussianRational::zero()),
            [(Blade::SCALAR, c)] => Some(c.clone()),
            _ => None,
        }
    }

    pub fn grades(&self) -> Vec<u32> {
        let mut g: Vec<u32> = self.terms.iter().map(|(b, _)| b.grade()).collect();
        g.dedup();
        g
    }

    pub fn is_grade(&self, g: u32) -> bool {
        self.terms.iter().all(|(b, _)| b.grade() == g)
    }

    pub fn grade_part(&self, g: u32) -> Self {
        Multivector {
            dim: self.dim,
            terms: self.terms.iter().filter(|(b, _)| b.grade() == g).cloned().collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim());
        }
        Multivector { dim: self.dim, terms: self.terms.iter().map(|(b, x)| (*b, x * c)).collect() }
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(&GaussianRational::real(q.clone()))
    }

    fn map_signs(&self, f: impl Fn(Blade) -> i64) -> Self {
        Multivector {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(b, c)| (*b, if f(*b) < 0 { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// Reversion `ẽ_A = (-1)^{|A|(|A|-1)/2} e_A`.
    pub fn reversion(&self) -> Self {
        self.map_signs(Blade::reversion_sign)
    }

    /// Main involution `e_A ↦ (-1)^{|A|} e_A`.
    pub fn involution(&self) -> Self {
        self.map_signs(|b| if b.grade() % 2 == 0 { 1 } else { -1 })
    }

    /// Clifford conjugation (reversion composed with the main involution).
    pub fn clifford_conjugate(&self) -> Self {
        self.map_signs(Blade::conjugation_sign)
    }

    pub fn complex_conjugate(&self) -> Self {
        Multivector {
            dim: self.dim,
            terms: self.terms.iter().map(|(b, c)| (*b, c.conj())).collect(),
        }
    }

    /// Applies a conjugation convention.
    pub fn conjugate(&self, conv: Conjugation) -> Self {
        match conv {
            Conjugation::Hermitian => self.clifford_conjugate().complex_conjugate(),
            Conjugation::Reversion => self.reversion().complex_conjugate(),
            Conjugation::None => self.clone(),
        }
    }

    pub fn geometric_product(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.terms.is_empty() || other.terms.is_empty() {
            return Self::zero(self.dim());
        }
        if let [(Blade::SCALAR, c)] = self.terms.as_slice() {
            return other.scale(c);
        }
        if let [(Blade::SCALAR, c)] = other.terms.as_slice() {
            return self.scale(c);
        }
        let mut acc = Accumulator::new(self.dim());
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let (s, blade) = blade_product(*a, *b);
                let p = x * y;
                if s < 0 {
                    acc.sub(blade, &p);
                } else {
                    acc.add(blade, &p);
                }
            }
        }
        acc.finish()
    }

    /// `e_i · self`, the hot path of every Dirac operator.
    pub fn left_mul_generator(&self, i: usize) -> Self {
        let g = Blade::vector(i);
        let mut terms: Vec<(Blade, GaussianRational)> = self
            .terms
            .iter()
            .map(|(b, c)| {
                let (s, nb) = blade_product(g, *b);
                (nb, if s < 0 { -c } else { c.clone() })
            })
            .collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Multivector { dim: self.dim, terms }
    }

    pub fn to_f64_pairs(&self) -> Vec<(Blade, f64, f64)> {
        self.terms.iter().map(|(b, c)| (*b, c.re.to_f64(), c.im.to_f64())).collect()
    }
}

/// Dense scratch space for products; flushed into a sparse multivector.
pub(crate) struct Accumulator {
    dim: usize,
    slots: Vec<GaussianRational>,
}

impl Accumulator {
    pub(crate) fn new(dim: usize) -> Self {
        Accumulator { dim, slots: vec![GaussianRational::zero(); 1 << dim] }
    }

    pub(crate) fn add(&mut self, b: Blade, c: &GaussianRational) {
        self.slots[b.0 as usize] += c;
    }

    pub(crate) fn sub(&mut self, b: Blade, c: &GaussianRational) {
        self.slots[b.0 as usize] -= c;
    }

    pub(crate) fn finish(self) -> Multivector {
        let mut terms: Vec<(Blade, GaussianRational)> = self
            .slots
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Blade(i as u8), c))
            .collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Multivector { dim: self.dim as u8, terms }
    }
}

impl<'a> Add<&'a Multivector> for &'a Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        merge(self, rhs, false)
    }
}

impl<'a> Sub<&'a Multivector> for &'a Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        merge(self, rhs, true)
    }
}

fn merge(a: &Multivector, b: &Multivector, negate: bool) -> Multivector {
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() || j < b.terms.len() {
        let ord = match (a.terms.get(i), b.terms.get(j)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                out.push(a.terms[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                let (bl, c) = &b.terms[j];
                out.push((*bl, if negate { -c } else { c.clone() }));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate { &a.terms[i].1 - &b.terms[j].1 } else { &a.terms[i].1 + &b.terms[j].1 };
                if !c.is_zero() {
                    out.push((a.terms[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    Multivector { dim: a.dim, terms: out }
}

impl<'a> Mul<&'a Multivector> for &'a Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        self.mul_unchecked(rhs)
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        Multivector { dim: self.dim, terms: self.terms.iter().map(|(b, c)| (*b, -c)).collect() }
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(b, c)| if *b == Blade::SCALAR { format!("{c}") } else { format!("{c}*{b}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Which bar-operation the inner products use.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Conjugation {
    /// Complex conjugation with Clifford conjugation (`ē_i = -e_i`).
    Hermitian,
    /// Complex conjugation with reversion.
    Reversion,
    /// No conjugation at all.
    None,
}

/// `x = Σ x_i e_i`.
pub fn vector_embed(dim: usize, coords: &[Rational]) -> Result<Multivector> {
    if coords.len() != dim {
        return Err(Error::DimensionMismatch(dim, coords.len()));
    }
    Ok(Multivector::from_terms(
        dim,
        coords.iter().enumerate().map(|(i, c)| (Blade::vector(i + 1), GaussianRational::real(c.clone()))),
    ))
}

pub fn vector_embed_ints(dim: usize, coords: &[i64]) -> Result<Multivector> {
    let q: Vec<Rational> = coords.iter().map(|&c| Rational::from_int(c)).collect();
    vector_embed(dim, &q)
}

/// Witt basis and the spinor idempotent.
#[derive(Clone, Debug)]
pub struct WittBasis {
    pub f: Vec<Multivector>,
    pub f_dagger: Vec<Multivector>,
    pub idempotent: Multivector,
}

/// `f_j = (e_{2j-1} - i e_{2j})/2`, `f_j† = -(e_{2j-1} + i e_{2j})/2`, `I = f_1 f_1† ⋯ f_n f_n†`.
pub fn witt_and_idempotent(dim: usize) -> Result<WittBasis> {
    if dim < 2 {
        return Err(Error::InvalidParameter(format!("Witt basis needs m >= 2, got {dim}")));
    }
    let half = GaussianRational::ratio(1, 2);
    let i_half = GaussianRational::new(Rational::zero(), Rational::new(1, 2));
    let mut f = Vec::new();
    let mut fd = Vec::new();
    let mut idem = Multivector::one(dim);
    for j in 1..=dim / 2 {
        let a = Multivector::e(dim, 2 * j - 1);
        let b = Multivector::e(dim, 2 * j);
        let fj = &a.scale(&half) - &b.scale(&i_half);
        let fdj = -&(&a.scale(&half) + &b.scale(&i_half));
        idem = &(&idem * &fj) * &fdj;
        f.push(fj);
        fd.push(fdj);
    }
    Ok(WittBasis { f, f_dagger: fd, idempotent: idem })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> Multivector {
        Multivector::e(3, i)
    }

    #[test]
    fn generator_relations() {
        assert_eq!(&e(1) * &e(1), Multivector::scalar(3, GaussianRational::from_int(-1)));
        assert!((&(&e(1) * &e(2)) + &(&e(2) * &e(1))).is_zero());
        let e12 = &e(1) * &e(2);
        let e23 = &e(2) * &e(3);
        assert_eq!(&e12 * &e23, -&(&e(1) * &e(3)));
    }

    #[test]
    fn reversion_examples() {
        let e123 = &(&e(1) * &e(2)) * &e(3);
        assert_eq!(e123.reversion(), -&e123);
        assert_eq!((&e(1) * &e(2)).reversion(), &e(2) * &e(1));
    }

    #[test]
    fn witt_identities() {
        for m in 2..=6 {
            let w = witt_and_idempotent(m).unwrap();
            let f1 = &w.f[0];
            assert!((f1 * f1).is_zero());
            assert_eq!(&w.idempotent * &w.idempotent, w.idempotent);
            assert!((f1 * &w.idempotent).is_zero());
        }
        assert!(witt_and_idempotent(1).is_err());
    }

    #[test]
    fn blade_order_is_graded() {
        let mut v = vec![Blade(0b110), Blade(0b001), Blade(0b011), Blade(0), Blade(0b100)];
        v.sort();
        let s: Vec<String> = v.iter().map(|b| b.to_string()).collect();
        assert_eq!(s, ["1", "e1", "e3", "e1e2", "e2e3"]);
    }
}
