//! Exact scalars: a rational with an `i64` fast path, Gaussian rationals over it,
//! and constants of the form `q · π^(n/2)`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number.
///
/// Values whose numerator and denominator fit in `i64` stay inline; anything
/// larger is promoted to a heap `BigRational`. The representation is kept
/// canonical so that derived structural comparisons are value comparisons.
#[derive(Clone)]
pub enum Rational {
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub fn zero() -> Self {
        Rational::Small(0, 1)
    }

    pub fn one() -> Self {
        Rational::Small(1, 1)
    }

    pub fn from_int(n: i64) -> Self {
        Rational::Small(n, 1)
    }

    /// `n / d`; panics on a zero denominator.
    pub fn new(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Self::from_i128(n as i128, d as i128)
    }

    fn from_i128(n: i128, d: i128) -> Self {
        let (mut n, mut d) = (n, d);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = gcd_i128(n, d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        if n == 0 {
            return Rational::Small(0, 1);
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) if a != i64::MIN => Rational::Small(a, b),
            _ => Rational::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        // BigRational arithmetic already reduces; only demotion is needed here.
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN {
                return Rational::Small(n, d);
            }
        }
        Rational::Big(Box::new(r))
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rational::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(_, d) => *d == 1,
            Rational::Big(b) => b.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Rational::Small(n, _) => n.signum() as i32,
            Rational::Big(b) => {
                if b.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        match self {
            Rational::Small(0, _) => None,
            Rational::Small(n, d) => Some(Self::from_i128(*d as i128, *n as i128)),
            Rational::Big(b) => Some(Self::from_big(b.recip())),
        }
    }

    pub fn pow(&self, e: i32) -> Option<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut acc = Rational::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }

    /// Exact square root when the value is a square of a rational.
    pub fn sqrt(&self) -> Option<Self> {
        if self.signum() < 0 {
            return None;
        }
        let b = self.to_big();
        let n = b.numer().sqrt();
        let d = b.denom().sqrt();
        if &(&n * &n) == b.numer() && &(&d * &d) == b.denom() {
            Some(Self::from_big(BigRational::new(n, d)))
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Rational::Small(n, d) => *n as f64 / *d as f64,
            Rational::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational::from_big(r)
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => a == c && b == d,
            (Rational::Big(x), Rational::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Rational::Small(n, d) => {
                n.hash(state);
                d.hash(state);
            }
            Rational::Big(b) => b.hash(state),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        match (self, rhs) {
            (Rational::Small(0, _), _) => rhs.clone(),
            (_, Rational::Small(0, _)) => self.clone(),
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                if b == d {
                    Rational::from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                    match (a.checked_mul(d), c.checked_mul(b), b.checked_mul(d)) {
                        (Some(x), Some(y), Some(z)) => match x.checked_add(y) {
                            Some(s) => Rational::from_i128(s, z),
                            None => Rational::from_big(self.to_big() + rhs.to_big()),
                        },
                        _ => Rational::from_big(self.to_big() + rhs.to_big()),
                    }
                }
            }
            _ => Rational::from_big(self.to_big() + rhs.to_big()),
        }
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        match (self, rhs) {
            (Rational::Small(0, _), _) | (_, Rational::Small(0, _)) => Rational::zero(),
            (Rational::Small(1, 1), _) => rhs.clone(),
            (_, Rational::Small(1, 1)) => self.clone(),
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                // i64 * i64 always fits in i128.
                Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rational::from_big(self.to_big() * rhs.to_big()),
        }
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        self * &rhs.recip().expect("division by zero rational")
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match self {
            Rational::Small(n, d) => Rational::from_i128(-(*n as i128), *d as i128),
            Rational::Big(b) => Rational::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

macro_rules! forward_owned {
    ($t:ty, $tr:ident, $m:ident) => {
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a $t> for $t {
            type Output = $t;
            fn $m(self, rhs: &'a $t) -> $t {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Rational, Add, add);
forward_owned!(Rational, Sub, sub);
forward_owned!(Rational, Mul, mul);
forward_owned!(Rational, Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(b) => {
                if b.is_integer() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Element of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        Self::real(Rational::one())
    }

    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn real(re: Rational) -> Self {
        Self::new(re, Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(Rational::from_int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::real(Rational::new(n, d))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sq(&self) -> Rational {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn recip(&self) -> Option<Self> {
        if self.im.is_zero() {
            return Some(Self::real(self.re.recip()?));
        }
        let n = self.norm_sq().recip()?;
        Some(Self::new(&self.re * &n, -(&self.im * &n)))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() {
            return rhs.scale(&self.re);
        }
        if rhs.im.is_zero() {
            return self.scale(&rhs.re);
        }
        GaussianRational::new(
            &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        )
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self * &rhs.recip().expect("division by zero")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

forward_owned!(GaussianRational, Add, add);
forward_owned!(GaussianRational, Sub, sub);
forward_owned!(GaussianRational, Mul, mul);
forward_owned!(GaussianRational, Div, div);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                if self.im.signum() < 0 {
                    write!(f, "({}-{}i)", self.re, self.im.abs())
                } else {
                    write!(f, "({}+{}i)", self.re, self.im)
                }
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational::one()
    }
}

/// `coeff · π^(half_pi_power / 2)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SymbolicConstant {
    pub coeff: GaussianRational,
    /// Twice the exponent of π, so half-integers stay exact.
    pub half_pi_power: i32,
}

impl SymbolicConstant {
    pub fn rational(q: Rational) -> Self {
        SymbolicConstant { coeff: q.into(), half_pi_power: 0 }
    }

    pub fn new(coeff: GaussianRational, half_pi_power: i32) -> Self {
        SymbolicConstant { coeff, half_pi_power }
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    /// Exponent of π as (numerator, 2).
    pub fn pi_power(&self) -> (i32, i32) {
        (self.half_pi_power, 2)
    }

    pub fn mul(&self, other: &Self) -> Self {
        SymbolicConstant {
            coeff: &self.coeff * &other.coeff,
            half_pi_power: self.half_pi_power + other.half_pi_power,
        }
    }

    pub fn recip(&self) -> Option<Self> {
        Some(SymbolicConstant { coeff: self.coeff.recip()?, half_pi_power: -self.half_pi_power })
    }

    pub fn scale(&self, q: &Rational) -> Self {
        SymbolicConstant { coeff: self.coeff.scale(q), half_pi_power: self.half_pi_power }
    }

    /// Sum of two constants; only defined when the π powers agree.
    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        if self.coeff.is_zero() {
            return Some(other.clone());
        }
        if other.coeff.is_zero() {
            return Some(self.clone());
        }
        (self.half_pi_power == other.half_pi_power).then(|| SymbolicConstant {
            coeff: &self.coeff + &other.coeff,
            half_pi_power: self.half_pi_power,
        })
    }

    pub fn to_f64(&self) -> f64 {
        self.coeff.re.to_f64() * std::f64::consts::PI.powf(self.half_pi_power as f64 / 2.0)
    }
}

impl fmt::Display for SymbolicConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.half_pi_power {
            0 => write!(f, "{}", self.coeff),
            p if p % 2 == 0 => write!(f, "{}*pi^{}", self.coeff, p / 2),
            p => write!(f, "{}*pi^({}/2)", self.coeff, p),
        }
    }
}

/// Binomial coefficient, zero outside the triangle.
pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc as i64
}

/// Double factorial `n!!` with `(-1)!! = 0!! = 1`.
pub fn double_factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut i = n;
    while i > 1 {
        acc *= i;
        i -= 2;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_path_promotes_and_demotes() {
        let big = Rational::from_int(i64::MAX);
        let s = &big + &big;
        assert!(matches!(s, Rational::Big(_)));
        let back = &s - &big;
        assert_eq!(back, big);
        assert!(matches!(&s / &s, Rational::Small(1, 1)));
    }

    #[test]
    fn gaussian_field_ops() {
        let a = GaussianRational::new(Rational::new(1, 2), Rational::new(-3, 4));
        let b = GaussianRational::new(Rational::new(2, 3), Rational::from_int(5));
        let q = &a / &b;
        assert_eq!(&q * &b, a);
        assert_eq!(&GaussianRational::i() * &GaussianRational::i(), GaussianRational::from_int(-1));
    }

    #[test]
    fn sqrt_of_squares_only() {
        assert_eq!(Rational::new(49, 4).sqrt(), Some(Rational::new(7, 2)));
        assert_eq!(Rational::from_int(2).sqrt(), None);
    }

    #[test]
    fn symbolic_constant_powers_add() {
        let w = SymbolicConstant::new(GaussianRational::from_int(4), 2);
        let inv = w.recip().unwrap();
        assert_eq!(w.mul(&inv), SymbolicConstant::one());
        assert!(w.checked_add(&inv).is_none());
    }
}
