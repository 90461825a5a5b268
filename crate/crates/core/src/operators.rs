//! Differential operators as products of linear combinations of primitive words,
//! plus the constants that accompany them.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{CliffordPoly, Primitive, Var};
use crate::radial::RadialFn;
use crate::scalar::{GaussianRational, Rational, SymbolicConstant};
use crate::spaces::{gamma_half, sphere_area};

/// Anything the primitive operators act on.
pub trait Operand: Clone {
    fn apply_primitive(&self, p: Primitive) -> Result<Self>;
    fn add_to(&self, other: &Self) -> Result<Self>;
    fn scaled(&self, c: &GaussianRational) -> Self;
    fn zero_like(&self) -> Self;
    /// Number of stored polynomial terms, for budget accounting.
    fn size(&self) -> usize;
}

impl Operand for CliffordPoly {
    fn apply_primitive(&self, p: Primitive) -> Result<Self> {
        self.apply(p)
    }
    fn add_to(&self, other: &Self) -> Result<Self> {
        self.add(other)
    }
    fn scaled(&self, c: &GaussianRational) -> Self {
        self.scale(c)
    }
    fn zero_like(&self) -> Self {
        CliffordPoly::zero(self.dim())
    }
    fn size(&self) -> usize {
        self.len()
    }
}

impl Operand for RadialFn {
    fn apply_primitive(&self, p: Primitive) -> Result<Self> {
        self.apply(p)
    }
    fn add_to(&self, other: &Self) -> Result<Self> {
        self.add(other)
    }
    fn scaled(&self, c: &GaussianRational) -> Self {
        self.scale(c)
    }
    fn zero_like(&self) -> Self {
        RadialFn::zero(self.dim())
    }
    fn size(&self) -> usize {
        RadialFn::size(self)
    }
}

/// `Σ c_w · w` where each word is written left to right as composed
/// (the last primitive acts first).
#[derive(Clone, Debug, PartialEq)]
pub struct LinearOp {
    pub terms: Vec<(GaussianRational, Vec<Primitive>)>,
}

impl LinearOp {
    pub fn identity() -> Self {
        LinearOp { terms: vec![(GaussianRational::one(), Vec::new())] }
    }

    pub fn word(word: Vec<Primitive>) -> Self {
        LinearOp { terms: vec![(GaussianRational::one(), word)] }
    }

    pub fn prim(p: Primitive) -> Self {
        Self::word(vec![p])
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let c = GaussianRational::real(c.clone());
        LinearOp { terms: self.terms.iter().map(|(x, w)| (x * &c, w.clone())).collect() }
    }

    pub fn plus(&self, other: &LinearOp) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        LinearOp { terms }.simplified()
    }

    pub fn minus(&self, other: &LinearOp) -> Self {
        self.plus(&other.scale(&Rational::from_int(-1)))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearOp) -> Self {
        let mut terms = Vec::new();
        for (a, wa) in &self.terms {
            for (b, wb) in &other.terms {
                let mut w = wa.clone();
                w.extend(wb.iter().copied());
                terms.push((a * b, w));
            }
        }
        LinearOp { terms }.simplified()
    }

    /// Merges identical words and drops zero coefficients.
    pub fn simplified(&self) -> Self {
        let mut order: Vec<Vec<Primitive>> = Vec::new();
        let mut acc: HashMap<Vec<Primitive>, GaussianRational> = HashMap::new();
        for (c, w) in &self.terms {
            match acc.get_mut(w) {
                Some(x) => *x += c,
                None => {
                    order.push(w.clone());
                    acc.insert(w.clone(), c.clone());
                }
            }
        }
        LinearOp {
            terms: order
                .into_iter()
                .filter_map(|w| {
                    let c = acc.remove(&w).expect("present");
                    (!c.is_zero()).then_some((c, w))
                })
                .collect(),
        }
    }

    /// Applies with a memo on shared word suffixes.
    pub fn apply<T: Operand>(&self, f: &T, budget: Option<usize>) -> Result<T> {
        let mut memo: HashMap<Vec<Primitive>, T> = HashMap::new();
        let mut out = f.zero_like();
        for (c, w) in &self.terms {
            let mut cur = f.clone();
            let mut start = w.len();
            // Longest already-computed suffix.
            for s in 0..w.len() {
                if let Some(v) = memo.get(&w[s..]) {
                    cur = v.clone();
                    start = s;
                    break;
                }
            }
            for s in (0..start).rev() {
                cur = cur.apply_primitive(w[s])?;
                if let Some(b) = budget {
                    if cur.size() > b {
                        return Err(Error::Budget(b));
                    }
                }
                memo.insert(w[s..].to_vec(), cur.clone());
            }
            out = out.add_to(&cur.scaled(c))?;
            if let Some(b) = budget {
                if out.size() > b {
                    return Err(Error::Budget(b));
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for LinearOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, w)| {
                if w.is_empty() {
                    format!("{c}")
                } else {
                    let ws: Vec<String> = w.iter().map(|p| p.to_string()).collect();
                    format!("{c}*{}", ws.join(" "))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Product `factors[0] ∘ factors[1] ∘ …` of linear operators.
#[derive(Clone, Debug)]
pub struct OperatorPipeline {
    pub name: String,
    pub m: usize,
    pub k: u32,
    pub order: u32,
    pub factors: Vec<LinearOp>,
}

impl OperatorPipeline {
    pub fn new(name: impl Into<String>, m: usize, k: u32, order: u32, factors: Vec<LinearOp>) -> Self {
        OperatorPipeline { name: name.into(), m, k, order, factors }
    }

    pub fn single(name: impl Into<String>, m: usize, k: u32, order: u32, op: LinearOp) -> Self {
        Self::new(name, m, k, order, vec![op])
    }

    /// Applies factor by factor, rightmost first.
    pub fn apply<T: Operand>(&self, f: &T) -> Result<T> {
        self.apply_with_budget(f, None)
    }

    pub fn apply_with_budget<T: Operand>(&self, f: &T, budget: Option<usize>) -> Result<T> {
        let mut cur = f.clone();
        for op in self.factors.iter().rev() {
            cur = op.apply(&cur, budget)?;
        }
        Ok(cur)
    }

    /// Fully distributed sum of words.
    pub fn expanded(&self) -> LinearOp {
        self.factors.iter().fold(LinearOp::identity(), |acc, f| acc.compose(f))
    }

    /// `self ∘ other`.
    pub fn then_after(&self, other: &OperatorPipeline, name: impl Into<String>) -> OperatorPipeline {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        OperatorPipeline::new(name, self.m, self.k, self.order + other.order, factors)
    }
}

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

fn frac(n: i64, d: i64, what: &str) -> Result<Rational> {
    if d == 0 {
        Err(Error::Pole(what.to_string()))
    } else {
        Ok(Rational::new(n, d))
    }
}

fn check_m(m: usize) -> Result<()> {
    if (3..=crate::clifford::MAX_DIM).contains(&m) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("m must be in 3..={}, got {m}", crate::clifford::MAX_DIM)))
    }
}

use Primitive::*;

pub fn dirac_x() -> LinearOp {
    LinearOp::prim(Dirac(Var::X))
}

pub fn laplace_x() -> LinearOp {
    LinearOp::prim(Laplacian(Var::X))
}

/// `P_k = 1 + u D_u/(m+2k-2)`.
pub fn projection_p(m: usize, k: u32) -> LinearOp {
    let c = Rational::new(1, m as i64 + 2 * k as i64 - 2);
    LinearOp::identity().plus(&LinearOp::word(vec![VectorMul(Var::U), Dirac(Var::U)]).scale(&c))
}

/// `R_k = P_k D_x`.
pub fn rarita_schwinger_op(m: usize, k: u32) -> LinearOp {
    projection_p(m, k).compose(&dirac_x())
}

pub fn make_rarita_schwinger(m: usize, k: u32) -> Result<OperatorPipeline> {
    check_m(m)?;
    Ok(OperatorPipeline::single(format!("R_k(m={m},k={k})"), m, k, 1, rarita_schwinger_op(m, k)))
}

/// Twistor `T_k = (1 + uD_u/(m+2k-2)) D_x`, as printed.
pub fn twistor(m: usize, k: u32) -> LinearOp {
    rarita_schwinger_op(m, k)
}

/// Dual twistor `T_k* = -u D_u D_x/(m+2k-2)`.
pub fn dual_twistor(m: usize, k: u32) -> LinearOp {
    let c = Rational::new(-1, m as i64 + 2 * k as i64 - 2);
    LinearOp::word(vec![VectorMul(Var::U), Dirac(Var::U), Dirac(Var::X)]).scale(&c)
}

/// `T_{k,2} = ⟨u,D_x⟩ − ||u||²⟨D_u,D_x⟩/(m+2k-4)`.
pub fn twistor2(m: usize, k: u32) -> Result<LinearOp> {
    let c = frac(-1, m as i64 + 2 * k as i64 - 4, "m+2k-4 = 0 in T_{k,2}")?;
    Ok(LinearOp::prim(PairVarD(Var::U, Var::X))
        .plus(&LinearOp::word(vec![NormSq(Var::U), PairDD(Var::U, Var::X)]).scale(&c)))
}

/// `T_{k,2}* = ⟨D_u,D_x⟩`.
pub fn dual_twistor2() -> LinearOp {
    LinearOp::prim(PairDD(Var::U, Var::X))
}

/// `D_2 = Δ_x − 4 T_{k,2} T_{k,2}*/(m+2k-2)`.
///
/// At the pole `m+2k-4 = 0` (only `m=4, k=0`) the `||u||²` term acts on
/// u-constants as zero, so the operator is `Δ_x`.
pub fn higher_spin_laplace_op(m: usize, k: u32) -> Result<LinearOp> {
    if m as i64 + 2 * k as i64 - 4 == 0 {
        return Ok(laplace_x());
    }
    let c = Rational::new(-4, m as i64 + 2 * k as i64 - 2);
    Ok(laplace_x().plus(&twistor2(m, k)?.compose(&dual_twistor2()).scale(&c)))
}

pub fn make_higher_spin_laplace(m: usize, k: u32) -> Result<OperatorPipeline> {
    check_m(m)?;
    Ok(OperatorPipeline::single(format!("D_2(m={m},k={k})"), m, k, 2, higher_spin_laplace_op(m, k)?))
}

/// `D_{2j} = D_2 ∏_{s=2}^{j} (D_2 − (2s)(2s−2)Δ_x/((m+2k−2)(m+2k−4)))`.
pub fn make_bosonic(m: usize, k: u32, j: u32) -> Result<OperatorPipeline> {
    check_m(m)?;
    if j == 0 {
        return Err(Error::InvalidParameter("j >= 1 required".into()));
    }
    let d2 = higher_spin_laplace_op(m, k)?;
    let mut factors = vec![d2.clone()];
    let (mi, ki) = (m as i64, k as i64);
    for s in 2..=j as i64 {
        let c = frac(-(2 * s) * (2 * s - 2), (mi + 2 * ki - 2) * (mi + 2 * ki - 4), "(m+2k-2)(m+2k-4) = 0 in D_2j")?;
        factors.push(d2.plus(&laplace_x().scale(&c)));
    }
    Ok(OperatorPipeline::new(format!("D_{}(m={m},k={k})", 2 * j), m, k, 2 * j, factors))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum BForm {
    /// `Δ_x + a||u||²⟨D_u,D_x⟩² + b⟨u,D_x⟩⟨D_u,D_x⟩ + c u⟨D_u,D_x⟩D_x`.
    Coefficient,
    /// `Δ_x − (m+2k−2)²(R_k² + Δ_x)/den`.
    RkDelta,
    /// `−R_k² + 4s² T_k T_k*/den`.
    Twistor,
}

impl BForm {
    pub const ALL: [BForm; 3] = [BForm::Coefficient, BForm::RkDelta, BForm::Twistor];

    pub fn name(self) -> &'static str {
        match self {
            BForm::Coefficient => "coefficient",
            BForm::RkDelta => "rk_delta",
            BForm::Twistor => "twistor",
        }
    }
}

/// `B_{m−β}` for an arbitrary `β` (coefficient form).
pub fn b_beta_op(m: usize, k: u32, beta: i64) -> Result<LinearOp> {
    let (a, b, c, _) = constants::abcd(m, k, beta)?;
    Ok(laplace_x()
        .plus(&LinearOp::word(vec![NormSq(Var::U), PairDD(Var::U, Var::X), PairDD(Var::U, Var::X)]).scale(&a))
        .plus(&LinearOp::word(vec![PairVarD(Var::U, Var::X), PairDD(Var::U, Var::X)]).scale(&b))
        .plus(&LinearOp::word(vec![VectorMul(Var::U), PairDD(Var::U, Var::X), Dirac(Var::X)]).scale(&c)))
}

pub fn b_op(m: usize, k: u32, s: u32, form: BForm) -> Result<LinearOp> {
    let (mi, ki, si) = (m as i64, k as i64, s as i64);
    let den = (mi + 2 * ki - 2 * si - 2) * (mi + 2 * ki + 2 * si - 2);
    if den == 0 {
        return Err(Error::Pole(format!("(m+2k-2s-2)(m+2k+2s-2) = 0 at m={m},k={k},s={s}")));
    }
    let r = rarita_schwinger_op(m, k);
    let r2 = r.compose(&r);
    match form {
        BForm::Coefficient => b_beta_op(m, k, mi - 2 * si),
        BForm::RkDelta => {
            let c = Rational::new(-(mi + 2 * ki - 2) * (mi + 2 * ki - 2), den);
            Ok(laplace_x().plus(&r2.plus(&laplace_x()).scale(&c)))
        }
        BForm::Twistor => {
            let c = Rational::new(4 * si * si, den);
            Ok(r2.scale(&q(-1)).plus(&twistor(m, k).compose(&dual_twistor(m, k)).scale(&c)))
        }
    }
}

pub fn make_b(m: usize, k: u32, s: u32, form: BForm) -> Result<OperatorPipeline> {
    check_m(m)?;
    Ok(OperatorPipeline::single(format!("B_{}(m={m},k={k},{})", 2 * s, form.name()), m, k, 2, b_op(m, k, s, form)?))
}

/// `D_{2j−1} = R_k ∏_{s=1}^{j−1} B_{2s}` (twistor form, as printed).
pub fn make_fermionic(m: usize, k: u32, j: u32) -> Result<OperatorPipeline> {
    make_fermionic_with(m, k, j, BForm::Twistor)
}

pub fn make_fermionic_with(m: usize, k: u32, j: u32, form: BForm) -> Result<OperatorPipeline> {
    check_m(m)?;
    if j == 0 {
        return Err(Error::InvalidParameter("j >= 1 required".into()));
    }
    let mut factors = vec![rarita_schwinger_op(m, k)];
    for s in 1..j {
        factors.push(b_op(m, k, s, form)?);
    }
    Ok(OperatorPipeline::new(format!("D_{}(m={m},k={k})", 2 * j - 1), m, k, 2 * j - 1, factors))
}

/// Bosonic for even order, fermionic for odd.
pub fn make_conformal(m: usize, k: u32, order: u32) -> Result<OperatorPipeline> {
    match order {
        0 => Err(Error::InvalidParameter("order >= 1 required".into())),
        o if o % 2 == 0 => make_bosonic(m, k, o / 2),
        o => make_fermionic(m, k, (o + 1) / 2),
    }
}

/// The printed expansion of `R_k²`.
pub fn rk_squared_printed(m: usize, k: u32) -> LinearOp {
    let n = m as i64 + 2 * k as i64 - 2;
    laplace_x()
        .scale(&q(-1))
        .plus(&LinearOp::word(vec![PairVarD(Var::U, Var::X), PairDD(Var::U, Var::X)]).scale(&Rational::new(4, n)))
        .plus(&LinearOp::word(vec![NormSq(Var::U), PairDD(Var::U, Var::X), PairDD(Var::U, Var::X)]).scale(&Rational::new(-4, n * n)))
        .plus(&LinearOp::word(vec![VectorMul(Var::U), PairDD(Var::U, Var::X), Dirac(Var::X)]).scale(&Rational::new(4, n * n)))
}

/// Compares `R_k ∘ R_k` against the printed expansion on the given test functions.
pub fn rk_squared_expansion_check<T: Operand + PartialEq>(m: usize, k: u32, tests: &[T]) -> Result<bool> {
    let r = make_rarita_schwinger(m, k)?;
    let printed = rk_squared_printed(m, k);
    for f in tests {
        let lhs = r.apply(&r.apply(f)?)?;
        let rhs = printed.apply(f, None)?;
        if lhs.add_to(&rhs.scaled(&GaussianRational::from_int(-1)))?.size() != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Printed and derived constants.
pub mod constants {
    use super::*;

    /// `c_{k,1} = (m−2)/(m+2k−2)`.
    pub fn c_k1(m: usize, k: u32) -> Rational {
        Rational::new(m as i64 - 2, m as i64 + 2 * k as i64 - 2)
    }

    /// `c_{α+m}` exactly as printed.
    pub fn c_alpha_printed(m: usize, k: u32, alpha: i64) -> Result<Rational> {
        let (mi, ki, a) = (m as i64, k as i64, alpha);
        let den = (mi + 2 * ki - 2) * (mi + 2 * ki - 4);
        let inner = (a - 2 * ki) * (a - 2 * ki - 2) + 2 * ki * (mi + 2 * a - 2 * ki - 4);
        frac(-(mi + a) * (mi + a - 2) * inner, den, "(m+2k-2)(m+2k-4) = 0 in c_{alpha+m}")
    }

    /// `c_{α+m}` recomputed from the two expansions used in its derivation,
    /// with `Δ_x(||x||^{α−2k}⟨xux,2f_1⟩^k)` leading coefficient `α(α+m−2) − 4k`.
    pub fn c_alpha_derived(m: usize, k: u32, alpha: i64) -> Result<Rational> {
        let (mi, ki, a) = (m as i64, k as i64, alpha);
        let n2 = mi + 2 * ki - 2;
        let n4 = mi + 2 * ki - 4;
        if n2 == 0 || n4 == 0 {
            return Err(Error::Pole("(m+2k-2)(m+2k-4) = 0 in c_{alpha+m}".into()));
        }
        let d2_lead = &q(mi + a - 2) * &(&q(a) + &Rational::new(4 * ki, n2));
        let lap_lead = q(a * (a + mi - 2) - 4 * ki);
        let shift = Rational::new((mi + a) * (mi + a - 2), n2 * n4);
        Ok(&d2_lead - &(&shift * &lap_lead))
    }

    /// `(a, b, c, d)_{m−β}`.
    pub fn abcd(m: usize, k: u32, beta: i64) -> Result<(Rational, Rational, Rational, Rational)> {
        let (mi, ki) = (m as i64, k as i64);
        let den = (beta + 2 * ki - 2) * (2 * mi + 2 * ki - beta - 2);
        let a = frac(4, den, "(beta+2k-2)(2m+2k-beta-2) = 0")?;
        let b = frac(-4 * (mi + 2 * ki - 2), den, "(beta+2k-2)(2m+2k-beta-2) = 0")?;
        let c = -&a;
        let d = &q((beta + 2 * ki) * (beta + 2 * ki - mi) + 2 * ki * (mi - 2 * beta - 2 * ki - 2))
            + &frac(4 * ki * (mi + 2 * ki - 2), beta + 2 * ki - 2, "beta+2k-2 = 0")?;
        Ok((a, b, c, d))
    }

    /// `d_{2s}`, i.e. `d_{m−β}` at `β = m−2s`.
    pub fn d_2s(m: usize, k: u32, s: u32) -> Result<Rational> {
        Ok(abcd(m, k, m as i64 - 2 * s as i64)?.3)
    }

    /// `a_2 = (m+2k−4)Γ(m/2−1)/(4(4−m)π^{m/2})`, the printed `E_{k,2}` constant.
    pub fn a_2(m: usize, k: u32) -> Result<SymbolicConstant> {
        let (mi, ki) = (m as i64, k as i64);
        if mi == 4 {
            return Err(Error::Pole("4-m = 0 in a_2".into()));
        }
        let r = Rational::new(mi + 2 * ki - 4, 4 * (4 - mi));
        Ok(gamma_half(mi - 2).scale(&r).mul(&SymbolicConstant::new(GaussianRational::one(), -(m as i32))))
    }

    /// `a_{2j} = a_2 ∏_{s=2}^{j} c_{2s}^{−1}` with the printed `c`.
    pub fn a_2j(m: usize, k: u32, j: u32) -> Result<SymbolicConstant> {
        a_2j_with(m, k, j, c_alpha_printed)
    }

    /// Same recursion with the derived `c`.
    pub fn a_2j_derived(m: usize, k: u32, j: u32) -> Result<SymbolicConstant> {
        a_2j_with(m, k, j, c_alpha_derived)
    }

    fn a_2j_with(m: usize, k: u32, j: u32, c: fn(usize, u32, i64) -> Result<Rational>) -> Result<SymbolicConstant> {
        let mut acc = a_2(m, k)?;
        for s in 2..=j as i64 {
            let cs = c(m, k, 2 * s - m as i64)?;
            acc = acc.scale(&cs.recip().ok_or_else(|| Error::Pole(format!("c_{} = 0", 2 * s)))?);
        }
        Ok(acc)
    }

    /// `λ = −(m+2k−2)/((m−2)ω_{m−1}) ∏_{s=1}^{j−1} d_{2s}^{−1}`.
    pub fn lambda(m: usize, k: u32, j: u32) -> Result<SymbolicConstant> {
        let (mi, ki) = (m as i64, k as i64);
        let mut r = Rational::new(-(mi + 2 * ki - 2), mi - 2);
        for s in 1..j {
            let d = d_2s(m, k, s)?;
            r = &r / &d;
        }
        Ok(sphere_area(m).recip().expect("nonzero").scale(&r))
    }

    /// `1/(ω_{m−1} c_{k,1})`, the printed `E_{k,1}` constant.
    pub fn e_k1(m: usize, k: u32) -> SymbolicConstant {
        sphere_area(m).recip().expect("nonzero").scale(&c_k1(m, k).recip().expect("m > 2"))
    }

    /// Lookup by name for the command line.
    pub fn by_name(name: &str, m: usize, k: u32, p: i64) -> Result<SymbolicConstant> {
        let r = |x: Rational| SymbolicConstant::rational(x);
        Ok(match name {
            "c_k1" => r(c_k1(m, k)),
            "c_alpha" | "c_alpha_printed" => r(c_alpha_printed(m, k, p)?),
            "c_alpha_derived" => r(c_alpha_derived(m, k, p)?),
            "a" => r(abcd(m, k, p)?.0),
            "b" => r(abcd(m, k, p)?.1),
            "c" => r(abcd(m, k, p)?.2),
            "d" => r(abcd(m, k, p)?.3),
            "a_2j" => a_2j(m, k, p as u32)?,
            "a_2j_derived" => a_2j_derived(m, k, p as u32)?,
            "lambda" => lambda(m, k, p as u32)?,
            "e_k1" => e_k1(m, k),
            "e_k2" => a_2(m, k)?,
            "omega" => sphere_area(m),
            _ => return Err(Error::InvalidParameter(format!("unknown constant {name}"))),
        })
    }
}

/// Operator lookup by name; `p` is `j` for products and `s` for `B`.
pub fn by_name(name: &str, m: usize, k: u32, p: u32) -> Result<OperatorPipeline> {
    check_m(m)?;
    let single = |n: &str, order: u32, op: LinearOp| Ok(OperatorPipeline::single(n, m, k, order, op));
    match name {
        "dirac_x" => single("D_x", 1, dirac_x()),
        "dirac_u" => single("D_u", 1, LinearOp::prim(Dirac(Var::U))),
        "laplace_x" => single("Lap_x", 2, laplace_x()),
        "projection" => single("P_k", 0, projection_p(m, k)),
        "rarita_schwinger" => make_rarita_schwinger(m, k),
        "twistor" => single("T_k", 1, twistor(m, k)),
        "dual_twistor" => single("T_k*", 1, dual_twistor(m, k)),
        "twistor2" => single("T_k2", 2, twistor2(m, k)?),
        "dual_twistor2" => single("T_k2*", 2, dual_twistor2()),
        "higher_spin_laplace" => make_higher_spin_laplace(m, k),
        "bosonic" => make_bosonic(m, k, p),
        "fermionic" => make_fermionic(m, k, p),
        "b_coefficient" => make_b(m, k, p, BForm::Coefficient),
        "b_rk_delta" => make_b(m, k, p, BForm::RkDelta),
        "b_twistor" => make_b(m, k, p, BForm::Twistor),
        "dirac_power" => Ok(OperatorPipeline::new(
            format!("D_x^{p}"),
            m,
            k,
            p,
            (0..p).map(|_| dirac_x()).collect(),
        )),
        _ => Err(Error::InvalidParameter(format!("unknown operator {name}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::constants::*;
    use super::*;
    use crate::clifford::Multivector;

    #[test]
    fn printed_constants() {
        assert_eq!(c_k1(3, 1), Rational::new(1, 3));
        assert_eq!(c_alpha_printed(5, 1, -1).unwrap(), Rational::new(-24, 5));
        let (a, b, c, d) = abcd(3, 1, 1).unwrap();
        assert_eq!((a, b, c, d), (Rational::new(4, 5), Rational::new(-12, 5), Rational::new(-4, 5), q(6)));
        let l = lambda(3, 1, 2).unwrap();
        assert_eq!(l, SymbolicConstant::new(GaussianRational::ratio(-1, 8), -2));
        assert_eq!(a_2(3, 1).unwrap(), SymbolicConstant::new(GaussianRational::ratio(1, 4), -2));
    }

    #[test]
    fn derived_c_alpha_values() {
        assert_eq!(c_alpha_derived(5, 1, -1).unwrap(), Rational::new(14, 5));
        assert_eq!(c_alpha_derived(3, 1, 0).unwrap(), Rational::new(16, 3));
        assert_eq!(c_alpha_derived(5, 2, 1).unwrap(), Rational::new(396, 35));
    }

    #[test]
    fn rarita_schwinger_example() {
        let m = 3;
        let e12 = &Multivector::e(m, 1) * &Multivector::e(m, 2);
        let p = CliffordPoly::var(m, Var::U, 1).sub(&CliffordPoly::var(m, Var::U, 2).left_mul_mv(&e12).unwrap()).unwrap();
        let f = CliffordPoly::var(m, Var::X, 2).mul(&p).unwrap();
        let out = make_rarita_schwinger(m, 1).unwrap().apply(&f).unwrap();
        assert!(out.apply(Dirac(Var::U)).unwrap().is_zero());
        let e3e1e2 = &Multivector::e(m, 3) * &e12;
        let third = Rational::new(1, 3);
        let expect = CliffordPoly::var(m, Var::U, 1)
            .right_mul_mv(&Multivector::e(m, 2))
            .unwrap()
            .sub(&CliffordPoly::var(m, Var::U, 2).right_mul_mv(&Multivector::e(m, 1)).unwrap())
            .unwrap()
            .scale_rational(&third)
            .add(&CliffordPoly::var(m, Var::U, 3).right_mul_mv(&e3e1e2).unwrap().scale_rational(&Rational::new(2, 3)))
            .unwrap();
        assert_eq!(out, expect);
    }

    #[test]
    fn expanded_matches_factored() {
        let m = 3;
        let p = make_fermionic(m, 1, 2).unwrap();
        let f = CliffordPoly::var(m, Var::X, 1).pow(3).mul(&CliffordPoly::var(m, Var::U, 2)).unwrap();
        assert_eq!(p.apply(&f).unwrap(), p.expanded().apply(&f, None).unwrap());
    }

    #[test]
    fn pole_rejection() {
        assert!(matches!(make_fermionic(4, 0, 2), Err(Error::Pole(_))));
        assert!(matches!(make_bosonic(4, 0, 2), Err(Error::Pole(_))));
        assert!(make_higher_spin_laplace(4, 0).is_ok());
    }
}
