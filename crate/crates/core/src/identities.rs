//! Symbolic checks of the operator identities, each reduced to a residual
//! that must vanish both in the radial ring and pointwise.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clifford::{witt_and_idempotent, Blade, Multivector};
use crate::error::{Error, Result};
use crate::operators::{
    self, constants, BForm, LinearOp, Operand, OperatorPipeline,
};
use crate::poly::{CliffordPoly, Monomial, PolyBuilder, Primitive, Var};
use crate::radial::{kelvin_embed, RadialFn};
use crate::samples::sample_points;
use crate::scalar::{GaussianRational, Rational};
use crate::spaces::{build_basis, reproducing_kernel, Kind, SpaceBasis};

/// Default term budget per intermediate result.
pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    pub budget: Option<usize>,
    pub seed: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { budget: Some(DEFAULT_BUDGET), seed: 0 }
    }
}

/// Where a test vector in `H_k` or `M_k` comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Source {
    /// `⟨u,2f_1⟩^k`, times the idempotent `I` in the monogenic case.
    HighestWeight,
    BasisElement(usize),
    Random(u64),
}

impl Source {
    pub fn tag(&self) -> String {
        match self {
            Source::HighestWeight => "hw".into(),
            Source::BasisElement(i) => format!("basis{i}"),
            Source::Random(s) => format!("rand{s}"),
        }
    }

    pub fn parse(s: &str) -> Result<Source> {
        if s == "hw" {
            return Ok(Source::HighestWeight);
        }
        let num = |p: &str| s[p.len()..].parse::<u64>().map_err(|_| Error::InvalidParameter(format!("bad source {s}")));
        if s.starts_with("basis") {
            Ok(Source::BasisElement(num("basis")? as usize))
        } else if s.starts_with("rand") {
            Ok(Source::Random(num("rand")?))
        } else {
            Err(Error::InvalidParameter(format!("bad source {s}")))
        }
    }
}

/// Stable case id, e.g. `prop_c_alpha/m=5,k=1,alpha=-1`.
pub fn case_id(name: &str, params: &[(&str, i64)]) -> String {
    let p: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{name}/{}", p.join(","))
}

/// Outcome of one identity check. Both routes are kept separately.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub symbolic_zero: bool,
    pub pointwise_zero: bool,
    /// Canonical text of the first nonzero residual, or "0".
    pub detail: String,
    /// Extra data worth reporting (constants, signs).
    pub notes: Vec<(String, String)>,
}

const DETAIL_LIMIT: usize = 600;

fn clip(s: String) -> String {
    if s.len() <= DETAIL_LIMIT {
        s
    } else {
        let mut cut = DETAIL_LIMIT;
        while !s.is_char_boundary(cut) {
            cut -= 1;
        }
        format!("{}... ({} chars)", &s[..cut], s.len())
    }
}

/// Rational assignments for `x`, `u`, `v`: shipped `x` points, random small `u`, `v`.
pub fn evaluation_points(m: usize, seed: u64) -> Result<Vec<Vec<(Var, Vec<Rational>)>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0f_u64);
    let small = |rng: &mut ChaCha8Rng| -> Vec<Rational> {
        (0..m).map(|_| Rational::new(rng.gen_range(-4..=4), rng.gen_range(1..=3))).collect()
    };
    Ok(sample_points(m)?
        .into_iter()
        .take(5)
        .map(|x| {
            let u = small(&mut rng);
            let v = small(&mut rng);
            vec![(Var::X, x), (Var::U, u), (Var::V, v)]
        })
        .collect())
}

impl Residual {
    pub fn passed(&self) -> bool {
        self.symbolic_zero && self.pointwise_zero
    }

    pub fn from_radial(r: &RadialFn, seed: u64) -> Result<Self> {
        let symbolic_zero = r.is_zero();
        let mut pointwise_zero = true;
        for pt in evaluation_points(r.dim(), seed)? {
            if !r.evaluate(&pt)?.is_zero() {
                pointwise_zero = false;
                break;
            }
        }
        let detail = if symbolic_zero { "0".into() } else { clip(r.to_canonical_string()) };
        Ok(Residual { symbolic_zero, pointwise_zero, detail, notes: Vec::new() })
    }

    pub fn from_poly(p: &CliffordPoly, seed: u64) -> Result<Self> {
        Self::from_radial(&RadialFn::from_poly(p.clone(), 0), seed)
    }

    pub fn ok() -> Self {
        Residual { symbolic_zero: true, pointwise_zero: true, detail: "0".into(), notes: Vec::new() }
    }

    /// Conjunction of labelled parts; the detail names the failing parts.
    pub fn combine(parts: Vec<(String, Residual)>) -> Self {
        let mut out = Residual::ok();
        let mut failing = Vec::new();
        for (label, r) in parts {
            out.symbolic_zero &= r.symbolic_zero;
            out.pointwise_zero &= r.pointwise_zero;
            if !r.passed() {
                failing.push(format!("{label}: {}", r.detail));
            }
            out.notes.extend(r.notes.into_iter().map(|(k, v)| (format!("{label}.{k}"), v)));
        }
        if !failing.is_empty() {
            out.detail = clip(failing.join("; "));
        }
        out
    }

    pub fn note(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.notes.push((key.into(), value.to_string()));
        self
    }
}

fn cached_basis(m: usize, k: u32, kind: Kind) -> Result<Arc<SpaceBasis>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32, Kind), Arc<SpaceBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().expect("poisoned").get(&(m, k, kind)) {
        return Ok(b.clone());
    }
    let b = Arc::new(build_basis(m, k, kind)?);
    cache.lock().expect("poisoned").insert((m, k, kind), b.clone());
    Ok(b)
}

/// `⟨u, 2f_1⟩ = u_1 − i u_2`.
pub fn highest_weight_linear(m: usize, var: Var) -> CliffordPoly {
    let mut c = vec![GaussianRational::zero(); m];
    c[0] = GaussianRational::one();
    c[1] = -GaussianRational::i();
    CliffordPoly::linear_form(m, var, &c)
}

fn random_coeff(rng: &mut ChaCha8Rng) -> GaussianRational {
    loop {
        let c = GaussianRational::new(Rational::from_int(rng.gen_range(-3..=3)), Rational::from_int(rng.gen_range(-1..=1)));
        if !c.is_zero() {
            return c;
        }
    }
}

fn random_multivector(m: usize, rng: &mut ChaCha8Rng) -> Multivector {
    let n = rng.gen_range(1..=3);
    let terms: Vec<(Blade, GaussianRational)> =
        (0..n).map(|_| (Blade(rng.gen_range(0..(1u32 << m)) as u8), random_coeff(rng))).collect();
    let mv = Multivector::from_terms(m, terms);
    if mv.is_zero() {
        Multivector::one(m)
    } else {
        mv
    }
}

/// A test vector of `H_k` (scalar valued) or `M_k`.
pub fn space_vector(m: usize, k: u32, kind: Kind, src: Source) -> Result<CliffordPoly> {
    match src {
        Source::HighestWeight => {
            let h = highest_weight_linear(m, Var::U).pow(k);
            match kind {
                Kind::Harmonic => Ok(h),
                Kind::Monogenic => h.right_mul_mv(&witt_and_idempotent(m)?.idempotent),
            }
        }
        Source::BasisElement(i) => {
            let b = cached_basis(m, k, kind)?;
            Ok(b.elements[i % b.elements.len()].clone())
        }
        Source::Random(seed) => {
            let b = cached_basis(m, k, kind)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut acc = PolyBuilder::new(m);
            for e in &b.elements {
                if rng.gen_bool(0.5) {
                    acc.add_poly(&e.scale(&random_coeff(&mut rng)));
                }
            }
            let p = acc.finish();
            Ok(if p.is_zero() { b.elements[0].clone() } else { p })
        }
    }
}

fn random_x_poly(m: usize, max_deg: u32, rng: &mut ChaCha8Rng) -> CliffordPoly {
    let mut b = PolyBuilder::new(m);
    for _ in 0..rng.gen_range(1..=3) {
        let mut mono = Monomial::one();
        for _ in 0..rng.gen_range(0..=max_deg) {
            let i = rng.gen_range(1..=m);
            mono = mono.bump(Var::X, i, 1);
        }
        b.add(mono, Multivector::scalar(m, random_coeff(rng)));
    }
    let p = b.finish();
    if p.is_zero() {
        CliffordPoly::one(m)
    } else {
        p
    }
}

/// `Σ p_i(x) q_i(u) c_i` with `q_i` in the target space and `c_i` a Clifford
/// constant on the right, so every `x`-slice stays in the space.
pub fn space_valued_tests(m: usize, k: u32, kind: Kind, count: usize, x_deg: u32, seed: u64) -> Result<Vec<CliffordPoly>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut acc = CliffordPoly::zero(m);
        for _ in 0..rng.gen_range(1..=2) {
            let q = space_vector(m, k, kind, Source::Random(rng.gen()))?;
            let c = random_multivector(m, &mut rng);
            let p = random_x_poly(m, x_deg, &mut rng);
            acc = acc.add(&p.mul(&q)?.right_mul_mv(&c)?)?;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Clifford-valued polynomials in `x` only.
pub fn x_only_tests(m: usize, count: usize, x_deg: u32, seed: u64) -> Vec<CliffordPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let p = random_x_poly(m, x_deg, &mut rng);
            let c = random_multivector(m, &mut rng);
            p.right_mul_mv(&c).expect("dim")
        })
        .collect()
}

fn apply_op<T: Operand>(op: &LinearOp, f: &T, o: &CheckOptions) -> Result<T> {
    op.apply(f, o.budget)
}

fn apply_pipe<T: Operand>(p: &OperatorPipeline, f: &T, o: &CheckOptions) -> Result<T> {
    p.apply_with_budget(f, o.budget)
}

fn m_k_ok(m: usize, k: u32) -> Result<()> {
    if !(3..=crate::clifford::MAX_DIM).contains(&m) {
        return Err(Error::InvalidParameter(format!("m={m} out of range")));
    }
    let _ = k;
    Ok(())
}

/// Finds `c` with `lhs = c·g` from one pointwise ratio, then confirms symbolically.
pub fn fit_ratio(lhs: &RadialFn, g: &RadialFn, seed: u64) -> Result<Option<GaussianRational>> {
    for pt in evaluation_points(g.dim(), seed)? {
        let gv = g.evaluate(&pt)?;
        let Some((blade, gc)) = gv.terms().first().cloned() else { continue };
        let lv = lhs.evaluate(&pt)?;
        let c = &lv.coeff(blade) * &gc.recip().expect("nonzero");
        return Ok(lhs.sub(&g.scale(&c))?.is_zero().then_some(c));
    }
    Ok(None)
}

/// `(D_2 − (m+α)(m+α−2)Δ_x/((m+2k−2)(m+2k−4)))·||x||^α H(xux/||x||²) = c_{α+m}||x||^{α−2}H(xux/||x||²)`,
/// checked against the printed constant. Notes carry the fitted, printed and derived values.
pub fn check_c_alpha(m: usize, k: u32, alpha: i64, src: Source, o: &CheckOptions) -> Result<Residual> {
    let (lhs, g) = c_alpha_sides(m, k, alpha, src, o)?;
    let printed = constants::c_alpha_printed(m, k, alpha)?;
    let derived = constants::c_alpha_derived(m, k, alpha)?;
    let fitted = fit_ratio(&lhs, &g, o.seed)?;
    let res = lhs.sub(&g.scale_rational(&printed))?;
    Ok(Residual::from_radial(&res, o.seed)?
        .note("c_printed", &printed)
        .note("c_derived", &derived)
        .note("c_operator", fitted.map_or("none".to_string(), |c| c.to_string())))
}

/// The same identity with the recomputed constant.
pub fn check_c_alpha_derived(m: usize, k: u32, alpha: i64, src: Source, o: &CheckOptions) -> Result<Residual> {
    let (lhs, g) = c_alpha_sides(m, k, alpha, src, o)?;
    let derived = constants::c_alpha_derived(m, k, alpha)?;
    Ok(Residual::from_radial(&lhs.sub(&g.scale_rational(&derived))?, o.seed)?.note("c_derived", &derived))
}

fn c_alpha_sides(m: usize, k: u32, alpha: i64, src: Source, o: &CheckOptions) -> Result<(RadialFn, RadialFn)> {
    m_k_ok(m, k)?;
    if alpha <= 2 - m as i64 {
        return Err(Error::InvalidParameter(format!("alpha={alpha} must exceed 2-m")));
    }
    let (mi, ki) = (m as i64, k as i64);
    let den = (mi + 2 * ki - 2) * (mi + 2 * ki - 4);
    if den == 0 {
        return Err(Error::Pole("(m+2k-2)(m+2k-4) = 0".into()));
    }
    let op = operators::higher_spin_laplace_op(m, k)?
        .plus(&operators::laplace_x().scale(&Rational::new(-(mi + alpha) * (mi + alpha - 2), den)));
    let h = space_vector(m, k, Kind::Harmonic, src)?;
    let f = kelvin_embed(&h, alpha as i32, false)?;
    let lhs = apply_op(&op, &f, o)?;
    let g = kelvin_embed(&h, alpha as i32 - 2, false)?;
    Ok((lhs, g))
}

/// Building blocks for the right-hand sides of the two technical lemmas.
struct HighestWeightTerms {
    m: usize,
    k: u32,
    beta: i64,
    /// `⟨xux, 2f_1⟩`.
    p: CliffordPoly,
    /// `⟨x, 2f_1⟩`.
    xf: CliffordPoly,
    idem: Multivector,
}

impl HighestWeightTerms {
    fn new(m: usize, k: u32, beta: i64) -> Result<Self> {
        let p = highest_weight_linear(m, Var::U).substitute(Var::U, &crate::radial::reflection_images(m))?;
        Ok(HighestWeightTerms {
            m,
            k,
            beta,
            p,
            xf: highest_weight_linear(m, Var::X),
            idem: witt_and_idempotent(m)?.idempotent,
        })
    }

    /// `c · left · ⟨xux,2f_1⟩^{k−drop} I · ||x||^{−β−2k+shift}`; zero when `c` is.
    fn term(&self, c: &Rational, left: &CliffordPoly, drop: u32, shift: i64) -> Result<RadialFn> {
        if c.is_zero() {
            return Ok(RadialFn::zero(self.m));
        }
        if drop > self.k {
            return Err(Error::InvalidParameter("negative power with nonzero coefficient".into()));
        }
        let body = left.mul(&self.p.pow(self.k - drop))?.right_mul_mv(&self.idem)?;
        let t = -self.beta - 2 * self.k as i64 + shift;
        Ok(RadialFn::from_poly(body.scale_rational(c), t as i32))
    }

    /// `x ||x||^{−β−2k} ⟨xux,2f_1⟩^k I`.
    fn input(&self) -> Result<RadialFn> {
        let one = Rational::one();
        self.term(&one, &CliffordPoly::vector(self.m, Var::X), 0, 0)
    }

    fn x(&self) -> CliffordPoly {
        CliffordPoly::vector(self.m, Var::X)
    }

    fn u(&self) -> CliffordPoly {
        CliffordPoly::vector(self.m, Var::U)
    }

    fn u2(&self) -> CliffordPoly {
        CliffordPoly::norm_sq(self.m, Var::U)
    }

    fn ux(&self) -> CliffordPoly {
        CliffordPoly::inner(self.m, Var::U, Var::X)
    }
}

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

fn beta_ok(m: usize, beta: i64) -> Result<()> {
    if beta > m as i64 - 2 {
        Err(Error::InvalidParameter(format!("beta={beta} exceeds m-2")))
    } else {
        Ok(())
    }
}

/// First technical lemma: `Δ_x` of `x||x||^{−β−2k}⟨xux,2f_1⟩^k I` against the printed four terms.
pub fn check_lemma_radial_laplacian(m: usize, k: u32, beta: i64, o: &CheckOptions) -> Result<Residual> {
    m_k_ok(m, k)?;
    beta_ok(m, beta)?;
    let h = HighestWeightTerms::new(m, k, beta)?;
    let (mi, ki) = (m as i64, k as i64);
    let lhs = apply_op(&operators::laplace_x(), &h.input()?, o)?;
    let lead = q((beta + 2 * ki) * (beta + 2 * ki - mi) + 2 * ki * (mi - 2 * beta - 2 * ki - 2));
    let rhs = h
        .term(&lead, &h.x(), 0, -2)?
        .add(&h.term(&q(-4 * ki), &h.u().mul(&h.xf)?, 1, 0)?)?
        .add(&h.term(&q(4 * ki * (mi + 2 * ki - 2)), &h.x().mul(&h.ux())?.mul(&h.xf)?, 1, -2)?)?
        .add(&h.term(&q(4 * ki * (ki - 1)), &h.u2().mul(&h.xf.pow(2))?.mul(&h.x())?, 2, 0)?)?;
    Residual::from_radial(&lhs.sub(&rhs)?, o.seed)
}

/// Second technical lemma: the three mixed operators against their printed right sides.
pub fn check_lemma_mixed_ops(m: usize, k: u32, beta: i64, o: &CheckOptions) -> Result<Residual> {
    m_k_ok(m, k)?;
    beta_ok(m, beta)?;
    let h = HighestWeightTerms::new(m, k, beta)?;
    let (mi, ki) = (m as i64, k as i64);
    let f = h.input()?;
    let w = 2 * mi - beta + 2 * ki - 2;
    let u2_xf2_x = h.u2().mul(&h.xf.pow(2))?.mul(&h.x())?;
    let u_xf = h.u().mul(&h.xf)?;

    // ||u||²⟨D_u,D_x⟩²
    let op1 = LinearOp::word(vec![Primitive::NormSq(Var::U), Primitive::PairDD(Var::U, Var::X), Primitive::PairDD(Var::U, Var::X)]);
    let rhs1 = h.term(&q(ki * (ki - 1) * w * (w - 2)), &u2_xf2_x, 2, 0)?;
    let r1 = apply_op(&op1, &f, o)?.sub(&rhs1)?;

    // u⟨D_u,D_x⟩D_x
    let op2 = LinearOp::word(vec![Primitive::VectorMul(Var::U), Primitive::PairDD(Var::U, Var::X), Primitive::Dirac(Var::X)]);
    let pre = -ki * w;
    let rhs2 = h
        .term(&q(pre * (beta - mi)), &u_xf, 1, 0)?
        .add(&h.term(&q(pre * 2 * (ki - 1)), &u2_xf2_x, 2, 0)?)?;
    let r2 = apply_op(&op2, &f, o)?.sub(&rhs2)?;

    // ⟨u,D_x⟩⟨D_u,D_x⟩, with the exponent β+2k+2 of the statement.
    let op3 = LinearOp::word(vec![Primitive::PairVarD(Var::U, Var::X), Primitive::PairDD(Var::U, Var::X)]);
    let rhs3 = h
        .term(&q(pre), &h.x(), 0, -2)?
        .add(&h.term(&q(-pre * (beta + 2 * ki - 2)), &h.x().mul(&h.ux())?.mul(&h.xf)?, 1, -2)?)?
        .add(&h.term(&q(pre), &u_xf, 1, 0)?)?
        .add(&h.term(&q(-pre * 2 * (ki - 1)), &u2_xf2_x, 2, 0)?)?;
    let r3 = apply_op(&op3, &f, o)?.sub(&rhs3)?;

    Ok(Residual::combine(vec![
        ("u2_dudx2".into(), Residual::from_radial(&r1, o.seed)?),
        ("u_dudx_dx".into(), Residual::from_radial(&r2, o.seed)?),
        ("udx_dudx".into(), Residual::from_radial(&r3, o.seed)?),
    ]))
}

/// `B_{m−β}(x/||x||^β) f(xux/||x||²) = d_{m−β}(x/||x||^{β+2}) f(xux/||x||²)` with `β = m−2s`.
pub fn check_b_action(m: usize, k: u32, s: u32, form: BForm, src: Source, o: &CheckOptions) -> Result<Residual> {
    m_k_ok(m, k)?;
    let beta = m as i64 - 2 * s as i64;
    beta_ok(m, beta)?;
    let op = operators::b_op(m, k, s, form)?;
    let d = constants::d_2s(m, k, s)?;
    let fk = space_vector(m, k, Kind::Monogenic, src)?;
    let lhs = apply_op(&op, &kelvin_embed(&fk, -beta as i32, true)?, o)?;
    let rhs = kelvin_embed(&fk, -beta as i32 - 2, true)?.scale_rational(&d);
    Ok(Residual::from_radial(&lhs.sub(&rhs)?, o.seed)?.note("d", &d))
}

/// `[∏_{s=1}^{j−1} B_{2s} d_{2s}^{−1}](x/||x||^{m−2j+2}) f(xux/||x||²) = (x/||x||^m) f(xux/||x||²)`.
pub fn check_telescoping(m: usize, k: u32, j: u32, src: Source, o: &CheckOptions) -> Result<Residual> {
    m_k_ok(m, k)?;
    if j < 2 {
        return Err(Error::InvalidParameter("j >= 2 required".into()));
    }
    let mut factors = Vec::new();
    for s in 1..j {
        let d = constants::d_2s(m, k, s)?;
        let inv = d.recip().ok_or_else(|| Error::Pole(format!("d_{} = 0", 2 * s)))?;
        factors.push(operators::b_op(m, k, s, BForm::Coefficient)?.scale(&inv));
    }
    let pipe = OperatorPipeline::new("telescoping", m, k, 2 * (j - 1), factors);
    let fk = space_vector(m, k, Kind::Monogenic, src)?;
    let t0 = -(m as i32) + 2 * j as i32 - 2;
    let lhs = apply_pipe(&pipe, &kelvin_embed(&fk, t0, true)?, o)?;
    let rhs = kelvin_embed(&fk, -(m as i32), true)?;
    Residual::from_radial(&lhs.sub(&rhs)?, o.seed)
}

/// The three expansions of `B_{2s}` agree pairwise on `M_k`-valued test polynomials
/// and on the kelvin-embedded highest weight vector.
pub fn check_b_forms(m: usize, k: u32, s: u32, count: usize, o: &CheckOptions) -> Result<Residual> {
    m_k_ok(m, k)?;
    let ops: Vec<LinearOp> = BForm::ALL.iter().map(|f| operators::b_op(m, k, s, *f)).collect::<Result<_>>()?;
    let tests = space_valued_tests(m, k, Kind::Monogenic, count, 3, o.seed)?;
    let mut parts = Vec::new();
    for (i, f) in tests.iter().enumerate() {
        let outs: Vec<CliffordPoly> = ops.iter().map(|op| apply_op(op, f, o)).collect::<Result<_>>()?;
        parts.push((format!("poly{i}.coef-rk"), Residual::from_poly(&outs[0].sub(&outs[1])?, o.seed)?));
        parts.push((format!("poly{i}.coef-tw"), Residual::from_poly(&outs[0].sub(&outs[2])?, o.seed)?));
    }
    let hw = kelvin_embed(&space_vector(m, k, Kind::Monogenic, Source::HighestWeight)?, -(m as i32) + 2 * s as i32, true)?;
    let outs: Vec<RadialFn> = ops.iter().map(|op| apply_op(op, &hw, o)).collect::<Result<_>>()?;
    parts.push(("hw.coef-rk".into(), Residual::from_radial(&outs[0].sub(&outs[1])?, o.seed)?));
    parts.push(("hw.coef-tw".into(), Residual::from_radial(&outs[0].sub(&outs[2])?, o.seed)?));
    Ok(Residual::combine(parts))
}

/// `R_k∘R_k` equals the printed four-term expansion on `M_k`-valued test polynomials.
pub fn check_rk_squared(m: usize, k: u32, count: usize, o: &CheckOptions) -> Result<Residual> {
    m_k_ok(m, k)?;
    let r = operators::rarita_schwinger_op(m, k);
    let printed = operators::rk_squared_printed(m, k);
    let mut parts = Vec::new();
    for (i, f) in space_valued_tests(m, k, Kind::Monogenic, count, 3, o.seed)?.iter().enumerate() {
        let lhs = apply_op(&r, &apply_op(&r, f, o)?, o)?;
        let rhs = apply_op(&printed, f, o)?;
        parts.push((format!("poly{i}"), Residual::from_poly(&lhs.sub(&rhs)?, o.seed)?));
    }
    Ok(Residual::combine(parts))
}

/// `−Δ_x = R_k² + T_k T_k*` on `M_k`-valued test polynomials.
pub fn check_laplace_split(m: usize, k: u32, count: usize, o: &CheckOptions) -> Result<Residual> {
    m_k_ok(m, k)?;
    let r = operators::rarita_schwinger_op(m, k);
    let tt = operators::twistor(m, k).compose(&operators::dual_twistor(m, k));
    let mut parts = Vec::new();
    for (i, f) in space_valued_tests(m, k, Kind::Monogenic, count, 3, o.seed)?.iter().enumerate() {
        let lap = apply_op(&operators::laplace_x(), f, o)?;
        let rhs = apply_op(&r, &apply_op(&r, f, o)?, o)?.add(&apply_op(&tt, f, o)?)?;
        parts.push((format!("poly{i}"), Residual::from_poly(&lap.add(&rhs)?, o.seed)?));
    }
    Ok(Residual::combine(parts))
}

/// `B_{2s₁}B_{2s₂} = B_{2s₂}B_{2s₁}` on `M_k`-valued test polynomials.
pub fn check_b_commute(m: usize, k: u32, s1: u32, s2: u32, count: usize, o: &CheckOptions) -> Result<Residual> {
    m_k_ok(m, k)?;
    let b1 = operators::b_op(m, k, s1, BForm::Coefficient)?;
    let b2 = operators::b_op(m, k, s2, BForm::Coefficient)?;
    let mut parts = Vec::new();
    for (i, f) in space_valued_tests(m, k, Kind::Monogenic, count, 4, o.seed)?.iter().enumerate() {
        let a = apply_op(&b1, &apply_op(&b2, f, o)?, o)?;
        let b = apply_op(&b2, &apply_op(&b1, f, o)?, o)?;
        parts.push((format!("poly{i}"), Residual::from_poly(&a.sub(&b)?, o.seed)?));
    }
    Ok(Residual::combine(parts))
}

/// Radial function the order-`order` operator should annihilate:
/// `||x||^{2j−m} Z^H(xux/||x||², v)` for order `2j`,
/// `x||x||^{2j−2−m} Z^M(xux/||x||², v)` for order `2j−1`.
pub fn fundamental_solution_kernel(m: usize, k: u32, order: u32) -> Result<RadialFn> {
    let mi = m as i32;
    if order % 2 == 0 {
        let z = reproducing_kernel(m, k, Kind::Harmonic)?;
        kelvin_embed(&z.poly, order as i32 - mi, false)
    } else {
        let z = reproducing_kernel(m, k, Kind::Monogenic)?;
        kelvin_embed(&z.poly, order as i32 - 1 - mi, true)
    }
}

/// The order-`order` operator annihilates its kelvin-embedded kernel on `x ≠ 0`.
pub fn check_fundamental_solution(m: usize, k: u32, order: u32, o: &CheckOptions) -> Result<Residual> {
    m_k_ok(m, k)?;
    let op = operators::make_conformal(m, k, order)?;
    let f = fundamental_solution_kernel(m, k, order)?;
    let out = apply_pipe(&op, &f, o)?;
    let mut r = Residual::from_radial(&out, o.seed)?;
    if k == 0 && m % 2 == 0 && order as usize >= m {
        r = r.note("classical_order_restriction", "k=0 with order >= m in even dimension");
    }
    Ok(r)
}

/// `D_{2j−1} = (−1)^{j−1}D_x^{2j−1}` and `D_{2j} = C·Δ_x^j` at `k = 0`,
/// with `C = ∏_{s=2}^{j}(1 − 2s(2s−2)/((m−2)(m−4)))`.
pub fn check_classical_reduction(m: usize, order: u32, count: usize, o: &CheckOptions) -> Result<Residual> {
    m_k_ok(m, 0)?;
    let op = operators::make_conformal(m, 0, order)?;
    let (reference, c) = if order % 2 == 1 {
        let j = (order + 1) / 2;
        let sign = if (j - 1) % 2 == 0 { 1 } else { -1 };
        let mut w = Vec::new();
        for _ in 0..order {
            w.push(Primitive::Dirac(Var::X));
        }
        (LinearOp::word(w), q(sign))
    } else {
        let j = order / 2;
        let (mi, mut c) = (m as i64, Rational::one());
        for s in 2..=j as i64 {
            let den = (mi - 2) * (mi - 4);
            if den == 0 {
                return Err(Error::Pole("(m-2)(m-4) = 0".into()));
            }
            c = &c * &(&Rational::one() - &Rational::new(2 * s * (2 * s - 2), den));
        }
        (LinearOp::word(vec![Primitive::Laplacian(Var::X); j as usize]), c)
    };
    let mut parts = Vec::new();
    for (i, f) in x_only_tests(m, count, order + 2, o.seed).iter().enumerate() {
        let lhs = apply_pipe(&op, f, o)?;
        let rhs = apply_op(&reference, f, o)?.scale_rational(&c);
        parts.push((format!("poly{i}"), Residual::from_poly(&lhs.sub(&rhs)?, o.seed)?));
    }
    Ok(Residual::combine(parts).note("factor", &c))
}

/// Output of `D_{2j}` on `H_k`-valued input is `Δ_u`-annihilated; output of
/// `D_{2j−1}` on `M_k`-valued input is `D_u`-annihilated.
pub fn check_target_space(m: usize, k: u32, order: u32, count: usize, o: &CheckOptions) -> Result<Residual> {
    m_k_ok(m, k)?;
    let op = operators::make_conformal(m, k, order)?;
    let (kind, test) = if order % 2 == 0 {
        (Kind::Harmonic, Primitive::Laplacian(Var::U))
    } else {
        (Kind::Monogenic, Primitive::Dirac(Var::U))
    };
    let mut parts = Vec::new();
    for (i, f) in space_valued_tests(m, k, kind, count, order + 1, o.seed)?.iter().enumerate() {
        let out = apply_pipe(&op, f, o)?;
        parts.push((format!("poly{i}"), Residual::from_poly(&out.apply(test)?, o.seed)?));
    }
    Ok(Residual::combine(parts))
}

/// Reproducing property of the Gram-built kernel on the full basis, the basis
/// dimension, and for the monogenic kind an exact Almansi-Fischer round trip
/// of `count` random Clifford-valued harmonic polynomials.
pub fn check_kernel(m: usize, k: u32, kind: Kind, count: usize, o: &CheckOptions) -> Result<Residual> {
    m_k_ok(m, k)?;
    let z = reproducing_kernel(m, k, kind)?;
    let reproduces = crate::spaces::check_reproducing(&z, crate::clifford::Conjugation::Hermitian)?;
    let basis = cached_basis(m, k, kind)?;
    let expected = match kind {
        Kind::Harmonic => crate::spaces::harmonic_dimension(m, k),
        Kind::Monogenic => crate::spaces::monogenic_dimension(m, k),
    };
    let mut r = if reproduces { Residual::ok() } else { Residual { symbolic_zero: false, pointwise_zero: false, detail: "kernel does not reproduce the basis".into(), notes: Vec::new() } };
    if basis.elements.len() != expected {
        r.symbolic_zero = false;
        r.detail = format!("dimension {} != {expected}", basis.elements.len());
    }
    let mut parts = vec![("reproducing".to_string(), r.note("dimension", basis.elements.len()))];
    if kind == Kind::Monogenic && k > 0 {
        for (i, h) in space_valued_tests(m, k, Kind::Harmonic, count, 0, o.seed)?.iter().enumerate() {
            let (p, q) = crate::spaces::almansi_split(h, k)?;
            let rebuilt = p.add(&q.apply(Primitive::VectorMul(Var::U))?)?;
            let mono = p.apply(Primitive::Dirac(Var::U))?.add(&q.apply(Primitive::Dirac(Var::U))?)?;
            let mut part = Residual::from_poly(&rebuilt.sub(h)?, o.seed)?;
            if !mono.is_zero() {
                part.symbolic_zero = false;
                part.detail = "split components are not monogenic".into();
            }
            parts.push((format!("almansi{i}"), part));
        }
    }
    Ok(Residual::combine(parts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o() -> CheckOptions {
        CheckOptions::default()
    }

    #[test]
    fn highest_weight_vectors_lie_in_their_spaces() {
        for m in 3..=5 {
            for k in 0..=2 {
                let h = space_vector(m, k, Kind::Harmonic, Source::HighestWeight).unwrap();
                assert!(h.apply(Primitive::Laplacian(Var::U)).unwrap().is_zero());
                let f = space_vector(m, k, Kind::Monogenic, Source::HighestWeight).unwrap();
                assert!(f.apply(Primitive::Dirac(Var::U)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn source_tags_roundtrip() {
        for s in [Source::HighestWeight, Source::BasisElement(3), Source::Random(11)] {
            assert_eq!(Source::parse(&s.tag()).unwrap(), s);
        }
        assert_eq!(case_id("prop_c_alpha", &[("m", 5), ("k", 1), ("alpha", -1)]), "prop_c_alpha/m=5,k=1,alpha=-1");
    }

    #[test]
    fn small_cases() {
        assert!(check_lemma_radial_laplacian(3, 1, 1, &o()).unwrap().passed());
        assert!(check_lemma_mixed_ops(3, 1, 1, &o()).unwrap().passed());
        assert!(check_b_action(3, 1, 1, BForm::Coefficient, Source::HighestWeight, &o()).unwrap().passed());
        assert!(check_fundamental_solution(3, 1, 1, &o()).unwrap().passed());
        assert!(check_c_alpha_derived(5, 1, -1, Source::HighestWeight, &o()).unwrap().passed());
    }
}
