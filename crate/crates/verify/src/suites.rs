use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;

use hspin_core::conformal::{self, Family, IntertwiningGenerator, MobiusMap};
use hspin_core::identities::{self as id, case_id, CheckOptions, Residual, Source};
use hspin_core::operators::BForm;
use hspin_core::samples::sample_points;
use hspin_core::scalar::Rational;
use hspin_core::spaces::Kind;
use hspin_core::{steinweiss, Error};

use crate::config::{SuiteConfig, SUITES};
use crate::delta::numeric_delta_check;
use crate::report::{CaseRecord, Report, Status};

/// One unit of work.
#[derive(Clone, Debug)]
pub enum Job {
    FundamentalSolution { m: usize, k: u32, order: u32 },
    CAlpha { m: usize, k: u32, alpha: i64, derived: bool },
    Lemmas { m: usize, k: u32, beta: i64 },
    BAction { m: usize, k: u32, s: u32, form: BForm },
    Telescoping { m: usize, k: u32, j: u32 },
    BForms { m: usize, k: u32, s: u32 },
    RkSquared { m: usize, k: u32 },
    LaplaceSplit { m: usize, k: u32 },
    BCommute { m: usize, k: u32, s1: u32, s2: u32 },
    Classical { m: usize, order: u32 },
    Kernel { m: usize, k: u32, kind: Kind },
    Rotation { m: usize, k: u32, family: Family },
    Inversion { m: usize, k: u32, family: Family },
    Epsilon { m: usize, k: u32, kind: Kind },
    Intertwining { m: usize, k: u32, t: u32, generator: usize },
    Cocycle { m: usize, t: i64 },
    SteinWeiss { m: usize, k: u32 },
    Duality { m: usize },
    TargetSpace { m: usize, k: u32, order: u32 },
    Delta { m: usize, k: u32, order: u32 },
}

#[derive(Clone, Debug)]
pub struct Case {
    pub suite: &'static str,
    pub id: String,
    pub params: BTreeMap<String, i64>,
    pub job: Job,
}

fn case(suite: &'static str, name: &str, params: &[(&str, i64)], job: Job) -> Case {
    Case {
        suite,
        id: case_id(name, params),
        params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        job,
    }
}

/// `{4−m, 6−m, 0, 1}` without repeats.
pub fn default_alphas(m: usize) -> Vec<i64> {
    let mut out = Vec::new();
    for a in [4 - m as i64, 6 - m as i64, 0, 1] {
        if !out.contains(&a) {
            out.push(a);
        }
    }
    out
}

fn families(m: usize, orders: &[u32]) -> Vec<Family> {
    let mut out: Vec<Family> = orders.iter().map(|&o| Family::Order(o)).collect();
    for a in [-(m as i64), 2 - m as i64, 1] {
        out.push(Family::AlphaMonogenic(a));
        out.push(Family::AlphaHarmonic(a));
    }
    out
}

fn family_params(f: Family) -> (&'static str, i64) {
    match f {
        Family::Order(o) => ("order", o as i64),
        Family::AlphaMonogenic(a) => ("alpha_monogenic", a),
        Family::AlphaHarmonic(a) => ("alpha_harmonic", a),
    }
}

struct Grid<'a> {
    cfg: &'a SuiteConfig,
}

impl Grid<'_> {
    fn m(&self, d: &[usize]) -> Vec<usize> {
        self.cfg.m.clone().unwrap_or_else(|| d.to_vec())
    }
    fn k(&self, d: &[u32]) -> Vec<u32> {
        self.cfg.k.clone().unwrap_or_else(|| d.to_vec())
    }
    fn order(&self, d: &[u32]) -> Vec<u32> {
        self.cfg.order.clone().unwrap_or_else(|| d.to_vec())
    }
    fn s(&self, d: &[u32]) -> Vec<u32> {
        self.cfg.s.clone().unwrap_or_else(|| d.to_vec())
    }
}

/// Expands a suite id into its cases.
pub fn cases_for(cfg: &SuiteConfig) -> Result<Vec<Case>, String> {
    let g = Grid { cfg };
    let mut out = Vec::new();
    let suite = SUITES.iter().find(|s| **s == cfg.suite).ok_or_else(|| format!("unknown suite {:?}", cfg.suite))?;
    let technical = ["lemmas", "prop_B", "telescoping", "b_forms", "rk_squared", "laplace_split", "b_commute"];
    let wanted = |name: &str| *suite == name || *suite == "all" || (*suite == "technical" && technical.contains(&name));

    if wanted("fundamental_solutions") {
        for m in g.m(&[3, 4, 5]) {
            for k in g.k(&[0, 1, 2]) {
                for order in g.order(&[1, 2, 3, 4]) {
                    let p = [("m", m as i64), ("k", k as i64), ("order", order as i64)];
                    out.push(case("fundamental_solutions", "fundamental_solution", &p, Job::FundamentalSolution { m, k, order }));
                }
            }
        }
    }
    if wanted("c_alpha") {
        for m in g.m(&[3, 4, 5]) {
            for k in g.k(&[0, 1, 2]) {
                for alpha in cfg.alpha.clone().unwrap_or_else(|| default_alphas(m)) {
                    let p = [("m", m as i64), ("k", k as i64), ("alpha", alpha)];
                    out.push(case("c_alpha", "c_alpha", &p, Job::CAlpha { m, k, alpha, derived: false }));
                    out.push(case("c_alpha", "c_alpha_derived", &p, Job::CAlpha { m, k, alpha, derived: true }));
                }
            }
        }
    }
    let (tm, tk, ts) = (g.m(&[3, 5]), g.k(&[1, 2]), g.s(&[1, 2]));
    if wanted("lemmas") {
        for &m in &tm {
            for &k in &tk {
                let betas = cfg.beta.clone().unwrap_or_else(|| ts.iter().map(|&s| m as i64 - 2 * s as i64).collect());
                for beta in betas {
                    let p = [("m", m as i64), ("k", k as i64), ("beta", beta)];
                    out.push(case("lemmas", "lemmas", &p, Job::Lemmas { m, k, beta }));
                }
            }
        }
    }
    for &m in &tm {
        for &k in &tk {
            let mk = [("m", m as i64), ("k", k as i64)];
            for &s in &ts {
                let p = [mk[0], mk[1], ("s", s as i64)];
                if wanted("prop_B") {
                    for form in BForm::ALL {
                        let name = format!("prop_B.{}", form.name());
                        out.push(case("prop_B", &name, &p, Job::BAction { m, k, s, form }));
                    }
                }
                if wanted("telescoping") {
                    // The product runs over B_2 … B_{2j−2}, so j = s + 1 ends at B_{2s}.
                    let pj = [mk[0], mk[1], ("j", s as i64 + 1)];
                    out.push(case("telescoping", "telescoping", &pj, Job::Telescoping { m, k, j: s + 1 }));
                }
                if wanted("b_forms") {
                    out.push(case("b_forms", "b_forms", &p, Job::BForms { m, k, s }));
                }
            }
            if wanted("rk_squared") {
                out.push(case("rk_squared", "rk_squared", &mk, Job::RkSquared { m, k }));
            }
            if wanted("laplace_split") {
                out.push(case("laplace_split", "laplace_split", &mk, Job::LaplaceSplit { m, k }));
            }
            if wanted("b_commute") {
                for (i, &s1) in ts.iter().enumerate() {
                    for &s2 in &ts[i + 1..] {
                        let p = [mk[0], mk[1], ("s1", s1 as i64), ("s2", s2 as i64)];
                        out.push(case("b_commute", "b_commute", &p, Job::BCommute { m, k, s1, s2 }));
                    }
                }
            }
        }
    }
    if wanted("classical_reduction") {
        for m in g.m(&[3, 4, 5]) {
            for order in g.order(&[1, 2, 3, 4]) {
                let p = [("m", m as i64), ("order", order as i64)];
                out.push(case("classical_reduction", "classical_reduction", &p, Job::Classical { m, order }));
            }
        }
    }
    if wanted("kernels") {
        for m in g.m(&[3, 4, 5]) {
            for k in g.k(&[0, 1, 2]) {
                for kind in [Kind::Harmonic, Kind::Monogenic] {
                    let p = [("m", m as i64), ("k", k as i64)];
                    out.push(case("kernels", &format!("kernel.{}", kind.name()), &p, Job::Kernel { m, k, kind }));
                }
            }
        }
    }
    if wanted("covariance") {
        for m in g.m(&[3, 4, 5]) {
            for k in g.k(&[0, 1, 2]) {
                for kind in [Kind::Harmonic, Kind::Monogenic] {
                    let p = [("m", m as i64), ("k", k as i64)];
                    out.push(case("covariance", &format!("epsilon.{}", kind.name()), &p, Job::Epsilon { m, k, kind }));
                }
                for family in families(m, &g.order(&[1, 2, 3, 4])) {
                    let f = family_params(family);
                    let p = [("m", m as i64), ("k", k as i64), f];
                    out.push(case("covariance", "rotation", &p, Job::Rotation { m, k, family }));
                    out.push(case("covariance", "inversion", &p, Job::Inversion { m, k, family }));
                }
            }
        }
    }
    if wanted("intertwining") {
        for m in g.m(&[3]) {
            for k in g.k(&[0, 1]) {
                for t in g.order(&[1, 2]) {
                    for (i, gen) in IntertwiningGenerator::defaults(m).iter().enumerate() {
                        let p = [("m", m as i64), ("k", k as i64), ("t", t as i64)];
                        let name = format!("intertwining.{}", gen.name());
                        out.push(case("intertwining", &name, &p, Job::Intertwining { m, k, t, generator: i }));
                    }
                }
            }
        }
    }
    if wanted("cocycle") {
        for m in g.m(&[3]) {
            for t in g.order(&[1, 2, 3, 4]) {
                for t in [t as i64, -(t as i64)] {
                    out.push(case("cocycle", "cocycle", &[("m", m as i64), ("t", t)], Job::Cocycle { m, t }));
                }
            }
        }
    }
    if wanted("steinweiss") {
        for m in g.m(&[3]) {
            out.push(case("steinweiss", "dirac_duality", &[("m", m as i64)], Job::Duality { m }));
            for k in g.k(&[1, 2]) {
                let p = [("m", m as i64), ("k", k as i64)];
                out.push(case("steinweiss", "rs_projection", &p, Job::SteinWeiss { m, k }));
            }
        }
    }
    if wanted("target_space") {
        for m in g.m(&[3, 4, 5]) {
            for k in g.k(&[0, 1, 2]) {
                for order in g.order(&[1, 2, 3, 4]) {
                    let p = [("m", m as i64), ("k", k as i64), ("order", order as i64)];
                    out.push(case("target_space", "target_space", &p, Job::TargetSpace { m, k, order }));
                }
            }
        }
    }
    if wanted("delta") {
        for m in g.m(&[3]) {
            for k in g.k(&[1]) {
                for order in g.order(&[1, 2]) {
                    let p = [("m", m as i64), ("k", k as i64), ("order", order as i64)];
                    out.push(case("delta", "delta", &p, Job::Delta { m, k, order }));
                }
            }
        }
    }
    Ok(out)
}

fn with_sources(f: impl Fn(Source) -> hspin_core::Result<Residual>, seed: u64) -> hspin_core::Result<Residual> {
    Ok(Residual::combine(vec![("hw".to_string(), f(Source::HighestWeight)?), (format!("rand{seed}"), f(Source::Random(seed))?)]))
}

fn failed(detail: String) -> Residual {
    Residual { symbolic_zero: false, pointwise_zero: false, detail, notes: Vec::new() }
}

/// Runs one job. Floating-point results are mapped onto a residual whose
/// detail carries the measured errors.
pub fn run_job(job: &Job, cfg: &SuiteConfig) -> hspin_core::Result<Residual> {
    let o: CheckOptions = cfg.options();
    let seed = o.seed;
    match *job {
        Job::FundamentalSolution { m, k, order } => id::check_fundamental_solution(m, k, order, &o),
        Job::CAlpha { m, k, alpha, derived } => with_sources(
            |src| if derived { id::check_c_alpha_derived(m, k, alpha, src, &o) } else { id::check_c_alpha(m, k, alpha, src, &o) },
            seed,
        ),
        Job::Lemmas { m, k, beta } => Ok(Residual::combine(vec![
            ("radial_laplacian".into(), id::check_lemma_radial_laplacian(m, k, beta, &o)?),
            ("mixed".into(), id::check_lemma_mixed_ops(m, k, beta, &o)?),
        ])),
        Job::BAction { m, k, s, form } => with_sources(|src| id::check_b_action(m, k, s, form, src, &o), seed),
        Job::Telescoping { m, k, j } => with_sources(|src| id::check_telescoping(m, k, j, src, &o), seed),
        Job::BForms { m, k, s } => id::check_b_forms(m, k, s, 3, &o),
        Job::RkSquared { m, k } => id::check_rk_squared(m, k, 3, &o),
        Job::LaplaceSplit { m, k } => id::check_laplace_split(m, k, 3, &o),
        Job::BCommute { m, k, s1, s2 } => id::check_b_commute(m, k, s1, s2, 3, &o),
        Job::Classical { m, order } => id::check_classical_reduction(m, order, 20, &o),
        Job::Kernel { m, k, kind } => id::check_kernel(m, k, kind, 3, &o),
        Job::Rotation { m, k, family } => {
            let mut parts = Vec::new();
            for (i, s) in conformal::default_spin_elements(m).iter().enumerate() {
                parts.push((format!("s{i}"), conformal::rotation_covariance_check(m, k, family, s, &o)?));
            }
            Ok(Residual::combine(parts))
        }
        Job::Inversion { m, k, family } => conformal::inversion_covariance_check(m, k, family, &o),
        Job::Epsilon { m, k, kind } => Ok(match conformal::measured_sign(m, k, kind)? {
            Some(e) => Residual::ok().note("epsilon", e),
            None => failed("reflection sign differs between sample points".into()),
        }),
        Job::Intertwining { m, k, t, generator } => {
            let gens = IntertwiningGenerator::defaults(m);
            conformal::intertwining_check(m, k, t, &gens[generator], &o)
        }
        Job::Cocycle { m, t } => cocycle_job(m, t),
        Job::SteinWeiss { m, k } => steinweiss::steinweiss_suite(m, k, 10, &o),
        Job::Duality { m } => duality_job(m),
        Job::TargetSpace { m, k, order } => id::check_target_space(m, k, order, 3, &o),
        Job::Delta { m, k, order } => delta_job(m, k, order, cfg),
    }
}

fn cocycle_job(m: usize, t: i64) -> hspin_core::Result<Residual> {
    let mut shift = vec![Rational::zero(); m];
    shift[0] = Rational::from_int(1);
    shift[m - 1] = Rational::from_int(2);
    let maps = [
        MobiusMap::inversion(m),
        MobiusMap::rotation(m, &conformal::default_spin_elements(m)[2])?,
        MobiusMap::translation(&shift)?,
        MobiusMap::dilation(m, Rational::from_int(2))?,
    ];
    let (mut holds, mut reversed, mut printed) = (true, true, true);
    let mut tried = 0;
    for x in sample_points(m)?.iter().take(3) {
        for phi in &maps {
            for psi in &maps {
                // Composites whose weights leave the rationals are skipped.
                match conformal::cocycle_check(t, phi, psi, x) {
                    Ok(c) => {
                        holds &= c.holds;
                        reversed &= c.reversed_holds;
                        printed &= c.printed_holds;
                        tried += 1;
                    }
                    Err(Error::IrrationalNorm(_)) | Err(Error::Singular(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    let r = if holds { Residual::ok() } else { failed("J(φ∘ψ,x) != J(ψ,x)·J(φ,ψ(x))".into()) };
    Ok(r.note("pairs", tried).note("reversed_order_holds", reversed).note("printed_weight_holds", printed))
}

fn duality_job(m: usize) -> hspin_core::Result<Residual> {
    use hspin_core::clifford::{witt_and_idempotent, Multivector};
    use hspin_core::poly::{CliffordPoly, Var};
    use hspin_core::spaces::build_basis;
    let idem = witt_and_idempotent(m)?.idempotent;
    let span = steinweiss::spinor_span(m)?;
    let mut inputs = vec![CliffordPoly::constant(idem.clone())];
    let x = CliffordPoly::vector(m, Var::X);
    inputs.push(x.right_mul_mv(&idem)?);
    inputs.push(CliffordPoly::var(m, Var::X, 1).pow(2).right_mul_mv(&(&Multivector::e(m, 2) * &idem))?);
    for q in build_basis(m, 1, Kind::Monogenic)?.elements.iter().take(4) {
        inputs.push(q.rename(Var::U, Var::X)?.right_mul_mv(&idem)?);
    }
    let mut parts = Vec::new();
    let mut monogenic = 0;
    for (i, f) in inputs.iter().enumerate() {
        let d = steinweiss::dirac_duality_check(f, &span)?;
        monogenic += usize::from(d.dirac_zero);
        let r = if d.agrees() { Residual::ok() } else { failed(format!("{d:?}")) };
        parts.push((format!("f{i}"), r));
    }
    Ok(Residual::combine(parts).note("monogenic_inputs", monogenic))
}

fn delta_job(m: usize, k: u32, order: u32, cfg: &SuiteConfig) -> hspin_core::Result<Residual> {
    let n = cfg.resolution;
    let base = numeric_delta_check(m, k, order, n, 1.0)?;
    let fine = numeric_delta_check(m, k, order, 2 * n, 1.0)?;
    let zero = numeric_delta_check(m, k, order, n.min(8), 0.0)?;
    let within = base.relative_error <= cfg.tolerance;
    let monotone = fine.relative_error < base.relative_error;
    let ok = within && monotone && zero.relative_error == 0.0;
    let detail = format!(
        "relative error {:.3e} at n={n}, {:.3e} at n={}, tolerance {:.1e}, zero input {:.1e}",
        base.relative_error,
        fine.relative_error,
        2 * n,
        cfg.tolerance,
        zero.relative_error
    );
    let r = if ok { Residual::ok() } else { failed(detail.clone()) };
    Ok(r.note("error", format!("{:.3e}", base.relative_error))
        .note("error_doubled", format!("{:.3e}", fine.relative_error))
        .note("sign_flipped_error", format!("{:.3e}", base.flipped_error))
        .note("within_tolerance", within)
        .note("monotone", monotone))
}

fn status_of(r: &hspin_core::Result<Residual>) -> Status {
    match r {
        Ok(r) if r.passed() => Status::Pass,
        Ok(_) => Status::Fail,
        Err(Error::Budget(_)) => Status::SkippedBudget,
        Err(Error::Pole(_)) => Status::SkippedPole,
        Err(_) => Status::Fail,
    }
}

pub fn run_case(c: &Case, cfg: &SuiteConfig) -> CaseRecord {
    let start = Instant::now();
    let r = run_job(&c.job, cfg);
    let runtime_ms = start.elapsed().as_millis() as u64;
    let status = status_of(&r);
    let (residual, notes) = match r {
        Ok(r) => (r.detail, r.notes.into_iter().collect()),
        Err(e) => (e.to_string(), BTreeMap::new()),
    };
    CaseRecord { id: c.id.clone(), suite: c.suite.to_string(), params: c.params.clone(), status, residual, notes, runtime_ms }
}

/// Default worker count: the `HSPIN_JOBS` variable, else the number of CPUs.
pub fn default_jobs() -> usize {
    std::env::var("HSPIN_JOBS").ok().and_then(|v| v.parse().ok()).filter(|&n| n > 0).unwrap_or_else(num_cpus)
}

fn num_cpus() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Expands and runs every case; records come back in expansion order.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report, String> {
    let cases = cases_for(cfg)?;
    let jobs = cfg.jobs.unwrap_or_else(default_jobs).max(1);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| e.to_string())?;
    let records: Vec<CaseRecord> = pool.install(|| cases.par_iter().map(|c| run_case(c, cfg)).collect());
    Ok(Report::new(Some(cfg.clone()), records))
}
