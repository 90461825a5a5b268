//! Harmonic and monogenic polynomial spaces `H_k`, `M_k` in the variable `u`,
//! spherical integration, Fischer inner products and reproducing kernels.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::clifford::{Blade, Conjugation, Multivector};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::poly::{CliffordPoly, Monomial, PolyBuilder, Primitive, Var};
use crate::scalar::{binomial, double_factorial, GaussianRational, Rational, SymbolicConstant};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Kind {
    /// Scalar-valued harmonic polynomials, `H_k`.
    Harmonic,
    /// Clifford-valued monogenic polynomials, `M_k`.
    Monogenic,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Harmonic => "harmonic",
            Kind::Monogenic => "monogenic",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SpaceBasis {
    pub m: usize,
    pub k: u32,
    pub kind: Kind,
    pub elements: Vec<CliffordPoly>,
}

/// All monomials of total degree `k` in `var_1..var_m`, in a fixed order.
pub fn monomials(m: usize, var: Var, k: u32) -> Vec<Monomial> {
    fn rec(m: usize, var: Var, i: usize, left: u32, cur: Monomial, out: &mut Vec<Monomial>) {
        if i == m {
            out.push(cur.with_exp(var, m, left));
            return;
        }
        for e in (0..=left).rev() {
            rec(m, var, i + 1, left - e, cur.with_exp(var, i, e), out);
        }
    }
    let mut out = Vec::new();
    rec(m, var, 1, k, Monomial::one(), &mut out);
    out
}

/// `dim H_k(R^m) = C(m+k-1, k) - C(m+k-3, k-2)`.
pub fn harmonic_dimension(m: usize, k: u32) -> usize {
    let (m, k) = (m as i64, k as i64);
    (binomial(m + k - 1, k) - binomial(m + k - 3, k - 2)) as usize
}

/// Complex dimension of Clifford-valued `M_k(R^m)`: `2^m C(m+k-2, k)`.
pub fn monogenic_dimension(m: usize, k: u32) -> usize {
    (1usize << m) * binomial(m as i64 + k as i64 - 2, k as i64) as usize
}

fn harmonic_basis_with_order(m: usize, k: u32, reverse: bool) -> Vec<CliffordPoly> {
    let mut cols = monomials(m, Var::U, k);
    if reverse {
        cols.reverse();
    }
    if k < 2 {
        return cols.iter().map(|mono| CliffordPoly::monomial(m, *mono, Multivector::one(m))).collect();
    }
    let rows = monomials(m, Var::U, k - 2);
    let index: HashMap<Monomial, usize> = rows.iter().enumerate().map(|(i, r)| (*r, i)).collect();
    let mut a: Matrix = vec![vec![GaussianRational::zero(); cols.len()]; rows.len()];
    for (j, mono) in cols.iter().enumerate() {
        let lap = CliffordPoly::monomial(m, *mono, Multivector::one(m)).apply(Primitive::Laplacian(Var::U)).expect("valid");
        for (t, c) in lap.terms() {
            a[index[t]][j] = c.scalar_part();
        }
    }
    linalg::nullspace(&a, cols.len())
        .into_iter()
        .map(|v| {
            let mut b = PolyBuilder::new(m);
            for (j, c) in v.into_iter().enumerate() {
                b.add(cols[j], Multivector::scalar(m, c));
            }
            b.finish()
        })
        .collect()
}

fn monogenic_nullspace_basis(m: usize, k: u32) -> Vec<CliffordPoly> {
    let blades: Vec<Blade> = (0..1u16 << m).map(|b| Blade(b as u8)).collect();
    let cols: Vec<(Monomial, Blade)> =
        monomials(m, Var::U, k).into_iter().flat_map(|mono| blades.iter().map(move |b| (mono, *b))).collect();
    if k == 0 {
        return cols.iter().map(|(mono, b)| CliffordPoly::monomial(m, *mono, Multivector::blade(m, *b, GaussianRational::one()))).collect();
    }
    let rows: Vec<(Monomial, Blade)> =
        monomials(m, Var::U, k - 1).into_iter().flat_map(|mono| blades.iter().map(move |b| (mono, *b))).collect();
    let index: HashMap<(Monomial, Blade), usize> = rows.iter().enumerate().map(|(i, r)| (*r, i)).collect();
    let mut a: Matrix = vec![vec![GaussianRational::zero(); cols.len()]; rows.len()];
    for (j, (mono, b)) in cols.iter().enumerate() {
        let img = CliffordPoly::monomial(m, *mono, Multivector::blade(m, *b, GaussianRational::one()))
            .apply(Primitive::Dirac(Var::U))
            .expect("valid");
        for (t, c) in img.terms() {
            for (bl, x) in c.terms() {
                a[index[&(*t, *bl)]][j] = x.clone();
            }
        }
    }
    linalg::nullspace(&a, cols.len())
        .into_iter()
        .map(|v| {
            let mut b = PolyBuilder::new(m);
            for (j, c) in v.into_iter().enumerate() {
                if !c.is_zero() {
                    b.add(cols[j].0, Multivector::blade(m, cols[j].1, c));
                }
            }
            b.finish()
        })
        .collect()
}

/// Basis of `H_k` or of Clifford-valued `M_k` (as a complex vector space) from
/// the exact nullspace of `Δ_u` or `D_u` on monomials.
pub fn build_basis(m: usize, k: u32, kind: Kind) -> Result<SpaceBasis> {
    if m < 3 {
        return Err(Error::InvalidParameter(format!("need m >= 3, got {m}")));
    }
    let elements = match kind {
        Kind::Harmonic => harmonic_basis_with_order(m, k, false),
        Kind::Monogenic => monogenic_nullspace_basis(m, k),
    };
    Ok(SpaceBasis { m, k, kind, elements })
}

/// Rank of the harmonic nullspace computed with the reversed monomial order.
pub fn harmonic_dimension_reordered(m: usize, k: u32) -> usize {
    harmonic_basis_with_order(m, k, true).len()
}

/// Basis of `M_k` as a right Clifford module: Cauchy-Kovalevskaya extensions
/// `Σ_j u_1^j/j! (e_1 D')^j g` of the monomials `g` in `u_2..u_m`.
pub fn monogenic_module_basis(m: usize, k: u32) -> Vec<CliffordPoly> {
    let mut out = Vec::new();
    for mono in monomials(m, Var::U, k) {
        if mono.exp(Var::U, 1) != 0 {
            continue;
        }
        let g = CliffordPoly::monomial(m, mono, Multivector::one(m));
        let mut term = g.clone();
        let mut acc = g;
        let mut fact = Rational::one();
        for j in 1..=k {
            // D' = Σ_{i≥2} e_i ∂_{u_i}, then left multiply by e_1.
            let mut dprime = PolyBuilder::new(m);
            for i in 2..=m {
                let d = term.apply(Primitive::Partial(Var::U, i)).expect("valid");
                dprime.add_poly(&d.left_mul_mv(&Multivector::e(m, i)).expect("dim"));
            }
            term = dprime.finish().left_mul_mv(&Multivector::e(m, 1)).expect("dim");
            fact *= &Rational::from_int(j as i64);
            let u1j = CliffordPoly::var(m, Var::U, 1).pow(j);
            acc = acc.add(&u1j.mul(&term).expect("dim").scale_rational(&fact.recip().expect("nonzero"))).expect("dim");
        }
        out.push(acc);
    }
    out
}

/// `∫_{S^{m-1}} u^α dS / ω_{m-1}`.
pub fn sphere_moment(m: usize, alpha: &[u32]) -> Rational {
    if alpha.iter().any(|a| a % 2 == 1) {
        return Rational::zero();
    }
    let mut num = BigInt::from(1);
    let mut total = 0u32;
    for a in alpha {
        num *= double_factorial(*a as i64 - 1);
        total += a / 2;
    }
    let mut den = BigInt::from(1);
    for l in 0..total {
        den *= BigInt::from(m as i64 + 2 * l as i64);
    }
    Rational::from(BigRational::new(num, den))
}

/// Integrates over the unit sphere in `var`, leaving the other variables.
/// The result is the coefficient of `ω_{m-1}`.
pub fn sphere_integrate_var(p: &CliffordPoly, var: Var) -> CliffordPoly {
    let m = p.dim();
    let mut moments: HashMap<Monomial, Rational> = HashMap::new();
    let mut out = PolyBuilder::new(m);
    for (mono, c) in p.terms() {
        let (inside, rest) = mono.split(var);
        let w = moments.entry(inside).or_insert_with(|| sphere_moment(m, &inside.exponents(var, m))).clone();
        if !w.is_zero() {
            out.add(rest, c.scale_rational(&w));
        }
    }
    out.finish()
}

/// `∫ p dS / ω_{m-1}` for a polynomial in `u` alone.
pub fn sphere_integrate(p: &CliffordPoly) -> Result<Multivector> {
    for var in [Var::X, Var::V] {
        if p.uses(var) {
            return Err(Error::InvalidParameter(format!("sphere_integrate: {} present", var.name())));
        }
    }
    Ok(sphere_integrate_var(p, Var::U).coeff(&Monomial::one()))
}

/// `(p, q)_u = ∫ \bar p q dS(u)`, as a polynomial in the remaining variables
/// (coefficient of `ω_{m-1}`).
pub fn fischer_inner_var(p: &CliffordPoly, q: &CliffordPoly, conv: Conjugation) -> Result<CliffordPoly> {
    Ok(sphere_integrate_var(&p.conjugate(conv).mul(q)?, Var::U))
}

pub fn fischer_inner(p: &CliffordPoly, q: &CliffordPoly, conv: Conjugation) -> Result<Multivector> {
    sphere_integrate(&p.conjugate(conv).mul(q)?)
}

/// `ω_{m-1} = 2π^{m/2}/Γ(m/2)`.
pub fn sphere_area(m: usize) -> SymbolicConstant {
    gamma_half(m as i64).recip().expect("nonzero").scale(&Rational::from_int(2)).mul(&pi_half_power(m as i32))
}

fn pi_half_power(p: i32) -> SymbolicConstant {
    SymbolicConstant::new(GaussianRational::one(), p)
}

/// `Γ(n/2)` for a positive integer `n`.
pub fn gamma_half(n: i64) -> SymbolicConstant {
    assert!(n > 0, "Gamma pole at n/2 = {}", n as f64 / 2.0);
    if n % 2 == 0 {
        let mut f = Rational::one();
        for i in 1..n / 2 {
            f *= &Rational::from_int(i);
        }
        SymbolicConstant::rational(f)
    } else {
        // Γ(n/2) = (n-2)!! / 2^{(n-1)/2} · √π
        let num = double_factorial(n - 2);
        let den = BigInt::from(1) << ((n - 1) / 2) as usize;
        SymbolicConstant::new(GaussianRational::real(Rational::from(BigRational::new(num, den))), 1)
    }
}

/// `Σ_{ij} b_i(u) K_ij \bar b_j(v)`, scaled by `1/ω_{m-1}`.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub m: usize,
    pub k: u32,
    pub kind: Kind,
    pub scale: SymbolicConstant,
    pub poly: CliffordPoly,
}

/// Clifford-valued Gram matrix of a right-module basis.
fn gram(basis: &[CliffordPoly], conv: Conjugation) -> Result<Vec<Vec<Multivector>>> {
    basis
        .iter()
        .map(|bi| basis.iter().map(|bj| fischer_inner(bi, bj, conv)).collect())
        .collect()
}

/// Inverts a square matrix over `Cl_m(C)` through the left-regular representation.
pub fn clifford_matrix_inverse(g: &[Vec<Multivector>], m: usize) -> Result<Vec<Vec<Multivector>>> {
    let n = g.len();
    let nb = 1usize << m;
    let size = n * nb;
    let mut a: Matrix = vec![vec![GaussianRational::zero(); size]; size];
    for i in 0..n {
        for l in 0..n {
            for bcol in 0..nb {
                let e = Multivector::blade(m, Blade(bcol as u8), GaussianRational::one());
                let img = &g[i][l] * &e;
                for (brow, c) in img.terms() {
                    a[i * nb + brow.0 as usize][l * nb + bcol] = c.clone();
                }
            }
        }
    }
    // Right-hand sides: column j of the identity, entry j equal to the scalar 1.
    let mut rhs: Matrix = vec![vec![GaussianRational::zero(); n]; size];
    for j in 0..n {
        rhs[j * nb][j] = GaussianRational::one();
    }
    let sol = linalg::solve(&a, &rhs)?;
    Ok((0..n)
        .map(|l| {
            (0..n)
                .map(|j| Multivector::from_terms(m, (0..nb).map(|b| (Blade(b as u8), sol[l * nb + b][j].clone()))))
                .collect()
        })
        .collect())
}

fn kernel_from_basis(m: usize, basis: &[CliffordPoly], conv: Conjugation) -> Result<CliffordPoly> {
    let g = gram(basis, conv)?;
    let h = clifford_matrix_inverse(&g, m)?;
    let n = basis.len();
    let mut out = PolyBuilder::new(m);
    let conj_v: Vec<CliffordPoly> =
        basis.iter().map(|b| b.conjugate(conv).rename(Var::U, Var::V)).collect::<Result<_>>()?;
    for i in 0..n {
        for j in 0..n {
            // K_ij = conj(H_ji)
            let kij = h[j][i].conjugate(conv);
            if kij.is_zero() {
                continue;
            }
            let left = basis[i].right_mul_mv(&kij)?;
            out.add_poly(&left.mul(&conj_v[j])?);
        }
    }
    Ok(out.finish())
}

/// Reproducing kernel built by Gram inversion.
pub fn reproducing_kernel_with(m: usize, k: u32, kind: Kind, conv: Conjugation) -> Result<Kernel> {
    if m < 3 {
        return Err(Error::InvalidParameter(format!("need m >= 3, got {m}")));
    }
    let basis = match kind {
        Kind::Harmonic => build_basis(m, k, kind)?.elements,
        Kind::Monogenic => monogenic_module_basis(m, k),
    };
    let poly = kernel_from_basis(m, &basis, conv)?;
    Ok(Kernel { m, k, kind, scale: sphere_area(m).recip().expect("nonzero"), poly })
}

type KernelKey = (usize, u32, Kind);

/// Cached Hermitian-convention kernel.
pub fn reproducing_kernel(m: usize, k: u32, kind: Kind) -> Result<Arc<Kernel>> {
    static CACHE: OnceLock<Mutex<HashMap<KernelKey, Arc<Kernel>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(z) = cache.lock().expect("poisoned").get(&(m, k, kind)) {
        return Ok(z.clone());
    }
    let z = Arc::new(reproducing_kernel_with(m, k, kind, Conjugation::Hermitian)?);
    cache.lock().expect("poisoned").entry((m, k, kind)).or_insert(z.clone());
    Ok(z)
}

/// `∫ \bar Z(u,v) f(u) dS(u)` with the kernel's `1/ω` cancelled against `dS`.
pub fn reproduce(z: &Kernel, f: &CliffordPoly, conv: Conjugation) -> Result<CliffordPoly> {
    Ok(sphere_integrate_var(&z.poly.conjugate(conv).mul(f)?, Var::U))
}

/// Checks `f(v) = ∫ \bar Z(u,v) f(u) dS(u)` on every element of the full basis.
pub fn check_reproducing(z: &Kernel, conv: Conjugation) -> Result<bool> {
    let basis = build_basis(z.m, z.k, z.kind)?;
    for f in &basis.elements {
        if reproduce(z, f, conv)? != f.rename(Var::U, Var::V)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `P_k h = h + u D_u h/(m+2k-2)`.
pub fn project_monogenic(h: &CliffordPoly, k: u32) -> Result<CliffordPoly> {
    let m = h.dim();
    let c = Rational::new(1, m as i64 + 2 * k as i64 - 2);
    let t = h.apply(Primitive::Dirac(Var::U))?.apply(Primitive::VectorMul(Var::U))?;
    h.add(&t.scale_rational(&c))
}

/// Splits harmonic `h = p + u q` with `p ∈ M_k`, `q ∈ M_{k-1}`.
pub fn almansi_split(h: &CliffordPoly, k: u32) -> Result<(CliffordPoly, CliffordPoly)> {
    if !h.is_homogeneous(Var::U, k) {
        return Err(Error::NotHomogeneous(k, "u".into()));
    }
    if !h.apply(Primitive::Laplacian(Var::U))?.is_zero() {
        return Err(Error::NotInSpace("input is not harmonic in u".into()));
    }
    let m = h.dim();
    let c = Rational::new(-1, m as i64 + 2 * k as i64 - 2);
    let q = h.apply(Primitive::Dirac(Var::U))?.scale_rational(&c);
    Ok((project_monogenic(h, k)?, q))
}

/// `(R_x u)_i = u_i − 2⟨u,x⟩x_i/||x||²` at a fixed rational `x`, for `var`.
pub fn reflection_at(m: usize, var: Var, x: &[Rational]) -> Vec<CliffordPoly> {
    let r2 = x.iter().fold(Rational::zero(), |acc, c| &acc + &(c * c));
    let two_over = &Rational::from_int(2) / &r2;
    (1..=m)
        .map(|i| {
            let mut b = PolyBuilder::new(m);
            b.add(Monomial::var(var, i), Multivector::one(m));
            for j in 1..=m {
                let c = -(&(&two_over * &x[i - 1]) * &x[j - 1]);
                b.add(Monomial::var(var, j), Multivector::scalar(m, c.into()));
            }
            b.finish()
        })
        .collect()
}

/// Rotation `u ↦ s u s̃` as substitution images; `s` must be an even versor with `s s̃ = 1`.
pub fn rotation_images(m: usize, var: Var, s: &Multivector) -> Vec<CliffordPoly> {
    let srev = s.reversion();
    (1..=m)
        .map(|i| {
            let mut b = PolyBuilder::new(m);
            for j in 1..=m {
                // (s u s̃)_i = Σ_j u_j (s e_j s̃)_i
                let col = &(s * &Multivector::e(m, j)) * &srev;
                let c = col.coeff(Blade::vector(i));
                b.add(Monomial::var(var, j), Multivector::scalar(m, c));
            }
            b.finish()
        })
        .collect()
}

/// Sign `ε` with `Z(R_x u, R_x v) = ε Z(u,v)` (harmonic) or
/// `Z(R_x u, R_x v) = ε x̂ Z(u,v) x̂` (monogenic); `None` if neither sign fits.
pub fn reflection_sign(z: &Kernel, x: &[Rational]) -> Result<Option<i32>> {
    let m = z.m;
    let moved = z.poly.substitute(Var::U, &reflection_at(m, Var::U, x))?.substitute(Var::V, &reflection_at(m, Var::V, x))?;
    let reference = match z.kind {
        Kind::Harmonic => z.poly.clone(),
        Kind::Monogenic => {
            let xv = crate::clifford::vector_embed(m, x)?;
            let r2 = x.iter().fold(Rational::zero(), |acc, c| &acc + &(c * c));
            z.poly.left_mul_mv(&xv)?.right_mul_mv(&xv)?.scale_rational(&r2.recip().expect("nonzero x"))
        }
    };
    if moved == reference {
        Ok(Some(1))
    } else if moved == reference.neg() {
        Ok(Some(-1))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(build_basis(3, 2, Kind::Harmonic).unwrap().elements.len(), 5);
        for m in 3..=5 {
            for k in 0..=3 {
                assert_eq!(build_basis(m, k, Kind::Harmonic).unwrap().elements.len(), harmonic_dimension(m, k));
                assert_eq!(harmonic_dimension_reordered(m, k), harmonic_dimension(m, k));
            }
        }
        assert_eq!(build_basis(3, 1, Kind::Monogenic).unwrap().elements.len(), monogenic_dimension(3, 1));
    }

    #[test]
    fn moments() {
        assert_eq!(sphere_moment(3, &[2, 0, 0]), Rational::new(1, 3));
        assert_eq!(sphere_moment(3, &[4, 0, 0]), Rational::new(1, 5));
        assert_eq!(sphere_moment(5, &[4, 0, 0, 0, 0]), Rational::new(3, 35));
        assert!(sphere_moment(3, &[1, 1, 0]).is_zero());
    }

    #[test]
    fn sphere_areas() {
        assert_eq!(sphere_area(3), SymbolicConstant::new(GaussianRational::from_int(4), 2));
        assert_eq!(sphere_area(4), SymbolicConstant::new(GaussianRational::from_int(2), 4));
        assert_eq!(sphere_area(5), SymbolicConstant::new(GaussianRational::ratio(8, 3), 4));
    }

    #[test]
    fn fischer_examples() {
        let m = 3;
        let u1 = CliffordPoly::var(m, Var::U, 1);
        let u2 = CliffordPoly::var(m, Var::U, 2);
        let e12 = &Multivector::e(m, 1) * &Multivector::e(m, 2);
        let p = u1.sub(&u2.left_mul_mv(&e12).unwrap()).unwrap();
        assert!(p.apply(Primitive::Dirac(Var::U)).unwrap().is_zero());
        let pp = fischer_inner(&p, &p, Conjugation::Hermitian).unwrap();
        assert_eq!(pp, Multivector::scalar(m, GaussianRational::ratio(2, 3)));
        assert!(fischer_inner(&u1, &u2, Conjugation::Hermitian).unwrap().is_zero());
    }

    #[test]
    fn harmonic_z1() {
        let z = reproducing_kernel(4, 1, Kind::Harmonic).unwrap();
        assert_eq!(z.poly, CliffordPoly::inner(4, Var::U, Var::V).scale_rational(&Rational::from_int(4)));
    }

    #[test]
    fn almansi_example() {
        let m = 3;
        let (p, q) = almansi_split(&CliffordPoly::var(m, Var::U, 1), 1).unwrap();
        let expect_q = CliffordPoly::constant(Multivector::e(m, 1).scale_rational(&Rational::new(-1, 3)));
        assert_eq!(q, expect_q);
        let expect_p = CliffordPoly::var(m, Var::U, 1)
            .add(&CliffordPoly::vector(m, Var::U).right_mul_mv(&Multivector::e(m, 1)).unwrap().scale_rational(&Rational::new(1, 3)))
            .unwrap();
        assert_eq!(p, expect_p);
    }
}
