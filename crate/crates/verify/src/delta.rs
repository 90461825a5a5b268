//! Floating-point check of the distributional normalization of the order-1
//! and order-2 fundamental solutions.
//!
//! With `φ(x,v) = ψ(x) q(v)` and `ψ` a polynomial bump on the unit ball, the
//! operator is moved onto `ψ` by integration by parts:
//!
//! * order 1: `∬ (R_k E(x−y,u,v), φ(x,v))_v dx = −Σ_i ∫ P_k[e_i F(x−y,u)] ∂_iψ(x) dx`
//! * order 2: `∬ (D_2 E(x−y,u,v), φ(x,v))_v dx = Σ_ab ∫ L_ab F(x−y,u) ∂_a∂_bψ(x) dx`
//!
//! where `F = ∫ E(·,u,v) q(v) dS(v)` is computed exactly by the engine and
//! `D_2 = Σ_ab L_ab(u) ∂_a∂_b`. Both kernels are homogeneous in `x`, so in
//! polar coordinates about `y` only their values on the unit sphere are
//! needed. The radial and angular integrals use a product midpoint rule.

use num_complex::Complex64;

use hspin_core::operators::{constants, projection_p};
use hspin_core::poly::{CliffordPoly, Primitive, Var};
use hspin_core::radial::{kelvin_embed, RadialFn};
use hspin_core::scalar::Rational;
use hspin_core::spaces::{build_basis, reproducing_kernel, sphere_area, sphere_integrate_var, Kind};
use hspin_core::{Error, Result};

/// Bump exponent: `ψ(x) = (1 − ||x||²)^P` on the unit ball.
const P: i32 = 4;

/// Probe points `y`, all inside the support of `ψ`.
pub const PROBES: [[f64; 3]; 3] = [[0.0, 0.0, 0.0], [0.2, -0.1, 0.3], [-0.3, 0.25, 0.1]];

/// Values of `u` at which both sides are compared.
const U_PROBES: [[f64; 3]; 3] = [[1.0, 0.0, 0.0], [0.0, 0.6, 0.8], [0.48, -0.6, 0.64]];

type Value = Vec<Complex64>;

/// Floating-point image of a radial function in `x` and `u`.
#[derive(Clone, Debug)]
struct Compiled {
    m: usize,
    terms: Vec<(i32, Vec<u32>, Vec<u32>, Vec<(usize, Complex64)>)>,
}

impl Compiled {
    fn new(f: &RadialFn) -> Self {
        let m = f.dim();
        let mut terms = Vec::new();
        for (t, p) in f.terms() {
            for (mono, c) in p.terms() {
                let xe = (1..=m).map(|i| mono.exp(Var::X, i)).collect();
                let ue = (1..=m).map(|i| mono.exp(Var::U, i)).collect();
                let cs = c.to_f64_pairs().into_iter().map(|(b, re, im)| (b.0 as usize, Complex64::new(re, im))).collect();
                terms.push((t, xe, ue, cs));
            }
        }
        Compiled { m, terms }
    }

    fn eval(&self, x: &[f64], u: &[f64], out: &mut Value) {
        let r = x.iter().map(|c| c * c).sum::<f64>().sqrt();
        for (t, xe, ue, cs) in &self.terms {
            let mut w = r.powi(*t);
            for i in 0..self.m {
                w *= x[i].powi(xe[i] as i32) * u[i].powi(ue[i] as i32);
            }
            for (b, c) in cs {
                out[*b] += c * w;
            }
        }
    }
}

fn grad_psi(x: &[f64; 3]) -> [f64; 3] {
    let s = x.iter().map(|c| c * c).sum::<f64>();
    if s >= 1.0 {
        return [0.0; 3];
    }
    let f = -2.0 * P as f64 * (1.0 - s).powi(P - 1);
    [f * x[0], f * x[1], f * x[2]]
}

fn hess_psi(x: &[f64; 3]) -> [[f64; 3]; 3] {
    let s = x.iter().map(|c| c * c).sum::<f64>();
    let mut h = [[0.0; 3]; 3];
    if s >= 1.0 {
        return h;
    }
    let p = P as f64;
    let a = 4.0 * p * (p - 1.0) * (1.0 - s).powi(P - 2);
    let b = -2.0 * p * (1.0 - s).powi(P - 1);
    for i in 0..3 {
        for j in 0..3 {
            h[i][j] = a * x[i] * x[j] + if i == j { b } else { 0.0 };
        }
    }
    h
}

fn psi(x: &[f64; 3]) -> f64 {
    let s = x.iter().map(|c| c * c).sum::<f64>();
    if s >= 1.0 {
        0.0
    } else {
        (1.0 - s).powi(P)
    }
}

/// `∫ E(x,u,v) q(v) dS(v)` up to the scalar constant: `x||x||^{−m} K(xux/||x||²)`
/// or `||x||^{2−m} K(xux/||x||²)`, with `K(u) = ∫ Z(u,v) q(v) dS(v)/ω`.
fn paired_kernel(m: usize, k: u32, order: u32, q: &CliffordPoly) -> Result<RadialFn> {
    let kind = if order == 1 { Kind::Monogenic } else { Kind::Harmonic };
    let z = reproducing_kernel(m, k, kind)?;
    let qv = q.rename(Var::U, Var::V)?;
    let paired = sphere_integrate_var(&z.poly.mul(&qv)?, Var::V);
    if order == 1 {
        kelvin_embed(&paired, -(m as i32), true)
    } else {
        kelvin_embed(&paired, 2 - m as i32, false)
    }
}

/// Exact direction kernels: `G_i = P_k[e_i F]` (order 1) or `G_ab = L_ab F` (order 2).
fn direction_kernels(m: usize, k: u32, order: u32, q: &CliffordPoly) -> Result<Vec<Compiled>> {
    let f = paired_kernel(m, k, order, q)?;
    let mut out = Vec::new();
    if order == 1 {
        let p = projection_p(m, k);
        for i in 1..=m {
            let ei = hspin_core::clifford::Multivector::e(m, i);
            out.push(Compiled::new(&p.apply(&f.left_mul_mv(&ei)?, None)?));
        }
    } else {
        let (mi, ki) = (m as i64, k as i64);
        let c1 = Rational::new(-4, mi + 2 * ki - 2);
        let den = (mi + 2 * ki - 2) * (mi + 2 * ki - 4);
        if den == 0 {
            return Err(Error::Pole("(m+2k-2)(m+2k-4) = 0".into()));
        }
        let c2 = Rational::new(1, den);
        for a in 1..=m {
            for b in 1..=m {
                let ua = CliffordPoly::var(m, Var::U, a);
                let dub = f.apply(Primitive::Partial(Var::U, b))?;
                let mut g = dub.left_mul_poly(&ua)?.scale_rational(&c1);
                let dd = dub.apply(Primitive::Partial(Var::U, a))?;
                g = g.add(&dd.apply(Primitive::NormSq(Var::U))?.scale_rational(&c2))?;
                if a == b {
                    g = g.add(&f)?;
                }
                out.push(Compiled::new(&g));
            }
        }
    }
    Ok(out)
}

/// Overall scalar in front of the paired kernel.
fn normalization(m: usize, k: u32, order: u32) -> Result<f64> {
    let omega = sphere_area(m).to_f64();
    Ok(if order == 1 {
        // E_{k,1} = x/(ω c_{k,1} ||x||^m) Z; integration by parts contributes −1.
        -1.0 / (omega * constants::c_k1(m, k).to_f64())
    } else {
        // E_{k,2} = a_2 ||x||^{2−m} Z with Z = poly/ω; K already averages over S.
        constants::a_2(m, k)?.to_f64()
    })
}

/// Result of one quadrature run.
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaOutcome {
    pub resolution: usize,
    /// `max |Φ − φ| / max |φ|` over probe points `y` and `u`.
    pub relative_error: f64,
    /// The same with the sign of `Φ` reversed.
    pub flipped_error: f64,
}

fn distance(a: &Value, b: &Value) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q).norm_sqr()).sum::<f64>().sqrt()
}

fn norm(a: &Value) -> f64 {
    a.iter().map(|p| p.norm_sqr()).sum::<f64>().sqrt()
}

/// Runs the check on the first basis element of the target space, scaled by
/// `amplitude` (0 gives the zero test function).
pub fn numeric_delta_check(m: usize, k: u32, order: u32, resolution: usize, amplitude: f64) -> Result<DeltaOutcome> {
    if m != 3 {
        return Err(Error::InvalidParameter(format!("quadrature is implemented for m = 3, got {m}")));
    }
    if !(1..=2).contains(&order) {
        return Err(Error::InvalidParameter(format!("order must be 1 or 2, got {order}")));
    }
    if resolution < 2 {
        return Err(Error::InvalidParameter("resolution too coarse".into()));
    }
    let kind = if order == 1 { Kind::Monogenic } else { Kind::Harmonic };
    let q = build_basis(m, k, kind)?.elements[0].clone();
    let kernels = direction_kernels(m, k, order, &q)?;
    let qc = Compiled::new(&RadialFn::from_poly(q, 0));
    let scale = normalization(m, k, order)? * amplitude;
    let nb = 1usize << m;
    let n = resolution;
    let (dth, dph) = (std::f64::consts::PI / n as f64, 2.0 * std::f64::consts::PI / n as f64);

    let mut max_err = 0.0f64;
    let mut max_flip = 0.0f64;
    let mut max_ref = 0.0f64;
    for y in PROBES {
        for u in U_PROBES {
            let mut lhs: Value = vec![Complex64::new(0.0, 0.0); nb];
            let mut gvals: Vec<Value> = vec![vec![Complex64::new(0.0, 0.0); nb]; kernels.len()];
            for it in 0..n {
                let th = (it as f64 + 0.5) * dth;
                for ip in 0..n {
                    let ph = (ip as f64 + 0.5) * dph;
                    let xi = [th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()];
                    let w_dir = th.sin() * dth * dph;
                    // Exit distance from y along ξ out of the unit ball.
                    let yd = y[0] * xi[0] + y[1] * xi[1] + y[2] * xi[2];
                    let yy = y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
                    let rho_max = -yd + (yd * yd + 1.0 - yy).sqrt();
                    let dr = rho_max / n as f64;
                    // Radial moments of the derivatives of ψ along the ray.
                    let mut acc = vec![0.0; kernels.len()];
                    for ir in 0..n {
                        let rho = (ir as f64 + 0.5) * dr;
                        let x = [y[0] + rho * xi[0], y[1] + rho * xi[1], y[2] + rho * xi[2]];
                        if order == 1 {
                            let g = grad_psi(&x);
                            for i in 0..3 {
                                acc[i] += g[i] * dr;
                            }
                        } else {
                            let h = hess_psi(&x);
                            for a in 0..3 {
                                for b in 0..3 {
                                    acc[3 * a + b] += h[a][b] * rho * dr;
                                }
                            }
                        }
                    }
                    for (g, kern) in gvals.iter_mut().zip(&kernels) {
                        g.iter_mut().for_each(|c| *c = Complex64::new(0.0, 0.0));
                        kern.eval(&xi, &u, g);
                    }
                    for (g, a) in gvals.iter().zip(&acc) {
                        for b in 0..nb {
                            lhs[b] += g[b] * (a * w_dir);
                        }
                    }
                }
            }
            lhs.iter_mut().for_each(|c| *c *= scale);
            let mut reference: Value = vec![Complex64::new(0.0, 0.0); nb];
            qc.eval(&[1.0, 1.0, 1.0], &u, &mut reference);
            let p = psi(&y) * amplitude;
            reference.iter_mut().for_each(|c| *c *= p);
            let neg: Value = lhs.iter().map(|c| -c).collect();
            max_err = max_err.max(distance(&lhs, &reference));
            max_flip = max_flip.max(distance(&neg, &reference));
            max_ref = max_ref.max(norm(&reference));
        }
    }
    let rel = |e: f64| if max_ref == 0.0 { e } else { e / max_ref };
    Ok(DeltaOutcome { resolution, relative_error: rel(max_err), flipped_error: rel(max_flip) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_function_gives_zero() {
        let r = numeric_delta_check(3, 1, 1, 4, 0.0).unwrap();
        assert_eq!(r.relative_error, 0.0);
    }

    #[test]
    fn bump_derivatives_agree_with_differences() {
        let x = [0.1, -0.2, 0.3];
        let h = 1e-6;
        let g = grad_psi(&x);
        let hs = hess_psi(&x);
        for i in 0..3 {
            let mut xp = x;
            let mut xm = x;
            xp[i] += h;
            xm[i] -= h;
            assert!(((psi(&xp) - psi(&xm)) / (2.0 * h) - g[i]).abs() < 1e-6);
            let (gp, gm) = (grad_psi(&xp), grad_psi(&xm));
            for j in 0..3 {
                assert!(((gp[j] - gm[j]) / (2.0 * h) - hs[i][j]).abs() < 1e-5);
            }
        }
    }
}
