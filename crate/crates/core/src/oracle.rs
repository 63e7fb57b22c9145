//! Floating-point cross-checks that share no integration code with the exact
//! paths: product Gauss rules on the sphere, finite parts by fitting the
//! large-`R` model of the ball integral, and numeric application of `Op(p)`
//! to Gaussian test functions.

use crate::opcalc::{CoefficientFunction, TensorSymbol};
use crate::poly::{MultiIndex, Poly};
use crate::scalar::CRational;
use crate::sphere::moments::{profile_value, spline_value, MomentError};
use crate::symalg::{ClassicalSymbol, CutMono, HomogeneousComponent, RadialCutoff, SymbolError};
use gauss_quad::{FiniteAboveNegOneF64, GaussJacobi, GaussLegendre};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::collections::HashMap;
use std::num::NonZeroUsize;
use std::sync::{Arc, Mutex, OnceLock};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("fit is ill-conditioned (condition number {0:e})")]
    IllConditionedFit(f64),
    #[error("schedule has {got} radii, the model needs at least {needed}")]
    ScheduleTooShort { needed: usize, got: usize },
    #[error("accuracy not reached: {0}")]
    AccuracyNotReached(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Moment(#[from] MomentError),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
}

/// Neumaier-compensated complex sum.
#[derive(Clone, Copy, Debug, Default)]
struct CSum {
    s: Complex64,
    c: Complex64,
}

impl CSum {
    fn add(&mut self, v: Complex64) {
        let two = |s: f64, c: &mut f64, v: f64| -> f64 {
            let t = s + v;
            if s.abs() >= v.abs() {
                *c += (s - t) + v;
            } else {
                *c += (v - t) + s;
            }
            t
        };
        self.s.re = two(self.s.re, &mut self.c.re, v.re);
        self.s.im = two(self.s.im, &mut self.c.im, v.im);
    }

    fn value(&self) -> Complex64 {
        self.s + self.c
    }
}

/// Polynomial with floating-point coefficients for fast evaluation.
#[derive(Clone, Debug)]
struct FastPoly {
    terms: Vec<(Vec<u32>, Complex64)>,
}

impl FastPoly {
    fn new(p: &Poly) -> Self {
        FastPoly { terms: p.terms().map(|(a, c)| (a.0.clone(), c.to_c64())).collect() }
    }

    fn eval(&self, x: &[f64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, c) in &self.terms {
            let mut m = 1.0;
            for (xi, &e) in x.iter().zip(a) {
                if e > 0 {
                    m *= xi.powi(e as i32);
                }
            }
            acc += c * m;
        }
        acc
    }
}

/// Restriction of a component to the sphere as a polynomial.
fn sphere_poly(c: &HomogeneousComponent) -> Poly {
    let mut p = Poly::zero(c.dim());
    for h in c.harmonics().values() {
        p.add_assign(h);
    }
    p
}

type Rule = Arc<Vec<(Vec<f64>, f64)>>;

fn jacobi(points: usize, a: f64) -> Vec<(f64, f64)> {
    let np = NonZeroUsize::new(points.max(1)).expect("non-zero");
    let al = FiniteAboveNegOneF64::new(a).expect("exponent above -1");
    GaussJacobi::new(np, al, al).as_node_weight_pairs().to_vec()
}

fn legendre(points: usize) -> Vec<(f64, f64)> {
    GaussLegendre::new(NonZeroUsize::new(points.max(1)).expect("non-zero")).as_node_weight_pairs().to_vec()
}

/// Product rule on `S^{n−1}` exact for polynomials of degree `≤ deg`.
pub fn sphere_rule(n: usize, deg: usize) -> Rule {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Rule>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = cache.lock().unwrap().get(&(n, deg)) {
        return r.clone();
    }
    let rule = Arc::new(build_rule(n, deg));
    cache.lock().unwrap().insert((n, deg), rule.clone());
    rule
}

fn build_rule(n: usize, deg: usize) -> Vec<(Vec<f64>, f64)> {
    assert!(n >= 2);
    if n == 2 {
        let m = deg + 2;
        let w = 2.0 * std::f64::consts::PI / m as f64;
        return (0..m)
            .map(|j| {
                let phi = w * j as f64;
                (vec![phi.cos(), phi.sin()], w)
            })
            .collect();
    }
    // ω = (t, √(1−t²) ω′), dμ = (1−t²)^{(n−3)/2} dt dμ′
    let sub = build_rule(n - 1, deg);
    let nodes = jacobi(deg / 2 + 2, (n as f64 - 3.0) / 2.0);
    let mut out = Vec::with_capacity(nodes.len() * sub.len());
    for (t, v) in nodes {
        let s = (1.0 - t * t).max(0.0).sqrt();
        for (p, w) in &sub {
            let mut x = Vec::with_capacity(n);
            x.push(t);
            x.extend(p.iter().map(|c| c * s));
            out.push((x, v * w));
        }
    }
    out
}

fn integrate_on_sphere(n: usize, deg: usize, f: impl Fn(&[f64]) -> Complex64) -> Complex64 {
    let rule = sphere_rule(n, deg);
    let mut acc = CSum::default();
    for (x, w) in rule.iter() {
        acc.add(f(x) * *w);
    }
    acc.value()
}

/// Numeric `∫_{S^{n−1}} c dμ` for `n ≤ 6`.
pub fn sphere_quadrature(c: &HomogeneousComponent) -> Result<Complex64, OracleError> {
    let n = c.dim();
    if n > 6 {
        return Err(OracleError::Unsupported(format!("sphere quadrature in dimension {}", n)));
    }
    let deg = c.max_harmonic() as usize;
    let p = FastPoly::new(&sphere_poly(c));
    Ok(integrate_on_sphere(n, deg.max(1), |x| p.eval(x)))
}

/// Numeric sphere integral of the monomial `ω^α`.
pub fn monomial_quadrature(alpha: &MultiIndex) -> Result<Complex64, OracleError> {
    let n = alpha.dim();
    let p = Poly::monomial(n, alpha.clone(), CRational::one());
    sphere_quadrature(&HomogeneousComponent::from_poly(&p, &CRational::from_int(-(alpha.order() as i64))))
}

/// Radii for the finite-part fit.
#[derive(Clone, Debug, PartialEq)]
pub struct Schedule {
    pub radii: Vec<f64>,
}

impl Schedule {
    pub fn geometric(r0: f64, ratio: f64, count: usize) -> Self {
        Schedule { radii: (0..count).map(|k| r0 * ratio.powi(k as i32)).collect() }
    }

    /// Chebyshev-spaced radii on `[lo, hi]`.
    pub fn chebyshev(lo: f64, hi: f64, count: usize) -> Self {
        let mut radii: Vec<f64> = (0..count)
            .map(|k| {
                let t = ((2 * k + 1) as f64 * std::f64::consts::PI / (2 * count) as f64).cos();
                0.5 * (lo + hi) + 0.5 * (hi - lo) * t
            })
            .collect();
        radii.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Schedule { radii }
    }

    /// Default for a symbol: short range when the ball integral grows,
    /// long range when every power decays.
    pub fn default_for(s: &ClassicalSymbol) -> Self {
        let model = fit_exponents(s);
        let count = model.len() + 6;
        let grows = model.iter().any(|e| e.re_f64() > 0.0);
        if grows {
            Schedule::chebyshev(6.0, 14.0, count)
        } else {
            Schedule::geometric(6.0, 1.5, count)
        }
    }
}

/// Outcome of the model fit of `I(R) = ∫_{B(0,R)} s`.
#[derive(Clone, Debug)]
pub struct FinitePartFit {
    pub radii: Vec<f64>,
    pub exponents: Vec<CRational>,
    pub power_coefficients: Vec<Complex64>,
    pub constant: Complex64,
    pub log_coefficient: Complex64,
    pub residual_max: f64,
    pub condition: f64,
}

/// Distinct non-zero exponents `e = d + n` of the growing or decaying terms.
fn fit_exponents(s: &ClassicalSymbol) -> Vec<CRational> {
    let n = CRational::from_int(s.dim() as i64);
    let mut v: Vec<CRational> = Vec::new();
    for ((m, d), _) in s.parts() {
        if m.is_shell() {
            continue;
        }
        let e = d + &n;
        if !e.is_zero() && !v.contains(&e) {
            v.push(e);
        }
    }
    v.sort();
    v
}

fn has_log(s: &ClassicalSymbol) -> bool {
    let n = CRational::from_int(s.dim() as i64);
    s.parts().keys().any(|(m, d)| !m.is_shell() && (d + &n).is_zero())
}

fn cpow(r: f64, e: &CRational) -> Complex64 {
    let l = r.ln();
    Complex64::from_polar(1.0, e.to_c64().im * l) * (e.to_c64().re * l).exp()
}

/// Sharp-limit weight of a shell monomial computed by Gauss–Legendre on the
/// profile (no exact polynomial integration).
fn shell_weight_numeric(m: &CutMono) -> f64 {
    let w = m.weight();
    let nodes = legendre(120);
    let mut acc = 0.0;
    for (t, wt) in nodes {
        let u = 0.5 * (t + 1.0);
        let mut psi = 1.0;
        for (k, e) in &m.0 {
            psi *= profile_value(*k, u).powi(*e as i32);
        }
        acc += 0.5 * wt * psi * (u - 1.0).powi(w as i32 - 1);
    }
    let fact: f64 = (1..w).map(|k| k as f64).product();
    acc / fact
}

fn spline_mono(inner: &num_rational::BigRational, m: &CutMono, r: f64) -> f64 {
    m.0.iter().map(|(k, e)| spline_value(inner, *k, r).powi(*e as i32)).product()
}

/// `∫_a^b f` by composite Gauss–Legendre.
fn gl_panels(a: f64, b: f64, panels: usize, pts: usize, f: impl Fn(f64) -> Complex64) -> Complex64 {
    let nodes = legendre(pts);
    let h = (b - a) / panels as f64;
    let mut acc = CSum::default();
    for p in 0..panels {
        let lo = a + h * p as f64;
        for (t, w) in &nodes {
            let r = lo + 0.5 * h * (t + 1.0);
            acc.add(f(r) * (0.5 * h * w));
        }
    }
    acc.value()
}

/// Numeric `∫_{B(0,R)} s dξ` for each radius of the schedule.
pub fn ball_integrals(s: &ClassicalSymbol, radii: &[f64]) -> Result<Vec<Complex64>, OracleError> {
    let n = s.dim();
    let nq = CRational::from_int(n as i64);
    let mut out = vec![Complex64::new(0.0, 0.0); radii.len()];
    for ((m, d), g) in s.parts() {
        let a = sphere_quadrature(g)?;
        let e = d + &nq;
        let ec = e.to_c64();
        // ∫ m(r) r^{e−1} dr over [0, R]
        let radial: Vec<Complex64> = match s.cutoff() {
            RadialCutoff::SharpShell => {
                if m.is_shell() {
                    // f(r) = r^{e−1}, f^{(w−1)}(1) = Π_{k<w−1} (e−1−k)
                    let w = m.weight();
                    let mut ff = Complex64::new(1.0, 0.0);
                    for k in 0..(w - 1) {
                        ff *= ec - 1.0 - k as f64;
                    }
                    let v = ff * shell_weight_numeric(m);
                    vec![v; radii.len()]
                } else if m.is_one() {
                    radii.iter().map(|&r| cpow(r, &e) / ec).collect()
                } else if e.is_zero() {
                    radii.iter().map(|&r| Complex64::new(r.ln(), 0.0)).collect()
                } else {
                    radii.iter().map(|&r| (cpow(r, &e) - 1.0) / ec).collect()
                }
            }
            RadialCutoff::Spline { inner } => {
                let lo = num_traits::ToPrimitive::to_f64(inner).unwrap_or(0.0);
                if m.is_one() {
                    radii.iter().map(|&r| cpow(r, &e) / ec).collect()
                } else {
                    let em1 = &e - &CRational::one();
                    let window = gl_panels(lo, 1.0, 8, 60, |r| cpow(r, &em1) * spline_mono(inner, m, r));
                    let tail = |r: f64| -> Complex64 {
                        if m.is_shell() {
                            Complex64::new(0.0, 0.0)
                        } else if e.is_zero() {
                            Complex64::new(r.ln(), 0.0)
                        } else {
                            (cpow(r, &e) - 1.0) / ec
                        }
                    };
                    radii.iter().map(|&r| window + tail(r)).collect()
                }
            }
        };
        for (o, v) in out.iter_mut().zip(radial) {
            *o += a * v;
        }
    }
    let gp = s.gaussian_poly();
    if !gp.is_zero() {
        for (k, part) in gp.homogeneous_parts() {
            let comp = HomogeneousComponent::from_poly(&part, &CRational::from_int(k as i64));
            let a = sphere_quadrature(&comp)?;
            for (o, &r) in out.iter_mut().zip(radii) {
                let top = r.min(12.0);
                let pw = (n - 1) as i32 + k as i32;
                let rad = gl_panels(0.0, top, 6, 40, |t| Complex64::new(t.powi(pw) * (-t * t).exp(), 0.0));
                *o += a * rad;
            }
        }
    }
    Ok(out)
}

/// Finite part and log coefficient of `∫_{B(0,R)} s` by least squares on the
/// model `c₀ + Σ c_k R^{e_k} + c_L log R` with exponents read off the symbol.
pub fn numeric_finite_part(s: &ClassicalSymbol, schedule: &Schedule) -> Result<FinitePartFit, OracleError> {
    let exps = fit_exponents(s);
    let log = has_log(s);
    let cols = 1 + exps.len() + usize::from(log);
    let radii = schedule.radii.clone();
    if radii.len() < cols + 2 {
        return Err(OracleError::ScheduleTooShort { needed: cols + 2, got: radii.len() });
    }
    let values = ball_integrals(s, &radii)?;
    let rows = radii.len();
    let mut a = DMatrix::<Complex64>::zeros(rows, cols);
    for (i, &r) in radii.iter().enumerate() {
        a[(i, 0)] = Complex64::new(1.0, 0.0);
        for (k, e) in exps.iter().enumerate() {
            a[(i, 1 + k)] = cpow(r, e);
        }
        if log {
            a[(i, cols - 1)] = Complex64::new(r.ln(), 0.0);
        }
    }
    let mut scale = vec![1.0; cols];
    for j in 0..cols {
        let m = (0..rows).map(|i| a[(i, j)].norm()).fold(0.0, f64::max);
        if m > 0.0 {
            scale[j] = m;
            for i in 0..rows {
                a[(i, j)] /= m;
            }
        }
    }
    let b = DMatrix::<Complex64>::from_iterator(rows, 1, values.iter().copied());
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if !(condition < 1e12) {
        return Err(OracleError::IllConditionedFit(condition));
    }
    let x = svd.solve(&b, 0.0).map_err(|e| OracleError::AccuracyNotReached(e.to_string()))?;
    let resid = &a * &x - &b;
    let residual_max = resid.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let coef: Vec<Complex64> = (0..cols).map(|j| x[(j, 0)] / scale[j]).collect();
    let log_coefficient = if log { coef[cols - 1] } else { Complex64::new(0.0, 0.0) };
    Ok(FinitePartFit {
        radii,
        exponents: exps.clone(),
        power_coefficients: coef[1..1 + exps.len()].to_vec(),
        constant: coef[0],
        log_coefficient,
        residual_max,
        condition,
    })
}

/// Test function `u(y) = P(y) e^{−|y|²}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianTest {
    pub p: Poly,
}

impl GaussianTest {
    pub fn new(p: Poly) -> Self {
        GaussianTest { p }
    }

    pub fn value(&self, y: &[f64]) -> Complex64 {
        let r2: f64 = y.iter().map(|v| v * v).sum();
        self.p.eval(y) * (-r2).exp()
    }

    /// `∂_{y_i} u` as a test function.
    pub fn partial(&self, i: usize) -> GaussianTest {
        GaussianTest { p: self.p.partial(i).sub(&self.p.mul_var(i).scale(&CRational::from_int(2))) }
    }

    /// `Q` with `û(ξ) = π^{n/2} Q(ξ) e^{−|ξ|²/4}`, `û(ξ) = ∫ e^{−iyξ} u(y) dy`.
    pub fn fourier_poly(&self) -> Poly {
        let n = self.p.dim();
        let mut out = Poly::zero(n);
        let half = CRational::ratio(1, 2);
        for (beta, c) in self.p.terms() {
            // (y^β u)^ = (i∂_ξ)^β û, with i∂_j(Q e^{−|ξ|²/4}) = i(∂_jQ − ξ_jQ/2) e^{…}
            let mut q = Poly::constant(n, CRational::one());
            for (j, &b) in beta.0.iter().enumerate() {
                for _ in 0..b {
                    q = q.partial(j).sub(&q.mul_var(j).scale(&half)).scale(&CRational::i());
                }
            }
            out.add_assign(&q.scale(c));
        }
        out
    }
}

/// Radial and angular resolution of one evaluation of `Op(p)u(x)`.
#[derive(Clone, Copy)]
struct Resolution {
    sphere_deg: usize,
    panels: usize,
    pts: usize,
}

const R_MAX: f64 = 20.0;

/// `(2π)^{−n} ∫ e^{ixξ} s(ξ) û(ξ) dξ` at one resolution.
fn apply_symbol(
    s: &ClassicalSymbol,
    q: &FastPoly,
    x: &[f64],
    res: Resolution,
) -> Result<Complex64, OracleError> {
    let n = s.dim();
    let pi_half_n = std::f64::consts::PI.powf(n as f64 / 2.0);
    let norm = pi_half_n / (2.0 * std::f64::consts::PI).powi(n as i32);
    let rule = sphere_rule(n, res.sphere_deg);
    let i = Complex64::new(0.0, 1.0);
    // F_g(r) = ∫_S g(ω) Q(rω) e^{−r²/4} e^{i r x·ω} dω
    let angular = |g: &FastPoly, r: f64| -> Complex64 {
        let mut acc = CSum::default();
        let mut pt = vec![0.0; n];
        for (w_pt, w) in rule.iter() {
            let mut dot = 0.0;
            for k in 0..n {
                pt[k] = r * w_pt[k];
                dot += x[k] * w_pt[k];
            }
            acc.add(g.eval(w_pt) * q.eval(&pt) * (i * (r * dot)).exp() * *w);
        }
        acc.value() * (-r * r / 4.0).exp()
    };
    let mut total = Complex64::new(0.0, 0.0);
    for ((m, d), g) in s.parts() {
        let gp = FastPoly::new(&sphere_poly(g));
        // radial weight r^{n−1} r^d
        let e1 = d + &CRational::from_int(n as i64 - 1);
        let radial = |r: f64| cpow(r, &e1) * angular(&gp, r);
        let contrib = match s.cutoff() {
            RadialCutoff::SharpShell => {
                if m.is_shell() {
                    let w = m.weight();
                    let c = shell_weight_numeric(m);
                    let h = 1e-2;
                    let f = |t: f64| radial(1.0 + t);
                    let der = match w - 1 {
                        0 => f(0.0),
                        1 => (f(-2.0 * h) - f(2.0 * h) * 1.0 + (f(h) - f(-h)) * 8.0) / (12.0 * h),
                        2 => {
                            (-f(2.0 * h) + f(h) * 16.0 - f(0.0) * 30.0 + f(-h) * 16.0 - f(-2.0 * h)) / (12.0 * h * h)
                        }
                        k => {
                            return Err(OracleError::Unsupported(format!(
                                "shell term of derivative order {} in numeric application",
                                k
                            )))
                        }
                    };
                    der * c
                } else if m.is_one() {
                    gl_panels(0.0, R_MAX, res.panels, res.pts, radial)
                } else {
                    gl_panels(1.0, R_MAX, res.panels, res.pts, radial)
                }
            }
            RadialCutoff::Spline { inner } => {
                let lo = num_traits::ToPrimitive::to_f64(inner).unwrap_or(0.0);
                if m.is_one() {
                    gl_panels(0.0, R_MAX, res.panels, res.pts, radial)
                } else {
                    let win = gl_panels(lo, 1.0, 4, res.pts, |r| radial(r) * spline_mono(inner, m, r));
                    if m.is_shell() {
                        win
                    } else {
                        win + gl_panels(1.0, R_MAX, res.panels, res.pts, radial)
                    }
                }
            }
        };
        total += contrib;
    }
    let gpoly = s.gaussian_poly();
    if !gpoly.is_zero() {
        let gp = FastPoly::new(gpoly);
        let nn = n as i32 - 1;
        let val = gl_panels(0.0, R_MAX.min(12.0), res.panels, res.pts, |r| {
            // P(rω) e^{−r²} depends on r through the polynomial; evaluate at rω
            let mut acc = CSum::default();
            let mut pt = vec![0.0; n];
            for (w_pt, w) in rule.iter() {
                let mut dot = 0.0;
                for k in 0..n {
                    pt[k] = r * w_pt[k];
                    dot += x[k] * w_pt[k];
                }
                acc.add(gp.eval(&pt) * q.eval(&pt) * (i * (r * dot)).exp() * *w);
            }
            acc.value() * (-r * r * 1.25).exp() * r.powi(nn)
        });
        total += val;
    }
    Ok(total * norm)
}

/// Numeric `(Op(p)u)(x)`, with `Op(p)u(x) = (2π)^{−n}∫ e^{ixξ} p(x,ξ) û(ξ) dξ`.
/// The result is accepted when two resolutions agree to `tol`.
pub fn apply_op_numeric(p: &TensorSymbol, u: &GaussianTest, x: &[f64], tol: f64) -> Result<Complex64, OracleError> {
    let n = p.dim();
    if x.len() != n || u.p.dim() != n {
        return Err(SymbolError::DimensionMismatch { expected: n, found: x.len() }.into());
    }
    let q = FastPoly::new(&u.fourier_poly());
    let coarse = Resolution { sphere_deg: 36, panels: 6, pts: 30 };
    let fine = Resolution { sphere_deg: 52, panels: 10, pts: 40 };
    let mut a = Complex64::new(0.0, 0.0);
    let mut b = Complex64::new(0.0, 0.0);
    for ((g, k), s) in p.terms() {
        let f = CoefficientFunction::monomial(g.clone(), *k, CRational::one()).eval(x);
        if f == Complex64::new(0.0, 0.0) {
            continue;
        }
        a += f * apply_symbol(s, &q, x, coarse)?;
        b += f * apply_symbol(s, &q, x, fine)?;
    }
    let err = (a - b).norm();
    if err > tol {
        return Err(OracleError::AccuracyNotReached(format!("resolution change moved the value by {:e}", err)));
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::monomial_sphere_integral;

    #[test]
    fn quadrature_examples() {
        let one = HomogeneousComponent::radial(3, CRational::one(), CRational::zero());
        let v = sphere_quadrature(&one).unwrap();
        assert!((v.re - 4.0 * std::f64::consts::PI).abs() < 1e-10);
        let v = monomial_quadrature(&MultiIndex(vec![2, 0, 0])).unwrap();
        assert!((v.re - 4.0 * std::f64::consts::PI / 3.0).abs() < 1e-10);
        let v = monomial_quadrature(&MultiIndex(vec![1, 0, 0])).unwrap();
        assert!(v.norm() < 1e-10);
        for n in 2..=6 {
            for a in MultiIndex::all_up_to(n, 0, 6).into_iter().take(60) {
                let exact = monomial_sphere_integral(&a).to_c64().re;
                let num = monomial_quadrature(&a).unwrap().re;
                assert!((exact - num).abs() <= 1e-10 * exact.abs().max(1.0), "{:?} {} {}", a, exact, num);
            }
        }
    }

    #[test]
    fn fourier_of_test_functions() {
        let u = GaussianTest::new(Poly::constant(3, CRational::one()));
        let id = TensorSymbol::constant(
            &ClassicalSymbol::polynomial(&Poly::constant(3, CRational::one()), RadialCutoff::SharpShell).unwrap(),
        );
        let x = [0.3, -0.2, 0.1];
        let v = apply_op_numeric(&id, &u, &x, 1e-10).unwrap();
        assert!((v - u.value(&x)).norm() < 1e-10);
        let xi1 = TensorSymbol::constant(
            &ClassicalSymbol::polynomial(&Poly::var(3, 0), RadialCutoff::SharpShell).unwrap(),
        );
        let v = apply_op_numeric(&xi1, &u, &x, 1e-10).unwrap();
        let expect = Complex64::new(0.0, -1.0) * u.partial(0).value(&x);
        assert!((v - expect).norm() < 1e-10);
    }
}
