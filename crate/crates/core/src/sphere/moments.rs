//! Radial moments of cutoff monomials.
//!
//! Both cutoff models share one profile: `G(u) = I_u(K+1, K+1)`, the
//! regularised incomplete beta function, which rises from 0 at `u = 0` to 1
//! at `u = 1` and is `C^K` at both ends. The spline model places it on
//! `[inner, 1]`. The sharp model is the finite part of the family
//! `h_ε(r) = G(1 + (r−1)/ε)` as `ε → 0`, which turns every moment of a
//! monomial of derivative weight `w ≥ 1` into
//! `binom(s, w−1) · ∫₀¹ Ψ(u) (u−1)^{w−1} du`.

use crate::scalar::{binom_c, factorial, rat_to_f64, CRational};
use crate::symalg::cutoff::{is_pos, CutMono, RadialCutoff};
use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Smoothness of the profile; factors `h^{(k)}` with `k ≤ K+1` are allowed.
pub const PROFILE_SMOOTHNESS: u32 = 12;

/// Working precision (bits) for non-exact spline moments.
const HP_BITS: usize = 1024;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MomentError {
    #[error("moment diverges at s = {0}")]
    PoleAtS(String),
    #[error("cutoff derivative of order {0} exceeds the profile smoothness")]
    DerivativeOrderTooHigh(u32),
}

/// Univariate polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct UPoly(pub Vec<BigRational>);

impl UPoly {
    fn trim(mut self) -> Self {
        while matches!(self.0.last(), Some(c) if c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn one() -> Self {
        UPoly(vec![BigRational::one()])
    }

    fn mul(&self, o: &UPoly) -> UPoly {
        if self.0.is_empty() || o.0.is_empty() {
            return UPoly(vec![]);
        }
        let mut c = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly(c).trim()
    }

    fn pow(&self, e: u32) -> UPoly {
        (0..e).fold(UPoly::one(), |acc, _| acc.mul(self))
    }

    pub(crate) fn derivative(&self) -> UPoly {
        UPoly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
        .trim()
    }

    fn integral_01(&self) -> BigRational {
        self.0
            .iter()
            .enumerate()
            .map(|(i, c)| c / BigRational::from_integer(BigInt::from(i + 1)))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// Substitute `u = a + b·r`.
    fn compose_affine(&self, a: &BigRational, b: &BigRational) -> UPoly {
        let lin = UPoly(vec![a.clone(), b.clone()]);
        let mut acc = UPoly(vec![]);
        for c in self.0.iter().rev() {
            acc = acc.mul(&lin);
            if acc.0.is_empty() {
                acc = UPoly(vec![c.clone()]);
            } else {
                acc.0[0] += c;
            }
        }
        acc.trim()
    }

    pub(crate) fn eval_f64(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * x + rat_to_f64(c))
    }
}

struct Profile {
    /// `G^{(k)}` in the variable `u`, `k = 0..=K+1`.
    derivs: Vec<UPoly>,
}

fn profile() -> &'static Profile {
    static P: OnceLock<Profile> = OnceLock::new();
    P.get_or_init(|| {
        let k = PROFILE_SMOOTHNESS;
        // G'(u) = u^K (1−u)^K / B(K+1, K+1)
        let beta_inv = BigRational::new(factorial(2 * k + 1), factorial(k) * factorial(k));
        let one_minus = UPoly(vec![BigRational::one(), -BigRational::one()]);
        let u = UPoly(vec![BigRational::zero(), BigRational::one()]);
        let dg = u.pow(k).mul(&one_minus.pow(k)).mul(&UPoly(vec![beta_inv]));
        let mut g = vec![BigRational::zero()];
        for (i, c) in dg.0.iter().enumerate() {
            g.push(c / BigRational::from_integer(BigInt::from(i + 1)));
        }
        let mut derivs = vec![UPoly(g).trim()];
        for _ in 0..=k {
            let next = derivs.last().unwrap().derivative();
            derivs.push(next);
        }
        Profile { derivs }
    })
}

/// `Ψ_m(u) = Π_k (G^{(k)}(u))^{e_k}`.
fn psi(m: &CutMono) -> Result<UPoly, MomentError> {
    let p = profile();
    let mut acc = UPoly::one();
    for (k, e) in &m.0 {
        if *k > PROFILE_SMOOTHNESS + 1 {
            return Err(MomentError::DerivativeOrderTooHigh(*k));
        }
        acc = acc.mul(&p.derivs[*k as usize].pow(*e));
    }
    Ok(acc)
}

/// Profile value `G^{(k)}(u)` for `u ∈ [0, 1]`, evaluated on the short side.
pub fn profile_value(k: u32, u: f64) -> f64 {
    let p = profile();
    if k as usize >= p.derivs.len() {
        return f64::NAN;
    }
    if u <= 0.5 {
        p.derivs[k as usize].eval_f64(u)
    } else if k == 0 {
        1.0 - p.derivs[0].eval_f64(1.0 - u)
    } else {
        // G' is symmetric about 1/2
        let s = if k % 2 == 1 { 1.0 } else { -1.0 };
        s * p.derivs[k as usize].eval_f64(1.0 - u)
    }
}

/// `∫₀¹ Ψ_m(u)(u−1)^{w−1} du`, memoised.
fn shell_constant(m: &CutMono) -> Result<BigRational, MomentError> {
    static CACHE: OnceLock<Mutex<HashMap<CutMono, BigRational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(m) {
        return Ok(v.clone());
    }
    let w = m.weight();
    let t = UPoly(vec![-BigRational::one(), BigRational::one()]).pow(w - 1);
    let v = psi(m)?.mul(&t).integral_01();
    cache.lock().unwrap().insert(m.clone(), v.clone());
    Ok(v)
}

/// In the sharp limit a shell monomial of weight `w` acts on smooth radial
/// functions as `f ↦ c·f^{(w−1)}(1)`; returns `c`.
pub fn shell_functional_weight(m: &CutMono) -> Result<BigRational, MomentError> {
    let w = m.weight();
    Ok(shell_constant(m)? / BigRational::from_integer(factorial(w - 1)))
}

/// High-precision complex value.
#[derive(Clone, Debug)]
pub struct HpComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl HpComplex {
    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(bf_to_f64(&self.re), bf_to_f64(&self.im))
    }

    /// Decimal rendering of the real and imaginary parts.
    pub fn to_decimal(&self) -> (String, String) {
        let mut cc = Consts::new().expect("constants cache");
        let mut f = |x: &BigFloat| x.format(Radix::Dec, RM, &mut cc).unwrap_or_else(|_| "nan".into());
        (f(&self.re), f(&self.im))
    }
}

const RM: RoundingMode = RoundingMode::ToEven;

fn bf_to_f64(x: &BigFloat) -> f64 {
    let mut cc = Consts::new().expect("constants cache");
    let s = x.format(Radix::Dec, RM, &mut cc).unwrap_or_else(|_| "nan".into());
    s.parse::<f64>().unwrap_or(f64::NAN)
}

fn bf_int(x: &BigInt, cc: &mut Consts) -> BigFloat {
    BigFloat::parse(&x.to_string(), Radix::Dec, HP_BITS, RM, cc)
}

fn bf_rat(q: &BigRational, cc: &mut Consts) -> BigFloat {
    bf_int(q.numer(), cc).div(&bf_int(q.denom(), cc), HP_BITS, RM)
}

/// Value of a moment: exact when it stays in the rationals.
#[derive(Clone, Debug)]
pub enum Moment {
    Exact(CRational),
    Numeric(HpComplex),
}

impl Moment {
    pub fn to_c64(&self) -> Complex64 {
        match self {
            Moment::Exact(q) => q.to_c64(),
            Moment::Numeric(h) => h.to_c64(),
        }
    }

    pub fn exact(&self) -> Option<&CRational> {
        match self {
            Moment::Exact(q) => Some(q),
            Moment::Numeric(_) => None,
        }
    }
}

/// `M(s) = ∫₀¹ h r^s dr` and `M′(s) = ∫₀¹ h′ r^s dr`.
#[derive(Clone, Debug)]
pub struct RadialMoments {
    pub m: Moment,
    pub m_prime: Moment,
}

pub fn radial_moment(c: &RadialCutoff, s: &CRational) -> Result<RadialMoments, MomentError> {
    match c {
        RadialCutoff::SharpShell => {
            Ok(RadialMoments { m: Moment::Exact(CRational::zero()), m_prime: Moment::Exact(CRational::one()) })
        }
        RadialCutoff::Spline { inner } => Ok(RadialMoments {
            m: spline_window(inner, &CutMono::h_pow(1), s)?,
            m_prime: spline_window(inner, &CutMono::deriv(1), s)?,
        }),
    }
}

/// Finite part of `∫₀^∞ m(r) r^s dr` for the given cutoff.
pub fn mono_moment(c: &RadialCutoff, m: &CutMono, s: &CRational) -> Result<Moment, MomentError> {
    match c {
        RadialCutoff::SharpShell => sharp_moment(m, s).map(Moment::Exact),
        RadialCutoff::Spline { inner } => {
            if m.is_one() {
                return Ok(Moment::Exact(CRational::zero()));
            }
            let window = spline_window(inner, m, s)?;
            if m.is_shell() {
                return Ok(window);
            }
            let tail = tail_part(s);
            Ok(match window {
                Moment::Exact(q) => Moment::Exact(&q + &tail),
                Moment::Numeric(h) => {
                    let mut cc = Consts::new().expect("constants cache");
                    Moment::Numeric(HpComplex {
                        re: h.re.add(&bf_rat(&tail.re, &mut cc), HP_BITS, RM),
                        im: h.im.add(&bf_rat(&tail.im, &mut cc), HP_BITS, RM),
                    })
                }
            })
        }
    }
}

/// Finite part of `∫₁^∞ r^s dr`.
fn tail_part(s: &CRational) -> CRational {
    let s1 = s + &CRational::one();
    if s1.is_zero() {
        CRational::zero()
    } else {
        -s1.recip()
    }
}

/// Sharp-shell moment of a monomial.
pub fn sharp_moment(m: &CutMono, s: &CRational) -> Result<CRational, MomentError> {
    match m.pure_power() {
        Some(0) => Ok(CRational::zero()),
        Some(_) => Ok(tail_part(s)),
        None => {
            let w = m.weight();
            let c = shell_constant(m)?;
            Ok(binom_c(s, w - 1).scale(&c))
        }
    }
}

/// `∫_{inner}^1 m(r) r^s dr` for the spline.
fn spline_window(inner: &BigRational, m: &CutMono, s: &CRational) -> Result<Moment, MomentError> {
    let eps = BigRational::one() - inner;
    let w = m.weight();
    // u = (r − inner)/ε, h^{(k)}(r) = ε^{−k} G^{(k)}(u)
    let scale = num_traits::pow::pow(eps.recip(), w as usize);
    let p = psi(m)?.compose_affine(&(-inner / &eps), &eps.recip()).mul(&UPoly(vec![scale]));
    if s.is_integer() {
        let s_int = s.to_integer().expect("integer exponent");
        let mut acc = BigRational::zero();
        let mut log_coeff = BigRational::zero();
        for (k, c) in p.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = k as i64 + s_int + 1;
            if e == 0 {
                log_coeff += c;
                continue;
            }
            if inner.is_zero() {
                if e < 0 {
                    return Err(MomentError::PoleAtS(s.to_string()));
                }
                acc += c / BigRational::from_integer(BigInt::from(e));
            } else {
                let ie = num_traits::pow::pow(inner.clone(), e.unsigned_abs() as usize);
                let ie = if e < 0 { ie.recip() } else { ie };
                acc += c * (BigRational::one() - ie) / BigRational::from_integer(BigInt::from(e));
            }
        }
        if log_coeff.is_zero() {
            return Ok(Moment::Exact(CRational::from_real(acc)));
        }
        if inner.is_zero() {
            return Err(MomentError::PoleAtS(s.to_string()));
        }
        // ∫ c r^{-1} = −c ln(inner)
        let mut cc = Consts::new().expect("constants cache");
        let ln_in = bf_rat(inner, &mut cc).ln(HP_BITS, RM, &mut cc);
        let re = bf_rat(&acc, &mut cc).sub(&bf_rat(&log_coeff, &mut cc).mul(&ln_in, HP_BITS, RM), HP_BITS, RM);
        return Ok(Moment::Numeric(HpComplex { re, im: BigFloat::from_i32(0, HP_BITS) }));
    }
    // non-integer exponent: Σ c_k (1 − inner^{e}) / e with complex e
    let mut cc = Consts::new().expect("constants cache");
    let mut re = BigFloat::from_i32(0, HP_BITS);
    let mut im = BigFloat::from_i32(0, HP_BITS);
    let ln_in = if inner.is_zero() { None } else { Some(bf_rat(inner, &mut cc).ln(HP_BITS, RM, &mut cc)) };
    for (k, c) in p.0.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = s + &CRational::from_int(k as i64 + 1);
        let (er, ei) = (bf_rat(&e.re, &mut cc), bf_rat(&e.im, &mut cc));
        // numerator 1 − inner^e
        let (nr, ni) = match &ln_in {
            None => {
                if !is_pos(&e.re) {
                    return Err(MomentError::PoleAtS(s.to_string()));
                }
                (BigFloat::from_i32(1, HP_BITS), BigFloat::from_i32(0, HP_BITS))
            }
            Some(l) => {
                let mag = er.mul(l, HP_BITS, RM).exp(HP_BITS, RM, &mut cc);
                let ang = ei.mul(l, HP_BITS, RM);
                let pr = mag.mul(&ang.cos(HP_BITS, RM, &mut cc), HP_BITS, RM);
                let pi = mag.mul(&ang.sin(HP_BITS, RM, &mut cc), HP_BITS, RM);
                (BigFloat::from_i32(1, HP_BITS).sub(&pr, HP_BITS, RM), pi.neg())
            }
        };
        // divide by e
        let den = er.mul(&er, HP_BITS, RM).add(&ei.mul(&ei, HP_BITS, RM), HP_BITS, RM);
        let qr = nr.mul(&er, HP_BITS, RM).add(&ni.mul(&ei, HP_BITS, RM), HP_BITS, RM).div(&den, HP_BITS, RM);
        let qi = ni.mul(&er, HP_BITS, RM).sub(&nr.mul(&ei, HP_BITS, RM), HP_BITS, RM).div(&den, HP_BITS, RM);
        let cf = bf_rat(c, &mut cc);
        re = re.add(&cf.mul(&qr, HP_BITS, RM), HP_BITS, RM);
        im = im.add(&cf.mul(&qi, HP_BITS, RM), HP_BITS, RM);
    }
    Ok(Moment::Numeric(HpComplex { re, im }))
}

/// Spline profile value `h^{(k)}(r)`.
pub fn spline_value(inner: &BigRational, k: u32, r: f64) -> f64 {
    let r0 = rat_to_f64(inner);
    let eps = 1.0 - r0;
    if r <= r0 {
        return 0.0;
    }
    if r >= 1.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    profile_value(k, (r - r0) / eps) / eps.powi(k as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sharp_first_derivative_moment_is_one() {
        let s = CRational::ratio(7, 3);
        assert_eq!(sharp_moment(&CutMono::deriv(1), &s).unwrap(), CRational::one());
        // h'' is a derivative of a delta: −s
        assert_eq!(sharp_moment(&CutMono::deriv(2), &s).unwrap(), -s.clone());
        // h^a h' integrates to 1/(a+1)
        let m = CutMono::h_pow(2).mul(&CutMono::deriv(1));
        assert_eq!(sharp_moment(&m, &s).unwrap(), CRational::ratio(1, 3));
    }

    #[test]
    fn profile_endpoints() {
        assert!((profile_value(0, 0.0)).abs() < 1e-15);
        assert!((profile_value(0, 1.0) - 1.0).abs() < 1e-15);
        assert!((profile_value(0, 0.5) - 0.5).abs() < 1e-14);
    }
}
