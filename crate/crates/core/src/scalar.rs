//! Exact scalars: complex rationals and the π-ring built on them.
//!
//! `ExactScalar` holds finite sums `q · π^(k/2) · √r` with `q` complex
//! rational, `k` any integer and `r` a squarefree positive integer. All exact
//! integrals produced by the crate land in this ring.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::OnceLock;

/// Complex number with rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct CRational {
    pub re: BigRational,
    pub im: BigRational,
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

impl CRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        CRational { re, im }
    }

    pub fn zero() -> Self {
        CRational::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        CRational::from_int(1)
    }

    pub fn i() -> Self {
        CRational::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        CRational::new(rat(n, 1), BigRational::zero())
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        CRational::new(rat(p, q), BigRational::zero())
    }

    pub fn from_real(re: BigRational) -> Self {
        CRational::new(re, BigRational::zero())
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

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<i64> {
        if self.im.is_zero() && self.re.is_integer() {
            self.re.to_integer().to_i64()
        } else {
            None
        }
    }

    pub fn is_integer(&self) -> bool {
        self.im.is_zero() && self.re.is_integer()
    }

    /// True if the value is a non-negative integer no larger than `u32::MAX`.
    pub fn to_natural(&self) -> Option<u32> {
        self.to_integer().and_then(|k| u32::try_from(k).ok())
    }

    pub fn conj(&self) -> Self {
        CRational::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        assert!(!d.is_zero(), "reciprocal of zero");
        CRational::new(&self.re / &d, -(&self.im / &d))
    }

    pub fn checked_div(&self, other: &CRational) -> Option<CRational> {
        if other.is_zero() {
            None
        } else {
            Some(self * &other.recip())
        }
    }

    pub fn powi(&self, k: i32) -> Self {
        if k < 0 {
            return self.recip().powi(-k);
        }
        let mut acc = CRational::one();
        let mut base = self.clone();
        let mut e = k as u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CRational::new(&self.re * q, &self.im * q)
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    /// Real part as f64.
    pub fn re_f64(&self) -> f64 {
        rat_to_f64(&self.re)
    }
}

pub fn rat_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // very large numerators and denominators: scale through a shift
        let n = q.numer().bits() as i64;
        let d = q.denom().bits() as i64;
        let shift = (n - d - 60).max(0) as usize;
        let num = q.numer() >> shift;
        num.to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
    })
}

fn fmt_rat(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for CRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", fmt_rat(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{} i", fmt_rat(&self.im))
        } else if self.im.is_negative() {
            write!(f, "{}-{} i", fmt_rat(&self.re), fmt_rat(&-self.im.clone()))
        } else {
            write!(f, "{}+{} i", fmt_rat(&self.re), fmt_rat(&self.im))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse `{0}` as a complex rational")]
pub struct ParseScalarError(pub String);

fn parse_rat(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).ok()?;
        let q = BigInt::from_str(q.trim()).ok()?;
        if q.is_zero() {
            return None;
        }
        Some(BigRational::new(p, q))
    } else {
        Some(BigRational::from_integer(BigInt::from_str(s).ok()?))
    }
}

impl FromStr for CRational {
    type Err = ParseScalarError;

    /// Accepts `p/q`, `r/s i` and `p/q+r/s i` (also with `-`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseScalarError(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(body) = t.strip_suffix('i') {
            // find the split between real and imaginary part
            let bytes = body.as_bytes();
            let mut split = None;
            for k in (1..bytes.len()).rev() {
                if (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'/' {
                    split = Some(k);
                    break;
                }
            }
            let (re, im) = match split {
                Some(k) => (parse_rat(&body[..k]).ok_or_else(err)?, &body[k..]),
                None => (BigRational::zero(), body),
            };
            let im = match im {
                "" | "+" => BigRational::one(),
                "-" => -BigRational::one(),
                other => parse_rat(other.strip_prefix('+').unwrap_or(other)).ok_or_else(err)?,
            };
            Ok(CRational::new(re, im))
        } else {
            Ok(CRational::from_real(parse_rat(&t).ok_or_else(err)?))
        }
    }
}

macro_rules! crat_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a CRational> for &'a CRational {
            type Output = CRational;
            fn $m(self, o: &'a CRational) -> CRational {
                let f: fn(&CRational, &CRational) -> CRational = $body;
                f(self, o)
            }
        }
        impl $tr<CRational> for CRational {
            type Output = CRational;
            fn $m(self, o: CRational) -> CRational {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a CRational> for CRational {
            type Output = CRational;
            fn $m(self, o: &'a CRational) -> CRational {
                (&self).$m(o)
            }
        }
    };
}

crat_binop!(Add, add, |a, b| CRational::new(&a.re + &b.re, &a.im + &b.im));
crat_binop!(Sub, sub, |a, b| CRational::new(&a.re - &b.re, &a.im - &b.im));
crat_binop!(Mul, mul, |a, b| CRational::new(
    &a.re * &b.re - &a.im * &b.im,
    &a.re * &b.im + &a.im * &b.re
));
crat_binop!(Div, div, |a, b| a * &b.recip());

impl Neg for CRational {
    type Output = CRational;
    fn neg(self) -> CRational {
        CRational::new(-self.re, -self.im)
    }
}

impl Neg for &CRational {
    type Output = CRational;
    fn neg(self) -> CRational {
        CRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl AddAssign<&CRational> for CRational {
    fn add_assign(&mut self, o: &CRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&CRational> for CRational {
    fn sub_assign(&mut self, o: &CRational) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&CRational> for CRational {
    fn mul_assign(&mut self, o: &CRational) {
        *self = &*self * o;
    }
}

impl From<i64> for CRational {
    fn from(n: i64) -> Self {
        CRational::from_int(n)
    }
}

/// Basis element `π^(pi_half/2) · √rad` of the scalar ring.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ScalarKey {
    pub pi_half: i32,
    pub rad: u64,
}

impl ScalarKey {
    pub const ONE: ScalarKey = ScalarKey { pi_half: 0, rad: 1 };
}

/// Squarefree decomposition `m = s² · r`, returns `(s, r)`.
pub fn squarefree_split(mut m: u64) -> (u64, u64) {
    assert!(m > 0);
    let mut s = 1u64;
    let mut r = 1u64;
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= p;
        }
        if e % 2 == 1 {
            r *= p;
        }
        p += 1;
    }
    r *= m;
    (s, r)
}

/// Finite sum `Σ q · π^(k/2) · √r`, kept in canonical form (no zero entries).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ExactScalar {
    terms: BTreeMap<ScalarKey, CRational>,
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar::default()
    }

    pub fn one() -> Self {
        ExactScalar::from_crational(CRational::one())
    }

    pub fn from_crational(q: CRational) -> Self {
        ExactScalar::monomial(q, ScalarKey::ONE)
    }

    pub fn from_int(n: i64) -> Self {
        ExactScalar::from_crational(CRational::from_int(n))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        ExactScalar::from_crational(CRational::ratio(p, q))
    }

    pub fn monomial(q: CRational, key: ScalarKey) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(key, q);
        }
        ExactScalar { terms }
    }

    /// `q · π^(pi_half/2)`.
    pub fn pi_power(q: CRational, pi_half: i32) -> Self {
        ExactScalar::monomial(q, ScalarKey { pi_half, rad: 1 })
    }

    pub fn pi() -> Self {
        ExactScalar::pi_power(CRational::one(), 2)
    }

    /// `√m` for a positive integer `m`.
    pub fn sqrt_int(m: u64) -> Self {
        let (s, r) = squarefree_split(m);
        ExactScalar::monomial(CRational::from_int(s as i64), ScalarKey { pi_half: 0, rad: r })
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ScalarKey, &CRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as a complex rational if it has no π or radical factors.
    pub fn as_crational(&self) -> Option<CRational> {
        match self.terms.len() {
            0 => Some(CRational::zero()),
            1 => self.terms.get(&ScalarKey::ONE).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, key: ScalarKey, q: &CRational) {
        if q.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(CRational::zero);
        *e += q;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, q: &CRational) -> Self {
        if q.is_zero() {
            return ExactScalar::zero();
        }
        ExactScalar { terms: self.terms.iter().map(|(k, v)| (*k, v * q)).collect() }
    }

    pub fn to_c64(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, q) in &self.terms {
            let f = std::f64::consts::PI.powf(k.pi_half as f64 / 2.0) * (k.rad as f64).sqrt();
            acc += q.to_c64() * f;
        }
        acc
    }

    /// Real and imaginary parts approximated by rationals with about `digits`
    /// correct decimal digits.
    pub fn approx_rational(&self, digits: u32) -> (BigRational, BigRational) {
        let mut re = BigRational::zero();
        let mut im = BigRational::zero();
        for (k, q) in &self.terms {
            let f = key_approx(*k, digits + 20);
            re += &q.re * &f;
            im += &q.im * &f;
        }
        (re, im)
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal(&self, digits: u32) -> String {
        let (re, im) = self.approx_rational(digits + 10);
        let zero_re = re.is_zero();
        let zero_im = im.is_zero();
        match (zero_re, zero_im) {
            (true, true) => "0".to_string(),
            (false, true) => decimal_string(&re, digits),
            (true, false) => format!("{} i", decimal_string(&im, digits)),
            (false, false) => {
                let s = decimal_string(&im, digits);
                if let Some(abs) = s.strip_prefix('-') {
                    format!("{} - {} i", decimal_string(&re, digits), abs)
                } else {
                    format!("{} + {} i", decimal_string(&re, digits), s)
                }
            }
        }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, q) in &self.terms {
            let mut factors = Vec::new();
            match k.pi_half {
                0 => {}
                2 => factors.push("pi".to_string()),
                e if e % 2 == 0 => factors.push(format!("pi^({})", e / 2)),
                e => factors.push(format!("pi^({}/2)", e)),
            }
            if k.rad != 1 {
                factors.push(format!("sqrt({})", k.rad));
            }
            let (neg, coeff) = if q.is_real() && q.re.is_negative() {
                (true, CRational::from_real(-q.re.clone()))
            } else {
                (false, q.clone())
            };
            let cstr = if coeff.is_real() {
                coeff.to_string()
            } else {
                format!("({})", coeff)
            };
            let body = if factors.is_empty() {
                cstr
            } else if coeff.is_one() {
                factors.join("*")
            } else {
                format!("{}*{}", cstr, factors.join("*"))
            };
            if first {
                if neg {
                    write!(f, "-{}", body)?;
                } else {
                    write!(f, "{}", body)?;
                }
                first = false;
            } else if neg {
                write!(f, " - {}", body)?;
            } else {
                write!(f, " + {}", body)?;
            }
        }
        Ok(())
    }
}

impl Add<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, o: &ExactScalar) -> ExactScalar {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl Add for ExactScalar {
    type Output = ExactScalar;
    fn add(mut self, o: ExactScalar) -> ExactScalar {
        self += &o;
        self
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, o: &ExactScalar) {
        for (k, q) in &o.terms {
            self.add_term(*k, q);
        }
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, o: &ExactScalar) {
        for (k, q) in &o.terms {
            self.add_term(*k, &-q);
        }
    }
}

impl Sub<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, o: &ExactScalar) -> ExactScalar {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl Sub for ExactScalar {
    type Output = ExactScalar;
    fn sub(mut self, o: ExactScalar) -> ExactScalar {
        self -= &o;
        self
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { terms: self.terms.into_iter().map(|(k, v)| (k, -v)).collect() }
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -(self.clone())
    }
}

impl Mul<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, o: &ExactScalar) -> ExactScalar {
        let mut r = ExactScalar::zero();
        for (ka, qa) in &self.terms {
            for (kb, qb) in &o.terms {
                let g = ka.rad.gcd(&kb.rad);
                let rad = (ka.rad / g) * (kb.rad / g);
                let q = qa * qb;
                let q = if g == 1 { q } else { q.scale(&rat(g as i64, 1)) };
                r.add_term(ScalarKey { pi_half: ka.pi_half + kb.pi_half, rad }, &q);
            }
        }
        r
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, o: ExactScalar) -> ExactScalar {
        &self * &o
    }
}

impl Mul<&CRational> for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, q: &CRational) -> ExactScalar {
        self.scale(q)
    }
}

impl From<CRational> for ExactScalar {
    fn from(q: CRational) -> Self {
        ExactScalar::from_crational(q)
    }
}

impl std::iter::Sum for ExactScalar {
    fn sum<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        let mut acc = ExactScalar::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// high-precision constants for decimal rendering

const CONST_DIGITS: u32 = 120;

fn pow10(k: u32) -> BigInt {
    BigInt::from(10u32).pow(k)
}

/// arctan(1/x) scaled by `scale`, by the alternating series.
fn arctan_inv(x: u64, scale: &BigInt) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut term = scale / &x;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !term.is_zero() {
        let t = &term / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        term /= &x2;
        k += 1;
    }
    sum
}

struct Consts {
    pi: BigRational,
    sqrt_pi: BigRational,
}

fn consts() -> &'static Consts {
    static C: OnceLock<Consts> = OnceLock::new();
    C.get_or_init(|| {
        let guard = 10;
        let scale = pow10(CONST_DIGITS + guard);
        let pi_scaled = BigInt::from(16) * arctan_inv(5, &scale) - BigInt::from(4) * arctan_inv(239, &scale);
        let pi = BigRational::new(pi_scaled.clone(), scale.clone());
        let sqrt_pi_scaled = (&pi_scaled * &scale).sqrt();
        let sqrt_pi = BigRational::new(sqrt_pi_scaled, scale);
        Consts { pi, sqrt_pi }
    })
}

fn rat_pow(q: &BigRational, k: i32) -> BigRational {
    if k >= 0 {
        num_traits::pow::pow(q.clone(), k as usize)
    } else {
        num_traits::pow::pow(q.recip(), (-k) as usize)
    }
}

fn key_approx(k: ScalarKey, digits: u32) -> BigRational {
    let c = consts();
    let whole = k.pi_half.div_euclid(2);
    let half = k.pi_half.rem_euclid(2);
    let mut f = rat_pow(&c.pi, whole);
    if half == 1 {
        f *= &c.sqrt_pi;
    }
    if k.rad != 1 {
        let d = digits.min(CONST_DIGITS);
        let s = pow10(d);
        let root = (BigInt::from(k.rad) * &s * &s).sqrt();
        f *= BigRational::new(root, s);
    }
    f
}

/// Render a non-zero rational with `digits` significant decimal digits.
pub fn decimal_string(x: &BigRational, digits: u32) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let neg = x.is_negative();
    let a = x.abs();
    // estimate the decimal exponent e with 10^e <= a < 10^(e+1)
    let mut e = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    let ten = BigRational::from_integer(BigInt::from(10));
    let p10 = |k: i64| rat_pow(&ten, k as i32);
    while a < p10(e) {
        e -= 1;
    }
    while a >= p10(e + 1) {
        e += 1;
    }
    // integer with `digits` digits
    let shift = digits as i64 - 1 - e;
    let scaled = &a * p10(shift);
    let mut m = scaled.floor().to_integer();
    let frac = &scaled - BigRational::from_integer(m.clone());
    if frac >= rat(1, 2) {
        m += 1;
    }
    let mut ms = m.to_string();
    let mut e = e;
    if ms.len() as u32 > digits {
        // rounding overflowed to the next power of ten
        ms.truncate(digits as usize);
        e += 1;
    }
    let body = if (-6..21).contains(&e) {
        if e >= 0 {
            let int_len = (e + 1) as usize;
            if int_len >= ms.len() {
                format!("{}{}", ms, "0".repeat(int_len - ms.len()))
            } else {
                format!("{}.{}", &ms[..int_len], &ms[int_len..])
            }
        } else {
            format!("0.{}{}", "0".repeat((-e - 1) as usize), ms)
        }
    } else {
        format!("{}.{}e{}", &ms[..1], &ms[1..], e)
    };
    if neg {
        format!("-{}", body)
    } else {
        body
    }
}

/// Γ((2k+1)/2) / √π = (2k)! / (4^k k!) as a rational.
pub fn gamma_half_odd_over_sqrt_pi(k: u32) -> BigRational {
    let mut num = BigInt::one();
    for i in (k + 1)..=(2 * k) {
        num *= BigInt::from(i);
    }
    let den = BigInt::from(4u32).pow(k);
    BigRational::new(num, den)
}

/// Γ(m/2) for a positive integer `m`, as an exact scalar.
pub fn gamma_half_int(m: u32) -> ExactScalar {
    assert!(m > 0);
    if m % 2 == 0 {
        let mut f = BigInt::one();
        for i in 1..(m / 2) {
            f *= BigInt::from(i);
        }
        ExactScalar::from_crational(CRational::from_real(BigRational::from_integer(f)))
    } else {
        let k = (m - 1) / 2;
        ExactScalar::pi_power(CRational::from_real(gamma_half_odd_over_sqrt_pi(k)), 1)
    }
}

pub fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Generalised binomial `s(s-1)…(s-k+1)/k!` for complex rational `s`.
pub fn binom_c(s: &CRational, k: u32) -> CRational {
    let mut acc = CRational::one();
    for i in 0..k {
        acc = &acc * &(s - &CRational::from_int(i as i64));
    }
    acc.scale(&BigRational::new(BigInt::one(), factorial(k)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["3", "-1/2", "1/2+3/4 i", "-2 i", "5-1/3 i", "0"] {
            let q: CRational = s.parse().unwrap();
            let back: CRational = q.to_string().parse().unwrap();
            assert_eq!(q, back);
        }
        assert_eq!("i".parse::<CRational>().unwrap(), CRational::i());
        assert_eq!("-i".parse::<CRational>().unwrap(), -CRational::i());
        assert_eq!("1/2 + 1 i".parse::<CRational>().unwrap(), CRational::new(rat(1, 2), rat(1, 1)));
    }

    #[test]
    fn pi_digits() {
        let four_pi = ExactScalar::pi().scale(&CRational::from_int(4));
        assert_eq!(four_pi.to_decimal(20), "12.566370614359172954");
        assert_eq!(four_pi.to_string(), "4*pi");
        let s = ExactScalar::pi_power(CRational::ratio(4, 3), 2);
        assert_eq!(s.to_string(), "4/3*pi");
    }

    #[test]
    fn radicals_multiply() {
        let r2 = ExactScalar::sqrt_int(2);
        let r6 = ExactScalar::sqrt_int(6);
        assert_eq!(&r2 * &r6, ExactScalar::sqrt_int(12));
        assert_eq!(ExactScalar::sqrt_int(12).to_string(), "2*sqrt(3)");
        assert_eq!(&r2 * &r2, ExactScalar::from_int(2));
    }

    #[test]
    fn sqrt_pi_decimal() {
        let s = ExactScalar::pi_power(CRational::one(), 1);
        assert_eq!(s.to_decimal(20), "1.7724538509055160273");
    }

    #[test]
    fn gamma_values() {
        assert_eq!(gamma_half_int(4), ExactScalar::from_int(1));
        assert_eq!(gamma_half_int(6), ExactScalar::from_int(2));
        assert_eq!(gamma_half_int(3), ExactScalar::pi_power(CRational::ratio(1, 2), 1));
    }
}
