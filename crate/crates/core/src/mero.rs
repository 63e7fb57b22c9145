//! Holomorphic families with affine order and the exact meromorphic
//! continuation of their cut-off integrals.
//!
//! A family is `σ(z) = Σ χ(ξ)·p(ξ/|ξ|, z)·|ξ|^{a+βz−j}` plus an untwisted
//! smoothing remainder. In the sharp-shell model each layer integrates to
//! `−S_j(z)/(a+βz−j+n)` with `S_j` a polynomial in `z`, so the continuation
//! is a rational function with simple poles.

use crate::reg::{cutoff_integral, residue_raw, stokes_class, RegError, StokesClass};
use crate::scalar::{CRational, ExactScalar};
use crate::sphere::SpherePolynomial;
use crate::symalg::{ClassicalSymbol, CutMono, RadialCutoff, SymbolError};
use num_complex::Complex64;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MeroError {
    #[error("family direction beta is zero")]
    ZeroDirection,
    #[error("exact families need the sharp-shell cutoff, got {0}")]
    NotSharpShell(String),
    #[error("symbol part {0} cannot be twisted")]
    UnsupportedPart(String),
    #[error("{0}")]
    ClassViolation(String),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error(transparent)]
    Reg(#[from] RegError),
}

/// Layer key: index `j` and the power of the cutoff function.
pub type LayerKey = (u32, u32);

#[derive(Clone, Debug, PartialEq)]
pub struct HolomorphicFamily {
    n: usize,
    a: CRational,
    beta: CRational,
    /// `(j, power) ↦ [p_{j,0}, p_{j,1}, …]`, coefficients of `z^m`.
    layers: BTreeMap<LayerKey, Vec<SpherePolynomial>>,
    remainder: ClassicalSymbol,
}

/// `σ′(0)` split into the coefficient of `log|ξ|` and the rest.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyDerivative {
    pub log_part: ClassicalSymbol,
    pub non_log_part: ClassicalSymbol,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Pole {
    pub layer: u32,
    pub location: CRational,
    pub residue: ExactScalar,
}

/// Closed form of `z ↦ -∫σ(z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentData {
    pub poles: Vec<Pole>,
    pub residue_at_0: ExactScalar,
    pub finite_part_at_0: ExactScalar,
    n: usize,
    a: CRational,
    beta: CRational,
    constant: ExactScalar,
    numerators: BTreeMap<u32, Vec<ExactScalar>>,
}

/// Both sides of an identity.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub lhs: ExactScalar,
    pub rhs: ExactScalar,
    pub holds: bool,
}

impl IdentityReport {
    fn new(lhs: ExactScalar, rhs: ExactScalar) -> Self {
        let holds = lhs == rhs;
        IdentityReport { lhs, rhs, holds }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContinuityReport {
    pub class: StokesClass,
    pub residue_at_0: ExactScalar,
    pub limit: ExactScalar,
    pub cutoff_integral: ExactScalar,
    pub holds: bool,
}

fn poly_eval(c: &[ExactScalar], z: &CRational) -> ExactScalar {
    let mut acc = ExactScalar::zero();
    for v in c.iter().rev() {
        acc = &acc.scale(z) + v;
    }
    acc
}

fn poly_eval_c64(c: &[ExactScalar], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, v| acc * z + v.to_c64())
}

fn z_power(z: &CRational, m: usize) -> CRational {
    z.powi(m as i32)
}

impl HolomorphicFamily {
    /// General constructor. Layer profiles are polynomials in `z`.
    pub fn new(
        n: usize,
        a: CRational,
        beta: CRational,
        layers: BTreeMap<LayerKey, Vec<SpherePolynomial>>,
        remainder: ClassicalSymbol,
    ) -> Result<Self, MeroError> {
        if beta.is_zero() {
            return Err(MeroError::ZeroDirection);
        }
        if remainder.dim() != n {
            return Err(SymbolError::DimensionMismatch { expected: n, found: remainder.dim() }.into());
        }
        if remainder.cutoff() != &RadialCutoff::SharpShell {
            return Err(MeroError::NotSharpShell(remainder.cutoff().name().into()));
        }
        if !remainder.is_smoothing() {
            return Err(MeroError::UnsupportedPart("non-smoothing remainder".into()));
        }
        for ((_, pw), ps) in &layers {
            if *pw == 0 {
                return Err(MeroError::UnsupportedPart("uncut layer".into()));
            }
            if let Some(p) = ps.iter().find(|p| p.dim() != n) {
                return Err(SymbolError::DimensionMismatch { expected: n, found: p.dim() }.into());
            }
        }
        let layers = layers
            .into_iter()
            .map(|(k, mut v)| {
                while v.last().is_some_and(|p| p.is_zero()) {
                    v.pop();
                }
                (k, v)
            })
            .filter(|(_, v)| !v.is_empty())
            .collect();
        Ok(HolomorphicFamily { n, a, beta, layers, remainder })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &CRational {
        &self.a
    }

    pub fn beta(&self) -> &CRational {
        &self.beta
    }

    pub fn layers(&self) -> &BTreeMap<LayerKey, Vec<SpherePolynomial>> {
        &self.layers
    }

    pub fn remainder(&self) -> &ClassicalSymbol {
        &self.remainder
    }

    /// `α(z) = a + βz`.
    pub fn order_at(&self, z: &CRational) -> CRational {
        &self.a + &(&self.beta * z)
    }

    /// The symbol `σ(z₀)`.
    pub fn at(&self, z0: &CRational) -> Result<ClassicalSymbol, MeroError> {
        let ord = self.order_at(z0);
        let mut s = ClassicalSymbol::new(self.n, ord.clone(), RadialCutoff::SharpShell)?;
        for ((j, pw), ps) in &self.layers {
            let mut prof = SpherePolynomial::zero(self.n);
            for (m, p) in ps.iter().enumerate() {
                prof = prof.add(&p.scale(&z_power(z0, m)));
            }
            let d = &ord - &CRational::from_int(*j as i64);
            s.add_part(CutMono::h_pow(*pw), prof.extend(d))?;
        }
        Ok(s.add(&self.remainder)?)
    }

    /// `σ′(0)`: the log part is `β σ(0)` without remainder; the non-log
    /// part carries `∂_z p_j` at `z = 0`.
    pub fn derivative_at_0(&self) -> Result<FamilyDerivative, MeroError> {
        let log_part = self.at(&CRational::zero())?.asymptotic_only().scale(&self.beta);
        let mut non_log_part = ClassicalSymbol::new(self.n, self.a.clone(), RadialCutoff::SharpShell)?;
        for ((j, pw), ps) in &self.layers {
            if let Some(p1) = ps.get(1) {
                let d = &self.a - &CRational::from_int(*j as i64);
                non_log_part.add_part(CutMono::h_pow(*pw), p1.extend(d))?;
            }
        }
        Ok(FamilyDerivative { log_part, non_log_part })
    }

    /// Coefficients of `S_j(z)`, summed over cutoff powers.
    fn numerators(&self) -> BTreeMap<u32, Vec<ExactScalar>> {
        let mut out: BTreeMap<u32, Vec<ExactScalar>> = BTreeMap::new();
        for ((j, _), ps) in &self.layers {
            let e = out.entry(*j).or_default();
            for (m, p) in ps.iter().enumerate() {
                if e.len() <= m {
                    e.resize(m + 1, ExactScalar::zero());
                }
                e[m] += &p.integral();
            }
        }
        for v in out.values_mut() {
            while v.last().is_some_and(|x| x.is_zero()) {
                v.pop();
            }
        }
        out.retain(|_, v| !v.is_empty());
        out
    }

    /// Exact meromorphic continuation of the cut-off integral.
    pub fn laurent(&self) -> Result<LaurentData, MeroError> {
        let constant = cutoff_integral(&self.remainder)?;
        let numerators = self.numerators();
        let n = CRational::from_int(self.n as i64);
        let mut poles = Vec::new();
        let mut residue_at_0 = ExactScalar::zero();
        let mut fp = constant.clone();
        let binv = self.beta.recip();
        for (j, c) in &numerators {
            // D_j(z) = (a − j + n) + βz
            let d0 = &(&self.a - &CRational::from_int(*j as i64)) + &n;
            let loc = (-&d0) * binv.clone();
            let res = -poly_eval(c, &loc).scale(&binv);
            if !res.is_zero() {
                poles.push(Pole { layer: *j, location: loc, residue: res.clone() });
            }
            if d0.is_zero() {
                residue_at_0 = res;
                if let Some(c1) = c.get(1) {
                    fp -= &c1.scale(&binv);
                }
            } else {
                fp -= &c[0].scale(&d0.recip());
            }
        }
        poles.sort_by(|p, q| p.location.cmp(&q.location));
        Ok(LaurentData {
            poles,
            residue_at_0,
            finite_part_at_0: fp,
            n: self.n,
            a: self.a.clone(),
            beta: self.beta.clone(),
            constant,
            numerators,
        })
    }

    /// The `|ξ|^{βz}` twist of a sharp-shell symbol.
    pub fn twist(s: &ClassicalSymbol, beta: CRational) -> Result<Self, MeroError> {
        if beta.is_zero() {
            return Err(MeroError::ZeroDirection);
        }
        if s.cutoff() != &RadialCutoff::SharpShell {
            return Err(MeroError::NotSharpShell(s.cutoff().name().into()));
        }
        let mut layers: BTreeMap<LayerKey, Vec<SpherePolynomial>> = BTreeMap::new();
        for ((m, d), g) in s.asymptotic_parts() {
            let pw = match m.pure_power() {
                Some(p) if p > 0 => p,
                _ => return Err(MeroError::UnsupportedPart(format!("{} of degree {}", m, d))),
            };
            let j = s
                .layer_index(d)
                .ok_or_else(|| MeroError::UnsupportedPart(format!("degree {} off the order lattice", d)))?;
            let e = layers.entry((j, pw)).or_insert_with(|| vec![SpherePolynomial::zero(s.dim())]);
            e[0] = e[0].add(&g.restrict_sphere());
        }
        HolomorphicFamily::new(s.dim(), s.order().clone(), beta, layers, s.smoothing_only())
    }
}

/// The `|ξ|^{βz}` twist of `s`.
pub fn make_family(s: &ClassicalSymbol, beta: CRational) -> Result<HolomorphicFamily, MeroError> {
    HolomorphicFamily::twist(s, beta)
}

pub fn family_derivative(f: &HolomorphicFamily) -> Result<FamilyDerivative, MeroError> {
    f.derivative_at_0()
}

pub fn meromorphic_cutoff_integral(f: &HolomorphicFamily) -> Result<LaurentData, MeroError> {
    f.laurent()
}

impl LaurentData {
    fn denominator(&self, j: u32, z: &CRational) -> CRational {
        let n = CRational::from_int(self.n as i64);
        &(&(&self.a - &CRational::from_int(j as i64)) + &n) + &(&self.beta * z)
    }

    /// Value at `z`, or `None` at a pole.
    pub fn value_at(&self, z: &CRational) -> Option<ExactScalar> {
        let mut acc = self.constant.clone();
        for (j, c) in &self.numerators {
            let d = self.denominator(*j, z);
            let s = poly_eval(c, z);
            if d.is_zero() {
                if s.is_zero() {
                    // removable: the limit is −S_j′(z)/β
                    let dc: Vec<ExactScalar> = c
                        .iter()
                        .enumerate()
                        .skip(1)
                        .map(|(m, v)| v.scale(&CRational::from_int(m as i64)))
                        .collect();
                    acc -= &poly_eval(&dc, z).scale(&self.beta.recip());
                    continue;
                }
                return None;
            }
            acc -= &s.scale(&d.recip());
        }
        Some(acc)
    }

    /// Floating-point value at a complex point off the poles.
    pub fn value_c64(&self, z: Complex64) -> Complex64 {
        let n = self.n as f64;
        let mut acc = self.constant.to_c64();
        for (j, c) in &self.numerators {
            let d = self.a.to_c64() - Complex64::new(*j as f64 - n, 0.0) + self.beta.to_c64() * z;
            acc -= poly_eval_c64(c, z) / d;
        }
        acc
    }
}

/// `Res_{z=0} -∫σ(z) = −(1/β)·res σ(0)`.
pub fn kv_residue_check(f: &HolomorphicFamily) -> Result<IdentityReport, MeroError> {
    let l = f.laurent()?;
    let rhs = -residue_raw(&f.at(&CRational::zero())?).scale(&f.beta.recip());
    Ok(IdentityReport::new(l.residue_at_0, rhs))
}

/// `fp_{z=0} -∫σ(z) = -∫σ(0) − (1/β)∫_S (σ′(0))_{−n}`, non-log part.
pub fn ps_finite_part_check(f: &HolomorphicFamily) -> Result<IdentityReport, MeroError> {
    let l = f.laurent()?;
    let s0 = f.at(&CRational::zero())?;
    let der = f.derivative_at_0()?;
    let defect = residue_raw(&der.non_log_part).scale(&f.beta.recip());
    let rhs = &cutoff_integral(&s0)? - &defect;
    Ok(IdentityReport::new(l.finite_part_at_0, rhs))
}

fn class_of(s: &ClassicalSymbol, class: StokesClass) -> Result<(), String> {
    let n = s.dim();
    let ok = match class {
        StokesClass::NonInteger => !s.order().is_integer(),
        StokesClass::OddInOddDimension => n % 2 == 1 && s.is_odd_class(),
        StokesClass::EvenInEvenDimension => n % 2 == 0 && s.is_even_class(),
    };
    if ok {
        return Ok(());
    }
    if matches!(class, StokesClass::NonInteger) || !s.order().is_integer() {
        return Err(format!("order {} does not fit class {}", s.order(), class));
    }
    if (n % 2 == 1) != matches!(class, StokesClass::OddInOddDimension) {
        return Err(format!("dimension {} does not fit class {}", n, class));
    }
    let shift = if matches!(class, StokesClass::OddInOddDimension) { 0 } else { 1 };
    for (j, g) in s.layers() {
        let d = g.degree().to_integer().unwrap_or(0);
        if let Some(l) = g.harmonics().keys().find(|l| (**l as i64 - d - shift).rem_euclid(2) != 0) {
            return Err(format!("layer {} (degree {}) has a harmonic of degree {} of the wrong parity", j, d, l));
        }
    }
    Err(format!("symbol is not in class {}", class))
}

/// Holomorphy at 0 and continuity of the cut-off integral on a Stokes class.
pub fn trace_continuity_check(f: &HolomorphicFamily, class: StokesClass) -> Result<ContinuityReport, MeroError> {
    let s0 = f.at(&CRational::zero())?;
    let der = f.derivative_at_0()?;
    for (what, s) in [("sigma(0)", &s0), ("log part of sigma'(0)", &der.log_part), ("sigma'(0)", &der.non_log_part)] {
        if s.is_zero() && what != "sigma(0)" {
            continue;
        }
        class_of(s, class).map_err(|e| MeroError::ClassViolation(format!("{}: {}", what, e)))?;
    }
    let l = f.laurent()?;
    let ci = cutoff_integral(&s0)?;
    let holds = l.residue_at_0.is_zero() && l.finite_part_at_0 == ci;
    Ok(ContinuityReport { class, residue_at_0: l.residue_at_0, limit: l.finite_part_at_0, cutoff_integral: ci, holds })
}

/// The class `σ(0)` belongs to, if any.
pub fn family_class(f: &HolomorphicFamily) -> Result<Option<StokesClass>, MeroError> {
    Ok(stokes_class(&f.at(&CRational::zero())?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> CRational {
        CRational::ratio(p, d)
    }

    fn four_pi() -> ExactScalar {
        ExactScalar::pi().scale(&q(4, 1))
    }

    #[test]
    fn twist_of_minus_three() {
        let s = ClassicalSymbol::single_term(3, q(1, 1), vec![0, 0, 0], q(-3, 1)).unwrap();
        let f = make_family(&s, q(-1, 1)).unwrap();
        assert_eq!(f.order_at(&q(1, 1)), q(-4, 1));
        assert_eq!(f.at(&CRational::zero()).unwrap(), s);
        let d = f.derivative_at_0().unwrap();
        assert_eq!(d.log_part, s.neg());
        assert!(d.non_log_part.is_zero());
        let l = f.laurent().unwrap();
        assert_eq!(l.residue_at_0, four_pi());
        assert!(l.finite_part_at_0.is_zero());
        assert_eq!(l.poles.len(), 1);
        assert!(l.poles[0].location.is_zero());
        assert!(kv_residue_check(&f).unwrap().holds);
        assert!(ps_finite_part_check(&f).unwrap().holds);
        assert!(l.value_at(&CRational::zero()).is_none());
        assert_eq!(l.value_at(&q(1, 2)).unwrap(), four_pi().scale(&q(2, 1)));
    }

    #[test]
    fn twist_without_pole_at_zero() {
        let s = ClassicalSymbol::single_term(3, q(1, 1), vec![0, 0, 0], q(-4, 1)).unwrap();
        let f = make_family(&s, q(-1, 1)).unwrap();
        let l = f.laurent().unwrap();
        assert!(l.residue_at_0.is_zero());
        assert_eq!(l.finite_part_at_0, four_pi());
        assert_eq!(l.value_at(&CRational::zero()).unwrap(), four_pi());
    }

    #[test]
    fn profile_with_z_term() {
        use crate::poly::{MultiIndex, Poly};
        let one = SpherePolynomial::from_poly(&Poly::constant(3, q(1, 1)));
        let w1 = SpherePolynomial::from_poly(&Poly::monomial(3, MultiIndex(vec![2, 0, 0]), q(1, 1)));
        let mut layers = BTreeMap::new();
        layers.insert((0, 1), vec![one, w1]);
        let rem = ClassicalSymbol::new(3, q(-3, 1), RadialCutoff::SharpShell).unwrap();
        let f = HolomorphicFamily::new(3, q(-3, 1), q(-1, 1), layers, rem).unwrap();
        let l = f.laurent().unwrap();
        assert_eq!(l.residue_at_0, four_pi());
        assert_eq!(l.finite_part_at_0, four_pi().scale(&q(1, 3)));
        assert!(ps_finite_part_check(&f).unwrap().holds);
    }

    #[test]
    fn continuity_examples() {
        let s = ClassicalSymbol::single_term(3, q(1, 1), vec![0, 0, 0], q(-5, 2)).unwrap();
        let f = make_family(&s, q(-1, 1)).unwrap();
        let r = trace_continuity_check(&f, StokesClass::NonInteger).unwrap();
        assert!(r.holds);
        assert_eq!(r.limit, ExactScalar::pi().scale(&q(-8, 1)));
        let s = ClassicalSymbol::single_term(3, q(1, 1), vec![1, 0, 0], q(-4, 1)).unwrap();
        let f = make_family(&s, q(-1, 1)).unwrap();
        assert!(trace_continuity_check(&f, StokesClass::OddInOddDimension).unwrap().holds);
        let s = ClassicalSymbol::single_term(2, q(1, 1), vec![0, 0], q(0, 1)).unwrap();
        let f = make_family(&s, q(-1, 1)).unwrap();
        assert!(matches!(
            trace_continuity_check(&f, StokesClass::EvenInEvenDimension),
            Err(MeroError::ClassViolation(_))
        ));
        assert!(matches!(make_family(&s, q(0, 1)), Err(MeroError::ZeroDirection)));
    }
}
