//! Regularised functionals on symbols: the residue, the cut-off integral,
//! Stokes defects, derivative decompositions and the reduction algorithm.

use crate::poly::{MultiIndex, Poly};
use crate::scalar::{gamma_half_odd_over_sqrt_pi, CRational, ExactScalar};
use crate::sphere::moments::{mono_moment, Moment, MomentError};
use crate::sphere::{laplace_sphere_solve, SphereError};
use crate::symalg::{ClassicalSymbol, HomogeneousComponent, RadialCutoff, SymbolError};
use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RegError {
    #[error("residue obstruction: residue {0} is non-zero")]
    ResidueObstruction(String),
    #[error("symbol is outside the Stokes classes: {0}")]
    ClassViolation(String),
    #[error("value is not exact for this cutoff model")]
    NonExact,
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error(transparent)]
    Moment(#[from] MomentError),
    #[error(transparent)]
    Sphere(#[from] SphereError),
}

/// Normalisation constants of the residue and the trace.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionalConfig {
    pub residue_normalisation: ExactScalar,
    pub trace_normalisation: ExactScalar,
}

/// Named normalisation presets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NormPreset {
    /// κ = 1.
    Raw,
    /// κ = (2π)^{−n/2}.
    SqrtTwoPi,
    /// κ = (2π)^{−n}.
    TwoPi,
}

impl NormPreset {
    pub fn parse(s: &str) -> Option<NormPreset> {
        match s {
            "raw" => Some(NormPreset::Raw),
            "sqrt-two-pi" => Some(NormPreset::SqrtTwoPi),
            "two-pi" => Some(NormPreset::TwoPi),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            NormPreset::Raw => "raw",
            NormPreset::SqrtTwoPi => "sqrt-two-pi",
            NormPreset::TwoPi => "two-pi",
        }
    }
}

/// `(2π)^{−k/2}` as an exact scalar.
pub fn two_pi_power_neg_half(k: u32) -> ExactScalar {
    // 2^{−k/2} · π^{−k/2}
    let two = if k % 2 == 0 {
        ExactScalar::from_crational(CRational::ratio(1, 1 << (k / 2)))
    } else {
        ExactScalar::sqrt_int(2).scale(&CRational::ratio(1, 1 << k.div_ceil(2)))
    };
    &two * &ExactScalar::pi_power(CRational::one(), -(k as i32))
}

impl FunctionalConfig {
    pub fn raw() -> Self {
        FunctionalConfig { residue_normalisation: ExactScalar::one(), trace_normalisation: ExactScalar::one() }
    }

    pub fn preset(p: NormPreset, n: usize) -> Self {
        let k = match p {
            NormPreset::Raw => return FunctionalConfig::raw(),
            NormPreset::SqrtTwoPi => n as u32,
            NormPreset::TwoPi => 2 * n as u32,
        };
        let v = two_pi_power_neg_half(k);
        FunctionalConfig { residue_normalisation: v.clone(), trace_normalisation: v }
    }
}

impl Default for FunctionalConfig {
    fn default() -> Self {
        FunctionalConfig::raw()
    }
}

/// Unnormalised residue: sphere integral of the degree `−n` component.
pub fn residue_raw(s: &ClassicalSymbol) -> ExactScalar {
    let d = CRational::from_int(-(s.dim() as i64));
    s.component_of_degree(&d).sphere_integral()
}

pub fn residue(s: &ClassicalSymbol, cfg: &FunctionalConfig) -> ExactScalar {
    &residue_raw(s) * &cfg.residue_normalisation
}

/// `∫ P(ξ) e^{−|ξ|²} dξ` via Gaussian moments.
pub fn gaussian_integral(p: &Poly) -> ExactScalar {
    let n = p.dim();
    let mut acc_c = CRational::zero();
    for (a, c) in p.terms() {
        if !a.is_even() {
            continue;
        }
        let mut f = BigRational::from_integer(1.into());
        for &ai in &a.0 {
            f *= gamma_half_odd_over_sqrt_pi(ai / 2);
        }
        acc_c += &c.scale(&f);
    }
    ExactScalar::pi_power(acc_c, n as i32)
}

/// Asymptotics `I(R) = c₀ + Σ c_k R^{e_k} + c_L log R + o(1)` of the ball integral.
#[derive(Clone, Debug, PartialEq)]
pub struct CutoffExpansion {
    pub constant: ExactScalar,
    pub log_coefficient: ExactScalar,
    /// `(e_k, c_k)` with `e_k = d + n`; includes decaying exponents.
    pub powers: Vec<(CRational, ExactScalar)>,
}

fn exact_moment(m: Moment) -> Result<CRational, RegError> {
    match m {
        Moment::Exact(q) => Ok(q),
        Moment::Numeric(_) => Err(RegError::NonExact),
    }
}

/// Full expansion data of the cut-off integral.
pub fn cutoff_expansion(s: &ClassicalSymbol) -> Result<CutoffExpansion, RegError> {
    let n = CRational::from_int(s.dim() as i64);
    let mut constant = gaussian_integral(s.gaussian_poly());
    let mut log_coefficient = ExactScalar::zero();
    let mut powers: Vec<(CRational, ExactScalar)> = Vec::new();
    for ((m, d), g) in s.parts() {
        let sg = g.sphere_integral();
        if sg.is_zero() {
            continue;
        }
        let e = d + &n;
        let rs = &e - &CRational::one();
        let mu = exact_moment(mono_moment(s.cutoff(), m, &rs)?)?;
        constant += &sg.scale(&mu);
        if m.is_shell() {
            continue;
        }
        if e.is_zero() {
            log_coefficient += &sg;
        } else {
            let c = sg.scale(&e.recip());
            match powers.iter_mut().find(|(x, _)| x == &e) {
                Some((_, v)) => *v += &c,
                None => powers.push((e, c)),
            }
        }
    }
    powers.retain(|(_, v)| !v.is_zero());
    powers.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(CutoffExpansion { constant, log_coefficient, powers })
}

/// Cut-off regularised integral.
pub fn cutoff_integral(s: &ClassicalSymbol) -> Result<ExactScalar, RegError> {
    Ok(cutoff_expansion(s)?.constant)
}

/// Log coefficient of the ball integral; equals the raw residue.
pub fn log_coefficient(s: &ClassicalSymbol) -> Result<ExactScalar, RegError> {
    Ok(cutoff_expansion(s)?.log_coefficient)
}

/// Cut-off integral in floating point; works for every cutoff model.
pub fn cutoff_integral_numeric(s: &ClassicalSymbol) -> Result<Complex64, RegError> {
    let n = CRational::from_int(s.dim() as i64);
    let mut acc = gaussian_integral(s.gaussian_poly()).to_c64();
    for ((m, d), g) in s.parts() {
        let sg = g.sphere_integral();
        if sg.is_zero() {
            continue;
        }
        let rs = &(d + &n) - &CRational::one();
        acc += mono_moment(s.cutoff(), m, &rs)?.to_c64() * sg.to_c64();
    }
    Ok(acc)
}

/// Boundary term `∫_{S^{n−1}} ωᵢ τ_{1−n} dμ` (0-based axis).
pub fn stokes_defect(tau: &ClassicalSymbol, i: usize) -> Result<ExactScalar, RegError> {
    if i >= tau.dim() {
        return Err(SymbolError::AxisOutOfRange { axis: i, n: tau.dim() }.into());
    }
    let d = CRational::from_int(1 - tau.dim() as i64);
    Ok(tau.component_of_degree(&d).mul_omega(i).sphere_integral())
}

/// The classes on which the cut-off integral is closed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StokesClass {
    NonInteger,
    OddInOddDimension,
    EvenInEvenDimension,
}

impl fmt::Display for StokesClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StokesClass::NonInteger => "non-integer order",
            StokesClass::OddInOddDimension => "odd class, odd dimension",
            StokesClass::EvenInEvenDimension => "even class, even dimension",
        };
        write!(f, "{}", s)
    }
}

pub fn stokes_class(s: &ClassicalSymbol) -> Option<StokesClass> {
    let n_odd = s.dim() % 2 == 1;
    if !s.order().is_integer() {
        Some(StokesClass::NonInteger)
    } else if n_odd && s.is_odd_class() {
        Some(StokesClass::OddInOddDimension)
    } else if !n_odd && s.is_even_class() {
        Some(StokesClass::EvenInEvenDimension)
    } else {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DecompositionMethod {
    EulerScaling,
    LaplaceSolve,
}

#[derive(Clone, Debug)]
pub struct DecompositionResult {
    /// `τᵢ`, order `a + 1`, with `Σ ∂ᵢτᵢ` reproducing the layers.
    pub tau: Vec<ClassicalSymbol>,
    /// `(degree, method)` per asymptotic degree.
    pub layer_report: Vec<(CRational, DecompositionMethod)>,
    /// Shell terms of `Σ ∂ᵢτᵢ`: `Σᵢ m′ ωᵢ τᵢ`.
    pub shell_correction: ClassicalSymbol,
}

/// Write the asymptotic part of `s` as `Σᵢ ∂ᵢτᵢ` up to shell terms.
pub fn derivative_decompose(s: &ClassicalSymbol) -> Result<DecompositionResult, RegError> {
    let n = s.dim();
    let res = residue_raw(s);
    if !res.is_zero() {
        return Err(RegError::ResidueObstruction(res.to_string()));
    }
    let minus_n = CRational::from_int(-(n as i64));
    let a1 = s.order() + &CRational::one();
    let mut tau: Vec<ClassicalSymbol> =
        (0..n).map(|_| ClassicalSymbol::new(n, a1.clone(), s.cutoff().clone())).collect::<Result<_, _>>()?;
    let mut report: Vec<(CRational, DecompositionMethod)> = Vec::new();
    for ((m, d), g) in s.asymptotic_parts() {
        let method = if d == &minus_n {
            let f = laplace_sphere_solve(&g.restrict_sphere()).map_err(|_| {
                RegError::ResidueObstruction(format!("part {} of degree {} has non-zero mean", m, d))
            })?;
            let big_f = f.extend(CRational::from_int(2 - n as i64));
            for (i, t) in tau.iter_mut().enumerate() {
                t.add_part(m.clone(), big_f.partial(i))?;
            }
            DecompositionMethod::LaplaceSolve
        } else {
            let c = (d + &CRational::from_int(n as i64)).recip();
            for (i, t) in tau.iter_mut().enumerate() {
                t.add_part(m.clone(), g.mul_xi(i).scale(&c))?;
            }
            DecompositionMethod::EulerScaling
        };
        if !report.iter().any(|(e, _)| e == d) {
            report.push((d.clone(), method));
        }
    }
    let mut recon = ClassicalSymbol::new(n, s.order().clone(), s.cutoff().clone())?;
    for (i, t) in tau.iter().enumerate() {
        recon = recon.add(&t.derivative(i)?)?;
    }
    let shell_correction = recon.smoothing_only();
    Ok(DecompositionResult { tau, layer_report: report, shell_correction })
}

/// `Σᵢ ∂ᵢτᵢ` with the shell terms removed.
pub fn reassemble(dec: &DecompositionResult) -> Result<ClassicalSymbol, RegError> {
    let mut acc: Option<ClassicalSymbol> = None;
    for (i, t) in dec.tau.iter().enumerate() {
        let d = t.derivative(i)?;
        acc = Some(match acc {
            None => d,
            Some(a) => a.add(&d)?,
        });
    }
    let acc = acc.expect("at least two axes");
    let mut out = acc.asymptotic_only();
    out.set_order(acc.order().clone());
    Ok(out)
}

/// A linear functional on smoothing data (Gaussian and shell terms).
pub trait BaseFunctional {
    fn eval(&self, s: &ClassicalSymbol) -> Result<ExactScalar, RegError>;
}

/// The genuine integral of smoothing data.
pub struct ExactIntegral;

impl BaseFunctional for ExactIntegral {
    fn eval(&self, s: &ClassicalSymbol) -> Result<ExactScalar, RegError> {
        cutoff_integral(&s.smoothing_only())
    }
}

/// The zero functional.
pub struct ZeroBase;

impl BaseFunctional for ZeroBase {
    fn eval(&self, _s: &ClassicalSymbol) -> Result<ExactScalar, RegError> {
        Ok(ExactScalar::zero())
    }
}

/// Evaluate a closed functional from its values on smoothing data:
/// `ρ(χσ) = −Σᵢ base((∂ᵢχ) τᵢ)` layer by layer, plus `base` of the
/// remainder.
pub fn reduce_and_evaluate(s: &ClassicalSymbol, base: &dyn BaseFunctional) -> Result<ExactScalar, RegError> {
    let rest = base.eval(&s.smoothing_only())?;
    if s.is_smoothing() {
        return Ok(rest);
    }
    let dec = derivative_decompose(&s.asymptotic_only())?;
    Ok(rest - base.eval(&dec.shell_correction)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct TranslationEntry {
    pub alpha: Vec<u32>,
    /// `η^α / α!`.
    pub weight: String,
    /// `-∫ ∂^α s`.
    pub value: String,
    pub is_zero: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TranslationReport {
    pub class: Option<StokesClass>,
    pub entries: Vec<TranslationEntry>,
    /// `Σ η^α/α! · -∫∂^α s`, the predicted change of the cut-off integral.
    pub predicted_difference: String,
    pub remainder_bound: String,
    pub all_zero: bool,
}

impl fmt::Display for TranslationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.class {
            Some(c) => writeln!(f, "class: {}", c)?,
            None => writeln!(f, "class: none")?,
        }
        for e in &self.entries {
            writeln!(f, "  alpha {:?}: weight {}, value {}", e.alpha, e.weight, e.value)?;
        }
        write!(f, "predicted difference {}", self.predicted_difference)
    }
}

fn translation_entries(
    s: &ClassicalSymbol,
    eta: &[CRational],
    big_n: u32,
) -> Result<TranslationReport, RegError> {
    let n = s.dim();
    if eta.len() != n {
        return Err(SymbolError::DimensionMismatch { expected: n, found: eta.len() }.into());
    }
    let mut entries = Vec::new();
    let mut predicted = ExactScalar::zero();
    let mut all_zero = true;
    if big_n >= 2 {
        for alpha in MultiIndex::all_up_to(n, 1, big_n - 1) {
            let v = cutoff_integral(&s.derivative_multi(&alpha)?)?;
            let mut w = CRational::one();
            for (e, &a) in eta.iter().zip(&alpha.0) {
                w = &w * &e.powi(a as i32);
            }
            let w = w.scale(&BigRational::new(1.into(), alpha.factorial()));
            predicted += &v.scale(&w);
            all_zero &= v.is_zero();
            entries.push(TranslationEntry {
                alpha: alpha.0.clone(),
                weight: w.to_string(),
                value: v.to_string(),
                is_zero: v.is_zero(),
            });
        }
    }
    Ok(TranslationReport {
        class: stokes_class(s),
        entries,
        predicted_difference: predicted.to_string(),
        remainder_bound: (&s.order().re - BigRational::from_integer(big_n.into())).to_string(),
        all_zero,
    })
}

/// Cut-off integrals of `∂^α s` for `1 ≤ |α| ≤ N−1`; asserted zero on the
/// Stokes classes. Outside them the report is returned inside the error.
pub fn translation_invariance_check(
    s: &ClassicalSymbol,
    eta: &[CRational],
    big_n: u32,
) -> Result<TranslationReport, RegError> {
    let report = translation_entries(s, eta, big_n)?;
    if report.class.is_none() {
        return Err(RegError::ClassViolation(report.to_string()));
    }
    Ok(report)
}

/// The translation report without the class gate.
pub fn translation_report(s: &ClassicalSymbol, eta: &[CRational], big_n: u32) -> Result<TranslationReport, RegError> {
    translation_entries(s, eta, big_n)
}

/// Degree `−n` component helper.
pub fn minus_n_component(s: &ClassicalSymbol) -> HomogeneousComponent {
    s.component_of_degree(&CRational::from_int(-(s.dim() as i64)))
}

/// True if the symbol is in the domain of the exact functionals.
pub fn is_exact_model(s: &ClassicalSymbol) -> bool {
    matches!(s.cutoff(), RadialCutoff::SharpShell)
}
