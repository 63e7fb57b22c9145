//! Symbols with coefficients in `x`: tensor symbols `Σ f_k(x) ⊗ s_k(ξ)`,
//! truncated star products, commutators and the operator-level residue and
//! canonical trace.
//!
//! Coefficients are finite sums `c·x^γ·e^{−k|x|²}`. For `k > 0` they are
//! exactly integrable; `k = 0` (plain polynomials) is admitted where no
//! `x`-integral is taken.

use crate::oracle::{apply_op_numeric, GaussianTest, OracleError};
use crate::poly::{MultiIndex, Poly};
use crate::reg::{cutoff_integral, residue_raw, stokes_class, FunctionalConfig, RegError, StokesClass};
use crate::scalar::{gamma_half_odd_over_sqrt_pi, CRational, ExactScalar};
use crate::symalg::{ClassicalSymbol, ParityClass, RadialCutoff, SymbolError};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OpError {
    #[error("coefficient {0} is not integrable in x")]
    NonIntegrableCoefficient(String),
    #[error("{0}")]
    ClassViolation(String),
    #[error("sign calibration failed: {0}")]
    SignCalibrationFailure(String),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error(transparent)]
    Reg(#[from] RegError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// `(γ, k)` for the monomial `x^γ e^{−k|x|²}`.
pub type CoeffKey = (MultiIndex, u32);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientFunction {
    n: usize,
    terms: BTreeMap<CoeffKey, CRational>,
}

impl CoefficientFunction {
    pub fn zero(n: usize) -> Self {
        CoefficientFunction { n, terms: BTreeMap::new() }
    }

    pub fn monomial(gamma: MultiIndex, k: u32, c: CRational) -> Self {
        let mut f = CoefficientFunction::zero(gamma.dim());
        f.add_term((gamma, k), &c);
        f
    }

    pub fn one(n: usize) -> Self {
        CoefficientFunction::monomial(MultiIndex::zero(n), 0, CRational::one())
    }

    /// `e^{−|x|²}`.
    pub fn gaussian(n: usize) -> Self {
        CoefficientFunction::monomial(MultiIndex::zero(n), 1, CRational::one())
    }

    /// `x_i` (0-based).
    pub fn coordinate(n: usize, i: usize) -> Self {
        CoefficientFunction::monomial(MultiIndex::unit(n, i), 0, CRational::one())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<CoeffKey, CRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: CoeffKey, c: &CRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert_with(CRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(k.clone(), c);
        }
        r
    }

    pub fn scale(&self, q: &CRational) -> Self {
        let mut r = CoefficientFunction::zero(self.n);
        for (k, c) in &self.terms {
            r.add_term(k.clone(), &(c * q));
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = CoefficientFunction::zero(self.n);
        for ((g1, k1), c1) in &self.terms {
            for ((g2, k2), c2) in &o.terms {
                r.add_term((g1.add(g2), k1 + k2), &(c1 * c2));
            }
        }
        r
    }

    /// `∂_{x_i}(x^γ e^{−k|x|²}) = γᵢ x^{γ−eᵢ} e^{…} − 2k x^{γ+eᵢ} e^{…}`.
    pub fn partial(&self, i: usize) -> Self {
        let mut r = CoefficientFunction::zero(self.n);
        for ((g, k), c) in &self.terms {
            let gi = g.0[i];
            if gi > 0 {
                let mut g2 = g.clone();
                g2.0[i] -= 1;
                r.add_term((g2, *k), &(c * &CRational::from_int(gi as i64)));
            }
            if *k > 0 {
                let mut g2 = g.clone();
                g2.0[i] += 1;
                r.add_term((g2, *k), &(c * &CRational::from_int(-2 * *k as i64)));
            }
        }
        r
    }

    pub fn partial_multi(&self, alpha: &MultiIndex) -> Self {
        let mut f = self.clone();
        for (i, &a) in alpha.0.iter().enumerate() {
            for _ in 0..a {
                f = f.partial(i);
            }
        }
        f
    }

    pub fn is_integrable(&self) -> bool {
        self.terms.keys().all(|(_, k)| *k > 0)
    }

    /// `∫_{ℝⁿ} f dx`.
    pub fn integral(&self) -> Result<ExactScalar, OpError> {
        let mut acc = ExactScalar::zero();
        for ((g, k), c) in &self.terms {
            if *k == 0 {
                return Err(OpError::NonIntegrableCoefficient(monomial_string(g, *k)));
            }
            if !g.is_even() {
                continue;
            }
            // Π Γ((γᵢ+1)/2) · k^{−(|γ|+n)/2}
            let mut q = BigRational::from_integer(BigInt::from(1));
            for &gi in &g.0 {
                q *= gamma_half_odd_over_sqrt_pi(gi / 2);
            }
            let p = g.order() as i64 + self.n as i64;
            let kb = BigInt::from(*k);
            let kpow = num_traits::pow::pow(kb.clone(), (p / 2) as usize);
            q /= BigRational::from_integer(kpow);
            let mut v = ExactScalar::pi_power(c.scale(&q), self.n as i32);
            if p % 2 == 1 {
                // k^{−1/2} = √k / k
                v = &v * &ExactScalar::sqrt_int(*k as u64).scale(&CRational::ratio(1, *k as i64));
            }
            acc += &v;
        }
        Ok(acc)
    }

    pub fn eval(&self, x: &[f64]) -> Complex64 {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        let mut acc = Complex64::new(0.0, 0.0);
        for ((g, k), c) in &self.terms {
            let mut m = (-(*k as f64) * r2).exp();
            for (xi, &gi) in x.iter().zip(&g.0) {
                m *= xi.powi(gi as i32);
            }
            acc += c.to_c64() * m;
        }
        acc
    }
}

fn monomial_string(g: &MultiIndex, k: u32) -> String {
    match k {
        0 => format!("x^{}", g),
        1 => format!("x^{} * exp(-|x|^2)", g),
        _ => format!("x^{} * exp(-{}|x|^2)", g, k),
    }
}

impl fmt::Display for CoefficientFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|((g, k), c)| format!("{} * {}", c, monomial_string(g, *k))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Σ_{(γ,k)} x^γ e^{−k|x|²} ⊗ s_{γ,k}(ξ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorSymbol {
    n: usize,
    terms: BTreeMap<CoeffKey, ClassicalSymbol>,
}

/// Truncated star product with the order bound of the omitted tail.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedStarResult {
    pub symbol: TensorSymbol,
    pub truncation: u32,
    /// Real order bound `Re(a+b) − N − 1` of the first omitted terms.
    pub remainder_bound: Option<BigRational>,
}

impl TensorSymbol {
    pub fn zero(n: usize) -> Self {
        TensorSymbol { n, terms: BTreeMap::new() }
    }

    /// `f ⊗ s`.
    pub fn from_pair(f: &CoefficientFunction, s: &ClassicalSymbol) -> Result<Self, OpError> {
        let mut t = TensorSymbol::zero(s.dim());
        t.add_pair(f, s)?;
        Ok(t)
    }

    /// `1 ⊗ s`.
    pub fn constant(s: &ClassicalSymbol) -> Self {
        TensorSymbol::from_pair(&CoefficientFunction::one(s.dim()), s).expect("single term")
    }

    /// The multiplication operator `x_i`.
    pub fn coordinate(n: usize, i: usize, cutoff: RadialCutoff) -> Result<Self, OpError> {
        let one = ClassicalSymbol::polynomial(&Poly::constant(n, CRational::one()), cutoff)?;
        TensorSymbol::from_pair(&CoefficientFunction::coordinate(n, i), &one)
    }

    /// The symbol `i ξ_j` of `∂_{x_j}`.
    pub fn derivation(n: usize, j: usize, cutoff: RadialCutoff) -> Result<Self, OpError> {
        let p = Poly::var(n, j).scale(&CRational::i());
        Ok(TensorSymbol::constant(&ClassicalSymbol::polynomial(&p, cutoff)?))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<CoeffKey, ClassicalSymbol> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, key: CoeffKey, s: ClassicalSymbol) -> Result<(), OpError> {
        if s.is_zero() {
            return Ok(());
        }
        if s.dim() != self.n {
            return Err(SymbolError::DimensionMismatch { expected: self.n, found: s.dim() }.into());
        }
        let merged = match self.terms.remove(&key) {
            Some(e) => e.add(&s)?,
            None => s,
        };
        if !merged.is_zero() {
            self.terms.insert(key, merged);
        }
        Ok(())
    }

    pub fn add_pair(&mut self, f: &CoefficientFunction, s: &ClassicalSymbol) -> Result<(), OpError> {
        for (k, c) in f.terms() {
            self.insert(k.clone(), s.scale(c))?;
        }
        Ok(())
    }

    pub fn add(&self, o: &TensorSymbol) -> Result<TensorSymbol, OpError> {
        let mut r = self.clone();
        for (k, s) in &o.terms {
            r.insert(k.clone(), s.clone())?;
        }
        Ok(r)
    }

    pub fn scale(&self, q: &CRational) -> TensorSymbol {
        let mut r = TensorSymbol::zero(self.n);
        for (k, s) in &self.terms {
            let v = s.scale(q);
            if !v.is_zero() {
                r.terms.insert(k.clone(), v);
            }
        }
        r
    }

    pub fn sub(&self, o: &TensorSymbol) -> Result<TensorSymbol, OpError> {
        self.add(&o.scale(&CRational::from_int(-1)))
    }

    /// Order with the largest real part among the non-smoothing terms.
    pub fn order(&self) -> Option<CRational> {
        self.terms.values().filter(|s| !s.is_smoothing()).map(|s| s.order().clone()).max_by(|a, b| a.re.cmp(&b.re))
    }

    pub fn x_partial_multi(&self, alpha: &MultiIndex) -> Result<TensorSymbol, OpError> {
        let mut r = TensorSymbol::zero(self.n);
        for ((g, k), s) in &self.terms {
            let f = CoefficientFunction::monomial(g.clone(), *k, CRational::one()).partial_multi(alpha);
            r.add_pair(&f, s)?;
        }
        Ok(r)
    }

    pub fn x_partial(&self, i: usize) -> Result<TensorSymbol, OpError> {
        self.x_partial_multi(&MultiIndex::unit(self.n, i))
    }

    pub fn xi_partial_multi(&self, alpha: &MultiIndex) -> Result<TensorSymbol, OpError> {
        let mut r = TensorSymbol::zero(self.n);
        for (k, s) in &self.terms {
            r.insert(k.clone(), s.derivative_multi(alpha)?)?;
        }
        Ok(r)
    }

    pub fn xi_partial(&self, i: usize) -> Result<TensorSymbol, OpError> {
        self.xi_partial_multi(&MultiIndex::unit(self.n, i))
    }

    /// Pointwise product of tensor symbols.
    pub fn mul(&self, o: &TensorSymbol) -> Result<TensorSymbol, OpError> {
        // symbols that agree up to a scalar are multiplied once
        let (left, li) = distinct_up_to_scale(&self.terms);
        let (right, ri) = distinct_up_to_scale(&o.terms);
        let mut products: BTreeMap<(usize, usize), ClassicalSymbol> = BTreeMap::new();
        let mut r = TensorSymbol::zero(self.n);
        for ((g1, k1), (a, c1)) in self.terms.keys().zip(&li) {
            for ((g2, k2), (b, c2)) in o.terms.keys().zip(&ri) {
                if !products.contains_key(&(*a, *b)) {
                    products.insert((*a, *b), left[*a].mul_unrestricted(&right[*b])?);
                }
                r.insert((g1.add(g2), k1 + k2), products[&(*a, *b)].scale(&(c1 * c2)))?;
            }
        }
        Ok(r)
    }

    /// Terms of degree with real part above `t`.
    pub fn truncate_above(&self, t: &BigRational) -> TensorSymbol {
        let mut r = TensorSymbol::zero(self.n);
        for (k, s) in &self.terms {
            let v = s.truncate_above(t);
            if !v.is_zero() {
                r.terms.insert(k.clone(), v);
            }
        }
        r
    }

    /// Numeric value at `(x, ξ)`.
    pub fn evaluate(&self, x: &[f64], xi: &[f64]) -> Result<Complex64, OpError> {
        let mut acc = Complex64::new(0.0, 0.0);
        for ((g, k), s) in &self.terms {
            let f = CoefficientFunction::monomial(g.clone(), *k, CRational::one()).eval(x);
            acc += f * s.evaluate(xi)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for TensorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((g, k), s)) in self.terms.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{} (x) [{}]", monomial_string(g, *k), s)?;
        }
        Ok(())
    }
}

fn remainder_bound(p: &TensorSymbol, q: &TensorSymbol, big_n: u32) -> Option<BigRational> {
    let a = p.order()?;
    let b = q.order()?;
    Some(&(&a + &b).re - BigRational::from_integer(BigInt::from(big_n as i64 + 1)))
}

fn i_power_neg(k: u32) -> CRational {
    // (−i)^k
    match k % 4 {
        0 => CRational::one(),
        1 => -CRational::i(),
        2 => CRational::from_int(-1),
        _ => CRational::i(),
    }
}

fn leading_coefficient(s: &ClassicalSymbol) -> CRational {
    s.parts()
        .values()
        .flat_map(|g| g.harmonics().values())
        .chain(std::iter::once(s.gaussian_poly()))
        .find_map(|p| p.terms().next().map(|(_, c)| c.clone()))
        .unwrap_or_else(CRational::one)
}

/// Distinct normalised symbols and, per input, `(index, scale)`.
fn distinct_up_to_scale(terms: &BTreeMap<CoeffKey, ClassicalSymbol>) -> (Vec<ClassicalSymbol>, Vec<(usize, CRational)>) {
    let mut reps: Vec<ClassicalSymbol> = Vec::new();
    let mut idx = Vec::new();
    for s in terms.values() {
        let c = leading_coefficient(s);
        let unit = s.scale(&c.recip());
        let k = match reps.iter().position(|r| r == &unit) {
            Some(k) => k,
            None => {
                reps.push(unit);
                reps.len() - 1
            }
        };
        idx.push((k, c));
    }
    (reps, idx)
}

type DerivativeTable = BTreeMap<MultiIndex, TensorSymbol>;

/// `∂^α p` for all `|α| ≤ N`, each obtained from a lower one.
fn derivative_table(
    p: &TensorSymbol,
    big_n: u32,
    step: impl Fn(&TensorSymbol, usize) -> Result<TensorSymbol, OpError>,
) -> Result<DerivativeTable, OpError> {
    let mut t = BTreeMap::new();
    for alpha in MultiIndex::all_up_to(p.n, 0, big_n) {
        let d = match alpha.0.iter().rposition(|a| *a > 0) {
            None => p.clone(),
            Some(i) => {
                let mut lower = alpha.clone();
                lower.0[i] -= 1;
                step(&t[&lower], i)?
            }
        };
        t.insert(alpha, d);
    }
    Ok(t)
}

struct Tables {
    xi: DerivativeTable,
    x: DerivativeTable,
}

fn tables(p: &TensorSymbol, big_n: u32) -> Result<Tables, OpError> {
    Ok(Tables { xi: derivative_table(p, big_n, |s, i| s.xi_partial(i))?, x: derivative_table(p, big_n, |s, i| s.x_partial(i))? })
}

fn star_from_tables(n: usize, p: &Tables, q: &Tables, big_n: u32) -> Result<TensorSymbol, OpError> {
    let mut acc = TensorSymbol::zero(n);
    for alpha in MultiIndex::all_up_to(n, 0, big_n) {
        let dq = &q.x[&alpha];
        if dq.is_zero() {
            continue;
        }
        let dp = &p.xi[&alpha];
        let c = i_power_neg(alpha.order()).scale(&BigRational::new(1.into(), alpha.factorial()));
        acc = acc.add(&dp.mul(dq)?.scale(&c))?;
    }
    Ok(acc)
}

/// `Σ_{|α| ≤ N} (−i)^{|α|}/α! · ∂_ξ^α p · ∂_x^α q`.
pub fn star_product(p: &TensorSymbol, q: &TensorSymbol, big_n: u32) -> Result<TruncatedStarResult, OpError> {
    if p.n != q.n {
        return Err(SymbolError::DimensionMismatch { expected: p.n, found: q.n }.into());
    }
    let symbol = star_from_tables(p.n, &tables(p, big_n)?, &tables(q, big_n)?, big_n)?;
    Ok(TruncatedStarResult { symbol, truncation: big_n, remainder_bound: remainder_bound(p, q, big_n) })
}

/// `p ★ q − q ★ p`, truncated at `N`.
pub fn commutator(p: &TensorSymbol, q: &TensorSymbol, big_n: u32) -> Result<TruncatedStarResult, OpError> {
    if p.n != q.n {
        return Err(SymbolError::DimensionMismatch { expected: p.n, found: q.n }.into());
    }
    let (tp, tq) = (tables(p, big_n)?, tables(q, big_n)?);
    let a = star_from_tables(p.n, &tp, &tq, big_n)?;
    let b = star_from_tables(p.n, &tq, &tp, big_n)?;
    Ok(TruncatedStarResult { symbol: a.sub(&b)?, truncation: big_n, remainder_bound: remainder_bound(p, q, big_n) })
}

/// `∫ f_k dx · res(s_k)`, scaled by the trace normalisation.
pub fn op_residue(p: &TensorSymbol, cfg: &FunctionalConfig) -> Result<ExactScalar, OpError> {
    let mut acc = ExactScalar::zero();
    for ((g, k), s) in &p.terms {
        let r = residue_raw(s);
        if r.is_zero() {
            continue;
        }
        let f = CoefficientFunction::monomial(g.clone(), *k, CRational::one()).integral()?;
        acc += &(&f * &r);
    }
    Ok(&acc * &cfg.trace_normalisation)
}

/// The class of every term, if they all lie in Stokes classes.
pub fn tensor_class(p: &TensorSymbol) -> Result<Vec<StokesClass>, OpError> {
    let mut out = Vec::new();
    for ((g, k), s) in &p.terms {
        match stokes_class(s) {
            Some(c) => {
                if !out.contains(&c) {
                    out.push(c)
                }
            }
            None => {
                return Err(OpError::ClassViolation(format!(
                    "term {} has order {} and parity {} outside the trace classes in dimension {}",
                    monomial_string(g, *k),
                    s.order(),
                    s.parity(),
                    p.n
                )))
            }
        }
    }
    Ok(out)
}

/// `TR = ∫ f_k dx · -∫ s_k dξ`, scaled by the trace normalisation.
pub fn op_canonical_trace(p: &TensorSymbol, cfg: &FunctionalConfig) -> Result<ExactScalar, OpError> {
    tensor_class(p)?;
    let mut acc = ExactScalar::zero();
    for ((g, k), s) in &p.terms {
        let f = CoefficientFunction::monomial(g.clone(), *k, CRational::one()).integral()?;
        acc += &(&f * &cutoff_integral(s)?);
    }
    Ok(&acc * &cfg.trace_normalisation)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BracketTraceReport {
    pub classes: Vec<StokesClass>,
    pub trace: ExactScalar,
    pub holds: bool,
}

/// `TR([p, q]_N) = 0` on class-valid commutators.
pub fn bracket_trace_vanishing(p: &TensorSymbol, q: &TensorSymbol, big_n: u32) -> Result<BracketTraceReport, OpError> {
    let c = commutator(p, q, big_n)?.symbol;
    let classes = tensor_class(&c)?;
    let trace = op_canonical_trace(&c, &FunctionalConfig::raw())?;
    let holds = trace.is_zero();
    Ok(BracketTraceReport { classes, trace, holds })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BracketIdentityReport {
    /// `κ` with `[x_i, Op(p)] = κ Op(∂_{ξ_i} p)`, from the numeric check.
    pub calibrated_factor: CRational,
    /// Per axis: coordinate bracket and derivation bracket outcomes.
    pub coordinate: Vec<bool>,
    pub derivation: Vec<bool>,
    pub holds: bool,
}

/// The calibration probe: `e^{−|x|²} ⊗ ξ₁ e^{−|ξ|²}` in `n = 3`, a symbol
/// without singular or shell parts.
fn calibration_probe() -> Result<TensorSymbol, OpError> {
    let n = 3;
    let s = ClassicalSymbol::gaussian(&Poly::var(n, 0), RadialCutoff::SharpShell)?;
    TensorSymbol::from_pair(&CoefficientFunction::gaussian(n), &s)
}

fn calibrate() -> Result<CRational, String> {
    let run = || -> Result<CRational, OpError> {
        let n = 3;
        let p = calibration_probe()?;
        let x = [0.3, 0.0, 0.0];
        let u = GaussianTest::new(Poly::constant(n, CRational::one()));
        let yu = GaussianTest::new(Poly::var(n, 0));
        let tol = 1e-11;
        let lhs = Complex64::new(x[0], 0.0) * apply_op_numeric(&p, &u, &x, tol)? - apply_op_numeric(&p, &yu, &x, tol)?;
        let rhs = apply_op_numeric(&p.xi_partial(0)?, &u, &x, tol)?;
        let i = Complex64::new(0.0, 1.0);
        let dp = (lhs - i * rhs).norm();
        let dm = (lhs + i * rhs).norm();
        let scale = lhs.norm().max(1e-3);
        if dp < 1e-8 * scale.max(1.0) && dm > 1e-3 * scale {
            Ok(CRational::i())
        } else if dm < 1e-8 * scale.max(1.0) && dp > 1e-3 * scale {
            Ok(-CRational::i())
        } else {
            Err(OpError::SignCalibrationFailure(format!("lhs {} vs Op(d p) {}", lhs, rhs)))
        }
    };
    run().map_err(|e| e.to_string())
}

/// `κ` with `[x_i, Op(p)] = κ·Op(∂_{ξ_i}p)`, computed once per process by
/// applying both sides to a Gaussian numerically.
pub fn calibrated_bracket_factor() -> Result<CRational, OpError> {
    static K: OnceLock<Result<CRational, String>> = OnceLock::new();
    K.get_or_init(calibrate).clone().map_err(OpError::SignCalibrationFailure)
}

/// Checks `[x_i, p]_1 = κ ∂_{ξ_i} p` and `[iξ_j, p]_1 = ∂_{x_j} p` for every axis.
pub fn coordinate_bracket_identity(p: &TensorSymbol) -> Result<BracketIdentityReport, OpError> {
    let kappa = calibrated_bracket_factor()?;
    let cutoff = p.terms.values().next().map(|s| s.cutoff().clone()).unwrap_or_default();
    let mut coordinate = Vec::new();
    let mut derivation = Vec::new();
    for i in 0..p.n {
        let x = TensorSymbol::coordinate(p.n, i, cutoff.clone())?;
        let lhs = commutator(&x, p, 1)?.symbol;
        coordinate.push(lhs.sub(&p.xi_partial(i)?.scale(&kappa))?.is_zero());
        let d = TensorSymbol::derivation(p.n, i, cutoff.clone())?;
        let lhs = commutator(&d, p, 1)?.symbol;
        derivation.push(lhs.sub(&p.x_partial(i)?)?.is_zero());
    }
    let holds = coordinate.iter().chain(&derivation).all(|b| *b);
    Ok(BracketIdentityReport { calibrated_factor: kappa, coordinate, derivation, holds })
}

/// One row of the parity table: classes of the inputs and of the product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityRow {
    pub left: ParityClass,
    pub right: ParityClass,
    pub product: ParityClass,
}

/// Common parity of all terms, or `None`.
pub fn tensor_parity(p: &TensorSymbol) -> ParityClass {
    let classes: Vec<ParityClass> = p.terms.values().map(|s| s.parity()).collect();
    match classes.first() {
        Some(c) if classes.iter().all(|d| d == c) => *c,
        _ => ParityClass::None,
    }
}

fn generators() -> Result<Vec<(ParityClass, TensorSymbol)>, OpError> {
    let n = 3;
    let q = CRational::ratio;
    let f = CoefficientFunction::gaussian(n).add(&CoefficientFunction::monomial(MultiIndex(vec![1, 0, 0]), 1, q(1, 2)));
    let sym = |a: Vec<u32>, c: CRational| ClassicalSymbol::single_term(n, q(1, 1), a, c);
    let list = vec![
        (ParityClass::Odd, sym(vec![1, 0, 0], q(-2, 1))?),
        (ParityClass::Odd, sym(vec![0, 0, 0], q(-2, 1))?),
        (ParityClass::Even, sym(vec![0, 0, 0], q(-3, 1))?),
        (ParityClass::Even, sym(vec![1, 0, 0], q(-1, 1))?),
    ];
    list.into_iter().map(|(c, s)| Ok((c, TensorSymbol::from_pair(&f, &s)?))).collect()
}

/// Parity of `p ★ q` (truncated at `N = 2`) over all generator pairs.
pub fn parity_product_table() -> Result<Vec<ParityRow>, OpError> {
    let gens = generators()?;
    let mut rows = Vec::new();
    for (c1, p) in &gens {
        for (c2, q) in &gens {
            let prod = star_product(p, q, 2)?.symbol;
            rows.push(ParityRow { left: *c1, right: *c2, product: tensor_parity(&prod) });
        }
    }
    Ok(rows)
}

/// Collapse the table to one product class per input pair, `None` if mixed.
pub fn parity_summary(rows: &[ParityRow]) -> Vec<(ParityClass, ParityClass, ParityClass)> {
    let mut out: Vec<(ParityClass, ParityClass, ParityClass)> = Vec::new();
    for r in rows {
        match out.iter_mut().find(|(a, b, _)| *a == r.left && *b == r.right) {
            Some(e) => {
                if e.2 != r.product {
                    e.2 = ParityClass::None
                }
            }
            None => out.push((r.left, r.right, r.product)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> CRational {
        CRational::ratio(p, d)
    }

    #[test]
    fn gaussian_coefficient_integrals() {
        let g = CoefficientFunction::gaussian(3);
        assert_eq!(g.integral().unwrap(), ExactScalar::pi_power(q(1, 1), 3));
        let x2 = CoefficientFunction::monomial(MultiIndex(vec![2, 0, 0]), 1, q(1, 1));
        assert_eq!(x2.integral().unwrap(), ExactScalar::pi_power(q(1, 2), 3));
        // ∫ e^{−2x²} dx in n = 1 slot of n = 2: π/2
        let g2 = CoefficientFunction::monomial(MultiIndex(vec![0, 0]), 2, q(1, 1));
        assert_eq!(g2.integral().unwrap(), ExactScalar::pi_power(q(1, 2), 2));
        let g3 = CoefficientFunction::monomial(MultiIndex(vec![0, 0, 0]), 2, q(1, 1));
        let v = g3.integral().unwrap().to_c64().re;
        assert!((v - (std::f64::consts::PI / 2.0).powf(1.5)).abs() < 1e-14);
        assert!(CoefficientFunction::one(3).integral().is_err());
    }

    #[test]
    fn coordinate_star_examples() {
        let s = ClassicalSymbol::single_term(3, q(1, 1), vec![1, 0, 0], q(-2, 1)).unwrap();
        let p = TensorSymbol::from_pair(&CoefficientFunction::gaussian(3), &s).unwrap();
        let x1 = TensorSymbol::coordinate(3, 0, RadialCutoff::SharpShell).unwrap();
        let a = star_product(&x1, &p, 2).unwrap().symbol;
        let b = star_product(&p, &x1, 2).unwrap().symbol;
        let x1p = x1.mul(&p).unwrap();
        assert_eq!(a, x1p);
        let expect = x1p.add(&p.xi_partial(0).unwrap().scale(&-CRational::i())).unwrap();
        assert_eq!(b, expect);
        assert!(commutator(&p, &p, 3).unwrap().symbol.is_zero());
    }

    #[test]
    fn op_residue_and_trace_examples() {
        let raw = FunctionalConfig::raw();
        let s = ClassicalSymbol::single_term(3, q(1, 1), vec![0, 0, 0], q(-3, 1)).unwrap();
        let p = TensorSymbol::from_pair(&CoefficientFunction::gaussian(3), &s).unwrap();
        let four_pi = ExactScalar::pi().scale(&q(4, 1));
        assert_eq!(op_residue(&p, &raw).unwrap(), &ExactScalar::pi_power(q(1, 1), 3) * &four_pi);
        let s = ClassicalSymbol::single_term(3, q(1, 1), vec![0, 0, 0], q(-5, 2)).unwrap();
        let p = TensorSymbol::from_pair(&CoefficientFunction::gaussian(3), &s).unwrap();
        assert_eq!(
            op_canonical_trace(&p, &raw).unwrap(),
            &ExactScalar::pi_power(q(1, 1), 3) * &ExactScalar::pi().scale(&q(-8, 1))
        );
        let s = ClassicalSymbol::single_term(3, q(1, 1), vec![0, 0, 0], q(0, 1)).unwrap();
        let p = TensorSymbol::from_pair(&CoefficientFunction::gaussian(3), &s).unwrap();
        assert_eq!(
            op_canonical_trace(&p, &raw).unwrap(),
            &ExactScalar::pi_power(q(1, 1), 3) * &four_pi.scale(&q(-1, 3))
        );
    }

    #[test]
    fn bracket_trace_example() {
        let s = ClassicalSymbol::single_term(3, q(1, 1), vec![0, 0, 0], q(-5, 2)).unwrap();
        let p = TensorSymbol::from_pair(&CoefficientFunction::gaussian(3), &s).unwrap();
        let t = ClassicalSymbol::single_term(3, q(1, 1), vec![1, 0, 0], q(-2, 1)).unwrap();
        let f = CoefficientFunction::monomial(MultiIndex(vec![2, 0, 0]), 1, q(1, 1));
        let qq = TensorSymbol::from_pair(&f, &t).unwrap();
        let r = bracket_trace_vanishing(&p, &qq, 3).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn parity_table() {
        let rows = parity_product_table().unwrap();
        let summary = parity_summary(&rows);
        let get = |a, b| summary.iter().find(|(x, y, _)| *x == a && *y == b).unwrap().2;
        assert_eq!(get(ParityClass::Odd, ParityClass::Odd), ParityClass::Odd);
        assert_eq!(get(ParityClass::Even, ParityClass::Even), ParityClass::Odd);
        assert_eq!(get(ParityClass::Odd, ParityClass::Even), ParityClass::Even);
    }
}
