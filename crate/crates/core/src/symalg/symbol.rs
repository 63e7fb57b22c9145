use super::cutoff::{CutMono, RadialCutoff};
use super::{HomogeneousComponent, ParityClass, SymbolError, Term};
use crate::poly::{MultiIndex, Poly};
use crate::scalar::CRational;
use crate::sphere::moments::spline_value;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use std::collections::BTreeMap;
use std::fmt;

/// Key of a part: cutoff monomial and degree of the homogeneous factor.
pub type PartKey = (CutMono, CRational);

/// `Σ m(|ξ|)·g(ξ) + P(ξ)e^{−|ξ|²}` with order bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalSymbol {
    n: usize,
    order: CRational,
    cutoff: RadialCutoff,
    parts: BTreeMap<PartKey, HomogeneousComponent>,
    gaussian: Poly,
}

/// Taylor data of a translation.
#[derive(Clone, Debug)]
pub struct TaylorData {
    /// `(α, η^α/α! · ∂^α s)` for `1 ≤ |α| ≤ N−1` with `η^α ≠ 0`.
    pub entries: Vec<(MultiIndex, ClassicalSymbol)>,
    /// Real part of the order bound of the Taylor remainder.
    pub remainder_bound: BigRational,
}

fn check_dim(n: usize) -> Result<(), SymbolError> {
    if n < 2 {
        Err(SymbolError::InvalidDimension(n))
    } else {
        Ok(())
    }
}

impl ClassicalSymbol {
    /// The zero symbol of order `order`.
    pub fn new(n: usize, order: CRational, cutoff: RadialCutoff) -> Result<Self, SymbolError> {
        check_dim(n)?;
        Ok(ClassicalSymbol { n, order, cutoff, parts: BTreeMap::new(), gaussian: Poly::zero(n) })
    }

    /// `χ · c`, a single layer at the order of `c`.
    pub fn from_component(c: HomogeneousComponent, cutoff: RadialCutoff) -> Result<Self, SymbolError> {
        let mut s = ClassicalSymbol::new(c.dim(), c.degree().clone(), cutoff)?;
        s.add_part(CutMono::h_pow(1), c)?;
        Ok(s)
    }

    /// `χ · coeff · ξ^α · |ξ|^c` with the sharp cutoff.
    pub fn single_term(n: usize, coeff: CRational, alpha: Vec<u32>, c: CRational) -> Result<Self, SymbolError> {
        let t = Term::new(coeff, MultiIndex(alpha), c);
        let comp = HomogeneousComponent::from_terms(n, &t.degree(), &[t])?;
        ClassicalSymbol::from_component(comp, RadialCutoff::SharpShell)
    }

    /// Uncut polynomial symbol `P(ξ)` of order `deg P`.
    pub fn polynomial(p: &Poly, cutoff: RadialCutoff) -> Result<Self, SymbolError> {
        let n = p.dim();
        let mut s = ClassicalSymbol::new(n, CRational::from_int(p.max_degree() as i64), cutoff)?;
        for (_, part) in p.homogeneous_parts() {
            s.add_part(CutMono::one(), HomogeneousComponent::from_poly(&part, &CRational::zero()))?;
        }
        Ok(s)
    }

    /// Purely smoothing symbol `P(ξ) e^{−|ξ|²}`.
    pub fn gaussian(p: &Poly, cutoff: RadialCutoff) -> Result<Self, SymbolError> {
        let mut s = ClassicalSymbol::new(p.dim(), CRational::zero(), cutoff)?;
        s.gaussian = p.clone();
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> &CRational {
        &self.order
    }

    pub fn cutoff(&self) -> &RadialCutoff {
        &self.cutoff
    }

    pub fn parts(&self) -> &BTreeMap<PartKey, HomogeneousComponent> {
        &self.parts
    }

    pub fn gaussian_poly(&self) -> &Poly {
        &self.gaussian
    }

    /// Change the declared order; used by parsers after adding parts.
    pub fn set_order(&mut self, a: CRational) {
        self.order = a;
    }

    pub fn set_cutoff(&mut self, c: RadialCutoff) {
        self.cutoff = c;
    }

    /// Add a part, validating dimension and the uncut-polynomial rule.
    pub fn add_part(&mut self, m: CutMono, g: HomogeneousComponent) -> Result<(), SymbolError> {
        if g.dim() != self.n {
            return Err(SymbolError::DimensionMismatch { expected: self.n, found: g.dim() });
        }
        if m.is_one() && !g.is_polynomial() {
            return Err(SymbolError::NotPolynomial(g.degree().to_string()));
        }
        self.add_part_unchecked(m, g);
        Ok(())
    }

    fn add_part_unchecked(&mut self, m: CutMono, g: HomogeneousComponent) {
        if g.is_zero() {
            return;
        }
        let key = (m, g.degree().clone());
        match self.parts.get_mut(&key) {
            Some(e) => {
                e.add_assign_unchecked(&g);
                if e.is_zero() {
                    self.parts.remove(&key);
                }
            }
            None => {
                self.parts.insert(key, g);
            }
        }
    }

    pub fn add_gaussian(&mut self, p: &Poly) -> Result<(), SymbolError> {
        if p.dim() != self.n {
            return Err(SymbolError::DimensionMismatch { expected: self.n, found: p.dim() });
        }
        self.gaussian.add_assign(p);
        Ok(())
    }

    /// Check that every asymptotic part sits on the lattice `order − ℕ₀`.
    pub fn validate(&self) -> Result<(), SymbolError> {
        for ((m, d), _) in &self.parts {
            if m.is_shell() {
                continue;
            }
            if self.layer_index(d).is_none() {
                return Err(SymbolError::OffLattice { degree: d.to_string(), order: self.order.to_string() });
            }
        }
        Ok(())
    }

    /// `j` with `d = order − j`, if any.
    pub fn layer_index(&self, d: &CRational) -> Option<u32> {
        (&self.order - d).to_natural()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty() && self.gaussian.is_zero()
    }

    /// No asymptotic parts: Gaussian and shell terms only.
    pub fn is_smoothing(&self) -> bool {
        self.parts.keys().all(|(m, _)| m.is_shell())
    }

    /// Every asymptotic part is an uncut polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.parts.keys().all(|(m, _)| m.is_one()) && self.gaussian.is_zero()
    }

    /// Asymptotic parts `(m, g)` with `m = h^a` or `m = 1`.
    pub fn asymptotic_parts(&self) -> impl Iterator<Item = (&PartKey, &HomogeneousComponent)> {
        self.parts.iter().filter(|((m, _), _)| !m.is_shell())
    }

    pub fn shell_parts(&self) -> impl Iterator<Item = (&PartKey, &HomogeneousComponent)> {
        self.parts.iter().filter(|((m, _), _)| m.is_shell())
    }

    /// Homogeneous component of degree `d` in the asymptotic expansion.
    pub fn component_of_degree(&self, d: &CRational) -> HomogeneousComponent {
        let mut acc = HomogeneousComponent::zero(self.n, d.clone());
        for ((m, e), g) in &self.parts {
            if !m.is_shell() && e == d {
                acc.add_assign_unchecked(g);
            }
        }
        acc
    }

    /// Layer `σ_{a−j}`.
    pub fn layer(&self, j: u32) -> HomogeneousComponent {
        self.component_of_degree(&(&self.order - &CRational::from_int(j as i64)))
    }

    /// Non-zero layers keyed by `j`; parts off the lattice are ignored.
    pub fn layers(&self) -> BTreeMap<u32, HomogeneousComponent> {
        let mut out: BTreeMap<u32, HomogeneousComponent> = BTreeMap::new();
        for ((m, d), g) in &self.parts {
            if m.is_shell() {
                continue;
            }
            if let Some(j) = self.layer_index(d) {
                out.entry(j).or_insert_with(|| HomogeneousComponent::zero(self.n, d.clone())).add_assign_unchecked(g);
            }
        }
        out.into_iter().filter(|(_, g)| !g.is_zero()).collect()
    }

    /// Distinct degrees of the asymptotic parts.
    pub fn asymptotic_degrees(&self) -> Vec<CRational> {
        let mut v: Vec<CRational> = self.asymptotic_parts().map(|((_, d), _)| d.clone()).collect();
        v.dedup();
        v.sort();
        v.dedup();
        v
    }

    /// Symbol without shell and Gaussian terms.
    pub fn asymptotic_only(&self) -> ClassicalSymbol {
        let mut s = self.clone();
        s.parts.retain(|(m, _), _| !m.is_shell());
        s.gaussian = Poly::zero(self.n);
        s
    }

    /// Symbol made of the shell and Gaussian terms only.
    pub fn smoothing_only(&self) -> ClassicalSymbol {
        let mut s = self.clone();
        s.parts.retain(|(m, _), _| m.is_shell());
        s
    }

    /// Asymptotic parts of degree with real part above `t`; shell and
    /// Gaussian terms count as order `−∞` and are dropped.
    pub fn truncate_above(&self, t: &BigRational) -> ClassicalSymbol {
        let mut s = self.asymptotic_only();
        s.parts.retain(|(_, d), _| &d.re > t);
        s
    }

    pub fn scale(&self, q: &CRational) -> ClassicalSymbol {
        let mut s = self.clone();
        if q.is_zero() {
            s.parts.clear();
            s.gaussian = Poly::zero(self.n);
            return s;
        }
        for g in s.parts.values_mut() {
            *g = g.scale(q);
        }
        s.gaussian = s.gaussian.scale(q);
        s
    }

    pub fn neg(&self) -> ClassicalSymbol {
        self.scale(&CRational::from_int(-1))
    }

    fn orders_compatible(&self, o: &ClassicalSymbol) -> bool {
        (&self.order - &o.order).is_integer() || self.is_smoothing() || o.is_smoothing()
    }

    fn check_pair(&self, o: &ClassicalSymbol) -> Result<(), SymbolError> {
        if self.n != o.n {
            return Err(SymbolError::DimensionMismatch { expected: self.n, found: o.n });
        }
        if self.cutoff != o.cutoff {
            return Err(SymbolError::CutoffMismatch);
        }
        Ok(())
    }

    pub fn add(&self, o: &ClassicalSymbol) -> Result<ClassicalSymbol, SymbolError> {
        self.check_pair(o)?;
        if !self.orders_compatible(o) {
            return Err(SymbolError::IncompatibleOrders { left: self.order.to_string(), right: o.order.to_string() });
        }
        let order = if o.is_smoothing() && !self.is_smoothing() {
            self.order.clone()
        } else if self.is_smoothing() && !o.is_smoothing() {
            o.order.clone()
        } else if o.order.re > self.order.re {
            o.order.clone()
        } else {
            self.order.clone()
        };
        let mut r = self.clone();
        r.order = order;
        for ((m, _), g) in &o.parts {
            r.add_part_unchecked(m.clone(), g.clone());
        }
        r.gaussian.add_assign(&o.gaussian);
        Ok(r)
    }

    pub fn sub(&self, o: &ClassicalSymbol) -> Result<ClassicalSymbol, SymbolError> {
        self.add(&o.neg())
    }

    /// Pointwise product.
    pub fn mul(&self, o: &ClassicalSymbol) -> Result<ClassicalSymbol, SymbolError> {
        self.check_pair(o)?;
        if !(self.orders_compatible(o) || self.is_polynomial() || o.is_polynomial()) {
            return Err(SymbolError::IncompatibleOrders { left: self.order.to_string(), right: o.order.to_string() });
        }
        self.mul_unrestricted(o)
    }

    /// Pointwise product without the lattice condition on the orders; the
    /// layers of the result sit on `a + b − ℕ₀` whenever both inputs do.
    pub fn mul_unrestricted(&self, o: &ClassicalSymbol) -> Result<ClassicalSymbol, SymbolError> {
        self.check_pair(o)?;
        let mut r = ClassicalSymbol::new(self.n, &self.order + &o.order, self.cutoff.clone())?;
        for ((m1, _), g1) in &self.parts {
            for ((m2, _), g2) in &o.parts {
                r.add_part_unchecked(m1.mul(m2), g1.mul(g2));
            }
        }
        r.gaussian = cross_gaussian(&self.gaussian, o)?.add(&cross_gaussian(&o.gaussian, self)?);
        if !self.gaussian.is_zero() && !o.gaussian.is_zero() {
            return Err(SymbolError::NonIntegrableCross("product of two Gaussian remainders".into()));
        }
        Ok(r)
    }

    /// `∂ᵢ` (0-based axis) including the shell terms from the cutoff.
    pub fn derivative(&self, i: usize) -> Result<ClassicalSymbol, SymbolError> {
        if i >= self.n {
            return Err(SymbolError::AxisOutOfRange { axis: i, n: self.n });
        }
        let mut r = ClassicalSymbol::new(self.n, &self.order - &CRational::one(), self.cutoff.clone())?;
        for ((m, _), g) in &self.parts {
            let dm = m.derivative();
            if !dm.is_empty() {
                let wg = g.mul_omega(i);
                for (c, m2) in dm {
                    r.add_part_unchecked(m2, wg.scale(&c));
                }
            }
            r.add_part_unchecked(m.clone(), g.partial(i));
        }
        // ∂ᵢ(P e^{−|ξ|²}) = (∂ᵢP − 2ξᵢP) e^{−|ξ|²}
        r.gaussian = self.gaussian.partial(i).sub(&self.gaussian.mul_var(i).scale(&CRational::from_int(2)));
        Ok(r)
    }

    /// `∂^α`.
    pub fn derivative_multi(&self, alpha: &MultiIndex) -> Result<ClassicalSymbol, SymbolError> {
        let mut s = self.clone();
        for (i, &a) in alpha.0.iter().enumerate() {
            for _ in 0..a {
                s = s.derivative(i)?;
            }
        }
        Ok(s)
    }

    fn integer_order(&self) -> Option<i64> {
        self.order.to_integer()
    }

    fn layers_satisfy(&self, shift: i64) -> bool {
        if self.integer_order().is_none() {
            return false;
        }
        for (d, g) in self.layer_sums() {
            let d = match d.to_integer() {
                Some(d) => d,
                None => return false,
            };
            if g.harmonics().keys().any(|l| (*l as i64 - d - shift).rem_euclid(2) != 0) {
                return false;
            }
        }
        true
    }

    fn layer_sums(&self) -> BTreeMap<CRational, HomogeneousComponent> {
        let mut out: BTreeMap<CRational, HomogeneousComponent> = BTreeMap::new();
        for ((_, d), g) in self.asymptotic_parts() {
            out.entry(d.clone()).or_insert_with(|| HomogeneousComponent::zero(self.n, d.clone())).add_assign_unchecked(g);
        }
        out
    }

    /// `σ_{a−j}(−ξ) = (−1)^{a−j} σ_{a−j}(ξ)` for all layers.
    pub fn is_odd_class(&self) -> bool {
        self.layers_satisfy(0)
    }

    /// `σ_{a−j}(−ξ) = (−1)^{a−j+1} σ_{a−j}(ξ)` for all layers.
    pub fn is_even_class(&self) -> bool {
        self.layers_satisfy(1)
    }

    pub fn parity(&self) -> ParityClass {
        if self.integer_order().is_none() {
            ParityClass::None
        } else if self.is_odd_class() {
            ParityClass::Odd
        } else if self.is_even_class() {
            ParityClass::Even
        } else {
            ParityClass::None
        }
    }

    /// Taylor data of `s(ξ + η)`.
    pub fn translate_taylor(&self, eta: &[CRational], big_n: u32) -> Result<TaylorData, SymbolError> {
        if eta.len() != self.n {
            return Err(SymbolError::DimensionMismatch { expected: self.n, found: eta.len() });
        }
        let mut entries = Vec::new();
        if big_n >= 2 {
            for alpha in MultiIndex::all_up_to(self.n, 1, big_n - 1) {
                let mut c = CRational::one();
                for (e, &a) in eta.iter().zip(&alpha.0) {
                    c = &c * &e.powi(a as i32);
                }
                if c.is_zero() {
                    continue;
                }
                let c = c.scale(&BigRational::new(BigInt::from(1), alpha.factorial()));
                let d = self.derivative_multi(&alpha)?.scale(&c);
                entries.push((alpha, d));
            }
        }
        let remainder_bound = &self.order.re - BigRational::from_integer(BigInt::from(big_n));
        Ok(TaylorData { entries, remainder_bound })
    }

    /// Value of the cutoff monomial at radius `r`.
    fn mono_value(&self, m: &CutMono, r: f64) -> f64 {
        match &self.cutoff {
            RadialCutoff::SharpShell => match m.pure_power() {
                Some(0) => 1.0,
                Some(_) => {
                    if r >= 1.0 {
                        1.0
                    } else {
                        0.0
                    }
                }
                None => 0.0,
            },
            RadialCutoff::Spline { inner } => {
                m.0.iter().map(|(k, e)| spline_value(inner, *k, r).powi(*e as i32)).product()
            }
        }
    }

    /// Numeric value at `ξ`. Shell terms vanish almost everywhere in the
    /// sharp model and are dropped there.
    pub fn evaluate(&self, xi: &[f64]) -> Result<Complex64, SymbolError> {
        if xi.len() != self.n {
            return Err(SymbolError::DimensionMismatch { expected: self.n, found: xi.len() });
        }
        let r2: f64 = xi.iter().map(|v| v * v).sum();
        let r = r2.sqrt();
        let mut acc = Complex64::new(0.0, 0.0);
        for ((m, _), g) in &self.parts {
            let mv = self.mono_value(m, r);
            if mv == 0.0 {
                continue;
            }
            acc += g.eval(xi)? * mv;
        }
        if !self.gaussian.is_zero() {
            acc += self.gaussian.eval(xi) * (-r2).exp();
        }
        Ok(acc)
    }
}

/// `P e^{−|ξ|²} · t` for a symbol `t`: only uncut polynomial parts of `t`
/// keep the product inside the Gaussian class.
fn cross_gaussian(p: &Poly, t: &ClassicalSymbol) -> Result<Poly, SymbolError> {
    let mut out = Poly::zero(p.dim());
    if p.is_zero() {
        return Ok(out);
    }
    for ((m, d), g) in &t.parts {
        if !m.is_one() {
            return Err(SymbolError::NonIntegrableCross(format!(
                "Gaussian remainder times cut-off part {} of degree {}",
                m, d
            )));
        }
        let q = g.to_poly().ok_or_else(|| SymbolError::NotPolynomial(d.to_string()))?;
        out.add_assign(&p.mul(&q));
    }
    Ok(out)
}

impl fmt::Display for ClassicalSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "order {}; cutoff {}", self.order, self.cutoff.name())?;
        for ((m, d), g) in &self.parts {
            if m.pure_power() == Some(1) {
                match self.layer_index(d) {
                    Some(j) => write!(f, "; layer {} {{ {} }}", j, g)?,
                    None => write!(f, "; part {} {{ {} }}", m, g)?,
                }
            } else if m.is_one() {
                write!(f, "; poly {{ {} }}", g)?;
            } else {
                write!(f, "; part {} {{ {} }}", m, g)?;
            }
        }
        if !self.gaussian.is_zero() {
            let parts: Vec<String> = self.gaussian.terms().map(|(a, c)| format!("{} * xi^{}", c, a)).collect();
            write!(f, "; remainder {{ {} }}", parts.join(" + "))?;
        }
        Ok(())
    }
}
