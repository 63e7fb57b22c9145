//! Positively homogeneous components in harmonic canonical form.

use super::SymbolError;
use crate::poly::{MultiIndex, Poly};
use crate::scalar::{CRational, ExactScalar};
use crate::sphere::harmonic::{harmonic_decompose, mul_var_harmonic};
use crate::sphere::SpherePolynomial;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;

/// Single term `coeff · ξ^α · |ξ|^c`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Term {
    pub coeff: CRational,
    pub alpha: MultiIndex,
    pub radial_exponent: CRational,
}

impl Term {
    pub fn new(coeff: CRational, alpha: MultiIndex, radial_exponent: CRational) -> Self {
        Term { coeff, alpha, radial_exponent }
    }

    pub fn degree(&self) -> CRational {
        &CRational::from_int(self.alpha.order() as i64) + &self.radial_exponent
    }

    /// Term derivative rule `∂ᵢ(ξ^α|ξ|^c) = αᵢ ξ^{α−eᵢ}|ξ|^c + c ξ^{α+eᵢ}|ξ|^{c−2}`.
    pub fn partial(&self, i: usize) -> Vec<Term> {
        let mut out = Vec::new();
        let ai = self.alpha.0[i];
        if ai > 0 {
            let mut a = self.alpha.clone();
            a.0[i] -= 1;
            out.push(Term::new(&self.coeff * &CRational::from_int(ai as i64), a, self.radial_exponent.clone()));
        }
        if !self.radial_exponent.is_zero() {
            let mut a = self.alpha.clone();
            a.0[i] += 1;
            out.push(Term::new(
                &self.coeff * &self.radial_exponent,
                a,
                &self.radial_exponent - &CRational::from_int(2),
            ));
        }
        out
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = if self.coeff.is_real() { self.coeff.to_string() } else { format!("({})", self.coeff) };
        write!(f, "{} * xi^{}", c, self.alpha)?;
        if !self.radial_exponent.is_zero() {
            if self.radial_exponent.is_real() {
                write!(f, " * |xi|^{}", self.radial_exponent)?;
            } else {
                write!(f, " * |xi|^({})", self.radial_exponent)?;
            }
        }
        Ok(())
    }
}

/// `Σ_ℓ H_ℓ(ξ) |ξ|^{d−ℓ}` with every `H_ℓ` harmonic and homogeneous of degree `ℓ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomogeneousComponent {
    n: usize,
    degree: CRational,
    harmonics: BTreeMap<u32, Poly>,
}

impl HomogeneousComponent {
    pub fn zero(n: usize, degree: CRational) -> Self {
        HomogeneousComponent { n, degree, harmonics: BTreeMap::new() }
    }

    /// Component from already harmonic pieces. Zero pieces are dropped.
    pub fn from_harmonics(n: usize, degree: CRational, harmonics: BTreeMap<u32, Poly>) -> Self {
        let harmonics = harmonics.into_iter().filter(|(_, h)| !h.is_zero()).collect();
        HomogeneousComponent { n, degree, harmonics }
    }

    /// `P(ξ)·|ξ|^c` for a homogeneous polynomial `P`.
    pub fn from_poly(p: &Poly, c: &CRational) -> Self {
        let n = p.dim();
        let k = p.homogeneous_degree().unwrap_or(0);
        let degree = &CRational::from_int(k as i64) + c;
        HomogeneousComponent::from_harmonics(n, degree, harmonic_decompose(p))
    }

    /// Radial power `coeff·|ξ|^d`.
    pub fn radial(n: usize, coeff: CRational, d: CRational) -> Self {
        HomogeneousComponent::from_poly(&Poly::constant(n, coeff), &d)
    }

    /// Canonical component from raw terms, all of degree `degree`.
    pub fn from_terms(n: usize, degree: &CRational, terms: &[Term]) -> Result<Self, SymbolError> {
        let mut by_k: BTreeMap<u32, Poly> = BTreeMap::new();
        for t in terms {
            if t.alpha.dim() != n {
                return Err(SymbolError::DimensionMismatch { expected: n, found: t.alpha.dim() });
            }
            if &t.degree() != degree {
                return Err(SymbolError::DegreeMismatch { term: t.to_string(), expected: degree.to_string() });
            }
            by_k.entry(t.alpha.order()).or_insert_with(|| Poly::zero(n)).add_term(t.alpha.clone(), &t.coeff);
        }
        let mut out = HomogeneousComponent::zero(n, degree.clone());
        for (_, p) in by_k {
            for (l, h) in harmonic_decompose(&p) {
                out.add_harmonic(l, &h);
            }
        }
        Ok(out)
    }

    fn add_harmonic(&mut self, l: u32, h: &Poly) {
        if h.is_zero() {
            return;
        }
        let e = self.harmonics.entry(l).or_insert_with(|| Poly::zero(self.n));
        e.add_assign(h);
        if e.is_zero() {
            self.harmonics.remove(&l);
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> &CRational {
        &self.degree
    }

    pub fn harmonics(&self) -> &BTreeMap<u32, Poly> {
        &self.harmonics
    }

    pub fn is_zero(&self) -> bool {
        self.harmonics.is_empty()
    }

    /// Expanded term list `coeff·ξ^α·|ξ|^{d−ℓ}`.
    pub fn terms(&self) -> Vec<Term> {
        let mut out = Vec::new();
        for (l, h) in &self.harmonics {
            let c = &self.degree - &CRational::from_int(*l as i64);
            for (a, q) in h.terms() {
                out.push(Term::new(q.clone(), a.clone(), c.clone()));
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Result<Self, SymbolError> {
        if self.n != o.n {
            return Err(SymbolError::DimensionMismatch { expected: self.n, found: o.n });
        }
        if self.degree != o.degree {
            return Err(SymbolError::DegreeMismatch { term: o.to_string(), expected: self.degree.to_string() });
        }
        let mut r = self.clone();
        for (l, h) in &o.harmonics {
            r.add_harmonic(*l, h);
        }
        Ok(r)
    }

    pub(crate) fn add_assign_unchecked(&mut self, o: &Self) {
        debug_assert_eq!(self.degree, o.degree);
        for (l, h) in &o.harmonics {
            self.add_harmonic(*l, h);
        }
    }

    pub fn scale(&self, q: &CRational) -> Self {
        if q.is_zero() {
            return HomogeneousComponent::zero(self.n, self.degree.clone());
        }
        HomogeneousComponent {
            n: self.n,
            degree: self.degree.clone(),
            harmonics: self.harmonics.iter().map(|(l, h)| (*l, h.scale(q))).collect(),
        }
    }

    /// Same angular profile, new degree: multiplies by `|ξ|^{d'−d}`.
    pub fn with_degree(&self, d: CRational) -> Self {
        HomogeneousComponent { n: self.n, degree: d, harmonics: self.harmonics.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let degree = &self.degree + &o.degree;
        let mut by_k: BTreeMap<u32, Poly> = BTreeMap::new();
        for (l, h) in &self.harmonics {
            for (m, g) in &o.harmonics {
                let e = by_k.entry(l + m).or_insert_with(|| Poly::zero(self.n));
                e.add_assign(&h.mul(g));
            }
        }
        let mut out = HomogeneousComponent::zero(self.n, degree);
        for (_, p) in by_k {
            for (l, h) in harmonic_decompose(&p) {
                out.add_harmonic(l, &h);
            }
        }
        out
    }

    /// `ξᵢ · self`, degree `d+1`.
    pub fn mul_xi(&self, i: usize) -> Self {
        let mut out = HomogeneousComponent::zero(self.n, &self.degree + &CRational::one());
        for (l, h) in &self.harmonics {
            let (a, b) = mul_var_harmonic(h, *l, i);
            out.add_harmonic(l + 1, &a);
            if *l > 0 {
                out.add_harmonic(l - 1, &b);
            }
        }
        out
    }

    /// `ωᵢ · self = ξᵢ|ξ|^{−1} · self`, same degree.
    pub fn mul_omega(&self, i: usize) -> Self {
        self.mul_xi(i).with_degree(self.degree.clone())
    }

    /// `∂ᵢ self`, degree `d−1`.
    pub fn partial(&self, i: usize) -> Self {
        let n = self.n as i64;
        let mut out = HomogeneousComponent::zero(self.n, &self.degree - &CRational::one());
        for (l, h) in &self.harmonics {
            let c = &self.degree - &CRational::from_int(*l as i64);
            if c.is_zero() {
                out.add_harmonic(l.saturating_sub(1), &h.partial(i));
                continue;
            }
            let (a, _) = mul_var_harmonic(h, *l, i);
            out.add_harmonic(l + 1, &a.scale(&c));
            if *l > 0 {
                // ∂ᵢH (1 + c/(2ℓ+n−2))
                let f = &CRational::one() + &(&c * &CRational::ratio(1, 2 * *l as i64 + n - 2));
                out.add_harmonic(l - 1, &h.partial(i).scale(&f));
            }
        }
        out
    }

    /// Euclidean Laplacian computed through the derivative rule.
    pub fn laplacian(&self) -> Self {
        let mut out = HomogeneousComponent::zero(self.n, &self.degree - &CRational::from_int(2));
        for i in 0..self.n {
            out.add_assign_unchecked(&self.partial(i).partial(i));
        }
        out
    }

    /// `ξ → −ξ`.
    pub fn reflect(&self) -> Self {
        HomogeneousComponent {
            n: self.n,
            degree: self.degree.clone(),
            harmonics: self.harmonics.iter().map(|(l, h)| (*l, h.reflect())).collect(),
        }
    }

    /// True if the component is a polynomial in ξ (every radial exponent is
    /// an even non-negative integer).
    pub fn is_polynomial(&self) -> bool {
        self.harmonics.keys().all(|l| {
            let c = &self.degree - &CRational::from_int(*l as i64);
            matches!(c.to_integer(), Some(k) if k >= 0 && k % 2 == 0)
        })
    }

    /// The polynomial `Σ H_ℓ |ξ|^{d−ℓ}`, if the component is polynomial.
    pub fn to_poly(&self) -> Option<Poly> {
        if !self.is_polynomial() {
            return None;
        }
        let mut p = Poly::zero(self.n);
        for (l, h) in &self.harmonics {
            let c = (&self.degree - &CRational::from_int(*l as i64)).to_integer().unwrap();
            p.add_assign(&h.mul_r2_pow((c / 2) as u32));
        }
        Some(p)
    }

    pub fn restrict_sphere(&self) -> SpherePolynomial {
        SpherePolynomial::from_harmonics(self.n, self.harmonics.clone())
    }

    /// Coefficient of the constant harmonic, the sphere mean times the area.
    pub fn h0(&self) -> CRational {
        self.harmonics.get(&0).map(|p| p.coeff(&MultiIndex::zero(self.n))).unwrap_or_else(CRational::zero)
    }

    pub fn sphere_integral(&self) -> ExactScalar {
        crate::sphere::sphere_integral(self)
    }

    pub fn eval(&self, x: &[f64]) -> Result<Complex64, SymbolError> {
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let mut acc = Complex64::new(0.0, 0.0);
        for (l, h) in &self.harmonics {
            let c = (&self.degree - &CRational::from_int(*l as i64)).to_c64();
            let hv = h.eval(x);
            if hv == Complex64::new(0.0, 0.0) {
                continue;
            }
            if r == 0.0 {
                if c.re > 0.0 {
                    continue;
                }
                if c == Complex64::new(0.0, 0.0) {
                    acc += hv;
                    continue;
                }
                return Err(SymbolError::SingularPoint);
            }
            acc += hv * (c * r.ln()).exp();
        }
        Ok(acc)
    }

    /// Maximal harmonic degree present.
    pub fn max_harmonic(&self) -> u32 {
        self.harmonics.keys().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for HomogeneousComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
