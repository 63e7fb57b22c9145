//! Sparse multivariate polynomials over complex rationals.

use crate::scalar::{factorial, CRational};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector `α = (α₁,…,α_n)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, o: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn factorial(&self) -> BigInt {
        self.0.iter().fold(BigInt::from(1), |acc, &a| acc * crate::scalar::factorial(a))
    }

    /// All multi-indices of dimension `n` with `lo ≤ |α| ≤ hi`, graded then
    /// lexicographically descending.
    pub fn all_up_to(n: usize, lo: u32, hi: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for d in lo..=hi {
            let mut cur = vec![0u32; n];
            fill(&mut out, &mut cur, 0, d);
        }
        out
    }

    pub fn is_even(&self) -> bool {
        self.0.iter().all(|a| a % 2 == 0)
    }
}

fn fill(out: &mut Vec<MultiIndex>, cur: &mut Vec<u32>, pos: usize, rest: u32) {
    let n = cur.len();
    if pos == n - 1 {
        cur[pos] = rest;
        out.push(MultiIndex(cur.clone()));
        return;
    }
    for a in (0..=rest).rev() {
        cur[pos] = a;
        fill(out, cur, pos + 1, rest - a);
    }
    cur[pos] = 0;
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Polynomial `Σ c_α ξ^α` in `n` variables; zero coefficients never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<MultiIndex, CRational>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: CRational) -> Self {
        Poly::monomial(n, MultiIndex::zero(n), c)
    }

    pub fn monomial(n: usize, alpha: MultiIndex, c: CRational) -> Self {
        assert_eq!(alpha.dim(), n, "multi-index dimension mismatch");
        let mut p = Poly::zero(n);
        p.add_term(alpha, &c);
        p
    }

    pub fn var(n: usize, i: usize) -> Self {
        Poly::monomial(n, MultiIndex::unit(n, i), CRational::one())
    }

    /// `|ξ|² = Σ ξᵢ²`.
    pub fn r2(n: usize) -> Self {
        let mut p = Poly::zero(n);
        for i in 0..n {
            let mut a = vec![0; n];
            a[i] = 2;
            p.add_term(MultiIndex(a), &CRational::one());
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &CRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> CRational {
        self.terms.get(alpha).cloned().unwrap_or_else(CRational::zero)
    }

    pub fn add_term(&mut self, alpha: MultiIndex, c: &CRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(alpha.clone()).or_insert_with(CRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&alpha);
        }
    }

    /// Degree of homogeneity, or `None` for the zero polynomial or a mixed one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|a| a.order());
        let d = it.next()?;
        if it.all(|e| e == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|a| a.order()).max().unwrap_or(0)
    }

    /// Split into homogeneous pieces by degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (a, c) in &self.terms {
            out.entry(a.order()).or_insert_with(|| Poly::zero(self.n)).add_term(a.clone(), c);
        }
        out
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn add_assign(&mut self, o: &Poly) {
        assert_eq!(self.n, o.n);
        for (a, c) in &o.terms {
            self.add_term(a.clone(), c);
        }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&CRational::from_int(-1)))
    }

    pub fn scale(&self, q: &CRational) -> Poly {
        if q.is_zero() {
            return Poly::zero(self.n);
        }
        Poly { n: self.n, terms: self.terms.iter().map(|(a, c)| (a.clone(), c * q)).collect() }
    }

    pub fn scale_rat(&self, q: &BigRational) -> Poly {
        self.scale(&CRational::from_real(q.clone()))
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        assert_eq!(self.n, o.n);
        let mut r = Poly::zero(self.n);
        for (a, c) in &self.terms {
            for (b, d) in &o.terms {
                r.add_term(a.add(b), &(c * d));
            }
        }
        r
    }

    /// Multiply by the monomial `c·ξ^β`.
    pub fn mul_monomial(&self, beta: &MultiIndex, c: &CRational) -> Poly {
        Poly {
            n: self.n,
            terms: self.terms.iter().map(|(a, d)| (a.add(beta), d * c)).filter(|(_, d)| !d.is_zero()).collect(),
        }
    }

    pub fn mul_var(&self, i: usize) -> Poly {
        self.mul_monomial(&MultiIndex::unit(self.n, i), &CRational::one())
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::constant(self.n, CRational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `|ξ|^(2k) · self`.
    pub fn mul_r2_pow(&self, k: u32) -> Poly {
        if k == 0 {
            return self.clone();
        }
        self.mul(&Poly::r2_pow(self.n, k))
    }

    /// `|ξ|^(2k) = Σ_{|β|=k} k!/β! ξ^{2β}`.
    pub fn r2_pow(n: usize, k: u32) -> Poly {
        let kf = factorial(k);
        let mut p = Poly::zero(n);
        for b in MultiIndex::all_up_to(n, k, k) {
            let c = BigRational::new(kf.clone(), b.factorial());
            p.add_term(MultiIndex(b.0.iter().map(|x| 2 * x).collect()), &CRational::from_real(c));
        }
        p
    }

    pub fn partial(&self, i: usize) -> Poly {
        let mut r = Poly::zero(self.n);
        for (a, c) in &self.terms {
            if a.0[i] > 0 {
                let mut b = a.clone();
                b.0[i] -= 1;
                r.add_term(b, &(c * &CRational::from_int(a.0[i] as i64)));
            }
        }
        r
    }

    /// Euclidean Laplacian `Σ ∂ᵢ²`.
    pub fn laplacian(&self) -> Poly {
        let mut r = Poly::zero(self.n);
        for (a, c) in &self.terms {
            for i in 0..self.n {
                if a.0[i] >= 2 {
                    let mut b = a.clone();
                    b.0[i] -= 2;
                    let f = (a.0[i] * (a.0[i] - 1)) as i64;
                    r.add_term(b, &(c * &CRational::from_int(f)));
                }
            }
        }
        r
    }

    /// Substitute `ξ → −ξ`.
    pub fn reflect(&self) -> Poly {
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| if a.order() % 2 == 1 { (a.clone(), -c) } else { (a.clone(), c.clone()) })
                .collect(),
        }
    }

    pub fn eval(&self, x: &[f64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, c) in &self.terms {
            let mut m = 1.0;
            for (xi, &e) in x.iter().zip(&a.0) {
                m *= xi.powi(e as i32);
            }
            acc += c.to_c64() * m;
        }
        acc
    }

    pub fn eval_c(&self, x: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, c) in &self.terms {
            let mut m = Complex64::new(1.0, 0.0);
            for (xi, &e) in x.iter().zip(&a.0) {
                m *= xi.powi(e as i32);
            }
            acc += c.to_c64() * m;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multi_index_enumeration() {
        let all = MultiIndex::all_up_to(3, 1, 2);
        assert_eq!(all.len(), 3 + 6);
        assert_eq!(all[0], MultiIndex(vec![1, 0, 0]));
    }

    #[test]
    fn laplacian_of_r2_power() {
        // Δ|ξ|⁴ = 4(4+n-2)|ξ|² in n=3 → 20|ξ|²
        let p = Poly::r2(3).pow(2);
        assert_eq!(p.laplacian(), Poly::r2(3).scale(&CRational::from_int(20)));
    }
}
