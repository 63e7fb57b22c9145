//! Exact integration and harmonic analysis on the unit sphere `S^{n−1}`.

pub mod harmonic;
pub mod moments;

use crate::poly::{MultiIndex, Poly};
use crate::scalar::{gamma_half_int, gamma_half_odd_over_sqrt_pi, CRational, ExactScalar};
use crate::symalg::HomogeneousComponent;
use num_rational::BigRational;
use std::collections::BTreeMap;

pub use harmonic::harmonic_decompose;
pub use moments::{mono_moment, radial_moment, Moment, MomentError, RadialMoments};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SphereError {
    #[error("sphere function has non-zero mean {0}")]
    NonzeroMean(String),
}

/// `∫_{S^{n−1}} ξ^α dμ` = `2 Π Γ((αᵢ+1)/2) / Γ((|α|+n)/2)`, zero if some αᵢ is odd.
pub fn monomial_sphere_integral(alpha: &MultiIndex) -> ExactScalar {
    if !alpha.is_even() {
        return ExactScalar::zero();
    }
    let n = alpha.dim() as u32;
    let mut num = BigRational::from_integer(2.into());
    for &a in &alpha.0 {
        num *= gamma_half_odd_over_sqrt_pi(a / 2);
    }
    // numerator carries π^{n/2}
    let numer = ExactScalar::pi_power(CRational::from_real(num), n as i32);
    let den = gamma_half_int(alpha.order() + n);
    // den is q·π^{0 or 1/2}; invert its single term
    let (key, q) = den.terms().next().map(|(k, q)| (*k, q.clone())).unwrap();
    numer.mul_key_inv(key, &q)
}

/// Area of `S^{n−1}`.
pub fn sphere_volume(n: usize) -> ExactScalar {
    monomial_sphere_integral(&MultiIndex::zero(n))
}

/// Restrict to `|ξ| = 1` and add the monomial integrals.
pub fn sphere_integral(c: &HomogeneousComponent) -> ExactScalar {
    let mut acc = ExactScalar::zero();
    for t in c.terms() {
        if t.alpha.is_even() {
            acc += &monomial_sphere_integral(&t.alpha).scale(&t.coeff);
        }
    }
    acc
}

/// Sphere integral through the constant harmonic: `H₀ · Vol(S^{n−1})`.
pub fn sphere_integral_by_mean(c: &HomogeneousComponent) -> ExactScalar {
    sphere_volume(c.dim()).scale(&c.h0())
}

/// A polynomial function on the sphere, stored by its harmonic expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpherePolynomial {
    n: usize,
    harmonics: BTreeMap<u32, Poly>,
}

impl SpherePolynomial {
    pub fn from_harmonics(n: usize, harmonics: BTreeMap<u32, Poly>) -> Self {
        let harmonics = harmonics.into_iter().filter(|(_, h)| !h.is_zero()).collect();
        SpherePolynomial { n, harmonics }
    }

    /// Restriction of an arbitrary polynomial to the sphere.
    pub fn from_poly(p: &Poly) -> Self {
        let n = p.dim();
        let mut h: BTreeMap<u32, Poly> = BTreeMap::new();
        for (_, part) in p.homogeneous_parts() {
            for (l, hl) in harmonic_decompose(&part) {
                let e = h.entry(l).or_insert_with(|| Poly::zero(n));
                e.add_assign(&hl);
            }
        }
        SpherePolynomial::from_harmonics(n, h)
    }

    pub fn zero(n: usize) -> Self {
        SpherePolynomial { n, harmonics: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn harmonics(&self) -> &BTreeMap<u32, Poly> {
        &self.harmonics
    }

    pub fn is_zero(&self) -> bool {
        self.harmonics.is_empty()
    }

    /// Homogeneous extension of degree `d`.
    pub fn extend(&self, d: CRational) -> HomogeneousComponent {
        HomogeneousComponent::from_harmonics(self.n, d, self.harmonics.clone())
    }

    pub fn integral(&self) -> ExactScalar {
        sphere_integral(&self.extend(CRational::zero()))
    }

    pub fn add(&self, o: &SpherePolynomial) -> SpherePolynomial {
        let mut h = self.harmonics.clone();
        for (l, p) in &o.harmonics {
            h.entry(*l).or_insert_with(|| Poly::zero(self.n)).add_assign(p);
        }
        SpherePolynomial::from_harmonics(self.n, h)
    }

    pub fn scale(&self, q: &CRational) -> SpherePolynomial {
        let h = self.harmonics.iter().map(|(l, p)| (*l, p.scale(q))).collect();
        SpherePolynomial::from_harmonics(self.n, h)
    }

    /// Laplace–Beltrami operator through the extension identity: extend with
    /// degree 0, apply the Euclidean Laplacian by the term rule, restrict.
    pub fn laplace_beltrami(&self) -> SpherePolynomial {
        self.extend(CRational::zero()).laplacian().restrict_sphere()
    }
}

/// Solve `Δ_S f = g` for zero-mean `g`; returns the mean-zero solution,
/// `H_k ↦ −H_k/(k(k+n−2))`.
pub fn laplace_sphere_solve(g: &SpherePolynomial) -> Result<SpherePolynomial, SphereError> {
    let n = g.n as i64;
    if let Some(h0) = g.harmonics.get(&0) {
        return Err(SphereError::NonzeroMean(h0.coeff(&MultiIndex::zero(g.n)).to_string()));
    }
    let harmonics = g
        .harmonics
        .iter()
        .map(|(k, h)| {
            let k = *k as i64;
            (k as u32, h.scale(&CRational::ratio(-1, k * (k + n - 2))))
        })
        .collect();
    Ok(SpherePolynomial::from_harmonics(g.n, harmonics))
}

impl ExactScalar {
    /// `self / (q · basis(key))` for a monomial divisor with no radical.
    pub(crate) fn mul_key_inv(&self, key: crate::scalar::ScalarKey, q: &CRational) -> ExactScalar {
        assert_eq!(key.rad, 1);
        let inv = ExactScalar::pi_power(q.recip(), -key.pi_half);
        self * &inv
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pi(q: CRational) -> ExactScalar {
        ExactScalar::pi_power(q, 2)
    }

    #[test]
    fn known_monomials() {
        assert_eq!(monomial_sphere_integral(&MultiIndex(vec![0, 0, 0])), pi(CRational::from_int(4)));
        assert_eq!(monomial_sphere_integral(&MultiIndex(vec![2, 0, 0])), pi(CRational::ratio(4, 3)));
        assert!(monomial_sphere_integral(&MultiIndex(vec![1, 0, 0])).is_zero());
        // brute-force value of ∫₀^{2π} cos²θ sin²θ dθ
        assert_eq!(monomial_sphere_integral(&MultiIndex(vec![2, 2])), pi(CRational::ratio(1, 4)));
    }

    #[test]
    fn volumes() {
        assert_eq!(sphere_volume(2), pi(CRational::from_int(2)));
        // S³: 2π²
        assert_eq!(sphere_volume(4), ExactScalar::pi_power(CRational::from_int(2), 4));
        // S⁴: 8π²/3
        assert_eq!(sphere_volume(5), ExactScalar::pi_power(CRational::ratio(8, 3), 4));
    }

    #[test]
    fn laplace_solve_example() {
        let g = SpherePolynomial::from_poly(&Poly::monomial(3, MultiIndex(vec![1, 1, 0]), CRational::one()));
        let f = laplace_sphere_solve(&g).unwrap();
        let expect = SpherePolynomial::from_poly(&Poly::monomial(3, MultiIndex(vec![1, 1, 0]), CRational::ratio(-1, 6)));
        assert_eq!(f, expect);
        assert_eq!(f.laplace_beltrami(), g);
        let one = SpherePolynomial::from_poly(&Poly::constant(3, CRational::one()));
        assert!(matches!(laplace_sphere_solve(&one), Err(SphereError::NonzeroMean(_))));
        assert!(laplace_sphere_solve(&SpherePolynomial::zero(3)).unwrap().is_zero());
    }
}
