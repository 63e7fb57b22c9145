//! Radial cutoff models and formal monomials in the cutoff and its derivatives.

use crate::scalar::CRational;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// The cutoff `χ(ξ) = h(|ξ|)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RadialCutoff {
    /// Indicator of `|ξ| ≥ 1`, read as the limit of ever steeper splines.
    SharpShell,
    /// Smoothstep spline, `h = 0` on `[0, inner]` and `h = 1` on `[1, ∞)`.
    Spline { inner: BigRational },
}

impl RadialCutoff {
    pub fn spline() -> Self {
        RadialCutoff::Spline { inner: BigRational::new(BigInt::one(), BigInt::from(4)) }
    }

    pub fn name(&self) -> &'static str {
        match self {
            RadialCutoff::SharpShell => "sharp",
            RadialCutoff::Spline { .. } => "spline",
        }
    }
}

impl Default for RadialCutoff {
    fn default() -> Self {
        RadialCutoff::SharpShell
    }
}

/// Monomial `Π_k (h^{(k)})^{e_k}` in the radial profile and its derivatives.
/// The empty product is the constant function 1 (no cutoff).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CutMono(pub BTreeMap<u32, u32>);

impl CutMono {
    /// The constant 1.
    pub fn one() -> Self {
        CutMono(BTreeMap::new())
    }

    /// `h^a`.
    pub fn h_pow(a: u32) -> Self {
        let mut m = BTreeMap::new();
        if a > 0 {
            m.insert(0, a);
        }
        CutMono(m)
    }

    /// `h^{(k)}`.
    pub fn deriv(k: u32) -> Self {
        let mut m = BTreeMap::new();
        m.insert(k, 1);
        CutMono(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Total derivative weight `Σ k·e_k`.
    pub fn weight(&self) -> u32 {
        self.0.iter().map(|(k, e)| k * e).sum()
    }

    /// Compactly supported: contains a derivative factor.
    pub fn is_shell(&self) -> bool {
        self.weight() > 0
    }

    /// `Some(a)` for `h^a` (`a = 0` for the constant 1).
    pub fn pure_power(&self) -> Option<u32> {
        if self.is_shell() {
            None
        } else {
            Some(self.0.get(&0).copied().unwrap_or(0))
        }
    }

    pub fn max_order(&self) -> u32 {
        self.0.keys().copied().max().unwrap_or(0)
    }

    pub fn mul(&self, o: &CutMono) -> CutMono {
        let mut m = self.0.clone();
        for (k, e) in &o.0 {
            *m.entry(*k).or_insert(0) += e;
        }
        CutMono(m)
    }

    /// Radial derivative by the Leibniz rule.
    pub fn derivative(&self) -> Vec<(CRational, CutMono)> {
        let mut out = Vec::new();
        for (k, e) in &self.0 {
            let mut m = self.0.clone();
            if *e == 1 {
                m.remove(k);
            } else {
                m.insert(*k, e - 1);
            }
            *m.entry(k + 1).or_insert(0) += 1;
            out.push((CRational::from_int(*e as i64), CutMono(m)));
        }
        out
    }
}

impl fmt::Display for CutMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        for (k, e) in &self.0 {
            let base = match k {
                0 => "h".to_string(),
                1 => "h'".to_string(),
                2 => "h''".to_string(),
                k => format!("h^({})", k),
            };
            if *e == 1 {
                parts.push(base);
            } else {
                parts.push(format!("{}^{}", base, e));
            }
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// Strictly positive rational test.
pub(crate) fn is_pos(q: &BigRational) -> bool {
    q > &BigRational::zero()
}
