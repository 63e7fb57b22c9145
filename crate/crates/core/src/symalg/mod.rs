//! Exact algebra of constant-coefficient classical symbols.
//!
//! A symbol is a finite sum of parts `m(|ξ|) · g(ξ)` where `g` is a
//! homogeneous component and `m` a monomial in the radial cutoff `h` and its
//! derivatives, plus a Gaussian remainder `P(ξ) e^{−|ξ|²}`. Parts with
//! `m = h^a` (a ≥ 1) or `m = 1` make up the asymptotic layers; parts with a
//! derivative factor are compactly supported shell terms.

pub mod component;
pub mod cutoff;
mod symbol;

pub use component::{HomogeneousComponent, Term};
pub use cutoff::{CutMono, RadialCutoff};
pub use symbol::{ClassicalSymbol, PartKey, TaylorData};

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SymbolError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension must be at least 2, got {0}")]
    InvalidDimension(usize),
    #[error("term `{term}` does not have degree {expected}")]
    DegreeMismatch { term: String, expected: String },
    #[error("orders {left} and {right} do not differ by an integer")]
    IncompatibleOrders { left: String, right: String },
    #[error("product is not representable: {0}")]
    NonIntegrableCross(String),
    #[error("cutoff models differ")]
    CutoffMismatch,
    #[error("evaluation at the singular point ξ = 0")]
    SingularPoint,
    #[error("axis {axis} out of range for dimension {n}")]
    AxisOutOfRange { axis: usize, n: usize },
    #[error("component of degree {0} in the uncut part is not a polynomial")]
    NotPolynomial(String),
    #[error("layer degree {degree} is not of the form order − j for order {order}")]
    OffLattice { degree: String, order: String },
}

/// Parity classes for integer-order symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ParityClass {
    Odd,
    Even,
    None,
}

impl fmt::Display for ParityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ParityClass::Odd => "odd",
            ParityClass::Even => "even",
            ParityClass::None => "none",
        };
        write!(f, "{}", s)
    }
}

pub fn add(s: &ClassicalSymbol, t: &ClassicalSymbol) -> Result<ClassicalSymbol, SymbolError> {
    s.add(t)
}

pub fn multiply(s: &ClassicalSymbol, t: &ClassicalSymbol) -> Result<ClassicalSymbol, SymbolError> {
    s.mul(t)
}

pub fn derivative(s: &ClassicalSymbol, i: usize) -> Result<ClassicalSymbol, SymbolError> {
    s.derivative(i)
}

pub fn parity_classify(s: &ClassicalSymbol) -> ParityClass {
    s.parity()
}
