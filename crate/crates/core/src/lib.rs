//! Exact symbolic-numeric calculus of classical pseudodifferential symbols.
//!
//! Residues, cut-off regularised integrals, derivative decompositions, star
//! products and the Laurent data of holomorphic families, all computed in
//! exact arithmetic, with a numeric finite-part oracle for cross-checks.

pub mod corpus;
pub mod mero;
pub mod opcalc;
pub mod oracle;
pub mod poly;
pub mod reg;
pub mod scalar;
pub mod sphere;
pub mod symalg;

pub use poly::{MultiIndex, Poly};
pub use scalar::{CRational, ExactScalar};
pub use symalg::{ClassicalSymbol, HomogeneousComponent, ParityClass, RadialCutoff, Term};
