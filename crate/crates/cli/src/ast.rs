//! Syntax tree of a symbol document, kept close to the source text so that
//! formatting and re-parsing reproduce it exactly.

use psicalc::CRational;
use std::fmt;

/// Source position. All positions compare equal, so trees parsed from
/// differently laid out text are equal when their content is.
#[derive(Clone, Copy, Debug, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Pos {
    fn eq(&self, _: &Pos) -> bool {
        true
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            return write!(f, "command line");
        }
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// `coeff * xi^[α] * |xi|^c`; `c` is zero when absent.
#[derive(Clone, Debug, PartialEq)]
pub struct TermAst {
    pub pos: Pos,
    pub coeff: CRational,
    pub alpha: Vec<u32>,
    pub exponent: CRational,
}

/// One factor `h^{(k)}` raised to `power`.
#[derive(Clone, Debug, PartialEq)]
pub struct CutFactor {
    pub derivative: u32,
    pub power: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CutoffAst {
    Sharp,
    Spline(Option<CRational>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum SymbolStmt {
    Order(Pos, CRational),
    Cutoff(Pos, CutoffAst),
    Layer(Pos, u32, Vec<TermAst>),
    Poly(Pos, Vec<TermAst>),
    Part(Pos, Vec<CutFactor>, Vec<TermAst>),
    Remainder(Pos, Vec<TermAst>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymbolDecl {
    pub pos: Pos,
    pub name: String,
    pub body: Vec<SymbolStmt>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Reference {
    pub pos: Pos,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FamilyStmt {
    Base(Reference),
    Beta(Pos, CRational),
    Order(Pos, CRational),
    /// Layer `j` with profile coefficients of `z^m`.
    Profile(Pos, u32, Vec<(u32, Vec<TermAst>)>),
    Remainder(Reference),
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyDecl {
    pub pos: Pos,
    pub name: String,
    pub body: Vec<FamilyStmt>,
}

/// `coeff * x^[γ] * exp(-k|x|^2)`; `k = 0` when the factor is absent.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffTermAst {
    pub pos: Pos,
    pub coeff: CRational,
    pub gamma: Vec<u32>,
    pub rate: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairAst {
    pub symbol: Reference,
    pub coefficient: Vec<CoeffTermAst>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TensorDecl {
    pub pos: Pos,
    pub name: String,
    pub pairs: Vec<PairAst>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ScheduleAst {
    Default,
    Geometric(CRational, CRational, u32),
    Chebyshev(CRational, CRational, u32),
}

#[derive(Clone, Debug, PartialEq)]
pub enum ConfigStmt {
    Norm(Pos, String),
    Truncation(Pos, u32),
    Eta(Pos, Vec<CRational>),
    Schedule(Pos, ScheduleAst),
    Tolerance(Pos, CRational),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Item {
    Symbol(SymbolDecl),
    Family(FamilyDecl),
    Tensor(TensorDecl),
    Config(Pos, Vec<ConfigStmt>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub dim: usize,
    pub items: Vec<Item>,
}
