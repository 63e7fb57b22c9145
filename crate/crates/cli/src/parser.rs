//! Lexer and recursive-descent parser for symbol documents.

use crate::ast::*;
use crate::error::CliError;
use num_bigint::BigInt;
use num_rational::BigRational;
use psicalc::CRational;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Punct(char),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    pos: Pos,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{}`", s),
        Tok::Int(n) => format!("`{}`", n),
        Tok::Punct(c) => format!("`{}`", c),
        Tok::Eof => "end of input".into(),
    }
}

fn lex(src: &str) -> Result<Vec<Token>, CliError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut line, mut col) = (1usize, 1usize);
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let pos = Pos { line, col };
        if c == '\n' {
            line += 1;
            col = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            k += 1;
            continue;
        }
        if c == '#' {
            while k < chars.len() && chars[k] != '\n' {
                k += 1;
            }
            continue;
        }
        let start = k;
        if c.is_ascii_digit() {
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let s: String = chars[start..k].iter().collect();
            out.push(Token { tok: Tok::Int(BigInt::from_str(&s).unwrap()), pos });
        } else if c.is_ascii_alphabetic() || c == '_' {
            while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_' || chars[k] == '-') {
                // a hyphen belongs to the name only when a letter follows
                if chars[k] == '-' && !chars.get(k + 1).is_some_and(|d| d.is_ascii_alphabetic()) {
                    break;
                }
                k += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[start..k].iter().collect()), pos });
        } else if "/+-*^[],{};()|':".contains(c) {
            k += 1;
            out.push(Token { tok: Tok::Punct(c), pos });
        } else {
            return Err(CliError::syntax(pos, format!("unexpected character `{}`", c)));
        }
        col += k - start;
    }
    out.push(Token { tok: Tok::Eof, pos: Pos { line, col } });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
    dim: usize,
}

type R<T> = Result<T, CliError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> R<T> {
        Err(CliError::syntax(self.pos(), format!("expected {}, found {}", expected, describe(self.peek()))))
    }

    fn is_punct(&self, c: char) -> bool {
        self.peek() == &Tok::Punct(c)
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn punct(&mut self, c: char) -> R<()> {
        if self.is_punct(c) {
            self.bump();
            Ok(())
        } else {
            self.fail(&format!("`{}`", c))
        }
    }

    fn kw(&mut self, kw: &str) -> R<()> {
        if self.is_kw(kw) {
            self.bump();
            Ok(())
        } else {
            self.fail(&format!("`{}`", kw))
        }
    }

    fn ident(&mut self) -> R<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.fail("a name"),
        }
    }

    fn reference(&mut self) -> R<Reference> {
        let pos = self.pos();
        Ok(Reference { pos, name: self.ident()? })
    }

    fn uint(&mut self) -> R<u32> {
        match self.peek().clone() {
            Tok::Int(n) => {
                let pos = self.pos();
                self.bump();
                u32::try_from(&n).map_err(|_| CliError::syntax(pos, format!("integer {} is too large", n)))
            }
            _ => self.fail("a non-negative integer"),
        }
    }

    fn unsigned_rational(&mut self) -> R<BigRational> {
        let n = match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                n
            }
            _ => return self.fail("a number"),
        };
        if self.is_punct('/') {
            self.bump();
            let pos = self.pos();
            let d = match self.peek().clone() {
                Tok::Int(d) => {
                    self.bump();
                    d
                }
                _ => return self.fail("a denominator"),
            };
            if d == BigInt::from(0) {
                return Err(CliError::syntax(pos, "zero denominator"));
            }
            Ok(BigRational::new(n, d))
        } else {
            Ok(BigRational::from_integer(n))
        }
    }

    fn rational(&mut self) -> R<BigRational> {
        if self.is_punct('-') {
            self.bump();
            Ok(-self.unsigned_rational()?)
        } else {
            self.unsigned_rational()
        }
    }

    /// Inside parentheses: `p/q`, `r/s i`, `p/q+r/s i`, `p/q-i`, `i`.
    fn complex_body(&mut self) -> R<CRational> {
        if self.is_kw("i") {
            self.bump();
            return Ok(CRational::i());
        }
        if self.is_punct('-') && matches!(self.peek2(), Tok::Ident(s) if s == "i") {
            self.bump();
            self.bump();
            return Ok(-CRational::i());
        }
        let first = self.rational()?;
        if self.is_kw("i") {
            self.bump();
            return Ok(CRational::new(BigRational::from_integer(0.into()), first));
        }
        if self.is_punct('+') || self.is_punct('-') {
            let neg = self.is_punct('-');
            self.bump();
            let im = if self.is_kw("i") { BigRational::from_integer(1.into()) } else { self.unsigned_rational()? };
            self.kw("i")?;
            return Ok(CRational::new(first, if neg { -im } else { im }));
        }
        Ok(CRational::from_real(first))
    }

    fn scalar(&mut self) -> R<CRational> {
        if self.is_punct('(') {
            self.bump();
            let c = self.complex_body()?;
            self.punct(')')?;
            Ok(c)
        } else {
            Ok(CRational::from_real(self.rational()?))
        }
    }

    fn multi_index(&mut self) -> R<Vec<u32>> {
        self.punct('[')?;
        let mut v = vec![self.uint()?];
        while self.is_punct(',') {
            self.bump();
            v.push(self.uint()?);
        }
        self.punct(']')?;
        Ok(v)
    }

    fn signed<T>(&mut self, mut item: impl FnMut(&mut Self) -> R<T>, negate: impl Fn(&mut T)) -> R<Vec<T>> {
        let mut v = vec![item(self)?];
        loop {
            if self.is_punct('+') {
                self.bump();
                v.push(item(self)?);
            } else if self.is_punct('-') {
                self.bump();
                let mut t = item(self)?;
                negate(&mut t);
                v.push(t);
            } else {
                return Ok(v);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        self.is_kw("xi") || self.is_punct('|')
    }

    /// `[coeff] [* xi^[α]] [* |xi|^c]`; a missing coefficient is 1 and a
    /// missing multi-index is zero.
    fn term(&mut self) -> R<TermAst> {
        let pos = self.pos();
        let mut coeff = CRational::one();
        if self.is_punct('-') && !matches!(self.peek2(), Tok::Int(_)) {
            self.bump();
            coeff = -coeff;
        }
        let mut alpha = None;
        let mut exponent = None;
        let mut need_factor = true;
        if !self.starts_factor() {
            coeff = &coeff * &self.scalar()?;
            if !self.is_punct('*') {
                need_factor = false;
            } else {
                self.bump();
            }
        }
        while need_factor {
            let fpos = self.pos();
            if self.is_kw("xi") {
                self.bump();
                self.punct('^')?;
                if alpha.replace(self.multi_index()?).is_some() {
                    return Err(CliError::syntax(fpos, "`xi^[..]` appears twice in one term"));
                }
            } else if self.is_punct('|') {
                self.bump();
                self.kw("xi")?;
                self.punct('|')?;
                self.punct('^')?;
                if exponent.replace(self.scalar()?).is_some() {
                    return Err(CliError::syntax(fpos, "`|xi|^c` appears twice in one term"));
                }
            } else {
                return self.fail("`xi^[..]` or `|xi|^c`");
            }
            need_factor = self.is_punct('*');
            if need_factor {
                self.bump();
            }
        }
        let alpha = alpha.unwrap_or_else(|| vec![0; self.dim]);
        Ok(TermAst { pos, coeff, alpha, exponent: exponent.unwrap_or_else(CRational::zero) })
    }

    fn terms_block(&mut self) -> R<Vec<TermAst>> {
        self.punct('{')?;
        if self.is_punct('}') {
            self.bump();
            return Ok(Vec::new());
        }
        let v = self.signed(|p| p.term(), |t| t.coeff = -t.coeff.clone())?;
        self.punct('}')?;
        Ok(v)
    }

    fn cut_factor(&mut self) -> R<CutFactor> {
        self.kw("h")?;
        let mut derivative = 0;
        if self.is_punct('(') {
            self.bump();
            derivative = self.uint()?;
            self.punct(')')?;
        } else {
            while self.is_punct('\'') {
                self.bump();
                derivative += 1;
            }
        }
        let mut power = 1;
        if self.is_punct('^') {
            self.bump();
            power = self.uint()?;
        }
        Ok(CutFactor { derivative, power })
    }

    fn symbol(&mut self) -> R<SymbolDecl> {
        let pos = self.pos();
        self.kw("symbol")?;
        let name = self.ident()?;
        self.punct('{')?;
        let mut body = Vec::new();
        while !self.is_punct('}') {
            let p = self.pos();
            match self.peek() {
                Tok::Ident(s) if s == "order" => {
                    self.bump();
                    body.push(SymbolStmt::Order(p, self.scalar()?));
                    self.punct(';')?;
                }
                Tok::Ident(s) if s == "cutoff" => {
                    self.bump();
                    let c = if self.is_kw("sharp") {
                        self.bump();
                        CutoffAst::Sharp
                    } else if self.is_kw("spline") {
                        self.bump();
                        if self.is_punct(';') {
                            CutoffAst::Spline(None)
                        } else {
                            CutoffAst::Spline(Some(self.scalar()?))
                        }
                    } else {
                        return self.fail("`sharp` or `spline`");
                    };
                    body.push(SymbolStmt::Cutoff(p, c));
                    self.punct(';')?;
                }
                Tok::Ident(s) if s == "layer" => {
                    self.bump();
                    let j = self.uint()?;
                    body.push(SymbolStmt::Layer(p, j, self.terms_block()?));
                }
                Tok::Ident(s) if s == "poly" => {
                    self.bump();
                    body.push(SymbolStmt::Poly(p, self.terms_block()?));
                }
                Tok::Ident(s) if s == "part" => {
                    self.bump();
                    let mut f = vec![self.cut_factor()?];
                    while self.is_punct('*') {
                        self.bump();
                        f.push(self.cut_factor()?);
                    }
                    body.push(SymbolStmt::Part(p, f, self.terms_block()?));
                }
                Tok::Ident(s) if s == "remainder" => {
                    self.bump();
                    body.push(SymbolStmt::Remainder(p, self.terms_block()?));
                }
                _ => return self.fail("`order`, `cutoff`, `layer`, `poly`, `part`, `remainder` or `}`"),
            }
        }
        self.punct('}')?;
        Ok(SymbolDecl { pos, name, body })
    }

    fn family(&mut self) -> R<FamilyDecl> {
        let pos = self.pos();
        self.kw("family")?;
        let name = self.ident()?;
        self.punct('{')?;
        let mut body = Vec::new();
        while !self.is_punct('}') {
            let p = self.pos();
            match self.peek() {
                Tok::Ident(s) if s == "base" => {
                    self.bump();
                    body.push(FamilyStmt::Base(self.reference()?));
                    self.punct(';')?;
                }
                Tok::Ident(s) if s == "remainder" => {
                    self.bump();
                    body.push(FamilyStmt::Remainder(self.reference()?));
                    self.punct(';')?;
                }
                Tok::Ident(s) if s == "beta" => {
                    self.bump();
                    body.push(FamilyStmt::Beta(p, self.scalar()?));
                    self.punct(';')?;
                }
                Tok::Ident(s) if s == "order" => {
                    self.bump();
                    body.push(FamilyStmt::Order(p, self.scalar()?));
                    self.punct(';')?;
                }
                Tok::Ident(s) if s == "profile" => {
                    self.bump();
                    let j = self.uint()?;
                    self.punct('{')?;
                    let mut coeffs = Vec::new();
                    while !self.is_punct('}') {
                        self.kw("z")?;
                        self.punct('^')?;
                        let m = self.uint()?;
                        coeffs.push((m, self.terms_block()?));
                    }
                    self.punct('}')?;
                    body.push(FamilyStmt::Profile(p, j, coeffs));
                }
                _ => return self.fail("`base`, `beta`, `order`, `profile`, `remainder` or `}`"),
            }
        }
        self.punct('}')?;
        Ok(FamilyDecl { pos, name, body })
    }

    fn coeff_term(&mut self) -> R<CoeffTermAst> {
        let pos = self.pos();
        let coeff = self.scalar()?;
        self.punct('*')?;
        self.kw("x")?;
        self.punct('^')?;
        let gamma = self.multi_index()?;
        let mut rate = 0;
        if self.is_punct('*') {
            self.bump();
            self.kw("exp")?;
            self.punct('(')?;
            self.punct('-')?;
            rate = self.uint()?;
            self.punct('|')?;
            self.kw("x")?;
            self.punct('|')?;
            self.punct('^')?;
            let p = self.pos();
            if self.uint()? != 2 {
                return Err(CliError::syntax(p, "only exp(-k|x|^2) is supported"));
            }
            self.punct(')')?;
            if rate == 0 {
                return Err(CliError::syntax(pos, "the Gaussian rate must be positive"));
            }
        }
        Ok(CoeffTermAst { pos, coeff, gamma, rate })
    }

    fn tensor(&mut self) -> R<TensorDecl> {
        let pos = self.pos();
        self.kw("tensor")?;
        let name = self.ident()?;
        self.punct('{')?;
        let mut pairs = Vec::new();
        while !self.is_punct('}') {
            self.kw("pair")?;
            let symbol = self.reference()?;
            self.punct('{')?;
            let coefficient = self.signed(|p| p.coeff_term(), |t| t.coeff = -t.coeff.clone())?;
            self.punct('}')?;
            pairs.push(PairAst { symbol, coefficient });
        }
        self.punct('}')?;
        Ok(TensorDecl { pos, name, pairs })
    }

    fn config(&mut self) -> R<Item> {
        let pos = self.pos();
        self.kw("config")?;
        self.punct('{')?;
        let mut body = Vec::new();
        while !self.is_punct('}') {
            let p = self.pos();
            let key = self.ident()?;
            let stmt = match key.as_str() {
                "norm" => ConfigStmt::Norm(p, self.ident()?),
                "truncation" => ConfigStmt::Truncation(p, self.uint()?),
                "eta" => {
                    let mut v = vec![self.scalar()?];
                    while !self.is_punct(';') {
                        v.push(self.scalar()?);
                    }
                    ConfigStmt::Eta(p, v)
                }
                "tolerance" => ConfigStmt::Tolerance(p, self.scalar()?),
                "schedule" => {
                    let kind = self.ident()?;
                    let s = match kind.as_str() {
                        "default" => ScheduleAst::Default,
                        "geometric" => ScheduleAst::Geometric(self.scalar()?, self.scalar()?, self.uint()?),
                        "chebyshev" => ScheduleAst::Chebyshev(self.scalar()?, self.scalar()?, self.uint()?),
                        _ => return Err(CliError::syntax(p, format!("unknown schedule `{}`", kind))),
                    };
                    ConfigStmt::Schedule(p, s)
                }
                _ => return Err(CliError::syntax(p, format!("unknown config key `{}`", key))),
            };
            self.punct(';')?;
            body.push(stmt);
        }
        self.punct('}')?;
        Ok(Item::Config(pos, body))
    }

    fn document(&mut self) -> R<Document> {
        self.kw("dim")?;
        let p = self.pos();
        let dim = self.uint()? as usize;
        self.dim = dim;
        if dim < 2 {
            return Err(CliError::invariant(p, "the dimension must be at least 2"));
        }
        self.punct(';')?;
        let mut items = Vec::new();
        loop {
            let item = match self.peek() {
                Tok::Eof => break,
                Tok::Ident(s) if s == "symbol" => Item::Symbol(self.symbol()?),
                Tok::Ident(s) if s == "family" => Item::Family(self.family()?),
                Tok::Ident(s) if s == "tensor" => Item::Tensor(self.tensor()?),
                Tok::Ident(s) if s == "config" => self.config()?,
                _ => return self.fail("`symbol`, `family`, `tensor` or `config`"),
            };
            items.push(item);
        }
        Ok(Document { dim, items })
    }
}

/// Parse document text. Only syntax is checked here; see `resolve` for
/// references and symbol invariants.
pub fn parse_syntax(src: &str) -> Result<Document, CliError> {
    let toks = lex(src)?;
    Parser { toks, at: 0, dim: 0 }.document()
}
