//! Turns a parsed document into library objects, checking references and
//! symbol invariants.

use crate::ast::*;
use crate::error::CliError;
use psicalc::mero::HolomorphicFamily;
use psicalc::opcalc::{CoefficientFunction, TensorSymbol};
use psicalc::reg::NormPreset;
use psicalc::sphere::SpherePolynomial;
use psicalc::symalg::{CutMono, HomogeneousComponent, Term};
use psicalc::{CRational, ClassicalSymbol, MultiIndex, Poly, RadialCutoff};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct Config {
    pub norm: NormPreset,
    pub truncation: Option<u32>,
    pub eta: Option<Vec<CRational>>,
    pub schedule: ScheduleAst,
    pub tolerance: f64,
}

impl Default for Config {
    fn default() -> Self {
        Config { norm: NormPreset::Raw, truncation: None, eta: None, schedule: ScheduleAst::Default, tolerance: 1e-6 }
    }
}

#[derive(Clone, Debug)]
pub struct Resolved {
    pub dim: usize,
    pub symbols: BTreeMap<String, ClassicalSymbol>,
    pub families: BTreeMap<String, HolomorphicFamily>,
    pub tensors: BTreeMap<String, TensorSymbol>,
    pub config: Config,
}

type R<T> = Result<T, CliError>;

fn check_alpha(pos: Pos, n: usize, alpha: &[u32]) -> R<MultiIndex> {
    if alpha.len() != n {
        return Err(CliError::invariant(pos, format!("multi-index {:?} has length {}, expected {}", alpha, alpha.len(), n)));
    }
    Ok(MultiIndex(alpha.to_vec()))
}

fn plain_poly(n: usize, ts: &[TermAst], what: &str) -> R<Poly> {
    let mut p = Poly::zero(n);
    for t in ts {
        if !t.exponent.is_zero() {
            return Err(CliError::invariant(t.pos, format!("{} terms carry no |xi| power", what)));
        }
        p.add_term(check_alpha(t.pos, n, &t.alpha)?, &t.coeff);
    }
    Ok(p)
}

fn to_terms(n: usize, ts: &[TermAst]) -> R<Vec<(Pos, Term)>> {
    ts.iter()
        .map(|t| Ok((t.pos, Term::new(t.coeff.clone(), check_alpha(t.pos, n, &t.alpha)?, t.exponent.clone()))))
        .collect()
}

/// Components grouped by degree, in first-appearance order.
fn by_degree(n: usize, ts: &[TermAst]) -> R<Vec<(Pos, HomogeneousComponent)>> {
    let mut groups: Vec<(CRational, Pos, Vec<Term>)> = Vec::new();
    for (pos, t) in to_terms(n, ts)? {
        let d = t.degree();
        match groups.iter_mut().find(|g| g.0 == d) {
            Some(g) => g.2.push(t),
            None => groups.push((d, pos, vec![t])),
        }
    }
    groups
        .into_iter()
        .map(|(d, pos, ts)| {
            Ok((pos, HomogeneousComponent::from_terms(n, &d, &ts).map_err(|e| CliError::invariant(pos, e.to_string()))?))
        })
        .collect()
}

fn cut_mono(fs: &[CutFactor]) -> CutMono {
    let mut m = BTreeMap::new();
    for f in fs {
        if f.power > 0 {
            *m.entry(f.derivative).or_insert(0) += f.power;
        }
    }
    CutMono(m)
}

fn symbol(n: usize, d: &SymbolDecl) -> R<ClassicalSymbol> {
    let mut order = None;
    let mut cutoff = RadialCutoff::SharpShell;
    for st in &d.body {
        match st {
            SymbolStmt::Order(p, a) => {
                if order.replace(a.clone()).is_some() {
                    return Err(CliError::invariant(*p, format!("symbol `{}` has two orders", d.name)));
                }
            }
            SymbolStmt::Cutoff(p, c) => {
                cutoff = match c {
                    CutoffAst::Sharp => RadialCutoff::SharpShell,
                    CutoffAst::Spline(None) => RadialCutoff::spline(),
                    CutoffAst::Spline(Some(r)) => {
                        let ok = r.is_real() && r.re > num_rational::BigRational::from_integer(0.into())
                            && r.re < num_rational::BigRational::from_integer(1.into());
                        if !ok {
                            return Err(CliError::invariant(*p, "the spline inner radius lies in (0, 1)"));
                        }
                        RadialCutoff::Spline { inner: r.re.clone() }
                    }
                }
            }
            _ => {}
        }
    }
    let order = order.ok_or_else(|| CliError::invariant(d.pos, format!("symbol `{}` has no order", d.name)))?;
    let mut s = ClassicalSymbol::new(n, order.clone(), cutoff).map_err(|e| CliError::invariant(d.pos, e.to_string()))?;
    for st in &d.body {
        match st {
            SymbolStmt::Order(..) | SymbolStmt::Cutoff(..) => {}
            SymbolStmt::Layer(p, j, ts) => {
                let want = &order - &CRational::from_int(*j as i64);
                for (pos, t) in to_terms(n, ts)? {
                    if t.degree() != want {
                        return Err(CliError::invariant(
                            pos,
                            format!("term `{}` has degree {} but layer {} has degree {}", t, t.degree(), j, want),
                        ));
                    }
                }
                let terms: Vec<Term> = to_terms(n, ts)?.into_iter().map(|(_, t)| t).collect();
                let g = HomogeneousComponent::from_terms(n, &want, &terms).map_err(|e| CliError::invariant(*p, e.to_string()))?;
                s.add_part(CutMono::h_pow(1), g).map_err(|e| CliError::invariant(*p, e.to_string()))?;
            }
            SymbolStmt::Poly(p, ts) => {
                let poly = plain_poly(n, ts, "poly")?;
                for (_, h) in poly.homogeneous_parts() {
                    let g = HomogeneousComponent::from_poly(&h, &CRational::zero());
                    s.add_part(CutMono::one(), g).map_err(|e| CliError::invariant(*p, e.to_string()))?;
                }
            }
            SymbolStmt::Part(p, fs, ts) => {
                let m = cut_mono(fs);
                for (pos, g) in by_degree(n, ts)? {
                    s.add_part(m.clone(), g).map_err(|e| CliError::invariant(pos, e.to_string()))?;
                }
                let _ = p;
            }
            SymbolStmt::Remainder(p, ts) => {
                let poly = plain_poly(n, ts, "remainder")?;
                s.add_gaussian(&poly).map_err(|e| CliError::invariant(*p, e.to_string()))?;
            }
        }
    }
    s.validate().map_err(|e| CliError::invariant(d.pos, format!("symbol `{}`: {}", d.name, e)))?;
    Ok(s)
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, r: &Reference, kind: &'static str) -> R<&'a T> {
    map.get(&r.name).ok_or_else(|| CliError::Unresolved { pos: r.pos, kind, name: r.name.clone() })
}

fn family(n: usize, d: &FamilyDecl, symbols: &BTreeMap<String, ClassicalSymbol>) -> R<HolomorphicFamily> {
    let mut base = None;
    let mut beta = None;
    let mut order = None;
    let mut remainder = None;
    let mut layers: BTreeMap<(u32, u32), Vec<SpherePolynomial>> = BTreeMap::new();
    for st in &d.body {
        match st {
            FamilyStmt::Base(r) => base = Some((r.pos, lookup(symbols, r, "symbol")?.clone())),
            FamilyStmt::Remainder(r) => remainder = Some(lookup(symbols, r, "symbol")?.clone()),
            FamilyStmt::Beta(_, b) => beta = Some(b.clone()),
            FamilyStmt::Order(_, a) => order = Some(a.clone()),
            FamilyStmt::Profile(p, j, cs) => {
                let top = cs.iter().map(|(m, _)| *m).max().unwrap_or(0) as usize;
                let mut v = vec![SpherePolynomial::zero(n); top + 1];
                for (m, ts) in cs {
                    let sp = SpherePolynomial::from_poly(&plain_poly(n, ts, "profile")?);
                    v[*m as usize] = v[*m as usize].add(&sp);
                }
                if layers.insert((*j, 1), v).is_some() {
                    return Err(CliError::invariant(*p, format!("profile {} given twice", j)));
                }
            }
        }
    }
    let beta = beta.ok_or_else(|| CliError::invariant(d.pos, format!("family `{}` has no beta", d.name)))?;
    if let Some((pos, s)) = base {
        if order.is_some() || !layers.is_empty() || remainder.is_some() {
            return Err(CliError::invariant(pos, "a family is either a twist of `base` or given by profiles"));
        }
        return HolomorphicFamily::twist(&s, beta).map_err(|e| CliError::invariant(pos, e.to_string()));
    }
    let a = order.ok_or_else(|| CliError::invariant(d.pos, format!("family `{}` has no order", d.name)))?;
    let rem = match remainder {
        Some(r) => r,
        None => ClassicalSymbol::new(n, a.clone(), RadialCutoff::SharpShell).map_err(|e| CliError::invariant(d.pos, e.to_string()))?,
    };
    HolomorphicFamily::new(n, a, beta, layers, rem).map_err(|e| CliError::invariant(d.pos, e.to_string()))
}

fn tensor(n: usize, d: &TensorDecl, symbols: &BTreeMap<String, ClassicalSymbol>) -> R<TensorSymbol> {
    let mut t = TensorSymbol::zero(n);
    for p in &d.pairs {
        let s = lookup(symbols, &p.symbol, "symbol")?;
        let mut f = CoefficientFunction::zero(n);
        for c in &p.coefficient {
            f = f.add(&CoefficientFunction::monomial(check_alpha(c.pos, n, &c.gamma)?, c.rate, c.coeff.clone()));
        }
        t.add_pair(&f, s).map_err(|e| CliError::invariant(p.symbol.pos, e.to_string()))?;
    }
    Ok(t)
}

fn config(body: &[ConfigStmt], n: usize, cfg: &mut Config) -> R<()> {
    for st in body {
        match st {
            ConfigStmt::Norm(p, name) => {
                cfg.norm = NormPreset::parse(name)
                    .ok_or_else(|| CliError::invariant(*p, format!("unknown normalisation preset `{}`", name)))?
            }
            ConfigStmt::Truncation(_, k) => cfg.truncation = Some(*k),
            ConfigStmt::Eta(p, v) => {
                if v.len() != n {
                    return Err(CliError::invariant(*p, format!("eta has {} entries, expected {}", v.len(), n)));
                }
                cfg.eta = Some(v.clone());
            }
            ConfigStmt::Schedule(p, s) => {
                let bad = match s {
                    ScheduleAst::Default => false,
                    ScheduleAst::Geometric(a, b, c) | ScheduleAst::Chebyshev(a, b, c) => {
                        !a.is_real() || !b.is_real() || a.re_f64() <= 0.0 || b.re_f64() <= 0.0 || *c < 3
                    }
                };
                if bad {
                    return Err(CliError::invariant(*p, "schedules need positive real parameters and at least 3 radii"));
                }
                cfg.schedule = s.clone();
            }
            ConfigStmt::Tolerance(p, t) => {
                if !t.is_real() || t.re_f64() <= 0.0 {
                    return Err(CliError::invariant(*p, "the tolerance is a positive real number"));
                }
                cfg.tolerance = t.re_f64();
            }
        }
    }
    Ok(())
}

pub fn resolve(doc: &Document) -> R<Resolved> {
    let n = doc.dim;
    let mut out = Resolved {
        dim: n,
        symbols: BTreeMap::new(),
        families: BTreeMap::new(),
        tensors: BTreeMap::new(),
        config: Config::default(),
    };
    let mut seen: BTreeMap<String, ()> = BTreeMap::new();
    let mut claim = |pos: Pos, name: &str| -> R<()> {
        if seen.insert(name.to_string(), ()).is_some() {
            return Err(CliError::invariant(pos, format!("name `{}` is defined twice", name)));
        }
        Ok(())
    };
    // symbols first so that families and tensors may refer forward
    for item in &doc.items {
        if let Item::Symbol(d) = item {
            claim(d.pos, &d.name)?;
            out.symbols.insert(d.name.clone(), symbol(n, d)?);
        }
    }
    for item in &doc.items {
        match item {
            Item::Symbol(_) => {}
            Item::Family(d) => {
                claim(d.pos, &d.name)?;
                let f = family(n, d, &out.symbols)?;
                out.families.insert(d.name.clone(), f);
            }
            Item::Tensor(d) => {
                claim(d.pos, &d.name)?;
                let t = tensor(n, d, &out.symbols)?;
                out.tensors.insert(d.name.clone(), t);
            }
            Item::Config(_, body) => config(body, n, &mut out.config)?,
        }
    }
    Ok(out)
}
