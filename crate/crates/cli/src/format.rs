//! Canonical text of a document. `parse(format(d)) == d` for every parsed `d`.

use crate::ast::*;
use psicalc::CRational;
use std::fmt::Write;

fn scalar(c: &CRational) -> String {
    if c.is_real() {
        c.to_string()
    } else {
        format!("({})", c)
    }
}

fn multi(a: &[u32]) -> String {
    let v: Vec<String> = a.iter().map(|x| x.to_string()).collect();
    format!("[{}]", v.join(","))
}

fn term(t: &TermAst) -> String {
    let mut s = format!("{} * xi^{}", scalar(&t.coeff), multi(&t.alpha));
    if !t.exponent.is_zero() {
        write!(s, " * |xi|^{}", scalar(&t.exponent)).unwrap();
    }
    s
}

fn terms(ts: &[TermAst]) -> String {
    if ts.is_empty() {
        return "{ }".into();
    }
    let v: Vec<String> = ts.iter().map(term).collect();
    format!("{{ {} }}", v.join(" + "))
}

fn cut_factor(f: &CutFactor) -> String {
    let mut s = match f.derivative {
        0 => "h".to_string(),
        1 => "h'".to_string(),
        2 => "h''".to_string(),
        k => format!("h({})", k),
    };
    if f.power != 1 {
        write!(s, "^{}", f.power).unwrap();
    }
    s
}

fn coeff_term(t: &CoeffTermAst) -> String {
    let mut s = format!("{} * x^{}", scalar(&t.coeff), multi(&t.gamma));
    if t.rate > 0 {
        write!(s, " * exp(-{}|x|^2)", t.rate).unwrap();
    }
    s
}

fn symbol(out: &mut String, d: &SymbolDecl) {
    writeln!(out, "symbol {} {{", d.name).unwrap();
    for st in &d.body {
        let line = match st {
            SymbolStmt::Order(_, a) => format!("order {};", scalar(a)),
            SymbolStmt::Cutoff(_, CutoffAst::Sharp) => "cutoff sharp;".into(),
            SymbolStmt::Cutoff(_, CutoffAst::Spline(None)) => "cutoff spline;".into(),
            SymbolStmt::Cutoff(_, CutoffAst::Spline(Some(r))) => format!("cutoff spline {};", scalar(r)),
            SymbolStmt::Layer(_, j, ts) => format!("layer {} {}", j, terms(ts)),
            SymbolStmt::Poly(_, ts) => format!("poly {}", terms(ts)),
            SymbolStmt::Part(_, fs, ts) => {
                let f: Vec<String> = fs.iter().map(cut_factor).collect();
                format!("part {} {}", f.join(" * "), terms(ts))
            }
            SymbolStmt::Remainder(_, ts) => format!("remainder {}", terms(ts)),
        };
        writeln!(out, "  {}", line).unwrap();
    }
    out.push_str("}\n");
}

fn family(out: &mut String, d: &FamilyDecl) {
    writeln!(out, "family {} {{", d.name).unwrap();
    for st in &d.body {
        match st {
            FamilyStmt::Base(r) => writeln!(out, "  base {};", r.name).unwrap(),
            FamilyStmt::Remainder(r) => writeln!(out, "  remainder {};", r.name).unwrap(),
            FamilyStmt::Beta(_, b) => writeln!(out, "  beta {};", scalar(b)).unwrap(),
            FamilyStmt::Order(_, a) => writeln!(out, "  order {};", scalar(a)).unwrap(),
            FamilyStmt::Profile(_, j, cs) => {
                writeln!(out, "  profile {} {{", j).unwrap();
                for (m, ts) in cs {
                    writeln!(out, "    z^{} {}", m, terms(ts)).unwrap();
                }
                out.push_str("  }\n");
            }
        }
    }
    out.push_str("}\n");
}

fn tensor(out: &mut String, d: &TensorDecl) {
    writeln!(out, "tensor {} {{", d.name).unwrap();
    for p in &d.pairs {
        let v: Vec<String> = p.coefficient.iter().map(coeff_term).collect();
        writeln!(out, "  pair {} {{ {} }}", p.symbol.name, v.join(" + ")).unwrap();
    }
    out.push_str("}\n");
}

fn config(out: &mut String, body: &[ConfigStmt]) {
    out.push_str("config {\n");
    for st in body {
        let line = match st {
            ConfigStmt::Norm(_, n) => format!("norm {};", n),
            ConfigStmt::Truncation(_, n) => format!("truncation {};", n),
            ConfigStmt::Eta(_, v) => {
                let s: Vec<String> = v.iter().map(scalar).collect();
                format!("eta {};", s.join(" "))
            }
            ConfigStmt::Tolerance(_, t) => format!("tolerance {};", scalar(t)),
            ConfigStmt::Schedule(_, ScheduleAst::Default) => "schedule default;".into(),
            ConfigStmt::Schedule(_, ScheduleAst::Geometric(a, b, c)) => {
                format!("schedule geometric {} {} {};", scalar(a), scalar(b), c)
            }
            ConfigStmt::Schedule(_, ScheduleAst::Chebyshev(a, b, c)) => {
                format!("schedule chebyshev {} {} {};", scalar(a), scalar(b), c)
            }
        };
        writeln!(out, "  {}", line).unwrap();
    }
    out.push_str("}\n");
}

pub fn format_document(d: &Document) -> String {
    let mut out = format!("dim {};\n", d.dim);
    for item in &d.items {
        out.push('\n');
        match item {
            Item::Symbol(s) => symbol(&mut out, s),
            Item::Family(f) => family(&mut out, f),
            Item::Tensor(t) => tensor(&mut out, t),
            Item::Config(_, c) => config(&mut out, c),
        }
    }
    out
}
