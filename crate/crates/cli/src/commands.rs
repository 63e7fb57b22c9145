//! Command dispatch. Every command reads one document, computes, and fills a
//! [`Report`]; the exit code is derived from the report's assertions.

use crate::ast::{Pos, ScheduleAst};
use crate::error::CliError;
use crate::report::{OracleComparison, Report};
use crate::resolve::Resolved;
use num_complex::Complex64;
use psicalc::mero::{self, HolomorphicFamily};
use psicalc::opcalc::{self, TensorSymbol};
use psicalc::oracle::{numeric_finite_part, Schedule};
use psicalc::reg::{self, FunctionalConfig, NormPreset, RegError};
use psicalc::{CRational, ClassicalSymbol, ExactScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyKind {
    Stokes,
    Translation,
    Kv,
    Ps,
    Brackets,
    Euler,
    Kerres,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Res(String),
    Fpint(String),
    /// Axis is 1-based.
    Defect(String, usize),
    Decompose(String),
    Classify(String),
    Laurent(String),
    Verify(VerifyKind, String, Option<String>),
    Oracle(String),
    Trace(String),
}

#[derive(Clone, Debug)]
pub struct Options {
    pub precision: u32,
    pub norm: Option<NormPreset>,
}

impl Default for Options {
    fn default() -> Self {
        Options { precision: 20, norm: None }
    }
}

type R<T> = Result<T, CliError>;

fn compute<T, E: std::fmt::Display>(r: Result<T, E>) -> R<T> {
    r.map_err(CliError::compute)
}

fn unresolved(kind: &'static str, name: &str) -> CliError {
    CliError::Unresolved { pos: Pos::default(), kind, name: name.into() }
}

struct Ctx<'a> {
    doc: &'a Resolved,
    opts: &'a Options,
    report: Report,
}

impl<'a> Ctx<'a> {
    fn symbol(&self, name: &str) -> R<&'a ClassicalSymbol> {
        self.doc.symbols.get(name).ok_or_else(|| unresolved("symbol", name))
    }

    fn family(&self, name: &str) -> R<&'a HolomorphicFamily> {
        self.doc.families.get(name).ok_or_else(|| unresolved("family", name))
    }

    fn tensor(&self, name: &str) -> R<&'a TensorSymbol> {
        self.doc.tensors.get(name).ok_or_else(|| unresolved("tensor", name))
    }

    fn norm(&self) -> NormPreset {
        self.opts.norm.unwrap_or(self.doc.config.norm)
    }

    fn functional(&self) -> FunctionalConfig {
        FunctionalConfig::preset(self.norm(), self.doc.dim)
    }

    fn value(&mut self, name: &str, v: &ExactScalar) {
        self.report.value(name, v, self.opts.precision);
    }
}

pub fn run(cmd: &Command, doc: &Resolved, opts: &Options, echo: Vec<String>) -> R<Report> {
    let mut c = Ctx { doc, opts, report: Report::new(echo) };
    match cmd {
        Command::Res(s) => res(&mut c, s)?,
        Command::Fpint(s) => fpint(&mut c, s)?,
        Command::Defect(s, axis) => defect(&mut c, s, *axis)?,
        Command::Decompose(s) => decompose(&mut c, s)?,
        Command::Classify(s) => classify(&mut c, s)?,
        Command::Laurent(f) => laurent(&mut c, f)?,
        Command::Verify(kind, t, second) => match kind {
            VerifyKind::Stokes => verify_stokes(&mut c, t)?,
            VerifyKind::Translation => verify_translation(&mut c, t)?,
            VerifyKind::Kv => verify_kv(&mut c, t)?,
            VerifyKind::Ps => verify_ps(&mut c, t)?,
            VerifyKind::Brackets => verify_brackets(&mut c, t, second.as_deref())?,
            VerifyKind::Euler => verify_euler(&mut c, t)?,
            VerifyKind::Kerres => verify_kerres(&mut c, t)?,
        },
        Command::Oracle(s) => oracle(&mut c, s)?,
        Command::Trace(t) => trace(&mut c, t)?,
    }
    Ok(c.report)
}

fn res(c: &mut Ctx, name: &str) -> R<()> {
    let s = c.symbol(name)?;
    let cfg = c.functional();
    c.report.text("normalisation", c.norm().name());
    c.value("residue", &reg::residue(s, &cfg));
    let raw = reg::residue_raw(s);
    c.value("residue (raw)", &raw);
    match reg::log_coefficient(s) {
        Ok(l) => c.report.assert_eq("residue-log-coefficient", &raw, &l),
        Err(RegError::NonExact) => c.report.note("log coefficient not exact for this cutoff"),
        Err(e) => return Err(CliError::compute(e)),
    }
    Ok(())
}

fn fpint(c: &mut Ctx, name: &str) -> R<()> {
    let s = c.symbol(name)?;
    match reg::cutoff_expansion(s) {
        Ok(e) => {
            c.value("cutoff integral", &e.constant);
            c.value("log coefficient", &e.log_coefficient);
            for (k, v) in &e.powers {
                c.value(&format!("coefficient of R^({})", k), v);
            }
        }
        Err(RegError::NonExact) => {
            let v = compute(reg::cutoff_integral_numeric(s))?;
            c.report.text("cutoff integral (numeric)", c64_string(v, c.opts.precision));
            c.report.note("the cutoff model has no exact moments; value from quadrature");
        }
        Err(e) => return Err(CliError::compute(e)),
    }
    Ok(())
}

fn axis_index(s: &ClassicalSymbol, axis: usize) -> R<usize> {
    if axis == 0 || axis > s.dim() {
        return Err(CliError::Usage(format!("axis {} is outside 1..={}", axis, s.dim())));
    }
    Ok(axis - 1)
}

fn stokes_axis(c: &mut Ctx, s: &ClassicalSymbol, i: usize) -> R<ExactScalar> {
    let d = compute(reg::stokes_defect(s, i))?;
    let lhs = compute(reg::cutoff_integral(&compute(s.derivative(i))?))?;
    c.report.assert_eq(&format!("stokes-defect axis {}", i + 1), &lhs, &d);
    Ok(d)
}

fn defect(c: &mut Ctx, name: &str, axis: usize) -> R<()> {
    let s = c.symbol(name)?;
    let i = axis_index(s, axis)?;
    let d = stokes_axis(c, s, i)?;
    c.value(&format!("defect axis {}", axis), &d);
    Ok(())
}

fn decompose(c: &mut Ctx, name: &str) -> R<()> {
    let s = c.symbol(name)?;
    let dec = compute(reg::derivative_decompose(&s.asymptotic_only()))?;
    for (i, t) in dec.tau.iter().enumerate() {
        c.report.text(&format!("tau {}", i + 1), t);
    }
    for (d, m) in &dec.layer_report {
        c.report.text(&format!("degree {}", d), format!("{:?}", m));
    }
    c.report.text("shell correction", &dec.shell_correction);
    let back = compute(reg::reassemble(&dec))?;
    let diff = compute(back.sub(&s.asymptotic_only()))?;
    c.report.assert_that("kerres-reassembly", "sum of derivatives", "asymptotic part", diff.is_zero());
    Ok(())
}

fn classify(c: &mut Ctx, name: &str) -> R<()> {
    let s = c.symbol(name)?;
    c.report.text("dimension", s.dim());
    c.report.text("order", s.order());
    c.report.text("cutoff", s.cutoff().name());
    c.report.text("parity", s.parity());
    let class = reg::stokes_class(s).map(|k| k.to_string()).unwrap_or_else(|| "none".into());
    c.report.text("stokes class", class);
    let degs: Vec<String> = s.asymptotic_degrees().iter().map(|d| d.to_string()).collect();
    c.report.text("asymptotic degrees", format!("[{}]", degs.join(", ")));
    c.report.text("smoothing", s.is_smoothing());
    Ok(())
}

fn laurent(c: &mut Ctx, name: &str) -> R<()> {
    let f = c.family(name)?;
    let l = compute(f.laurent())?;
    c.report.text("order", format!("{} + ({}) z", f.a(), f.beta()));
    for p in &l.poles {
        c.value(&format!("residue at z = {} (layer {})", p.location, p.layer), &p.residue);
    }
    c.value("residue at 0", &l.residue_at_0);
    c.value("finite part at 0", &l.finite_part_at_0);
    if let Some(class) = compute(mero::family_class(f))? {
        c.report.text("class of sigma(0)", class);
        match mero::trace_continuity_check(f, class) {
            Ok(r) => c.report.assert_that(
                "trace-continuity",
                format!("residue {}, limit {}", r.residue_at_0, r.limit),
                format!("residue 0, limit {}", r.cutoff_integral),
                r.holds,
            ),
            Err(e) => c.report.note(format!("continuity not checked: {}", e)),
        }
    }
    Ok(())
}

fn verify_stokes(c: &mut Ctx, name: &str) -> R<()> {
    let s = c.symbol(name)?;
    let class = reg::stokes_class(s);
    for i in 0..s.dim() {
        let d = stokes_axis(c, s, i)?;
        if class.is_some() {
            c.report.assert_eq(&format!("stokes-class-closedness axis {}", i + 1), &d, &ExactScalar::zero());
        }
    }
    match class {
        Some(k) => c.report.text("stokes class", k),
        None => c.report.note("symbol is outside the Stokes classes; defects need not vanish"),
    }
    Ok(())
}

fn verify_translation(c: &mut Ctx, name: &str) -> R<()> {
    let s = c.symbol(name)?;
    let eta = c.doc.config.eta.clone().unwrap_or_else(|| vec![CRational::ratio(1, 2); s.dim()]);
    let big_n = c.doc.config.truncation.unwrap_or(3);
    let r = compute(reg::translation_invariance_check(s, &eta, big_n))?;
    if let Some(k) = r.class {
        c.report.text("stokes class", k);
    }
    for e in &r.entries {
        c.report.assert_that(&format!("translation-derivative {:?}", e.alpha), &e.value, "0", e.is_zero);
    }
    c.report.text("predicted difference", &r.predicted_difference);
    c.report.text("remainder order bound", &r.remainder_bound);
    Ok(())
}

fn verify_kv(c: &mut Ctx, name: &str) -> R<()> {
    let f = c.family(name)?;
    let r = compute(mero::kv_residue_check(f))?;
    c.report.assert_eq("kv-residue", &r.lhs, &r.rhs);
    c.value("residue at 0", &r.lhs);
    Ok(())
}

fn verify_ps(c: &mut Ctx, name: &str) -> R<()> {
    let f = c.family(name)?;
    let r = compute(mero::ps_finite_part_check(f))?;
    c.report.assert_eq("ps-finite-part", &r.lhs, &r.rhs);
    c.value("finite part at 0", &r.lhs);
    Ok(())
}

fn verify_brackets(c: &mut Ctx, name: &str, second: Option<&str>) -> R<()> {
    let p = c.tensor(name)?;
    let r = compute(opcalc::coordinate_bracket_identity(p))?;
    c.report.text("calibrated factor", &r.calibrated_factor);
    for (i, ok) in r.coordinate.iter().enumerate() {
        c.report.assert_that(
            &format!("coordinate-bracket axis {}", i + 1),
            format!("[x{}, p]", i + 1),
            format!("({}) d_xi{} p", r.calibrated_factor, i + 1),
            *ok,
        );
    }
    for (i, ok) in r.derivation.iter().enumerate() {
        c.report.assert_that(
            &format!("derivation-bracket axis {}", i + 1),
            format!("[i xi{}, p]", i + 1),
            format!("d_x{} p", i + 1),
            *ok,
        );
    }
    let Some(qn) = second else { return Ok(()) };
    let q = c.tensor(qn)?;
    let (Some(a), Some(b)) = (p.order(), q.order()) else {
        c.report.note("a smoothing factor makes the commutator residue trivially zero");
        return Ok(());
    };
    let n = c.doc.dim as i64;
    let sum = &a + &b;
    let big_n = c.doc.config.truncation.unwrap_or_else(|| {
        let floor = sum.re.floor().to_integer();
        let k: i64 = (&floor + num_bigint::BigInt::from(n + 1)).try_into().unwrap_or(1);
        k.max(1) as u32
    });
    c.report.text("truncation", big_n);
    let comm = compute(opcalc::commutator(p, q, big_n))?;
    let res = compute(opcalc::op_residue(&comm.symbol, &FunctionalConfig::raw()))?;
    c.report.assert_eq("commutator-residue", &res, &ExactScalar::zero());
    match opcalc::bracket_trace_vanishing(p, q, big_n) {
        Ok(t) => c.report.assert_eq("commutator-trace", &t.trace, &ExactScalar::zero()),
        Err(e) => c.report.note(format!("trace of the commutator not checked: {}", e)),
    }
    Ok(())
}

fn verify_euler(c: &mut Ctx, name: &str) -> R<()> {
    let s = c.symbol(name)?;
    for ((m, d), g) in s.parts() {
        let mut lhs = psicalc::HomogeneousComponent::zero(s.dim(), d.clone());
        for i in 0..s.dim() {
            lhs = compute(lhs.add(&g.partial(i).mul_xi(i)))?;
        }
        let rhs = g.scale(d);
        let ok = compute(lhs.add(&rhs.scale(&CRational::from_int(-1))))?.is_zero();
        c.report.assert_that(&format!("euler-homogeneity {} degree {}", m, d), "sum xi_i d_i g", format!("({}) g", d), ok);
    }
    Ok(())
}

fn verify_kerres(c: &mut Ctx, name: &str) -> R<()> {
    let s = c.symbol(name)?;
    let r = reg::residue_raw(s);
    c.report.assert_eq("kerres-residue", &r, &ExactScalar::zero());
    if r.is_zero() {
        decompose(c, name)?;
    } else {
        c.report.note("non-zero residue: no derivative decomposition exists");
    }
    Ok(())
}

fn schedule(c: &Ctx, s: &ClassicalSymbol) -> Schedule {
    match &c.doc.config.schedule {
        ScheduleAst::Default => Schedule::default_for(s),
        ScheduleAst::Geometric(a, b, k) => Schedule::geometric(a.re_f64(), b.re_f64(), *k as usize),
        ScheduleAst::Chebyshev(a, b, k) => Schedule::chebyshev(a.re_f64(), b.re_f64(), *k as usize),
    }
}

pub fn c64_string(z: Complex64, precision: u32) -> String {
    let p = precision.clamp(1, 16) as usize - 1;
    format!("{:.*e} {:+.*e} i", p, z.re, p, z.im)
}

fn oracle(c: &mut Ctx, name: &str) -> R<()> {
    let s = c.symbol(name)?;
    let fit = compute(numeric_finite_part(s, &schedule(c, s)))?;
    let tol = c.doc.config.tolerance;
    let exact = compute(reg::cutoff_expansion(s))?;
    let prec = c.opts.precision;
    for (q, e, v) in [
        ("cutoff-integral", &exact.constant, fit.constant),
        ("log-coefficient", &exact.log_coefficient, fit.log_coefficient),
    ] {
        let ev = e.to_c64();
        let residual = (ev - v).norm() / ev.norm().max(1.0);
        c.report.oracle.push(OracleComparison {
            quantity: q.into(),
            exact: e.to_string(),
            numeric: c64_string(v, prec),
            residual,
            tolerance: tol,
            passed: residual <= tol,
        });
    }
    c.report.text("radii", fit.radii.len());
    c.report.text("fit condition", format!("{:.1e}", fit.condition));
    Ok(())
}

fn trace(c: &mut Ctx, name: &str) -> R<()> {
    let p = c.tensor(name)?;
    let cfg = c.functional();
    c.report.text("normalisation", c.norm().name());
    let classes = compute(opcalc::tensor_class(p))?;
    let names: Vec<String> = classes.iter().map(|k| k.to_string()).collect();
    c.report.text("classes", names.join("; "));
    c.value("canonical trace", &compute(opcalc::op_canonical_trace(p, &cfg))?);
    c.value("residue", &compute(opcalc::op_residue(p, &cfg))?);
    Ok(())
}
