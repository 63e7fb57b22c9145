use num_complex::Complex64;
use psicalc::opcalc::{calibrated_bracket_factor, coordinate_bracket_identity, CoefficientFunction, TensorSymbol};
use psicalc::oracle::{apply_op_numeric, numeric_finite_part, GaussianTest, Schedule};
use psicalc::reg::{cutoff_integral, residue_raw};
use psicalc::symalg::{ClassicalSymbol, RadialCutoff};
use psicalc::{CRational, Poly};
use std::f64::consts::PI;

fn q(p: i64, d: i64) -> CRational {
    CRational::ratio(p, d)
}

fn sym(alpha: &[u32], c: CRational) -> ClassicalSymbol {
    ClassicalSymbol::single_term(alpha.len(), CRational::one(), alpha.to_vec(), c).unwrap()
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

#[test]
fn finite_part_of_constant() {
    let s = sym(&[0, 0, 0], q(0, 1));
    let fit = numeric_finite_part(&s, &Schedule::default_for(&s)).unwrap();
    assert!(rel(fit.constant, Complex64::new(-4.0 * PI / 3.0, 0.0)) < 1e-6);
    assert!(fit.log_coefficient.norm() < 1e-6);
}

#[test]
fn finite_part_of_log_case() {
    let s = sym(&[0, 0, 0], q(-3, 1));
    let fit = numeric_finite_part(&s, &Schedule::default_for(&s)).unwrap();
    assert!(fit.constant.norm() < 1e-6);
    assert!(rel(fit.log_coefficient, Complex64::new(4.0 * PI, 0.0)) < 1e-6);
}

#[test]
fn finite_part_of_convergent_symbol() {
    let s = sym(&[1, 1, 0], q(-6, 1)).add(&sym(&[0, 0, 0], q(-4, 1))).unwrap();
    let fit = numeric_finite_part(&s, &Schedule::default_for(&s)).unwrap();
    let exact = cutoff_integral(&s).unwrap().to_c64();
    assert!(rel(fit.constant, exact) < 1e-6);
    assert!(fit.log_coefficient.norm() < 1e-6);
}

#[test]
fn finite_part_with_shell_terms() {
    let s = sym(&[1, 0, 0], q(-5, 2)).derivative(0).unwrap().derivative(0).unwrap();
    let fit = numeric_finite_part(&s, &Schedule::default_for(&s)).unwrap();
    assert!(rel(fit.constant, cutoff_integral(&s).unwrap().to_c64()) < 1e-6);
    assert!(rel(fit.log_coefficient, residue_raw(&s).to_c64()) < 1e-6);
}

#[test]
fn bracket_sign_is_calibrated() {
    let k = calibrated_bracket_factor().unwrap();
    assert!(k == CRational::i() || k == -CRational::i());
    let s = sym(&[1, 0, 0], q(-2, 1));
    let p = TensorSymbol::from_pair(&CoefficientFunction::gaussian(3), &s).unwrap();
    let r = coordinate_bracket_identity(&p).unwrap();
    assert!(r.holds);
    let flat = TensorSymbol::from_pair(
        &CoefficientFunction::gaussian(3),
        &ClassicalSymbol::polynomial(&Poly::constant(3, q(1, 1)), RadialCutoff::SharpShell).unwrap(),
    )
    .unwrap();
    let x1 = TensorSymbol::coordinate(3, 0, RadialCutoff::SharpShell).unwrap();
    assert!(psicalc::opcalc::commutator(&x1, &flat, 1).unwrap().symbol.is_zero());
}

#[test]
fn bracket_numeric_spot_check() {
    // [x₁, Op(p)]u = κ·Op(∂_{ξ₁}p)u for p = e^{−|x|²} ⊗ χξ₁|ξ|⁻², at x = (0.3, 0, 0)
    let k = calibrated_bracket_factor().unwrap().to_c64();
    let s = sym(&[1, 0, 0], q(-2, 1));
    let p = TensorSymbol::from_pair(&CoefficientFunction::gaussian(3), &s).unwrap();
    let x = [0.3, 0.0, 0.0];
    let u = GaussianTest::new(Poly::constant(3, q(1, 1)));
    let yu = GaussianTest::new(Poly::var(3, 0));
    let tol = 1e-9;
    let lhs = apply_op_numeric(&p, &u, &x, tol).unwrap() * x[0] - apply_op_numeric(&p, &yu, &x, tol).unwrap();
    let rhs = k * apply_op_numeric(&p.xi_partial(0).unwrap(), &u, &x, tol).unwrap();
    assert!((lhs - rhs).norm() < 1e-8, "{} vs {}", lhs, rhs);
}
