use psicalc::reg::{
    cutoff_integral, derivative_decompose, log_coefficient, reassemble, reduce_and_evaluate, residue,
    stokes_defect, translation_invariance_check, DecompositionMethod, ExactIntegral, FunctionalConfig, NormPreset,
    RegError, ZeroBase,
};
use psicalc::symalg::{ClassicalSymbol, RadialCutoff};
use psicalc::{CRational, ExactScalar, Poly};

fn q(p: i64, d: i64) -> CRational {
    CRational::ratio(p, d)
}

fn sym(alpha: &[u32], c: CRational) -> ClassicalSymbol {
    ClassicalSymbol::single_term(alpha.len(), CRational::one(), alpha.to_vec(), c).unwrap()
}

fn four_pi() -> ExactScalar {
    ExactScalar::pi().scale(&q(4, 1))
}

#[test]
fn residue_examples() {
    let raw = FunctionalConfig::raw();
    assert_eq!(residue(&sym(&[0, 0, 0], q(-3, 1)), &raw), four_pi());
    assert!(residue(&sym(&[0, 0, 0], q(-1, 1)), &raw).is_zero());
    let d = sym(&[1, 0, 0], q(-3, 1)).derivative(0).unwrap();
    assert!(residue(&d, &raw).is_zero());
}

#[test]
fn residue_presets_scale_linearly() {
    let s = sym(&[0, 0, 0], q(-3, 1));
    let cfg = FunctionalConfig::preset(NormPreset::SqrtTwoPi, 3);
    assert_eq!(residue(&s, &cfg), &four_pi() * &cfg.residue_normalisation);
}

#[test]
fn cutoff_integral_examples() {
    assert_eq!(cutoff_integral(&sym(&[0, 0, 0], q(-4, 1))).unwrap(), four_pi());
    let one = sym(&[0, 0, 0], q(0, 1));
    assert_eq!(cutoff_integral(&one).unwrap(), four_pi().scale(&q(-1, 3)));
    let s = sym(&[0, 0, 0], q(-3, 1));
    assert!(cutoff_integral(&s).unwrap().is_zero());
    assert_eq!(log_coefficient(&s).unwrap(), four_pi());
}

#[test]
fn gaussian_remainder_integral() {
    let g = ClassicalSymbol::gaussian(&Poly::constant(3, q(1, 1)), RadialCutoff::SharpShell).unwrap();
    assert_eq!(cutoff_integral(&g).unwrap(), ExactScalar::pi_power(q(1, 1), 3));
}

#[test]
fn stokes_defect_examples() {
    let tau = sym(&[1, 0, 0], q(-3, 1));
    let third = four_pi().scale(&q(1, 3));
    assert_eq!(stokes_defect(&tau, 0).unwrap(), third);
    assert_eq!(cutoff_integral(&tau.derivative(0).unwrap()).unwrap(), third);
    assert!(stokes_defect(&sym(&[0, 1, 0], q(-3, 1)), 0).unwrap().is_zero());
    assert!(stokes_defect(&sym(&[1, 0, 0], q(-5, 2)), 0).unwrap().is_zero());
}

#[test]
fn decomposition_euler() {
    let s = sym(&[0, 0, 0], q(-1, 1));
    let dec = derivative_decompose(&s).unwrap();
    assert_eq!(dec.layer_report, vec![(q(-1, 1), DecompositionMethod::EulerScaling)]);
    for i in 0..3 {
        let mut a = vec![0u32; 3];
        a[i] = 1;
        let expect = ClassicalSymbol::single_term(3, q(1, 2), a, q(-1, 1)).unwrap();
        assert_eq!(dec.tau[i], expect);
    }
    assert_eq!(reassemble(&dec).unwrap(), s);
}

#[test]
fn decomposition_laplace() {
    let s = sym(&[1, 1, 0], q(-5, 1));
    let dec = derivative_decompose(&s).unwrap();
    assert_eq!(dec.layer_report, vec![(q(-3, 1), DecompositionMethod::LaplaceSolve)]);
    let big_f = ClassicalSymbol::single_term(3, q(-1, 6), vec![1, 1, 0], q(-3, 1)).unwrap();
    for i in 0..3 {
        assert_eq!(dec.tau[i].asymptotic_only(), big_f.derivative(i).unwrap().asymptotic_only());
    }
    assert_eq!(reassemble(&dec).unwrap(), s);
    let r = derivative_decompose(&sym(&[0, 0, 0], q(-3, 1)));
    assert!(matches!(r, Err(RegError::ResidueObstruction(_))));
}

#[test]
fn reduction_examples() {
    let s = sym(&[0, 0, 0], q(-5, 2));
    let v = reduce_and_evaluate(&s, &ExactIntegral).unwrap();
    assert_eq!(v, ExactScalar::pi().scale(&q(-8, 1)));
    assert_eq!(v, cutoff_integral(&s).unwrap());
    let g = ClassicalSymbol::gaussian(&Poly::constant(3, q(1, 1)), RadialCutoff::SharpShell).unwrap();
    assert_eq!(reduce_and_evaluate(&g, &ExactIntegral).unwrap(), cutoff_integral(&g).unwrap());
    assert!(reduce_and_evaluate(&sym(&[1, 1, 0], q(-5, 1)), &ZeroBase).unwrap().is_zero());
}

#[test]
fn translation_examples() {
    let e1 = vec![q(1, 1), q(0, 1), q(0, 1)];
    let r = translation_invariance_check(&sym(&[0, 0, 0], q(-5, 2)), &e1, 4).unwrap();
    assert!(r.all_zero);
    assert!(!r.entries.is_empty());
    let odd = sym(&[1, 0, 0], q(-4, 1));
    let r = translation_invariance_check(&odd, &e1, 4).unwrap();
    assert!(r.all_zero);
    let one = sym(&[0, 0], q(0, 1));
    let r = translation_invariance_check(&one, &[q(1, 1), q(0, 1)], 3);
    assert!(matches!(r, Err(RegError::ClassViolation(_))));
    // χ·1 has no boundary layer in n=2; a degree −1 symbol does
    let tau = sym(&[1, 0], q(-2, 1));
    assert_eq!(stokes_defect(&tau, 0).unwrap(), ExactScalar::pi());
}
