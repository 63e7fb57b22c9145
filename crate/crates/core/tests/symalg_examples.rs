use psicalc::symalg::{ClassicalSymbol, CutMono, HomogeneousComponent, ParityClass, RadialCutoff, SymbolError, Term};
use psicalc::{CRational, MultiIndex, Poly};

fn q(p: i64, d: i64) -> CRational {
    CRational::ratio(p, d)
}

fn term(c: CRational, alpha: Vec<u32>, e: CRational) -> ClassicalSymbol {
    ClassicalSymbol::single_term(alpha.len(), c, alpha, e).unwrap()
}

fn comp(n: usize, terms: &[(i64, Vec<u32>, CRational)]) -> HomogeneousComponent {
    let ts: Vec<Term> = terms.iter().map(|(c, a, e)| Term::new(CRational::from_int(*c), MultiIndex(a.clone()), e.clone())).collect();
    HomogeneousComponent::from_terms(n, &ts[0].degree(), &ts).unwrap()
}

#[test]
fn add_layers_and_identity() {
    let a = term(q(1, 1), vec![0, 0, 0], q(-1, 1));
    let b = term(q(1, 1), vec![0, 0, 0], q(-2, 1));
    let s = a.add(&b).unwrap();
    assert_eq!(s.order(), &q(-1, 1));
    let layers = s.layers();
    assert_eq!(layers.len(), 2);
    assert_eq!(layers[&0], HomogeneousComponent::radial(3, q(1, 1), q(-1, 1)));
    assert_eq!(layers[&1], HomogeneousComponent::radial(3, q(1, 1), q(-2, 1)));
    let zero = ClassicalSymbol::new(3, q(0, 1), RadialCutoff::SharpShell).unwrap();
    assert_eq!(a.add(&zero).unwrap(), a);
    let c = term(q(1, 1), vec![0, 0, 0], q(-3, 2));
    assert!(matches!(a.add(&c), Err(SymbolError::IncompatibleOrders { .. })));
}

#[test]
fn multiply_examples() {
    let a = term(q(1, 1), vec![0, 0, 0], q(-1, 1));
    let b = term(q(1, 1), vec![0, 0, 0], q(-2, 1));
    let p = a.mul(&b).unwrap();
    assert_eq!(p.order(), &q(-3, 1));
    let parts: Vec<_> = p.parts().iter().collect();
    assert_eq!(parts.len(), 1);
    let ((m, d), g) = parts[0];
    // χ² = χ in the sharp model; the algebra keeps the monomial h²
    assert_eq!(m, &CutMono::h_pow(2));
    assert_eq!(d, &q(-3, 1));
    assert_eq!(g, &HomogeneousComponent::radial(3, q(1, 1), q(-3, 1)));

    let x1 = term(q(1, 1), vec![1, 0, 0], q(-2, 1));
    let x2 = term(q(1, 1), vec![0, 1, 0], q(-2, 1));
    let p = x1.mul(&x2).unwrap();
    let expect = comp(3, &[(1, vec![1, 1, 0], q(-4, 1))]);
    assert_eq!(p.layer(0), expect);
}

#[test]
fn derivative_examples() {
    // ∂₁(χ ξ₁|ξ|⁻³) in n=3
    let s = term(q(1, 1), vec![1, 0, 0], q(-3, 1));
    let d = s.derivative(0).unwrap();
    assert_eq!(d.order(), &q(-3, 1));
    let layer = comp(3, &[(1, vec![0, 0, 0], q(-3, 1)), (-3, vec![2, 0, 0], q(-5, 1))]);
    assert_eq!(d.layer(0), layer);
    let shells: Vec<_> = d.shell_parts().collect();
    assert_eq!(shells.len(), 1);
    let ((m, _), g) = shells[0];
    assert_eq!(m, &CutMono::deriv(1));
    assert_eq!(g, &comp(3, &[(1, vec![1, 0, 0], q(-3, 1))]).mul_omega(0));

    // ∂₁(χ|ξ|⁻¹)
    let s = term(q(1, 1), vec![0, 0, 0], q(-1, 1));
    let d = s.derivative(0).unwrap();
    assert_eq!(d.layer(0), comp(3, &[(-1, vec![1, 0, 0], q(-3, 1))]));
    let shells: Vec<_> = d.shell_parts().collect();
    assert_eq!(shells[0].1, &HomogeneousComponent::radial(3, q(1, 1), q(-1, 1)).mul_omega(0));
}

#[test]
fn euler_identity_on_example() {
    let g = comp(3, &[(2, vec![1, 1, 0], q(-7, 2)), (1, vec![0, 0, 0], q(-3, 2))]);
    let mut acc = HomogeneousComponent::zero(3, g.degree().clone());
    for i in 0..3 {
        acc = acc.add(&g.partial(i).mul_xi(i)).unwrap();
    }
    assert_eq!(acc, g.scale(g.degree()));
}

#[test]
fn parity_examples() {
    let s = term(q(1, 1), vec![0, 0, 0], q(-3, 1));
    assert_eq!(s.parity(), ParityClass::Even);
    let s = term(q(1, 1), vec![1, 0, 0], q(-4, 1));
    assert_eq!(s.parity(), ParityClass::Odd);
    let s = term(q(1, 1), vec![0, 0, 0], q(-3, 2));
    assert_eq!(s.parity(), ParityClass::None);
}

#[test]
fn evaluate_examples() {
    let s = term(q(1, 1), vec![0, 0, 0], q(-1, 1));
    assert!((s.evaluate(&[2.0, 0.0, 0.0]).unwrap().re - 0.5).abs() < 1e-15);
    assert_eq!(s.evaluate(&[0.1, 0.0, 0.0]).unwrap().re, 0.0);
    let g = ClassicalSymbol::gaussian(&Poly::constant(3, q(1, 1)), RadialCutoff::SharpShell).unwrap();
    assert!((g.evaluate(&[1.0, 0.0, 0.0]).unwrap().re - (-1f64).exp()).abs() < 1e-15);
}

#[test]
fn translate_taylor_examples() {
    let s = term(q(1, 1), vec![0, 0, 0], q(-5, 2));
    let zero = vec![CRational::zero(); 3];
    assert!(s.translate_taylor(&zero, 3).unwrap().entries.is_empty());
    let e1 = vec![q(1, 1), q(0, 1), q(0, 1)];
    let t = s.translate_taylor(&e1, 3).unwrap();
    let alphas: Vec<_> = t.entries.iter().map(|(a, _)| a.0.clone()).collect();
    assert_eq!(alphas, vec![vec![1, 0, 0], vec![2, 0, 0]]);
    assert_eq!(t.remainder_bound, num_rational::BigRational::new((-11).into(), 2.into()));
    // the second entry carries the 1/2! weight
    let d2 = s.derivative(0).unwrap().derivative(0).unwrap().scale(&q(1, 2));
    assert_eq!(t.entries[1].1, d2);
}
