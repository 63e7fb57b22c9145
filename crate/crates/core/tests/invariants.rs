use num_complex::Complex64;
use proptest::prelude::*;
use psicalc::corpus::{self, ParityConstraint, SymbolSpec};
use psicalc::mero::HolomorphicFamily;
use psicalc::opcalc::{star_product, TensorSymbol};
use psicalc::oracle::monomial_quadrature;
use psicalc::reg::{cutoff_integral, residue_raw, stokes_class, stokes_defect, translation_report};
use psicalc::sphere::harmonic::harmonic_decompose;
use psicalc::sphere::{laplace_sphere_solve, monomial_sphere_integral, SpherePolynomial};
use psicalc::symalg::HomogeneousComponent;
use num_rational::BigRational;
use psicalc::{CRational, Poly};
use rand::Rng;

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

fn spec(r: &mut corpus::CorpusRng) -> SymbolSpec {
    let n = r.gen_range(2..=4);
    SymbolSpec {
        n,
        order: corpus::order(r, corpus::OrderKind::Integer, -4, 1),
        layers: r.gen_range(1..=4),
        max_degree: 4,
        max_terms: 3,
        parity: ParityConstraint::Free,
        gaussian: true,
    }
}

fn random_poly(r: &mut corpus::CorpusRng, n: usize, k: u32) -> Poly {
    let mut p = Poly::zero(n);
    for _ in 0..r.gen_range(1..=4) {
        p.add_assign(&Poly::monomial(n, corpus::multi_index(r, n, k), corpus::small_rational(r)));
    }
    p
}

proptest! {
    #![proptest_config(cfg(48))]

    #[test]
    fn canonical_form_is_idempotent(seed in any::<u64>()) {
        let mut r = corpus::rng(seed);
        let sp = spec(&mut r);
        let s = corpus::symbol(&mut r, &sp);
        for g in s.parts().values() {
            let again = HomogeneousComponent::from_terms(g.dim(), g.degree(), &g.terms()).unwrap();
            prop_assert_eq!(&again, g);
        }
    }

    #[test]
    fn euler_identity(seed in any::<u64>()) {
        let mut r = corpus::rng(seed);
        let n = r.gen_range(2..=4);
        let d = corpus::order(&mut r, corpus::OrderKind::Complex, -4, 2);
        let g = corpus::component(&mut r, n, &d, 5, 3, ParityConstraint::Free);
        let mut acc = HomogeneousComponent::zero(n, d.clone());
        for i in 0..n {
            acc = acc.add(&g.partial(i).mul_xi(i)).unwrap();
        }
        prop_assert_eq!(acc, g.scale(&d));
    }

    #[test]
    fn harmonic_pieces_reassemble(seed in any::<u64>()) {
        let mut r = corpus::rng(seed);
        let n = r.gen_range(2..=5);
        let k = r.gen_range(0..=7);
        let p = random_poly(&mut r, n, k);
        let mut back = Poly::zero(n);
        for (l, h) in harmonic_decompose(&p) {
            prop_assert!(h.laplacian().is_zero());
            back.add_assign(&h.mul_r2_pow((k - l) / 2));
        }
        prop_assert_eq!(back, p);
    }

    #[test]
    fn sphere_solve_inverts_laplace_beltrami(seed in any::<u64>()) {
        let mut r = corpus::rng(seed);
        let n = r.gen_range(2..=4);
        let k = r.gen_range(1..=6);
        let mut g = SpherePolynomial::from_poly(&random_poly(&mut r, n, k));
        let mean = g.integral();
        if !mean.is_zero() {
            // remove the constant harmonic
            let mut hs = g.harmonics().clone();
            hs.remove(&0);
            g = SpherePolynomial::from_harmonics(n, hs);
        }
        let f = laplace_sphere_solve(&g).unwrap();
        prop_assert_eq!(f.laplace_beltrami(), g);
    }

    #[test]
    fn derivative_bookkeeping(seed in any::<u64>()) {
        let mut r = corpus::rng(seed);
        // Gaussian remainders times cut-off parts are outside the exact model
        let sp = SymbolSpec { gaussian: false, ..spec(&mut r) };
        let s = corpus::symbol(&mut r, &sp);
        let t = corpus::symbol(&mut r, &SymbolSpec { order: CRational::from_int(-1), ..sp.clone() });
        let n = sp.n;
        let i = r.gen_range(0..n);
        let j = r.gen_range(0..n);
        let ds = s.derivative(i).unwrap();
        prop_assert_eq!(ds.order(), &(s.order() - &CRational::one()));
        prop_assert_eq!(ds.derivative(j).unwrap(), s.derivative(j).unwrap().derivative(i).unwrap());
        let st = s.mul(&t).unwrap();
        prop_assert_eq!(st.order(), &(s.order() + t.order()));
        let lhs = st.derivative(i).unwrap();
        let rhs = ds.mul(&t).unwrap().add(&s.mul(&t.derivative(i).unwrap()).unwrap()).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().is_zero());
    }

    #[test]
    fn evaluation_matches_terms(seed in any::<u64>()) {
        let mut r = corpus::rng(seed);
        let sp = spec(&mut r);
        let s = corpus::symbol(&mut r, &sp);
        let n = s.dim();
        let xi: Vec<f64> = (0..n).map(|_| r.gen_range(-2.0..2.0)).collect();
        let rr: f64 = xi.iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assume!(rr > 1.05);
        let mut want = s.gaussian_poly().eval(&xi) * (-rr * rr).exp();
        for ((m, _), g) in s.parts() {
            if m.is_shell() {
                continue;
            }
            for t in g.terms() {
                let mono: f64 = t.alpha.0.iter().zip(&xi).map(|(a, x)| x.powi(*a as i32)).product();
                want += t.coeff.to_c64() * mono * Complex64::new(rr, 0.0).powc(t.radial_exponent.to_c64());
            }
        }
        let got = s.evaluate(&xi).unwrap();
        prop_assert!((got - want).norm() <= 1e-10 * want.norm().max(1.0), "{} vs {}", got, want);
    }

    #[test]
    fn residue_vanishes_on_derivatives(seed in any::<u64>()) {
        let mut r = corpus::rng(seed);
        let sp = spec(&mut r);
        let s = corpus::symbol(&mut r, &sp);
        for i in 0..s.dim() {
            prop_assert!(residue_raw(&s.derivative(i).unwrap()).is_zero());
        }
    }

    #[test]
    fn stokes_identity(seed in any::<u64>()) {
        let mut r = corpus::rng(seed);
        let sp = spec(&mut r);
        let s = corpus::symbol(&mut r, &sp);
        let i = r.gen_range(0..s.dim());
        prop_assert_eq!(cutoff_integral(&s.derivative(i).unwrap()).unwrap(), stokes_defect(&s, i).unwrap());
    }

    #[test]
    fn cutoff_integral_is_linear(seed in any::<u64>()) {
        let mut r = corpus::rng(seed);
        let sp = spec(&mut r);
        let s = corpus::symbol(&mut r, &sp);
        let t = corpus::symbol(&mut r, &sp);
        let c = corpus::small_rational(&mut r);
        let lhs = cutoff_integral(&s.add(&t.scale(&c)).unwrap()).unwrap();
        let rhs = &cutoff_integral(&s).unwrap() + &cutoff_integral(&t).unwrap().scale(&c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivatives_are_invisible_on_classes(seed in any::<u64>(), k in 0usize..3) {
        let class = [psicalc::reg::StokesClass::NonInteger, psicalc::reg::StokesClass::OddInOddDimension,
                     psicalc::reg::StokesClass::EvenInEvenDimension][k];
        let n = [3usize, 3, 2][k];
        let s = corpus::class_corpus(seed, class, n, 1).remove(0);
        prop_assert_eq!(stokes_class(&s), Some(class));
        let eta = vec![CRational::ratio(1, 2); n];
        let rep = translation_report(&s, &eta, 3).unwrap();
        prop_assert!(rep.all_zero);
    }

    #[test]
    fn residue_free_projection(seed in any::<u64>()) {
        let s = corpus::residue_free_corpus(seed, 1).remove(0);
        prop_assert!(residue_raw(&s).is_zero());
    }

    #[test]
    fn family_values_agree_with_pointwise_integrals(seed in any::<u64>()) {
        let mut r = corpus::rng(seed);
        let f: HolomorphicFamily = corpus::family_corpus(seed, 1).remove(0);
        let z = CRational::ratio(r.gen_range(1..=9), r.gen_range(5..=11));
        let l = f.laurent().unwrap();
        if let Some(v) = l.value_at(&z) {
            prop_assert_eq!(v, cutoff_integral(&f.at(&z).unwrap()).unwrap());
        }
        for p in &l.poles {
            prop_assert!(!p.residue.is_zero());
        }
    }

    #[test]
    fn quadrature_matches_gamma_formula(seed in any::<u64>()) {
        let mut r = corpus::rng(seed);
        let n = r.gen_range(2..=4);
        let k = r.gen_range(0..=8);
        let alpha = corpus::multi_index(&mut r, n, k);
        let exact: Complex64 = monomial_sphere_integral(&alpha).to_c64();
        let num = monomial_quadrature(&alpha).unwrap();
        prop_assert!((num - exact).norm() <= 1e-10 * exact.norm().max(1.0));
    }
}

proptest! {
    #![proptest_config(cfg(8))]

    #[test]
    fn star_truncation_is_stable(seed in any::<u64>()) {
        let mut r = corpus::rng(seed);
        let n = 2;
        let p = corpus::tensor(&mut r, n, &CRational::from_int(-1), ParityConstraint::Free);
        let q = corpus::tensor(&mut r, n, &CRational::from_int(-1), ParityConstraint::Free);
        let lo = star_product(&p, &q, 1).unwrap();
        let hi = star_product(&p, &q, 2).unwrap();
        // orders above a + b − N − 1 = −4 agree
        let t = BigRational::from_integer((-4).into());
        prop_assert_eq!(lo.symbol.truncate_above(&t), hi.symbol.truncate_above(&t));
        prop_assert_eq!(lo.remainder_bound, Some(t));
    }

    #[test]
    fn star_product_is_associative_to_leading_orders(seed in any::<u64>()) {
        let mut r = corpus::rng(seed);
        let n = 2;
        let a = CRational::from_int(-1);
        let p = corpus::tensor(&mut r, n, &a, ParityConstraint::Free);
        let q = corpus::tensor(&mut r, n, &a, ParityConstraint::Free);
        let w = corpus::tensor(&mut r, n, &a, ParityConstraint::Free);
        let big_n = 1;
        let left = star_product(&star_product(&p, &q, big_n).unwrap().symbol, &w, big_n).unwrap().symbol;
        let right = star_product(&p, &star_product(&q, &w, big_n).unwrap().symbol, big_n).unwrap().symbol;
        let t = BigRational::from_integer((-3 - big_n as i64 - 1).into());
        prop_assert_eq!(left.truncate_above(&t), right.truncate_above(&t));
    }
}

#[test]
fn tensor_identity_is_a_unit() {
    let mut r = corpus::rng(5);
    let p = corpus::tensor(&mut r, 3, &CRational::from_int(-2), ParityConstraint::Free);
    let one = TensorSymbol::constant(
        &psicalc::ClassicalSymbol::polynomial(&Poly::constant(3, CRational::one()), psicalc::RadialCutoff::SharpShell).unwrap(),
    );
    let left = star_product(&one, &p, 3).unwrap().symbol;
    let right = star_product(&p, &one, 3).unwrap().symbol;
    assert!(left.sub(&p).unwrap().is_zero());
    assert!(right.sub(&p).unwrap().is_zero());
}
