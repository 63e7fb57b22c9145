//! Seeded generators of symbols, families and tensor symbols for property
//! tests and the acceptance runs. Every generator is a pure function of its
//! seed.

use crate::mero::HolomorphicFamily;
use crate::opcalc::{CoefficientFunction, TensorSymbol};
use crate::poly::{MultiIndex, Poly};
use crate::reg::{minus_n_component, StokesClass};
use crate::scalar::CRational;
use crate::sphere::SpherePolynomial;
use crate::symalg::{ClassicalSymbol, CutMono, HomogeneousComponent, RadialCutoff, Term};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

pub type CorpusRng = ChaCha8Rng;

pub fn rng(seed: u64) -> CorpusRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Parity requirement on polynomial degrees relative to the layer degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityConstraint {
    Free,
    /// `|α| ≡ d (mod 2)`.
    Odd,
    /// `|α| ≡ d + 1 (mod 2)`.
    Even,
}

#[derive(Clone, Debug)]
pub struct SymbolSpec {
    pub n: usize,
    pub order: CRational,
    pub layers: u32,
    pub max_degree: u32,
    pub max_terms: usize,
    pub parity: ParityConstraint,
    pub gaussian: bool,
}

pub fn small_rational(r: &mut CorpusRng) -> CRational {
    let mut p = r.gen_range(-4i64..=4);
    if p == 0 {
        p = 1;
    }
    let q = *[1i64, 1, 2, 3].choose(r).unwrap();
    CRational::ratio(p, q)
}

fn coefficient(r: &mut CorpusRng) -> CRational {
    let re = small_rational(r);
    if r.gen_bool(0.15) {
        &re + &(&small_rational(r) * &CRational::i())
    } else {
        re
    }
}

/// Multi-index with `|α| = k` spread over `n` axes.
pub fn multi_index(r: &mut CorpusRng, n: usize, k: u32) -> MultiIndex {
    let mut a = vec![0u32; n];
    for _ in 0..k {
        a[r.gen_range(0..n)] += 1;
    }
    MultiIndex(a)
}

fn degree_for(r: &mut CorpusRng, max: u32, d: &CRational, parity: ParityConstraint) -> u32 {
    let shift = match parity {
        ParityConstraint::Free => return r.gen_range(0..=max),
        ParityConstraint::Odd => 0,
        ParityConstraint::Even => 1,
    };
    let d = d.to_integer().expect("parity classes need integer degrees");
    let target = (d + shift).rem_euclid(2) as u32;
    let choices: Vec<u32> = (0..=max).filter(|k| k % 2 == target).collect();
    *choices.choose(r).unwrap()
}

/// Random homogeneous component of degree `d`.
pub fn component(r: &mut CorpusRng, n: usize, d: &CRational, max_deg: u32, terms: usize, parity: ParityConstraint) -> HomogeneousComponent {
    let count = r.gen_range(1..=terms.max(1));
    let ts: Vec<Term> = (0..count)
        .map(|_| {
            let k = degree_for(r, max_deg, d, parity);
            let alpha = multi_index(r, n, k);
            Term::new(coefficient(r), alpha, d - &CRational::from_int(k as i64))
        })
        .collect();
    HomogeneousComponent::from_terms(n, d, &ts).expect("consistent degrees")
}

fn gaussian_poly(r: &mut CorpusRng, n: usize) -> Poly {
    let mut p = Poly::zero(n);
    for _ in 0..r.gen_range(1..=3) {
        let k = r.gen_range(0..=4);
        p.add_assign(&Poly::monomial(n, multi_index(r, n, k), small_rational(r)));
    }
    p
}

pub fn symbol(r: &mut CorpusRng, spec: &SymbolSpec) -> ClassicalSymbol {
    let mut s = ClassicalSymbol::new(spec.n, spec.order.clone(), RadialCutoff::SharpShell).expect("n ≥ 2");
    for j in 0..spec.layers {
        if j > 0 && r.gen_bool(0.25) {
            continue;
        }
        let d = &spec.order - &CRational::from_int(j as i64);
        let g = component(r, spec.n, &d, spec.max_degree, spec.max_terms, spec.parity);
        let mono = if r.gen_bool(0.1) { CutMono::h_pow(2) } else { CutMono::h_pow(1) };
        s.add_part(mono, g).expect("valid part");
    }
    if spec.gaussian && r.gen_bool(0.5) {
        s.add_gaussian(&gaussian_poly(r, spec.n)).expect("dimension");
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Integer,
    HalfInteger,
    Complex,
}

pub fn order(r: &mut CorpusRng, kind: OrderKind, lo: i64, hi: i64) -> CRational {
    let k = CRational::from_int(r.gen_range(lo..=hi));
    match kind {
        OrderKind::Integer => k,
        OrderKind::HalfInteger => &k + &CRational::ratio(1, 2),
        OrderKind::Complex => {
            let im = CRational::ratio(r.gen_range(1..=3), *[1i64, 2, 4].choose(r).unwrap());
            &(&k + &CRational::ratio(r.gen_range(0..=2), 3)) + &(&im * &CRational::i())
        }
    }
}

/// General corpus: `n ∈ {2,3,4}`, up to 5 layers, term degree up to 6.
pub fn symbol_corpus(seed: u64, count: usize) -> Vec<ClassicalSymbol> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(2..=4);
            let kind = *[OrderKind::Integer, OrderKind::Integer, OrderKind::HalfInteger, OrderKind::Complex]
                .choose(&mut r)
                .unwrap();
            let a = order(&mut r, kind, -(n as i64) - 2, 2);
            let spec = SymbolSpec {
                n,
                order: a,
                layers: r.gen_range(1..=5),
                max_degree: 6,
                max_terms: 3,
                parity: ParityConstraint::Free,
                gaussian: true,
            };
            symbol(&mut r, &spec)
        })
        .collect()
}

/// Symbols of one closedness class in dimension `n`.
pub fn class_corpus(seed: u64, class: StokesClass, n: usize, count: usize) -> Vec<ClassicalSymbol> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let (a, parity) = match class {
                StokesClass::NonInteger => {
                    let kind = if r.gen_bool(0.6) { OrderKind::HalfInteger } else { OrderKind::Complex };
                    (order(&mut r, kind, -(n as i64) - 2, 2), ParityConstraint::Free)
                }
                StokesClass::OddInOddDimension => {
                    (order(&mut r, OrderKind::Integer, -(n as i64) - 1, 2), ParityConstraint::Odd)
                }
                StokesClass::EvenInEvenDimension => {
                    (order(&mut r, OrderKind::Integer, -(n as i64) - 1, 2), ParityConstraint::Even)
                }
            };
            let spec = SymbolSpec { n, order: a, layers: r.gen_range(1..=5), max_degree: 6, max_terms: 3, parity, gaussian: true };
            symbol(&mut r, &spec)
        })
        .collect()
}

/// Remove the mean of every degree `−n` part, cutoff power by cutoff power.
pub fn project_residue_free(s: &ClassicalSymbol) -> ClassicalSymbol {
    let n = s.dim();
    let minus_n = CRational::from_int(-(n as i64));
    let mut t = s.clone();
    for ((m, d), g) in s.parts() {
        if d != &minus_n || m.is_shell() {
            continue;
        }
        let h0 = g.h0();
        if !h0.is_zero() {
            t.add_part(m.clone(), HomogeneousComponent::radial(n, -h0, minus_n.clone())).expect("valid part");
        }
    }
    t
}

/// Residue-free asymptotic symbols; about half reach the `−n` layer with a
/// non-zero, mean-free component.
pub fn residue_free_corpus(seed: u64, count: usize) -> Vec<ClassicalSymbol> {
    let mut r = rng(seed);
    (0..count)
        .map(|i| {
            let n = r.gen_range(2..=4);
            let ni = n as i64;
            let (a, layers) = if i % 2 == 0 {
                // the −n layer is reached at j = a + n
                let a = CRational::from_int(r.gen_range(-ni..=-ni + 2));
                let j = (&a + &CRational::from_int(ni)).to_integer().unwrap() as u32;
                (a, j + 1)
            } else {
                let kind = if r.gen_bool(0.5) { OrderKind::HalfInteger } else { OrderKind::Integer };
                (order(&mut r, kind, -ni + 1, 2), r.gen_range(1..=3))
            };
            let spec = SymbolSpec { n, order: a, layers, max_degree: 6, max_terms: 3, parity: ParityConstraint::Free, gaussian: false };
            let mut s = symbol(&mut r, &spec);
            if i % 2 == 0 {
                // force a non-trivial −n layer
                let d = CRational::from_int(-ni);
                let k = 2 * r.gen_range(1..=3);
                let h = component(&mut r, n, &d, k, 2, ParityConstraint::Free);
                s.add_part(CutMono::h_pow(1), h).expect("valid part");
                if minus_n_component(&project_residue_free(&s)).is_zero() {
                    let t = Term::new(CRational::one(), MultiIndex::unit(n, 0).add(&MultiIndex::unit(n, 1)), &d - &CRational::from_int(2));
                    s.add_part(CutMono::h_pow(1), HomogeneousComponent::from_terms(n, &d, &[t]).unwrap()).unwrap();
                }
            }
            project_residue_free(&s)
        })
        .collect()
}

/// Symbols with a non-zero residue.
pub fn obstructed_corpus(seed: u64, count: usize) -> Vec<ClassicalSymbol> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(2..=4);
            let a = CRational::from_int(-(n as i64) + r.gen_range(0..=2));
            let spec = SymbolSpec { n, order: a, layers: 3, max_degree: 4, max_terms: 2, parity: ParityConstraint::Free, gaussian: false };
            let mut s = symbol(&mut r, &spec);
            let d = CRational::from_int(-(n as i64));
            s.add_part(CutMono::h_pow(1), HomogeneousComponent::radial(n, CRational::one(), d)).unwrap();
            let h = minus_n_component(&s).h0();
            if h.is_zero() {
                s.add_part(CutMono::h_pow(1), HomogeneousComponent::radial(n, CRational::one(), CRational::from_int(-(n as i64)))).unwrap();
            }
            s
        })
        .collect()
}

fn sphere_profile(r: &mut CorpusRng, n: usize, d: &CRational, parity: ParityConstraint) -> SpherePolynomial {
    component(r, n, d, 5, 2, parity).restrict_sphere()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// `|ξ|^{βz}` twist of a random symbol.
    Twist,
    /// Layer profiles polynomial in `z` of degree up to 4.
    Profile,
}

fn beta(r: &mut CorpusRng) -> CRational {
    let b = small_rational(r);
    if r.gen_bool(0.2) {
        &b + &CRational::i()
    } else {
        b
    }
}

/// Families with poles at and away from `z = 0`.
pub fn family_corpus(seed: u64, count: usize) -> Vec<HolomorphicFamily> {
    let mut r = rng(seed);
    (0..count)
        .map(|i| {
            let n = r.gen_range(2..=4);
            let ni = n as i64;
            let a = if i % 3 == 2 {
                order(&mut r, OrderKind::HalfInteger, -ni - 1, 1)
            } else {
                CRational::from_int(r.gen_range(-ni..=-ni + 2))
            };
            let kind = if i % 2 == 0 { FamilyKind::Twist } else { FamilyKind::Profile };
            random_family(&mut r, n, a, kind, ParityConstraint::Free)
        })
        .collect()
}

pub fn random_family(r: &mut CorpusRng, n: usize, a: CRational, kind: FamilyKind, parity: ParityConstraint) -> HolomorphicFamily {
    let b = beta(r);
    let layers = r.gen_range(1..=4);
    match kind {
        FamilyKind::Twist => {
            let spec = SymbolSpec { n, order: a, layers, max_degree: 5, max_terms: 2, parity, gaussian: true };
            let s = symbol(r, &spec);
            HolomorphicFamily::twist(&s, b).expect("sharp symbol")
        }
        FamilyKind::Profile => {
            let mut map = BTreeMap::new();
            for j in 0..layers {
                let d = &a - &CRational::from_int(j as i64);
                let deg = r.gen_range(0..=4usize);
                let ps: Vec<SpherePolynomial> = (0..=deg).map(|_| sphere_profile(r, n, &d, parity)).collect();
                map.insert((j, 1), ps);
            }
            let mut rem = ClassicalSymbol::new(n, a.clone(), RadialCutoff::SharpShell).unwrap();
            if r.gen_bool(0.5) {
                rem.add_gaussian(&gaussian_poly(r, n)).unwrap();
            }
            HolomorphicFamily::new(n, a, b, map, rem).expect("valid family")
        }
    }
}

/// Families whose `σ(0)` and `σ′(0)` lie in `class`.
pub fn class_family_corpus(seed: u64, class: StokesClass, count: usize) -> Vec<HolomorphicFamily> {
    let mut r = rng(seed);
    (0..count)
        .map(|i| {
            let kind = if i % 2 == 0 { FamilyKind::Twist } else { FamilyKind::Profile };
            match class {
                StokesClass::NonInteger => {
                    let n = r.gen_range(2..=4);
                    let k = if r.gen_bool(0.7) { OrderKind::HalfInteger } else { OrderKind::Complex };
                    let a = order(&mut r, k, -(n as i64) - 1, 1);
                    random_family(&mut r, n, a, kind, ParityConstraint::Free)
                }
                StokesClass::OddInOddDimension => {
                    let n = *[3usize, 5].choose(&mut r).unwrap();
                    let a = CRational::from_int(r.gen_range(-(n as i64)..=1));
                    random_family(&mut r, n, a, kind, ParityConstraint::Odd)
                }
                StokesClass::EvenInEvenDimension => {
                    let n = *[2usize, 4].choose(&mut r).unwrap();
                    let a = CRational::from_int(r.gen_range(-(n as i64)..=1));
                    random_family(&mut r, n, a, kind, ParityConstraint::Even)
                }
            }
        })
        .collect()
}

fn coefficient_function(r: &mut CorpusRng, n: usize) -> CoefficientFunction {
    let mut f = CoefficientFunction::zero(n);
    for _ in 0..r.gen_range(1..=2) {
        let k = r.gen_range(0..=2);
        f = f.add(&CoefficientFunction::monomial(multi_index(r, n, k), r.gen_range(1..=2), small_rational(r)));
    }
    f
}

/// Tensor symbol `Σ f_k ⊗ s_k` with Gaussian coefficients and one or two terms.
pub fn tensor(r: &mut CorpusRng, n: usize, a: &CRational, parity: ParityConstraint) -> TensorSymbol {
    let mut t = TensorSymbol::zero(n);
    for _ in 0..r.gen_range(1..=2) {
        let spec = SymbolSpec { n, order: a.clone(), layers: 2, max_degree: 2, max_terms: 1, parity, gaussian: false };
        let s = symbol(r, &spec);
        t.add_pair(&coefficient_function(r, n), &s).expect("same order lattice");
    }
    t
}

/// Pairs `(p, q, N)` with `N = a + b + n + 1` so that the residue sees the
/// whole truncated commutator.
pub fn residue_pair_corpus(seed: u64, count: usize) -> Vec<(TensorSymbol, TensorSymbol, u32)> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(2..=3);
            // a + b + n ∈ {1, 2}, so the −n layer of the commutator is reached
            let a = r.gen_range(-1i64..=0);
            let b = 1 - n as i64 + r.gen_range(0..=1) - a;
            let big_n = (a + b + n as i64 + 1) as u32;
            let p = tensor(&mut r, n, &CRational::from_int(a), ParityConstraint::Free);
            let q = tensor(&mut r, n, &CRational::from_int(b), ParityConstraint::Free);
            (p, q, big_n)
        })
        .collect()
}

/// Pairs whose commutator lies in `class`.
pub fn trace_pair_corpus(seed: u64, class: StokesClass, count: usize) -> Vec<(TensorSymbol, TensorSymbol, u32)> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| match class {
            StokesClass::NonInteger => {
                let n = r.gen_range(2..=3);
                let a = &CRational::from_int(r.gen_range(-3i64..=-1)) + &CRational::ratio(1, 2);
                let b = CRational::from_int(r.gen_range(-2i64..=-1));
                let p = tensor(&mut r, n, &a, ParityConstraint::Free);
                let q = tensor(&mut r, n, &b, ParityConstraint::Free);
                (p, q, r.gen_range(1..=3))
            }
            StokesClass::OddInOddDimension => {
                let n = 3;
                let a = CRational::from_int(r.gen_range(-3i64..=-1));
                let b = CRational::from_int(r.gen_range(-3i64..=-1));
                let p = tensor(&mut r, n, &a, ParityConstraint::Odd);
                let q = tensor(&mut r, n, &b, ParityConstraint::Odd);
                (p, q, r.gen_range(1..=3))
            }
            StokesClass::EvenInEvenDimension => {
                // even × even is odd, so the commutator leaves the class
                let n = 2;
                let a = CRational::from_int(r.gen_range(-2i64..=-1));
                let p = tensor(&mut r, n, &a, ParityConstraint::Even);
                let q = tensor(&mut r, n, &a, ParityConstraint::Odd);
                (p, q, 2)
            }
        })
        .collect()
}

/// The fixed 40-symbol corpus of the oracle comparison, `n ∈ {2,3,4}`.
pub fn standard_oracle_corpus() -> Vec<ClassicalSymbol> {
    let mut r = rng(0x5eed_0040);
    let mut out = Vec::new();
    let kinds = [OrderKind::Integer, OrderKind::HalfInteger, OrderKind::Complex, OrderKind::Integer];
    for i in 0..40 {
        let n = 2 + i % 3;
        let kind = kinds[i % 4];
        let a = order(&mut r, kind, -(n as i64) - 2, 1);
        let spec = SymbolSpec {
            n,
            order: a,
            layers: r.gen_range(1..=4),
            max_degree: 4,
            max_terms: 2,
            parity: ParityConstraint::Free,
            gaussian: true,
        };
        let mut s = symbol(&mut r, &spec);
        if i % 5 == 0 {
            s = s.derivative(r.gen_range(0..n)).expect("axis in range");
        }
        out.push(s);
    }
    out
}
