//! Harmonic projection and decomposition of homogeneous polynomials.

use crate::poly::Poly;
use crate::scalar::{factorial, CRational};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

const CACHE_LIMIT: usize = 1 << 16;

thread_local! {
    static DECOMPOSITIONS: RefCell<HashMap<Poly, BTreeMap<u32, Poly>>> = RefCell::new(HashMap::new());
}

/// Harmonic part of a homogeneous polynomial of degree `d`:
/// `Σ_j c_j |ξ|^{2j} Δ^j P` with `c_j = (−1)^j / (2^j j! Π_{i<j}(2d+n−4−2i))`.
pub fn harmonic_projection(p: &Poly, d: u32) -> Poly {
    let n = p.dim() as i64;
    let mut out = p.clone();
    let mut lap = p.clone();
    let mut denom = BigInt::from(1);
    for j in 1..=(d / 2) {
        lap = lap.laplacian();
        if lap.is_zero() {
            break;
        }
        let i = (j - 1) as i64;
        denom *= BigInt::from(2 * d as i64 + n - 4 - 2 * i);
        let full = BigInt::from(2).pow(j) * factorial(j) * &denom;
        let sign = if j % 2 == 1 { -1 } else { 1 };
        let c = BigRational::new(BigInt::from(sign), full);
        out.add_assign(&lap.mul_r2_pow(j).scale_rat(&c));
    }
    out
}

/// Decompose a homogeneous polynomial `P` of degree `d` as
/// `P = Σ_m |ξ|^{2m} H_{d−2m}` with harmonic `H`. Returns the non-zero `H_ℓ`
/// keyed by their degree `ℓ`.
pub fn harmonic_decompose(p: &Poly) -> BTreeMap<u32, Poly> {
    if let Some(hit) = DECOMPOSITIONS.with(|c| c.borrow().get(p).cloned()) {
        return hit;
    }
    let out = decompose_uncached(p);
    DECOMPOSITIONS.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() >= CACHE_LIMIT {
            c.clear();
        }
        c.insert(p.clone(), out.clone());
    });
    out
}

fn decompose_uncached(p: &Poly) -> BTreeMap<u32, Poly> {
    let mut out = BTreeMap::new();
    let d = match p.homogeneous_degree() {
        Some(d) => d,
        None => {
            assert!(p.is_zero(), "harmonic_decompose needs a homogeneous polynomial");
            return out;
        }
    };
    let n = p.dim() as i64;
    // L_k = Δ^k P = Σ_{m≥k} c(k,m) |ξ|^{2(m−k)} H_{d−2m}, solved from the top
    let mut laps = vec![p.clone()];
    for _ in 0..d / 2 {
        let next = laps.last().unwrap().laplacian();
        if next.is_zero() {
            break;
        }
        laps.push(next);
    }
    // Δ(|ξ|^{2i} H_l) = 2i(2i+2l+n−2) |ξ|^{2i−2} H_l
    let step = |i: i64, l: i64| BigInt::from(2 * i * (2 * i + 2 * l + n - 2));
    let coeff = |k: usize, m: usize| -> BigInt {
        let l = d as i64 - 2 * m as i64;
        let mut f = BigInt::from(1);
        for i in (m - k + 1)..=m {
            f *= step(i as i64, l);
        }
        f
    };
    let top = laps.len() - 1;
    let mut hs: Vec<Poly> = vec![Poly::zero(p.dim()); top + 1];
    for m in (0..=top).rev() {
        let mut rest = laps[m].clone();
        for (mm, h) in hs.iter().enumerate().skip(m + 1) {
            if h.is_zero() {
                continue;
            }
            let c = BigRational::from_integer(coeff(m, mm));
            rest = rest.sub(&h.mul_r2_pow((mm - m) as u32).scale_rat(&c));
        }
        let h = rest.scale_rat(&BigRational::new(BigInt::from(1), coeff(m, m)));
        if !h.is_zero() {
            out.insert(d - 2 * m as u32, h.clone());
        }
        hs[m] = h;
    }
    out
}

/// Harmonic decomposition of `ξᵢ H` for harmonic `H` of degree `l`:
/// returns `(part of degree l+1, part of degree l−1)` with
/// `ξᵢH = A + |ξ|² B`.
pub fn mul_var_harmonic(h: &Poly, l: u32, i: usize) -> (Poly, Poly) {
    let n = h.dim() as i64;
    if l == 0 {
        return (h.mul_var(i), Poly::zero(h.dim()));
    }
    let dh = h.partial(i);
    let c = CRational::ratio(1, 2 * l as i64 + n - 2);
    let b = dh.scale(&c);
    let a = h.mul_var(i).sub(&b.mul_r2_pow(1));
    (a, b)
}
