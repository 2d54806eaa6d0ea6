//! Seeded generators for randomized identity checks.
//!
//! The generator contract: every stream is a `ChaCha8Rng` created with
//! `seed_from_u64`. Case streams are derived with [`case_seed`], which mixes
//! the manifest seed with the FNV-1a hash of the case id, so adding or
//! reordering cases never perturbs the inputs of another case.

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

use crate::scalar::poly::{Monomial, Poly};
use crate::scalar::{Rational, ScalarExpr};

pub type CaseRng = ChaCha8Rng;

pub fn rng(seed: u64) -> CaseRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// 64-bit FNV-1a.
pub fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

pub fn case_seed(manifest_seed: u64, case_id: &str) -> u64 {
    manifest_seed ^ fnv1a(case_id)
}

/// Shape of random polynomials: total degree, coefficient bound, term count.
#[derive(Clone, Copy, Debug)]
pub struct PolyShape {
    pub max_degree: u32,
    pub max_coeff: i64,
    pub max_terms: usize,
}

impl Default for PolyShape {
    fn default() -> Self {
        PolyShape {
            max_degree: 2,
            max_coeff: 3,
            max_terms: 3,
        }
    }
}

pub fn random_poly(rng: &mut CaseRng, nvars: usize, shape: PolyShape) -> Poly {
    let terms = rng.gen_range(1..=shape.max_terms.max(1));
    let mut p = Poly::zero();
    for _ in 0..terms {
        let deg = rng.gen_range(0..=shape.max_degree);
        let mut exps = vec![0u32; nvars];
        for _ in 0..deg {
            exps[rng.gen_range(0..nvars)] += 1;
        }
        let c = rng.gen_range(-shape.max_coeff..=shape.max_coeff);
        p = p.add(&Poly::monomial(Monomial::from_exponents(exps), BigInt::from(c)));
    }
    p
}

pub fn random_polynomial_expr(rng: &mut CaseRng, nvars: usize, shape: PolyShape) -> ScalarExpr {
    ScalarExpr::from_poly(random_poly(rng, nvars, shape))
}

/// A rational function whose denominator is a sum of squares plus one,
/// hence nowhere zero on real points.
pub fn random_rational_expr(rng: &mut CaseRng, nvars: usize, shape: PolyShape) -> ScalarExpr {
    let num = random_poly(rng, nvars, shape);
    let mut den = Poly::one();
    let k = rng.gen_range(0..=2);
    for _ in 0..k {
        let s = random_poly(
            rng,
            nvars,
            PolyShape {
                max_degree: 1,
                max_coeff: 2,
                max_terms: 2,
            },
        );
        den = den.add(&s.mul(&s));
    }
    ScalarExpr::from_parts(num, den).expect("denominator is nonzero")
}

pub fn random_rational(rng: &mut CaseRng, max_num: i64, max_den: i64) -> Rational {
    let n = rng.gen_range(-max_num..=max_num);
    let d = rng.gen_range(1..=max_den);
    Rational::new(BigInt::from(n), BigInt::from(d))
}
