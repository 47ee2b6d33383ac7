//! Shared helpers for integration tests: seeded random polynomial soup.

#![allow(dead_code)]

use std::sync::Arc;

use ambikit::polyring::{Monomial, Polynomial, VarTable};
use num::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn ratq(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// A random polynomial with small integer coefficients.
pub fn random_poly(
    rng: &mut ChaCha8Rng,
    vars: &Arc<VarTable>,
    max_terms: usize,
    max_deg: u32,
) -> Polynomial {
    let n = vars.len();
    let terms = rng.gen_range(0..=max_terms);
    let mut out = Vec::new();
    for _ in 0..terms {
        let mut exps = vec![0u32; n];
        let deg = rng.gen_range(0..=max_deg);
        for _ in 0..deg {
            exps[rng.gen_range(0..n)] += 1;
        }
        let c = loop {
            let c = rng.gen_range(-9i64..=9);
            if c != 0 {
                break c;
            }
        };
        out.push((Monomial::from_exps(exps), rat(c)));
    }
    Polynomial::from_terms(vars, out)
}

/// A random *nonzero* polynomial.
pub fn random_nonzero_poly(
    rng: &mut ChaCha8Rng,
    vars: &Arc<VarTable>,
    max_terms: usize,
    max_deg: u32,
) -> Polynomial {
    loop {
        let p = random_poly(rng, vars, max_terms.max(1), max_deg);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A random rational point with entries in `[-bound, bound] / 4`, avoiding 0.
pub fn random_point(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<BigRational> {
    (0..n)
        .map(|_| loop {
            let v = rng.gen_range(-bound..=bound);
            if v != 0 {
                break ratq(v, 4);
            }
        })
        .collect()
}
