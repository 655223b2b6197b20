#![allow(dead_code)]

use fplift_core::arith::is_prime;
use fplift_core::poly::IntPoly;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_prime(rng: &mut impl Rng, lo: u64, hi: u64) -> u64 {
    loop {
        let p = rng.gen_range(lo..=hi);
        if is_prime(p) {
            return p;
        }
    }
}

/// `n` distinct residues mod `p`.
pub fn distinct_residues(rng: &mut impl Rng, n: usize, p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(n);
    while out.len() < n {
        let v = rng.gen_range(0..p);
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// A random polynomial in `nvars` variables with at most `terms` terms,
/// each of total degree `<= deg` and coefficient in `[-c, c]`.
pub fn random_poly(rng: &mut impl Rng, nvars: usize, terms: usize, deg: u32, c: i64) -> IntPoly {
    IntPoly::from_terms(
        nvars,
        (0..terms).map(|_| {
            let mut e = vec![0u32; nvars];
            let mut left = rng.gen_range(0..=deg);
            for slot in e.iter_mut() {
                let take = rng.gen_range(0..=left);
                *slot = take;
                left -= take;
            }
            (e, rng.gen_range(-c..=c))
        }),
    )
}

/// Dense coefficient list of length `deg + 1` with a non-zero leading entry.
pub fn random_dense(rng: &mut impl Rng, deg: usize, c: i64) -> Vec<i64> {
    let mut v: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-c..=c)).collect();
    while v[deg] == 0 {
        v[deg] = rng.gen_range(-c..=c);
    }
    v
}
