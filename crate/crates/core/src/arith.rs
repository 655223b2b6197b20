//! Word-size modular arithmetic and big-number helpers.

use alloc::format;
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn ensure_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Smallest prime `>= n`.
pub fn next_prime(mut n: u64) -> u64 {
    if n <= 2 {
        return 2;
    }
    if n % 2 == 0 {
        n += 1;
    }
    while !is_prime(n) {
        n += 2;
    }
    n
}

/// Residue of `n` in `{0, ..., m-1}`.
pub fn big_mod(n: &BigInt, m: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(m));
    r.to_u64().expect("residue fits in u64")
}

/// Image of a rational in `F_p`; fails when `p` divides the denominator.
pub fn rational_mod(q: &BigRational, p: u64) -> Result<u64> {
    let den = big_mod(q.denom(), p);
    let inv = inv_mod(den, p).ok_or_else(|| Error::NotLocal {
        value: format!("{q}"),
        p,
    })?;
    Ok(mul_mod(big_mod(q.numer(), p), inv, p))
}

/// Representative of `a` in the symmetric range `(-m/2, m/2]`.
pub fn symmetric_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// `log2(n)` as a float; exact enough for ceiling/floor decisions away from
/// integer boundaries.
pub fn log2_big(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 53 {
        return num_traits::Float::log2(n.to_u64().unwrap() as f64);
    }
    let shift = bits - 53;
    let top = (n >> shift).to_u64().unwrap() as f64;
    num_traits::Float::log2(top) + shift as f64
}

/// Decides `base^exp < bound` without materialising huge powers when the
/// bit lengths already settle the comparison.
pub fn pow_lt(base: &BigUint, exp: &BigUint, bound: &BigUint) -> bool {
    if base.is_zero() {
        return !exp.is_zero() || BigUint::one() < *bound;
    }
    if base.is_one() || exp.is_zero() {
        return BigUint::one() < *bound;
    }
    // base^exp >= 2^(exp * floor(log2 base)) and < 2^(exp * bits(base)).
    let floor_log = BigUint::from(base.bits() - 1);
    let lower_bits = exp * &floor_log;
    let bound_bits = BigUint::from(bound.bits());
    if lower_bits >= bound_bits {
        return false;
    }
    let exp_small = exp.to_u32().expect("exponent below bound bit length");
    num_traits::pow::Pow::pow(base, exp_small) < *bound
}

/// Decides `a <= base^exp` the same way.
pub fn le_pow(a: &BigUint, base: &BigUint, exp: &BigUint) -> bool {
    !pow_lt(base, exp, a)
}

pub fn abs_uint(n: &BigInt) -> BigUint {
    n.abs().to_biguint().expect("absolute value is non-negative")
}

pub fn big_from_u64(n: u64) -> BigInt {
    BigInt::from_biguint(Sign::Plus, BigUint::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: alloc::vec::Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2, 3, 5, 7
        assert_eq!(next_prime(100), 101);
    }

    #[test]
    fn inverses() {
        assert_eq!(inv_mod(2, 11), Some(6));
        assert_eq!(inv_mod(7, 11), Some(8));
        assert_eq!(inv_mod(4, 8), None);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(rational_mod(&half, 11), Ok(6));
        assert!(rational_mod(&half, 2).is_err());
    }

    #[test]
    fn power_comparisons() {
        let b = BigUint::from(8u32);
        let big = BigUint::from(256u32);
        assert!(pow_lt(&b, &BigUint::from(2u32), &BigUint::from(65u32)));
        assert!(!pow_lt(&b, &BigUint::from(2u32), &BigUint::from(64u32)));
        // 8^256 vs a 700-bit number: decided by bit lengths.
        let p = BigUint::one() << 700u32;
        assert!(!pow_lt(&b, &big, &p));
        let p = BigUint::one() << 770u32;
        assert!(pow_lt(&b, &big, &p));
    }
}
