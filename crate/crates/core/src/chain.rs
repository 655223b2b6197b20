//! Constructibility chains and the sets that cannot be rectified.
//!
//! A chain `0 = a_0, a_1, ..., a_m` has `a_i = f_i(a_0, ..., a_{i-1})` for
//! `(k, t)`-bounded integer polynomials `f_i`. Reducing the values of a chain
//! ending at `p` modulo `p` collapses `a_m` onto `a_0`. The residue set
//! then has fewer elements than the chain, and no bounded-relation-preserving
//! lift into characteristic zero exists.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

use crate::arith::{big_mod, ensure_prime, log2_big};
use crate::domain::Integers;
use crate::poly::{BoundProfile, IntPoly};
use crate::text::{format_poly, parse_poly, VarStyle};
use crate::{Error, Result};

/// How a chain was built.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    /// `a_i = a_{i-1} + 1`.
    Unary,
    /// Counter, digit blocks, then the power/accumulate ladder; `s` is
    /// the sub-block width and `ell` the number of blocks.
    Blocks { s: u32, ell: u32 },
    /// `2^n - 1` by squaring along the binary digits of `n`.
    Mersenne { n: u32 },
    /// `2^(2^n) + 1` by `n` squarings.
    Fermat { n: u32 },
    /// Read from text.
    External,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    /// `a_0, ..., a_m`.
    pub values: Vec<BigInt>,
    /// `f_1, ..., f_m`; `f_i` has the `i` variables `x0, ..., x_{i-1}`.
    pub polys: Vec<IntPoly>,
    pub profile: BoundProfile,
    pub construction: Construction,
}

impl Chain {
    fn start(profile: BoundProfile, construction: Construction) -> Self {
        Chain { values: vec![BigInt::zero()], polys: Vec::new(), profile, construction }
    }

    /// Number of steps `m`.
    pub fn steps(&self) -> usize {
        self.polys.len()
    }

    pub fn last(&self) -> &BigInt {
        self.values.last().expect("a chain has at least a_0")
    }

    /// Appends `f(a_0, ..., a_{m})` where `terms` lists
    /// `(coefficient, [(index, power)])`; returns the new index.
    fn push(&mut self, terms: &[(i64, &[(usize, u32)])]) -> usize {
        let i = self.values.len();
        let mut f = IntPoly::zero(i);
        for (c, mono) in terms {
            let mut e = vec![0u32; i];
            for &(j, pw) in mono.iter() {
                e[j] += pw;
            }
            f = &f + &IntPoly::from_terms(i, [(e, *c)]);
        }
        let v = f.evaluate(&Integers, &self.values);
        self.values.push(v);
        self.polys.push(f);
        i
    }

    /// The guaranteed step count of the construction, where it has one.
    pub fn step_bound(&self) -> Option<u64> {
        match self.construction {
            Construction::Blocks { s, ell } => Some((1u64 << s) + 3 * ell as u64 - 2),
            _ => None,
        }
    }

    /// Distinct chain values.
    pub fn distinct_values(&self) -> usize {
        self.values.iter().collect::<BTreeSet<_>>().len()
    }

    /// One `value: polynomial` line per step (`a_0` is implicit).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, f) in self.values[1..].iter().zip(&self.polys) {
            out.push_str(&format!("{v}: {}\n", format_poly(f, &VarStyle::X0)));
        }
        out
    }

    /// Inverse of [`to_text`](Self::to_text); the result still has to pass
    /// [`verify_chain`].
    pub fn from_text(src: &str, profile: BoundProfile) -> Result<Chain> {
        let mut c = Chain::start(profile, Construction::External);
        for line in src.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (v, f) = line.split_once(':').ok_or_else(|| Error::Parse {
                input: line.into(),
                reason: "expected `value: polynomial`".into(),
            })?;
            let v: BigInt = v.trim().parse().map_err(|_| Error::Parse { input: v.into(), reason: "bad integer".into() })?;
            let i = c.values.len();
            let f = parse_poly(f.trim(), i, &VarStyle::X0)?;
            c.values.push(v);
            c.polys.push(f);
        }
        Ok(c)
    }
}

/// Recomputes every value over `Z` and checks every polynomial's bound.
pub fn verify_chain(c: &Chain) -> bool {
    if c.values.len() != c.polys.len() + 1 || !c.values[0].is_zero() {
        return false;
    }
    c.polys.iter().enumerate().all(|(j, f)| {
        let i = j + 1;
        f.nvars() == i
            && f.is_bounded(&c.profile)
            && !c.values[i].is_negative()
            && f.evaluate(&Integers, &c.values[..i]) == c.values[i]
    })
}

fn unary(r: &BigUint, profile: BoundProfile) -> Chain {
    let mut c = Chain::start(profile, Construction::Unary);
    let r = r.to_usize().expect("unary chains are only built for small targets");
    for i in 0..r {
        c.push(&[(1, &[(i, 1)]), (1, &[])]);
    }
    c
}

/// `s = ceil(log2(log2 r / (k log2 log2 r)))`, at least 1.
fn block_width(r: &BigUint, k: u32) -> u32 {
    let l = log2_big(r);
    let ll = Float::log2(l);
    let s = Float::ceil(Float::log2(l / (k as f64 * ll)));
    if s.is_finite() && s >= 1.0 { s as u32 } else { 1 }
}

/// A `(k, k)`-chain ending at `r`, following the block construction:
/// a counter `0..2^s`, one step per base-`2^(sk)` digit of `r`, then
/// alternating power and accumulate steps. Targets below 16 use the
/// counter alone.
pub fn build_chain(r: &BigUint, k: u32) -> Result<Chain> {
    if k < 2 {
        return Err(Error::InvalidInput("chains need k >= 2".into()));
    }
    let profile = BoundProfile::square(k);
    if *r < BigUint::from(16u32) {
        return Ok(unary(r, profile));
    }
    let s = block_width(r, k);
    let width = (s * k) as u64;
    let bits = r.bits();
    let ell = bits.div_ceil(width) as u32;
    let mut c = Chain::start(profile, Construction::Blocks { s, ell });
    let top = 1usize << s;
    for i in 0..top {
        c.push(&[(1, &[(i, 1)]), (1, &[])]);
    }
    let mask = (BigUint::one() << s) - 1u32;
    // digits p_i = sum_j 2^(sj) p_ij, step a_(2^s+1+i) = sum_j a_(2^s)^j a_(p_ij)
    for i in 0..ell as u64 {
        let block = r >> (i * width);
        let mut terms: Vec<(i64, Vec<(usize, u32)>)> = Vec::new();
        for j in 0..k {
            let pij = ((&block >> (j * s)) & &mask).to_usize().unwrap();
            let mut mono = vec![(pij, 1)];
            if j > 0 {
                mono.push((top, j));
            }
            terms.push((1, mono));
        }
        let refs: Vec<(i64, &[(usize, u32)])> = terms.iter().map(|(c, m)| (*c, m.as_slice())).collect();
        c.push(&refs);
    }
    let digit = |i: usize| top + 1 + i;
    let mut power = 0;
    let mut acc = digit(0);
    for i in 1..ell as usize {
        power = if i == 1 { c.push(&[(1, &[(top, k)])]) } else { c.push(&[(1, &[(power, 1), (top + ell as usize + 1, 1)])]) };
        acc = c.push(&[(1, &[(power, 1), (digit(i), 1)]), (1, &[(acc, 1)])]);
    }
    if c.last() != &BigInt::from(r.clone()) {
        return Err(Error::Internal(format!("block chain ends at {} instead of {r}", c.last())));
    }
    Ok(c)
}

/// The special forms with short `(2, 2)`-chains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialForm {
    Mersenne,
    Fermat,
}

fn exact_log2(v: &BigUint) -> Option<u32> {
    (!v.is_zero() && v.count_ones() == 1).then(|| v.trailing_zeros().unwrap() as u32)
}

/// The short `(2, 2)`-chain for `p = 2^n - 1` or `p = 2^(2^n) + 1`.
pub fn build_special_chain(p: &BigUint, form: SpecialForm) -> Result<Chain> {
    let profile = BoundProfile::square(2);
    match form {
        SpecialForm::Mersenne => {
            let n = exact_log2(&(p + 1u32)).filter(|&n| n >= 1).ok_or_else(|| Error::InvalidInput(format!("{p} is not 2^n - 1")))?;
            let mut c = Chain::start(profile, Construction::Mersenne { n });
            let one = c.push(&[(1, &[])]);
            let mut pow = c.push(&[(1, &[(one, 1)]), (1, &[(one, 1)])]);
            let mut acc = None;
            for j in 0..32 - n.leading_zeros() {
                if j > 0 {
                    pow = c.push(&[(1, &[(pow, 2)])]);
                }
                if n >> j & 1 == 1 {
                    acc = Some(match acc {
                        None => pow,
                        Some(a) => c.push(&[(1, &[(a, 1), (pow, 1)])]),
                    });
                }
            }
            c.push(&[(1, &[(acc.unwrap(), 1)]), (-1, &[])]);
            Ok(c)
        }
        SpecialForm::Fermat => {
            let e = exact_log2(&(p - 1u32)).filter(|_| *p > BigUint::one()).ok_or_else(|| Error::InvalidInput(format!("{p} is not 2^(2^n) + 1")))?;
            let n = exact_log2(&BigUint::from(e)).ok_or_else(|| Error::InvalidInput(format!("{p} is not 2^(2^n) + 1")))?;
            let mut c = Chain::start(profile, Construction::Fermat { n });
            let one = c.push(&[(1, &[])]);
            let mut pow = c.push(&[(1, &[(one, 1)]), (1, &[(one, 1)])]);
            for _ in 0..n {
                pow = c.push(&[(1, &[(pow, 2)])]);
            }
            c.push(&[(1, &[(pow, 1)]), (1, &[])]);
            Ok(c)
        }
    }
}

/// The special form of `p`, if any (Fermat is preferred when both apply).
pub fn special_form(p: &BigUint) -> Option<SpecialForm> {
    if *p > BigUint::one() && exact_log2(&(p - 1u32)).is_some_and(|e| e.is_power_of_two()) {
        return Some(SpecialForm::Fermat);
    }
    exact_log2(&(p + 1u32)).filter(|&n| n >= 1).map(|_| SpecialForm::Mersenne)
}

/// Counting bound for numbers `(k, k)`-constructible in at most `n` steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructibleCount {
    /// `prod_{i=1}^n (3ki)^k`.
    pub product: BigUint,
    /// `(3k)^(kn) n^(kn)`.
    pub split: BigUint,
    /// `n^(2kn)`, valid as a further bound when `n >= 3k`.
    pub simplified: Option<BigUint>,
}

pub fn count_constructible_upper(n: u32, k: u32) -> ConstructibleCount {
    let kb = BigUint::from(k);
    let product = (1..=n).fold(BigUint::one(), |acc, i| acc * (BigUint::from(3 * i) * &kb).pow(k));
    let nb = BigUint::from(n);
    let split = (BigUint::from(3 * k)).pow(k * n) * nb.pow(k * n);
    let simplified = (n >= 3 * k).then(|| nb.pow(2 * k * n));
    ConstructibleCount { product, split, simplified }
}

/// `n = floor(ln p / (2k ln ln p))`, together with the counting bound at
/// `n` and whether it is below `p` (so some number in `1..p` needs more
/// than `n` steps).
pub fn certify_not_all_constructible(p: &BigUint, k: u32) -> (u32, BigUint, bool) {
    let ln = log2_big(p) * core::f64::consts::LN_2;
    let n = Float::floor(ln / (2.0 * k as f64 * Float::ln(ln))).max(0.0) as u32;
    let bound = count_constructible_upper(n, k).product;
    let ok = bound < *p;
    (n, bound, ok)
}

/// A residue set together with the chain that witnesses it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdversarialSet {
    pub p: u64,
    pub k: u32,
    /// Distinct residues of the chain values, ascending.
    pub residues: Vec<u64>,
    /// A verified `(k-1, k-1)`-chain ending at `p`.
    pub chain: Chain,
}

impl AdversarialSet {
    /// Distinct integers in the chain.
    pub fn chain_value_count(&self) -> usize {
        self.chain.distinct_values()
    }
}

/// Reduces the shortest available `(k-1, k-1)`-chain for `p` modulo `p`.
pub fn adversarial_set(p: u64, k: u32) -> Result<AdversarialSet> {
    ensure_prime(p)?;
    if k < 3 {
        return Err(Error::InvalidInput("adversarial sets need k >= 3".into()));
    }
    let pb = BigUint::from(p);
    let mut chain = build_chain(&pb, k - 1)?;
    if let Some(form) = special_form(&pb) {
        let mut special = build_special_chain(&pb, form)?;
        special.profile = BoundProfile::square(k - 1);
        if special.steps() < chain.steps() {
            chain = special;
        }
    }
    if !verify_chain(&chain) {
        return Err(Error::Internal(format!("chain for {p} does not verify")));
    }
    let residues: BTreeSet<u64> = chain.values.iter().map(|v| big_mod(v, p)).collect();
    Ok(AdversarialSet { p, k, residues: residues.into_iter().collect(), chain })
}

/// `log2 log2 p` for step-count comparisons.
pub fn log2_log2(p: &BigUint) -> f64 {
    Float::log2(log2_big(p))
}
