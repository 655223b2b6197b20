//! Rectification of small subsets of `F_p`.
//!
//! The pipeline has three stages:
//!
//! 1. [`eliminate_forward`] eliminates `x_1, x_2, ...` in turn. At level `i`
//!    every relation is truncated at its degree under `σ` (evaluation of the
//!    remaining variables at `A` mod `p`). The dropped coefficients move
//!    down a level, together with the coefficients of the multi-resultant
//!    and of the vanishing principal subresultants. A [`BoundLedger`]
//!    tracks the worst-case norms and degrees.
//! 2. [`back_substitute`] walks back up. It adjoins a root of the gcd of
//!    the specialized truncations at each level, anchored at `a_i`.
//! 3. [`verify_ring_isomorphism`] checks every bounded relation in both
//!    directions.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::arith::{ensure_prime, pow_lt};
use crate::domain::{IntPolyRing, PrimeField, Ring};
use crate::poly::{enumerate_bounded, vanishing_relations};
use crate::poly::{BoundProfile, Degree, IntPoly};
use crate::resultant::{aggregate, gcd_many, principal_subresultants, resultant};
use crate::tower::{select_compatible_root, Tower, TowerElem};
use crate::upoly::DomainPoly;
use crate::{Error, Result};

/// Ledger entries above this many bits are only tracked as lower bounds.
const LEDGER_BITS_CAP: u64 = 1 << 25;

/// A ledger value: exact, or known only to be at least `2^bits`.
#[derive(Clone, PartialEq, Eq)]
pub enum LedgerValue {
    Exact(BigUint),
    AtLeastPow2(u64),
}

impl LedgerValue {
    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            LedgerValue::Exact(v) => Some(v),
            LedgerValue::AtLeastPow2(_) => None,
        }
    }

    /// `floor(log2)` for exact values, the known lower bound otherwise.
    fn log2_floor(&self) -> u64 {
        match self {
            LedgerValue::Exact(v) => v.bits().saturating_sub(1),
            LedgerValue::AtLeastPow2(b) => *b,
        }
    }

    /// `self < bound`; never certified for a lower bound.
    pub fn lt(&self, bound: &BigUint) -> bool {
        match self {
            LedgerValue::Exact(v) => v < bound,
            LedgerValue::AtLeastPow2(_) => false,
        }
    }

    /// `x <= self`, decided soundly: a lower bound only certifies values
    /// below it.
    pub fn dominates(&self, x: &BigUint) -> bool {
        match self {
            LedgerValue::Exact(v) => x <= v,
            LedgerValue::AtLeastPow2(b) => x.bits() <= *b,
        }
    }
}

impl fmt::Display for LedgerValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LedgerValue::Exact(v) if v.bits() <= 256 => write!(f, "{v}"),
            LedgerValue::Exact(v) => write!(f, "2^{}+", v.bits() - 1),
            LedgerValue::AtLeastPow2(b) => write!(f, ">=2^{b}"),
        }
    }
}

impl fmt::Debug for LedgerValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Worst-case norm `u_i` and degree `v_i` of the relations at each level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundLedger {
    pub k: u64,
    pub t: u32,
    pub u: Vec<LedgerValue>,
    pub v: Vec<LedgerValue>,
}

impl BoundLedger {
    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    /// Is `f` `(u_i, v_i)`-bounded?
    pub fn admits(&self, i: usize, f: &IntPoly) -> bool {
        let deg = match f.total_degree() {
            Degree::NegInf => return true,
            Degree::Finite(d) => BigUint::from(d),
        };
        self.u[i].dominates(&f.l1_norm()) && self.v[i].dominates(&deg)
    }
}

fn ledger_step(u: &LedgerValue, v: &LedgerValue) -> (LedgerValue, LedgerValue) {
    let (lu, lv) = (u.log2_floor(), v.log2_floor());
    let v_small = v.exact().and_then(|v| v.to_u64());
    // u' = u^(2v) v^v, v' = 2 v^2
    let next_u = match (u, v_small) {
        (LedgerValue::Exact(ue), Some(vs))
            if (2 * vs).saturating_mul(ue.bits()).saturating_add(vs.saturating_mul(64)) <= LEDGER_BITS_CAP =>
        {
            let vs32 = vs as u32;
            LedgerValue::Exact(ue.pow(2 * vs32) * BigUint::from(vs).pow(vs32))
        }
        _ => {
            let vmin = v_small.unwrap_or_else(|| 1u64.checked_shl(lv.min(63) as u32).unwrap_or(u64::MAX));
            LedgerValue::AtLeastPow2(vmin.saturating_mul(2).saturating_mul(lu).saturating_add(vmin.saturating_mul(lv)))
        }
    };
    let next_v = match v.exact() {
        Some(ve) if 2 * ve.bits() + 1 <= LEDGER_BITS_CAP => LedgerValue::Exact(ve * ve * 2u32),
        _ => LedgerValue::AtLeastPow2((2 * lv).saturating_add(1)),
    };
    (next_u, next_v)
}

/// `v_i = 2^(2^i - 1) t^(2^i)`, when small enough to write down.
pub fn closed_form_v(t: u32, i: usize) -> Option<BigUint> {
    if i > 24 {
        return None;
    }
    let e = 1u32 << i;
    Some((BigUint::one() << (e - 1)) * BigUint::from(t).pow(e))
}

/// `u_0 = k`, `v_0 = t`, `u_i = u_{i-1}^(2 v_{i-1}) v_{i-1}^(v_{i-1})`,
/// `v_i = 2 v_{i-1}^2`, through index `n`.
pub fn bound_sequence(k: u64, t: u32, n: usize) -> BoundLedger {
    let mut u = vec![LedgerValue::Exact(BigUint::from(k))];
    let mut v = vec![LedgerValue::Exact(BigUint::from(t))];
    for i in 1..=n {
        let (nu, nv) = ledger_step(&u[i - 1], &v[i - 1]);
        if let (LedgerValue::Exact(x), Some(c)) = (&nv, closed_form_v(t, i)) {
            debug_assert_eq!(*x, c, "degree recurrence disagrees with its closed form");
        }
        u.push(nu);
        v.push(nv);
    }
    BoundLedger { k, t, u, v }
}

/// The two size conditions for `n` points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gate {
    /// `n < log2 log_{2t} log_{2kt} p - 1`, the sufficient condition on `|A|`.
    pub guaranteed: bool,
    /// `u_n < p`, the condition the elimination actually uses.
    pub exact_ok: bool,
}

/// Evaluates both gates exactly. The logarithmic inequality is equivalent to
/// `(2kt)^((2t)^(2^(n+1))) < p`.
pub fn guarantee_gate(n: usize, k: u64, t: u32, p: u64) -> Gate {
    let pb = BigUint::from(p);
    let two_t = BigUint::from(2 * t as u64);
    let guaranteed = match u32::try_from(n + 1).ok().filter(|&e| e < 64) {
        None => false,
        Some(e) => {
            let outer = BigUint::one() << e;
            // p < 2^64, so an exponent of 64 or more already fails.
            if !pow_lt(&two_t, &outer, &BigUint::from(65u32)) {
                false
            } else {
                let exp = num_traits::pow::Pow::pow(&two_t, outer.to_u32().unwrap());
                pow_lt(&BigUint::from(2 * k * t as u64), &exp, &pb)
            }
        }
    };
    let exact_ok = bound_sequence(k, t, n).u[n].lt(&pb);
    Gate { guaranteed, exact_ok }
}

/// When to abort because the bound `u_i < p` is in doubt.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BoundPolicy {
    /// Abort when a relation actually reached at some level has
    /// `‖f‖₁ ≥ p`. This is the instance of `u_i < p` that the argument
    /// uses.
    #[default]
    Observed,
    /// Abort as soon as a level is reached with `u_i ≥ p`.
    Ledger,
    /// Never abort; verification decides.
    Force,
}

/// Why forward elimination stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    /// `L^r` is empty.
    Empty,
    /// `L^r = {0}`: everything pushed down was zero.
    Zero,
}

/// One level of forward elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationLevel {
    /// `L^i`, deduplicated and free of zeros.
    pub relations: Vec<IntPoly>,
    /// The truncations `f_j'` (aligned with `relations`).
    pub truncated: Vec<IntPoly>,
    /// σ-degree of each relation in the eliminated variable.
    pub sigma_degrees: Vec<Degree>,
    /// Index (into `relations`) of `F1`, if some truncation involves the
    /// variable.
    pub pivot: Option<usize>,
    /// Least `δ` with `σ(s_δδ) ≠ 0`.
    pub delta: Option<u32>,
    /// Number of auxiliary `y` variables in `F2`.
    pub y_vars: usize,
    /// Largest L1 norm in `relations`.
    pub max_norm: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationChain {
    pub p: u64,
    pub points: Vec<u64>,
    pub profile: BoundProfile,
    pub ledger: BoundLedger,
    /// Levels `0..r`; `levels[i]` eliminates `x_{i+1}`.
    pub levels: Vec<EliminationLevel>,
    pub stop: StopReason,
    /// `u_i < p` at every level that was reached with relations.
    pub exact_ok: bool,
}

impl EliminationChain {
    /// The stop level `r`.
    pub fn r(&self) -> usize {
        self.levels.len()
    }
}

fn sigma_nonzero(f: &IntPoly, n: usize, field: &PrimeField, point: &[u64]) -> bool {
    if f.nvars() == n {
        return !field.is_zero(&f.evaluate(field, point));
    }
    f.split_tail(n).iter().any(|(_, c)| !field.is_zero(&c.evaluate(field, point)))
}

fn max_norm(fs: &[IntPoly]) -> BigUint {
    fs.iter().map(|f| f.l1_norm()).max().unwrap_or_default()
}

/// Stages B and C: the coefficients of every y-monomial in
/// `s_00 = res(F1, F2), ..., s_(δ-1)(δ-1)`, together with `δ`.
fn multi_resultant_coefficients(
    fs: &[IntPoly],
    i: usize,
    n: usize,
    field: &PrimeField,
    point: &[u64],
) -> Result<(Vec<IntPoly>, u32)> {
    let (f1, f2) = aggregate(fs)?;
    let ring = IntPolyRing::new(f1.nvars());
    let seq = principal_subresultants(&ring, &f1.to_univariate(i), &f2.to_univariate(i), |_, s| {
        sigma_nonzero(s, n, field, point)
    })?;
    let d = seq.len() - 1;
    if !sigma_nonzero(&seq[d], n, field, point) {
        return Err(Error::Internal(format!("no principal subresultant survives σ at level {i}")));
    }
    let mut out = Vec::new();
    for s in &seq[..d] {
        out.extend(s.split_tail(n).into_iter().map(|(_, c)| c));
    }
    Ok((out, d as u32))
}

/// Same output as [`multi_resultant_coefficients`] when the pivot `fs[0]`
/// is linear in `x_i`: then `δ = 1` and `res(F1, F2)` is linear in the
/// y's, its coefficient at `f_j` being `lc(F1)^(q - q_j) res(F1, f_j)`.
/// Avoids materialising `F2` over thousands of auxiliary variables.
fn linear_pivot_coefficients(fs: &[IntPoly], i: usize) -> Result<Vec<IntPoly>> {
    let nv = fs[0].nvars();
    let ring = IntPolyRing::new(nv);
    let f1 = fs[0].to_univariate(i);
    let a = f1.lc().cloned().ok_or_else(|| Error::Internal("zero pivot".into()))?;
    let us: Vec<_> = fs[1..].iter().map(|f| f.to_univariate(i)).collect();
    let q = us.iter().map(|u| u.coeffs().len().saturating_sub(1)).max().unwrap_or(0);
    let mut out = Vec::with_capacity(us.len());
    for u in &us {
        let r = resultant(&ring, &f1, u);
        let e = (q - u.coeffs().len().saturating_sub(1)) as u32;
        out.push(if e == 0 { r } else { &r * &a.pow(e) });
    }
    Ok(out)
}

/// Forward elimination of `x_1, ..., x_n` from the relations `l1`, which
/// must be `profile`-bounded and vanish at `a` mod `p`.
pub fn eliminate_forward(
    l1: &[IntPoly],
    a: &[u64],
    p: u64,
    profile: BoundProfile,
    policy: BoundPolicy,
) -> Result<EliminationChain> {
    let field = PrimeField::new(p)?;
    let n = a.len();
    let point: Vec<u64> = a.iter().map(|&v| v % p).collect();
    let ledger = bound_sequence(profile.k, profile.t, n);
    let pb = BigUint::from(p);
    for f in l1 {
        if f.nvars() != n {
            return Err(Error::DimensionMismatch { expected: n, found: f.nvars() });
        }
        if !f.is_bounded(&profile) {
            return Err(Error::InvalidInput(format!("relation {f} is not ({}, {})-bounded", profile.k, profile.t)));
        }
        if sigma_nonzero(f, n, &field, &point) {
            return Err(Error::Inconsistent(format!("relation {f} does not vanish at the points mod {p}")));
        }
    }
    let mut current: Vec<IntPoly> = l1.iter().filter(|f| !f.is_zero()).cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let mut had_zero = l1.iter().any(|f| f.is_zero());
    let mut levels = Vec::new();
    let mut exact_ok = true;
    check_policy(0, &current, &ledger, &pb, policy, &mut exact_ok)?;
    let mut i = 0;
    while !current.is_empty() {
        if i == n {
            return Err(Error::BoundExceeded {
                level: n,
                detail: format!("non-zero constants survive elimination: {}", join(&current)),
            });
        }
        let mut next: BTreeSet<IntPoly> = BTreeSet::new();
        let mut push = |g: IntPoly, had_zero: &mut bool| {
            if g.is_zero() {
                *had_zero = true;
            } else {
                next.insert(g);
            }
        };
        // Stage A: truncate at the σ-degree.
        let mut truncated = Vec::with_capacity(current.len());
        let mut sigma_degrees = Vec::with_capacity(current.len());
        for f in &current {
            let u = f.to_univariate(i);
            let deg = (0..u.coeffs().len()).rev().find(|&l| sigma_nonzero(&u.coeffs()[l], n, &field, &point));
            let keep = deg.map_or(0, |d| d + 1);
            for c in &u.coeffs()[keep..] {
                push(c.clone(), &mut had_zero);
            }
            let kept = DomainPoly::from_coeffs(&IntPolyRing::new(n), u.coeffs()[..keep].to_vec());
            truncated.push(IntPoly::from_univariate(n, i, &kept));
            sigma_degrees.push(deg.map_or(Degree::NegInf, |d| Degree::Finite(d as u32)));
        }
        if let Some(j) = sigma_degrees.iter().position(|d| *d == Degree::Finite(0)) {
            return Err(Error::Internal(format!("relation {} keeps a σ-constant truncation", current[j])));
        }
        let pivot = (0..current.len())
            .filter(|&j| sigma_degrees[j].is_positive())
            .min_by_key(|&j| (sigma_degrees[j], j));
        let mut delta = None;
        let mut y_vars = 0;
        if let Some(pv) = pivot {
            let mut fs = vec![truncated[pv].clone()];
            fs.extend((0..current.len()).filter(|&j| j != pv && !truncated[j].is_zero()).map(|j| truncated[j].clone()));
            y_vars = fs.len().saturating_sub(2);
            if fs.len() == 1 {
                delta = sigma_degrees[pv].finite();
            } else {
                let (coeffs, d) = if sigma_degrees[pv] == Degree::Finite(1) {
                    (linear_pivot_coefficients(&fs, i)?, 1)
                } else {
                    multi_resultant_coefficients(&fs, i, n, &field, &point)?
                };
                if d == 0 {
                    return Err(Error::Internal(format!("σ(res) ≠ 0 at level {i} although the points are a common root")));
                }
                for c in coeffs {
                    push(c, &mut had_zero);
                }
                delta = Some(d);
            }
        }
        let next: Vec<IntPoly> = next.into_iter().collect();
        for g in &next {
            if sigma_nonzero(g, n, &field, &point) {
                return Err(Error::Internal(format!("pushed relation {g} does not vanish under σ at level {}", i + 1)));
            }
            if !ledger.admits(i + 1, g) {
                return Err(Error::Internal(format!(
                    "pushed relation {g} exceeds the ledger bound ({}, {}) at level {}",
                    ledger.u[i + 1],
                    ledger.v[i + 1],
                    i + 1
                )));
            }
        }
        levels.push(EliminationLevel {
            max_norm: max_norm(&current),
            relations: current,
            truncated,
            sigma_degrees,
            pivot,
            delta,
            y_vars,
        });
        if !next.is_empty() {
            check_policy(i + 1, &next, &ledger, &pb, policy, &mut exact_ok)?;
        }
        current = next;
        i += 1;
    }
    let stop = if had_zero { StopReason::Zero } else { StopReason::Empty };
    Ok(EliminationChain { p, points: point, profile, ledger, levels, stop, exact_ok })
}

fn join(fs: &[IntPoly]) -> String {
    fs.iter().map(|f| format!("{f}")).collect::<Vec<_>>().join(", ")
}

fn check_policy(
    level: usize,
    rels: &[IntPoly],
    ledger: &BoundLedger,
    p: &BigUint,
    policy: BoundPolicy,
    exact_ok: &mut bool,
) -> Result<()> {
    let ledger_ok = ledger.u[level].lt(p);
    *exact_ok &= ledger_ok;
    match policy {
        BoundPolicy::Ledger if !ledger_ok => Err(Error::BoundExceeded {
            level,
            detail: format!("u_{level} = {} is not below p = {p}", ledger.u[level]),
        }),
        BoundPolicy::Observed => match rels.iter().find(|f| f.l1_norm() >= *p) {
            Some(f) => Err(Error::BoundExceeded {
                level,
                detail: format!("relation {f} at level {level} has L1 norm {} >= p = {p}", f.l1_norm()),
            }),
            None => Ok(()),
        },
        _ => Ok(()),
    }
}

/// Walks the chain back up, building the tower and the points.
pub fn back_substitute(chain: &EliminationChain) -> Result<(Tower, Vec<TowerElem>)> {
    let n = chain.points.len();
    let r = chain.r();
    let mut tower = Tower::new(chain.p)?;
    let mut b: Vec<TowerElem> = vec![TowerElem::zero(); n];
    for j in r..n {
        b[j] = TowerElem::from_int(chain.points[j]);
    }
    for i in (0..r).rev() {
        let level = &chain.levels[i];
        let a_i = chain.points[i];
        match level.pivot {
            None => b[i] = TowerElem::from_int(a_i),
            Some(_) => {
                let field = tower.field();
                let specs: Vec<_> = level
                    .truncated
                    .iter()
                    .filter(|f| !f.is_zero())
                    .map(|f| f.specialize_univariate(&field, i, &b))
                    .collect();
                let g = gcd_many(&field, &specs)?;
                let delta = level.delta.unwrap_or(0) as usize;
                if g.deg_usize() != delta {
                    return Err(Error::Internal(format!(
                        "gcd at level {i} has degree {} but δ = {delta}; relations: {}",
                        g.deg_usize(),
                        join(&level.relations)
                    )));
                }
                let (ext, root) = select_compatible_root(&tower, &g, a_i)?;
                tower = ext;
                b[i] = root;
            }
        }
        let field = tower.field();
        for f in &level.relations {
            if !f.evaluate(&field, &b).is_zero() {
                return Err(Error::Internal(format!("relation {f} does not vanish at the lifted points (level {i})")));
            }
        }
    }
    Ok((tower, b))
}

/// The first relation whose vanishing differs between the two sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub poly: IntPoly,
    pub zero_mod_p: bool,
    pub zero_lifted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    /// Number of bounded polynomials checked.
    pub checked: u64,
    /// How many of them vanish at `A` mod `p`.
    pub relations: u64,
    pub discrepancy: Option<Discrepancy>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.discrepancy.is_none()
    }
}

/// Checks, for every `profile`-bounded polynomial `f`, that `f(A) = 0` in
/// `F_p` exactly when `f(points) = 0` in the tower. Stops at the first
/// discrepancy.
pub fn verify_ring_isomorphism(
    a: &[u64],
    p: u64,
    tower: &Tower,
    points: &[TowerElem],
    profile: BoundProfile,
) -> Result<VerificationReport> {
    if a.len() != points.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), found: points.len() });
    }
    let fp = PrimeField::new(p)?;
    let field = tower.field();
    let a: Vec<u64> = a.iter().map(|&v| v % p).collect();
    let mut report = VerificationReport { checked: 0, relations: 0, discrepancy: None };
    for f in enumerate_bounded(a.len(), profile) {
        let zero_mod_p = fp.is_zero(&f.evaluate(&fp, &a));
        let zero_lifted = f.evaluate(&field, points).is_zero();
        report.checked += 1;
        report.relations += zero_mod_p as u64;
        if zero_mod_p != zero_lifted {
            report.discrepancy = Some(Discrepancy { poly: f, zero_mod_p, zero_lifted });
            break;
        }
    }
    Ok(report)
}

/// [`verify_ring_isomorphism`] for rational candidates.
pub fn verify_rational(a: &[u64], p: u64, points: &[BigRational], profile: BoundProfile) -> Result<VerificationReport> {
    let tower = Tower::new(p)?;
    let pts: Vec<TowerElem> = points.iter().map(|q| TowerElem::from_rational(q.clone())).collect();
    verify_ring_isomorphism(a, p, &tower, &pts, profile)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectifyOptions {
    /// The relation bound `k` (norm and degree unless `t` is given).
    pub k: u32,
    /// Degree bound for the relations; defaults to `k`.
    pub t: Option<u32>,
    pub policy: BoundPolicy,
    /// Elimination order as a permutation of `0..n` (`order[0]` goes
    /// first); defaults to the input order.
    pub order: Option<Vec<usize>>,
    /// Refuse to run unless the logarithmic size gate holds.
    pub require_guarantee: bool,
}

impl RectifyOptions {
    pub fn new(k: u32) -> Self {
        RectifyOptions { k, t: None, policy: BoundPolicy::default(), order: None, require_guarantee: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectifiedSet {
    pub p: u64,
    pub input: Vec<u64>,
    pub profile: BoundProfile,
    pub tower: Tower,
    pub points: Vec<TowerElem>,
    pub anchors: Vec<u64>,
    pub guaranteed: bool,
    pub exact_ok: bool,
    pub verified: bool,
    pub report: VerificationReport,
    pub chain: EliminationChain,
}

impl RectifiedSet {
    pub fn tower_degree(&self) -> u64 {
        self.tower.degree()
    }

    /// `[K : Q] <= (2t)^(2^n)`.
    pub fn degree_within_bound(&self) -> bool {
        let n = self.input.len();
        let exp = BigUint::one() << n;
        !pow_lt(&BigUint::from(2 * self.profile.t as u64), &exp, &BigUint::from(self.tower_degree()))
    }
}

/// Rectifies `a ⊂ F_p` with respect to `k`-bounded relations.
pub fn rectify(a: &[u64], p: u64, k: u32, force: bool) -> Result<RectifiedSet> {
    let mut opts = RectifyOptions::new(k);
    if force {
        opts.policy = BoundPolicy::Force;
    }
    rectify_with(a, p, &opts)
}

pub fn rectify_with(a: &[u64], p: u64, opts: &RectifyOptions) -> Result<RectifiedSet> {
    ensure_prime(p)?;
    let n = a.len();
    let input: Vec<u64> = a.iter().map(|&v| v % p).collect();
    if input.iter().collect::<BTreeSet<_>>().len() != n {
        return Err(Error::InvalidInput("the set has repeated elements mod p".into()));
    }
    if opts.k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    let profile = BoundProfile::new(opts.k as u64, opts.t.unwrap_or(opts.k));
    let order: Vec<usize> = match &opts.order {
        None => (0..n).collect(),
        Some(o) => {
            let mut seen = o.clone();
            seen.sort_unstable();
            if seen != (0..n).collect::<Vec<_>>() {
                return Err(Error::InvalidInput(format!("{o:?} is not a permutation of 0..{n}")));
            }
            o.clone()
        }
    };
    let gate = guarantee_gate(n, profile.k, profile.t, p);
    if opts.require_guarantee && !gate.guaranteed {
        return Err(Error::BoundExceeded {
            level: 0,
            detail: format!("|A| = {n} does not satisfy the logarithmic size condition for p = {p}"),
        });
    }
    let permuted: Vec<u64> = order.iter().map(|&j| input[j]).collect();
    let l1 = vanishing_relations(&permuted, p, profile)?;
    let chain = eliminate_forward(&l1, &permuted, p, profile, opts.policy)?;
    let (tower, lifted) = back_substitute(&chain)?;
    let mut points = vec![TowerElem::zero(); n];
    for (s, &j) in order.iter().enumerate() {
        points[j] = lifted[s].clone();
    }
    let anchors = points.iter().map(|b| tower.apply_anchor(b)).collect::<Result<Vec<_>>>()?;
    if anchors != input {
        return Err(Error::Internal(format!("anchors {anchors:?} differ from the input {input:?}")));
    }
    let report = verify_ring_isomorphism(&input, p, &tower, &points, profile)?;
    Ok(RectifiedSet {
        p,
        input,
        profile,
        tower,
        points,
        anchors,
        guaranteed: gate.guaranteed,
        exact_ok: chain.exact_ok,
        verified: report.passed(),
        report,
        chain,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::x;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn linear_pivot_shortcut_matches_multi_resultant() {
        use crate::text::{parse_poly, VarStyle};
        let style = VarStyle::X;
        let cases: &[&[&str]] = &[
            &["3*x1 - x2", "x1^2*x2 + x1 - 2", "x1^3 - x2*x3", "2*x1^2 + x3"],
            &["x1 + x2", "x1*x2 - 1"],
            &["2*x1 - 1", "x1 - x2", "x1*x3 + x2^2 - 4*x1", "x1^3*x2 - x3"],
        ];
        for fs in cases {
            let fs: Vec<IntPoly> = fs.iter().map(|s| parse_poly(s, 3, &style).unwrap()).collect();
            let fast = linear_pivot_coefficients(&fs, 0).unwrap();
            let ring = IntPolyRing::new(3);
            let (f1, f2) = aggregate(&fs).unwrap();
            let r = resultant(&IntPolyRing::new(f1.nvars()), &f1.to_univariate(0), &f2.to_univariate(0));
            let mut slow: Vec<(Vec<u32>, IntPoly)> = r.split_tail(3);
            slow.sort();
            let mut fast_keyed: Vec<(Vec<u32>, IntPoly)> = fast
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !ring.is_zero(c))
                .map(|(j, c)| {
                    let mut key = vec![0; fs.len() - 2];
                    if j > 0 {
                        key[j - 1] = 1;
                    }
                    (key, c)
                })
                .collect();
            fast_keyed.sort();
            assert_eq!(fast_keyed, slow);
        }
    }

    #[test]
    fn ledger_values() {
        let l = bound_sequence(2, 2, 2);
        assert_eq!(l.v[1], LedgerValue::Exact(8u32.into()));
        assert_eq!(l.v[2], LedgerValue::Exact(128u32.into()));
        assert_eq!(l.u[1], LedgerValue::Exact(64u32.into()));
        for i in 0..=6 {
            let l = bound_sequence(3, 3, i);
            assert_eq!(l.v[i].exact(), closed_form_v(3, i).as_ref());
        }
    }

    #[test]
    fn huge_ledger_entries_are_lower_bounds() {
        let l = bound_sequence(3, 3, 6);
        assert!(matches!(l.u[6], LedgerValue::AtLeastPow2(_)));
        assert!(!l.u[6].lt(&BigUint::from(u64::MAX)));
        assert!(l.u[6].dominates(&BigUint::from(u64::MAX)));
    }

    #[test]
    fn gates() {
        let g = guarantee_gate(1, 2, 2, 101);
        assert!(!g.guaranteed);
        assert!(g.exact_ok);
        assert!(!guarantee_gate(1, 2, 2, 13).exact_ok);
        assert_eq!(guarantee_gate(0, 2, 2, 3), Gate { guaranteed: false, exact_ok: true });
        // n = 0, k = t = 1: (2)^(2^2) = 16 < p.
        assert!(guarantee_gate(0, 1, 1, 17).guaranteed);
        assert!(!guarantee_gate(0, 1, 1, 13).guaranteed);
    }

    #[test]
    fn empty_elimination() {
        let c = eliminate_forward(&[], &[3, 7], 11, BoundProfile::square(2), BoundPolicy::Observed).unwrap();
        assert_eq!(c.r(), 0);
        let (t, b) = back_substitute(&c).unwrap();
        assert!(t.is_empty());
        assert_eq!(b, vec![TowerElem::from_int(3), TowerElem::from_int(7)]);
    }

    #[test]
    fn single_linear_relation() {
        let f = &x(1, 1) - &IntPoly::constant(1, 4);
        let c = eliminate_forward(&[f], &[4], 7, BoundProfile::new(5, 1), BoundPolicy::Observed).unwrap();
        assert_eq!(c.r(), 1);
        assert_eq!(c.levels[0].delta, Some(1));
        let (_, b) = back_substitute(&c).unwrap();
        assert_eq!(b, vec![TowerElem::from_int(4)]);
    }

    #[test]
    fn gaussian_pair() {
        let rel = [&x(2, 1) - &IntPoly::one(2), &x(2, 2).pow(2) + &IntPoly::one(2)];
        let c = eliminate_forward(&rel, &[1, 5], 13, BoundProfile::square(2), BoundPolicy::Observed).unwrap();
        assert_eq!(c.r(), 2);
        let (t, b) = back_substitute(&c).unwrap();
        assert_eq!(t.degree(), 2);
        assert_eq!(b[0], TowerElem::one());
        assert_eq!(t.apply_anchor(&b[1]).unwrap(), 5);
    }

    #[test]
    fn rectify_small_sets() {
        let r = rectify(&[1, 5], 13, 2, false).unwrap();
        assert!(r.verified);
        assert_eq!(r.tower_degree(), 2);
        assert!(r.degree_within_bound());
        assert_eq!(r.anchors, vec![1, 5]);
        assert_eq!(r.tower.serialize()[0].1, "g1^2 + 1");

        let r = rectify(&[3, 7], 11, 2, false).unwrap();
        assert!(r.verified);
        assert_eq!(r.tower_degree(), 1);
        let prod = r.tower.mul(&r.points[0], &r.points[1]);
        assert_eq!(prod, TowerElem::from_int(-1));

        let r = rectify(&[0], 5, 2, false).unwrap();
        assert_eq!(r.points, vec![TowerElem::zero()]);
        assert!(r.verified);
    }

    #[test]
    fn strict_ledger_aborts() {
        let mut o = RectifyOptions::new(2);
        o.policy = BoundPolicy::Ledger;
        assert!(matches!(rectify_with(&[1, 5], 13, &o), Err(Error::BoundExceeded { level: 1, .. })));
        o.policy = BoundPolicy::Observed;
        o.require_guarantee = true;
        assert!(matches!(rectify_with(&[1, 5], 13, &o), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn verifier_examples() {
        let two = BoundProfile::square(2);
        assert!(verify_rational(&[3, 7], 11, &[q(-1, 2), q(2, 1)], two).unwrap().passed());
        let bad = verify_rational(&[3, 7], 11, &[q(3, 1), q(8, 1)], two).unwrap();
        assert!(!bad.passed());
        assert!(verify_rational(&[4], 101, &[q(4, 1)], two).unwrap().passed());
        assert!(verify_rational(&[4], 101, &[q(4, 1), q(1, 1)], two).is_err());
    }

    #[test]
    fn reordering() {
        let mut o = RectifyOptions::new(2);
        o.order = Some(vec![1, 0]);
        let r = rectify_with(&[5, 1], 13, &o).unwrap();
        assert!(r.verified);
        assert_eq!(r.anchors, vec![5, 1]);
    }
}
