//! Exact linear algebra: fraction-free determinants over any integral domain,
//! ranks over `Q` and `F_p`, and rectification of linear relations.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{big_mod, ensure_prime, inv_mod, pow_lt};
use crate::domain::{Field, Integers, PrimeField, Rationals, Ring};
use crate::poly::{enumerate_bounded, BoundProfile, Degree, IntPoly};
use crate::{Error, Result};

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            entries.extend(r.iter().map(|v| BigRational::from_integer(v.clone().into())));
        }
        Ok(ExactMatrix { rows: rows.len(), cols, entries })
    }

    pub fn from_rational_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            entries.extend(r);
        }
        Ok(ExactMatrix { rows: n, cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_integer(&self) -> bool {
        self.entries.iter().all(|e| e.is_integer())
    }

    /// Integer entries, or `None` if some entry has a denominator.
    pub fn integer_rows(&self) -> Option<Vec<Vec<BigInt>>> {
        if !self.is_integer() {
            return None;
        }
        Some((0..self.rows).map(|i| self.row(i).iter().map(|e| e.to_integer()).collect()).collect())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries = rows.iter().flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone())).collect();
        ExactMatrix { rows: rows.len(), cols: cols.len(), entries }
    }

    /// Sum of absolute values in row `i`.
    pub fn row_l1(&self, i: usize) -> BigRational {
        self.row(i).iter().map(|e| e.abs()).sum()
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Bareiss fraction-free elimination over an integral domain. Every division
/// is exact; row swaps flip the sign.
pub fn det_bareiss<R: Ring>(r: &R, mut m: Vec<Vec<R::Elem>>) -> R::Elem {
    let n = m.len();
    if n == 0 {
        return r.one();
    }
    let mut sign_neg = false;
    let mut prev = r.one();
    for k in 0..n - 1 {
        if r.is_zero(&m[k][k]) {
            match (k + 1..n).find(|&i| !r.is_zero(&m[i][k])) {
                Some(i) => {
                    m.swap(k, i);
                    sign_neg = !sign_neg;
                }
                None => return r.zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = r.sub(&r.mul(&m[i][j], &m[k][k]), &r.mul(&m[i][k], &m[k][j]));
                m[i][j] = r.div_exact(&num, &prev).expect("Bareiss division is exact over a domain");
            }
            m[i][k] = r.zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_neg {
        r.neg(&d)
    } else {
        d
    }
}

/// Laplace expansion along the first row. Exponential; an oracle for small
/// matrices and a fallback where exact division is unavailable.
pub fn det_cofactor<R: Ring>(r: &R, m: &[Vec<R::Elem>]) -> R::Elem {
    let n = m.len();
    match n {
        0 => r.one(),
        1 => m[0][0].clone(),
        2 => r.sub(&r.mul(&m[0][0], &m[1][1]), &r.mul(&m[0][1], &m[1][0])),
        _ => {
            let mut acc = r.zero();
            for j in 0..n {
                if r.is_zero(&m[0][j]) {
                    continue;
                }
                let minor: Vec<Vec<R::Elem>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
                    .collect();
                let t = r.mul(&m[0][j], &det_cofactor(r, &minor));
                acc = if j % 2 == 0 { r.add(&acc, &t) } else { r.sub(&acc, &t) };
            }
            acc
        }
    }
}

/// Determinant of a square rational matrix: rows are scaled to integers,
/// Bareiss runs over `Z`, and the scaling is divided out.
pub fn det_exact(m: &ExactMatrix) -> Result<BigRational> {
    if m.rows != m.cols {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    let mut scale = BigInt::one();
    let rows: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|i| {
            let l = m.row(i).iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
            scale *= &l;
            m.row(i).iter().map(|e| (e * BigRational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    Ok(BigRational::new(det_bareiss(&Integers, rows), scale))
}

/// Rank over a field by Gaussian elimination; returns the pivot positions
/// `(row, col)` in the order found. Pivots are the first usable non-zero entry
/// scanning columns left to right and rows top to bottom.
pub fn pivots_over<F: Field>(f: &F, mut m: Vec<Vec<F::Elem>>) -> Vec<(usize, usize)> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut used = vec![false; rows];
    let mut pivots = Vec::new();
    for c in 0..cols {
        let Some(pr) = (0..rows).find(|&i| !used[i] && !f.is_zero(&m[i][c])) else {
            continue;
        };
        used[pr] = true;
        pivots.push((pr, c));
        let inv = f.inv(&m[pr][c]).expect("pivot is non-zero");
        for i in 0..rows {
            if used[i] || f.is_zero(&m[i][c]) {
                continue;
            }
            let factor = f.mul(&m[i][c], &inv);
            for j in c..cols {
                let t = f.mul(&factor, &m[pr][j]);
                m[i][j] = f.sub(&m[i][j], &t);
            }
        }
    }
    pivots
}

pub fn rank_rational(m: &ExactMatrix) -> usize {
    let rows = (0..m.rows).map(|i| m.row(i).to_vec()).collect();
    pivots_over(&Rationals, rows).len()
}

/// Ranks over `Q` and `F_p` plus a witness: row and column indices of a
/// maximal square submatrix that is non-singular mod `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankPair {
    pub rank_q: usize,
    pub rank_p: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

pub fn rank_pair(m: &ExactMatrix, p: u64) -> Result<RankPair> {
    ensure_prime(p)?;
    let ints = m
        .integer_rows()
        .ok_or_else(|| Error::InvalidInput("rank_pair needs an integer matrix".into()))?;
    let field = PrimeField::new(p)?;
    let reduced: Vec<Vec<u64>> = ints.iter().map(|r| r.iter().map(|v| big_mod(v, p)).collect()).collect();
    let piv = pivots_over(&field, reduced);
    let mut rows: Vec<usize> = piv.iter().map(|&(r, _)| r).collect();
    let cols: Vec<usize> = piv.iter().map(|&(_, c)| c).collect();
    rows.sort_unstable();
    Ok(RankPair { rank_q: rank_rational(m), rank_p: piv.len(), rows, cols })
}

/// An element of `Z_(p)`: a reduced fraction whose denominator is prime to `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizedRational {
    value: BigRational,
    p: u64,
}

impl LocalizedRational {
    pub fn new(value: BigRational, p: u64) -> Result<Self> {
        if big_mod(value.denom(), p) == 0 {
            return Err(Error::NotLocal { value: alloc::format!("{value}"), p });
        }
        Ok(LocalizedRational { value, p })
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn numer(&self) -> &BigInt {
        self.value.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.value.denom()
    }

    /// The canonical image in `F_p`.
    pub fn reduce(&self) -> u64 {
        let d = big_mod(self.value.denom(), self.p);
        let n = big_mod(self.value.numer(), self.p);
        crate::arith::mul_mod(n, inv_mod(d, self.p).expect("denominator is a unit"), self.p)
    }
}

impl fmt::Display for LocalizedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn linear_parts(f: &IntPoly) -> Result<(Vec<BigInt>, BigInt)> {
    if f.total_degree() > Degree::Finite(1) {
        return Err(Error::InvalidInput(alloc::format!("{f} is not linear")));
    }
    let n = f.nvars();
    let coeffs = (0..n).map(|i| f.coeff(&crate::poly::Monomial::var(n, i))).collect();
    Ok((coeffs, f.constant_term()))
}

/// Lifts `a ⊂ F_p` to `Z_(p)` preserving the vanishing of every polynomial
/// in `l1` and the non-vanishing of every polynomial in `l2`.
///
/// Pivot variables are solved by Cramer's rule on a submatrix that is
/// non-singular mod `p`; free variables keep their lifts in `0..p`. With
/// `k` the largest L1 norm among the inputs, `k^(n+1) < p` is required
/// unless `force` is set; the output is always checked.
pub fn lift_linear(a: &[u64], l1: &[IntPoly], l2: &[IntPoly], p: u64, force: bool) -> Result<Vec<LocalizedRational>> {
    ensure_prime(p)?;
    let n = a.len();
    let field = PrimeField::new(p)?;
    let point: Vec<u64> = a.iter().map(|&v| v % p).collect();
    for f in l1.iter().chain(l2) {
        if f.nvars() != n {
            return Err(Error::DimensionMismatch { expected: n, found: f.nvars() });
        }
    }
    let k = l1.iter().chain(l2).map(|f| f.l1_norm()).max().unwrap_or_default().max(BigUint::one());
    if !force && !pow_lt(&k, &BigUint::from(n as u64 + 1), &BigUint::from(p)) {
        return Err(Error::BoundExceeded {
            level: 0,
            detail: alloc::format!("k^(n+1) = {k}^{} is not below p = {p}", n + 1),
        });
    }

    let mut rows = Vec::with_capacity(l1.len());
    let mut rhs = Vec::with_capacity(l1.len());
    for f in l1 {
        if f.evaluate(&field, &point) != 0 {
            return Err(Error::Inconsistent(alloc::format!("{f} does not vanish at the input mod {p}")));
        }
        let (c, c0) = linear_parts(f)?;
        rows.push(c);
        rhs.push(-c0);
    }
    for f in l2 {
        linear_parts(f)?;
    }

    let m = ExactMatrix::from_rows(&rows)?;
    let rp = rank_pair(&m, p)?;
    let mut b: Vec<BigRational> = point.iter().map(|&v| BigRational::from_integer(v.into())).collect();
    if !rp.cols.is_empty() {
        let free: Vec<usize> = (0..n).filter(|j| !rp.cols.contains(j)).collect();
        // M1 * x_C = rhs_R - M_{R,free} * a_free
        let sys_rhs: Vec<BigInt> = rp
            .rows
            .iter()
            .map(|&i| free.iter().fold(rhs[i].clone(), |acc, &j| acc - &rows[i][j] * BigInt::from(point[j])))
            .collect();
        let m1: Vec<Vec<BigInt>> = rp.rows.iter().map(|&i| rp.cols.iter().map(|&j| rows[i][j].clone()).collect()).collect();
        let det = det_bareiss(&Integers, m1.clone());
        for (c_idx, &var) in rp.cols.iter().enumerate() {
            let mut mc = m1.clone();
            for (r_idx, row) in mc.iter_mut().enumerate() {
                row[c_idx] = sys_rhs[r_idx].clone();
            }
            b[var] = BigRational::new(det_bareiss(&Integers, mc), det.clone());
        }
    }

    let out: Vec<LocalizedRational> = b.into_iter().map(|v| LocalizedRational::new(v, p)).collect::<Result<_>>()?;
    let vals: Vec<BigRational> = out.iter().map(|v| v.value.clone()).collect();
    for (i, v) in out.iter().enumerate() {
        if v.reduce() != point[i] {
            return Err(Error::VerificationFailed(alloc::format!("b{} = {v} does not reduce to {}", i + 1, point[i])));
        }
    }
    for f in l1 {
        if !f.evaluate(&Rationals, &vals).is_zero() {
            return Err(Error::VerificationFailed(alloc::format!("{f} does not vanish at the lift")));
        }
    }
    for f in l2 {
        if f.evaluate(&Rationals, &vals).is_zero() {
            return Err(Error::VerificationFailed(alloc::format!("{f} vanishes at the lift but not mod {p}")));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRectification {
    pub points: Vec<BigInt>,
    /// The scaling factor `m ≡ 1 (mod p)` that cleared denominators.
    pub multiplier: BigInt,
    /// `(2k)^(|A|+1) < p`, i.e. `|A| < log_{2k} p - 1`.
    pub guaranteed: bool,
}

/// Integer points reducing to `a` that are Freiman-isomorphic of order `k`
/// to `a`: the `Z_(p)` lift of all `2k`-bounded linear relations, scaled by
/// the least positive `m ≡ 1 (mod p)` divisible by every denominator.
pub fn rectify_linear(a: &[u64], p: u64, k: u32) -> Result<LinearRectification> {
    ensure_prime(p)?;
    let n = a.len();
    let guaranteed = pow_lt(&BigUint::from(2 * k as u64), &BigUint::from(n as u64 + 1), &BigUint::from(p));
    let field = PrimeField::new(p)?;
    let point: Vec<u64> = a.iter().map(|&v| v % p).collect();
    let (mut l1, mut l2) = (Vec::new(), Vec::new());
    for f in enumerate_bounded(n, BoundProfile::new(2 * k as u64, 1)) {
        if f.evaluate(&field, &point) == 0 {
            l1.push(f);
        } else {
            l2.push(f);
        }
    }
    let lifted = lift_linear(&point, &l1, &l2, p, true)?;
    let lcm = lifted.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let big_p = BigInt::from(p);
    let j = BigInt::from(inv_mod(big_mod(&lcm, p), p).expect("lcm is prime to p"));
    let j = if j.is_zero() { big_p } else { j };
    let multiplier = &lcm * j;
    let points = lifted.iter().map(|v| (v.value() * BigRational::from_integer(multiplier.clone())).to_integer()).collect();
    Ok(LinearRectification { points, multiplier, guaranteed })
}

/// Exhaustive check that every homogeneous linear form of L1 norm `<= 2k`
/// vanishes at `a` mod `p` exactly when it vanishes at `b` over `Z`. These
/// are the relations that scaling by `m ≡ 1 (mod p)` preserves; they contain
/// every `k`-term sum equality.
pub fn check_linear_isomorphism(a: &[u64], p: u64, b: &[BigInt], k: u32) -> Result<bool> {
    let field = PrimeField::new(p)?;
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), found: b.len() });
    }
    let point: Vec<u64> = a.iter().map(|&v| v % p).collect();
    for f in enumerate_bounded(a.len(), BoundProfile::new(2 * k as u64, 1)) {
        if !f.constant_term().is_zero() {
            continue;
        }
        let mod_p = f.evaluate(&field, &point) == 0;
        let over_z = f.evaluate(&Integers, b).is_zero();
        if mod_p != over_z {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `‖det‖₁` in the sense of the integer absolute value; used by the norm
/// properties. Returns `None` for non-integer determinants.
pub fn det_abs_u64(m: &ExactMatrix) -> Option<u64> {
    det_exact(m).ok().filter(|d| d.is_integer()).and_then(|d| d.to_integer().abs().to_u64())
}
