//! Sylvester matrices, resultants, subresultants and the multi-polynomial
//! resultant `res(F1, F2)` with `F2 = f2 + y3 f3 + ... + ym fm`.

use alloc::vec;
use alloc::vec::Vec;

use crate::domain::{Field, IntPolyRing, Ring};
use crate::linalg::det_bareiss;
use crate::poly::IntPoly;
use crate::upoly::DomainPoly;
use crate::{Error, Result};

/// The `(p+q) x (p+q)` Sylvester matrix of `f` (degree `p`) and `g` (degree
/// `q`): `q` shifted rows of `f`'s coefficients (leading first) followed by
/// `p` shifted rows of `g`'s. Two constants give the `1 x 1` matrix `(1)`.
pub fn sylvester<R: Ring>(r: &R, f: &DomainPoly<R::Elem>, g: &DomainPoly<R::Elem>) -> Result<Vec<Vec<R::Elem>>> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial("Sylvester matrix of a zero polynomial"));
    }
    let (p, q) = (f.deg_usize(), g.deg_usize());
    if p == 0 && q == 0 {
        return Ok(vec![vec![r.one()]]);
    }
    let n = p + q;
    let mut m = Vec::with_capacity(n);
    for (shifts, poly, d) in [(q, f, p), (p, g, q)] {
        for s in 0..shifts {
            let mut row = vec![r.zero(); n];
            for (k, c) in poly.coeffs().iter().enumerate() {
                row[s + d - k] = c.clone();
            }
            m.push(row);
        }
    }
    Ok(m)
}

/// `det(sylvester(f, g))`, and `0` when either input is zero.
pub fn resultant<R: Ring>(r: &R, f: &DomainPoly<R::Elem>, g: &DomainPoly<R::Elem>) -> R::Elem {
    match sylvester(r, f, g) {
        Ok(m) => det_bareiss(r, m),
        Err(_) => r.zero(),
    }
}

/// `S_0, ..., S_min(p,q)` together with the coefficient table `s_ij`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubresultantSeq<E> {
    pub entries: Vec<DomainPoly<E>>,
    /// `coeffs[i][j] = s_ij` for `0 <= j <= i`.
    pub coeffs: Vec<Vec<E>>,
}

impl<E: Clone> SubresultantSeq<E> {
    /// `s_ii`.
    pub fn principal(&self, i: usize) -> &E {
        &self.coeffs[i][i]
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn minor<E: Clone>(m: &[Vec<E>], rows: &[usize], cols: &[usize]) -> Vec<Vec<E>> {
    rows.iter().map(|&i| cols.iter().map(|&j| m[i][j].clone()).collect()).collect()
}

/// A single entry `s_ij(f, g)` for non-zero `f`, `g`, straight from its
/// determinantal definition (outside the `i = p = q` special case).
fn sub_coeff<R: Ring>(r: &R, m: &[Vec<R::Elem>], p: usize, q: usize, i: usize, j: usize) -> R::Elem {
    let rows: Vec<usize> = (0..q - i).chain(q..q + p - i).collect();
    let mut cols: Vec<usize> = (0..(p + q - 2 * i).saturating_sub(1)).collect();
    cols.push(p + q - i - j - 1);
    det_bareiss(r, minor(m, &rows, &cols))
}

/// The subresultant sequence, following the determinantal definition row for
/// row. Conventions: `S_q = g` when `p = q != 0`; `S_0 = 1` when both are
/// constants; a zero argument is replaced by the other one.
pub fn subresultants<R: Ring>(r: &R, f: &DomainPoly<R::Elem>, g: &DomainPoly<R::Elem>) -> Result<SubresultantSeq<R::Elem>> {
    match (f.is_zero(), g.is_zero()) {
        (true, true) => return Err(Error::ZeroPolynomial("subresultants of two zero polynomials")),
        (false, true) => return subresultants(r, f, f),
        (true, false) => return subresultants(r, g, g),
        _ => {}
    }
    let (p, q) = (f.deg_usize(), g.deg_usize());
    if p == 0 && q == 0 {
        return Ok(SubresultantSeq {
            entries: vec![DomainPoly::constant(r, r.one())],
            coeffs: vec![vec![r.one()]],
        });
    }
    let m = sylvester(r, f, g)?;
    let mut entries = Vec::new();
    let mut coeffs = Vec::new();
    for i in 0..=p.min(q) {
        let row: Vec<R::Elem> = if i == p && i == q {
            (0..=i).map(|j| g.coeff(r, j)).collect()
        } else {
            (0..=i).map(|j| sub_coeff(r, &m, p, q, i, j)).collect()
        };
        entries.push(DomainPoly::from_coeffs(r, row.clone()));
        coeffs.push(row);
    }
    Ok(SubresultantSeq { entries, coeffs })
}

/// Principal coefficients `s_00, s_11, ...` computed one at a time until
/// `stop(j, s_jj)` returns true or the sequence ends; same conventions as
/// [`subresultants`]. Cheaper than the full table when only a prefix is
/// needed.
pub fn principal_subresultants<R: Ring>(
    r: &R,
    f: &DomainPoly<R::Elem>,
    g: &DomainPoly<R::Elem>,
    mut stop: impl FnMut(usize, &R::Elem) -> bool,
) -> Result<Vec<R::Elem>> {
    match (f.is_zero(), g.is_zero()) {
        (true, true) => return Err(Error::ZeroPolynomial("subresultants of two zero polynomials")),
        (false, true) => return principal_subresultants(r, f, f, stop),
        (true, false) => return principal_subresultants(r, g, g, stop),
        _ => {}
    }
    let (p, q) = (f.deg_usize(), g.deg_usize());
    if p == 0 && q == 0 {
        let one = r.one();
        stop(0, &one);
        return Ok(vec![one]);
    }
    let m = sylvester(r, f, g)?;
    let mut out = Vec::new();
    for i in 0..=p.min(q) {
        let s = if i == p && i == q { g.coeff(r, i) } else { sub_coeff(r, &m, p, q, i, i) };
        let done = stop(i, &s);
        out.push(s);
        if done {
            break;
        }
    }
    Ok(out)
}

/// Least `k` with `s_kk != 0`; exists whenever the inputs are not both zero.
pub fn first_nonzero_principal<R: Ring>(r: &R, seq: &SubresultantSeq<R::Elem>) -> Option<usize> {
    (0..seq.len()).find(|&k| !r.is_zero(seq.principal(k)))
}

/// Monic gcd over a field, read off as the normalized `S_k` for the least
/// `k` with `s_kk != 0`.
pub fn gcd_subresultant<F: Field>(f: &F, a: &DomainPoly<F::Elem>, b: &DomainPoly<F::Elem>) -> Result<DomainPoly<F::Elem>> {
    let seq = subresultants(f, a, b)?;
    let k = first_nonzero_principal(f, &seq).ok_or_else(|| Error::Internal("no non-zero principal subresultant".into()))?;
    Ok(seq.entries[k].monic(f))
}

/// Iterated pairwise gcd; the gcd of one polynomial is itself (made monic).
pub fn gcd_many<F: Field>(f: &F, polys: &[DomainPoly<F::Elem>]) -> Result<DomainPoly<F::Elem>> {
    let mut it = polys.iter().filter(|p| !p.is_zero());
    let Some(first) = it.next() else {
        return Err(Error::ZeroPolynomial("gcd of zero polynomials"));
    };
    let mut g = first.monic(f);
    for p in it {
        if g.deg_usize() == 0 {
            break;
        }
        g = gcd_subresultant(f, &g, p)?;
    }
    Ok(g)
}

/// The multi-polynomial resultant in `x_var` and the variable layout used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiResultant {
    /// `res_{x_var}(F1, F2)` in the original variables followed by
    /// `y3, ..., ym` (variable index `nvars + j - 3` holds `y_j`).
    pub poly: IntPoly,
    /// Number of original variables; the `y`s start here.
    pub y_offset: usize,
    pub m: usize,
}

impl MultiResultant {
    pub fn num_y(&self) -> usize {
        self.m.saturating_sub(2)
    }

    /// `(y exponents, coefficient)` for every `y`-monomial, ascending.
    pub fn y_coefficients(&self) -> Vec<(Vec<u32>, IntPoly)> {
        self.poly.split_tail(self.y_offset)
    }
}

/// `F1 = f1` and `F2 = f2 + y3 f3 + ... + ym fm` in the extended variable
/// set; `F2 = 0` when `m = 1`.
pub fn aggregate(fs: &[IntPoly]) -> Result<(IntPoly, IntPoly)> {
    let first = fs.first().ok_or(Error::InvalidInput("multi-resultant of an empty list".into()))?;
    let n = first.nvars();
    let total = n + fs.len().saturating_sub(2);
    let f1 = first.extend_vars(total);
    let mut f2 = IntPoly::zero(total);
    for (j, f) in fs.iter().enumerate().skip(1) {
        if f.nvars() != n {
            return Err(Error::DimensionMismatch { expected: n, found: f.nvars() });
        }
        let fe = f.extend_vars(total);
        f2 = if j == 1 { &f2 + &fe } else { &f2 + &(&IntPoly::var(total, n + j - 2) * &fe) };
    }
    Ok((f1, f2))
}

/// `res_{x_var}(f1, ..., fm)`.
pub fn multi_resultant(fs: &[IntPoly], var: usize) -> Result<MultiResultant> {
    let (f1, f2) = aggregate(fs)?;
    let n = fs[0].nvars();
    let ring = IntPolyRing::new(f1.nvars());
    let poly = resultant(&ring, &f1.to_univariate(var), &f2.to_univariate(var));
    Ok(MultiResultant { poly, y_offset: n, m: fs.len() })
}
