//! Textual polynomial syntax: `3*x1^2*x2 - x2 + 1`.
//!
//! Terms are printed from the graded-lex leading term down, unit
//! coefficients are elided, and coefficients may be rationals (`1/2*g1`). The
//! parser accepts exactly what the printer writes plus free whitespace and
//! repeated factors, so `parse(format(f)) == f`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::{IntPoly, Monomial};
use crate::{Error, Result};

/// How variables are spelled: `prefix` followed by `index + base`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VarStyle {
    pub prefix: &'static str,
    pub base: usize,
}

impl VarStyle {
    /// `x1, x2, ...`
    pub const X: VarStyle = VarStyle { prefix: "x", base: 1 };
    /// `x0, x1, ...` (constructibility chains).
    pub const X0: VarStyle = VarStyle { prefix: "x", base: 0 };
    /// `g1, g2, ...` (tower generators).
    pub const G: VarStyle = VarStyle { prefix: "g", base: 1 };
}

fn write_monomial(out: &mut String, exps: &[u32], style: &VarStyle) {
    let mut first = true;
    for (i, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(style.prefix);
        out.push_str(&(i + style.base).to_string());
        if e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

/// Prints `(exponents, coefficient)` pairs, given in descending order.
pub fn format_rational_terms<'a, I>(terms: I, style: &VarStyle) -> String
where
    I: IntoIterator<Item = (&'a [u32], &'a BigRational)>,
{
    let mut out = String::new();
    for (exps, c) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        let is_const = exps.iter().all(|&e| e == 0);
        if is_const {
            out.push_str(&a.to_string());
        } else {
            if !a.is_one() {
                out.push_str(&a.to_string());
                out.push('*');
            }
            write_monomial(&mut out, exps, style);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn format_poly(f: &IntPoly, style: &VarStyle) -> String {
    let terms: Vec<(Vec<u32>, BigRational)> =
        f.terms().rev().map(|(m, c)| (m.0.clone(), BigRational::from_integer(c.clone()))).collect();
    format_rational_terms(terms.iter().map(|(e, c)| (e.as_slice(), c)), style)
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
    src: &'a str,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err(&self, reason: &str) -> Error {
        Error::Parse { input: self.src.to_string(), reason: format!("{reason} at byte {}", self.pos) }
    }

    fn number(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let digits = core::str::from_utf8(&self.s[start..self.pos]).unwrap();
        digits.parse().map_err(|_| self.err("bad number"))
    }
}

/// Parses into `(exponents, coefficient)` pairs with like terms combined and
/// zeros dropped, in descending graded-lex order.
pub fn parse_rational_terms(src: &str, nvars: usize, style: &VarStyle) -> Result<Vec<(Vec<u32>, BigRational)>> {
    let mut lx = Lexer { s: src.as_bytes(), pos: 0, src };
    let mut acc: alloc::collections::BTreeMap<Monomial, BigRational> = Default::default();
    let mut first = true;
    loop {
        let mut sign = BigRational::one();
        match lx.peek() {
            None if first => return Err(lx.err("empty polynomial")),
            None => break,
            Some(b'+') if !first => lx.pos += 1,
            Some(b'-') => {
                lx.pos += 1;
                sign = -sign;
            }
            Some(_) if first => {}
            Some(_) => return Err(lx.err("expected '+' or '-'")),
        }
        first = false;
        let mut coeff = sign;
        let mut exps = vec![0u32; nvars];
        loop {
            match lx.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = lx.number()?;
                    let den = if lx.peek() == Some(b'/') {
                        lx.pos += 1;
                        let d = lx.number()?;
                        if d.is_zero() {
                            return Err(lx.err("zero denominator"));
                        }
                        d
                    } else {
                        BigInt::one()
                    };
                    coeff *= BigRational::new(num, den);
                }
                Some(_) if lx.s[lx.pos..].starts_with(style.prefix.as_bytes()) => {
                    lx.pos += style.prefix.len();
                    let idx = lx.number()?;
                    let idx: usize = idx.try_into().map_err(|_| lx.err("variable index too large"))?;
                    if idx < style.base || idx - style.base >= nvars {
                        return Err(lx.err(&format!("variable {}{idx} out of range", style.prefix)));
                    }
                    let e = if lx.peek() == Some(b'^') {
                        lx.pos += 1;
                        lx.number()?.try_into().map_err(|_| lx.err("exponent too large"))?
                    } else {
                        1u32
                    };
                    exps[idx - style.base] += e;
                }
                _ => return Err(lx.err("expected a coefficient or variable")),
            }
            if lx.peek() == Some(b'*') {
                lx.pos += 1;
            } else {
                break;
            }
        }
        let m = Monomial(exps);
        let e = acc.entry(m).or_insert_with(BigRational::zero);
        *e += coeff;
    }
    Ok(acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.0, c)).collect())
}

/// Parses an integer polynomial in `nvars` variables.
pub fn parse_poly(src: &str, nvars: usize, style: &VarStyle) -> Result<IntPoly> {
    let terms = parse_rational_terms(src, nvars, style)?;
    let mut out = Vec::with_capacity(terms.len());
    for (e, c) in terms {
        if !c.is_integer() {
            return Err(Error::Parse { input: src.to_string(), reason: format!("non-integer coefficient {c}") });
        }
        out.push((e, c.to_integer()));
    }
    Ok(IntPoly::from_terms(nvars, out))
}

/// Largest variable index (0-based, after removing `style.base`) mentioned in
/// `src`, or `None` if no variable occurs. Lets callers size `nvars`.
pub fn max_var_index(src: &str, style: &VarStyle) -> Option<usize> {
    let b = src.as_bytes();
    let p = style.prefix.as_bytes();
    let mut best = None;
    let mut i = 0;
    while i + p.len() <= b.len() {
        if &b[i..i + p.len()] == p {
            let mut j = i + p.len();
            let mut v: usize = 0;
            let mut any = false;
            while j < b.len() && b[j].is_ascii_digit() {
                v = v.saturating_mul(10).saturating_add((b[j] - b'0') as usize);
                any = true;
                j += 1;
            }
            if any && v >= style.base {
                best = best.max(Some(v - style.base));
            }
            i = j.max(i + 1);
        } else {
            i += 1;
        }
    }
    best
}
