//! Small drivers that move counting statements from `F_p` to a tower and
//! back: incidences, sum and product sets, inverse and polynomial images.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, ToPrimitive};

use crate::arith::{add_mod, inv_mod, mul_mod};
use crate::domain::{PrimeField, Ring};
use crate::poly::{BoundProfile, Degree, IntPoly};
use crate::rectify::{rectify_with, RectifiedSet, RectifyOptions};
use crate::tower::TowerElem;
use crate::{Error, Result};

/// Points `(x, y)` and lines `(a, b, c)` standing for `a*y + b*x + c = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointLineConfig<E> {
    pub points: Vec<(E, E)>,
    pub lines: Vec<(E, E, E)>,
}

impl<E> Default for PointLineConfig<E> {
    fn default() -> Self {
        PointLineConfig { points: Vec::new(), lines: Vec::new() }
    }
}

/// Number of incident point-line pairs, by brute force over `r`.
pub fn count_incidences<R: Ring>(cfg: &PointLineConfig<R::Elem>, r: &R) -> u64 {
    let mut n = 0;
    for (x, y) in &cfg.points {
        for (a, b, c) in &cfg.lines {
            let v = r.add(&r.add(&r.mul(a, y), &r.mul(b, x)), c);
            n += r.is_zero(&v) as u64;
        }
    }
    n
}

/// Scales a line over `F_p` so that its first non-zero coefficient is 1.
pub fn normalize_line(line: (u64, u64, u64), p: u64) -> Option<(u64, u64, u64)> {
    let (a, b, c) = (line.0 % p, line.1 % p, line.2 % p);
    let lead = [a, b, c].into_iter().find(|&v| v != 0)?;
    let s = inv_mod(lead, p)?;
    Some((mul_mod(a, s, p), mul_mod(b, s, p), mul_mod(c, s, p)))
}

/// The lattice `[r] x [2r^2]` with the lines `y = mx + b`, `1 <= m <= r`,
/// `1 <= b <= r^2`, where `r = floor(n^(1/3) / 2)`. It has exactly `r^4`
/// incidences.
pub fn sharpness_lattice(n: u64) -> Result<PointLineConfig<BigInt>> {
    // floor(n^(1/3) / 2) = floor(cbrt(n / 8)) for integers.
    let r = (n / 8).cbrt();
    if r == 0 {
        return Err(Error::InvalidInput(format!("n = {n} gives an empty lattice (need n >= 8)")));
    }
    let mut cfg = PointLineConfig::default();
    for x in 1..=r {
        for y in 1..=2 * r * r {
            cfg.points.push((BigInt::from(x), BigInt::from(y)));
        }
    }
    for m in 1..=r {
        for b in 1..=r * r {
            cfg.lines.push((BigInt::one(), -BigInt::from(m), -BigInt::from(b)));
        }
    }
    Ok(cfg)
}

/// `r = floor(n^(1/3) / 2)`.
pub fn lattice_side(n: u64) -> u64 {
    (n / 8).cbrt()
}

/// Which statement to transfer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransferMode {
    /// `|A+A|` and `|A·A|` through a 4-bounded lift.
    SumProduct,
    /// Incidences between points and lines whose coordinates form `A`,
    /// through a lift preserving `a*y + b*x + c`.
    Incidence(PointLineConfig<u64>),
    /// `|A+A|` and `|A⁻¹+A⁻¹|` through a 4-bounded lift of `A ∪ A⁻¹`.
    Inverse,
    /// `|A+A|` and `|f(A)+f(A)|` for a univariate `f`, through a lift
    /// preserving `f(a)+f(b)-f(c)-f(d)`.
    PolynomialImage(IntPoly),
}

impl TransferMode {
    pub fn name(&self) -> &'static str {
        match self {
            TransferMode::SumProduct => "sumproduct",
            TransferMode::Incidence(_) => "incidence",
            TransferMode::Inverse => "inverse",
            TransferMode::PolynomialImage(_) => "polynomial-image",
        }
    }
}

/// One quantity computed on both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quantity {
    pub name: &'static str,
    pub over_fp: u64,
    pub over_tower: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferReport {
    pub mode: &'static str,
    pub p: u64,
    /// The set that was rectified.
    pub lifted_set: Vec<u64>,
    pub profile: BoundProfile,
    pub rectified: RectifiedSet,
    pub quantities: Vec<Quantity>,
}

impl TransferReport {
    pub fn all_equal(&self) -> bool {
        self.quantities.iter().all(|q| q.over_fp == q.over_tower)
    }
}

fn sumset_fp(a: &[u64], p: u64) -> u64 {
    let s: BTreeSet<u64> = a.iter().flat_map(|&x| a.iter().map(move |&y| add_mod(x, y, p))).collect();
    s.len() as u64
}

fn prodset_fp(a: &[u64], p: u64) -> u64 {
    let s: BTreeSet<u64> = a.iter().flat_map(|&x| a.iter().map(move |&y| mul_mod(x, y, p))).collect();
    s.len() as u64
}

fn sumset_tower(b: &[TowerElem]) -> u64 {
    let s: BTreeSet<TowerElem> = b.iter().flat_map(|x| b.iter().map(move |y| x.add(y))).collect();
    s.len() as u64
}

fn dedup_sorted(a: impl IntoIterator<Item = u64>) -> Vec<u64> {
    a.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

fn lift(a: &[u64], p: u64, profile: BoundProfile, force: bool) -> Result<RectifiedSet> {
    let mut opts = RectifyOptions::new(profile.k as u32);
    opts.t = Some(profile.t);
    if force {
        opts.policy = crate::rectify::BoundPolicy::Force;
    }
    let r = rectify_with(a, p, &opts)?;
    if !r.verified {
        return Err(Error::VerificationFailed(format!("lift of {a:?} mod {p} failed verification")));
    }
    Ok(r)
}

/// Computes the mode's set sizes in `F_p` and over the rectifying tower.
/// Equality of every pair is what the bounded lift guarantees; it is
/// reported, not assumed.
pub fn transfer_report(a: &[u64], p: u64, mode: &TransferMode, force: bool) -> Result<TransferReport> {
    let fp = PrimeField::new(p)?;
    let a = dedup_sorted(a.iter().map(|&v| v % p));
    let (set, profile) = match mode {
        TransferMode::SumProduct => (a.clone(), BoundProfile::square(4)),
        TransferMode::Inverse => {
            if a.contains(&0) {
                return Err(Error::InvalidInput("inverse mode needs 0 ∉ A".into()));
            }
            (dedup_sorted(a.iter().copied().chain(a.iter().map(|&x| inv_mod(x, p).unwrap()))), BoundProfile::square(4))
        }
        TransferMode::PolynomialImage(f) => {
            if f.nvars() != 1 {
                return Err(Error::InvalidInput("polynomial-image mode needs a univariate polynomial".into()));
            }
            let norm = f.l1_norm().to_u64().ok_or_else(|| Error::InvalidInput("polynomial norm too large".into()))?;
            let deg = match f.total_degree() {
                Degree::NegInf => 1,
                Degree::Finite(d) => d.max(1),
            };
            (a.clone(), BoundProfile::new((4 * norm).max(4), deg))
        }
        TransferMode::Incidence(cfg) => {
            let coords = cfg
                .points
                .iter()
                .flat_map(|&(x, y)| [x, y])
                .chain(cfg.lines.iter().flat_map(|&(l, m, n)| [l, m, n]))
                .map(|v| v % p);
            (dedup_sorted(coords), BoundProfile::new(3, 2))
        }
    };
    let rectified = lift(&set, p, profile, force)?;
    let tower = &rectified.tower;
    let image: BTreeMap<u64, TowerElem> = set.iter().copied().zip(rectified.points.iter().cloned()).collect();
    let phi = |v: u64| image[&(v % p)].clone();
    let a_img: Vec<TowerElem> = a.iter().map(|&v| phi(v)).collect();
    let mut quantities = Vec::new();
    let mut q = |name, over_fp, over_tower| quantities.push(Quantity { name, over_fp, over_tower });
    q("|A|", a.len() as u64, a_img.iter().collect::<BTreeSet<_>>().len() as u64);
    q("|A+A|", sumset_fp(&a, p), sumset_tower(&a_img));
    match mode {
        TransferMode::SumProduct => {
            let prods: BTreeSet<TowerElem> = a_img.iter().flat_map(|x| a_img.iter().map(|y| tower.mul(x, y))).collect();
            q("|A·A|", prodset_fp(&a, p), prods.len() as u64);
        }
        TransferMode::Inverse => {
            let inv_fp: Vec<u64> = a.iter().map(|&x| inv_mod(x, p).unwrap()).collect();
            let inv_img: Vec<TowerElem> = inv_fp.iter().map(|&v| phi(v)).collect();
            let consistent = a_img.iter().zip(&inv_img).filter(|(x, y)| tower.mul(x, y) == TowerElem::one()).count();
            q("φ(a⁻¹)·φ(a) = 1", a.len() as u64, consistent as u64);
            q("|A⁻¹+A⁻¹|", sumset_fp(&inv_fp, p), sumset_tower(&inv_img));
        }
        TransferMode::PolynomialImage(f) => {
            let f_fp: Vec<u64> = a.iter().map(|&x| f.evaluate(&fp, &[x])).collect();
            let f_img: Vec<TowerElem> = a_img.iter().map(|b| f.evaluate(&tower.field(), core::slice::from_ref(b))).collect();
            q("|f(A)+f(A)|", sumset_fp(&f_fp, p), sumset_tower(&f_img));
        }
        TransferMode::Incidence(cfg) => {
            let lifted = PointLineConfig {
                points: cfg.points.iter().map(|&(x, y)| (phi(x), phi(y))).collect(),
                lines: cfg.lines.iter().map(|&(l, m, n)| (phi(l), phi(m), phi(n))).collect(),
            };
            q("incidences", count_incidences(cfg, &fp), count_incidences(&lifted, &tower.field()));
        }
    }
    Ok(TransferReport { mode: mode.name(), p, lifted_set: set, profile, rectified, quantities })
}

/// `(N(f), N(f²))`: the number of non-zero terms of `f` and of its square.
pub fn sparse_square_terms(f: &IntPoly) -> (usize, usize) {
    (f.num_terms(), f.pow(2).num_terms())
}

/// `name: over F_p / over the tower`, one line per quantity.
pub fn quantity_lines(r: &TransferReport) -> Vec<alloc::string::String> {
    r.quantities.iter().map(|q| format!("{}: {} / {}", q.name, q.over_fp, q.over_tower)).collect()
}
