//! Factorization of univariate polynomials over a tower (Trager's norm
//! method, bottoming out in the Zassenhaus factorization over `Q`).

use alloc::vec::Vec;

use num_rational::BigRational;

use super::{Certificate, Tower, TowerElem};
use crate::domain::{PolyRing, Rationals};
use crate::factor::factor_q;
use crate::resultant::resultant;
use crate::upoly::DomainPoly;
use crate::{Error, Result};

type TPoly = DomainPoly<TowerElem>;

/// `N(x) = Res_y(m(y), f(x, y))` where `m` is the defining polynomial of the
/// top level and `y` stands for the top generator inside the coefficients of
/// `f`. The result lies over the tower with its top level removed.
pub fn norm(tower: &Tower, f: &TPoly) -> TPoly {
    let top = tower.len() - 1;
    let field = tower.field();
    let px = PolyRing::new(field);
    // f as a polynomial in y with coefficients in K'[x].
    let mut in_y: Vec<TPoly> = Vec::new();
    for (i, c) in f.coeffs().iter().enumerate() {
        for (j, part) in c.split_level(top).into_iter().enumerate() {
            if in_y.len() <= j {
                in_y.resize(j + 1, TPoly::zero());
            }
            let term = TPoly::monomial(&field, part, i);
            in_y[j] = in_y[j].add(&field, &term);
        }
    }
    let g = DomainPoly::from_coeffs(&px, in_y);
    let m = DomainPoly::from_coeffs(
        &px,
        tower.levels()[top].defining.iter().map(|c| TPoly::constant(&field, c.clone())).collect(),
    );
    resultant(&px, &m, &g)
}

fn is_squarefree(tower: &Tower, f: &TPoly) -> bool {
    let field = tower.field();
    f.gcd_euclid(&field, &f.derivative(&field)).deg_usize() == 0
}

fn shifts() -> impl Iterator<Item = i64> {
    (0..).map(|k: i64| if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) })
}

/// Irreducible factors of a monic square-free `f` over `tower`, each with the
/// certificate of its irreducibility.
fn factor_squarefree(tower: &Tower, f: &TPoly) -> Result<Vec<(TPoly, Certificate)>> {
    let field = tower.field();
    if f.deg_usize() == 0 {
        return Ok(Vec::new());
    }
    if f.deg_usize() == 1 {
        let cert = if tower.is_empty() { Certificate::RationalFactorization } else { Certificate::NormShift(0) };
        return Ok(alloc::vec![(f.monic(&field), cert)]);
    }
    if tower.is_empty() {
        let q: DomainPoly<BigRational> = f.map(&Rationals, |c| c.as_rational().expect("rational coefficient"));
        return Ok(factor_q(&q)?
            .into_iter()
            .map(|(g, _)| (g.map(&field, |c| TowerElem::from_rational(c.clone())), Certificate::RationalFactorization))
            .collect());
    }
    let top = tower.len() - 1;
    let alpha = tower.generator(top);
    let below = tower.prefix(top);
    let bound = 2 * f.deg_usize() * tower.levels()[top].degree() + 2;
    for s in shifts().take(bound) {
        let sa = alpha.scale(&BigRational::from_integer(s.into()));
        let g = f.shift(&field, &sa.neg());
        let n = norm(tower, &g);
        if !is_squarefree(&below, &n) {
            continue;
        }
        let mut out = Vec::new();
        for (ni, _) in factor_squarefree(&below, &n.monic(&below.field()))? {
            let h = g.gcd_euclid(&field, &ni);
            if h.deg_usize() == 0 {
                continue;
            }
            out.push((h.shift(&field, &sa).monic(&field), Certificate::NormShift(s)));
        }
        let total: usize = out.iter().map(|(h, _)| h.deg_usize()).sum();
        if total != f.deg_usize() {
            return Err(Error::Internal("norm factors do not account for the whole polynomial".into()));
        }
        return Ok(out);
    }
    Err(Error::Internal("no square-free norm found".into()))
}

/// Complete factorization over the tower: monic irreducible factors with
/// multiplicities and certificates, sorted by degree and then coefficients.
pub(crate) fn factor_with_certificates(tower: &Tower, f: &TPoly) -> Result<Vec<(TPoly, u32, Certificate)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("factorization of zero"));
    }
    let field = tower.field();
    let mut out = Vec::new();
    for (a, mult) in f.monic(&field).squarefree(&field) {
        for (h, cert) in factor_squarefree(tower, &a)? {
            out.push((h, mult, cert));
        }
    }
    out.sort_by(|a, b| a.0.deg_usize().cmp(&b.0.deg_usize()).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

/// Complete factorization over the tower: monic irreducible factors with
/// multiplicities, sorted by degree and then coefficients.
pub fn factor_univariate(tower: &Tower, f: &TPoly) -> Result<Vec<(TPoly, u32)>> {
    Ok(factor_with_certificates(tower, f)?.into_iter().map(|(h, m, _)| (h, m)).collect())
}
