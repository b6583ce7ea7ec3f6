//! Degree-4 witnesses for elements of the quadratic subfields.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{TriquadElement, TriquadField, WitnessCertificate};
use crate::error::{Error, Result};
use crate::numtheory::{squarefree_product, Rational};
use crate::poly::Polynomial;

/// Square-free radicands of the seven quadratic subfields, ordered by
/// absolute value with positive values first on ties.
pub fn quadratic_radicands(field: &TriquadField) -> Vec<i128> {
    let mut out: Vec<i128> = (1..8).map(|slot| field.reduced_radical(slot).0).collect();
    out.sort_by_key(|&d| (d.abs(), d < 0));
    out
}

fn independent(d: i128, e: i128, f: i128) -> bool {
    let (d, e, f) = (BigInt::from(d), BigInt::from(e), BigInt::from(f));
    let de = squarefree_product(&d, &e);
    [de.clone(), squarefree_product(&d, &f), squarefree_product(&e, &f), squarefree_product(&de, &f)]
        .iter()
        .all(|n| !n.is_one())
}

fn q(n: i128) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Witness of degree 4 for `√d`, where `d` is the square-free radicand of one
/// of the seven quadratic subfields.
///
/// With `(E, F)` the first pair of radicands (in [`quadratic_radicands`]
/// order) independent from `d`, the primitive element is
/// `α = √E + E√F − F√(dE) + √(dF)`, and `α⁴ − 2Xα² − (−X² + EFZ² + dEFW²)`
/// equals `2EFZW·√d`.
pub fn index4_witness(field: &TriquadField, d: i128) -> Result<WitnessCertificate<TriquadElement>> {
    let radicands = quadratic_radicands(field);
    if !radicands.contains(&d) {
        return Err(Error::UnknownRadical(d.to_string()));
    }
    let others: Vec<i128> = radicands.iter().copied().filter(|&r| r != d).collect();
    let (e, f) = others
        .iter()
        .enumerate()
        .flat_map(|(i, &e)| others[i + 1..].iter().map(move |&f| (e, f)))
        .find(|&(e, f)| independent(d, e, f))
        .ok_or_else(|| Error::Internal("no independent radicand pair".into()))?;

    let sd = field.sqrt_of(d)?;
    let se = field.sqrt_of(e)?;
    let sf = field.sqrt_of(f)?;
    // (a, b, c, d) = (1, E, -F, 1) in α = a√E + b√F + c√(dE) + d√(dF)
    let alpha = &(&se + &sf.scale(&q(e))) + &(&(&sd * &sf) - &(&sd * &se).scale(&q(f)));

    let (d_, e_, f_) = (q(d), q(e), q(f));
    let two = q(2);
    let x = &e_ + &f_ * &e_ * &e_ + &d_ * &e_ * &f_ * &f_ + &d_ * &f_;
    let z = &two * &e_ - &two * &d_ * &f_;
    let w = &two - &two * &e_ * &f_;
    let denom = &two * &e_ * &f_ * &z * &w;
    if denom.is_zero() {
        return Err(Error::Internal("vanishing witness denominator".into()));
    }
    let constant = &x * &x - &e_ * &f_ * &z * &z - &d_ * &e_ * &f_ * &w * &w;
    let num = Polynomial::new(vec![constant, q(0), -(&two * &x), q(0), q(1)]);
    let poly = num.scale(&denom.recip());

    let cert = WitnessCertificate::new(alpha, poly, sd);
    if !cert.verified {
        return Err(Error::VerificationFailed(format!("index-4 witness for √{d}")));
    }
    Ok(cert)
}

/// Witness for any `v = r0 + r1·√D` of subfield index 4, obtained from the
/// `√D` witness by the affine map `r1·f + r0`.
pub fn index4_witness_general(v: &TriquadElement) -> Result<WitnessCertificate<TriquadElement>> {
    let index = v.subfield_index();
    if index != 4 {
        return Err(Error::WrongIndex {
            expected: 4,
            found: index,
        });
    }
    let field = v.field();
    let support = v.radical_support();
    let [slot] = support[..] else {
        return Err(Error::Internal("index-4 element with several radicals".into()));
    };
    let (d, g) = field.reduced_radical(slot);
    let r0 = v.coord(0).clone();
    let r1 = v.coord(slot) * q(g);
    debug_assert!(!r1.is_zero());
    let base = index4_witness(&field, d)?;
    let poly = base.polynomial.affine(&r1, &r0);
    let cert = WitnessCertificate::new(base.alpha, poly, v.clone());
    if !cert.verified {
        return Err(Error::VerificationFailed("affine index-4 witness".into()));
    }
    Ok(cert)
}
