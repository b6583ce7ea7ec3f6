//! Explicit curve families: the `a² − 1 = (B − A)b²` points, congruent-number
//! curves, and the parametrized `Z2×Z6` family.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{point_search, EllCurve, EllPoint, SearchOutcome};
use crate::error::{Error, Result};
use crate::numtheory::{is_squarefree_i64, rational_sqrt, squarefree_decompose, Rational};

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A point outside the 2-torsion on the `(a, A, B)` curve, given
/// `a² − 1 = (B − A)b²`.
///
/// With `t = Bb² + 1`: `(a²t/b², a²t/b³)` when `t` is not a rational square,
/// otherwise `((B − A)a², −A(B − A)a²b)`.
pub fn theorem55_point(big_a: i64, big_b: i64, a: &Rational, b: &Rational) -> Result<EllPoint> {
    if b.is_zero() {
        return Err(Error::IdentityViolated("b must be nonzero".into()));
    }
    let diff = q(big_b) - q(big_a);
    if a * a - Rational::one() != &diff * b * b {
        return Err(Error::IdentityViolated(format!(
            "a² − 1 = (B − A)b² fails for A = {big_a}, B = {big_b}, a = {a}, b = {b}"
        )));
    }
    let curve = EllCurve::from_params(a.clone(), big_a, big_b)?;
    let t = q(big_b) * b * b + Rational::one();
    let a2 = a * a;
    let (x, y) = if rational_sqrt(&t).is_none() {
        (&a2 * &t / (b * b), &a2 * &t / (b * b * b))
    } else {
        (&diff * &a2, -q(big_a) * &diff * &a2 * b)
    };
    let p = curve
        .point(x, y)
        .map_err(|_| Error::VerificationFailed("constructed point is off the curve".into()))?;
    if curve.is_two_torsion(&p) {
        return Err(Error::VerificationFailed("constructed point is 2-torsion".into()));
    }
    Ok(p)
}

/// `Y² = X(X − B)(X + B)`, recorded as the `(1, 2B, B)` curve.
pub fn congruent_curve(big_b: i64) -> Result<EllCurve> {
    if big_b <= 0 || !is_squarefree_i64(big_b) {
        return Err(Error::NotSquarefree(big_b));
    }
    let two_b = big_b
        .checked_mul(2)
        .ok_or_else(|| Error::Unsupported("B too large".into()))?;
    EllCurve::from_params(Rational::one(), two_b, big_b)
}

pub fn congruent_evidence(big_b: i64, height_bound: u64) -> Result<SearchOutcome> {
    Ok(point_search(&congruent_curve(big_b)?, height_bound))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `A = 1 + 2p`, `a²B = p³(p + 2)`.
    Plus,
    /// `A = 1 − 2p`, `a²B = p³(p − 2)`.
    Minus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Z2Z6Member {
    pub branch: Branch,
    pub big_a: i64,
    /// The value of `a²B`.
    pub value: BigInt,
    pub a: BigInt,
    pub big_b: i64,
}

impl Z2Z6Member {
    pub fn curve(&self) -> Result<EllCurve> {
        EllCurve::from_params(Rational::from_integer(self.a.clone()), self.big_a, self.big_b)
    }
}

/// Members of the family with a rational 3-torsion point, one per branch,
/// kept when `A` is square-free and the curve is nonsingular.
pub fn z2z6_family(p: i64) -> Vec<Z2Z6Member> {
    let mut out = Vec::new();
    let pb = BigInt::from(p);
    let p3 = &pb * &pb * &pb;
    for branch in [Branch::Plus, Branch::Minus] {
        let (big_a, value): (i128, BigInt) = match branch {
            Branch::Plus => (1 + 2 * p as i128, &p3 * (&pb + 2)),
            Branch::Minus => (1 - 2 * p as i128, &p3 * (&pb - 2)),
        };
        let Ok(big_a) = i64::try_from(big_a) else {
            continue;
        };
        if value.is_zero() || !is_squarefree_i64(big_a) {
            continue;
        }
        let dec = squarefree_decompose(&value).expect("nonzero");
        let Some(big_b) = dec.squarefree_part.to_i64() else {
            continue;
        };
        if value == BigInt::from(big_a) {
            continue;
        }
        out.push(Z2Z6Member {
            branch,
            big_a,
            value,
            a: dec.square_root_part.abs(),
            big_b,
        });
    }
    out
}
