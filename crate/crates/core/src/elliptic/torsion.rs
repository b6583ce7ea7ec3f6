//! Torsion beyond the 2-torsion: the `(p, q)` criterion for a rational
//! 3-torsion point, and explicit 3- and 4-torsion points.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{EllCurve, EllPoint};
use crate::error::{Error, Result};
use crate::numtheory::{rational_sqrt, Rational};
use crate::poly::Polynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TorsionKind {
    Z2xZ2,
    Z2xZ4,
    Z2xZ6,
    Z2xZ8,
}

impl fmt::Display for TorsionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TorsionKind::Z2xZ2 => "Z2xZ2",
            TorsionKind::Z2xZ4 => "Z2xZ4",
            TorsionKind::Z2xZ6 => "Z2xZ6",
            TorsionKind::Z2xZ8 => "Z2xZ8",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionClass {
    pub kind: TorsionKind,
    /// For `Z2xZ6`: integers with `−m²B = p⁴ + 2p³q` and
    /// `−(m²B − n²A) = 2pq³ + q⁴`, where `a = m/n`.
    pub certificate: Option<(BigInt, BigInt)>,
}

impl TorsionClass {
    /// `Z2×Z2`-style label for human-readable output.
    pub fn pretty(&self) -> &'static str {
        match self.kind {
            TorsionKind::Z2xZ2 => "Z2×Z2",
            TorsionKind::Z2xZ4 => "Z2×Z4",
            TorsionKind::Z2xZ6 => "Z2×Z6",
            TorsionKind::Z2xZ8 => "Z2×Z8",
        }
    }
}

/// Integer solution of `M = p⁴ + 2p³q`, `N = 2pq³ + q⁴`, scanning `p`
/// with `p³ | M` by increasing `|p|`, negative first.
fn solve_pq(m_val: &BigInt, n_val: &BigInt) -> Option<(BigInt, BigInt)> {
    if m_val.is_zero() {
        return None;
    }
    let bound = m_val.abs();
    let mut mag = BigInt::from(1);
    while &mag * &mag * &mag <= bound {
        for p in [-mag.clone(), mag.clone()] {
            let p3 = &p * &p * &p;
            let (quot, rem) = m_val.div_rem(&p3);
            if !rem.is_zero() {
                continue;
            }
            let (q, rem) = (quot - &p).div_rem(&BigInt::from(2));
            if !rem.is_zero() {
                continue;
            }
            let q2 = &q * &q;
            if *n_val == BigInt::from(2) * &p * &q2 * &q + &q2 * &q2 {
                return Some((p, q));
            }
        }
        mag += 1;
    }
    None
}

/// Classify `E(Q)_tors` for a curve built from `(a, A, B)`.
pub fn torsion_class(curve: &EllCurve) -> Result<TorsionClass> {
    let prov = curve.provenance().ok_or(Error::MissingProvenance)?;
    let (m, n) = (prov.a.numer(), prov.a.denom());
    let m2b = m * m * BigInt::from(prov.big_b);
    let n2a = n * n * BigInt::from(prov.big_a);
    if let Some(pq) = solve_pq(&-&m2b, &-(&m2b - &n2a)) {
        return Ok(TorsionClass {
            kind: TorsionKind::Z2xZ6,
            certificate: Some(pq),
        });
    }
    let fours = four_torsion_points(curve);
    let kind = if fours.is_empty() {
        TorsionKind::Z2xZ2
    } else if fours.iter().any(|p| is_halvable(curve, p)) {
        TorsionKind::Z2xZ8
    } else {
        TorsionKind::Z2xZ4
    };
    Ok(TorsionClass {
        kind,
        certificate: None,
    })
}

/// `3x⁴ + 4c2·x³ + 6c4·x² − c4²`, vanishing exactly at the x-coordinates of
/// points of order 3.
pub fn three_division_polynomial(curve: &EllCurve) -> Polynomial {
    let (c2, c4) = (curve.c2(), curve.c4());
    let k = |n: i64| Rational::from_integer(BigInt::from(n));
    Polynomial::new(vec![-(&c4 * &c4), Rational::zero(), k(6) * &c4, k(4) * c2, k(3)])
}

fn points_over(curve: &EllCurve, xs: impl IntoIterator<Item = Rational>) -> Vec<EllPoint> {
    let mut out = Vec::new();
    for x in xs {
        let Some(y) = rational_sqrt(&curve.rhs(&x)) else {
            continue;
        };
        if y.is_zero() {
            continue;
        }
        for y in [y.clone(), -y] {
            let p = EllPoint::Affine { x: x.clone(), y };
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

/// All rational points of exact order 3, sorted by `X`, positive `Y` first.
pub fn three_torsion_points(curve: &EllCurve) -> Vec<EllPoint> {
    let roots = three_division_polynomial(curve).rational_roots();
    points_over(curve, roots)
        .into_iter()
        .filter(|p| curve.scalar_multiply(3, p).is_ok_and(|t| t == EllPoint::Infinity))
        .collect()
}

/// All rational points of exact order 4: halves of the 2-torsion points
/// `(e, 0)` have `X = e ± √((e − e')(e − e''))`.
pub fn four_torsion_points(curve: &EllCurve) -> Vec<EllPoint> {
    let roots = [Rational::zero(), curve.r().clone(), curve.s().clone()];
    let mut xs = Vec::new();
    for i in 0..3 {
        let e = &roots[i];
        let prod = (e - &roots[(i + 1) % 3]) * (e - &roots[(i + 2) % 3]);
        if let Some(d) = rational_sqrt(&prod) {
            xs.push(e + &d);
            xs.push(e - &d);
        }
    }
    let mut pts: Vec<EllPoint> = points_over(curve, xs)
        .into_iter()
        .filter(|p| {
            curve.scalar_multiply(2, p).is_ok_and(|t| curve.is_two_torsion(&t) && t != EllPoint::Infinity)
        })
        .collect();
    pts.sort_by(|a, b| a.coords().cmp(&b.coords()));
    pts
}

/// `P ∈ 2E(Q)` iff `X − e` is a square for all three roots `e`.
fn is_halvable(curve: &EllCurve, p: &EllPoint) -> bool {
    let Some((x, _)) = p.coords() else {
        return true;
    };
    [Rational::zero(), curve.r().clone(), curve.s().clone()]
        .iter()
        .all(|e| rational_sqrt(&(x - e)).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::int;

    fn curve(a: i64, big_a: i64, big_b: i64) -> EllCurve {
        EllCurve::from_params(int(a), big_a, big_b).unwrap()
    }

    #[test]
    fn lemma_examples() {
        assert_eq!(torsion_class(&curve(1, 2, 3)).unwrap().kind, TorsionKind::Z2xZ2);
        assert_eq!(torsion_class(&curve(1, 2, 5)).unwrap().kind, TorsionKind::Z2xZ2);
        let t = torsion_class(&curve(5, 11, 35)).unwrap();
        assert_eq!(t.kind, TorsionKind::Z2xZ6);
        assert_eq!(t.certificate, Some((BigInt::from(-5), BigInt::from(6))));
        let bare = EllCurve::new(int(3), int(1)).unwrap();
        assert_eq!(torsion_class(&bare), Err(Error::MissingProvenance));
    }

    #[test]
    fn three_division_polynomial_is_the_doubling_condition() {
        // with λ = (3x² + 2c2·x + c4)/2y, x(2P) − x(P) = λ² − c2 − 3x; over the
        // common denominator 4y² its numerator must be −ψ3
        for (r, s) in [(3, 1), (875, 864), (-7, 12), (5, -5)] {
            let c = EllCurve::new(int(r), int(s)).unwrap();
            let (c2, c4) = (c.c2(), c.c4());
            let slope = Polynomial::new(vec![c4.clone(), int(2) * &c2, int(3)]);
            let shift = Polynomial::new(vec![c2.clone(), int(3)]);
            let numer = &(&slope * &slope) - &(&shift * &c.cubic()).scale(&int(4));
            assert_eq!(numer, -&three_division_polynomial(&c));
        }
    }

    #[test]
    fn three_torsion_examples() {
        let pts = three_torsion_points(&curve(5, 11, 35));
        assert!(pts.contains(&EllPoint::affine_i64(900, 900)));
        assert!(pts.contains(&EllPoint::affine_i64(900, -900)));
        assert!(three_torsion_points(&curve(1, 2, 3)).is_empty());
    }

    #[test]
    fn four_torsion() {
        assert!(four_torsion_points(&curve(1, -2, -1)).is_empty());
        // (a, A, B) = (1, 3, −1): y² = x(x + 1)(x + 4), with (0, 0) = 2·(2, 6)
        let c = curve(1, 3, -1);
        let pts = four_torsion_points(&c);
        assert!(pts.contains(&EllPoint::affine_i64(2, 6)), "{pts:?}");
        assert_eq!(torsion_class(&c).unwrap().kind, TorsionKind::Z2xZ4);
        assert!(three_torsion_points(&c).is_empty());
    }
}
