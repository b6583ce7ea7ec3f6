//! Bounded search for a rational point outside the 2-torsion.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{Signed, ToPrimitive};

use super::{EllCurve, EllPoint};
use crate::numtheory::{integer_sqrt_exact, is_perfect_square_i128, squarefree_decompose, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    FoundPoint(EllPoint),
    /// Nothing found with naive height up to the bound. Inconclusive: this
    /// is not a rank computation.
    ExhaustedBound(u64),
}

impl SearchOutcome {
    pub fn point(&self) -> Option<&EllPoint> {
        match self {
            SearchOutcome::FoundPoint(p) => Some(p),
            SearchOutcome::ExhaustedBound(_) => None,
        }
    }
}

/// Smallest `k > 0` with `k²·r` and `k²·s` integral.
fn integral_scale(curve: &EllCurve) -> BigInt {
    let l = curve.r().denom().lcm(curve.s().denom());
    let d = squarefree_decompose(&l).expect("denominators are nonzero");
    d.squarefree_part * d.square_root_part
}

fn cubic_value_big(u: i128, w2: i128, r: &BigInt, s: &BigInt) -> BigInt {
    let u = BigInt::from(u);
    let w2 = BigInt::from(w2);
    &u * (&u - r * &w2) * (&u - s * &w2)
}

/// Scan `X = u/w²` on the integral model `Y² = X(X − k²r)(X − k²s)`, with
/// `gcd(u, w) = 1` and naive height `max(|u|, w²) ≤ H`: `w` increasing, then
/// `|u|` increasing with positive `u` first. Returns the first point with
/// `Y ≠ 0` (taking `Y > 0`), mapped back to the original model.
pub fn point_search(curve: &EllCurve, height_bound: u64) -> SearchOutcome {
    let k = integral_scale(curve);
    let k2 = Rational::from_integer(&k * &k);
    let r = (curve.r() * &k2).to_integer();
    let s = (curve.s() * &k2).to_integer();
    let small = (r.to_i128(), s.to_i128());
    let h = height_bound.min(i64::MAX as u64) as i128;
    let w_max = height_bound.sqrt() as i128;
    for w in 1..=w_max {
        let w2 = w * w;
        for mag in 1..=h {
            for u in [mag, -mag] {
                if mag.gcd(&w) != 1 {
                    continue;
                }
                let value = match small {
                    (Some(r), Some(s)) => {
                        let f = (|| {
                            let a = u.checked_sub(r.checked_mul(w2)?)?;
                            let b = u.checked_sub(s.checked_mul(w2)?)?;
                            u.checked_mul(a)?.checked_mul(b)
                        })();
                        match f {
                            Some(f) if f <= 0 => continue,
                            Some(f) => match is_perfect_square_i128(f) {
                                Some(root) => Some(BigInt::from(root)),
                                None => continue,
                            },
                            None => None,
                        }
                    }
                    _ => None,
                };
                let root = match value {
                    Some(root) => root,
                    None => {
                        let f = cubic_value_big(u, w2, &r, &s);
                        if !f.is_positive() {
                            continue;
                        }
                        match integer_sqrt_exact(&f) {
                            Some(root) => root,
                            None => continue,
                        }
                    }
                };
                // (u/w², root/w³) on the integral model; undo X ↦ k²X
                let wq = Rational::from_integer(BigInt::from(w));
                let kq = Rational::from_integer(k.clone());
                let x = Rational::from_integer(BigInt::from(u)) / (&wq * &wq * &kq * &kq);
                let y = Rational::from_integer(root) / (&wq * &wq * &wq * &kq * &kq * &kq);
                debug_assert!(curve.contains(&x, &y));
                return SearchOutcome::FoundPoint(EllPoint::Affine { x, y });
            }
        }
    }
    SearchOutcome::ExhaustedBound(height_bound)
}
