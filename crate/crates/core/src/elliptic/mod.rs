//! Curves `Y² = X(X − r)(X − s)` over Q with full rational 2-torsion.

mod families;
mod search;
mod torsion;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{parse_rational, Rational};
use crate::poly::Polynomial;

pub use families::{
    congruent_curve, congruent_evidence, theorem55_point, z2z6_family, Branch, Z2Z6Member,
};
pub use search::{point_search, SearchOutcome};
pub use torsion::{
    four_torsion_points, three_division_polynomial, three_torsion_points, torsion_class,
    TorsionClass, TorsionKind,
};

/// The triple `(a, A, B)` a curve `r = a²B`, `s = a²B − A` was built from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Provenance {
    pub a: Rational,
    pub big_a: i64,
    pub big_b: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EllCurve {
    r: Rational,
    s: Rational,
    provenance: Option<Provenance>,
}

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl EllCurve {
    pub fn new(r: Rational, s: Rational) -> Result<Self> {
        if r.is_zero() || s.is_zero() || r == s {
            return Err(Error::SingularCurve(format!("roots 0, {r}, {s} are not distinct")));
        }
        Ok(EllCurve {
            r,
            s,
            provenance: None,
        })
    }

    /// `Y² = X(X − a²B)(X − (a²B − A))`.
    pub fn from_params(a: Rational, big_a: i64, big_b: i64) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::SingularCurve("a = 0".into()));
        }
        if big_a == 0 || big_b == 0 {
            return Err(Error::SingularCurve("A and B must be nonzero".into()));
        }
        let r = &a * &a * q(big_b);
        let s = &r - q(big_a);
        let mut curve = Self::new(r, s)?;
        curve.provenance = Some(Provenance { a, big_a, big_b });
        Ok(curve)
    }

    pub fn r(&self) -> &Rational {
        &self.r
    }

    pub fn s(&self) -> &Rational {
        &self.s
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    /// `c2 = −(r + s)` in `y² = x³ + c2·x² + c4·x`.
    pub fn c2(&self) -> Rational {
        -(&self.r + &self.s)
    }

    /// `c4 = r·s`.
    pub fn c4(&self) -> Rational {
        &self.r * &self.s
    }

    /// The cubic `X(X − r)(X − s)`.
    pub fn cubic(&self) -> Polynomial {
        Polynomial::new(vec![Rational::zero(), self.c4(), self.c2(), Rational::one()])
    }

    pub fn rhs(&self, x: &Rational) -> Rational {
        x * (x - &self.r) * (x - &self.s)
    }

    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        y * y == self.rhs(x)
    }

    pub fn point(&self, x: Rational, y: Rational) -> Result<EllPoint> {
        if !self.contains(&x, &y) {
            return Err(Error::NotOnCurve);
        }
        Ok(EllPoint::Affine { x, y })
    }

    pub fn two_torsion(&self) -> [EllPoint; 4] {
        let t = |x: &Rational| EllPoint::Affine {
            x: x.clone(),
            y: Rational::zero(),
        };
        [EllPoint::Infinity, t(&Rational::zero()), t(&self.r), t(&self.s)]
    }

    fn check(&self, p: &EllPoint) -> Result<()> {
        match p {
            EllPoint::Infinity => Ok(()),
            EllPoint::Affine { x, y } if self.contains(x, y) => Ok(()),
            _ => Err(Error::NotOnCurve),
        }
    }

    pub fn negate(&self, p: &EllPoint) -> EllPoint {
        match p {
            EllPoint::Infinity => EllPoint::Infinity,
            EllPoint::Affine { x, y } => EllPoint::Affine {
                x: x.clone(),
                y: -y,
            },
        }
    }

    pub fn add(&self, p: &EllPoint, other: &EllPoint) -> Result<EllPoint> {
        self.check(p)?;
        self.check(other)?;
        Ok(self.add_unchecked(p, other))
    }

    fn add_unchecked(&self, p: &EllPoint, other: &EllPoint) -> EllPoint {
        let (x1, y1, x2, y2) = match (p, other) {
            (EllPoint::Infinity, o) | (o, EllPoint::Infinity) => return o.clone(),
            (EllPoint::Affine { x: x1, y: y1 }, EllPoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            if (y1 + y2).is_zero() {
                return EllPoint::Infinity;
            }
            // tangent slope (3x² + 2c2·x + c4) / 2y
            (q(3) * x1 * x1 + q(2) * self.c2() * x1 + self.c4()) / (q(2) * y1)
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let x3 = &lambda * &lambda - self.c2() - x1 - x2;
        let y3 = &lambda * (x1 - &x3) - y1;
        EllPoint::Affine { x: x3, y: y3 }
    }

    pub fn double(&self, p: &EllPoint) -> Result<EllPoint> {
        self.add(p, p)
    }

    pub fn scalar_multiply(&self, n: i64, p: &EllPoint) -> Result<EllPoint> {
        self.check(p)?;
        let mut base = if n < 0 { self.negate(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = EllPoint::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            base = self.add_unchecked(&base, &base);
            k >>= 1;
        }
        Ok(acc)
    }

    pub fn is_two_torsion(&self, p: &EllPoint) -> bool {
        match p {
            EllPoint::Infinity => true,
            EllPoint::Affine { y, .. } => y.is_zero(),
        }
    }

    /// Twist by `γ`: roots scaled to `γr, γs`, provenance `(a, γA, γB)`.
    pub fn quadratic_twist(&self, gamma: i64) -> Result<Self> {
        if gamma == 0 {
            return Err(Error::NotSquarefree(0));
        }
        if !crate::numtheory::is_squarefree_i64(gamma) {
            return Err(Error::NotSquarefree(gamma));
        }
        let g = q(gamma);
        let mut twisted = Self::new(&self.r * &g, &self.s * &g)?;
        if let Some(p) = &self.provenance {
            let scale = |n: i64| {
                n.checked_mul(gamma)
                    .ok_or_else(|| Error::Unsupported("twisted parameters overflow".into()))
            };
            twisted.provenance = Some(Provenance {
                a: p.a.clone(),
                big_a: scale(p.big_a)?,
                big_b: scale(p.big_b)?,
            });
        }
        Ok(twisted)
    }

    /// The image of `p` on `other` when the two curves differ by a
    /// translation `X ↦ X + t` of their root sets.
    pub fn translate_point(&self, p: &EllPoint, other: &EllCurve) -> Option<EllPoint> {
        let roots = |c: &EllCurve| {
            let mut v = vec![Rational::zero(), c.r.clone(), c.s.clone()];
            v.sort();
            v
        };
        let (mine, theirs) = (roots(self), roots(other));
        let t = &theirs[0] - &mine[0];
        if mine.iter().zip(&theirs).any(|(m, o)| &(m + &t) != o) {
            return None;
        }
        Some(match p {
            EllPoint::Infinity => EllPoint::Infinity,
            EllPoint::Affine { x, y } => EllPoint::Affine {
                x: x + &t,
                y: y.clone(),
            },
        })
    }

    pub fn to_json(&self) -> CurveJson {
        CurveJson {
            r: self.r.to_string(),
            s: self.s.to_string(),
            provenance: self.provenance.as_ref().map(|p| ProvenanceJson {
                a: p.a.to_string(),
                big_a: p.big_a,
                big_b: p.big_b,
            }),
        }
    }

    pub fn from_json(json: &CurveJson) -> Result<Self> {
        match &json.provenance {
            Some(p) => {
                let curve = Self::from_params(parse_rational(&p.a)?, p.big_a, p.big_b)?;
                if curve.r != parse_rational(&json.r)? || curve.s != parse_rational(&json.s)? {
                    return Err(Error::parse(0, "curve roots disagree with provenance"));
                }
                Ok(curve)
            }
            None => Self::new(parse_rational(&json.r)?, parse_rational(&json.s)?),
        }
    }
}

fn fmt_signed_term(f: &mut fmt::Formatter<'_>, c: &Rational, var: &str) -> fmt::Result {
    if c.is_zero() {
        return Ok(());
    }
    let sign = if c.is_negative() { " - " } else { " + " };
    let mag = c.abs();
    if mag.is_one() {
        write!(f, "{sign}{var}")
    } else if mag.is_integer() {
        write!(f, "{sign}{mag}{var}")
    } else {
        write!(f, "{sign}({mag}){var}")
    }
}

/// `Y^2 = X^3 - 22X^2 + 120X`.
impl fmt::Display for EllCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Y^2 = X^3")?;
        fmt_signed_term(f, &self.c2(), "X^2")?;
        fmt_signed_term(f, &self.c4(), "X")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EllPoint {
    Infinity,
    Affine { x: Rational, y: Rational },
}

impl EllPoint {
    pub fn affine_i64(x: i64, y: i64) -> Self {
        EllPoint::Affine { x: q(x), y: q(y) }
    }

    pub fn coords(&self) -> Option<(&Rational, &Rational)> {
        match self {
            EllPoint::Infinity => None,
            EllPoint::Affine { x, y } => Some((x, y)),
        }
    }

    pub fn to_json(&self) -> PointJson {
        match self {
            EllPoint::Infinity => PointJson::Infinity("infinity".into()),
            EllPoint::Affine { x, y } => PointJson::Affine {
                x: x.to_string(),
                y: y.to_string(),
            },
        }
    }

    pub fn from_json(json: &PointJson) -> Result<Self> {
        match json {
            PointJson::Infinity(s) if s == "infinity" => Ok(EllPoint::Infinity),
            PointJson::Infinity(s) => Err(Error::parse(0, format!("unknown point `{s}`"))),
            PointJson::Affine { x, y } => Ok(EllPoint::Affine {
                x: parse_rational(x)?,
                y: parse_rational(y)?,
            }),
        }
    }

    /// `(X,Y)` with rational coordinates, or `infinity`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.eq_ignore_ascii_case("infinity") || t == "O" {
            return Ok(EllPoint::Infinity);
        }
        let inner = t.trim_start_matches('(').trim_end_matches(')');
        let (x, y) = inner
            .split_once(',')
            .ok_or_else(|| Error::parse(0, format!("expected `X,Y`, got `{text}`")))?;
        Ok(EllPoint::Affine {
            x: parse_rational(x)?,
            y: parse_rational(y)?,
        })
    }
}

impl fmt::Display for EllPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EllPoint::Infinity => write!(f, "infinity"),
            EllPoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceJson {
    pub a: String,
    #[serde(rename = "A")]
    pub big_a: i64,
    #[serde(rename = "B")]
    pub big_b: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveJson {
    pub r: String,
    pub s: String,
    pub provenance: Option<ProvenanceJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointJson {
    Infinity(String),
    Affine {
        #[serde(rename = "X")]
        x: String,
        #[serde(rename = "Y")]
        y: String,
    },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::{int, rat};

    #[test]
    fn curves_from_parameters() {
        let c = EllCurve::from_params(int(1), 2, 3).unwrap();
        assert_eq!(c.to_string(), "Y^2 = X^3 - 4X^2 + 3X");
        let c = EllCurve::from_params(int(2), 2, 3).unwrap();
        assert_eq!(c.to_string(), "Y^2 = X^3 - 22X^2 + 120X");
        let c = EllCurve::from_params(int(5), 11, 35).unwrap();
        assert_eq!((c.r(), c.s()), (&int(875), &int(864)));
        assert!(EllCurve::from_params(int(1), 3, 3).is_err());
        assert!(EllCurve::from_params(int(1), 0, 3).is_err());
        assert!(EllCurve::from_params(int(0), 2, 3).is_err());
        let c = EllCurve::from_params(rat(5, 3), 3, 7).unwrap();
        assert_eq!((c.r(), c.s()), (&rat(175, 9), &rat(148, 9)));
    }

    #[test]
    fn group_law_basics() {
        let c = EllCurve::from_params(int(2), 2, 3).unwrap();
        let p = EllPoint::affine_i64(8, 8);
        assert_eq!(c.add(&p, &EllPoint::Infinity).unwrap(), p);
        let t = EllPoint::affine_i64(0, 0);
        assert_eq!(c.double(&t).unwrap(), EllPoint::Infinity);
        assert_eq!(c.add(&p, &c.negate(&p)).unwrap(), EllPoint::Infinity);
        assert!(c.add(&p, &EllPoint::affine_i64(1, 1)).is_err());
        let two_p = c.double(&p).unwrap();
        let (x, y) = two_p.coords().unwrap();
        assert!(c.contains(x, y));
        assert_eq!(c.scalar_multiply(2, &p).unwrap(), two_p);
        assert_eq!(c.scalar_multiply(-1, &p).unwrap(), c.negate(&p));
        assert_eq!(c.scalar_multiply(0, &p).unwrap(), EllPoint::Infinity);

        let c = EllCurve::from_params(int(5), 11, 35).unwrap();
        let p = EllPoint::affine_i64(900, 900);
        assert_eq!(c.scalar_multiply(3, &p).unwrap(), EllPoint::Infinity);
        assert_ne!(c.double(&p).unwrap(), EllPoint::Infinity);
    }

    #[test]
    fn twists() {
        let c = EllCurve::from_params(int(1), 2, 3).unwrap();
        assert_eq!(c.quadratic_twist(1).unwrap(), c);
        let t = c.quadratic_twist(5).unwrap();
        assert_eq!((t.r(), t.s()), (&int(15), &int(5)));
        assert_eq!(t.provenance().unwrap().big_a, 10);
        assert!(c.quadratic_twist(4).is_err());
        assert!(c.quadratic_twist(0).is_err());
        // X(X − γr)(X − γs) at γX is γ³ times the original cubic
        let g = int(5);
        for x in -5..=5 {
            let x = int(x);
            assert_eq!(
                t.cubic().eval_rational(&(&g * &x)),
                &g * &g * &g * c.cubic().eval_rational(&x)
            );
        }
    }

    #[test]
    fn translation_between_models() {
        let congruent = EllCurve::new(int(6), int(-6)).unwrap();
        let shifted = EllCurve::from_params(int(2), 6, 3).unwrap();
        let p = EllPoint::affine_i64(-2, 8);
        let image = congruent.translate_point(&p, &shifted).unwrap();
        assert_eq!(image, EllPoint::affine_i64(4, 8));
        let (x, y) = image.coords().unwrap();
        assert!(shifted.contains(x, y));
        let other = EllCurve::from_params(int(1), 2, 3).unwrap();
        assert!(congruent.translate_point(&p, &other).is_none());
    }

    #[test]
    fn json_round_trip() {
        let c = EllCurve::from_params(rat(5, 3), 3, 7).unwrap();
        let text = serde_json::to_string(&c.to_json()).unwrap();
        assert!(text.contains("\"A\":3"), "{text}");
        let back: CurveJson = serde_json::from_str(&text).unwrap();
        assert_eq!(EllCurve::from_json(&back).unwrap(), c);
        for p in [EllPoint::Infinity, EllPoint::affine_i64(-4, 6)] {
            let text = serde_json::to_string(&p.to_json()).unwrap();
            let back: PointJson = serde_json::from_str(&text).unwrap();
            assert_eq!(EllPoint::from_json(&back).unwrap(), p);
        }
        assert_eq!(EllPoint::parse("(8, 8)").unwrap(), EllPoint::affine_i64(8, 8));
        assert_eq!(EllPoint::parse("-3/2,1").unwrap(), EllPoint::Affine { x: rat(-3, 2), y: int(1) });
    }
}
