//! Degree-2 witnesses for `√A + a√B` from rational points on
//! `Y² = X(X − a²B)(X − (a²B − A))`, and the minimal-degree dispatcher.

mod json;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::certificate::WitnessCertificate;
use crate::elliptic::{
    four_torsion_points, point_search, three_torsion_points, torsion_class, EllCurve, EllPoint,
    SearchOutcome, TorsionClass,
};
use crate::error::{Error, Result};
use crate::multiquad::{index4_witness_general, TriquadElement, TriquadField};
use crate::numtheory::{squarefree_product, Rational};
use crate::poly::Polynomial;

pub use json::{verify_certificate_json, CertificateJson, ElementRecord};

/// `v = shift + scale·(√D1 + a·√D2)` inside `field`, with `C` a third
/// generator completing `D1, D2` to a generating set.
#[derive(Debug, Clone, PartialEq)]
pub struct Index2Target {
    pub field: TriquadField,
    pub d1: i64,
    pub d2: i64,
    pub c: i64,
    pub a: Rational,
    pub shift: Rational,
    pub scale: Rational,
    pub original: TriquadElement,
}

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn independent(values: &[i64]) -> bool {
    // no nonempty subproduct is a square
    let n = values.len();
    (1u32..1 << n).all(|mask| {
        let prod = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .fold(BigInt::one(), |acc, i| squarefree_product(&acc, &BigInt::from(values[i])));
        !prod.is_one()
    })
}

impl Index2Target {
    pub fn curve(&self) -> Result<EllCurve> {
        EllCurve::from_params(self.a.clone(), self.d1, self.d2)
    }

    /// `√D1 + a√D2` as an element of the field.
    pub fn normalized(&self) -> Result<TriquadElement> {
        let s1 = self.field.sqrt_of(self.d1 as i128)?;
        let s2 = self.field.sqrt_of(self.d2 as i128)?;
        Ok(&s1 + &s2.scale(&self.a))
    }
}

pub fn normalize_index2_target(v: &TriquadElement) -> Result<Index2Target> {
    let index = v.subfield_index();
    if index != 2 {
        return Err(Error::WrongIndex {
            expected: 2,
            found: index,
        });
    }
    let field = v.field();
    let support = v.radical_support();
    let [i, j] = support[..] else {
        return Err(Error::Unsupported(format!(
            "index-2 targets with {} radical terms; only √D1 + a√D2 is handled",
            support.len()
        )));
    };
    let (s1, g1) = field.reduced_radical(i);
    let (s2, g2) = field.reduced_radical(j);
    let c1 = v.coord(i) * Rational::from_integer(BigInt::from(g1));
    let c2 = v.coord(j) * Rational::from_integer(BigInt::from(g2));
    let (d1, d2) = (s1 as i64, s2 as i64);
    let c = field
        .generators()
        .into_iter()
        .find(|&g| independent(&[d1, d2, g]))
        .ok_or_else(|| Error::Internal("no third generator".into()))?;
    Ok(Index2Target {
        field,
        d1,
        d2,
        c,
        a: &c2 / &c1,
        shift: v.coord(0).clone(),
        scale: c1,
        original: v.clone(),
    })
}

/// Build `α` and `a2x² + a1x + a0` with `a2α² + a1α + a0 = √A + a√B` from a
/// point `(X, Y)` outside the 2-torsion of the target's curve, then map the
/// certificate back to the original `v`. `b0` is the free constant term of
/// `α`; `b5 = 1`.
pub fn point_to_witness(
    target: &Index2Target,
    point: &EllPoint,
    b0: &Rational,
) -> Result<WitnessCertificate<TriquadElement>> {
    let curve = target.curve()?;
    let Some((x, y)) = point.coords() else {
        return Err(Error::TwoTorsionPoint);
    };
    if !curve.contains(x, y) {
        return Err(Error::NotOnCurve);
    }
    if y.is_zero() {
        return Err(Error::TwoTorsionPoint);
    }
    let field = target.field;
    let (big_a, big_b, big_c) = (q(target.d1), q(target.d2), q(target.c));
    let a = &target.a;
    let sa = field.sqrt_of(target.d1 as i128)?;
    let sb = field.sqrt_of(target.d2 as i128)?;
    let sc = field.sqrt_of(target.c as i128)?;
    let normalized = &sa + &sb.scale(a);

    let d = a * &big_b * x - (a * a * a * &big_b * &big_b - a * &big_a * &big_b);
    if d.is_zero() {
        return Err(Error::TwoTorsionPoint);
    }
    let two = q(2);
    let mut last_failure = String::new();
    for y in [y.clone(), -y] {
        let b5 = Rational::one();
        let b6 = &big_a * x / &d;
        let b7 = &y / &d;
        let b3 = -(&big_a * x / &y);
        let inv_a2 = &two * &big_b * &big_c * &b7 * &b6 + &two * &big_c * &b3 * &b5;
        if inv_a2.is_zero() {
            last_failure = "vanishing a2 denominator".into();
            continue;
        }
        let a2 = inv_a2.recip();
        let third = (&two * &big_a * &big_c * &b7 * &b5 + &two * &big_c * &b3 * &b6) * &a2;
        if &third != a {
            last_failure = format!("third system line gives {third}, expected {a}");
            continue;
        }
        let a0 = -(&a2
            * (&big_a * &big_b * &big_c * &b7 * &b7
                + &big_b * &big_c * &b6 * &b6
                + &big_a * &big_c * &b5 * &b5
                + &big_c * &b3 * &b3
                - b0 * b0));
        let a1 = -(&two * b0 * &a2);
        let alpha = [
            TriquadElement::from_rational(field, b0.clone()),
            sc.scale(&b3),
            (&sa * &sc).scale(&b5),
            (&sb * &sc).scale(&b6),
            (&(&sa * &sb) * &sc).scale(&b7),
        ]
        .iter()
        .fold(TriquadElement::zero(field), |acc, t| &acc + t);
        let poly = Polynomial::new(vec![a0, a1, a2]);
        let base = WitnessCertificate::new(alpha, poly, normalized.clone());
        if !base.verified {
            last_failure = "exact evaluation mismatch".into();
            continue;
        }
        let cert = WitnessCertificate::new(
            base.alpha,
            base.polynomial.affine(&target.scale, &target.shift),
            target.original.clone(),
        );
        if !cert.verified {
            return Err(Error::VerificationFailed("affine map back to the target".into()));
        }
        return Ok(cert);
    }
    Err(Error::VerificationFailed(format!(
        "no witness from {point} with either sign of Y: {last_failure}"
    )))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WitnessSource {
    /// A point of infinite order.
    RankPoint,
    ThreeTorsion,
    /// A torsion point of order other than 2 or 3.
    OtherTorsion,
}

impl WitnessSource {
    pub fn label(&self) -> &'static str {
        match self {
            WitnessSource::RankPoint => "rank-point",
            WitnessSource::ThreeTorsion => "3-torsion",
            WitnessSource::OtherTorsion => "torsion",
        }
    }

    /// Classify by order; torsion orders over Q are at most 12.
    pub fn of_point(curve: &EllCurve, p: &EllPoint) -> Result<Self> {
        for n in 1..=12 {
            if curve.scalar_multiply(n, p)? == EllPoint::Infinity {
                return Ok(if n == 3 {
                    WitnessSource::ThreeTorsion
                } else {
                    WitnessSource::OtherTorsion
                });
            }
        }
        Ok(WitnessSource::RankPoint)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FoundWitness {
    pub certificate: WitnessCertificate<TriquadElement>,
    pub source: WitnessSource,
    pub point: EllPoint,
    pub curve: EllCurve,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MinDeg2Outcome {
    WitnessFound(Box<FoundWitness>),
    /// Inconclusive: the torsion is `Z2×Z2` and no point was found up to the
    /// bound. Consistent with rank 0, not a proof of it.
    NoWitnessUpToBound {
        height_bound: u64,
        torsion: TorsionClass,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SeedOrder {
    /// Torsion points of order greater than 2 first, then the height search.
    #[default]
    TorsionFirst,
    SearchFirst,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecideOptions {
    pub b0: Rational,
    pub seed_order: SeedOrder,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            b0: Rational::one(),
            seed_order: SeedOrder::TorsionFirst,
        }
    }
}

pub fn mindeg2_decide(v: &TriquadElement, height_bound: u64) -> Result<MinDeg2Outcome> {
    mindeg2_decide_with(v, height_bound, &DecideOptions::default())
}

pub fn mindeg2_decide_with(
    v: &TriquadElement,
    height_bound: u64,
    options: &DecideOptions,
) -> Result<MinDeg2Outcome> {
    let target = normalize_index2_target(v)?;
    let curve = target.curve()?;
    let torsion_seeds = || {
        let mut seeds = three_torsion_points(&curve);
        seeds.extend(four_torsion_points(&curve));
        seeds
    };
    let search = || match point_search(&curve, height_bound) {
        SearchOutcome::FoundPoint(p) => vec![p],
        SearchOutcome::ExhaustedBound(_) => Vec::new(),
    };
    let seeds = match options.seed_order {
        SeedOrder::TorsionFirst => {
            let t = torsion_seeds();
            if t.is_empty() {
                search()
            } else {
                t
            }
        }
        SeedOrder::SearchFirst => {
            let s = search();
            if s.is_empty() {
                torsion_seeds()
            } else {
                s
            }
        }
    };
    if let Some(point) = seeds.into_iter().next() {
        let certificate = point_to_witness(&target, &point, &options.b0)?;
        let source = WitnessSource::of_point(&curve, &point)?;
        return Ok(MinDeg2Outcome::WitnessFound(Box::new(FoundWitness {
            certificate,
            source,
            point,
            curve,
        })));
    }
    Ok(MinDeg2Outcome::NoWitnessUpToBound {
        height_bound,
        torsion: torsion_class(&curve)?,
    })
}

/// A certificate for `√B + √(2B)` in `Q(√B, √2B, √C)` from a point on the
/// congruent-number curve `Y² = X(X − B)(X + B)`.
pub fn congruent_witness(
    big_b: i64,
    c: i64,
    point: &EllPoint,
) -> Result<WitnessCertificate<TriquadElement>> {
    let two_b = crate::numtheory::squarefree_product(&BigInt::from(2), &BigInt::from(big_b));
    let two_b: i64 = two_b
        .try_into()
        .map_err(|_| Error::Unsupported("B too large".into()))?;
    let field = TriquadField::new(big_b, two_b, c)?;
    let v = &field.sqrt_of(big_b as i128)? + &field.sqrt_of(2 * big_b as i128)?;
    let target = normalize_index2_target(&v)?;
    let source = crate::elliptic::congruent_curve(big_b)?;
    let image = source
        .translate_point(point, &target.curve()?)
        .ok_or_else(|| Error::Internal("congruent curve is not a translate of the target curve".into()))?;
    point_to_witness(&target, &image, &Rational::one())
}

/// Result of the dispatcher over subfield indices.
#[derive(Debug, Clone, PartialEq)]
pub enum MinDegree {
    /// `v` is rational: degree 0 for every primitive element.
    Rational,
    /// `v` itself is primitive.
    Primitive(WitnessCertificate<TriquadElement>),
    /// `v` generates a quadratic subfield; the degree is exactly 4.
    Index4(WitnessCertificate<TriquadElement>),
    Index2(MinDeg2Outcome),
}

impl MinDegree {
    /// The proven minimal degree, when known.
    pub fn degree(&self) -> Option<usize> {
        match self {
            MinDegree::Rational => Some(0),
            MinDegree::Primitive(_) => Some(1),
            MinDegree::Index4(_) => Some(4),
            MinDegree::Index2(MinDeg2Outcome::WitnessFound(_)) => Some(2),
            MinDegree::Index2(MinDeg2Outcome::NoWitnessUpToBound { .. }) => None,
        }
    }
}

pub fn min_degree(v: &TriquadElement, height_bound: u64, options: &DecideOptions) -> Result<MinDegree> {
    if v.is_rational() {
        return Ok(MinDegree::Rational);
    }
    match v.subfield_index() {
        1 => Ok(MinDegree::Primitive(WitnessCertificate::new(
            v.clone(),
            Polynomial::x(),
            v.clone(),
        ))),
        4 => Ok(MinDegree::Index4(index4_witness_general(v)?)),
        2 => Ok(MinDegree::Index2(mindeg2_decide_with(v, height_bound, options)?)),
        n => Err(Error::Internal(format!("unexpected subfield index {n}"))),
    }
}
