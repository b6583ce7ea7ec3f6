//! Batch scans: quadratic twists, the `a² − 1 = (B − A)b²` family, and the
//! search for coefficients `a` with no degree-2 witness.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::elliptic::{
    point_search, theorem55_point, three_torsion_points, torsion_class, EllCurve, EllPoint,
    SearchOutcome, TorsionKind,
};
use crate::error::{Error, Result};
use crate::multiquad::{TriquadElement, TriquadField};
use crate::numtheory::{factorize, is_squarefree_i64, rational_sqrt, Rational};
use crate::witness::{normalize_index2_target, point_to_witness, CertificateJson};

/// `1 / ∏_{j<terms} (1 + 2^{−j})`, exactly, with a decimal rendering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelmerConstant {
    pub terms: u32,
    pub exact: Rational,
    pub decimal: String,
}

/// Truncated decimal expansion of a nonnegative rational.
pub fn decimal_digits(q: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (q.numer() * &scale).div_floor(q.denom());
    let (int_part, frac) = scaled.div_rem(&scale);
    format!("{int_part}.{:0>width$}", frac.to_string(), width = digits)
}

pub fn selmer_constant(terms: u32) -> SelmerConstant {
    let mut prod = Rational::one();
    let mut pow = Rational::one();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    for _ in 0..terms {
        prod *= Rational::one() + &pow;
        pow *= &half;
    }
    let exact = prod.recip();
    SelmerConstant {
        terms,
        decimal: decimal_digits(&exact, 15),
        exact,
    }
}

/// Smallest square-free `C ≥ 2` completing `A, B` to a triquadratic field.
pub fn default_third_generator(big_a: i64, big_b: i64) -> Option<i64> {
    (2..10_000).find(|&c| TriquadField::new(big_a, big_b, c).is_ok())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    /// `γ` for twist scans, `B` for family scans.
    pub parameter: i64,
    pub big_a: i64,
    pub big_b: i64,
    pub a: String,
    pub torsion: String,
    pub three_torsion: bool,
    /// `found`, `exhausted`, or `witness` (family rows, point given in
    /// closed form).
    pub outcome: String,
    pub point: Option<String>,
    pub witness: Option<CertificateJson>,
}

impl ScanRow {
    pub fn witness_id(&self) -> String {
        match &self.witness {
            Some(w) => format!("{}:{}", w.source, w.alpha.pretty),
            None => String::new(),
        }
    }
}

fn witness_for(
    big_a: i64,
    big_b: i64,
    a: &Rational,
    c: i64,
    point: &EllPoint,
    source: &str,
) -> Result<CertificateJson> {
    let field = TriquadField::new(big_a, big_b, c)?;
    let v = &field.sqrt_of(big_a as i128)? + &field.sqrt_of(big_b as i128)?.scale(a);
    let target = normalize_index2_target(&v)?;
    let cert = point_to_witness(&target, point, &Rational::one())?;
    let curve = target.curve()?;
    Ok(CertificateJson::triquadratic(&cert, source, Some(point), Some(&curve)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwistScanConfig {
    pub a: Rational,
    pub big_a: i64,
    pub big_b: i64,
    pub gamma_max: i64,
    pub height_bound: u64,
    /// Third generator of `L_γ`; chosen per row when absent.
    pub c: Option<i64>,
}

impl TwistScanConfig {
    pub fn base_curve(&self) -> Result<EllCurve> {
        EllCurve::from_params(self.a.clone(), self.big_a, self.big_b)
    }

    /// `8 ∏ p` over odd primes dividing `16r²s²(r − s)²` for the integral
    /// model of the base curve.
    pub fn modulus(&self) -> Result<BigInt> {
        let curve = self.base_curve()?;
        let l = curve.r().denom().lcm(curve.s().denom());
        let k2 = Rational::from_integer(&l * &l);
        let r = (curve.r() * &k2).to_integer();
        let s = (curve.s() * &k2).to_integer();
        let disc = (&r * &s * (&r - &s)).abs();
        Ok(factorize(&disc)
            .into_iter()
            .map(|(p, _)| p)
            .filter(|p| p.is_odd())
            .fold(BigInt::from(8), |acc, p| acc * p))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwistSummary {
    pub rows: usize,
    /// Rows with torsion `Z2×Z2` and no point up to the bound.
    pub no_witness_rows: usize,
    pub fraction: f64,
    pub three_torsion_rows: usize,
    pub selmer_reference: String,
    pub caveat: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwistReport {
    pub modulus: String,
    pub rows: Vec<ScanRow>,
    pub summary: TwistSummary,
}

pub fn twist_scan(config: &TwistScanConfig) -> Result<TwistReport> {
    let base = config.base_curve()?;
    let d = config.modulus()?;
    let mut rows = Vec::new();
    for gamma in 1..=config.gamma_max {
        if !is_squarefree_i64(gamma) || !BigInt::from(gamma).gcd(&d).is_one() {
            continue;
        }
        let twisted = base.quadratic_twist(gamma)?;
        let prov = twisted.provenance().expect("twist keeps provenance").clone();
        let torsion = torsion_class(&twisted)?;
        let threes = three_torsion_points(&twisted);
        let outcome = point_search(&twisted, config.height_bound);
        let (label, point) = match &outcome {
            SearchOutcome::FoundPoint(p) => ("found", Some(p.clone())),
            SearchOutcome::ExhaustedBound(_) => ("exhausted", None),
        };
        let seed = point.clone().or_else(|| threes.first().cloned());
        let witness = match seed {
            Some(p) => {
                let c = match config.c {
                    Some(c) => c,
                    None => default_third_generator(prov.big_a, prov.big_b)
                        .ok_or_else(|| Error::Internal("no third generator".into()))?,
                };
                let source = crate::witness::WitnessSource::of_point(&twisted, &p)?;
                Some(witness_for(prov.big_a, prov.big_b, &prov.a, c, &p, source.label())?)
            }
            None => None,
        };
        rows.push(ScanRow {
            parameter: gamma,
            big_a: prov.big_a,
            big_b: prov.big_b,
            a: prov.a.to_string(),
            torsion: torsion.kind.to_string(),
            three_torsion: !threes.is_empty(),
            outcome: label.into(),
            point: point.map(|p| p.to_string()),
            witness,
        });
    }
    let no_witness = rows
        .iter()
        .filter(|r| r.torsion == TorsionKind::Z2xZ2.to_string() && r.outcome == "exhausted")
        .count();
    let three = rows.iter().filter(|r| r.three_torsion).count();
    let fraction = if rows.is_empty() {
        0.0
    } else {
        no_witness as f64 / rows.len() as f64
    };
    Ok(TwistReport {
        modulus: d.to_string(),
        summary: TwistSummary {
            rows: rows.len(),
            no_witness_rows: no_witness,
            fraction,
            three_torsion_rows: three,
            selmer_reference: selmer_constant(60).decimal,
            caveat: "empirical, bound-limited: the fraction counts rows with no point up to the \
                     height bound and is not an estimate of the Selmer bound"
                .into(),
        },
        rows,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum FamilyParams {
    /// `(a, b)` with `a² − 1 = (B − A)b²` for every row.
    Explicit { a: Rational, b: Rational },
    /// `a = (m² + n²)/(m² − n²)`, `b = 2mn/(c(m² − n²))` with `c² = B − A`.
    Pythagorean { m: i64, n: i64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Family55Config {
    /// `A = B − offset`.
    pub offset: i64,
    pub b_min: i64,
    pub b_max: i64,
    pub params: FamilyParams,
    pub c: Option<i64>,
}

pub fn family_ab(params: &FamilyParams, big_a: i64, big_b: i64) -> Result<(Rational, Rational)> {
    let (a, b) = match params {
        FamilyParams::Explicit { a, b } => (a.clone(), b.clone()),
        FamilyParams::Pythagorean { m, n } => {
            let diff = Rational::from_integer(BigInt::from(big_b - big_a));
            let c = rational_sqrt(&diff).ok_or_else(|| {
                Error::IdentityViolated(format!("B − A = {} is not a square", big_b - big_a))
            })?;
            let (m, n) = (
                Rational::from_integer(BigInt::from(*m)),
                Rational::from_integer(BigInt::from(*n)),
            );
            let den = &m * &m - &n * &n;
            if den.is_zero() || c.is_zero() {
                return Err(Error::IdentityViolated("m² = n² or A = B".into()));
            }
            let two = Rational::from_integer(BigInt::from(2));
            ((&m * &m + &n * &n) / &den, two * &m * &n / (c * den))
        }
    };
    let diff = Rational::from_integer(BigInt::from(big_b - big_a));
    if &a * &a - Rational::one() != diff * &b * &b {
        return Err(Error::IdentityViolated(format!(
            "a² − 1 = (B − A)b² fails for a = {a}, b = {b}, A = {big_a}, B = {big_b}"
        )));
    }
    Ok((a, b))
}

/// One row per square-free `B` in range with `A = B − offset` square-free
/// and `Q(√A, √B, √C)` of degree 8; each row carries a verified witness.
pub fn family55_scan(config: &Family55Config) -> Result<Vec<ScanRow>> {
    let mut rows = Vec::new();
    for big_b in config.b_min..=config.b_max {
        let big_a = big_b - config.offset;
        if big_a == 0 || !is_squarefree_i64(big_b) || !is_squarefree_i64(big_a) {
            continue;
        }
        let c = match config.c {
            Some(c) if TriquadField::new(big_a, big_b, c).is_ok() => c,
            Some(_) => continue,
            None => match default_third_generator(big_a, big_b) {
                Some(c) => c,
                None => continue,
            },
        };
        let (a, b) = family_ab(&config.params, big_a, big_b)?;
        let point = theorem55_point(big_a, big_b, &a, &b)?;
        let curve = EllCurve::from_params(a.clone(), big_a, big_b)?;
        let torsion = torsion_class(&curve)?;
        let witness = witness_for(big_a, big_b, &a, c, &point, "family-point")?;
        rows.push(ScanRow {
            parameter: big_b,
            big_a,
            big_b,
            a: a.to_string(),
            torsion: torsion.kind.to_string(),
            three_torsion: torsion.kind == TorsionKind::Z2xZ6,
            outcome: "witness".into(),
            point: Some(point.to_string()),
            witness: Some(witness),
        });
    }
    Ok(rows)
}

/// Integers `1..=10`, then `k/2` for odd `k ≤ 19`.
pub fn default_candidates() -> Vec<Rational> {
    let mut out: Vec<Rational> = (1..=10).map(|n| Rational::from_integer(BigInt::from(n))).collect();
    out.extend((1..=19).step_by(2).map(|k| Rational::new(BigInt::from(k), BigInt::from(2))));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureRow {
    pub big_a: i64,
    pub big_b: i64,
    /// First candidate with torsion `Z2×Z2` and no point up to the bound.
    pub candidate: Option<String>,
    pub tried: usize,
    /// `evidence (H = …)` or `no candidate under bound`; never a proof.
    pub strength: String,
}

pub fn conjecture_scan(
    a_max: i64,
    b_max: i64,
    candidates: &[Rational],
    height_bound: u64,
) -> Result<Vec<ConjectureRow>> {
    let squarefree = |hi: i64| (2..=hi).filter(|&n| is_squarefree_i64(n)).collect::<Vec<_>>();
    let mut rows = Vec::new();
    for &big_a in &squarefree(a_max) {
        for &big_b in &squarefree(b_max) {
            if big_a >= big_b {
                continue;
            }
            let mut found = None;
            let mut tried = 0;
            for a in candidates {
                if a.is_zero() {
                    continue;
                }
                let Ok(curve) = EllCurve::from_params(a.clone(), big_a, big_b) else {
                    continue;
                };
                tried += 1;
                if torsion_class(&curve)?.kind != TorsionKind::Z2xZ2 {
                    continue;
                }
                if let SearchOutcome::ExhaustedBound(_) = point_search(&curve, height_bound) {
                    found = Some(a.clone());
                    break;
                }
            }
            rows.push(ConjectureRow {
                big_a,
                big_b,
                strength: match found {
                    Some(_) => format!("evidence (H = {height_bound})"),
                    None => "no candidate under bound".into(),
                },
                candidate: found.map(|a| a.to_string()),
                tried,
            });
        }
    }
    Ok(rows)
}

/// CSV with columns `parameter,torsion,outcome,point,witness-id`.
pub fn rows_to_csv(rows: &[ScanRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Internal(format!("csv: {e}"));
    w.write_record(["parameter", "torsion", "outcome", "point", "witness-id"])
        .map_err(io)?;
    for r in rows {
        w.write_record([
            r.parameter.to_string(),
            r.torsion.clone(),
            r.outcome.clone(),
            r.point.clone().unwrap_or_default(),
            r.witness_id(),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Internal(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

pub fn conjecture_rows_to_csv(rows: &[ConjectureRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::Internal(format!("csv: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Internal(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

/// Element `√A + a√B` of `Q(√A, √B, √C)`, for callers building targets.
pub fn family_target(big_a: i64, big_b: i64, a: &Rational, c: i64) -> Result<TriquadElement> {
    let field = TriquadField::new(big_a, big_b, c)?;
    Ok(&field.sqrt_of(big_a as i128)? + &field.sqrt_of(big_b as i128)?.scale(a))
}

impl TwistSummary {
    pub fn fraction_text(&self) -> String {
        format!("{}/{}", self.no_witness_rows, self.rows)
    }
}
