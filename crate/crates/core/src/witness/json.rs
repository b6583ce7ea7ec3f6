//! Serialized witness certificates and their independent re-check.

use serde::{Deserialize, Serialize};

use crate::certificate::WitnessCertificate;
use crate::elliptic::{CurveJson, EllCurve, EllPoint, PointJson};
use crate::error::{Error, Result};
use crate::multiquad::{TriquadElement, TriquadField};
use crate::numtheory::parse_rational;
use crate::poly::Polynomial;
use crate::quartic::{QuarticElement, QuarticField};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub pretty: String,
    /// Coordinates in the field's basis, as rational strings.
    pub coords: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldRecord {
    Generators([i64; 3]),
    DefiningPolynomial(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    /// `triquadratic` or `quartic`.
    pub kind: String,
    pub field: FieldRecord,
    pub target: ElementRecord,
    pub alpha: ElementRecord,
    /// Coefficients, constant term first.
    pub polynomial: Vec<String>,
    pub polynomial_pretty: String,
    pub degree: usize,
    pub source: String,
    pub point: Option<PointJson>,
    pub curve: Option<CurveJson>,
    pub verified: bool,
}

fn triquad_record(e: &TriquadElement) -> ElementRecord {
    ElementRecord {
        pretty: e.to_string(),
        coords: e.coords().iter().map(ToString::to_string).collect(),
    }
}

fn quartic_record(e: &QuarticElement) -> ElementRecord {
    ElementRecord {
        pretty: e.to_string(),
        coords: e.coords().iter().map(ToString::to_string).collect(),
    }
}

fn poly_strings(p: &Polynomial) -> Vec<String> {
    let mut v: Vec<String> = p.coeffs().iter().map(ToString::to_string).collect();
    if v.is_empty() {
        v.push("0".into());
    }
    v
}

impl CertificateJson {
    pub fn triquadratic(
        cert: &WitnessCertificate<TriquadElement>,
        source: &str,
        point: Option<&EllPoint>,
        curve: Option<&EllCurve>,
    ) -> Self {
        CertificateJson {
            kind: "triquadratic".into(),
            field: FieldRecord::Generators(cert.alpha.field().generators()),
            target: triquad_record(&cert.target),
            alpha: triquad_record(&cert.alpha),
            polynomial: poly_strings(&cert.polynomial),
            polynomial_pretty: cert.polynomial.to_string(),
            degree: cert.degree(),
            source: source.into(),
            point: point.map(EllPoint::to_json),
            curve: curve.map(EllCurve::to_json),
            verified: cert.verified,
        }
    }

    pub fn quartic(cert: &WitnessCertificate<QuarticElement>, source: &str) -> Self {
        CertificateJson {
            kind: "quartic".into(),
            field: FieldRecord::DefiningPolynomial(cert.alpha.field().polynomial().to_string()),
            target: quartic_record(&cert.target),
            alpha: quartic_record(&cert.alpha),
            polynomial: poly_strings(&cert.polynomial),
            polynomial_pretty: cert.polynomial.to_string(),
            degree: cert.degree(),
            source: source.into(),
            point: None,
            curve: None,
            verified: cert.verified,
        }
    }
}

fn fail(msg: impl Into<String>) -> Error {
    Error::VerificationFailed(msg.into())
}

fn check_pretty<E: PartialEq>(parsed: Result<E>, coords: &E, what: &str) -> Result<()> {
    match parsed {
        Ok(p) if &p == coords => Ok(()),
        _ => Err(fail(format!("{what}: pretty form disagrees with coordinates"))),
    }
}

/// Recompute everything in the certificate from its coordinates: the exact
/// evaluation, primitivity of `alpha`, the stated degree, the pretty forms,
/// and, when present, that the source point lies on the curve.
pub fn verify_certificate_json(json: &CertificateJson) -> Result<()> {
    let coeffs = json
        .polynomial
        .iter()
        .map(|c| parse_rational(c))
        .collect::<Result<Vec<_>>>()?;
    let poly = Polynomial::new(coeffs);
    if poly.degree() != json.degree {
        return Err(fail(format!(
            "stated degree {} but polynomial has degree {}",
            json.degree,
            poly.degree()
        )));
    }
    if Polynomial::parse(&json.polynomial_pretty).ok().as_ref() != Some(&poly) {
        return Err(fail("polynomial: pretty form disagrees with coefficients"));
    }
    let ok = match (json.kind.as_str(), &json.field) {
        ("triquadratic", FieldRecord::Generators([a, b, c])) => {
            let field = TriquadField::new(*a, *b, *c)?;
            let alpha = TriquadElement::from_coord_strings(field, &json.alpha.coords)?;
            let target = TriquadElement::from_coord_strings(field, &json.target.coords)?;
            check_pretty(TriquadElement::parse(field, &json.alpha.pretty), &alpha, "alpha")?;
            check_pretty(TriquadElement::parse(field, &json.target.pretty), &target, "target")?;
            WitnessCertificate::new(alpha, poly, target).verified
        }
        ("quartic", FieldRecord::DefiningPolynomial(p)) => {
            let field = QuarticField::parse(p)?;
            let read = |r: &ElementRecord| -> Result<QuarticElement> {
                if r.coords.len() != 4 {
                    return Err(fail("quartic elements have 4 coordinates"));
                }
                let c = r
                    .coords
                    .iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()?;
                Ok(field.element(std::array::from_fn(|i| c[i].clone())))
            };
            let alpha = read(&json.alpha)?;
            let target = read(&json.target)?;
            check_pretty(QuarticElement::parse(&field, &json.alpha.pretty), &alpha, "alpha")?;
            check_pretty(QuarticElement::parse(&field, &json.target.pretty), &target, "target")?;
            WitnessCertificate::new(alpha, poly, target).verified
        }
        (kind, _) => return Err(fail(format!("unknown certificate kind `{kind}` for this field"))),
    };
    if !ok {
        return Err(fail("polynomial(alpha) does not equal the target, or alpha is not primitive"));
    }
    if let (Some(point), Some(curve)) = (&json.point, &json.curve) {
        let curve = EllCurve::from_json(curve)?;
        let point = EllPoint::from_json(point)?;
        if let Some((x, y)) = point.coords() {
            if !curve.contains(x, y) {
                return Err(fail("source point is not on the curve"));
            }
        }
    }
    if !json.verified {
        return Err(fail("certificate is marked unverified"));
    }
    Ok(())
}
