//! Witnesses with `deg_α(v) = [L : Q(v)]` in Galois quartic fields.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{normalize_quadratic, GroupType, QuarticElement};
use crate::certificate::WitnessCertificate;
use crate::error::{Error, Result};
use crate::linalg;
use crate::numtheory::Rational;
use crate::poly::Polynomial;

/// Minimal polynomial `x² + f1·x + f0` of a primitive element over `Q(v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RelativeMinPoly {
    pub f1: QuarticElement,
    pub f0: QuarticElement,
}

impl RelativeMinPoly {
    pub fn eval(&self, alpha: &QuarticElement) -> QuarticElement {
        &(&(alpha * alpha) + &(&self.f1 * alpha)) + &self.f0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum QuarticOutcome {
    /// `v` is rational; its degree is 0 with respect to every primitive
    /// element.
    DegreeZero(Rational),
    Witness(WitnessCertificate<QuarticElement>),
}

fn column(e: &QuarticElement) -> Vec<Rational> {
    e.coords().to_vec()
}

pub fn relative_minpoly(alpha: &QuarticElement, v: &QuarticElement) -> Result<RelativeMinPoly> {
    if alpha.field() != v.field() {
        return Err(Error::FieldMismatch);
    }
    if !alpha.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    let index = v.subfield_index();
    if index != 2 {
        return Err(Error::WrongIndex {
            expected: 2,
            found: index,
        });
    }
    let field = v.field();
    let one = field.one();
    // α² = -(u0 + u1 v)α - (w0 + w1 v)
    let columns = [column(alpha), column(&(v * alpha)), column(&one), column(v)];
    let rhs: Vec<Rational> = column(&(alpha * alpha)).into_iter().map(|c| -c).collect();
    let sol = linalg::solve(&columns, &rhs)
        .ok_or_else(|| Error::Internal("relative minimal polynomial".into()))?;
    let lin = |c0: &Rational, c1: &Rational| &field.from_rational(c0.clone()) + &v.scale(c1);
    let out = RelativeMinPoly {
        f1: lin(&sol[0], &sol[1]),
        f0: lin(&sol[2], &sol[3]),
    };
    debug_assert!(out.eval(alpha).is_zero());
    Ok(out)
}

/// Candidates `x, x+1, x-1, 2x+1, 2x-1, 3x+1, ...`.
fn primitive_candidates(x: &QuarticElement) -> impl Iterator<Item = QuarticElement> + '_ {
    let field = x.field().clone();
    std::iter::once(x.clone()).chain((1i64..).flat_map(move |k| {
        let base = x.scale(&Rational::from_integer(BigInt::from(k)));
        let field = field.clone();
        [1i64, -1].into_iter().map(move |d| &base + &field.from_rational(Rational::from_integer(BigInt::from(d))))
    }))
}

/// A primitive `α` and polynomial `f` of degree `[L : Q(v)]` with `f(α) = v`.
pub fn quartic_witness(v: &QuarticElement) -> Result<QuarticOutcome> {
    if v.is_rational() {
        return Ok(QuarticOutcome::DegreeZero(v.coords()[0].clone()));
    }
    let cert = if v.is_primitive() {
        WitnessCertificate::new(v.clone(), Polynomial::x(), v.clone())
    } else {
        match v.field().group_type() {
            GroupType::C4 => cyclic_witness(v)?,
            GroupType::V4 => biquadratic_witness(v)?,
        }
    };
    if !cert.verified {
        return Err(Error::VerificationFailed(format!("quartic witness for {v}")));
    }
    Ok(QuarticOutcome::Witness(cert))
}

fn cyclic_witness(v: &QuarticElement) -> Result<WitnessCertificate<QuarticElement>> {
    let field = v.field();
    let alpha0 = primitive_candidates(&field.generator())
        .find(QuarticElement::is_primitive)
        .expect("x is primitive");
    let RelativeMinPoly { f1, f0 } = relative_minpoly(&alpha0, v)?;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let beta = &alpha0 + &f1.scale(&half);
    // β² = -(f0 - f1²/4) = -(a0 + a1 v)
    let delta = &f0 - &(&f1 * &f1).scale(&(&half * &half));
    let sol = linalg::solve(&[column(&field.one()), column(v)], &column(&delta))
        .ok_or_else(|| Error::Internal("f0 - f1²/4 outside Q(v)".into()))?;
    let (a0, a1) = (&sol[0], &sol[1]);
    if a1.is_zero() {
        return Err(Error::Internal("vanishing linear coefficient".into()));
    }
    let minus_inv = -a1.recip();
    let poly = Polynomial::new(vec![a0 * &minus_inv, Rational::zero(), minus_inv]);
    Ok(WitnessCertificate::new(beta, poly, v.clone()))
}

fn biquadratic_witness(v: &QuarticElement) -> Result<WitnessCertificate<QuarticElement>> {
    let field = v.field();
    // v = c0 + c1·√a
    let (sub_a, c0, c1) = normalize_quadratic(v)?;
    let sub_b = field
        .quadratic_subfields()
        .iter()
        .find(|s| s.radicand != sub_a.radicand)
        .ok_or_else(|| Error::Internal("V4 field with one quadratic subfield".into()))?;
    let sqrt_a = field.sqrt_of_subfield(&sub_a);
    let sqrt_b = field.sqrt_of_subfield(sub_b);
    let alpha = &sqrt_b + &(&sqrt_a * &sqrt_b);
    let a = Rational::from_integer(sub_a.radicand.clone());
    let b = Rational::from_integer(sub_b.radicand.clone());
    // √a = (1/2b)α² - (a+1)/2
    let two = Rational::from_integer(BigInt::from(2));
    let base = Polynomial::new(vec![
        -(&a + Rational::one()) / &two,
        Rational::zero(),
        (&two * &b).recip(),
    ]);
    Ok(WitnessCertificate::new(alpha, base.affine(&c1, &c0), v.clone()))
}
