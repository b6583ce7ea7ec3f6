//! Galois quartic fields `Q[x]/(p)` with group `C4` or `V4`.

mod witness;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::numtheory::{rational_approximation, rational_sqrt, squarefree_decompose, Rational};
use crate::poly::{FieldElement, Polynomial};

pub use witness::{quartic_witness, relative_minpoly, QuarticOutcome, RelativeMinPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupType {
    C4,
    V4,
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupType::C4 => "C4",
            GroupType::V4 => "V4",
        })
    }
}

type Coords = [Rational; 4];

/// A quadratic subfield `Q(√d)` together with the element `√d`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticSubfield {
    pub radicand: BigInt,
    sqrt: Coords,
}

#[derive(Debug)]
struct Inner {
    p: Polynomial,
    /// `x^4, x^5, x^6` reduced modulo `p`.
    high_powers: [Coords; 3],
    /// Images of `x` under the four automorphisms, identity first.
    automorphisms: Vec<Coords>,
    group: GroupType,
    subfields: Vec<QuadraticSubfield>,
}

#[derive(Debug, Clone)]
pub struct QuarticField(Arc<Inner>);

impl PartialEq for QuarticField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.p == other.0.p
    }
}

fn zero_coords() -> Coords {
    std::array::from_fn(|_| Rational::zero())
}

fn reduction_table(p: &Polynomial) -> [Coords; 3] {
    // x^4 = -(c0 + c1 x + c2 x^2 + c3 x^3)
    let mut table = [zero_coords(), zero_coords(), zero_coords()];
    let mut cur: Coords = std::array::from_fn(|i| -p.coeff(i));
    for entry in table.iter_mut() {
        *entry = cur.clone();
        let top = cur[3].clone();
        let mut next = zero_coords();
        for i in (1..4).rev() {
            next[i] = cur[i - 1].clone();
        }
        for (i, n) in next.iter_mut().enumerate() {
            *n -= &top * p.coeff(i);
        }
        cur = next;
    }
    table
}

fn mul_coords(a: &Coords, b: &Coords, table: &[Coords; 3]) -> Coords {
    let mut prod = vec![Rational::zero(); 7];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                prod[i + j] += x * y;
            }
        }
    }
    let mut out: Coords = std::array::from_fn(|i| prod[i].clone());
    for (k, row) in table.iter().enumerate() {
        let c = &prod[4 + k];
        if c.is_zero() {
            continue;
        }
        for (o, r) in out.iter_mut().zip(row) {
            *o += c * r;
        }
    }
    out
}

fn gauss_complex(mut m: Vec<Vec<Complex64>>, mut rhs: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| m[i][col].norm().total_cmp(&m[j][col].norm()))?;
        if m[piv][col].norm() < 1e-12 {
            return None;
        }
        m.swap(col, piv);
        rhs.swap(col, piv);
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            for c in col..n {
                let v = m[col][c];
                m[r][c] -= f * v;
            }
            let v = rhs[col];
            rhs[r] -= f * v;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for r in (0..n).rev() {
        let s = (r + 1..n).fold(rhs[r], |acc, c| acc - m[r][c] * x[c]);
        x[r] = s / m[r][r];
    }
    Some(x)
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let perm = [a, b, c, d];
                    if (0..4).all(|i| (0..i).all(|j| perm[i] != perm[j])) {
                        out.push(perm);
                    }
                }
            }
        }
    }
    out
}

fn near_integer(z: Complex64) -> Option<BigInt> {
    let r = z.re.round();
    let tol = 1e-6 * z.re.abs().max(1.0);
    ((z.re - r).abs() < tol && z.im.abs() < tol).then(|| BigInt::from(r as i128))
}

fn has_quadratic_factor(p: &Polynomial, roots: &[Complex64]) -> bool {
    for (a, b, c, d) in [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)] {
        for (i, j) in [(a, b), (c, d)] {
            let (Some(s), Some(t)) = (near_integer(roots[i] + roots[j]), near_integer(roots[i] * roots[j])) else {
                continue;
            };
            let factor = Polynomial::new(vec![
                Rational::from_integer(t),
                Rational::from_integer(-s),
                Rational::one(),
            ]);
            if p.div_rem(&factor).1.is_zero() {
                return true;
            }
        }
    }
    false
}

impl QuarticField {
    /// Validate a monic integral quartic and classify its Galois group.
    pub fn new(p: Polynomial) -> Result<Self> {
        if p.degree() != 4 || !p.is_monic_integral() {
            return Err(Error::InvalidPolynomial(format!(
                "expected a monic integer quartic, got {p}"
            )));
        }
        let roots = p.complex_roots();
        if !p.rational_roots().is_empty() || has_quadratic_factor(&p, &roots) {
            return Err(Error::Reducible(p.to_string()));
        }
        let table = reduction_table(&p);
        let automorphisms = find_automorphisms(&p, &roots, &table);
        if automorphisms.len() != 4 {
            return Err(Error::NotGalois(automorphisms.len()));
        }
        let group = match resolvent_cubic(&p).rational_roots().len() {
            3 => GroupType::V4,
            1 => GroupType::C4,
            n => {
                return Err(Error::Internal(format!(
                    "resolvent cubic of a Galois quartic has {n} rational roots"
                )))
            }
        };
        let mut field = QuarticField(Arc::new(Inner {
            p,
            high_powers: table,
            automorphisms,
            group,
            subfields: Vec::new(),
        }));
        let subfields = field.compute_subfields()?;
        Arc::get_mut(&mut field.0)
            .expect("no outstanding elements")
            .subfields = subfields;
        Ok(field)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(Polynomial::parse(text)?)
    }

    /// `Q(√a, √b)` with defining polynomial the minimal polynomial of
    /// `√a + √b`.
    pub fn biquadratic(a: i64, b: i64) -> Result<Self> {
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        let q = |n: BigInt| Rational::from_integer(n);
        let p = Polynomial::new(vec![
            q((&a - &b) * (&a - &b)),
            Rational::zero(),
            q(BigInt::from(-2) * (&a + &b)),
            Rational::zero(),
            Rational::one(),
        ]);
        let field = Self::new(p)?;
        if field.group_type() != GroupType::V4 {
            return Err(Error::Internal("biquadratic field is not V4".into()));
        }
        Ok(field)
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.0.p
    }

    pub fn group_type(&self) -> GroupType {
        self.0.group
    }

    /// The four automorphisms, each given by the image of `x`.
    pub fn automorphisms(&self) -> Vec<QuarticElement> {
        self.0
            .automorphisms
            .iter()
            .map(|c| self.element(c.clone()))
            .collect()
    }

    /// Quadratic subfields sorted by `(|d|, d < 0)`: one for `C4`, three for
    /// `V4`. The first two radicands of a `V4` field are its canonical pair.
    pub fn quadratic_subfields(&self) -> &[QuadraticSubfield] {
        &self.0.subfields
    }

    pub fn sqrt_of_subfield(&self, sub: &QuadraticSubfield) -> QuarticElement {
        self.element(sub.sqrt.clone())
    }

    pub fn element(&self, coords: [Rational; 4]) -> QuarticElement {
        QuarticElement {
            field: self.clone(),
            coords,
        }
    }

    pub fn from_rational(&self, c: Rational) -> QuarticElement {
        let mut coords = zero_coords();
        coords[0] = c;
        self.element(coords)
    }

    pub fn zero(&self) -> QuarticElement {
        self.element(zero_coords())
    }

    pub fn one(&self) -> QuarticElement {
        self.from_rational(Rational::one())
    }

    /// The class of `x`.
    pub fn generator(&self) -> QuarticElement {
        let mut coords = zero_coords();
        coords[1] = Rational::one();
        self.element(coords)
    }

    /// Reduce an arbitrary polynomial in `x` modulo `p`.
    pub fn reduce(&self, f: &Polynomial) -> QuarticElement {
        f.eval(&self.generator())
    }

    fn compute_subfields(&self) -> Result<Vec<QuadraticSubfield>> {
        let x = self.generator();
        let mut out: Vec<QuadraticSubfield> = Vec::new();
        for k in 1..4 {
            let sigma = k;
            if !self.apply_index(&self.apply_index(&x, sigma), sigma).eq_coords(&x) {
                continue;
            }
            let fixed = (1..4)
                .map(|e| {
                    let t = x.pow(e);
                    &t + &self.apply_index(&t, sigma)
                })
                .find(|z| !z.is_rational())
                .ok_or_else(|| Error::Internal("no irrational fixed element".into()))?;
            let mut sub = normalize_quadratic(&fixed)?.0;
            // fix the sign: lowest nonzero coordinate positive
            if sub.sqrt.iter().find(|c| !c.is_zero()).is_some_and(Signed::is_negative) {
                sub.sqrt = std::array::from_fn(|i| -&sub.sqrt[i]);
            }
            if !out.iter().any(|s| s.radicand == sub.radicand) {
                out.push(sub);
            }
        }
        out.sort_by_key(|s| (s.radicand.abs(), s.radicand.is_negative()));
        Ok(out)
    }

    fn apply_index(&self, e: &QuarticElement, sigma: usize) -> QuarticElement {
        let image = self.element(self.0.automorphisms[sigma].clone());
        Polynomial::new(e.coords.to_vec()).eval(&image)
    }
}

impl fmt::Display for QuarticField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[x]/({})", self.0.p)
    }
}

fn resolvent_cubic(p: &Polynomial) -> Polynomial {
    let (a, b, c, d) = (p.coeff(3), p.coeff(2), p.coeff(1), p.coeff(0));
    let four = Rational::from_integer(BigInt::from(4));
    Polynomial::new(vec![
        -(&a * &a * &d - &four * &b * &d + &c * &c),
        &a * &c - &four * &d,
        -b,
        Rational::one(),
    ])
}

/// Images `g(x)` of `x` under automorphisms, found by interpolating root
/// permutations numerically and then confirmed by `p(g(x)) ≡ 0 mod p`.
fn find_automorphisms(p: &Polynomial, roots: &[Complex64], table: &[Coords; 3]) -> Vec<Coords> {
    let vandermonde: Vec<Vec<Complex64>> = roots
        .iter()
        .map(|r| (0..4).map(|k| r.powu(k)).collect())
        .collect();
    let mut images: Vec<Coords> = Vec::new();
    for perm in permutations4() {
        let rhs: Vec<Complex64> = perm.iter().map(|&i| roots[i]).collect();
        let Some(sol) = gauss_complex(vandermonde.clone(), rhs) else {
            continue;
        };
        let mut coords = zero_coords();
        let mut ok = true;
        for (c, z) in coords.iter_mut().zip(&sol) {
            let tol = 1e-7 * z.re.abs().max(1.0);
            if z.im.abs() > tol {
                ok = false;
                break;
            }
            match rational_approximation(z.re, 1 << 24, tol) {
                Some(q) => *c = q,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok || images.contains(&coords) {
            continue;
        }
        // exact check: p(g) = 0 in Q[x]/(p)
        let mut acc = zero_coords();
        for coeff in p.coeffs().iter().rev() {
            acc = mul_coords(&acc, &coords, table);
            acc[0] += coeff;
        }
        if acc.iter().all(Zero::is_zero) {
            images.push(coords);
        }
    }
    let identity: Coords = std::array::from_fn(|i| if i == 1 { Rational::one() } else { Rational::zero() });
    images.sort_by_key(|c| *c != identity);
    images
}

/// Write a degree-2 element as `c0 + c1·√d` with `d` square-free, `c1 > 0`.
fn normalize_quadratic(v: &QuarticElement) -> Result<(QuadraticSubfield, Rational, Rational)> {
    let minpoly = v.minimal_polynomial();
    if minpoly.degree() != 2 {
        return Err(Error::WrongIndex {
            expected: 2,
            found: minpoly.degree() as u32,
        });
    }
    let half_m1 = minpoly.coeff(1) / Rational::from_integer(BigInt::from(2));
    // w = v + m1/2 has w^2 = m1^2/4 - m0
    let w = v + &v.field.from_rational(half_m1.clone());
    let delta = &half_m1 * &half_m1 - minpoly.coeff(0);
    let dec = squarefree_decompose(&(delta.numer() * delta.denom()))?;
    let d = dec.squarefree_part;
    let k = rational_sqrt(&(&delta / Rational::from_integer(d.clone())))
        .ok_or_else(|| Error::Internal("square-free normalization".into()))?;
    let sqrt = w.scale(&k.recip());
    Ok((
        QuadraticSubfield {
            radicand: d,
            sqrt: sqrt.coords,
        },
        -half_m1,
        k,
    ))
}

#[derive(Debug, Clone)]
pub struct QuarticElement {
    field: QuarticField,
    coords: [Rational; 4],
}

impl PartialEq for QuarticElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coords == other.coords
    }
}

impl QuarticElement {
    pub fn field(&self) -> &QuarticField {
        &self.field
    }

    /// Coefficients of `1, x, x^2, x^3`.
    pub fn coords(&self) -> &[Rational; 4] {
        &self.coords
    }

    fn eq_coords(&self, other: &Self) -> bool {
        self.coords == other.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.field.element(std::array::from_fn(|i| &self.coords[i] * c))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(self.field.one(), |acc, _| &acc * self)
    }

    /// Image under the automorphism sending `x` to `image`.
    pub fn apply(&self, image: &QuarticElement) -> Self {
        Polynomial::new(self.coords.to_vec()).eval(image)
    }

    /// Images under the four automorphisms, identity first.
    pub fn conjugates(&self) -> Vec<QuarticElement> {
        (0..4).map(|k| self.field.apply_index(self, k)).collect()
    }

    pub fn degree_over_q(&self) -> u32 {
        let mut distinct: Vec<QuarticElement> = Vec::new();
        for c in self.conjugates() {
            if !distinct.contains(&c) {
                distinct.push(c);
            }
        }
        distinct.len() as u32
    }

    /// `[L : Q(self)]`.
    pub fn subfield_index(&self) -> u32 {
        4 / self.degree_over_q()
    }

    pub fn is_primitive(&self) -> bool {
        self.degree_over_q() == 4
    }

    /// Monic minimal polynomial over Q, from the linear dependency among
    /// the powers of `self`.
    pub fn minimal_polynomial(&self) -> Polynomial {
        let mut powers = vec![self.field.one()];
        loop {
            let next = powers.last().map(|p| p * self).expect("nonempty");
            let columns: Vec<Vec<Rational>> = powers.iter().map(|p| p.coords.to_vec()).collect();
            let rhs: Vec<Rational> = next.coords.iter().map(|c| -c).collect();
            if let Some(sol) = linalg::solve(&columns, &rhs) {
                let mut coeffs = sol;
                coeffs.push(Rational::one());
                return Polynomial::new(coeffs);
            }
            powers.push(next);
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // from m(t) = t·h(t) + m0 with m0 ≠ 0: 1/t = -h(t)/m0
        let m = self.minimal_polynomial();
        let m0 = m.coeff(0);
        let h = Polynomial::new(m.coeffs()[1..].to_vec());
        Ok(h.eval(self).scale(&(-m0.recip())))
    }

    pub fn as_polynomial(&self) -> Polynomial {
        Polynomial::new(self.coords.to_vec())
    }

    /// A polynomial in `x`, reduced modulo the defining polynomial.
    pub fn parse(field: &QuarticField, text: &str) -> Result<Self> {
        Ok(field.reduce(&Polynomial::parse(text)?))
    }

    pub fn to_f64_coords(&self) -> [f64; 4] {
        std::array::from_fn(|i| self.coords[i].to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Display for QuarticElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_polynomial())
    }
}

impl Add for &QuarticElement {
    type Output = QuarticElement;

    fn add(self, rhs: &QuarticElement) -> QuarticElement {
        assert!(self.field == rhs.field, "quartic elements from different fields");
        self.field
            .element(std::array::from_fn(|i| &self.coords[i] + &rhs.coords[i]))
    }
}

impl Sub for &QuarticElement {
    type Output = QuarticElement;

    fn sub(self, rhs: &QuarticElement) -> QuarticElement {
        assert!(self.field == rhs.field, "quartic elements from different fields");
        self.field
            .element(std::array::from_fn(|i| &self.coords[i] - &rhs.coords[i]))
    }
}

impl Mul for &QuarticElement {
    type Output = QuarticElement;

    fn mul(self, rhs: &QuarticElement) -> QuarticElement {
        assert!(self.field == rhs.field, "quartic elements from different fields");
        self.field
            .element(mul_coords(&self.coords, &rhs.coords, &self.field.0.high_powers))
    }
}

impl Neg for &QuarticElement {
    type Output = QuarticElement;

    fn neg(self) -> QuarticElement {
        self.scale(&-Rational::one())
    }
}

impl FieldElement for QuarticElement {
    fn constant_like(&self, c: &Rational) -> Self {
        self.field.from_rational(c.clone())
    }

    fn add_elem(&self, other: &Self) -> Self {
        self + other
    }

    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }

    fn is_primitive(&self) -> bool {
        QuarticElement::is_primitive(self)
    }
}
