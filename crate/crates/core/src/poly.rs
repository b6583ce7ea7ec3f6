//! Dense univariate polynomials over Q, used both as witness polynomials and
//! as defining polynomials of quartic fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numtheory::{rational_approximation, rational_to_f64, Rational};

/// An element of a finite-dimensional Q-algebra that a polynomial can be
/// evaluated at.
pub trait FieldElement: Clone + PartialEq + fmt::Debug {
    /// The rational `c` embedded in the same field as `self`.
    fn constant_like(&self, c: &Rational) -> Self;
    fn add_elem(&self, other: &Self) -> Self;
    fn mul_elem(&self, other: &Self) -> Self;
    fn is_primitive(&self) -> bool;
}

/// Coefficients are stored constant term first, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial given degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `c1 * self + c0`.
    pub fn affine(&self, c1: &Rational, c0: &Rational) -> Self {
        let mut p = self.scale(c1);
        if p.coeffs.is_empty() {
            p.coeffs.push(Rational::zero());
        }
        p.coeffs[0] += c0;
        Self::new(p.coeffs)
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation at a field element.
    pub fn eval<E: FieldElement>(&self, x: &E) -> E {
        let mut iter = self.coeffs.iter().rev();
        let Some(lead) = iter.next() else {
            return x.constant_like(&Rational::zero());
        };
        let mut acc = x.constant_like(lead);
        for c in iter {
            acc = acc.mul_elem(x).add_elem(&x.constant_like(c));
        }
        acc
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        if self.coeffs.len() < divisor.coeffs.len() {
            return (Polynomial::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); self.coeffs.len() - dd];
        let lead = divisor.leading();
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] / &lead;
            if q.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * d;
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    /// True if every coefficient is an integer and the leading one is 1.
    pub fn is_monic_integral(&self) -> bool {
        self.leading().is_one() && self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Scale to a primitive integer polynomial with positive leading term.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if !g.is_zero() {
            for c in ints.iter_mut() {
                *c /= &g;
            }
        }
        if ints.last().is_some_and(|c| c.is_negative()) {
            for c in ints.iter_mut() {
                *c = -c.clone();
            }
        }
        ints
    }

    /// Complex roots by Durand-Kerner iteration; approximate.
    pub fn complex_roots(&self) -> Vec<Complex64> {
        let coeffs: Vec<f64> = self.coeffs.iter().map(rational_to_f64).collect();
        durand_kerner(&coeffs)
    }

    /// All distinct rational roots, in increasing order. Candidates come from
    /// a numeric root approximation; every reported root is checked exactly.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.degree() == 0 {
            return Vec::new();
        }
        let mut roots = Vec::new();
        let mut p = self.clone();
        // strip roots at zero exactly
        if p.coeff(0).is_zero() {
            roots.push(Rational::zero());
            let shift = p.coeffs.iter().take_while(|c| c.is_zero()).count();
            p = Polynomial::new(p.coeffs[shift..].to_vec());
        }
        if p.degree() > 0 {
            let ints = p.primitive_integer_coeffs();
            let lead = ints.last().cloned().unwrap_or_else(BigInt::one);
            let max_den = num_traits::ToPrimitive::to_u64(&lead.abs()).unwrap_or(u64::MAX);
            for z in p.complex_roots() {
                let tol = 1e-6 * z.re.abs().max(1.0);
                if z.im.abs() > 1e-3 * z.norm().max(1.0) {
                    continue;
                }
                let mut candidates = Vec::new();
                if let Some(q) = rational_approximation(z.re, max_den, tol) {
                    candidates.push(q);
                }
                let nearest = Rational::from_integer(BigInt::from(z.re.round() as i128));
                candidates.push(nearest);
                for q in candidates {
                    if p.eval_rational(&q).is_zero() && !roots.contains(&q) {
                        roots.push(q);
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    pub fn parse(text: &str) -> Result<Self> {
        PolyParser::new(text).parse()
    }
}

fn durand_kerner(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| Complex64::new(c / lead, 0.0)).collect();
    // Cauchy bound on root magnitude
    let bound = 1.0
        + monic[..n]
            .iter()
            .map(|c| c.norm())
            .fold(0.0_f64, f64::max);
    let eval = |z: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * (bound / 2.0)).collect();
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let zi = roots[i];
            let denom = (0..n)
                .filter(|&j| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, j| acc * (zi - roots[j]));
            if denom.norm() == 0.0 {
                roots[i] += Complex64::new(1e-9 * bound, 1e-9 * bound);
                delta = f64::INFINITY;
                continue;
            }
            let step = eval(zi) / denom;
            roots[i] = zi - step;
            delta = delta.max(step.norm() / zi.norm().max(1.0));
        }
        if delta < 1e-15 {
            break;
        }
    }
    // Newton polish
    let deriv: Vec<Complex64> = monic
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect();
    let eval_d = |z: Complex64| deriv.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c);
    for r in roots.iter_mut() {
        for _ in 0..3 {
            let d = eval_d(*r);
            if d.norm() == 0.0 {
                break;
            }
            *r -= eval(*r) / d;
        }
    }
    roots
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else if mag.is_integer() {
                write!(f, "{mag}{var}")?;
            } else {
                write!(f, "({mag}){var}")?;
            }
        }
        Ok(())
    }
}

/// Shared tokenizer pieces for the polynomial and radical-element grammars.
pub(crate) struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    pub(crate) text: &'a str,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Cursor {
            chars: text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
            pos: 0,
            text,
        }
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    /// Character (not byte) offset of the next token.
    pub(crate) fn offset(&self) -> usize {
        let byte = self.chars.get(self.pos).map_or(self.text.len(), |&(i, _)| i);
        self.text[..byte].chars().count()
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn eat_str(&mut self, s: &str) -> bool {
        let save = self.pos;
        for c in s.chars() {
            if !self.eat(c) {
                self.pos = save;
                return false;
            }
        }
        true
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    pub(crate) fn error(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.offset(), msg)
    }

    /// `+`, `-` or unicode minus; returns the sign, or `None` if absent.
    pub(crate) fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Some(false)
            }
            Some('-') | Some('−') => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    pub(crate) fn integer(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        digits.parse().ok()
    }

    /// A rational coefficient: `p`, `p/q`, or a parenthesised signed `(p/q)`.
    pub(crate) fn rational(&mut self) -> Result<Option<Rational>> {
        if self.eat('(') {
            let neg = self.sign().unwrap_or(false);
            let q = self
                .unsigned_rational()?
                .ok_or_else(|| self.error("expected a rational inside parentheses"))?;
            if !self.eat(')') {
                return Err(self.error("expected `)`"));
            }
            return Ok(Some(if neg { -q } else { q }));
        }
        self.unsigned_rational()
    }

    fn unsigned_rational(&mut self) -> Result<Option<Rational>> {
        let Some(n) = self.integer() else {
            return Ok(None);
        };
        if self.peek() == Some('/') {
            self.pos += 1;
            let d = self
                .integer()
                .ok_or_else(|| self.error("expected a denominator"))?;
            if d.is_zero() {
                return Err(self.error("zero denominator"));
            }
            return Ok(Some(Rational::new(n, d)));
        }
        Ok(Some(Rational::from_integer(n)))
    }
}

struct PolyParser<'a> {
    cur: Cursor<'a>,
}

impl<'a> PolyParser<'a> {
    fn new(text: &'a str) -> Self {
        PolyParser {
            cur: Cursor::new(text),
        }
    }

    fn parse(mut self) -> Result<Polynomial> {
        if self.cur.at_end() {
            return Err(self.cur.error("empty polynomial"));
        }
        let mut acc = Polynomial::zero();
        let mut first = true;
        while !self.cur.at_end() {
            let neg = match self.cur.sign() {
                Some(n) => n,
                None if first => false,
                None => return Err(self.cur.error("expected `+` or `-`")),
            };
            first = false;
            let coef = self.cur.rational()?;
            self.cur.eat('*');
            let power = if self.cur.eat('x') {
                if self.cur.eat('^') {
                    let k = self
                        .cur
                        .integer()
                        .ok_or_else(|| self.cur.error("expected an exponent"))?;
                    usize::try_from(k).map_err(|_| self.cur.error("exponent too large"))?
                } else {
                    1
                }
            } else if coef.is_some() {
                0
            } else {
                return Err(self.cur.error("expected a coefficient or `x`"));
            };
            let c = coef.unwrap_or_else(Rational::one);
            let c = if neg { -c } else { c };
            acc = &acc + &Polynomial::monomial(c, power);
        }
        Ok(acc)
    }
}
