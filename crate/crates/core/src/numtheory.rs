//! Integer and rational foundations.
//!
//! Rationals are `num_rational::BigRational`, which is always kept in lowest
//! terms with a positive denominator, so zero is `0/1`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `n = squarefree_part * square_root_part^2`, with the sign carried by the
/// square-free part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub squarefree_part: BigInt,
    pub square_root_part: BigInt,
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Prime factorisation of `|n|` by trial division, as `(prime, exponent)`
/// pairs in increasing order. `|n| <= 1` gives an empty list.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let n = n.abs();
    if let Some(small) = n.to_u128() {
        return factorize_u128(small)
            .into_iter()
            .map(|(p, e)| (BigInt::from(p), e))
            .collect();
    }
    let mut rest = n;
    let mut out = Vec::new();
    let mut d = BigInt::from(2u32);
    while &d * &d <= rest {
        let mut e = 0;
        while (&rest % &d).is_zero() {
            rest /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += if d == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if rest > BigInt::one() {
        out.push((rest, 1));
    }
    out
}

fn factorize_u128(mut n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut d: u128 = 2;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn squarefree_decompose(n: &BigInt) -> Result<SquarefreeDecomposition> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut squarefree_part = if n.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let mut square_root_part = BigInt::one();
    for (p, e) in factorize(n) {
        square_root_part *= num_traits::pow(p.clone(), (e / 2) as usize);
        if e % 2 == 1 {
            squarefree_part *= p;
        }
    }
    Ok(SquarefreeDecomposition {
        squarefree_part,
        square_root_part,
    })
}

/// Square-free part of a nonzero `i64`.
pub(crate) fn squarefree_part_i128(n: i128) -> i128 {
    let d = squarefree_decompose(&BigInt::from(n)).expect("nonzero");
    d.squarefree_part.to_i128().expect("square-free part fits")
}

/// Square-free part of `a·b` for square-free `a`, `b`.
pub fn squarefree_product(a: &BigInt, b: &BigInt) -> BigInt {
    let g = a.gcd(b);
    (a / &g) * (b / &g)
}

pub fn is_squarefree(n: &BigInt) -> bool {
    match squarefree_decompose(n) {
        Ok(d) => d.square_root_part.is_one(),
        Err(_) => false,
    }
}

pub fn is_squarefree_i64(n: i64) -> bool {
    is_squarefree(&BigInt::from(n))
}

/// Exact square root of a nonnegative integer, if it is a perfect square.
pub fn integer_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn is_square_integer(n: &BigInt) -> bool {
    integer_sqrt_exact(n).is_some()
}

/// Nonnegative rational square root of `q`, if `q` is a rational square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    // canonical form: q is a square iff numerator and denominator both are
    let n = integer_sqrt_exact(q.numer())?;
    let d = integer_sqrt_exact(q.denom())?;
    Some(Rational::new(n, d))
}

pub fn is_square(q: &Rational) -> bool {
    rational_sqrt(q).is_some()
}

/// Floor of the square root of a nonnegative `u64`.
pub fn isqrt_u64(n: u64) -> u64 {
    n.sqrt()
}

const SQUARES_MOD_64: u64 = {
    let mut mask = 0u64;
    let mut i = 0;
    while i < 64 {
        mask |= 1 << ((i * i) % 64);
        i += 1;
    }
    mask
};

pub fn is_perfect_square_i128(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    if (SQUARES_MOD_64 >> (n & 63)) & 1 == 0 {
        return None;
    }
    let r = (n as u128).sqrt() as i128;
    (r * r == n).then_some(r)
}

pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

/// Parse `p`, `-p`, `p/q` (decimal integers, optional leading sign; the
/// unicode minus `−` is accepted).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let cleaned: String = text
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == '−' { '-' } else { c })
        .collect();
    let bad = || Error::parse(0, format!("invalid rational literal `{text}`"));
    if cleaned.is_empty() {
        return Err(bad());
    }
    let (num, den) = match cleaned.split_once('/') {
        Some((n, d)) => (n, d),
        None => (cleaned.as_str(), "1"),
    };
    let num = BigInt::from_str(num.strip_prefix('+').unwrap_or(num)).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::parse(0, format!("zero denominator in `{text}`")));
    }
    Ok(Rational::new(num, den))
}

pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub(crate) fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Best rational approximation (continued fractions) of `x` with denominator
/// at most `max_den`, accepted only within `tol` of `x`.
pub(crate) fn rational_approximation(x: f64, max_den: u64, tol: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let mut y = x;
    for _ in 0..64 {
        let a = y.floor();
        let a_big = BigInt::from(a as i128);
        let p2 = &a_big * &p1 + &p0;
        let q2 = &a_big * &q1 + &q0;
        if q2 > BigInt::from(max_den) {
            break;
        }
        let candidate = Rational::new(p2.clone(), q2.clone());
        if (rational_to_f64(&candidate) - x).abs() <= tol {
            return Some(candidate);
        }
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let frac = y - a;
        if frac.abs() < 1e-300 {
            break;
        }
        y = 1.0 / frac;
    }
    None
}
