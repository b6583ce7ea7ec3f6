//! Text and JSON forms of triquadratic elements.
//!
//! Grammar (whitespace-insensitive): a signed sum of terms, each a rational
//! coefficient (bare, `p/q`, or parenthesised), optionally followed by `*`
//! and a radical `√d`, `√(d)` or `sqrt(d)`. Radicals are read against the
//! declared field and need not be square-free.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{TriquadElement, TriquadField};
use crate::error::{Error, Result};
use crate::numtheory::{parse_rational, Rational};
use crate::poly::Cursor;

impl TriquadField {
    /// Parse a generator triple such as `2,3,5` or `(2, 3, 5)`.
    pub fn parse(text: &str) -> Result<Self> {
        let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::parse(0, format!("expected three generators, got `{text}`")));
        }
        let mut gens = [0i64; 3];
        for (g, p) in gens.iter_mut().zip(&parts) {
            *g = p
                .parse()
                .map_err(|_| Error::parse(0, format!("invalid generator `{p}`")))?;
        }
        TriquadField::new(gens[0], gens[1], gens[2])
    }
}

impl fmt::Display for TriquadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.gens;
        write!(f, "Q(√{a}, √{b}, √{c})")
    }
}

fn write_radical(f: &mut fmt::Formatter<'_>, s: i128) -> fmt::Result {
    if s < 0 {
        write!(f, "√({s})")
    } else {
        write!(f, "√{s}")
    }
}

/// Renders with reduced radicals in basis order, e.g. the `√BC` coordinate
/// `11/7` of field `(11, 35, 5)` prints as `(55/7)√7`.
impl fmt::Display for TriquadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for slot in 0..8 {
            let c = &self.coords[slot];
            if c.is_zero() {
                continue;
            }
            let (s, g) = if slot == 0 {
                (1, 1)
            } else {
                self.field.reduced_radical(slot)
            };
            let c = c * Rational::from_integer(BigInt::from(g));
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            if slot == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if mag.is_integer() {
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                }
            } else {
                write!(f, "({mag})")?;
            }
            write_radical(f, s)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl TriquadElement {
    pub fn parse(field: TriquadField, text: &str) -> Result<Self> {
        let mut cur = Cursor::new(text);
        if cur.at_end() {
            return Err(cur.error("empty element"));
        }
        let mut acc = TriquadElement::zero(field);
        let mut first = true;
        while !cur.at_end() {
            let neg = match cur.sign() {
                Some(n) => n,
                None if first => false,
                None => return Err(cur.error("expected `+` or `-`")),
            };
            first = false;
            let coef = cur.rational()?;
            let had_star = cur.eat('*');
            let pos = cur.offset();
            let radical = if cur.eat('√') || cur.eat_str("sqrt") {
                let paren = cur.eat('(');
                let radical_neg = paren && cur.sign() == Some(true);
                let d = cur
                    .integer()
                    .ok_or_else(|| cur.error("expected a radicand"))?;
                if paren && !cur.eat(')') {
                    return Err(cur.error("expected `)`"));
                }
                let d = if radical_neg { -d } else { d };
                let d = d
                    .to_i128()
                    .ok_or_else(|| Error::parse(pos, "radicand too large"))?;
                Some(
                    field
                        .sqrt_of(d)
                        .map_err(|_| Error::parse(pos, format!("√{d} is not in {field}")))?,
                )
            } else if had_star || coef.is_none() {
                return Err(cur.error("expected a radical"));
            } else {
                None
            };
            let c = coef.unwrap_or_else(Rational::one);
            let c = if neg { -c } else { c };
            let term = match radical {
                Some(r) => r.scale(&c),
                None => TriquadElement::from_rational(field, c),
            };
            acc = &acc + &term;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> ElementJson {
        ElementJson {
            field: self.field.gens,
            coords: self.coords.iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn from_json(json: &ElementJson) -> Result<Self> {
        let [a, b, c] = json.field;
        let field = TriquadField::new(a, b, c)?;
        Self::from_coord_strings(field, &json.coords)
    }

    pub fn from_coord_strings(field: TriquadField, coords: &[String]) -> Result<Self> {
        if coords.len() != 8 {
            return Err(Error::parse(0, format!("expected 8 coordinates, got {}", coords.len())));
        }
        let mut parsed: [Rational; 8] = std::array::from_fn(|_| Rational::zero());
        for (slot, text) in parsed.iter_mut().zip(coords) {
            *slot = parse_rational(text)?;
        }
        Ok(TriquadElement::new(field, parsed))
    }
}

/// `{"field": [A, B, C], "coords": ["b0", ..., "b7"]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub field: [i64; 3],
    pub coords: Vec<String>,
}
