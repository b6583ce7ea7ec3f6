//! Exact arithmetic in triquadratic fields `L = Q(√A, √B, √C)`.
//!
//! Elements are stored on the ordered basis
//! `(1, √A, √B, √C, √AB, √AC, √BC, √ABC)`, where `√AB` means the product
//! `√A·√B` (so radicands are the raw generator products, possibly not
//! square-free). Reducing radicals is purely a presentation concern.

mod index4;
mod text;

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::numtheory::{squarefree_decompose, squarefree_part_i128, Rational};
use crate::poly::{FieldElement, Polynomial};

pub use crate::certificate::WitnessCertificate;
pub use index4::{index4_witness, index4_witness_general, quadratic_radicands};
pub use text::ElementJson;

/// Generator-subset bitmask (bit 0 = A, bit 1 = B, bit 2 = C) of each basis
/// slot, in basis order. The map is an involution, so it also sends a mask
/// to its slot.
const MASKS: [usize; 8] = [0, 1, 2, 4, 3, 5, 6, 7];

fn slot_of_mask(mask: usize) -> usize {
    MASKS[mask]
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    num_integer::Integer::gcd(&a, &b)
}

const MAX_GENERATOR: i64 = 1 << 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TriquadField {
    gens: [i64; 3],
}

impl TriquadField {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        let gens = [a, b, c];
        for &g in &gens {
            if g == 0 {
                return Err(Error::InvalidField("generators must be nonzero".into()));
            }
            if g.abs() >= MAX_GENERATOR {
                return Err(Error::InvalidField(format!("generator {g} is too large")));
            }
            if !crate::numtheory::is_squarefree_i64(g) {
                return Err(Error::NotSquarefree(g));
            }
        }
        if a == b || a == c || b == c {
            return Err(Error::InvalidField(format!(
                "duplicate generator in ({a}, {b}, {c})"
            )));
        }
        let field = TriquadField { gens };
        for slot in 1..8 {
            if field.reduced_radical(slot).0 == 1 {
                return Err(Error::InvalidField(format!(
                    "product {} of a generator subset is a perfect square",
                    field.radicand(slot)
                )));
            }
        }
        Ok(field)
    }

    pub fn generators(&self) -> [i64; 3] {
        self.gens
    }

    /// Product of the generators making up basis slot `slot`.
    pub fn radicand(&self, slot: usize) -> i128 {
        let mask = MASKS[slot];
        (0..3)
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| self.gens[b] as i128)
            .product()
    }

    /// `(s, g)` with `radicand(slot) = s·g²` and `s` square-free.
    pub fn reduced_radical(&self, slot: usize) -> (i128, i128) {
        let mask = MASKS[slot];
        let (mut s, mut g) = (1i128, 1i128);
        for bit in (0..3).filter(|b| mask & (1 << b) != 0) {
            // both factors are square-free, so only their gcd repeats
            let gen = self.gens[bit] as i128;
            let h = gcd_i128(s, gen);
            s = (s / h) * (gen / h);
            g *= h;
        }
        (s, g)
    }

    /// Basis slot whose radical is a rational multiple of `√d`, if any.
    pub fn slot_of_radical(&self, d: i128) -> Option<usize> {
        if d == 0 {
            return None;
        }
        let s = squarefree_part_i128(d);
        (0..8).find(|&i| {
            if i == 0 {
                s == 1
            } else {
                self.reduced_radical(i).0 == s
            }
        })
    }

    /// The element `√d`, read as `f·√s` for `d = s·f²`, with `√s` being the
    /// basis radical divided by its square cofactor.
    pub fn sqrt_of(&self, d: i128) -> Result<TriquadElement> {
        let unknown = || Error::UnknownRadical(d.to_string());
        let slot = self.slot_of_radical(d).ok_or_else(unknown)?;
        let dec = squarefree_decompose(&BigInt::from(d)).map_err(|_| unknown())?;
        let f = Rational::from_integer(dec.square_root_part);
        if slot == 0 {
            if dec.squarefree_part != BigInt::one() {
                return Err(unknown());
            }
            return Ok(TriquadElement::from_rational(*self, f));
        }
        let (_, g) = self.reduced_radical(slot);
        let coeff = f / Rational::from_integer(BigInt::from(g));
        Ok(TriquadElement::basis(*self, slot).scale(&coeff))
    }
}

/// One of the eight automorphisms, given by which of `√A, √B, √C` it negates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GaloisCharacter {
    flips: u8,
}

impl GaloisCharacter {
    pub const IDENTITY: GaloisCharacter = GaloisCharacter { flips: 0 };

    pub fn new(flip_a: bool, flip_b: bool, flip_c: bool) -> Self {
        GaloisCharacter {
            flips: flip_a as u8 | (flip_b as u8) << 1 | (flip_c as u8) << 2,
        }
    }

    pub fn all() -> impl Iterator<Item = GaloisCharacter> {
        (0..8u8).map(|flips| GaloisCharacter { flips })
    }

    /// `(ε_A, ε_B, ε_C)`.
    pub fn signs(&self) -> [i8; 3] {
        std::array::from_fn(|b| if self.flips & (1 << b) != 0 { -1 } else { 1 })
    }

    pub fn compose(&self, other: &GaloisCharacter) -> GaloisCharacter {
        GaloisCharacter {
            flips: self.flips ^ other.flips,
        }
    }

    fn negates_slot(&self, slot: usize) -> bool {
        (self.flips as usize & MASKS[slot]).count_ones() % 2 == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriquadElement {
    field: TriquadField,
    coords: [Rational; 8],
}

impl TriquadElement {
    pub fn new(field: TriquadField, coords: [Rational; 8]) -> Self {
        TriquadElement { field, coords }
    }

    pub fn zero(field: TriquadField) -> Self {
        Self::new(field, std::array::from_fn(|_| Rational::zero()))
    }

    pub fn one(field: TriquadField) -> Self {
        Self::from_rational(field, Rational::one())
    }

    pub fn from_rational(field: TriquadField, c: Rational) -> Self {
        let mut e = Self::zero(field);
        e.coords[0] = c;
        e
    }

    pub fn basis(field: TriquadField, slot: usize) -> Self {
        let mut e = Self::zero(field);
        e.coords[slot] = Rational::one();
        e
    }

    pub fn field(&self) -> TriquadField {
        self.field
    }

    pub fn coords(&self) -> &[Rational; 8] {
        &self.coords
    }

    pub fn coord(&self, slot: usize) -> &Rational {
        &self.coords[slot]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.field, std::array::from_fn(|i| &self.coords[i] * c))
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self::new(
            self.field,
            std::array::from_fn(|i| &self.coords[i] + &other.coords[i]),
        ))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self::new(
            self.field,
            std::array::from_fn(|i| &self.coords[i] - &other.coords[i]),
        ))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let mut out: [Rational; 8] = std::array::from_fn(|_| Rational::zero());
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (mi, mj) = (MASKS[i], MASKS[j]);
                let common = mi & mj;
                // √S·√T = (∏ S∩T)·√(S Δ T)
                let factor: i128 = (0..3)
                    .filter(|bit| common & (1 << bit) != 0)
                    .map(|bit| self.field.gens[bit] as i128)
                    .product();
                out[slot_of_mask(mi ^ mj)] += a * b * Rational::from_integer(BigInt::from(factor));
            }
        }
        Ok(Self::new(self.field, out))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.field), |acc, _| &acc * self)
    }

    pub fn conjugate(&self, chi: GaloisCharacter) -> Self {
        Self::new(
            self.field,
            std::array::from_fn(|i| {
                if chi.negates_slot(i) {
                    -&self.coords[i]
                } else {
                    self.coords[i].clone()
                }
            }),
        )
    }

    pub fn conjugates(&self) -> Vec<TriquadElement> {
        GaloisCharacter::all().map(|chi| self.conjugate(chi)).collect()
    }

    /// Product of all eight conjugates.
    pub fn norm(&self) -> Rational {
        let prod = GaloisCharacter::all()
            .skip(1)
            .fold(self.clone(), |acc, chi| &acc * &self.conjugate(chi));
        debug_assert!(prod.is_rational());
        prod.coords[0].clone()
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let others = GaloisCharacter::all()
            .skip(1)
            .fold(Self::one(self.field), |acc, chi| &acc * &self.conjugate(chi));
        let norm = (self * &others).coords[0].clone();
        Ok(others.scale(&(Rational::one() / norm)))
    }

    /// Number of distinct Galois conjugates: 1, 2, 4 or 8.
    pub fn degree_over_q(&self) -> u32 {
        let mut seen: Vec<TriquadElement> = Vec::with_capacity(8);
        for c in self.conjugates() {
            if !seen.contains(&c) {
                seen.push(c);
            }
        }
        seen.len() as u32
    }

    /// `[L : Q(v)]`.
    pub fn subfield_index(&self) -> u32 {
        8 / self.degree_over_q()
    }

    pub fn is_primitive(&self) -> bool {
        self.degree_over_q() == 8
    }

    /// The polynomial `f` of least degree with `f(alpha) = v`, found by
    /// appending powers of `alpha` until `v` enters their span.
    pub fn express_in_powers(v: &Self, alpha: &Self) -> Result<Polynomial> {
        v.same_field(alpha)?;
        let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(8);
        let mut power = Self::one(alpha.field);
        let target: Vec<Rational> = v.coords.to_vec();
        for m in 0..8 {
            if m > 0 {
                power = &power * alpha;
            }
            columns.push(power.coords.to_vec());
            if let Some(x) = linalg::solve(&columns, &target) {
                return Ok(Polynomial::new(x));
            }
        }
        Err(Error::NotRepresentable)
    }

    /// `deg_alpha(v)`: degree of the representing polynomial.
    pub fn deg_alpha(v: &Self, alpha: &Self) -> Result<usize> {
        Self::express_in_powers(v, alpha).map(|p| p.degree())
    }

    /// Nonzero non-constant coordinates, as slot indices.
    pub fn radical_support(&self) -> Vec<usize> {
        (1..8).filter(|&i| !self.coords[i].is_zero()).collect()
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait for &TriquadElement {
            type Output = TriquadElement;
            /// Panics if the operands live in different fields; use the
            /// `try_` method to get an error instead.
            fn $method(self, rhs: &TriquadElement) -> TriquadElement {
                self.$try(rhs).expect("operands in the same field")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &TriquadElement {
    type Output = TriquadElement;
    fn neg(self) -> TriquadElement {
        self.scale(&-Rational::one())
    }
}

impl FieldElement for TriquadElement {
    fn constant_like(&self, c: &Rational) -> Self {
        Self::from_rational(self.field, c.clone())
    }
    fn add_elem(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
    fn is_primitive(&self) -> bool {
        TriquadElement::is_primitive(self)
    }
}
