//! Ground fields: arbitrary-precision rationals and prime fields `GF(p)`.
//!
//! All linear algebra in this crate is generic over [`Field`]. A field value
//! is a small descriptor (`Rationals` is zero-sized, `PrimeField` carries `p`)
//! that performs the arithmetic on its element type.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Runtime descriptor of a ground field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rational,
    Prime(u64),
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "QQ"),
            FieldKind::Prime(p) => write!(f, "GF:{p}"),
        }
    }
}

impl FromStr for FieldKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "QQ" {
            return Ok(FieldKind::Rational);
        }
        let p = s
            .strip_prefix("GF:")
            .and_then(|rest| rest.parse::<u64>().ok())
            .ok_or_else(|| Error::InvalidField(s.to_string()))?;
        PrimeField::new(p)?;
        Ok(FieldKind::Prime(p))
    }
}

/// A field element detached from its arithmetic, tagged by its field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, p: u64 },
}

impl Scalar {
    pub fn kind(&self) -> FieldKind {
        match self {
            Scalar::Rational(_) => FieldKind::Rational,
            Scalar::Prime { p, .. } => FieldKind::Prime(*p),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{}", format_rational(q)),
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Exact field arithmetic.
///
/// `Acc` is an accumulator type used by elimination kernels; prime fields
/// use it to postpone modular reduction.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;
    type Acc: Clone + fmt::Debug + Send + Sync;

    fn kind(&self) -> FieldKind;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;

    fn acc_zero(&self) -> Self::Acc;
    /// `acc += a * b`
    fn acc_add_mul(&self, acc: &mut Self::Acc, a: &Self::Elem, b: &Self::Elem);
    fn acc_add(&self, acc: &mut Self::Acc, a: &Self::Elem);
    fn acc_value(&self, acc: &Self::Acc) -> Self::Elem;

    fn to_scalar(&self, a: &Self::Elem) -> Scalar;
    fn from_scalar(&self, s: &Scalar) -> Result<Self::Elem>;
    /// Parses an exact literal: an integer or `p/q`.
    fn parse_elem(&self, text: &str) -> Option<Self::Elem>;
    fn format_elem(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }
}

/// The rational numbers with arbitrary precision.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;
    type Acc = BigRational;

    fn kind(&self) -> FieldKind {
        FieldKind::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn acc_zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn acc_add_mul(&self, acc: &mut BigRational, a: &BigRational, b: &BigRational) {
        *acc += a * b;
    }
    fn acc_add(&self, acc: &mut BigRational, a: &BigRational) {
        *acc += a;
    }
    fn acc_value(&self, acc: &BigRational) -> BigRational {
        acc.clone()
    }
    fn to_scalar(&self, a: &BigRational) -> Scalar {
        Scalar::Rational(a.clone())
    }
    fn from_scalar(&self, s: &Scalar) -> Result<BigRational> {
        match s {
            Scalar::Rational(q) => Ok(q.clone()),
            other => Err(Error::FieldMismatch {
                expected: FieldKind::Rational,
                found: other.kind(),
            }),
        }
    }
    fn parse_elem(&self, text: &str) -> Option<BigRational> {
        parse_rational(text)
    }
    fn format_elem(&self, a: &BigRational) -> String {
        format_rational(a)
    }
}

fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let valid_int = |s: &str| {
        let digits = s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    match text.split_once('/') {
        None => {
            if !valid_int(text) {
                return None;
            }
            Some(BigRational::from_integer(text.parse().ok()?))
        }
        Some((n, d)) => {
            if !valid_int(n) || !valid_int(d) {
                return None;
            }
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
    }
}

/// `GF(p)` for a prime `p < 2^32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

/// Below this modulus products can be accumulated lazily in a `u64`.
const LAZY_MODULUS_LIMIT: u64 = 1 << 21;

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..1 << 32).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidField(format!("GF:{p}")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;
    type Acc = u64;

    fn kind(&self) -> FieldKind {
        FieldKind::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        let mut base = *a;
        let mut exp = self.p - 2;
        let mut result = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                result = result * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        Some(result)
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn acc_zero(&self) -> u64 {
        0
    }
    fn acc_add_mul(&self, acc: &mut u64, a: &u64, b: &u64) {
        if self.p < LAZY_MODULUS_LIMIT {
            *acc += a * b;
            if *acc >= 1 << 62 {
                *acc %= self.p;
            }
        } else {
            *acc = (*acc + a * b % self.p) % self.p;
        }
    }
    fn acc_add(&self, acc: &mut u64, a: &u64) {
        *acc = (*acc + a) % self.p;
    }
    fn acc_value(&self, acc: &u64) -> u64 {
        acc % self.p
    }
    fn to_scalar(&self, a: &u64) -> Scalar {
        Scalar::Prime { value: *a, p: self.p }
    }
    fn from_scalar(&self, s: &Scalar) -> Result<u64> {
        match s {
            Scalar::Prime { value, p } if *p == self.p => Ok(value % self.p),
            other => Err(Error::FieldMismatch {
                expected: self.kind(),
                found: other.kind(),
            }),
        }
    }
    fn parse_elem(&self, text: &str) -> Option<u64> {
        // Rational literals are mapped through the residue map when the
        // denominator is invertible.
        let q = parse_rational(text)?;
        let p = BigInt::from(self.p);
        let n = (q.numer() % &p + &p) % &p;
        let d = (q.denom() % &p + &p) % &p;
        let n = n.abs().to_u64()?;
        let d = d.abs().to_u64()?;
        self.div(&n, &d)
    }
    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_literals_are_exact_and_reduced() {
        let q = Rationals;
        assert_eq!(q.format_elem(&q.parse_elem("4/6").unwrap()), "2/3");
        assert_eq!(q.format_elem(&q.parse_elem("-3").unwrap()), "-3");
        assert_eq!(q.format_elem(&q.parse_elem("3/-6").unwrap()), "-1/2");
        assert!(q.parse_elem("0.5").is_none());
        assert!(q.parse_elem("1e3").is_none());
        assert!(q.parse_elem("1/0").is_none());
        assert!(q.parse_elem("").is_none());
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(32003).unwrap();
        for a in [1u64, 2, 17, 32002] {
            let ia = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ia), 1);
        }
        assert_eq!(f.parse_elem("1/2").unwrap(), f.inv(&2).unwrap());
        assert_eq!(f.parse_elem("-1").unwrap(), 32002);
    }

    #[test]
    fn composite_modulus_rejected() {
        assert!(PrimeField::new(32004).is_err());
        assert!("GF:9".parse::<FieldKind>().is_err());
        assert_eq!("GF:7".parse::<FieldKind>().unwrap(), FieldKind::Prime(7));
        assert_eq!("QQ".parse::<FieldKind>().unwrap(), FieldKind::Rational);
    }

    #[test]
    fn lazy_accumulator_matches_eager() {
        let f = PrimeField::new(32003).unwrap();
        let mut acc = f.acc_zero();
        let mut eager = 0u64;
        for i in 0..1000u64 {
            let a = (i * 7919) % 32003;
            let b = (i * 104729) % 32003;
            f.acc_add_mul(&mut acc, &a, &b);
            eager = f.add(&eager, &f.mul(&a, &b));
        }
        assert_eq!(f.acc_value(&acc), eager);
    }
}
