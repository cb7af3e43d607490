//! Exact scalar arithmetic over the rationals and over prime fields.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest admissible prime modulus (exclusive). Keeps products inside `u64`.
const MAX_MODULUS: u64 = 1 << 31;

/// Which exact field the scalars live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    Rationals,
    Prime(u64),
}

/// A field element. Rationals are kept in lowest terms with positive
/// denominator; residues are kept in `0..modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

impl FieldKind {
    /// Parses `"Q"` or `"Fp:<p>"`.
    pub fn parse(descriptor: &str) -> Result<Self> {
        let d = descriptor.trim();
        if d == "Q" || d == "q" {
            return Ok(FieldKind::Rationals);
        }
        let rest = d
            .strip_prefix("Fp:")
            .or_else(|| d.strip_prefix("F:"))
            .ok_or_else(|| Error::UnknownField(descriptor.to_string()))?;
        let p: u64 = rest
            .trim()
            .parse()
            .map_err(|_| Error::UnknownField(descriptor.to_string()))?;
        if p >= MAX_MODULUS {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        Ok(FieldKind::Prime(p))
    }

    /// Field characteristic (0 for the rationals).
    pub fn characteristic(self) -> u64 {
        match self {
            FieldKind::Rationals => 0,
            FieldKind::Prime(p) => p,
        }
    }

    pub fn cardinality(self) -> Option<u64> {
        match self {
            FieldKind::Rationals => None,
            FieldKind::Prime(p) => Some(p),
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, FieldKind::Prime(_))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            FieldKind::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldKind::Prime(p) => Scalar::Modular {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// `num / den`, or `None` when `den` vanishes in this field.
    pub fn ratio(self, num: i64, den: i64) -> Option<Scalar> {
        self.from_i64(num).checked_div(&self.from_i64(den))
    }

    fn from_bigint(self, n: &BigInt) -> Scalar {
        match self {
            FieldKind::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            FieldKind::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Modular {
                    value: r.to_u64().expect("residue fits in u64"),
                    modulus: p,
                }
            }
        }
    }

    /// Parses a decimal integer or an `a/b` fraction.
    pub fn parse_element(self, literal: &str) -> Result<Scalar> {
        let err = || Error::ParseLiteral {
            literal: literal.to_string(),
            field: self.to_string(),
        };
        let text = literal.trim();
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let num = BigInt::from_str(num).map_err(|_| err())?;
        let den = BigInt::from_str(den).map_err(|_| err())?;
        self.from_bigint(&num)
            .checked_div(&self.from_bigint(&den))
            .ok_or_else(err)
    }

    /// All elements in the order `0, 1, …, p−1`; `None` over the rationals.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        match self {
            FieldKind::Rationals => None,
            FieldKind::Prime(p) => Some(
                (0..p)
                    .map(|value| Scalar::Modular { value, modulus: p })
                    .collect(),
            ),
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl Scalar {
    pub fn kind(&self) -> FieldKind {
        match self {
            Scalar::Rational(_) => FieldKind::Rationals,
            Scalar::Modular { modulus, .. } => FieldKind::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Option<Scalar> {
        rhs.inv().map(|r| self * &r)
    }

    /// Integer power; negative exponents need a non-zero base.
    pub fn pow(&self, exp: i64) -> Option<Scalar> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let e = exp.unsigned_abs();
        Some(match base {
            Scalar::Rational(r) => Scalar::Rational(num_traits::pow::pow(r, e as usize)),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: pow_mod(value, e, modulus),
                modulus,
            },
        })
    }

    /// The element as a reduced fraction over the rationals.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Modular { .. } => None,
        }
    }

    /// The residue in `0..p` over a prime field.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Modular { value, .. } => Some(*value),
        }
    }

    fn check_same(&self, other: &Scalar) {
        assert_eq!(
            self.kind(),
            other.kind(),
            "arithmetic between elements of different fields"
        );
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => {
                Scalar::Modular {
                    value: (a + b) % modulus,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => {
                Scalar::Modular {
                    value: (a + modulus - b) % modulus,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => {
                Scalar::Modular {
                    value: a * b % modulus,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

/// Panics on division by zero, like integer division.
impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Multiplicative order of the distinguished parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OrderResult {
    Finite(u64),
    Infinite,
}

impl fmt::Display for OrderResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderResult::Finite(n) => write!(f, "{n}"),
            OrderResult::Infinite => write!(f, "infinite"),
        }
    }
}

/// An exact field together with its distinguished non-zero parameter `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    kind: FieldKind,
    q: Scalar,
}

impl Field {
    pub fn new(kind: FieldKind, q: Scalar) -> Result<Self> {
        if q.kind() != kind {
            return Err(Error::ParseLiteral {
                literal: q.to_string(),
                field: kind.to_string(),
            });
        }
        if q.is_zero() {
            return Err(Error::ZeroParameter);
        }
        Ok(Field { kind, q })
    }

    /// Builds a field from a descriptor (`"Q"` or `"Fp:<p>"`) and a literal for `q`.
    pub fn parse(descriptor: &str, q: &str) -> Result<Self> {
        let kind = FieldKind::parse(descriptor)?;
        let q = kind.parse_element(q)?;
        Field::new(kind, q)
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn q_inv(&self) -> Scalar {
        self.q.inv().expect("q is non-zero")
    }

    pub fn q_pow(&self, exp: i64) -> Scalar {
        self.q.pow(exp).expect("q is non-zero")
    }

    pub fn zero(&self) -> Scalar {
        self.kind.zero()
    }

    pub fn one(&self) -> Scalar {
        self.kind.one()
    }

    pub fn int(&self, n: i64) -> Scalar {
        self.kind.from_i64(n)
    }

    pub fn parse_element(&self, literal: &str) -> Result<Scalar> {
        self.kind.parse_element(literal)
    }

    /// Multiplicative order of `q`.
    pub fn mul_order(&self) -> OrderResult {
        match &self.q {
            Scalar::Rational(r) => {
                if r.is_one() {
                    OrderResult::Finite(1)
                } else if (-r).is_one() {
                    OrderResult::Finite(2)
                } else {
                    OrderResult::Infinite
                }
            }
            Scalar::Modular { value, modulus } => {
                let mut acc = *value;
                let mut n = 1;
                while acc != 1 {
                    acc = acc * value % modulus;
                    n += 1;
                }
                OrderResult::Finite(n)
            }
        }
    }

    /// Decides whether `x = q^i` for some integer `i`, returning the least
    /// non-negative such `i` when the order is finite, or the unique one otherwise.
    pub fn log_q(&self, x: &Scalar) -> Option<i64> {
        if x.is_zero() {
            return None;
        }
        match self.mul_order() {
            OrderResult::Finite(n) => {
                let mut acc = self.one();
                for i in 0..n {
                    if &acc == x {
                        return Some(i as i64);
                    }
                    acc = &acc * &self.q;
                }
                None
            }
            OrderResult::Infinite => {
                let q = self.q.as_rational().expect("infinite order only over Q");
                let x = x.as_rational().expect("same field");
                rational_log(q, x)
            }
        }
    }
}

/// Exponent `i` with `q^i = x` for a rational `q` with `|q| ≠ 1`, if any.
fn rational_log(q: &BigRational, x: &BigRational) -> Option<i64> {
    // Work with |q| > 1 by inverting when needed, then compare magnitudes.
    let (base, flip) = if q.abs() > BigRational::one() {
        (q.clone(), false)
    } else {
        (q.recip(), true)
    };
    let target_abs = x.abs();
    let (mag, sign) = if target_abs >= BigRational::one() {
        (target_abs.clone(), 1i64)
    } else {
        (target_abs.recip(), -1i64)
    };
    let base_abs = base.abs();
    let mut acc = BigRational::one();
    let mut i = 0i64;
    while acc < mag {
        acc *= &base_abs;
        i += 1;
    }
    if acc != mag {
        return None;
    }
    let exp = sign * i * if flip { -1 } else { 1 };
    let check = if exp >= 0 {
        num_traits::pow::pow(q.clone(), exp as usize)
    } else {
        num_traits::pow::pow(q.recip(), (-exp) as usize)
    };
    (&check == x).then_some(exp)
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (q = {})", self.kind, self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q_field(q: &str) -> Field {
        Field::parse("Q", q).unwrap()
    }

    #[test]
    fn parses_descriptors() {
        let f = Field::parse("Q", "2").unwrap();
        assert_eq!(f.kind(), FieldKind::Rationals);
        assert_eq!(f.q(), &f.int(2));
        let f = Field::parse("Fp:5", "2").unwrap();
        assert_eq!(f.kind(), FieldKind::Prime(5));
        assert_eq!(f.q().residue(), Some(2));
        assert_eq!(Field::parse("Fp:4", "1"), Err(Error::NonPrimeModulus(4)));
        assert_eq!(Field::parse("Q", "0"), Err(Error::ZeroParameter));
        assert_eq!(Field::parse("Fp:5", "10"), Err(Error::ZeroParameter));
        assert!(matches!(Field::parse("R", "1"), Err(Error::UnknownField(_))));
        assert!(matches!(Field::parse("Q", "x"), Err(Error::ParseLiteral { .. })));
        assert!(matches!(Field::parse("Q", "1/0"), Err(Error::ParseLiteral { .. })));
    }

    #[test]
    fn fractions_reduce() {
        let f = q_field("1/3");
        assert_eq!(f.parse_element("4/-6").unwrap().to_string(), "-2/3");
        let f = Field::parse("Fp:5", "2").unwrap();
        // 1/2 = 3 mod 5
        assert_eq!(f.parse_element("1/2").unwrap().residue(), Some(3));
        assert_eq!(f.parse_element("-1").unwrap().residue(), Some(4));
    }

    #[test]
    fn orders() {
        assert_eq!(q_field("2").mul_order(), OrderResult::Infinite);
        assert_eq!(q_field("1/3").mul_order(), OrderResult::Infinite);
        assert_eq!(q_field("1").mul_order(), OrderResult::Finite(1));
        assert_eq!(q_field("-1").mul_order(), OrderResult::Finite(2));
        assert_eq!(Field::parse("Fp:5", "2").unwrap().mul_order(), OrderResult::Finite(4));
        assert_eq!(Field::parse("Fp:3", "2").unwrap().mul_order(), OrderResult::Finite(2));
        assert_eq!(Field::parse("Fp:2", "1").unwrap().mul_order(), OrderResult::Finite(1));
    }

    #[test]
    fn logarithms() {
        let f = q_field("2");
        assert_eq!(f.log_q(&f.parse_element("8").unwrap()), Some(3));
        assert_eq!(f.log_q(&f.parse_element("1/4").unwrap()), Some(-2));
        assert_eq!(f.log_q(&f.one()), Some(0));
        assert_eq!(f.log_q(&f.parse_element("-2").unwrap()), None);
        assert_eq!(f.log_q(&f.parse_element("6").unwrap()), None);
        assert_eq!(f.log_q(&f.zero()), None);
        let f = q_field("-1/3");
        assert_eq!(f.log_q(&f.parse_element("-27").unwrap()), Some(-3));
        assert_eq!(f.log_q(&f.parse_element("27").unwrap()), None);
        assert_eq!(f.log_q(&f.parse_element("1/9").unwrap()), Some(2));
        let f = Field::parse("Fp:5", "2").unwrap();
        assert_eq!(f.log_q(&f.int(3)), Some(3));
    }

    fn scalar(kind: FieldKind) -> BoxedStrategy<Scalar> {
        match kind {
            FieldKind::Rationals => (-50i64..50, 1i64..20)
                .prop_map(|(n, d)| FieldKind::Rationals.ratio(n, d).unwrap())
                .boxed(),
            FieldKind::Prime(p) => (0..p as i64).prop_map(move |n| kind.from_i64(n)).boxed(),
        }
    }

    fn axioms(a: Scalar, b: Scalar, c: Scalar) {
        assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        assert_eq!(&a + &b, &b + &a);
        assert_eq!(&a * &b, &b * &a);
        assert_eq!(&(&a - &b) + &b, a);
        assert_eq!(&(-&a) + &a, a.kind().zero());
        if let Some(inv) = a.inv() {
            assert!((&a * &inv).is_one());
        } else {
            assert!(a.is_zero());
        }
    }

    proptest! {
        #[test]
        fn rational_axioms(a in scalar(FieldKind::Rationals), b in scalar(FieldKind::Rationals), c in scalar(FieldKind::Rationals)) {
            axioms(a, b, c);
        }

        #[test]
        fn prime_axioms(a in scalar(FieldKind::Prime(7)), b in scalar(FieldKind::Prime(7)), c in scalar(FieldKind::Prime(7))) {
            axioms(a, b, c);
        }

        #[test]
        fn display_round_trips(a in scalar(FieldKind::Rationals)) {
            prop_assert_eq!(FieldKind::Rationals.parse_element(&a.to_string()).unwrap(), a);
        }
    }
}
