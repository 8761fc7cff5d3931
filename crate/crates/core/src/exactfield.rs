//! Exact coefficient arithmetic over the rationals and prime fields.
//!
//! Two layers live here. [`Field`] is the context object the rest of the
//! crate is generic over: every arithmetic operation goes through it, so a
//! prime modulus chosen at runtime costs nothing at the type level.
//! [`FieldScalar`] is the self-describing runtime value used at the edges
//! (parsing, rendering, mixed-field error reporting).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("malformed scalar {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("denominator of {text:?} vanishes modulo {p}")]
    DenominatorVanishes { text: String, p: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unknown field {0:?} (expected \"Q\" or \"F<p>\")")]
    UnknownField(String),
    #[error("field mismatch: {0} vs {1}")]
    Mismatch(FieldSpec, FieldSpec),
    #[error("inverse of zero")]
    ZeroInverse,
}

/// Which field the coefficients live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl FieldSpec {
    /// A prime field, rejecting composite moduli.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime(p) => *p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        match t {
            "Q" | "QQ" | "rational" | "rationals" => return Ok(FieldSpec::Rational),
            _ => {}
        }
        let digits = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix("F_"))
            .or_else(|| t.strip_prefix('F'));
        match digits.map(|d| d.parse::<u64>()) {
            Some(Ok(p)) => FieldSpec::prime(p),
            _ => Err(FieldError::UnknownField(s.to_string())),
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Splits `"±a"` / `"±a/b"` into big-integer numerator and denominator.
fn parse_fraction(text: &str) -> Result<(BigInt, BigInt), FieldError> {
    let t = text.trim();
    let malformed = || FieldError::Malformed(text.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let (negative, digits) = match num.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, num.strip_prefix('+').unwrap_or(num)),
    };
    let is_digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !is_digits(digits) {
        return Err(malformed());
    }
    let mut n: BigInt = digits.parse().map_err(|_| malformed())?;
    if negative {
        n = -n;
    }
    let d: BigInt = match den {
        None => BigInt::one(),
        Some(d) if is_digits(d) => d.parse().map_err(|_| malformed())?,
        Some(_) => return Err(malformed()),
    };
    if d.is_zero() {
        return Err(FieldError::ZeroDenominator(text.to_string()));
    }
    Ok((n, d))
}

/// An exact rational number.
///
/// Values whose numerator and denominator fit in an `i64` are kept inline and
/// combined with 128-bit intermediates; anything larger spills into a
/// [`BigRational`]. The representation is canonical (lowest terms, positive
/// denominator, inline whenever it fits), so structural equality is value
/// equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64, i64),
    Big(BigRational),
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Rational {
        assert!(den != 0, "zero denominator");
        Rational::from_i128(num as i128, den as i128)
    }

    pub fn from_integer(n: i64) -> Rational {
        Rational(Repr::Small(n, 1))
    }

    fn from_i128(num: i128, den: i128) -> Rational {
        let g = num.gcd(&den);
        let (mut n, mut d) = if g > 1 { (num / g, den / g) } else { (num, den) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(BigRational::new(n.into(), d.into()))),
        }
    }

    pub fn from_big(r: BigRational) -> Rational {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(r)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw((*n).into(), (*d).into()),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn add(&self, other: &Rational) -> Rational {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Rational::from_i128(a + c, b)
                } else {
                    Rational::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Rational::from_big(self.to_big() + other.to_big()),
        }
    }

    pub fn mul(&self, other: &Rational) -> Rational {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rational::from_big(self.to_big() * other.to_big()),
        }
    }

    pub fn neg(&self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => Rational::from_i128(-(*n as i128), *d as i128),
            Repr::Big(r) => Rational::from_big(-r.clone()),
        }
    }

    pub fn inv(&self) -> Option<Rational> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.0 {
            Repr::Small(n, d) => Rational::from_i128(*d as i128, *n as i128),
            Repr::Big(r) => Rational::from_big(r.recip()),
        })
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(r) => r.is_negative(),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, d) = parse_fraction(s)?;
        Ok(Rational::from_big(BigRational::new(n, d)))
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }
}

impl std::ops::Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational::add(&self, &rhs)
    }
}

impl std::ops::Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational::mul(&self, &rhs)
    }
}

impl std::ops::Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational::neg(&self)
    }
}

/// Arithmetic context for one coefficient field.
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync + 'static;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn parse(&self, text: &str) -> Result<Self::Elem, FieldError>;
    fn render(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `a` or `-a` depending on `negate`.
    fn signed(&self, negate: bool, a: &Self::Elem) -> Self::Elem {
        if negate {
            self.neg(a)
        } else {
            a.clone()
        }
    }
}

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a.add(b)
    }
    fn neg(&self, a: &Rational) -> Rational {
        a.neg()
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a.mul(b)
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        a.inv()
    }
    fn from_i64(&self, n: i64) -> Rational {
        Rational::from_integer(n)
    }
    fn parse(&self, text: &str) -> Result<Rational, FieldError> {
        text.parse()
    }
    fn render(&self, a: &Rational) -> String {
        a.to_string()
    }
}

/// The prime field with `p` elements; elements are residues `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        FieldSpec::prime(p).map(|_| PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_big(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits in u64")
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
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
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(pow_mod(*a, self.p - 2, self.p))
        }
    }
    fn from_i64(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p as i128) as u64
    }
    fn parse(&self, text: &str) -> Result<u64, FieldError> {
        let (n, d) = parse_fraction(text)?;
        let d = self.reduce_big(&d);
        let d_inv = self.inv(&d).ok_or_else(|| FieldError::DenominatorVanishes {
            text: text.to_string(),
            p: self.p,
        })?;
        Ok(self.mul(&self.reduce_big(&n), &d_inv))
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// A scalar that carries its field with it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldScalar {
    spec: FieldSpec,
    value: ScalarValue,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum ScalarValue {
    Rational(Rational),
    Residue(u64),
}

/// Parses `"±a"` or `"±a/b"`; in a prime field `a/b` means `a·b⁻¹ mod p`.
pub fn parse_scalar(text: &str, spec: FieldSpec) -> Result<FieldScalar, FieldError> {
    let value = match spec {
        FieldSpec::Rational => ScalarValue::Rational(Rationals.parse(text)?),
        FieldSpec::Prime(p) => ScalarValue::Residue(PrimeField::new(p)?.parse(text)?),
    };
    Ok(FieldScalar { spec, value })
}

impl FieldScalar {
    pub fn zero(spec: FieldSpec) -> FieldScalar {
        FieldScalar::from_i64(spec, 0)
    }

    pub fn one(spec: FieldSpec) -> FieldScalar {
        FieldScalar::from_i64(spec, 1)
    }

    pub fn from_i64(spec: FieldSpec, n: i64) -> FieldScalar {
        let value = match spec {
            FieldSpec::Rational => ScalarValue::Rational(Rational::from_integer(n)),
            FieldSpec::Prime(p) => ScalarValue::Residue((n as i128).rem_euclid(p as i128) as u64),
        };
        FieldScalar { spec, value }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            ScalarValue::Rational(r) => r.is_zero(),
            ScalarValue::Residue(r) => *r == 0,
        }
    }

    fn check(&self, other: &FieldScalar) -> Result<(), FieldError> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(FieldError::Mismatch(self.spec, other.spec))
        }
    }

    fn prime(&self) -> PrimeField {
        PrimeField { p: self.spec.characteristic() }
    }

    pub fn add(&self, other: &FieldScalar) -> Result<FieldScalar, FieldError> {
        self.check(other)?;
        let value = match (&self.value, &other.value) {
            (ScalarValue::Rational(a), ScalarValue::Rational(b)) => ScalarValue::Rational(a.add(b)),
            (ScalarValue::Residue(a), ScalarValue::Residue(b)) => {
                ScalarValue::Residue(self.prime().add(a, b))
            }
            _ => unreachable!("value kind follows spec"),
        };
        Ok(FieldScalar { spec: self.spec, value })
    }

    pub fn mul(&self, other: &FieldScalar) -> Result<FieldScalar, FieldError> {
        self.check(other)?;
        let value = match (&self.value, &other.value) {
            (ScalarValue::Rational(a), ScalarValue::Rational(b)) => ScalarValue::Rational(a.mul(b)),
            (ScalarValue::Residue(a), ScalarValue::Residue(b)) => {
                ScalarValue::Residue(self.prime().mul(a, b))
            }
            _ => unreachable!("value kind follows spec"),
        };
        Ok(FieldScalar { spec: self.spec, value })
    }

    pub fn sub(&self, other: &FieldScalar) -> Result<FieldScalar, FieldError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FieldScalar {
        let value = match &self.value {
            ScalarValue::Rational(a) => ScalarValue::Rational(a.neg()),
            ScalarValue::Residue(a) => ScalarValue::Residue(self.prime().neg(a)),
        };
        FieldScalar { spec: self.spec, value }
    }

    pub fn inv(&self) -> Result<FieldScalar, FieldError> {
        let value = match &self.value {
            ScalarValue::Rational(a) => ScalarValue::Rational(a.inv().ok_or(FieldError::ZeroInverse)?),
            ScalarValue::Residue(a) => {
                ScalarValue::Residue(self.prime().inv(a).ok_or(FieldError::ZeroInverse)?)
            }
        };
        Ok(FieldScalar { spec: self.spec, value })
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            ScalarValue::Rational(r) => write!(f, "{r}"),
            ScalarValue::Residue(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> FieldScalar {
        parse_scalar(s, FieldSpec::Rational).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(q("2/4").to_string(), "1/2");
        assert_eq!(parse_scalar("-3", FieldSpec::Prime(5)).unwrap().to_string(), "2");
        assert_eq!(parse_scalar("1/2", FieldSpec::Prime(5)).unwrap().to_string(), "3");
        assert_eq!(q(" -6/4 ").to_string(), "-3/2");
        assert!(parse_scalar("-6/-3", FieldSpec::Rational).is_err());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_scalar("abc", FieldSpec::Rational), Err(FieldError::Malformed(_))));
        assert!(matches!(parse_scalar("1/", FieldSpec::Rational), Err(FieldError::Malformed(_))));
        assert!(matches!(parse_scalar("", FieldSpec::Rational), Err(FieldError::Malformed(_))));
        assert!(matches!(parse_scalar("3/0", FieldSpec::Rational), Err(FieldError::ZeroDenominator(_))));
        assert!(matches!(
            parse_scalar("1/5", FieldSpec::Prime(5)),
            Err(FieldError::DenominatorVanishes { .. })
        ));
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(q("1/2").add(&q("1/3")).unwrap(), q("5/6"));
        assert_eq!(q("0").neg(), q("0"));
        assert_eq!(q("-7/3").mul(&q("-7/3").inv().unwrap()).unwrap(), q("1"));
        assert_eq!(q("0").inv(), Err(FieldError::ZeroInverse));
        let f5 = parse_scalar("2", FieldSpec::Prime(5)).unwrap();
        assert_eq!(q("1").add(&f5), Err(FieldError::Mismatch(FieldSpec::Rational, FieldSpec::Prime(5))));
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rational);
        assert_eq!("F7".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(7));
        assert_eq!("GF(2)".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(2));
        assert_eq!("F9".parse::<FieldSpec>(), Err(FieldError::NotPrime(9)));
        assert!("R".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn rational_overflow_spills_to_big() {
        let big = Rational::new(i64::MAX, 1);
        let sq = big.mul(&big);
        assert_eq!(sq.to_string(), "85070591730234615847396907784232501249");
        let back = sq.mul(&big.inv().unwrap()).mul(&big.inv().unwrap());
        assert_eq!(back, Rational::from_integer(1));
        assert_eq!(Rational::new(i64::MIN, 1).neg().to_string(), "9223372036854775808");
    }

    fn rational_strategy() -> impl Strategy<Value = Rational> {
        (any::<i64>(), 1..i64::MAX).prop_map(|(n, d)| Rational::new(n, d))
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in rational_strategy(), b in rational_strategy(), c in rational_strategy()) {
            let f = Rationals;
            prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
            prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            if let Some(ai) = f.inv(&a) {
                prop_assert_eq!(f.mul(&a, &ai), f.one());
            }
            // canonical form agrees with the big-integer route
            prop_assert_eq!(f.mul(&a, &b).to_big(), a.to_big() * b.to_big());
            prop_assert_eq!(f.add(&a, &b).to_big(), a.to_big() + b.to_big());
        }

        #[test]
        fn prime_field_axioms(p_idx in 0usize..5, a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
            let p = [2u64, 3, 7, 65_537, 4_294_967_311][p_idx];
            let f = PrimeField::new(p).unwrap();
            let (a, b, c) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
            prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.add(&a, &f.neg(&a)), 0);
            if a != 0 {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            }
        }

        #[test]
        fn render_parse_round_trip(a in rational_strategy(), r in 0u64..13) {
            let x = FieldScalar { spec: FieldSpec::Rational, value: ScalarValue::Rational(a) };
            prop_assert_eq!(parse_scalar(&x.to_string(), FieldSpec::Rational).unwrap(), x);
            let y = FieldScalar::from_i64(FieldSpec::Prime(13), r as i64);
            prop_assert_eq!(parse_scalar(&y.to_string(), FieldSpec::Prime(13)).unwrap(), y);
        }
    }
}
