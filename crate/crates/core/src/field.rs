//! Exact scalars over the rationals and prime fields, plus univariate
//! polynomials with complete root finding in the ground field.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ground field: either Q or GF(p) for a prime `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawField", into = "RawField")]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type")]
enum RawField {
    #[serde(rename = "Q")]
    Q,
    #[serde(rename = "GF")]
    Gf { p: u64 },
}

impl TryFrom<RawField> for FieldSpec {
    type Error = Error;

    fn try_from(raw: RawField) -> Result<Self> {
        match raw {
            RawField::Q => Ok(FieldSpec::Rationals),
            RawField::Gf { p } => FieldSpec::prime(p),
        }
    }
}

impl From<FieldSpec> for RawField {
    fn from(f: FieldSpec) -> Self {
        match f {
            FieldSpec::Rationals => RawField::Q,
            FieldSpec::Prime(p) => RawField::Gf { p },
        }
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    /// Number of elements, `None` for Q.
    pub fn order(&self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(*p),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(v.into())),
            FieldSpec::Prime(p) => Scalar::Residue {
                value: v.rem_euclid(*p as i64) as u64,
                modulus: *p,
            },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                Scalar::Residue {
                    value: r.to_u64().expect("residue fits"),
                    modulus: *p,
                }
            }
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        let d = self.from_i64(den);
        Ok(&self.from_i64(num) * &self.invert(&d)?)
    }

    /// Residue `value mod p`; only meaningful for prime fields.
    pub fn residue(&self, value: u64) -> Scalar {
        match self {
            FieldSpec::Rationals => self.from_i64(value as i64),
            FieldSpec::Prime(p) => Scalar::Residue {
                value: value % p,
                modulus: *p,
            },
        }
    }

    /// True iff `a` is a canonical element of this field.
    pub fn contains(&self, a: &Scalar) -> bool {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Rational(_)) => true,
            (FieldSpec::Prime(p), Scalar::Residue { value, modulus }) => p == modulus && value < p,
            _ => false,
        }
    }

    pub fn invert(&self, a: &Scalar) -> Result<Scalar> {
        if !self.contains(a) {
            return Err(Error::FieldMismatch {
                expected: self.to_string(),
                found: a.field().to_string(),
            });
        }
        a.inv()
    }

    /// All field elements in residue order. Empty for Q.
    pub fn elements(&self) -> Vec<Scalar> {
        match self {
            FieldSpec::Rationals => Vec::new(),
            FieldSpec::Prime(p) => (0..*p).map(|v| self.residue(v)).collect(),
        }
    }

    /// Uniform element of GF(p), or a uniform integer in `[-bound, bound]` over Q.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bound: u64) -> Scalar {
        match self {
            FieldSpec::Rationals => {
                let b = bound.max(1) as i64;
                self.from_i64(rng.random_range(-b..=b))
            }
            FieldSpec::Prime(p) => self.residue(rng.random_range(0..*p)),
        }
    }

    /// Parses the text form: integer or `a/b`. Over GF(p) integers are
    /// reduced and `a/b` means `a * b^{-1}`.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let parse_int = |t: &str| {
            BigInt::from_str(t.trim()).map_err(|_| Error::Parse(format!("bad scalar {s:?}")))
        };
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (parse_int(a)?, parse_int(b)?),
            None => (parse_int(s)?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        match self {
            FieldSpec::Rationals => Ok(Scalar::Rational(BigRational::new(num, den))),
            FieldSpec::Prime(_) => {
                let d = self.from_bigint(&den);
                Ok(&self.from_bigint(&num) * &self.invert(&d)?)
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "GF{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q`, `GF5`, `GF(5)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        let rest = t
            .strip_prefix("GF")
            .or_else(|| t.strip_prefix("gf"))
            .ok_or_else(|| Error::Parse(format!("unknown field {s:?}")))?;
        let rest = rest.trim_start_matches('(').trim_end_matches(')');
        let p: u64 = rest
            .parse()
            .map_err(|_| Error::Parse(format!("unknown field {s:?}")))?;
        FieldSpec::prime(p)
    }
}

/// An exact field element in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Residue { value, .. } => Some(*value),
            _ => None,
        }
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Numeric order on Q, residue order on GF(p).
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (
                Scalar::Residue { value: a, modulus: p },
                Scalar::Residue { value: b, modulus: q },
            ) => p.cmp(q).then(a.cmp(b)),
            (Scalar::Rational(_), Scalar::Residue { .. }) => Ordering::Less,
            (Scalar::Residue { .. }, Scalar::Rational(_)) => Ordering::Greater,
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("mixed-field arithmetic: {} and {}", a.field(), b.field())
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Residue {
                    value: (a + b) % p,
                    modulus: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Residue {
                    value: (a + p - b) % p,
                    modulus: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Residue {
                    value: a * b % p,
                    modulus: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Inverse of `a` in `field`.
pub fn invert(a: &Scalar, field: FieldSpec) -> Result<Scalar> {
    field.invert(a)
}

/// Univariate polynomial, coefficient index = degree, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_i64(field: FieldSpec, coeffs: &[i64]) -> Self {
        Poly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::new(self.field, Vec::new());
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(self.field, out)
    }

    /// Complete, sorted, duplicate-free list of roots in the ground field.
    pub fn roots(&self) -> Result<Vec<Scalar>> {
        roots_in_field(self, self.field)
    }
}

/// Roots of `f` in `field`: exhaustive evaluation over GF(p), the rational
/// root theorem over Q.
pub fn roots_in_field(f: &Poly, field: FieldSpec) -> Result<Vec<Scalar>> {
    if f.field != field {
        return Err(Error::FieldMismatch {
            expected: field.to_string(),
            found: f.field.to_string(),
        });
    }
    match field {
        FieldSpec::Prime(_) => Ok(field
            .elements()
            .into_iter()
            .filter(|x| f.eval(x).is_zero())
            .collect()),
        FieldSpec::Rationals => rational_roots(f),
    }
}

fn rational_roots(f: &Poly) -> Result<Vec<Scalar>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomialOverInfiniteField);
    }
    let rats: Vec<&BigRational> = f.coeffs.iter().filter_map(Scalar::as_rational).collect();
    let lcm = rats
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats
        .iter()
        .map(|r| (*r * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();

    let mut roots = BTreeSet::new();
    let shift = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if shift > 0 {
        roots.insert(BigRational::zero());
    }
    let ints = &ints[shift..];
    if ints.len() > 1 {
        let constant = ints[0].abs();
        let leading = ints[ints.len() - 1].abs();
        let nums = divisors(&constant);
        let dens = divisors(&leading);
        for p in &nums {
            for q in &dens {
                for cand in [
                    BigRational::new(p.clone(), q.clone()),
                    BigRational::new(-p.clone(), q.clone()),
                ] {
                    if eval_int_poly(ints, &cand).is_zero() {
                        roots.insert(cand);
                    }
                }
            }
        }
    }
    Ok(roots.into_iter().map(Scalar::Rational).collect())
}

fn eval_int_poly(coeffs: &[BigInt], x: &BigRational) -> BigRational {
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
        acc * x + BigRational::from_integer(c.clone())
    })
}

/// Positive divisors of a positive integer by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let q = n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Draws a scalar: uniform over GF(p), uniform integer in `[-bound, bound]` over Q.
pub fn sample_scalar<R: Rng + ?Sized>(field: FieldSpec, rng: &mut R, bound: u64) -> Scalar {
    field.sample(rng, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::Rational(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn invert_examples() {
        let qf = FieldSpec::Rationals;
        let gf5 = FieldSpec::prime(5).unwrap();
        assert_eq!(invert(&qf.one(), qf).unwrap(), qf.one());
        assert_eq!(invert(&gf5.from_i64(2), gf5).unwrap(), gf5.from_i64(3));
        assert_eq!(invert(&q(-2, 3), qf).unwrap(), q(-3, 2));
        assert_eq!(invert(&gf5.zero(), gf5), Err(Error::ZeroInverse));
    }

    #[test]
    fn roots_examples() {
        let gf2 = FieldSpec::prime(2).unwrap();
        let gf7 = FieldSpec::prime(7).unwrap();
        let qf = FieldSpec::Rationals;
        assert!(roots_in_field(&Poly::from_i64(gf2, &[1, 1, 1]), gf2)
            .unwrap()
            .is_empty());
        assert_eq!(
            roots_in_field(&Poly::from_i64(gf7, &[1, 1, 1]), gf7).unwrap(),
            vec![gf7.from_i64(2), gf7.from_i64(4)]
        );
        assert!(roots_in_field(&Poly::from_i64(qf, &[2, 0, 0, -1]), qf)
            .unwrap()
            .is_empty());
        assert_eq!(
            roots_in_field(&Poly::from_i64(qf, &[-1, 0, 1]), qf).unwrap(),
            vec![q(-1, 1), q(1, 1)]
        );
    }

    #[test]
    fn zero_polynomial() {
        let gf3 = FieldSpec::prime(3).unwrap();
        assert_eq!(
            roots_in_field(&Poly::from_i64(gf3, &[0, 3]), gf3).unwrap().len(),
            3
        );
        assert_eq!(
            roots_in_field(&Poly::from_i64(FieldSpec::Rationals, &[]), FieldSpec::Rationals),
            Err(Error::ZeroPolynomialOverInfiniteField)
        );
    }

    #[test]
    fn rational_roots_with_fractions() {
        let qf = FieldSpec::Rationals;
        // (2t - 1)(3t + 2) t = 6t^3 + t^2 - 2t
        let f = Poly::from_i64(qf, &[0, -2, 1, 6]);
        assert_eq!(f.roots().unwrap(), vec![q(-2, 3), q(0, 1), q(1, 2)]);
        // coefficients with denominators: t^2 - 1/4
        let g = Poly::new(qf, vec![q(-1, 4), q(0, 1), q(1, 1)]);
        assert_eq!(g.roots().unwrap(), vec![q(-1, 2), q(1, 2)]);
    }

    #[test]
    fn sampling_contracts() {
        let gf5 = FieldSpec::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            assert!(sample_scalar(gf5, &mut rng, 1).residue().unwrap() < 5);
            let r = sample_scalar(FieldSpec::Rationals, &mut rng, 3);
            let r = r.as_rational().unwrap();
            assert!(r.is_integer() && r.abs() <= BigRational::from_integer(3.into()));
        }
        let gf2 = FieldSpec::prime(2).unwrap();
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..32).map(|_| sample_scalar(gf2, &mut rng, 1)).collect::<Vec<_>>()
        };
        assert_eq!(draw(4), draw(4));
    }

    #[test]
    fn parsing_and_display() {
        let gf5 = FieldSpec::prime(5).unwrap();
        assert_eq!(gf5.parse_scalar("-1").unwrap(), gf5.from_i64(4));
        assert_eq!(gf5.parse_scalar("1/2").unwrap(), gf5.from_i64(3));
        let qf = FieldSpec::Rationals;
        assert_eq!(qf.parse_scalar("4/-6").unwrap().to_string(), "-2/3");
        assert!(qf.parse_scalar("1/0").is_err());
        assert_eq!("GF7".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(7));
        assert!("GF6".parse::<FieldSpec>().is_err());
        let json = serde_json::to_string(&gf5).unwrap();
        assert_eq!(json, r#"{"type":"GF","p":5}"#);
        assert_eq!(
            serde_json::to_string(&qf).unwrap(),
            r#"{"type":"Q"}"#
        );
        assert!(serde_json::from_str::<FieldSpec>(r#"{"type":"GF","p":4}"#).is_err());
    }
}
