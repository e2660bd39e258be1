//! Exact arithmetic substrate: rationals, p-adic valuations, base-p digits,
//! p-weights and cyclic digit shifts.
//!
//! Rationals are `num_rational::BigRational`, always kept in lowest terms with
//! a positive denominator. Their text form is `num/den`, with the denominator
//! omitted when it is 1.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{GkzError, Result};

pub type Rational = BigRational;

/// Bound on the number of multiplications when computing a multiplicative order.
const ORDER_SEARCH_LIMIT: u64 = 10_000_000;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A prime number, validated on construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Prime> {
        if is_prime_u64(p) {
            Ok(Prime(p))
        } else {
            Err(GkzError::NotPrime(p))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    pub fn big(self) -> BigInt {
        BigInt::from(self.0)
    }

    /// `p - 1` as a rational, the denominator of normalized valuations.
    pub fn minus_one(self) -> Rational {
        Rational::from_integer(BigInt::from(self.0 - 1))
    }

    /// `p^e` as a big integer.
    pub fn pow(self, e: u32) -> BigInt {
        num_traits::pow(BigInt::from(self.0), e as usize)
    }
}

impl TryFrom<u64> for Prime {
    type Error = GkzError;
    fn try_from(p: u64) -> Result<Prime> {
        Prime::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for the whole `u64` range.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
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

/// p-adic valuation, with `Infinite` standing for `ord_p(0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(Rational),
    Infinite,
}

impl Valuation {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        match self {
            Valuation::Finite(v) => !v.is_negative(),
            Valuation::Infinite => true,
        }
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
            (Valuation::Infinite, _) => Ordering::Greater,
            (_, Valuation::Infinite) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Exponent of `p` in a nonzero integer; `None` for zero.
pub fn ord_p_int(x: &BigInt, p: Prime) -> Option<u64> {
    if x.is_zero() {
        return None;
    }
    let pb = p.big();
    let mut m = x.abs();
    let mut k = 0;
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return Some(k);
        }
        m = q;
        k += 1;
    }
}

/// Exact p-adic valuation of a rational.
pub fn ord_p(x: &Rational, p: Prime) -> Valuation {
    match ord_p_int(x.numer(), p) {
        None => Valuation::Infinite,
        Some(num) => {
            let den = ord_p_int(x.denom(), p).expect("denominator is nonzero");
            Valuation::Finite(int(num as i64 - den as i64))
        }
    }
}

/// Integer valuation of a nonzero rational.
pub fn ord_p_nonzero(x: &Rational, p: Prime) -> Result<i64> {
    match ord_p_int(x.numer(), p) {
        None => Err(GkzError::invalid("valuation of zero is infinite")),
        Some(num) => Ok(num as i64 - ord_p_int(x.denom(), p).unwrap_or(0) as i64),
    }
}

/// True when the denominator of `x` is prime to `p`.
pub fn is_p_integral(x: &Rational, p: Prime) -> bool {
    !(x.denom() % p.big()).is_zero()
}

/// Sum of base-p digits of a nonnegative integer.
pub fn p_weight(t: &BigInt, p: Prime) -> Result<u64> {
    if t.is_negative() {
        return Err(GkzError::invalid(format!("p-weight of negative integer {t}")));
    }
    let (_, mag) = t.clone().into_parts();
    Ok(p_weight_uint(&mag, p))
}

pub fn p_weight_uint(t: &BigUint, p: Prime) -> u64 {
    if let Some(small) = t.to_u64() {
        return p_weight_u64(small, p.get());
    }
    if p.get() <= 256 {
        return t
            .to_radix_le(p.get() as u32)
            .into_iter()
            .map(u64::from)
            .sum();
    }
    let pb = BigUint::from(p.get());
    let mut m = t.clone();
    let mut sum = 0u64;
    while !m.is_zero() {
        let (q, r) = m.div_rem(&pb);
        sum += r.to_u64().expect("digit fits in u64");
        m = q;
    }
    sum
}

#[inline]
pub fn p_weight_u64(mut t: u64, p: u64) -> u64 {
    let mut sum = 0;
    while t > 0 {
        sum += t % p;
        t /= p;
    }
    sum
}

/// Componentwise p-weight of a vector of nonnegative integers.
pub fn p_weight_vec(ts: &[BigInt], p: Prime) -> Result<u64> {
    ts.iter().map(|t| p_weight(t, p)).sum()
}

/// The `a` base-p digits of an integer in `[0, p^a - 1]`, least significant first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitVector {
    base: Prime,
    digits: Vec<u64>,
}

impl DigitVector {
    pub fn from_int(t: &BigInt, p: Prime, len: u32) -> Result<DigitVector> {
        if len == 0 {
            return Err(GkzError::invalid("digit vector length must be at least 1"));
        }
        if t.is_negative() || *t >= p.pow(len) {
            return Err(GkzError::invalid(format!(
                "{t} is outside [0, {p}^{len} - 1]"
            )));
        }
        let pb = p.big();
        let mut m = t.clone();
        let mut digits = Vec::with_capacity(len as usize);
        for _ in 0..len {
            let (q, r) = m.div_rem(&pb);
            digits.push(r.to_u64().expect("digit below p"));
            m = q;
        }
        Ok(DigitVector { base: p, digits })
    }

    pub fn to_int(&self) -> BigInt {
        let pb = self.base.big();
        self.digits
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, &d| acc * &pb + BigInt::from(d))
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn base(&self) -> Prime {
        self.base
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.digits.iter().sum()
    }

    /// `k` applications of `(t_0, ..., t_{a-1}) -> (t_1, ..., t_{a-1}, t_0)`.
    pub fn rotated(&self, k: u64) -> DigitVector {
        let mut digits = self.digits.clone();
        let shift = (k % digits.len() as u64) as usize;
        digits.rotate_left(shift);
        DigitVector {
            base: self.base,
            digits,
        }
    }
}

/// `t^{(k)}`: rotate the `a`-digit base-p expansion of `t` by `k` places.
pub fn cyclic_shift(t: &BigInt, p: Prime, a: u32, k: u64) -> Result<BigInt> {
    Ok(DigitVector::from_int(t, p, a)?.rotated(k).to_int())
}

/// Legendre's formula: `ord_p(m!) = (m - w_p(m)) / (p - 1)`.
pub fn ord_p_factorial(m: &BigUint, p: Prime) -> BigUint {
    let w = BigUint::from(p_weight_uint(m, p));
    (m - w) / BigUint::from(p.get() - 1)
}

/// Smallest `a >= 1` with `p^a ≡ 1 (mod m)`.
pub fn multiplicative_order(p: Prime, m: &BigInt) -> Result<u32> {
    if !m.is_positive() {
        return Err(GkzError::invalid(format!("modulus {m} must be positive")));
    }
    if m.is_one() {
        return Ok(1);
    }
    if (m % p.big()).is_zero() {
        return Err(GkzError::NotPIntegral {
            what: format!("denominator {m}"),
            p: p.get(),
        });
    }
    let pb = p.big() % m;
    let mut x = pb.clone();
    let mut k: u64 = 1;
    while !x.is_one() {
        x = (x * &pb) % m;
        k += 1;
        if k > ORDER_SEARCH_LIMIT {
            return Err(GkzError::cap("multiplicative order search", ORDER_SEARCH_LIMIT));
        }
    }
    Ok(k as u32)
}

pub fn lcm_of_denominators<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Parses `num/den` or an integer.
pub fn parse_rational(s: &str, field: &str) -> Result<Rational> {
    let s = s.trim();
    let err = |message: String| GkzError::Parse {
        field: field.to_string(),
        message,
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| err(format!("malformed rational `{s}`")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| err(format!("malformed rational `{s}`")))?;
    if den.is_zero() {
        return Err(err(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(num, den))
}

/// Parses a comma- or whitespace-separated list of rationals.
pub fn parse_rational_list(s: &str, field: &str) -> Result<Vec<Rational>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| parse_rational(t, field))
        .collect()
}

pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

pub fn format_vector(xs: &[Rational]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub fn format_int_vector<T: fmt::Display>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub fn to_i64(x: &BigInt, what: &str) -> Result<i64> {
    x.to_i64().ok_or_else(|| GkzError::Overflow(what.to_string()))
}

pub fn floor(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

pub fn ceil(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Serde adapters writing rationals as `num/den` strings.
pub mod serde_rational {
    use super::{parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s, "rational").map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use super::super::{parse_rational, Rational};
        use serde::ser::SerializeSeq;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(xs.len()))?;
            for x in xs {
                seq.serialize_element(&x.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let raw = Vec::<String>::deserialize(d)?;
            raw.iter()
                .map(|s| parse_rational(s, "rational").map_err(serde::de::Error::custom))
                .collect()
        }
    }

    pub mod opt {
        use super::super::Rational;
        use serde::Serializer;

        pub fn serialize<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match x {
                Some(x) => s.serialize_some(&x.to_string()),
                None => s.serialize_none(),
            }
        }
    }
}
