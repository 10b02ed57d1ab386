//! Exact real numbers of the form `Σ c_s·√s`.
//!
//! Every value is kept in canonical form: radicands `s` are squarefree positive
//! integers listed in increasing order, coefficients `c_s` are nonzero
//! rationals, and the rational part sits at `s = 1`. Square roots of distinct
//! squarefree integers are linearly independent over the rationals, so two
//! values are equal exactly when their term lists are equal. That makes
//! equality, hashing and grading by length exact.
//!
//! The set of such numbers is a field (inverses are computed by repeated
//! conjugation), and its order is decided exactly: a cheap floating-point
//! estimate settles most comparisons, and interval refinement with big
//! integers settles the rest.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact real number `Σ c_s·√s` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactReal {
    terms: Vec<(BigUint, BigRational)>,
}

/// Distances and length gradings are exact reals.
pub type ExactLength = ExactReal;

impl ExactReal {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        if q.is_zero() {
            Self::zero()
        } else {
            Self {
                terms: vec![(BigUint::one(), q)],
            }
        }
    }

    /// `√q` for a nonnegative rational `q`; `None` when `q < 0`.
    pub fn sqrt_rational(q: &BigRational) -> Option<Self> {
        if q.is_negative() {
            return None;
        }
        if q.is_zero() {
            return Some(Self::zero());
        }
        // √(n/d) = √(n·d) / d
        let n = q.numer().magnitude();
        let d = q.denom().magnitude();
        let (square, free) = squarefree_split(&(n * d));
        let coef = BigRational::new(BigInt::from(square), BigInt::from(d.clone()));
        Some(Self {
            terms: vec![(free, coef)],
        })
    }

    /// `c·√s` for an arbitrary positive integer `s`.
    pub fn radical(coef: BigRational, s: u64) -> Self {
        Self::from_rational(coef) * Self::sqrt_rational(&BigRational::from_integer(s.into())).unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as a rational, when it has no irrational part.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(s, c)] if s.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.to_rational().is_some()
    }

    /// Radicand/coefficient pairs in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&BigUint, &BigRational)> {
        self.terms.iter().map(|(s, c)| (s, c))
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(s, c)| c.to_f64().unwrap_or(f64::NAN) * s.to_f64().unwrap_or(f64::NAN).sqrt())
            .sum()
    }

    pub fn signum(&self) -> Ordering {
        match self.terms.as_slice() {
            [] => Ordering::Equal,
            [(_, c)] => sign_of(c),
            _ => sign_by_refinement(&self.terms),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let [(s, c)] = self.terms.as_slice() {
            // 1/(c√s) = √s / (c·s)
            let scale = c * BigRational::from_integer(BigInt::from(s.clone()));
            return Some(Self {
                terms: vec![(s.clone(), scale.recip())],
            });
        }
        // Split x = A + B√p over a prime p of some radicand; then
        // 1/x = (A − B√p) / (A² − p·B²) and the denominator lost √p.
        let p = smallest_prime_factor(&self.terms.last().unwrap().0);
        let (a, b) = self.split_on_prime(&p);
        let root_p = Self {
            terms: vec![(p.clone(), BigRational::one())],
        };
        let conj = &a - &(&b * &root_p);
        let p_rat = Self::from_rational(BigRational::from_integer(BigInt::from(p)));
        let norm = &(&a * &a) - &(&(&b * &b) * &p_rat);
        Some(&conj * &norm.recip()?)
    }

    fn split_on_prime(&self, p: &BigUint) -> (Self, Self) {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (s, c) in &self.terms {
            if (s % p).is_zero() {
                b.push((s / p, c.clone()));
            } else {
                a.push((s.clone(), c.clone()));
            }
        }
        (Self::normalized(a), Self::normalized(b))
    }

    /// Square root when it lies in the same number system.
    ///
    /// Succeeds for nonnegative rationals and for `a + b√s` whenever that
    /// denests as `√u ± √v` with rational `u, v`.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        if let Some(q) = self.to_rational() {
            return Self::sqrt_rational(&q);
        }
        if let [(one, a), (s, b)] = self.terms.as_slice() {
            if one.is_one() {
                // √(a + b√s) = √u + sign(b)·√v, u + v = a, 4uv = b²s
                let s_rat = BigRational::from_integer(BigInt::from(s.clone()));
                let disc = a * a - b * b * s_rat;
                let root = Self::sqrt_rational(&disc)?.to_rational()?;
                let two = BigRational::from_integer(2.into());
                let u = (a + &root) / &two;
                let v = (a - &root) / &two;
                if u.is_negative() || v.is_negative() {
                    return None;
                }
                let ru = Self::sqrt_rational(&u)?;
                let rv = Self::sqrt_rational(&v)?;
                let candidate = if b.is_positive() { ru + rv } else { ru - rv };
                if candidate.square() == *self {
                    return Some(candidate);
                }
            }
        }
        None
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn normalized(mut terms: Vec<(BigUint, BigRational)>) -> Self {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(BigUint, BigRational)> = Vec::with_capacity(terms.len());
        for (s, c) in terms {
            match out.last_mut() {
                Some((ls, lc)) if *ls == s => *lc += c,
                _ => out.push((s, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Self { terms: out }
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (xs, ys) = (&self.terms, &other.terms);
        while i < xs.len() || j < ys.len() {
            let take = match (xs.get(i), ys.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                (None, _) => Ordering::Greater,
            };
            match take {
                Ordering::Less => {
                    out.push(xs[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let (s, c) = &ys[j];
                    out.push((s.clone(), if negate_other { -c } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        &xs[i].1 - &ys[j].1
                    } else {
                        &xs[i].1 + &ys[j].1
                    };
                    if !c.is_zero() {
                        out.push((xs[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self { terms: out }
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let (Some(a), Some(b)) = (self.to_rational(), other.to_rational()) {
            return Self::from_rational(a * b);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (s1, c1) in &self.terms {
            for (s2, c2) in &other.terms {
                // √s1·√s2 = g·√((s1/g)(s2/g)), g = gcd(s1, s2)
                let g = s1.gcd(s2);
                let s = (s1 / &g) * (s2 / &g);
                let c = c1 * c2 * BigRational::from_integer(BigInt::from(g));
                terms.push((s, c));
            }
        }
        Self::normalized(terms)
    }
}

fn sign_of(q: &BigRational) -> Ordering {
    if q.is_positive() {
        Ordering::Greater
    } else if q.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

fn sign_by_refinement(terms: &[(BigUint, BigRational)]) -> Ordering {
    // f64 estimate with a generous error bound
    let mut est = 0.0f64;
    let mut mag = 0.0f64;
    let mut finite = true;
    for (s, c) in terms {
        let t = c.to_f64().unwrap_or(f64::NAN) * s.to_f64().unwrap_or(f64::NAN).sqrt();
        if !t.is_finite() {
            finite = false;
            break;
        }
        est += t;
        mag += t.abs();
    }
    if finite && mag > 0.0 && mag < 1e300 && est.abs() > mag * 1e-12 {
        return if est > 0.0 { Ordering::Greater } else { Ordering::Less };
    }
    // A nonzero value in canonical form has a nonzero magnitude, so the
    // intervals eventually exclude zero.
    let mut bits: u64 = 64;
    loop {
        let scale = BigUint::one() << bits;
        let denom = BigRational::from_integer(BigInt::from(scale.clone()));
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for (s, c) in terms {
            if s.is_one() {
                lo += c;
                hi += c;
                continue;
            }
            let root = (s * &scale * &scale).sqrt();
            let r_lo = BigRational::from_integer(BigInt::from(root.clone())) / &denom;
            let r_hi = BigRational::from_integer(BigInt::from(root + 1u32)) / &denom;
            if c.is_positive() {
                lo += c * r_lo;
                hi += c * r_hi;
            } else {
                lo += c * r_hi;
                hi += c * r_lo;
            }
        }
        if lo.is_positive() {
            return Ordering::Greater;
        }
        if hi.is_negative() {
            return Ordering::Less;
        }
        bits *= 2;
    }
}

/// Writes `m = k²·s` with `s` squarefree; returns `(k, s)`.
pub(crate) fn squarefree_split(m: &BigUint) -> (BigUint, BigUint) {
    let mut rest = m.clone();
    let mut square = BigUint::one();
    let mut free = BigUint::one();
    let mut p = BigUint::from(2u32);
    // Trial division while p³ ≤ rest; what is left is 1, a prime, a product of
    // two primes, or the square of a prime.
    while &p * &p * &p <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            square *= &p;
        }
        if e % 2 == 1 {
            free *= &p;
        }
        p += if p == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    if !rest.is_one() {
        let r = rest.sqrt();
        if &r * &r == rest {
            square *= r;
        } else {
            free *= rest;
        }
    }
    (square, free)
}

fn smallest_prime_factor(n: &BigUint) -> BigUint {
    let mut p = BigUint::from(2u32);
    while &p * &p <= *n {
        if (n % &p).is_zero() {
            return p;
        }
        p += if p == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    n.clone()
}

impl PartialOrd for ExactReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Numeric order. Canonical forms make it agree with `Eq`.
impl Ord for ExactReal {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Some(a), Some(b)) = (self.to_rational(), other.to_rational()) {
            return a.cmp(&b);
        }
        self.merge(other, true).signum()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a, 'b> $trait<&'b ExactReal> for &'a ExactReal {
            type Output = ExactReal;
            fn $method(self, rhs: &'b ExactReal) -> ExactReal {
                let f: fn(&ExactReal, &ExactReal) -> ExactReal = $body;
                f(self, rhs)
            }
        }
        impl $trait<ExactReal> for ExactReal {
            type Output = ExactReal;
            fn $method(self, rhs: ExactReal) -> ExactReal {
                (&self).$method(&rhs)
            }
        }
        impl<'b> $trait<&'b ExactReal> for ExactReal {
            type Output = ExactReal;
            fn $method(self, rhs: &'b ExactReal) -> ExactReal {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<ExactReal> for &'a ExactReal {
            type Output = ExactReal;
            fn $method(self, rhs: ExactReal) -> ExactReal {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.merge(b, false));
forward_binop!(Sub, sub, |a, b| a.merge(b, true));
forward_binop!(Mul, mul, |a, b| a.product(b));
forward_binop!(Div, div, |a, b| a
    .product(&b.recip().expect("division of an exact real by zero")));

impl Neg for ExactReal {
    type Output = ExactReal;
    fn neg(self) -> ExactReal {
        -&self
    }
}

impl Neg for &ExactReal {
    type Output = ExactReal;
    fn neg(self) -> ExactReal {
        ExactReal {
            terms: self.terms.iter().map(|(s, c)| (s.clone(), -c)).collect(),
        }
    }
}

impl AddAssign<&ExactReal> for ExactReal {
    fn add_assign(&mut self, rhs: &ExactReal) {
        *self = self.merge(rhs, false);
    }
}

impl SubAssign<&ExactReal> for ExactReal {
    fn sub_assign(&mut self, rhs: &ExactReal) {
        *self = self.merge(rhs, true);
    }
}

impl std::iter::Sum for ExactReal {
    fn sum<I: Iterator<Item = ExactReal>>(iter: I) -> Self {
        iter.fold(ExactReal::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Sum<&'a ExactReal> for ExactReal {
    fn sum<I: Iterator<Item = &'a ExactReal>>(iter: I) -> Self {
        iter.fold(ExactReal::zero(), |acc, x| acc + x)
    }
}

impl From<i64> for ExactReal {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<BigRational> for ExactReal {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `p/q`, or a decimal such as `-1.25` / `3e-2` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::Parse {
        line: 0,
        column: 0,
        message: format!("not a rational number: {text:?}"),
    };
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = parse_rational(n)?;
        let d = parse_rational(d)?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(n / d);
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => (&t[..pos], t[pos + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(all.parse::<BigInt>().unwrap_or_default());
    let shift = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(10.into());
    for _ in 0..shift.unsigned_abs() {
        if shift > 0 {
            value *= &ten;
        } else {
            value /= &ten;
        }
    }
    Ok(if neg { -value } else { value })
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (s, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            if s.is_one() {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "sqrt({s})")?;
            } else {
                write!(f, "{}*sqrt({s})", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for ExactReal {
    type Err = Error;

    /// Accepts sums of terms `q`, `sqrt(q)`, `q*sqrt(q)`, `sqrt(q)/n`, where
    /// each `q` is a rational or decimal literal.
    fn from_str(text: &str) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse {
                line: 0,
                column: 0,
                message: "empty number".into(),
            });
        }
        let mut pieces = Vec::new();
        let mut start = 0;
        let mut depth = 0i32;
        let bytes = compact.as_bytes();
        for (i, &b) in bytes.iter().enumerate() {
            match b {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'+' | b'-' if depth == 0 && i > 0 => {
                    let prev = bytes[i - 1];
                    if !matches!(prev, b'e' | b'E' | b'*' | b'/') {
                        pieces.push(&compact[start..i]);
                        start = i;
                    }
                }
                _ => {}
            }
        }
        pieces.push(&compact[start..]);
        let mut total = ExactReal::zero();
        for piece in pieces {
            total += &parse_term(piece)?;
        }
        Ok(total)
    }
}

fn parse_term(piece: &str) -> Result<ExactReal> {
    let (neg, body) = match piece.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, piece.strip_prefix('+').unwrap_or(piece)),
    };
    let value = match body.find("sqrt(") {
        None => ExactReal::from_rational(parse_rational(body)?),
        Some(pos) => {
            let coef = if pos == 0 {
                BigRational::one()
            } else {
                let c = body[..pos].strip_suffix('*').ok_or_else(|| Error::Parse {
                    line: 0,
                    column: 0,
                    message: format!("expected '*' before sqrt in {piece:?}"),
                })?;
                parse_rational(c)?
            };
            let after = &body[pos + 5..];
            let close = after.find(')').ok_or_else(|| Error::Parse {
                line: 0,
                column: 0,
                message: format!("unbalanced parenthesis in {piece:?}"),
            })?;
            let radicand = parse_rational(&after[..close])?;
            let mut root = ExactReal::sqrt_rational(&radicand).ok_or_else(|| Error::Parse {
                line: 0,
                column: 0,
                message: format!("square root of a negative number in {piece:?}"),
            })?;
            let tail = &after[close + 1..];
            if !tail.is_empty() {
                let d = tail.strip_prefix('/').ok_or_else(|| Error::Parse {
                    line: 0,
                    column: 0,
                    message: format!("unexpected trailing text in {piece:?}"),
                })?;
                let d = parse_rational(d)?;
                if d.is_zero() {
                    return Err(Error::Parse {
                        line: 0,
                        column: 0,
                        message: "division by zero".into(),
                    });
                }
                root = root * ExactReal::from_rational(d.recip());
            }
            ExactReal::from_rational(coef) * root
        }
    };
    Ok(if neg { -value } else { value })
}

impl Serialize for ExactReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        exact_from_json(&value).map_err(serde::de::Error::custom)
    }
}

/// Reads an exact number from a JSON string or number. Numbers are taken
/// verbatim from their shortest decimal rendering.
pub fn exact_from_json(value: &serde_json::Value) -> Result<ExactReal> {
    match value {
        serde_json::Value::String(s) => s.parse(),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(ExactReal::from_int(i))
            } else {
                Ok(ExactReal::from_rational(parse_rational(&n.to_string())?))
            }
        }
        other => Err(Error::Parse {
            line: 0,
            column: 0,
            message: format!("expected a number, found {other}"),
        }),
    }
}

/// Rational helper used throughout the geometry modules.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Serde adapter writing rational vectors as `"p/q"` strings.
pub mod rational_vec {
    use super::{format_rational, parse_rational};
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Serde adapter for vectors of rational points.
pub mod rational_points {
    use super::{format_rational, parse_rational};
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Vec<BigRational>], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|p| p.iter().map(format_rational).collect::<Vec<_>>()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigRational>>, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        raw.iter()
            .map(|p| {
                p.iter()
                    .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(s: &str) -> ExactReal {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_sqrt_of_rationals() {
        assert_eq!(x("sqrt(8)"), x("2*sqrt(2)"));
        assert_eq!(x("sqrt(3/4)"), x("sqrt(3)/2"));
        assert_eq!(x("sqrt(9/4)"), x("3/2"));
        assert_eq!(x("sqrt(0)"), ExactReal::zero());
        assert_eq!(x("sqrt(2)") * x("sqrt(6)"), x("2*sqrt(3)"));
    }

    #[test]
    fn display_round_trip() {
        for s in [
            "0",
            "-3/4",
            "1 + sqrt(2)",
            "-sqrt(3)",
            "1/2 - 5/3*sqrt(7)",
            "2*sqrt(2) + sqrt(3)",
        ] {
            let v = x(s);
            assert_eq!(x(&v.to_string()), v, "{s}");
        }
        assert_eq!(x("0.25"), x("1/4"));
        assert_eq!(x("-1.5e1"), x("-15"));
        assert!("sqrt(-1)".parse::<ExactReal>().is_err());
        assert!("1/0".parse::<ExactReal>().is_err());
        assert!("abc".parse::<ExactReal>().is_err());
    }

    #[test]
    fn order_is_exact_near_cancellation() {
        // √2 + √3 vs √(5 + 2√6) are equal; shift by a tiny rational either way
        let a = x("sqrt(2) + sqrt(3)");
        let tiny = ExactReal::from_rational(BigRational::new(1.into(), BigInt::from(10u64).pow(40)));
        let b = &a + &tiny;
        assert!(b > a);
        assert!(&a - &tiny < a);
        // 665857/470832 exceeds √2 by about 1.6e-12
        assert!(x("sqrt(2)") < x("665857/470832"));
        assert!(x("sqrt(2)") > x("665857/470832") - x("1/100000000000"));
        assert!(x("sqrt(2)") < x("99/70"));
        assert!(x("sqrt(2)") > x("140/99"));
    }

    #[test]
    fn reciprocal_and_division() {
        let a = x("1 + sqrt(2) + sqrt(3)");
        let inv = a.recip().unwrap();
        assert_eq!(&a * &inv, ExactReal::one());
        let b = x("3/7*sqrt(5) - 2");
        assert_eq!(&(&a / &b) * &b, a);
        assert!(ExactReal::zero().recip().is_none());
    }

    #[test]
    fn sqrt_denests() {
        assert_eq!(x("3 + 2*sqrt(2)").sqrt(), Some(x("1 + sqrt(2)")));
        assert_eq!(x("3 - 2*sqrt(2)").sqrt(), Some(x("sqrt(2) - 1")));
        assert_eq!(x("1 + sqrt(2)").sqrt(), None);
        assert_eq!(x("-4").sqrt(), None);
    }

    #[test]
    fn squarefree_split_handles_large_prime_squares() {
        let p = BigUint::from(1_000_003u64);
        let (k, s) = squarefree_split(&(&p * &p * 6u32));
        assert_eq!(k, p);
        assert_eq!(s, BigUint::from(6u32));
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("0.125").unwrap(), rat(1, 8));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert!(parse_rational("1..2").is_err());
        assert!(parse_rational("").is_err());
    }
}
