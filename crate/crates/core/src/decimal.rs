//! Exact, precision-preserving decimal numbers.
//!
//! An [`ExactDecimal`] stores a sign, a normalized significand and an
//! exponent, so that the value is `sign × 0.d₁d₂…dₙ × 10^e`. Trailing zeros
//! in the significand are kept: `0.3890` and `0.389` compare equal but carry
//! four and three significant digits respectively.
//!
//! All arithmetic here is integer arithmetic on digit vectors.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Exponents outside this range are rejected by the parser.
pub const MAX_EXPONENT: i32 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// Rounding direction for [`ExactDecimal::round_directed`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rounding {
    /// Toward −∞.
    Floor,
    /// Toward +∞.
    Ceiling,
}

#[derive(Clone, Debug)]
pub struct ExactDecimal {
    sign: Sign,
    /// Most significant first. `[0]` only for the canonical zero.
    digits: Vec<u8>,
    exponent: i32,
}

impl ExactDecimal {
    pub fn zero() -> Self {
        ExactDecimal {
            sign: Sign::Positive,
            digits: vec![0],
            exponent: 0,
        }
    }

    /// `10^power` with a single significant digit.
    pub fn pow10(power: i32) -> Self {
        ExactDecimal {
            sign: Sign::Positive,
            digits: vec![1],
            exponent: power + 1,
        }
    }

    /// Builds `sign × 0.digits × 10^exponent`, stripping leading zeros.
    pub fn from_parts(sign: Sign, digits: Vec<u8>, exponent: i32) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::InvalidArgument("empty significand".into()));
        }
        if let Some(d) = digits.iter().find(|&&d| d > 9) {
            return Err(Error::InvalidArgument(format!(
                "{d} is not a decimal digit"
            )));
        }
        Ok(Self::normalized(sign, digits, exponent))
    }

    /// `sign × coefficient × 10^last_place`, where `coefficient` is a
    /// big-endian digit string.
    pub(crate) fn from_coefficient(sign: Sign, coefficient: Vec<u8>, last_place: i32) -> Self {
        let exponent = last_place + coefficient.len() as i32;
        Self::normalized(sign, coefficient, exponent)
    }

    fn normalized(sign: Sign, mut digits: Vec<u8>, mut exponent: i32) -> Self {
        let leading = digits.iter().take_while(|&&d| d == 0).count();
        if leading == digits.len() {
            return Self::zero();
        }
        digits.drain(..leading);
        exponent -= leading as i32;
        ExactDecimal {
            sign,
            digits,
            exponent,
        }
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// `e` in `0.d₁d₂…dₙ × 10^e`.
    pub fn exponent(&self) -> i32 {
        self.exponent
    }

    pub fn significant_digits(&self) -> usize {
        self.digits.len()
    }

    /// Power of ten of the last stored digit, i.e. the ulp exponent.
    pub fn last_place(&self) -> i32 {
        self.exponent - self.digits.len() as i32
    }

    pub fn is_zero(&self) -> bool {
        self.digits == [0]
    }

    pub fn is_negative(&self) -> bool {
        self.sign == Sign::Negative
    }

    /// True when the value has no fractional part.
    pub fn is_integer(&self) -> bool {
        self.is_zero()
            || (self.exponent > 0
                && self
                    .digits
                    .iter()
                    .skip(self.exponent as usize)
                    .all(|&d| d == 0))
    }

    pub fn abs(&self) -> Self {
        ExactDecimal {
            sign: Sign::Positive,
            ..self.clone()
        }
    }

    /// Multiplies by `10^power` without touching the significand.
    pub fn scale_pow10(&self, power: i32) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        ExactDecimal {
            exponent: self.exponent + power,
            ..self.clone()
        }
    }

    /// True when both values share sign, significand and exponent, unlike
    /// `==`, which compares numerically.
    pub fn same_representation(&self, other: &Self) -> bool {
        self.sign == other.sign && self.digits == other.digits && self.exponent == other.exponent
    }

    /// Extends the significand with zeros so that the last digit sits at
    /// `place`. Returns `None` if the value already has digits below `place`
    /// or is zero.
    pub fn pad_to_place(&self, place: i32) -> Option<Self> {
        let last = self.last_place();
        if self.is_zero() || last < place {
            return None;
        }
        let mut digits = self.digits.clone();
        digits.resize(digits.len() + (last - place) as usize, 0);
        Some(ExactDecimal {
            sign: self.sign,
            digits,
            exponent: self.exponent,
        })
    }

    /// Rounds to a multiple of `10^place` in the given direction. Values that
    /// are already multiples are returned unchanged, precision included.
    pub fn round_to_place(&self, place: i32, direction: Rounding) -> Self {
        if self.is_zero() || self.last_place() >= place {
            return self.clone();
        }
        let keep = self.exponent as i64 - place as i64;
        let (mut kept, inexact) = if keep <= 0 {
            (Vec::new(), true)
        } else {
            let keep = keep as usize;
            let dropped = self.digits[keep..].iter().any(|&d| d != 0);
            (self.digits[..keep].to_vec(), dropped)
        };
        let away = inexact
            && matches!(
                (direction, self.sign),
                (Rounding::Ceiling, Sign::Positive) | (Rounding::Floor, Sign::Negative)
            );
        if away {
            increment(&mut kept);
        }
        if kept.is_empty() {
            return Self::zero();
        }
        Self::from_coefficient(self.sign, kept, place)
    }

    /// Rounds to `keep` significant digits in the given direction.
    ///
    /// If rounding up carries into a new leading digit (`0.9999 → 1.000`),
    /// the trailing zero is dropped so that exactly `keep` digits remain.
    ///
    /// # Panics
    ///
    /// Panics if `keep` is zero.
    pub fn round_directed(&self, keep: usize, direction: Rounding) -> Self {
        assert!(keep >= 1, "round_directed needs at least one digit");
        if self.is_zero() || self.digits.len() <= keep {
            return self.clone();
        }
        let place = self.exponent - keep as i32;
        let mut rounded = self.round_to_place(place, direction);
        if rounded.digits.len() > keep {
            debug_assert!(rounded.digits[keep..].iter().all(|&d| d == 0));
            rounded.digits.truncate(keep);
        }
        rounded
    }

    /// Scientific rendering `d[.ddd]e<exp>`, or `0` for zero.
    pub fn to_scientific(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        if self.is_negative() {
            out.push('-');
        }
        push_digits(&mut out, &self.digits[..1]);
        if self.digits.len() > 1 {
            out.push('.');
            push_digits(&mut out, &self.digits[1..]);
        }
        out.push('e');
        out.push_str(&(self.exponent - 1).to_string());
        out
    }

    /// Fixed-point rendering of the magnitude, if it needs no exponent: the
    /// last stored digit must not lie left of the units place.
    pub(crate) fn fixed_magnitude(&self) -> Option<String> {
        let n = self.digits.len() as i32;
        let e = self.exponent;
        if self.is_zero() {
            return Some("0".to_string());
        }
        if e > n {
            return None;
        }
        let mut out = String::new();
        if e <= 0 {
            out.push_str("0.");
            out.extend(std::iter::repeat_n('0', (-e) as usize));
            push_digits(&mut out, &self.digits);
        } else {
            push_digits(&mut out, &self.digits[..e as usize]);
            if e < n {
                out.push('.');
                push_digits(&mut out, &self.digits[e as usize..]);
            }
        }
        Some(out)
    }

    /// Whether [`Display`](fmt::Display) uses fixed-point for this value.
    pub(crate) fn prefers_fixed(&self) -> bool {
        self.is_zero() || (self.exponent <= self.digits.len() as i32 && self.exponent >= -6)
    }

    fn cmp_magnitude(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        self.exponent.cmp(&other.exponent).then_with(|| {
            let len = self.digits.len().max(other.digits.len());
            let a = self.digits.iter().copied().chain(std::iter::repeat(0));
            let b = other.digits.iter().copied().chain(std::iter::repeat(0));
            a.zip(b)
                .take(len)
                .map(|(x, y)| x.cmp(&y))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }

    /// Coefficient digits when the value is written at `place` (which must be
    /// at or below `last_place`).
    fn coefficient_at(&self, place: i32) -> Vec<u8> {
        let mut c = self.digits.clone();
        c.resize(c.len() + (self.last_place() - place) as usize, 0);
        c
    }

    fn add_impl(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let place = self.last_place().min(other.last_place());
        let a = self.coefficient_at(place);
        let b = other.coefficient_at(place);
        if self.sign == other.sign {
            return Self::from_coefficient(self.sign, add_magnitudes(&a, &b), place);
        }
        match self.cmp_magnitude(other) {
            Ordering::Equal => Self::zero(),
            Ordering::Greater => Self::from_coefficient(self.sign, sub_magnitudes(&a, &b), place),
            Ordering::Less => Self::from_coefficient(other.sign, sub_magnitudes(&b, &a), place),
        }
    }
}

fn push_digits(out: &mut String, digits: &[u8]) {
    out.extend(digits.iter().map(|&d| char::from(b'0' + d)));
}

/// Adds one to a big-endian digit string, growing it on carry.
fn increment(digits: &mut Vec<u8>) {
    for d in digits.iter_mut().rev() {
        if *d == 9 {
            *d = 0;
        } else {
            *d += 1;
            return;
        }
    }
    digits.insert(0, 1);
}

fn add_magnitudes(a: &[u8], b: &[u8]) -> Vec<u8> {
    let len = a.len().max(b.len());
    let mut out = Vec::with_capacity(len + 1);
    let mut carry = 0u8;
    let mut ai = a.iter().rev();
    let mut bi = b.iter().rev();
    for _ in 0..len {
        let s = ai.next().unwrap_or(&0) + bi.next().unwrap_or(&0) + carry;
        out.push(s % 10);
        carry = s / 10;
    }
    if carry > 0 {
        out.push(carry);
    }
    out.reverse();
    out
}

/// `a − b` for big-endian magnitudes with `a ≥ b`.
fn sub_magnitudes(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(a.len());
    let mut borrow = 0i8;
    let mut bi = b.iter().rev();
    for &x in a.iter().rev() {
        let mut d = x as i8 - *bi.next().unwrap_or(&0) as i8 - borrow;
        borrow = 0;
        if d < 0 {
            d += 10;
            borrow = 1;
        }
        out.push(d as u8);
    }
    debug_assert_eq!(borrow, 0, "sub_magnitudes requires a >= b");
    out.reverse();
    out
}

impl PartialEq for ExactDecimal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ExactDecimal {}

impl PartialOrd for ExactDecimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactDecimal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.sign, other.sign) {
            // Zero is always positive, so a negative value is nonzero.
            (Sign::Negative, Sign::Positive) => Ordering::Less,
            (Sign::Positive, Sign::Negative) => Ordering::Greater,
            (Sign::Positive, Sign::Positive) => self.cmp_magnitude(other),
            (Sign::Negative, Sign::Negative) => other.cmp_magnitude(self),
        }
    }
}

impl Neg for ExactDecimal {
    type Output = ExactDecimal;

    fn neg(self) -> ExactDecimal {
        -&self
    }
}

impl Neg for &ExactDecimal {
    type Output = ExactDecimal;

    fn neg(self) -> ExactDecimal {
        if self.is_zero() {
            return self.clone();
        }
        ExactDecimal {
            sign: self.sign.flip(),
            ..self.clone()
        }
    }
}

impl Add for &ExactDecimal {
    type Output = ExactDecimal;

    fn add(self, rhs: &ExactDecimal) -> ExactDecimal {
        self.add_impl(rhs)
    }
}

impl Sub for &ExactDecimal {
    type Output = ExactDecimal;

    fn sub(self, rhs: &ExactDecimal) -> ExactDecimal {
        self.add_impl(&-rhs)
    }
}

impl Add for ExactDecimal {
    type Output = ExactDecimal;

    fn add(self, rhs: ExactDecimal) -> ExactDecimal {
        self.add_impl(&rhs)
    }
}

impl Sub for ExactDecimal {
    type Output = ExactDecimal;

    fn sub(self, rhs: ExactDecimal) -> ExactDecimal {
        &self - &rhs
    }
}

impl fmt::Display for ExactDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.prefers_fixed() {
            return f.write_str(&self.to_scientific());
        }
        if self.is_negative() {
            f.write_str("-")?;
        }
        // prefers_fixed implies fixed_magnitude succeeds
        f.write_str(&self.fixed_magnitude().unwrap_or_default())
    }
}

impl Serialize for ExactDecimal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A numeral as written: its exact value plus the facts about the text that
/// the value alone forgets.
#[derive(Clone, Debug)]
pub struct Numeral {
    pub value: ExactDecimal,
    /// Power of ten of the last written digit (`-3` for `1.234`, `2` for `1e2`).
    pub last_place: i32,
    /// Significant digits as written; leading zeros excluded, at least one.
    pub precision: usize,
    pub explicit_plus: bool,
    pub exponent: Option<i32>,
}

impl Numeral {
    /// Parses `[sign] (digits ["." [digits]] | "." digits) [("e"|"E") [sign] digits]`.
    pub fn parse(text: &str) -> Result<Numeral> {
        let bad = |reason: &str| Error::syntax(text, reason);
        let bytes = text.as_bytes();
        let mut pos = 0;
        let mut sign = Sign::Positive;
        let mut explicit_plus = false;
        match bytes.first() {
            Some(b'+') => {
                explicit_plus = true;
                pos = 1;
            }
            Some(b'-') => {
                sign = Sign::Negative;
                pos = 1;
            }
            _ => {}
        }
        let mut digits = Vec::new();
        let mut int_len = 0usize;
        let mut seen_point = false;
        while pos < bytes.len() {
            match bytes[pos] {
                c @ b'0'..=b'9' => {
                    digits.push(c - b'0');
                    if !seen_point {
                        int_len += 1;
                    }
                }
                b'.' if !seen_point => seen_point = true,
                b'e' | b'E' => break,
                _ => return Err(bad("unexpected character in numeral")),
            }
            pos += 1;
        }
        if digits.is_empty() {
            return Err(bad("numeral has no digits"));
        }
        let exponent = if pos < bytes.len() {
            let exp_text = &text[pos + 1..];
            let body = exp_text.strip_prefix(['+', '-']).unwrap_or(exp_text);
            if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad("malformed exponent"));
            }
            let e: i32 = exp_text
                .parse()
                .ok()
                .filter(|e: &i32| e.abs() <= MAX_EXPONENT)
                .ok_or_else(|| bad("exponent out of range"))?;
            Some(e)
        } else {
            None
        };
        let scale = exponent.unwrap_or(0);
        let frac_len = digits.len() - int_len;
        let last_place = scale - frac_len as i32;
        let precision = digits.iter().skip_while(|&&d| d == 0).count().max(1);
        let value = ExactDecimal::from_coefficient(sign, digits, last_place);
        Ok(Numeral {
            value,
            last_place,
            precision,
            explicit_plus,
            exponent,
        })
    }
}

impl FromStr for ExactDecimal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Numeral::parse(s).map(|n| n.value)
    }
}
