//! Interval rewriting: factoring out common leading digits, inflation to
//! shorter bounds, and the notation recommendation built on both.

use crate::decimal::{ExactDecimal, Rounding, Sign};
use crate::error::{Error, Result};
use crate::interval::DecimalInterval;
use crate::notation::{self, KindSet, NotationKind, ParsedInterval};

/// An interval split into the leading significand digits both bounds share
/// and the two tails that differ.
///
/// The bounds reassemble as
/// `lo = sign × 0.(prefix ‖ lo_tail) × 10^exponent` and
/// `hi = hi_sign × 0.(prefix ‖ hi_tail) × 10^(exponent + hi_shift)`.
/// A non-empty prefix implies equal signs and `hi_shift == 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredForm {
    pub sign: Sign,
    pub prefix: Vec<u8>,
    pub lo_tail: Vec<u8>,
    pub hi_tail: Vec<u8>,
    pub exponent: i32,
    pub hi_sign: Sign,
    pub hi_shift: i32,
}

impl FactoredForm {
    /// No shared digits: bounds of different sign or magnitude, or a zero bound.
    pub fn is_degenerate(&self) -> bool {
        self.prefix.is_empty()
    }

    pub fn longest_tail(&self) -> usize {
        self.lo_tail.len().max(self.hi_tail.len())
    }

    pub fn reassemble(&self) -> Result<DecimalInterval> {
        let join = |tail: &[u8]| [self.prefix.as_slice(), tail].concat();
        let lo = ExactDecimal::from_parts(self.sign, join(&self.lo_tail), self.exponent)?;
        let hi = ExactDecimal::from_parts(
            self.hi_sign,
            join(&self.hi_tail),
            self.exponent + self.hi_shift,
        )?;
        DecimalInterval::new(lo, hi)
    }
}

/// Extracts the maximal common significand prefix of the two bounds.
///
/// Bounds whose normalized exponents differ share no prefix: the upper
/// tail then carries `hi`'s whole significand and `hi_shift` its relative
/// scale.
pub fn factor(interval: &DecimalInterval) -> FactoredForm {
    let (lo, hi) = (interval.lo(), interval.hi());
    let shareable =
        !lo.is_zero() && !hi.is_zero() && lo.sign() == hi.sign() && lo.exponent() == hi.exponent();
    let common = if shareable {
        lo.digits()
            .iter()
            .zip(hi.digits())
            .take_while(|(a, b)| a == b)
            .count()
    } else {
        0
    };
    FactoredForm {
        sign: lo.sign(),
        prefix: lo.digits()[..common].to_vec(),
        lo_tail: lo.digits()[common..].to_vec(),
        hi_tail: hi.digits()[common..].to_vec(),
        exponent: lo.exponent(),
        hi_sign: hi.sign(),
        hi_shift: hi.exponent() - lo.exponent(),
    }
}

/// Drops one significant digit from a bound, rounding outward.
///
/// A zero bound stays zero. A single-digit fraction rounds to the next
/// coarser decimal place (`0.3 → 0` or `1`); a single-digit integer cannot
/// be shortened.
fn drop_digit(x: &ExactDecimal, direction: Rounding) -> Result<ExactDecimal> {
    if x.is_zero() {
        return Ok(x.clone());
    }
    let n = x.significant_digits();
    if n >= 2 {
        Ok(x.round_directed(n - 1, direction))
    } else if x.is_integer() {
        Err(Error::Terminal { bound: x.clone() })
    } else {
        Ok(x.round_to_place(x.exponent(), direction))
    }
}

/// The smallest interval containing `interval` whose bounds each have one
/// significant digit fewer.
pub fn inflate(interval: &DecimalInterval) -> Result<DecimalInterval> {
    if interval.lo().is_zero() && interval.hi().is_zero() {
        return Err(Error::Terminal {
            bound: interval.lo().clone(),
        });
    }
    let lo = drop_digit(interval.lo(), Rounding::Floor)?;
    let hi = drop_digit(interval.hi(), Rounding::Ceiling)?;
    DecimalInterval::new(lo, hi)
}

/// Inflates until no bracket tail of the factored form is longer than
/// `max_tail` digits. When the tails differ in length only the bound with
/// the longer tail is rounded.
pub fn shorten_to(interval: &DecimalInterval, max_tail: usize) -> Result<DecimalInterval> {
    if max_tail == 0 {
        return Err(Error::InvalidArgument(
            "bracket digit count must be at least 1".into(),
        ));
    }
    let mut current = interval.clone();
    loop {
        let form = factor(&current);
        let (lo_len, hi_len) = (form.lo_tail.len(), form.hi_tail.len());
        if lo_len.max(hi_len) <= max_tail {
            return Ok(current);
        }
        current = match lo_len.cmp(&hi_len) {
            std::cmp::Ordering::Greater => DecimalInterval::new(
                drop_digit(current.lo(), Rounding::Floor)?,
                current.hi().clone(),
            )?,
            std::cmp::Ordering::Less => DecimalInterval::new(
                current.lo().clone(),
                drop_digit(current.hi(), Rounding::Ceiling)?,
            )?,
            std::cmp::Ordering::Equal => inflate(&current)?,
        };
    }
}

/// `hi` is exactly one unit in the last place of `lo` above it.
fn is_adjacent_pair(interval: &DecimalInterval) -> bool {
    let (lo, hi) = (interval.lo(), interval.hi());
    let place = if lo.is_zero() {
        hi.last_place()
    } else {
        lo.last_place()
    };
    &(lo + &ExactDecimal::pow10(place)) == hi
}

/// Shortens to `bracket_digits` bracket digits and picks the notation:
/// plus notation when the result is a pair of adjacent numerals, factored
/// otherwise.
pub fn recommend(
    interval: &DecimalInterval,
    bracket_digits: usize,
) -> Result<(ParsedInterval, NotationKind)> {
    let short = shorten_to(interval, bracket_digits)?;
    let kind = if is_adjacent_pair(&short) {
        NotationKind::Plus
    } else {
        NotationKind::Factored
    };
    let text = notation::render_interval(&short, kind)?;
    let parsed = notation::parse(&text, KindSet::only(kind))?;
    Ok((parsed, kind))
}
