//! Strategies and property checks shared by the property and acceptance
//! suites.

#![allow(dead_code)]

use ivfmt_core::info::{info_content, information_loss};
use ivfmt_core::notation::{self, KindSet};
use ivfmt_core::transform::{factor, inflate, recommend, shorten_to};
use ivfmt_core::{DecimalInterval, Error, ExactDecimal, NotationKind, Rounding, Sign};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub type Check = Result<(), TestCaseError>;

pub fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Positive), Just(Sign::Negative)]
}

/// Nonzero decimals with up to `max_digits` significant digits.
pub fn nonzero_decimal(
    max_digits: usize,
    exponents: std::ops::Range<i32>,
) -> impl Strategy<Value = ExactDecimal> {
    (
        sign(),
        1..=9u8,
        prop::collection::vec(0..=9u8, 0..max_digits),
        exponents,
    )
        .prop_map(|(s, lead, rest, e)| {
            let mut digits = vec![lead];
            digits.extend(rest);
            ExactDecimal::from_parts(s, digits, e).unwrap()
        })
}

pub fn decimal() -> impl Strategy<Value = ExactDecimal> {
    prop_oneof![
        1 => Just(ExactDecimal::zero()),
        20 => nonzero_decimal(24, -15..15),
    ]
}

pub fn interval() -> impl Strategy<Value = DecimalInterval> {
    (decimal(), decimal()).prop_map(|(a, b)| {
        if a <= b {
            DecimalInterval::new(a, b).unwrap()
        } else {
            DecimalInterval::new(b, a).unwrap()
        }
    })
}

/// Intervals whose bounds share a long prefix, as produced by computation.
pub fn narrow_interval() -> impl Strategy<Value = DecimalInterval> {
    (
        1..=9u8,
        prop::collection::vec(0..=9u8, 0..8),
        prop::collection::vec(0..=9u8, 1..10),
        prop::collection::vec(0..=9u8, 1..10),
        -6..6i32,
        any::<bool>(),
    )
        .prop_map(|(lead, prefix, a, b, e, negative)| {
            let sign = if negative {
                Sign::Negative
            } else {
                Sign::Positive
            };
            let bound = |tail: &[u8]| {
                let mut d = vec![lead];
                d.extend_from_slice(&prefix);
                d.extend_from_slice(tail);
                ExactDecimal::from_parts(sign, d, e).unwrap()
            };
            let (x, y) = (bound(&a), bound(&b));
            if x <= y {
                DecimalInterval::new(x, y).unwrap()
            } else {
                DecimalInterval::new(y, x).unwrap()
            }
        })
}

/// Narrow intervals whose bounds end at the same place.
pub fn equal_place_interval() -> impl Strategy<Value = DecimalInterval> {
    (
        1..=9u8,
        prop::collection::vec(0..=9u8, 0..6),
        1..8usize,
        any::<u64>(),
        any::<u64>(),
        -4..4i32,
    )
        .prop_map(|(lead, prefix, len, a, b, e)| {
            let tail = |seed: u64| -> Vec<u8> {
                (0..len).map(|i| ((seed >> (4 * i)) % 10) as u8).collect()
            };
            let bound = |t: Vec<u8>| {
                let mut d = vec![lead];
                d.extend_from_slice(&prefix);
                d.extend(t);
                ExactDecimal::from_parts(Sign::Positive, d, e).unwrap()
            };
            let (x, y) = (bound(tail(a)), bound(tail(b)));
            if x <= y {
                DecimalInterval::new(x, y).unwrap()
            } else {
                DecimalInterval::new(y, x).unwrap()
            }
        })
}

pub fn any_interval() -> impl Strategy<Value = DecimalInterval> {
    prop_oneof![interval(), narrow_interval()]
}

/// `±coefficient × 10^place`.
fn to_big(x: &ExactDecimal) -> (BigInt, i32) {
    let mut c = BigInt::from(0);
    for &d in x.digits() {
        c = c * 10 + d;
    }
    if x.is_negative() {
        c = -c;
    }
    (c, x.last_place())
}

fn align((c, p): (BigInt, i32), place: i32) -> BigInt {
    c * BigInt::from(10).pow((p - place) as u32)
}

fn big_eq(a: (BigInt, i32), b: (BigInt, i32)) -> bool {
    let place = a.1.min(b.1);
    align(a, place) == align(b, place)
}

/// `a − b` and `a + b` agree with integer arithmetic on aligned
/// coefficients, and comparison agrees with the sign of the difference.
pub fn subtraction_matches_oracle(a: &ExactDecimal, b: &ExactDecimal) -> Check {
    let (ba, bb) = (to_big(a), to_big(b));
    let place = ba.1.min(bb.1);
    let (ia, ib) = (align(ba, place), align(bb, place));
    let diff = (&ia - &ib, place);
    let sum = (&ia + &ib, place);
    prop_assert!(
        big_eq(to_big(&(a - b)), diff.clone()),
        "{a} - {b} = {}",
        a - b
    );
    prop_assert!(big_eq(to_big(&(a + b)), sum), "{a} + {b} = {}", a + b);
    prop_assert_eq!(a.cmp(b), ia.cmp(&ib));
    prop_assert_eq!((a - b).is_zero(), a == b);
    Ok(())
}

/// Directed rounding to `keep` digits brackets the input, is idempotent and
/// the two directions are at most one unit apart.
pub fn rounding_brackets(x: &ExactDecimal, keep: usize) -> Check {
    let down = x.round_directed(keep, Rounding::Floor);
    let up = x.round_directed(keep, Rounding::Ceiling);
    prop_assert!(&down <= x && x <= &up, "{down} <= {x} <= {up}");
    prop_assert!(down.significant_digits() <= keep);
    prop_assert!(up.significant_digits() <= keep);
    prop_assert!(down
        .round_directed(keep, Rounding::Floor)
        .same_representation(&down));
    prop_assert!(up
        .round_directed(keep, Rounding::Ceiling)
        .same_representation(&up));
    let gap = &up - &down;
    if x.significant_digits() > keep {
        let unit = ExactDecimal::pow10(x.exponent() - keep as i32);
        prop_assert!(gap.is_zero() || gap == unit, "gap {gap} for {x} at {keep}");
        prop_assert!((x - &down) < unit && (&up - x) < unit);
    } else {
        prop_assert!(down.same_representation(x) && up.same_representation(x));
    }
    Ok(())
}

/// Inflation contains its input, drops a digit where it can, and is the
/// tightest such interval.
pub fn inflation_contains_and_is_minimal(i: &DecimalInterval) -> Check {
    let j = match inflate(i) {
        Ok(j) => j,
        Err(Error::Terminal { .. }) => return Ok(()),
        Err(e) => return Err(TestCaseError::fail(e.to_string())),
    };
    prop_assert!(j.contains(i), "{j} does not contain {i}");
    prop_assert!(information_loss(i, &j) >= 0.0);
    // the place each bound was rounded at
    let coarse = [i.lo(), i.hi()]
        .into_iter()
        .filter(|b| !b.is_zero())
        .map(|b| b.exponent() - (b.significant_digits() as i32 - 1).max(0))
        .max();
    if let Some(place) = coarse {
        let growth = &j.width() - &i.width();
        let two_units = &ExactDecimal::pow10(place) + &ExactDecimal::pow10(place);
        prop_assert!(growth < two_units, "{i} -> {j} grows by {growth}");
    }
    for (before, after, dir) in [
        (i.lo(), j.lo(), Rounding::Floor),
        (i.hi(), j.hi(), Rounding::Ceiling),
    ] {
        let n = before.significant_digits();
        if before.is_zero() {
            prop_assert!(after.is_zero());
        } else if n >= 2 {
            prop_assert!(after.significant_digits() < n);
            let unit = ExactDecimal::pow10(before.exponent() - (n as i32 - 1));
            let slack = match dir {
                Rounding::Floor => before - after,
                Rounding::Ceiling => after - before,
            };
            prop_assert!(slack < unit, "{before} -> {after} is not tight");
        }
    }
    Ok(())
}

pub fn shortening_contains(i: &DecimalInterval, max_tail: usize) -> Check {
    match shorten_to(i, max_tail) {
        Ok(s) => {
            prop_assert!(s.contains(i), "{s} does not contain {i}");
            let f = factor(&s);
            prop_assert!(
                f.longest_tail() <= max_tail,
                "{s} keeps {} digits",
                f.longest_tail()
            );
        }
        Err(Error::Terminal { .. }) => {}
        Err(e) => return Err(TestCaseError::fail(e.to_string())),
    }
    match recommend(i, max_tail) {
        Ok((p, kind)) => {
            prop_assert!(p.interval.contains(i));
            prop_assert_eq!(p.kind, kind);
        }
        Err(Error::Terminal { .. }) => {}
        Err(e) => return Err(TestCaseError::fail(e.to_string())),
    }
    Ok(())
}

/// Widening an interval never increases its information content.
pub fn info_is_antitone(i: &DecimalInterval, below: &ExactDecimal, above: &ExactDecimal) -> Check {
    let outer = DecimalInterval::new(i.lo() - &below.abs(), i.hi() + &above.abs()).unwrap();
    let (a, b) = (info_content(i).value, info_content(&outer).value);
    prop_assert!(b <= a, "info {b} of {outer} exceeds {a} of {i}");
    Ok(())
}

/// Parsing the rendering of an interval gives the interval back, for every
/// notation that can express it.
pub fn render_parse_round_trip(i: &DecimalInterval) -> Check {
    for kind in NotationKind::ALL {
        let text = match notation::render_interval(i, kind) {
            Ok(t) => t,
            Err(Error::NotRepresentable { .. }) => {
                prop_assert!(
                    !matches!(
                        kind,
                        NotationKind::Classic | NotationKind::Factored | NotationKind::Error
                    ),
                    "{kind} must always render"
                );
                continue;
            }
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let back = notation::parse(&text, KindSet::only(kind))
            .map_err(|e| TestCaseError::fail(format!("{kind} {text:?}: {e}")))?;
        prop_assert_eq!(&back.interval, i, "{} {:?}", kind, text);
        if matches!(kind, NotationKind::Classic | NotationKind::Factored) {
            prop_assert!(
                back.interval.same_representation(i),
                "{kind} {text:?} lost precision"
            );
        }
    }
    Ok(())
}

/// Text in one of the centered notations, built from a numeral.
pub fn centered_text() -> impl Strategy<Value = (NotationKind, String)> {
    let numeral = (
        any::<bool>(),
        0..1000u32,
        prop::collection::vec(0..=9u8, 0..6),
    )
        .prop_map(|(neg, int, frac)| {
            let mut s = String::new();
            if neg {
                s.push('-');
            }
            s.push_str(&int.to_string());
            if !frac.is_empty() {
                s.push('.');
                s.extend(frac.iter().map(|&d| char::from(b'0' + d)));
            }
            s
        });
    let kind = prop_oneof![
        Just(NotationKind::Range),
        Just(NotationKind::Tilde),
        Just(NotationKind::Plus),
        Just(NotationKind::Star),
        Just(NotationKind::Error),
    ];
    (kind, numeral, 0..50u32, -3..=0i32, 0..4u32).prop_map(|(kind, c, count, e, span)| {
        let text = match kind {
            NotationKind::Range => format!("{c}±{count}"),
            NotationKind::Tilde => format!("{c}~"),
            NotationKind::Plus => format!("{c}+"),
            NotationKind::Star => format!("{c}*"),
            _ => format!("{c}+[-{count}e{e},{span}e{e}]"),
        };
        (kind, text)
    })
}

/// Rendering a parsed centered interval in its own notation and parsing
/// the result reproduces the interval.
pub fn centered_round_trip(kind: NotationKind, text: &str) -> Check {
    let p = notation::parse(text, KindSet::only(kind))
        .map_err(|e| TestCaseError::fail(format!("{text:?}: {e}")))?;
    let rendered = notation::render(&p, kind)
        .map_err(|e| TestCaseError::fail(format!("{text:?} -> {kind}: {e}")))?;
    let back = notation::parse(&rendered, KindSet::only(kind))
        .map_err(|e| TestCaseError::fail(format!("{rendered:?}: {e}")))?;
    prop_assert_eq!(&back.interval, &p.interval, "{:?} -> {:?}", text, rendered);
    Ok(())
}
