//! One recognizer per notation. Each returns `None` when its grammar does
//! not match and `Some(Err(_))` when it matches but denotes no interval.

use crate::decimal::{ExactDecimal, Numeral};
use crate::error::Result;
use crate::interval::DecimalInterval;

use super::{NotationKind, ParsedInterval};

pub(super) fn try_parse(kind: NotationKind, text: &str) -> Option<Result<ParsedInterval>> {
    match kind {
        NotationKind::Classic => classic(text),
        NotationKind::Factored => factored(text),
        NotationKind::Range => range(text),
        NotationKind::Tilde => tilde(text),
        NotationKind::Plus => plus(text),
        NotationKind::Error => error(text),
        NotationKind::Star => star(text),
        NotationKind::SingleNumber => single(text),
    }
}

fn numeral(text: &str) -> Option<Numeral> {
    Numeral::parse(text).ok()
}

/// `"[" a "," b "]"` with optional inner whitespace, returning `(a, b)`.
fn bracket_pair(text: &str) -> Option<(&str, &str)> {
    let inner = text.strip_prefix('[')?.strip_suffix(']')?;
    let (a, b) = inner.split_once(',')?;
    if b.contains(',') {
        return None;
    }
    Some((a.trim(), b.trim()))
}

/// Power of ten, as a decimal with one significant digit.
fn unit(place: i32) -> ExactDecimal {
    ExactDecimal::pow10(place)
}

fn classic(text: &str) -> Option<Result<ParsedInterval>> {
    let (a, b) = bracket_pair(text)?;
    let (lo, hi) = (numeral(a)?, numeral(b)?);
    Some(bounds(NotationKind::Classic, lo, hi, None))
}

fn bounds(
    kind: NotationKind,
    lo: Numeral,
    hi: Numeral,
    source_exponent: Option<i32>,
) -> Result<ParsedInterval> {
    let explicit_plus = lo.explicit_plus || hi.explicit_plus;
    let precision = lo.precision.max(hi.precision);
    let interval = DecimalInterval::new(lo.value, hi.value)?;
    Ok(ParsedInterval {
        center_precision: Some(precision),
        source_exponent: source_exponent.or(lo.exponent).or(hi.exponent),
        explicit_plus,
        ..ParsedInterval::from_interval(interval, kind)
    })
}

fn is_plain_digits(s: &str) -> bool {
    s.bytes().all(|b| b.is_ascii_digit() || b == b'.')
        && s.bytes().filter(|&b| b == b'.').count() <= 1
}

fn factored(text: &str) -> Option<Result<ParsedInterval>> {
    let open = text.find('[')?;
    let close = text.rfind(']')?;
    if close < open {
        return None;
    }
    let prefix = text[..open].trim_end();
    let (lo_tail, hi_tail) = bracket_pair(&text[open..=close])?;
    let suffix = text[close + 1..].trim_start();
    let scale = if suffix.is_empty() {
        None
    } else {
        let digits = suffix.strip_prefix(['e', 'E'])?;
        let body = digits.strip_prefix(['+', '-']).unwrap_or(digits);
        if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        Some(digits.parse::<i32>().ok()?)
    };

    let body = prefix.strip_prefix(['+', '-']).unwrap_or(prefix);
    if body.is_empty() {
        // No shared digits: the brackets hold whole numerals.
        if scale.is_some() && (lo_tail.contains(['e', 'E']) || hi_tail.contains(['e', 'E'])) {
            return None;
        }
    } else {
        if !is_plain_digits(body) || !is_plain_digits(lo_tail) || !is_plain_digits(hi_tail) {
            return None;
        }
        if body.contains('.') && (lo_tail.contains('.') || hi_tail.contains('.')) {
            return None;
        }
    }
    let lo = numeral(&format!("{prefix}{lo_tail}"))?;
    let hi = numeral(&format!("{prefix}{hi_tail}"))?;
    let (lo, hi) = match scale {
        Some(e) => (rescale(lo, e)?, rescale(hi, e)?),
        None => (lo, hi),
    };
    Some(bounds(NotationKind::Factored, lo, hi, scale))
}

fn rescale(mut n: Numeral, power: i32) -> Option<Numeral> {
    let place = n.last_place.checked_add(power)?;
    if place.abs() > crate::decimal::MAX_EXPONENT {
        return None;
    }
    n.value = n.value.scale_pow10(power);
    n.last_place = place;
    n.exponent = Some(n.exponent.unwrap_or(0) + power);
    Some(n)
}

/// Splits `text` into a center numeral and what follows `suffix`.
fn center_with_suffix<'a>(text: &'a str, suffix: &str) -> Option<(Numeral, &'a str)> {
    let at = text.rfind(suffix)?;
    if at == 0 {
        return None;
    }
    Some((numeral(&text[..at])?, &text[at + suffix.len()..]))
}

fn centered(
    kind: NotationKind,
    center: &Numeral,
    below: &ExactDecimal,
    above: &ExactDecimal,
) -> Result<ParsedInterval> {
    let interval = DecimalInterval::new(&center.value - below, &center.value + above)?;
    Ok(ParsedInterval::centered(interval, kind, center))
}

fn range(text: &str) -> Option<Result<ParsedInterval>> {
    let (center, count) =
        center_with_suffix(text, "±").or_else(|| center_with_suffix(text, "+-"))?;
    if count.is_empty() || !count.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let offset = numeral(count)?.value.scale_pow10(center.last_place);
    Some(centered(NotationKind::Range, &center, &offset, &offset))
}

fn tilde(text: &str) -> Option<Result<ParsedInterval>> {
    let center = numeral(text.strip_suffix('~')?)?;
    let half = ExactDecimal::from_parts(crate::decimal::Sign::Positive, vec![5], center.last_place)
        .expect("valid digit");
    Some(centered(NotationKind::Tilde, &center, &half, &half))
}

fn plus(text: &str) -> Option<Result<ParsedInterval>> {
    let center = numeral(text.strip_suffix('+')?)?;
    let ulp = unit(center.last_place);
    Some(centered(
        NotationKind::Plus,
        &center,
        &ExactDecimal::zero(),
        &ulp,
    ))
}

fn error(text: &str) -> Option<Result<ParsedInterval>> {
    let open = text.find('[')?;
    let head = text[..open].trim_end().strip_suffix('+')?;
    let center = numeral(head)?;
    let (a, b) = bracket_pair(&text[open..])?;
    let (lo_off, hi_off) = (numeral(a)?.value, numeral(b)?.value);
    let interval = DecimalInterval::new(&center.value + &lo_off, &center.value + &hi_off);
    Some(interval.map(|i| ParsedInterval::centered(i, NotationKind::Error, &center)))
}

fn star(text: &str) -> Option<Result<ParsedInterval>> {
    let center = numeral(text.strip_suffix('*')?)?;
    let ulp = unit(center.last_place);
    Some(centered(NotationKind::Star, &center, &ulp, &ulp))
}

fn single(text: &str) -> Option<Result<ParsedInterval>> {
    let center = numeral(text)?;
    let ulp = unit(center.last_place);
    Some(centered(NotationKind::SingleNumber, &center, &ulp, &ulp))
}
