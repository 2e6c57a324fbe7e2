use crate::decimal::{ExactDecimal, Sign};
use crate::error::{Error, Result};
use crate::interval::DecimalInterval;
use crate::transform::factor;

use super::{NotationKind, ParsedInterval};

/// Writes `p` in notation `kind`.
///
/// Fails with [`Error::NotRepresentable`] when the interval is not exactly
/// expressible in `kind`; shorten or inflate it first.
pub fn render(p: &ParsedInterval, kind: NotationKind) -> Result<String> {
    let i = &p.interval;
    let plus = p.explicit_plus;
    let not_representable = |reason: &str| Error::NotRepresentable {
        interval: i.to_string(),
        kind,
        reason: reason.to_string(),
    };
    match kind {
        NotationKind::Classic => Ok(classic(i, plus)),
        NotationKind::Factored => Ok(factored(i, plus)),
        NotationKind::Range => range(p)
            .ok_or_else(|| not_representable("bounds are not c ± k units of c's last place")),
        NotationKind::Tilde => {
            let place = power_of_ten_width(i, 1)
                .ok_or_else(|| not_representable("width is not a power of ten"))?;
            let center = i.lo() + &half_unit(place);
            numeral_at(&center, place, plus)
                .map(|c| format!("{c}~"))
                .ok_or_else(|| not_representable("midpoint needs a finer digit than the width"))
        }
        NotationKind::Plus => {
            let place = power_of_ten_width(i, 1)
                .ok_or_else(|| not_representable("width is not a power of ten"))?;
            numeral_at(i.lo(), place, plus)
                .map(|c| format!("{c}+"))
                .ok_or_else(|| not_representable("lower bound has digits below the width"))
        }
        NotationKind::Star | NotationKind::SingleNumber => {
            let place = power_of_ten_width(i, 2)
                .ok_or_else(|| not_representable("width is not twice a power of ten"))?;
            let center = i.lo() + &ExactDecimal::pow10(place);
            let marker = if kind == NotationKind::Star { "*" } else { "" };
            numeral_at(&center, place, plus)
                .map(|c| format!("{c}{marker}"))
                .ok_or_else(|| not_representable("midpoint has digits below the unit"))
        }
        NotationKind::Error => Ok(error(p)),
    }
}

/// [`render`] for an interval without source metadata.
pub fn render_interval(interval: &DecimalInterval, kind: NotationKind) -> Result<String> {
    render(&ParsedInterval::from_interval(interval.clone(), kind), kind)
}

fn signed(x: &ExactDecimal, plus: bool) -> String {
    if plus && !x.is_negative() {
        format!("+{x}")
    } else {
        x.to_string()
    }
}

fn classic(i: &DecimalInterval, plus: bool) -> String {
    format!("[{},{}]", signed(i.lo(), plus), signed(i.hi(), plus))
}

fn push_digits(out: &mut String, digits: &[u8]) {
    out.extend(digits.iter().map(|&d| char::from(b'0' + d)));
}

/// Factored notation. Falls back to the classic form (which the factored
/// grammar also accepts) when the bounds share no digits.
fn factored(i: &DecimalInterval, plus: bool) -> String {
    let (lo, hi) = (i.lo(), i.hi());
    if lo.is_zero() || hi.is_zero() || lo.sign() != hi.sign() {
        return classic(i, plus);
    }
    let sign = if lo.is_negative() {
        "-"
    } else if plus {
        "+"
    } else {
        ""
    };
    let fixed = lo.prefers_fixed() && hi.prefers_fixed();
    let scale = if fixed { 0 } else { lo.exponent() - 1 };
    let suffix = if scale == 0 {
        String::new()
    } else {
        format!("e{scale}")
    };

    if lo.exponent() != hi.exponent() {
        if fixed {
            return classic(i, plus);
        }
        let a = lo.scale_pow10(-scale).fixed_magnitude();
        let b = hi.scale_pow10(-scale).fixed_magnitude();
        return match (a, b) {
            (Some(a), Some(b)) => format!("[{sign}{a},{sign}{b}]{suffix}"),
            _ => classic(i, plus),
        };
    }

    let form = factor(i);
    if form.lo_tail.is_empty() && form.hi_tail.is_empty() {
        return classic(i, plus);
    }
    // The decimal point sits after `point` significand digits.
    let point = lo.exponent() - scale;
    let shared = form.prefix.len() as i32;
    let mut head = String::from(sign);
    let mut tails = [String::new(), String::new()];
    if point <= 0 {
        head.push_str("0.");
        head.extend(std::iter::repeat_n('0', (-point) as usize));
        push_digits(&mut head, &form.prefix);
        push_digits(&mut tails[0], &form.lo_tail);
        push_digits(&mut tails[1], &form.hi_tail);
    } else if point <= shared {
        let p = point as usize;
        push_digits(&mut head, &form.prefix[..p]);
        head.push('.');
        push_digits(&mut head, &form.prefix[p..]);
        push_digits(&mut tails[0], &form.lo_tail);
        push_digits(&mut tails[1], &form.hi_tail);
    } else {
        push_digits(&mut head, &form.prefix);
        let at = (point - shared) as usize;
        for (out, tail) in tails.iter_mut().zip([&form.lo_tail, &form.hi_tail]) {
            push_digits(out, &tail[..at.min(tail.len())]);
            if tail.len() > at {
                out.push('.');
                push_digits(out, &tail[at..]);
            }
        }
    }
    format!("{head}[{},{}]{suffix}", tails[0], tails[1])
}

/// `Some(L)` when the width is exactly `multiple × 10^L`.
fn power_of_ten_width(i: &DecimalInterval, multiple: u8) -> Option<i32> {
    let w = i.width();
    let (head, rest) = w.digits().split_first()?;
    (*head == multiple && rest.iter().all(|&d| d == 0)).then(|| w.exponent() - 1)
}

/// `5 × 10^(place−1)`.
fn half_unit(place: i32) -> ExactDecimal {
    ExactDecimal::from_parts(Sign::Positive, vec![5], place).expect("decimal digit")
}

/// `x` written with its last digit at `place`, if it has no finer digits.
fn numeral_at(x: &ExactDecimal, place: i32, plus: bool) -> Option<String> {
    if x.is_zero() {
        let plain = match place {
            0 => "0".to_string(),
            p if p < 0 => format!("0.{}", "0".repeat((-p) as usize)),
            p => format!("0e{p}"),
        };
        return Some(if plus { format!("+{plain}") } else { plain });
    }
    let trimmed = x.round_to_place(place, crate::Rounding::Floor);
    if &trimmed != x {
        return None;
    }
    trimmed
        .pad_to_place(place)
        .map(|padded| signed(&padded, plus))
}

fn range(p: &ParsedInterval) -> Option<String> {
    let i = &p.interval;
    let derived = [i.lo(), i.hi()]
        .into_iter()
        .filter(|b| !b.is_zero())
        .map(ExactDecimal::last_place)
        .min()
        .unwrap_or(0);
    let candidates = p.ulp_place.into_iter().chain(std::iter::once(derived));
    for place in candidates {
        let Some(half) = half_width_units(&i.width(), place) else {
            continue;
        };
        let offset = ExactDecimal::from_coefficient(Sign::Positive, half.clone(), place);
        let center = i.lo() + &offset;
        if let Some(c) = numeral_at(&center, place, p.explicit_plus) {
            let count: String = half.iter().map(|&d| char::from(b'0' + d)).collect();
            return Some(format!("{c}±{count}"));
        }
    }
    None
}

/// Half the width counted in units of `10^place`, as integer digits.
fn half_width_units(width: &ExactDecimal, place: i32) -> Option<Vec<u8>> {
    if width.is_zero() {
        return Some(vec![0]);
    }
    let padded = width.pad_to_place(place)?;
    let mut quotient = Vec::with_capacity(padded.digits().len());
    let mut rem = 0u8;
    for &d in padded.digits() {
        let cur = rem * 10 + d;
        quotient.push(cur / 2);
        rem = cur % 2;
    }
    if rem != 0 {
        return None;
    }
    let lead = quotient.iter().take_while(|&&d| d == 0).count();
    quotient.drain(..lead.min(quotient.len() - 1));
    Some(quotient)
}

fn error(p: &ParsedInterval) -> String {
    let i = &p.interval;
    let center = p.center.clone().unwrap_or_else(|| i.lo().clone());
    let below = i.lo() - &center;
    let above = i.hi() - &center;
    format!(
        "{}+[{},{}]",
        signed(&center, p.explicit_plus),
        below.to_scientific(),
        above.to_scientific()
    )
}
