//! Information content of interval statements.
//!
//! Knowing that `x ∈ [a, b]`, with `x` uniform on the unit interval a
//! priori, is worth `−log₁₀(b − a)` decimal units of information. Widths are
//! computed exactly; only the final logarithm of the leading digits is done
//! in floating point.

use serde::Serialize;
use serde_json::{json, Value};

use crate::decimal::ExactDecimal;
use crate::error::{Error, Result};
use crate::interval::DecimalInterval;
use crate::transform;

/// Bits per decimal unit of information, `log₂ 10`.
pub const BITS_PER_DECIMAL_UNIT: f64 = std::f64::consts::LOG2_10;

/// Default precision (decimal places) for printed information values.
pub const DEFAULT_PRECISION: usize = 9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InfoContent {
    /// Decimal units; `f64::INFINITY` for a zero-width interval.
    pub value: f64,
    pub width: ExactDecimal,
}

impl InfoContent {
    pub fn is_infinite(&self) -> bool {
        self.value.is_infinite()
    }

    pub fn bits(&self) -> f64 {
        self.value * BITS_PER_DECIMAL_UNIT
    }
}

/// `(m, e)` with `|x| = m × 10^e` and `m ∈ [1, 10)`; `x` must be nonzero.
pub(crate) fn scientific_parts(x: &ExactDecimal) -> (f64, i32) {
    let digits = x.digits();
    let head: String = digits
        .iter()
        .take(17)
        .map(|&d| char::from(b'0' + d))
        .collect();
    // A string of at most 17 digits with one point always parses.
    let m: f64 = format!("{}.{}", &head[..1], &head[1..])
        .parse()
        .unwrap_or(1.0);
    (m, x.exponent() - 1)
}

/// `log₁₀|x|` for nonzero `x`.
pub fn log10_abs(x: &ExactDecimal) -> f64 {
    let (m, e) = scientific_parts(x);
    e as f64 + m.log10()
}

pub fn info_content(interval: &DecimalInterval) -> InfoContent {
    let width = interval.width();
    let value = if width.is_zero() {
        f64::INFINITY
    } else {
        0.0 - log10_abs(&width)
    };
    InfoContent { value, width }
}

/// Information lost by replacing `before` with `after`,
/// `log₁₀(w_after / w_before)`, evaluated from the exact width increase so
/// that tiny losses keep their relative precision.
pub fn information_loss(before: &DecimalInterval, after: &DecimalInterval) -> f64 {
    let (w0, w1) = (before.width(), after.width());
    if w0.is_zero() {
        return if w1.is_zero() { 0.0 } else { f64::INFINITY };
    }
    let growth = &w1 - &w0;
    if growth.is_zero() {
        return 0.0;
    }
    let (mg, eg) = scientific_parts(&growth);
    let (m0, e0) = scientific_parts(&w0);
    let sign = if growth.is_negative() { -1.0 } else { 1.0 };
    let ratio = sign * (mg / m0) * 10f64.powi(eg - e0);
    ratio.ln_1p() / std::f64::consts::LN_10
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InflationTraceRow {
    pub step: usize,
    pub lo: ExactDecimal,
    pub hi: ExactDecimal,
    pub info: InfoContent,
    /// Information lost relative to the previous row; `None` for step 0.
    pub loss: Option<f64>,
}

impl InflationTraceRow {
    pub fn interval(&self) -> DecimalInterval {
        DecimalInterval::new(self.lo.clone(), self.hi.clone()).expect("trace rows are ordered")
    }
}

/// Applies inflation until no further step is defined. Row 0 is the input.
pub fn inflation_trace(interval: &DecimalInterval) -> Vec<InflationTraceRow> {
    let row = |step, i: &DecimalInterval, loss| InflationTraceRow {
        step,
        lo: i.lo().clone(),
        hi: i.hi().clone(),
        info: info_content(i),
        loss,
    };
    let mut rows = vec![row(0, interval, None)];
    let mut current = interval.clone();
    while let Ok(next) = transform::inflate(&current) {
        let loss = information_loss(&current, &next);
        rows.push(row(rows.len(), &next, Some(loss)));
        current = next;
    }
    rows
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DigitEfficiency {
    /// Trace row whose last digits are measured.
    pub row: usize,
    /// Loss incurred by dropping those digits.
    pub loss: f64,
    /// `loss` clamped to `[0, 1]`.
    pub efficiency: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EfficiencyReport {
    pub threshold: f64,
    pub digits: Vec<DigitEfficiency>,
    /// Row to keep: the longest one whose last digits reach the threshold.
    pub cut_row: usize,
    pub kept: DecimalInterval,
}

/// Efficiency of the last digit pair of each row, and where to cut.
///
/// The last digits of row `r` are worth the loss of step `r + 1`. The cut
/// is the first row whose last digits have efficiency at least
/// `threshold`; if no row qualifies the trace is kept whole (row 0).
pub fn efficiency_report(trace: &[InflationTraceRow], threshold: f64) -> Result<EfficiencyReport> {
    if trace.len() < 2 {
        return Err(Error::InvalidArgument(
            "an efficiency report needs at least two trace rows".into(),
        ));
    }
    let digits: Vec<DigitEfficiency> = trace
        .windows(2)
        .map(|pair| {
            let loss = pair[1].loss.unwrap_or(0.0);
            DigitEfficiency {
                row: pair[0].step,
                loss,
                efficiency: loss.clamp(0.0, 1.0),
            }
        })
        .collect();
    let cut_row = digits
        .iter()
        .position(|d| d.efficiency >= threshold)
        .unwrap_or(0);
    Ok(EfficiencyReport {
        threshold,
        kept: trace[cut_row].interval(),
        digits,
        cut_row,
    })
}

fn format_value(v: f64, precision: usize) -> String {
    if v.is_infinite() {
        "inf".to_string()
    } else {
        format!("{v:.precision$}")
    }
}

pub const TSV_HEADER: &str = "step\tlo\thi\tinfo\tloss";

/// Tab-separated trace with a header line; empty loss for step 0.
pub fn trace_to_tsv(trace: &[InflationTraceRow], precision: usize) -> String {
    let mut out = String::from(TSV_HEADER);
    out.push('\n');
    for r in trace {
        let loss = r
            .loss
            .map(|l| format_value(l, precision))
            .unwrap_or_default();
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            r.step,
            r.lo,
            r.hi,
            format_value(r.info.value, precision),
            loss
        ));
    }
    out
}

fn json_value(v: f64, precision: usize) -> Value {
    if v.is_infinite() {
        return Value::String("inf".into());
    }
    format_value(v, precision)
        .parse::<f64>()
        .ok()
        .and_then(serde_json::Number::from_f64)
        .map_or(Value::Null, Value::Number)
}

/// Trace as a JSON array of `{step, lo, hi, info, loss}` objects.
pub fn trace_to_json(trace: &[InflationTraceRow], precision: usize) -> Value {
    Value::Array(
        trace
            .iter()
            .map(|r| {
                json!({
                    "step": r.step,
                    "lo": r.lo.to_string(),
                    "hi": r.hi.to_string(),
                    "info": json_value(r.info.value, precision),
                    "loss": r.loss.map_or(Value::Null, |l| json_value(l, precision)),
                })
            })
            .collect(),
    )
}
