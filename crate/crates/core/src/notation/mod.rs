//! The eight interval notations: grammar, parsing and rendering.
//!
//! Bound numerals are read in mathematical notation: `1.23` denotes exactly
//! 1.23. Notations built around a center numeral (`1.234~`, `1.234+`, …)
//! use the unit in the last place of the center as written.
//!
//! The grammar is documented as EBNF in `docs/grammar.md` at the
//! repository root.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::decimal::{ExactDecimal, Numeral};
use crate::error::{Error, Result};
use crate::interval::DecimalInterval;

mod grammar;
mod render;

pub use render::{render, render_interval};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NotationKind {
    Classic,
    Factored,
    Range,
    Tilde,
    Plus,
    Error,
    Star,
    SingleNumber,
}

impl NotationKind {
    pub const ALL: [NotationKind; 8] = [
        NotationKind::Classic,
        NotationKind::Factored,
        NotationKind::Range,
        NotationKind::Tilde,
        NotationKind::Plus,
        NotationKind::Error,
        NotationKind::Star,
        NotationKind::SingleNumber,
    ];

    /// Order in which `detect` and `parse` try the grammars.
    pub(crate) const PRECEDENCE: [NotationKind; 8] = [
        NotationKind::Classic,
        NotationKind::Factored,
        NotationKind::Error,
        NotationKind::Plus,
        NotationKind::Range,
        NotationKind::Tilde,
        NotationKind::Star,
        NotationKind::SingleNumber,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NotationKind::Classic => "classic",
            NotationKind::Factored => "factored",
            NotationKind::Range => "range",
            NotationKind::Tilde => "tilde",
            NotationKind::Plus => "plus",
            NotationKind::Error => "error",
            NotationKind::Star => "star",
            NotationKind::SingleNumber => "single-number",
        }
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

impl fmt::Display for NotationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NotationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        NotationKind::ALL
            .into_iter()
            .find(|k| k.name() == lower || (lower == "single" && *k == NotationKind::SingleNumber))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown notation `{s}`")))
    }
}

/// A set of notation kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KindSet(u8);

impl KindSet {
    pub const EMPTY: KindSet = KindSet(0);
    pub const ALL: KindSet = KindSet(0xff);
    /// Everything except single-number notation, which must be opted into.
    pub const DEFAULT: KindSet = KindSet(!(1 << NotationKind::SingleNumber as u8));

    pub fn only(kind: NotationKind) -> KindSet {
        KindSet(kind.bit())
    }

    pub fn with(self, kind: NotationKind) -> KindSet {
        KindSet(self.0 | kind.bit())
    }

    pub fn contains(self, kind: NotationKind) -> bool {
        self.0 & kind.bit() != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
}

impl FromIterator<NotationKind> for KindSet {
    fn from_iter<I: IntoIterator<Item = NotationKind>>(iter: I) -> Self {
        iter.into_iter().fold(KindSet::EMPTY, KindSet::with)
    }
}

/// An interval together with how it was written.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParsedInterval {
    pub interval: DecimalInterval,
    pub kind: NotationKind,
    /// Significant digits of the center numeral (or of the most precise
    /// bound for classic and factored input).
    pub center_precision: Option<usize>,
    /// Exponent suffix of the source, if it had one.
    pub source_exponent: Option<i32>,
    /// Center numeral of range, tilde, plus, error, star and single-number
    /// input.
    pub center: Option<ExactDecimal>,
    /// Power of ten of the center's last written digit.
    pub ulp_place: Option<i32>,
    /// The source wrote a leading `+`.
    pub explicit_plus: bool,
}

impl ParsedInterval {
    /// Wraps a bare interval with no source metadata.
    pub fn from_interval(interval: DecimalInterval, kind: NotationKind) -> Self {
        ParsedInterval {
            interval,
            kind,
            center_precision: None,
            source_exponent: None,
            center: None,
            ulp_place: None,
            explicit_plus: false,
        }
    }

    pub(crate) fn centered(
        interval: DecimalInterval,
        kind: NotationKind,
        center: &Numeral,
    ) -> Self {
        ParsedInterval {
            interval,
            kind,
            center_precision: Some(center.precision),
            source_exponent: center.exponent,
            center: Some(center.value.clone()),
            ulp_place: Some(center.last_place),
            explicit_plus: center.explicit_plus,
        }
    }
}

/// Parses `text` in whichever allowed notation matches.
///
/// Surrounding whitespace and whitespace next to brackets and commas is
/// ignored.
pub fn parse(text: &str, allowed: KindSet) -> Result<ParsedInterval> {
    if allowed.is_empty() {
        return Err(Error::InvalidArgument("no notation allowed".into()));
    }
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::syntax(text, "empty input"));
    }
    let mut matched = Vec::new();
    let mut semantic_error = None;
    let mut disallowed = Vec::new();
    for kind in NotationKind::PRECEDENCE {
        let Some(result) = grammar::try_parse(kind, text) else {
            continue;
        };
        if !allowed.contains(kind) {
            disallowed.push(kind);
            continue;
        }
        match result {
            Ok(p) => matched.push(p),
            Err(e) => {
                semantic_error.get_or_insert(e);
            }
        }
    }
    let Some(first) = matched.first() else {
        if let Some(e) = semantic_error {
            return Err(e);
        }
        return Err(match disallowed.as_slice() {
            [] => Error::syntax(text, "no interval notation matches"),
            [NotationKind::SingleNumber] => Error::GatedNotation {
                input: text.to_string(),
            },
            kinds => Error::syntax(
                text,
                format!(
                    "written in {} notation, which is not allowed here",
                    kinds[0]
                ),
            ),
        });
    };
    if matched
        .iter()
        .any(|p| !p.interval.same_representation(&first.interval))
    {
        return Err(Error::Ambiguous {
            input: text.to_string(),
            kinds: matched.iter().map(|p| p.kind).collect(),
        });
    }
    Ok(matched.swap_remove(0))
}

/// The notation `text` is written in, by grammar alone.
pub fn detect(text: &str) -> Result<NotationKind> {
    let text = text.trim();
    NotationKind::PRECEDENCE
        .into_iter()
        .find(|&kind| grammar::try_parse(kind, text).is_some())
        .ok_or_else(|| Error::syntax(text, "no interval notation matches"))
}
