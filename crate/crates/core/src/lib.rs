//! Exact decimal intervals: the eight interval notations, factoring,
//! inflation toward shorter numerals, and the information each digit of a
//! bound carries.
//!
//! ```
//! use ivfmt_core::{notation, transform, NotationKind};
//!
//! let p = notation::parse("0.389015[282749894,960538227]", notation::KindSet::DEFAULT).unwrap();
//! let short = transform::shorten_to(&p.interval, 2).unwrap();
//! assert_eq!(notation::render_interval(&short, NotationKind::Factored).unwrap(), "0.389015[28,97]");
//! ```

pub mod decimal;
pub mod error;
pub mod info;
pub mod interval;
pub mod notation;
pub mod stochastic;
pub mod transform;

pub use decimal::{ExactDecimal, Numeral, Rounding, Sign};
pub use error::{Error, Result};
pub use info::{EfficiencyReport, InflationTraceRow, InfoContent};
pub use interval::DecimalInterval;
pub use notation::{KindSet, NotationKind, ParsedInterval};
pub use stochastic::{SimulationConfig, SimulationReport};
pub use transform::FactoredForm;
