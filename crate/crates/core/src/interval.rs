use std::fmt;

use serde::Serialize;

use crate::decimal::ExactDecimal;
use crate::error::{Error, Result};

/// The closed set `[lo, hi]` with exact decimal bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecimalInterval {
    lo: ExactDecimal,
    hi: ExactDecimal,
}

impl DecimalInterval {
    pub fn new(lo: ExactDecimal, hi: ExactDecimal) -> Result<Self> {
        if lo > hi {
            return Err(Error::EmptyInterval { lo, hi });
        }
        Ok(DecimalInterval { lo, hi })
    }

    pub fn point(x: ExactDecimal) -> Self {
        DecimalInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &ExactDecimal {
        &self.lo
    }

    pub fn hi(&self) -> &ExactDecimal {
        &self.hi
    }

    pub fn width(&self) -> ExactDecimal {
        &self.hi - &self.lo
    }

    pub fn contains(&self, other: &DecimalInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn contains_value(&self, x: &ExactDecimal) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Equal bounds, including precision.
    pub fn same_representation(&self, other: &DecimalInterval) -> bool {
        self.lo.same_representation(&other.lo) && self.hi.same_representation(&other.hi)
    }
}

impl fmt::Display for DecimalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}
