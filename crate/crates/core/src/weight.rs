//! Exact fixed-point weights.
//!
//! Cell weights carry at most three fractional digits. Edge weights are the
//! mean of two cell weights and decomposition sub-cells carry a quarter of
//! their parent's weight, so every quantity the planner touches is an integer
//! multiple of 1/4000. Storing that integer keeps sums, comparisons and ties
//! exact.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Sub};

use serde::{Deserialize, Serialize};

/// A non-negative weight stored as an integer count of 1/4000 units.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(u64);

impl Weight {
    /// Ticks per unit weight.
    pub const SCALE: u64 = 4000;
    pub const ZERO: Weight = Weight(0);
    pub const ONE: Weight = Weight(Self::SCALE);

    pub const fn from_ticks(ticks: u64) -> Self {
        Weight(ticks)
    }

    /// Weight from thousandths, e.g. `from_milli(1500)` is 1.5.
    pub const fn from_milli(milli: u64) -> Self {
        Weight(milli * 4)
    }

    pub const fn ticks(self) -> u64 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / Self::SCALE as f64
    }

    /// Mean of two weights. Exact whenever both are whole thousandths.
    pub fn midpoint(a: Weight, b: Weight) -> Weight {
        Weight((a.0 + b.0) / 2)
    }

    /// One quarter of a weight. Exact whenever it is whole thousandths.
    pub fn quarter(self) -> Weight {
        Weight(self.0 / 4)
    }

    /// Parses a positive decimal with at most three fractional digits.
    pub fn parse_decimal(text: &str) -> Option<Weight> {
        let (int_part, frac_part) = match text.split_once('.') {
            Some((i, f)) => (i, f),
            None => (text, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        if frac_part.len() > 3
            || !int_part.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return None;
        }
        let whole: u64 = if int_part.is_empty() { 0 } else { int_part.parse().ok()? };
        let mut frac: u64 = if frac_part.is_empty() { 0 } else { frac_part.parse().ok()? };
        for _ in frac_part.len()..3 {
            frac *= 10;
        }
        let milli = whole.checked_mul(1000)?.checked_add(frac)?;
        if milli == 0 {
            return None;
        }
        Some(Weight::from_milli(milli))
    }
}

impl fmt::Display for Weight {
    /// Shortest exact decimal form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let whole = self.0 / Self::SCALE;
        // 4000 = 2^5 * 5^3, so five decimal digits always suffice.
        let mut frac = (self.0 % Self::SCALE) * 100_000 / Self::SCALE;
        if frac == 0 {
            return write!(f, "{whole}");
        }
        let mut digits = 5;
        while frac.is_multiple_of(10) {
            frac /= 10;
            digits -= 1;
        }
        write!(f, "{whole}.{frac:0digits$}")
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        Weight(self.0 + rhs.0)
    }
}

impl AddAssign for Weight {
    fn add_assign(&mut self, rhs: Weight) {
        self.0 += rhs.0;
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        Weight(self.0 - rhs.0)
    }
}

impl Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::ZERO, Add::add)
    }
}

impl<'a> Sum<&'a Weight> for Weight {
    fn sum<I: Iterator<Item = &'a Weight>>(iter: I) -> Weight {
        iter.copied().sum()
    }
}
