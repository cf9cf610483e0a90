use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Number of mantissa bits needed to carry `digits` decimal digits.
pub fn digits_to_bits(digits: u32) -> u32 {
    (f64::from(digits) * LOG2_10).ceil() as u32 + 4
}

/// Working precision and guard-digit policy for every arbitrary-precision
/// evaluation.
///
/// Results are meant to be correct to `working_digits` decimal digits; all
/// intermediate arithmetic is carried at `working_digits + guard_digits`.
/// `output_digits` is the number of digits the caller wants reported, and
/// sets the Newton stopping tolerance `10^-(output_digits + 5)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    working_digits: u32,
    guard_digits: u32,
    output_digits: u32,
}

impl PrecisionContext {
    pub const MIN_WORKING_DIGITS: u32 = 30;
    pub const MIN_GUARD_DIGITS: u32 = 10;
    /// Cushion between requested output digits and working digits.
    pub const OUTPUT_CUSHION: u32 = 30;

    pub fn new(working_digits: u32, guard_digits: u32) -> Result<Self> {
        if working_digits < Self::MIN_WORKING_DIGITS {
            return Err(Error::WorkingPrecision(working_digits));
        }
        if guard_digits < Self::MIN_GUARD_DIGITS {
            return Err(Error::GuardDigits(guard_digits));
        }
        let output_digits = working_digits
            .saturating_sub(Self::OUTPUT_CUSHION)
            .max(6);
        Ok(Self {
            working_digits,
            guard_digits,
            output_digits,
        })
    }

    /// Default rule for user-facing operations: `working = output + 30 + 2·dimension`
    /// where `dimension` is the Hankel determinant size (0 when not applicable).
    pub fn for_output(output_digits: u32, dimension: u32) -> Self {
        let working = output_digits + Self::OUTPUT_CUSHION + 2 * dimension;
        Self {
            working_digits: working.max(Self::MIN_WORKING_DIGITS),
            guard_digits: Self::MIN_GUARD_DIGITS,
            output_digits,
        }
    }

    pub fn working_digits(&self) -> u32 {
        self.working_digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    pub fn output_digits(&self) -> u32 {
        self.output_digits
    }

    /// Replaces the requested output digit count, keeping the working precision.
    pub fn with_output_digits(mut self, output_digits: u32) -> Self {
        self.output_digits = output_digits;
        self
    }

    /// Same policy with `extra` more working digits.
    pub fn boosted(&self, extra: u32) -> Self {
        Self {
            working_digits: self.working_digits + extra,
            guard_digits: self.guard_digits,
            output_digits: self.output_digits,
        }
    }

    /// Total digits carried in intermediate arithmetic.
    pub fn total_digits(&self) -> u32 {
        self.working_digits + self.guard_digits
    }

    /// MPFR precision (bits) for intermediate arithmetic.
    pub fn prec(&self) -> u32 {
        digits_to_bits(self.total_digits())
    }

    /// MPFR precision (bits) matching the working digits alone.
    pub fn working_prec(&self) -> u32 {
        digits_to_bits(self.working_digits)
    }

    pub fn guard_bits(&self) -> u32 {
        digits_to_bits(self.guard_digits)
    }

    /// `10^-working_digits`, the relative accuracy promised to callers.
    pub fn tolerance(&self) -> Float {
        pow10(-(self.working_digits as i32), self.prec())
    }

    /// `10^-(output_digits + 5)`, the Newton step tolerance.
    pub fn newton_tolerance(&self) -> Float {
        pow10(-(self.output_digits as i32 + 5), self.prec())
    }

    /// `10^-(working_digits - 6)`, the residual certification threshold.
    pub fn residual_tolerance(&self) -> Float {
        pow10(-(self.working_digits as i32 - 6), self.prec())
    }
}

pub(crate) fn pow10(exp: i32, prec: u32) -> Float {
    let ten = Float::with_val(prec, 10);
    ten.pow(exp)
}
