//! Multiprecision arithmetic contract and the special functions consumed by
//! the Bessel and Riccati–Padé layers.
//!
//! Real and complex numbers are MPFR/MPC values ([`BigReal`], [`BigComplex`]);
//! the precision of every evaluation is dictated by a [`PrecisionContext`].

mod gamma;
mod num;
mod precision;
mod trig;

pub use gamma::{digamma, gamma, ln_gamma, reciprocal_gamma};
pub(crate) use gamma::digamma_unchecked;
pub use num::{
    abs, complex, complex_f64, is_near_integer, log10_abs, nearest_integer, real, relative_distance,
    to_c64,
};
pub use precision::{digits_to_bits, PrecisionContext};
pub(crate) use precision::pow10;
pub use trig::{cos_pi, cot_pi, csc_pi, sin_pi};

/// Arbitrary-precision real number.
pub type BigReal = rug::Float;
/// Arbitrary-precision complex number.
pub type BigComplex = rug::Complex;
