//! Ascending power series of `I_ν` with optional order and argument
//! derivatives, parameterised by `h = ln(x/2)` so that callers can continue
//! the argument off the positive real axis.

use rug::{Complex, Float};

use crate::mpcore::{abs, reciprocal_gamma};
use crate::mpcore::digamma_unchecked;

/// Sum of the series together with the magnitude of its largest term, which
/// bounds the absolute rounding error of the sum.
#[derive(Debug, Clone)]
pub(crate) struct ISeries {
    pub value: Complex,
    /// `∂I_ν/∂ν` at fixed argument.
    pub d_nu: Option<Complex>,
    /// `x · ∂I_ν/∂x`.
    pub x_d_x: Option<Complex>,
    pub scale: Float,
}

#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Want {
    pub d_nu: bool,
    pub d_x: bool,
}

impl Want {
    pub const VALUE: Want = Want {
        d_nu: false,
        d_x: false,
    };
    pub const D_NU: Want = Want {
        d_nu: true,
        d_x: false,
    };
    pub const D_X: Want = Want {
        d_nu: false,
        d_x: true,
    };
}

const MAX_TERMS: usize = 200_000;

/// `Σ_k (x/2)^(ν+2k) / (k! Γ(ν+k+1))` with `h = ln(x/2)`.
///
/// `ν` must not be a negative integer (the leading reciprocal gamma vanishes
/// and the term recurrence divides by zero); callers screen for it.
pub(crate) fn i_series(nu: &Complex, h: &Complex, prec: u32, want: Want) -> ISeries {
    let q = Complex::with_val(prec, h * 2u32).exp();
    let q_abs = abs(&q).to_f64();
    let nu_p1 = Complex::with_val(prec, nu + 1u32);
    let lead = Complex::with_val(prec, nu * h).exp();
    let mut term = lead * reciprocal_gamma(&nu_p1, prec);

    let mut psi = if want.d_nu {
        Some(digamma_unchecked(&nu_p1, prec))
    } else {
        None
    };

    let mut sum = Complex::new(prec);
    let mut d_nu_sum = Complex::new(prec);
    let mut d_x_sum = Complex::new(prec);
    let mut scale = Float::new(prec);
    let eps = Float::with_val(prec, Float::i_exp(1, -(prec as i32)));

    // z_k = ν + k + 1
    let mut z = nu_p1;
    for k in 0..MAX_TERMS {
        sum += &term;
        let mut mag = abs(&term);
        if let Some(psi_k) = &psi {
            let factor = Complex::with_val(prec, h - psi_k);
            let dt = Complex::with_val(prec, &term * &factor);
            let dm = abs(&dt);
            if dm > mag {
                mag = dm;
            }
            d_nu_sum += dt;
        }
        if want.d_x {
            let weight = Complex::with_val(prec, nu + (2 * k) as u64);
            let dt = Complex::with_val(prec, &term * &weight);
            let dm = abs(&dt);
            if dm > mag {
                mag = dm;
            }
            d_x_sum += dt;
        }
        if mag > scale {
            scale = mag.clone();
        }

        let zk_abs = abs(&z).to_f64();
        let ratio = q_abs / ((k as f64 + 1.0) * zk_abs);
        if ratio < 0.5 && k > 2 && mag <= Float::with_val(prec, &scale * &eps) {
            break;
        }

        let mut step = Complex::with_val(prec, &q / &z);
        step /= (k + 1) as u64;
        if let Some(psi_k) = psi.as_mut() {
            *psi_k += Complex::with_val(prec, z.recip_ref());
        }
        term *= step;
        z += 1u32;
    }

    ISeries {
        value: sum,
        d_nu: want.d_nu.then_some(d_nu_sum),
        x_d_x: want.d_x.then_some(d_x_sum),
        scale,
    }
}

/// `ln(x/2)` for real positive `x`, as a complex number.
pub(crate) fn half_log(x: &Float, prec: u32) -> Complex {
    let h = Float::with_val(prec, x / 2u32).ln();
    Complex::with_val(prec, (h, 0))
}
