//! Modified Bessel functions `I_ν(x)` and `K_ν(x)` of complex order `ν` and
//! real positive argument `x`.
//!
//! Values come from the ascending series summed at a precision that is raised
//! automatically whenever cancellation (large `|Im ν|`, zeros, `K` from the
//! difference `I_{-ν} - I_ν`) would otherwise eat into the working digits.
//! Order derivatives are obtained term by term, never by differencing.

mod asymptotic;
mod continuation;
pub(crate) mod series;

pub(crate) use series::Want;

pub use asymptotic::{asymptotic_i, asymptotic_k, AsymptoticValue};
pub use continuation::{continue_i, continue_k};
pub(crate) use continuation::phase;

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::mpcore::{abs, cot_pi, csc_pi, digits_to_bits, is_near_integer, PrecisionContext};
use series::{half_log, i_series, ISeries};

fn check_argument(x: &Float) -> Result<()> {
    if !x.is_finite() || *x <= 0 {
        return Err(Error::ArgumentOutOfRange(format!(
            "Bessel argument must be positive, got {}",
            x.to_f64()
        )));
    }
    Ok(())
}

fn integer_tolerance(ctx: &PrecisionContext) -> Float {
    Float::with_val(ctx.prec(), 10).pow(-(ctx.working_digits() as i32))
}

fn check_not_negative_integer(nu: &Complex, ctx: &PrecisionContext) -> Result<()> {
    if let Some(k) = is_near_integer(nu, &integer_tolerance(ctx)) {
        if k < 0 {
            return Err(Error::NegativeIntegerOrder(k.to_i64().unwrap_or(i64::MIN)));
        }
    }
    Ok(())
}

fn check_not_integer(nu: &Complex, ctx: &PrecisionContext) -> Result<()> {
    if is_near_integer(nu, &integer_tolerance(ctx)).is_some() {
        return Err(Error::IntegerOrder(format!("{:.20}", nu)));
    }
    Ok(())
}

/// Bits lost to cancellation when a sum of magnitude `value` is formed from
/// terms as large as `scale`.
pub(crate) fn cancellation_bits(scale: &Float, value: &Float) -> u32 {
    if scale.is_zero() {
        return 0;
    }
    if value.is_zero() {
        return u32::MAX;
    }
    let r = Float::with_val(64, scale / value);
    if r <= 1 {
        0
    } else {
        r.log2().to_f64().ceil() as u32
    }
}

/// Evaluates the `I_ν` series, repeating at higher precision when the result
/// is much smaller than its largest term.
fn i_adaptive(nu: &Complex, x: &Float, ctx: &PrecisionContext, want: Want) -> ISeries {
    let base = ctx.prec() + 16;
    let cap = ctx.prec();
    let s = i_series(nu, &half_log(x, base), base, want);
    let mut lost = cancellation_bits(&s.scale, &abs(&s.value));
    if let Some(d) = &s.d_nu {
        lost = lost.max(cancellation_bits(&s.scale, &abs(d)));
    }
    if lost <= ctx.guard_bits() {
        return s;
    }
    let prec = base + lost.min(cap);
    i_series(nu, &half_log(x, prec), prec, want)
}

fn round_to(z: Complex, ctx: &PrecisionContext) -> Complex {
    Complex::with_val(ctx.prec(), z)
}

/// `I_ν(x)` by its power series.
pub fn bessel_i(nu: &Complex, x: &Float, ctx: &PrecisionContext) -> Result<Complex> {
    check_argument(x)?;
    check_not_negative_integer(nu, ctx)?;
    Ok(round_to(i_adaptive(nu, x, ctx, Want::VALUE).value, ctx))
}

/// `∂I_ν(x)/∂x` by term-wise differentiation.
pub fn bessel_i_dx(nu: &Complex, x: &Float, ctx: &PrecisionContext) -> Result<Complex> {
    check_argument(x)?;
    check_not_negative_integer(nu, ctx)?;
    let s = i_adaptive(nu, x, ctx, Want::D_X);
    let xd = s.x_d_x.expect("requested");
    Ok(round_to(xd / x, ctx))
}

/// Raw `I_ν` series (value, optionally `∂/∂ν`) with its largest-term scale.
pub(crate) fn i_eval(nu: &Complex, x: &Float, ctx: &PrecisionContext, want: Want) -> Result<ISeries> {
    check_argument(x)?;
    check_not_negative_integer(nu, ctx)?;
    Ok(i_adaptive(nu, x, ctx, want))
}

/// `∂I_ν(x)/∂ν`: each term weighted by `ln(x/2) - ψ(ν+k+1)`.
pub fn bessel_i_dnu(nu: &Complex, x: &Float, ctx: &PrecisionContext) -> Result<Complex> {
    check_argument(x)?;
    check_not_negative_integer(nu, ctx)?;
    let s = i_adaptive(nu, x, ctx, Want::D_NU);
    Ok(round_to(s.d_nu.expect("requested"), ctx))
}

/// Series for `I_ν` and `I_{-ν}` evaluated at a common precision large
/// enough to survive the cancellation in their difference.
pub(crate) struct KParts {
    pub(crate) plus: ISeries,
    pub(crate) minus: ISeries,
    pub(crate) prec: u32,
    pub(crate) ctx: PrecisionContext,
}

impl KParts {
    pub(crate) fn new(nu: &Complex, x: &Float, ctx: &PrecisionContext, want: Want) -> Result<Self> {
        check_argument(x)?;
        check_not_integer(nu, ctx)?;
        let neg = Complex::with_val(nu.prec(), -nu);
        let mut prec = ctx.prec() + 16;
        for _ in 0..3 {
            let h = half_log(x, prec);
            let plus = i_series(nu, &h, prec, want);
            let minus = i_series(&neg, &h, prec, want);
            let scale = plus.scale.clone().max(&minus.scale);
            let mut lost = cancellation_bits(&scale, &abs(&Complex::with_val(prec, &minus.value - &plus.value)));
            if want.d_nu {
                let d = Complex::with_val(
                    prec,
                    minus.d_nu.as_ref().unwrap() + plus.d_nu.as_ref().unwrap(),
                );
                lost = lost.max(cancellation_bits(&scale, &abs(&d)));
            }
            if want.d_x {
                let d = Complex::with_val(
                    prec,
                    minus.x_d_x.as_ref().unwrap() - plus.x_d_x.as_ref().unwrap(),
                );
                lost = lost.max(cancellation_bits(&scale, &abs(&d)));
            }
            let needed = ctx.prec() + 16 + lost.min(2 * ctx.prec());
            if needed <= prec + ctx.guard_bits() {
                let extra_digits = ((prec - ctx.prec()) as f64 / std::f64::consts::LOG2_10) as u32;
                return Ok(Self {
                    plus,
                    minus,
                    prec,
                    ctx: ctx.boosted(extra_digits),
                });
            }
            prec = needed;
        }
        Err(Error::RootSearch(
            "K_nu cancellation could not be resolved".into(),
        ))
    }

    pub(crate) fn half_pi(&self) -> Float {
        Float::with_val(self.prec, Constant::Pi) / 2u32
    }

    pub(crate) fn value(&self, nu: &Complex) -> Result<Complex> {
        let csc = csc_pi(nu, &self.ctx)?;
        let diff = Complex::with_val(self.prec, &self.minus.value - &self.plus.value);
        Ok(diff * csc * self.half_pi())
    }

    fn x_d_x(&self, nu: &Complex) -> Result<Complex> {
        let csc = csc_pi(nu, &self.ctx)?;
        let diff = Complex::with_val(
            self.prec,
            self.minus.x_d_x.as_ref().unwrap() - self.plus.x_d_x.as_ref().unwrap(),
        );
        Ok(diff * csc * self.half_pi())
    }

    pub(crate) fn d_nu(&self, nu: &Complex) -> Result<Complex> {
        let csc = csc_pi(nu, &self.ctx)?;
        let cot = cot_pi(nu, self.prec + digits_to_bits(self.ctx.guard_digits()));
        let pi = Float::with_val(self.prec, Constant::Pi);
        let diff = Complex::with_val(self.prec, &self.minus.value - &self.plus.value);
        // d/dν I_{-ν} = -(∂I/∂ν)(-ν)
        let dsum = Complex::with_val(
            self.prec,
            self.minus.d_nu.as_ref().unwrap() + self.plus.d_nu.as_ref().unwrap(),
        );
        let inner = -(dsum + diff * cot * pi);
        Ok(inner * csc * self.half_pi())
    }
}

/// `K_ν(x) = π csc(νπ) [I_{-ν}(x) - I_ν(x)] / 2` for non-integer `ν`.
pub fn bessel_k(nu: &Complex, x: &Float, ctx: &PrecisionContext) -> Result<Complex> {
    let parts = KParts::new(nu, x, ctx, Want::VALUE)?;
    Ok(round_to(parts.value(nu)?, ctx))
}

/// `∂K_ν(x)/∂x`.
pub fn bessel_k_dx(nu: &Complex, x: &Float, ctx: &PrecisionContext) -> Result<Complex> {
    let parts = KParts::new(nu, x, ctx, Want::D_X)?;
    Ok(round_to(parts.x_d_x(nu)? / x, ctx))
}

/// `∂K_ν(x)/∂ν`, the product rule applied to the csc combination.
pub fn bessel_k_dnu(nu: &Complex, x: &Float, ctx: &PrecisionContext) -> Result<Complex> {
    let parts = KParts::new(nu, x, ctx, Want::D_NU)?;
    Ok(round_to(parts.d_nu(nu)?, ctx))
}
