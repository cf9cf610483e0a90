//! Continuation of `I_ν` and `K_ν` onto the sheet `s e^{mπi}`, evaluated at
//! real positive `s`.

use rug::float::Constant;
use rug::{Complex, Float};

use super::{bessel_i, bessel_k};
use crate::error::Result;
use crate::mpcore::{csc_pi, sin_pi, PrecisionContext};

/// `I_ν(s e^{mπi}) = e^{mνπi} I_ν(s)`.
pub fn continue_i(nu: &Complex, s: &Float, m: i64, ctx: &PrecisionContext) -> Result<Complex> {
    let prec = ctx.prec();
    Ok(phase(nu, m, prec) * bessel_i(nu, s, ctx)?)
}

/// `K_ν(s e^{mπi}) = e^{-mνπi} K_ν(s) - πi sin(mνπ) csc(νπ) I_ν(s)`.
pub fn continue_k(nu: &Complex, s: &Float, m: i64, ctx: &PrecisionContext) -> Result<Complex> {
    let prec = ctx.prec();
    let k = bessel_k(nu, s, ctx)?;
    let first = phase(nu, -m, prec) * k;
    if m == 0 {
        return Ok(first);
    }
    let m_nu = Complex::with_val(prec + 64, nu * m);
    let ratio = sin_pi(&m_nu, prec) * csc_pi(nu, ctx)?;
    let i = bessel_i(nu, s, ctx)?;
    let pi = Float::with_val(prec, Constant::Pi);
    let second = (ratio * i * pi).mul_i(false);
    Ok(first - second)
}

/// `e^{mνπi}`.
pub(crate) fn phase(nu: &Complex, m: i64, prec: u32) -> Complex {
    let pi = Float::with_val(prec, Constant::Pi);
    let arg = Complex::with_val(prec, nu * m) * pi;
    arg.mul_i(false).exp()
}
