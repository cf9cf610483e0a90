use rug::float::Constant;
use rug::{Complex, Float};

use crate::bessel::{i_eval, phase, KParts, Want};
use crate::error::Result;
use crate::mpcore::{abs, cot_pi, csc_pi, PrecisionContext};

/// A quantization condition as a function of the order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    /// `I_μ(x)`.
    Barrier,
    /// `K_ν(x)`.
    Bound,
    /// `e^{-mνπi} K_ν(x) - πi sin(mνπ) csc(νπ) I_ν(x)`, evaluated as
    /// `(π/2) csc(νπ) [e^{-mνπi} I_{-ν}(x) - e^{mνπi} I_ν(x)]`.
    Well { m: i64 },
    /// `csc(νπ) [e^{mνπi} I_{-ν}(x) - e^{-mνπi} I_ν(x)]`, the form obtained by
    /// expanding `K_ν`; its roots on sheet `m` are the well roots on sheet `-m`.
    WellCscForm { m: i64 },
}

#[derive(Debug, Clone)]
pub struct ConditionValue {
    pub value: Complex,
    pub derivative: Option<Complex>,
    /// Magnitude of the largest contribution, which bounds the rounding error
    /// of `value`.
    pub scale: Float,
}

impl ConditionValue {
    pub fn relative_residual(&self) -> Float {
        let a = abs(&self.value);
        if self.scale.is_zero() {
            return a;
        }
        a / &self.scale
    }
}

/// `2√λ`, the argument at which every condition is evaluated.
pub fn condition_argument(lambda: &Float, prec: u32) -> Float {
    Float::with_val(prec, lambda.sqrt_ref()) * 2u32
}

pub fn evaluate_condition(
    cond: Condition,
    x: &Float,
    nu: &Complex,
    ctx: &PrecisionContext,
    derivative: bool,
) -> Result<ConditionValue> {
    let want = if derivative { Want::D_NU } else { Want::VALUE };
    match cond {
        Condition::Barrier => {
            let s = i_eval(nu, x, ctx, want)?;
            Ok(ConditionValue {
                value: s.value,
                derivative: s.d_nu,
                scale: s.scale,
            })
        }
        Condition::Bound => {
            let parts = KParts::new(nu, x, ctx, want)?;
            let csc = csc_pi(nu, &parts.ctx)?;
            let scale = abs(&csc) * parts.half_pi() * parts.plus.scale.clone().max(&parts.minus.scale);
            Ok(ConditionValue {
                value: parts.value(nu)?,
                derivative: if derivative { Some(parts.d_nu(nu)?) } else { None },
                scale,
            })
        }
        Condition::Well { m } => well(nu, x, m, ctx, want),
        Condition::WellCscForm { m } => {
            let mut v = well(nu, x, -m, ctx, want)?;
            let prec = v.value.prec().0;
            let two_over_pi = Float::with_val(prec, Constant::Pi).recip() * 2u32;
            v.value *= &two_over_pi;
            if let Some(d) = v.derivative.as_mut() {
                *d *= &two_over_pi;
            }
            v.scale *= &two_over_pi;
            Ok(v)
        }
    }
}

fn well(nu: &Complex, x: &Float, m: i64, ctx: &PrecisionContext, want: Want) -> Result<ConditionValue> {
    let parts = KParts::new(nu, x, ctx, want)?;
    let prec = parts.prec;
    let up = phase(nu, m, prec);
    let down = phase(nu, -m, prec);
    let a = Complex::with_val(prec, &down * &parts.minus.value);
    let b = Complex::with_val(prec, &up * &parts.plus.value);
    let bracket = Complex::with_val(prec, &a - &b);

    let csc = csc_pi(nu, &parts.ctx)?;
    let half_pi = parts.half_pi();
    let factor = Complex::with_val(prec, &csc * &half_pi);
    let scale = abs(&factor)
        * (abs(&down) * &parts.minus.scale).max(&(abs(&up) * &parts.plus.scale));

    let derivative = if want.d_nu {
        let pi = Float::with_val(prec, Constant::Pi);
        let m_pi = Float::with_val(prec, &pi * m);
        let phases = Complex::with_val(prec, &a + &b) * &m_pi;
        let d_minus = Complex::with_val(prec, &down * parts.minus.d_nu.as_ref().unwrap());
        let d_plus = Complex::with_val(prec, &up * parts.plus.d_nu.as_ref().unwrap());
        let d_bracket = -(phases.mul_i(false) + d_minus + d_plus);
        let cot = cot_pi(nu, prec);
        let correction = Complex::with_val(prec, &bracket * &cot) * &pi;
        Some(Complex::with_val(prec, &factor * (d_bracket - correction)))
    } else {
        None
    };

    Ok(ConditionValue {
        value: factor * bracket,
        derivative,
        scale,
    })
}
