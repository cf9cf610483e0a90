use rug::{Complex, Float};

use super::condition::{evaluate_condition, Condition, ConditionValue};
use crate::error::{Error, Result};
use crate::mpcore::{abs, PrecisionContext};

/// Iteration budget for a Newton solve.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Budget {
    pub iterations: usize,
    pub halvings: usize,
}

impl Budget {
    pub(crate) const FULL: Budget = Budget {
        iterations: 80,
        halvings: 10,
    };
    /// Exploratory solves inside a root search, where failure is cheap to
    /// recover from by subdividing.
    pub(crate) const PROBE: Budget = Budget {
        iterations: 20,
        halvings: 4,
    };
}

const DIVERGENCE: f64 = 1e6;

/// Restricts iterates to a line through the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Axis {
    Free,
    Imaginary,
}

impl Axis {
    fn project(self, z: &mut Complex) {
        if self == Axis::Imaginary {
            let p = z.real().prec();
            *z.mut_real() = Float::new(p);
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Converged {
    pub root: Complex,
    pub residual: Float,
}

fn residual_of(ev: &Result<ConditionValue>) -> Option<Float> {
    match ev {
        Ok(v) => Some(v.relative_residual()),
        Err(_) => None,
    }
}

/// Damped Newton iteration on `ν`; the step is halved while the relative
/// residual grows.
pub(crate) fn newton(
    cond: Condition,
    x: &Float,
    seed: &Complex,
    ctx: &PrecisionContext,
    axis: Axis,
) -> Result<Converged> {
    newton_within(cond, x, seed, ctx, axis, None, Budget::FULL)
}

/// As [`newton`], abandoning the iteration as soon as an iterate leaves
/// `region` (given as `(re_min, re_max, im_min, im_max)`).
pub(crate) fn newton_within(
    cond: Condition,
    x: &Float,
    seed: &Complex,
    ctx: &PrecisionContext,
    axis: Axis,
    region: Option<(f64, f64, f64, f64)>,
    budget: Budget,
) -> Result<Converged> {
    let prec = ctx.prec();
    let mut nu = Complex::with_val(prec, seed);
    axis.project(&mut nu);
    let mut ev = evaluate_condition(cond, x, &nu, ctx, true)?;
    let mut resid = ev.relative_residual();
    let res_tol = ctx.residual_tolerance();
    let step_tol = ctx.newton_tolerance();
    let fine_tol = Float::with_val(prec, ctx.tolerance() * 100u32);
    let fail = |iterations| Error::NoConvergence {
        seed: format!("{:.20}", seed),
        iterations,
    };

    for it in 1..=budget.iterations {
        let d = ev.derivative.as_ref().expect("derivative requested");
        if d.is_zero() {
            return Err(fail(it));
        }
        let mut step = Complex::with_val(prec, &ev.value / d);
        axis.project(&mut step);
        let mut candidate;
        let mut next;
        let mut halvings = 0;
        loop {
            candidate = Complex::with_val(prec, &nu - &step);
            axis.project(&mut candidate);
            next = evaluate_condition(cond, x, &candidate, ctx, true);
            let accept = match residual_of(&next) {
                Some(r) => r <= resid || resid <= res_tol,
                None => false,
            };
            if accept || halvings >= budget.halvings {
                break;
            }
            step /= 2u32;
            halvings += 1;
        }
        let next = next?;
        let size = abs(&step);
        nu = candidate;
        resid = next.relative_residual();
        ev = next;

        let magnitude = abs(&nu);
        if !magnitude.is_finite() || magnitude > DIVERGENCE {
            return Err(Error::Divergence {
                magnitude: magnitude.to_f64(),
            });
        }
        if let Some((r0, r1, i0, i1)) = region {
            let (re, im) = (nu.real().to_f64(), nu.imag().to_f64());
            if re < r0 || re > r1 || im < i0 || im > i1 {
                return Err(fail(it));
            }
        }
        let unit = magnitude.max(&Float::with_val(prec, 1));
        let done = size <= Float::with_val(prec, &fine_tol * &unit)
            || (size <= Float::with_val(prec, &step_tol * &unit) && resid <= res_tol);
        if done {
            if resid <= res_tol {
                return Ok(Converged {
                    root: nu,
                    residual: resid,
                });
            }
            return Err(fail(it));
        }
    }
    Err(fail(budget.iterations))
}
