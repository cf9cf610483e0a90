use rug::{Complex, Float};

use super::classify::RpmClassification;
use super::hankel::{hankel_numeric_or_direct, HankelSpec};
use super::potential::PotentialSeries;
use super::roots::PolyRoot;
use crate::error::{Error, Result};
use crate::mpcore::PrecisionContext;

pub const MAX_ITERATIONS: usize = 100;
pub const DIVERGENCE_RADIUS: f64 = 1e6;

/// A zero of `H_D^d(E)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RpmRoot {
    pub spec: HankelSpec,
    pub energy: Complex,
    pub classification: Option<RpmClassification>,
    /// Relative size `|ΔE|/|E|` of the last Newton correction, or the
    /// scaled polynomial residual for roots from the exhaustive solver.
    pub residual: Float,
    /// Newton iterations used (0 for roots from the exhaustive solver).
    pub iterations: usize,
}

impl RpmRoot {
    pub fn from_poly_root(spec: HankelSpec, root: &PolyRoot) -> Self {
        Self {
            spec,
            energy: root.value.clone(),
            classification: None,
            residual: root.residual.clone(),
            iterations: 0,
        }
    }
}

/// Newton iteration on `H_D^d(E) = 0` from `seed`, the derivative carried
/// through the Taylor and determinant recursions. Stops once
/// `|ΔE| < 10^-(output_digits+5)·|E|`.
pub fn newton_polish(
    pot: &PotentialSeries,
    spec: HankelSpec,
    seed: &Complex,
    ctx: &PrecisionContext,
) -> Result<RpmRoot> {
    let prec = ctx.prec();
    if !seed.real().is_finite() || !seed.imag().is_finite() {
        return Err(Error::InvalidArgument("Newton seed must be finite".into()));
    }
    if spec.dimension == 0 {
        return Err(Error::InvalidArgument("Hankel dimension must be at least 1".into()));
    }
    let tol = ctx.newton_tolerance();
    let floor = Float::with_val(prec, ctx.tolerance());
    let mut e = Complex::with_val(prec, seed);
    for iteration in 1..=MAX_ITERATIONS {
        let (h, dh) = hankel_numeric_or_direct(pot, &e, spec, ctx)?;
        if h.is_zero() {
            return Ok(root(spec, e, Float::new(prec), iteration));
        }
        if dh.is_zero() {
            break;
        }
        let step = Complex::with_val(prec, &h / &dh);
        e -= &step;
        let size = Float::with_val(prec, e.abs_ref());
        if size > DIVERGENCE_RADIUS {
            return Err(Error::Divergence {
                magnitude: size.to_f64(),
            });
        }
        let scale = size.max(&floor);
        let relative = Float::with_val(prec, step.abs_ref()) / &scale;
        if relative < tol {
            return Ok(root(spec, e, relative, iteration));
        }
    }
    Err(Error::NoConvergence {
        seed: format!("{:.20}", seed),
        iterations: MAX_ITERATIONS,
    })
}

fn root(spec: HankelSpec, energy: Complex, residual: Float, iterations: usize) -> RpmRoot {
    RpmRoot {
        spec,
        energy,
        classification: None,
        residual,
        iterations,
    }
}
