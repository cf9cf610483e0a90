use rug::float::Constant;
use rug::{Complex, Float};

use super::condition::condition_argument;
use super::solvers::nearest_well_root;
use super::{RootKind, SpectralRoot};
use crate::bessel::{bessel_i_dnu, bessel_k};
use crate::error::{Error, Result};
use crate::mpcore::{abs, log10_abs, PrecisionContext};

/// A barrier root paired with the closest well root on one sheet.
#[derive(Debug, Clone)]
pub struct ComparisonRecord {
    pub lambda: Float,
    pub n: usize,
    pub m: i64,
    pub nu_star: Complex,
    pub mu: Complex,
    /// `-log10|μ - ν*|`.
    pub log_diff_order: f64,
    /// `-log10|ε(μ) - ε(ν*)|`.
    pub log_diff_energy: f64,
}

fn neg_log10_distance(a: &Complex, b: &Complex) -> f64 {
    let prec = a.prec().0.max(b.prec().0);
    let d = Complex::with_val(prec, a - b);
    if d.is_zero() {
        f64::INFINITY
    } else {
        -log10_abs(&d)
    }
}

fn record(mu: &SpectralRoot, well: &SpectralRoot) -> ComparisonRecord {
    ComparisonRecord {
        lambda: mu.lambda.clone(),
        n: mu.n,
        m: well.m,
        nu_star: well.order.clone(),
        mu: mu.order.clone(),
        log_diff_order: neg_log10_distance(&mu.order, &well.order),
        log_diff_energy: neg_log10_distance(&mu.energy, &well.energy),
    }
}

/// Picks the well root closest to `mu`; equal distances go to the smaller `|ν|`.
pub fn match_nearest(well: &[SpectralRoot], mu: &SpectralRoot) -> Option<ComparisonRecord> {
    let prec = mu.order.prec().0;
    let dist = |r: &SpectralRoot| abs(&Complex::with_val(prec, &r.order - &mu.order));
    let best = well.iter().min_by(|a, b| {
        let (da, db) = (dist(a), dist(b));
        da.partial_cmp(&db)
            .unwrap()
            .then_with(|| abs(&a.order).partial_cmp(&abs(&b.order)).unwrap())
    })?;
    Some(record(mu, best))
}

/// Locates the well root on sheet `m` closest to the barrier root `mu` and
/// reports the distances.
pub fn compare_with_barrier(mu: &SpectralRoot, m: i64, ctx: &PrecisionContext) -> Result<ComparisonRecord> {
    if mu.kind != RootKind::Barrier {
        return Err(Error::InvalidArgument("comparison needs a barrier root".into()));
    }
    let mut well = nearest_well_root(&mu.lambda, m, &mu.order, ctx)?;
    well.n = mu.n;
    Ok(record(mu, &well))
}

/// First-order estimate of `ν^{(m)} - μ` for a barrier root `μ` with
/// `Im μ < 0` and `m > 0`, from linearizing the well condition about `μ`:
/// `-i K_μ / (π ∂_ν I_μ) · e^{-iμπ(2m-1)}`.
pub fn difference_estimate(mu: &Complex, lambda: &Float, m: i64, ctx: &PrecisionContext) -> Result<Complex> {
    let prec = ctx.prec();
    let x = condition_argument(lambda, prec);
    let k = bessel_k(mu, &x, ctx)?;
    let di = bessel_i_dnu(mu, &x, ctx)?;
    let pi = Float::with_val(prec, Constant::Pi);
    let exponent = Complex::with_val(prec, mu * &pi) * (2 * m - 1);
    let phase = exponent.mul_i(true).exp();
    let ratio = k / (di * &pi);
    Ok(ratio.mul_i(true) * phase)
}

/// The sheet `m` with `ρ sinθ / 2 + mπ ∈ (-π/2, π/2]`, i.e.
/// `m = floor(1/2 - ρ sinθ / (2π))`.
pub fn branch_index(rho: &Float, theta: &Float) -> i64 {
    let prec = rho.prec().max(theta.prec()) + 32;
    let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;
    let t = Float::with_val(prec, 0.5) - Float::with_val(prec, rho * theta.clone().sin()) / two_pi;
    let nearest = t.clone().round();
    // values a rounding error away from a half-integer boundary belong to it
    let slack = Float::with_val(prec, Float::i_exp(1, 16 - rho.prec().min(theta.prec()) as i32));
    let unit = Float::with_val(prec, t.abs_ref()).max(&Float::with_val(prec, 1));
    if Float::with_val(prec, &t - &nearest).abs() <= slack * unit {
        return nearest.to_f64() as i64;
    }
    t.floor().to_f64() as i64
}
