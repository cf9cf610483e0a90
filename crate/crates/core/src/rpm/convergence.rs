use rayon::prelude::*;
use rug::Complex;

use super::hankel::HankelSpec;
use super::newton::newton_polish;
use super::potential::PotentialSeries;
use crate::error::{Error, Result};
use crate::mpcore::{log10_abs, PrecisionContext};

/// The exact eigenvalue a convergence curve is measured against.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveTarget {
    pub n: usize,
    /// Well sheet (0 for bound states); `None` for a barrier resonance.
    pub m: Option<i64>,
    pub energy: Complex,
}

/// `Δ = -log10|E_exact - E_rpm(D)|` for one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRecord {
    pub n: usize,
    pub m: Option<i64>,
    pub dimension: usize,
    pub delta: f64,
    pub energy: Complex,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveFailure {
    pub dimension: usize,
    pub error: Error,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConvergenceCurve {
    pub records: Vec<ConvergenceRecord>,
    /// Dimensions where Newton failed; they have no record.
    pub failures: Vec<CurveFailure>,
}

/// Newton-polished roots of `H_D^d` seeded at the exact eigenvalue, one per
/// dimension in `dims`, each at `output + 30 + 2D` working digits. The
/// target energy must carry more digits than the largest `Δ` expected.
pub fn convergence_curve(
    pot: &PotentialSeries,
    target: &CurveTarget,
    dims: &[usize],
    displacement: i64,
    ctx: &PrecisionContext,
) -> Result<ConvergenceCurve> {
    if dims.windows(2).any(|w| w[0] >= w[1]) || dims.first() == Some(&0) {
        return Err(Error::InvalidArgument("dimensions must be positive and increasing".into()));
    }
    let outcomes: Vec<(usize, Result<Complex>)> = dims
        .par_iter()
        .map(|&dim| {
            let local = PrecisionContext::for_output(ctx.output_digits(), dim as u32);
            let spec = HankelSpec {
                dimension: dim,
                displacement,
            };
            (dim, newton_polish(pot, spec, &target.energy, &local).map(|r| r.energy))
        })
        .collect();
    let mut curve = ConvergenceCurve::default();
    for (dim, outcome) in outcomes {
        match outcome {
            Ok(energy) => {
                let diff = Complex::with_val(energy.prec(), &energy - &target.energy);
                curve.records.push(ConvergenceRecord {
                    n: target.n,
                    m: target.m,
                    dimension: dim,
                    delta: -log10_abs(&diff),
                    energy,
                });
            }
            Err(error) => curve.failures.push(CurveFailure { dimension: dim, error }),
        }
    }
    Ok(curve)
}

/// A run of at least three consecutive records whose `Δ` changes by less
/// than 0.05 per step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plateau {
    pub first_dimension: usize,
    pub last_dimension: usize,
    pub level: f64,
}

pub const PLATEAU_STEP: f64 = 0.05;

pub fn find_plateaus(records: &[ConvergenceRecord]) -> Vec<Plateau> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=records.len() {
        let flat = i < records.len() && (records[i].delta - records[i - 1].delta).abs() < PLATEAU_STEP;
        if flat {
            continue;
        }
        if i - start >= 3 {
            let run = &records[start..i];
            out.push(Plateau {
                first_dimension: run[0].dimension,
                last_dimension: run[run.len() - 1].dimension,
                level: run.iter().map(|r| r.delta).sum::<f64>() / run.len() as f64,
            });
        }
        start = i;
    }
    out
}

/// Least-squares line through `(x, y)` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// `max |y - fit(x)| / |y|`.
    pub max_relative_residual: f64,
}

pub fn fit_line(points: &[(f64, f64)]) -> Option<LineFit> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let max_relative_residual = points
        .iter()
        .map(|&(x, y)| (y - (slope * x + intercept)).abs() / y.abs())
        .fold(0.0, f64::max);
    Some(LineFit {
        slope,
        intercept,
        max_relative_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(dimension: usize, delta: f64) -> ConvergenceRecord {
        ConvergenceRecord {
            n: 0,
            m: None,
            dimension,
            delta,
            energy: Complex::new(64),
        }
    }

    #[test]
    fn plateau_needs_three_flat_points() {
        let r = vec![rec(5, 1.0), rec(10, 2.0), rec(15, 2.01), rec(20, 2.02), rec(25, 3.0)];
        let p = find_plateaus(&r);
        assert_eq!(p.len(), 1);
        assert_eq!((p[0].first_dimension, p[0].last_dimension), (10, 20));
        assert!((p[0].level - 2.01).abs() < 1e-12);
        let r = vec![rec(5, 1.0), rec(10, 1.01), rec(15, 3.0)];
        assert!(find_plateaus(&r).is_empty());
    }

    #[test]
    fn exact_line() {
        let pts: Vec<(f64, f64)> = (1..10).map(|k| (k as f64, 2.0 * k as f64 + 1.0)).collect();
        let f = fit_line(&pts).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12 && (f.intercept - 1.0).abs() < 1e-12);
        assert!(f.max_relative_residual < 1e-12);
        assert!(fit_line(&pts[..1]).is_none());
    }
}
