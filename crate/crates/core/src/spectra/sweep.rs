use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Complex, Float};

use super::solvers::{barrier_roots, bound_states, refine_root, well_resonances};
use super::{RootKind, SpectralRoot};
use crate::error::{Error, Result};
use crate::mpcore::{abs, PrecisionContext};

/// One spectrum followed across a `λ` sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepTarget {
    Barrier,
    Bound,
    Well(i64),
}

impl SweepTarget {
    fn kind_and_sheet(self) -> (RootKind, i64) {
        match self {
            SweepTarget::Barrier => (RootKind::Barrier, 0),
            SweepTarget::Bound => (RootKind::Bound, 0),
            SweepTarget::Well(m) => (RootKind::Well, m),
        }
    }

    fn solve(self, lambda: &Float, count: usize, ctx: &PrecisionContext) -> Result<Vec<SpectralRoot>> {
        match self {
            SweepTarget::Barrier => barrier_roots(lambda, count, ctx),
            SweepTarget::Bound => bound_states(lambda, count, ctx),
            SweepTarget::Well(m) => well_resonances(lambda, m, count, ctx),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepRecord {
    /// `root.n` is the chain index: the label the root had at the first `λ`.
    pub root: SpectralRoot,
    /// Set at the step where two real roots of this chain family merged into
    /// a complex pair; the partner chain ends there.
    pub coalescence: bool,
}

/// `steps` points from `lambda_min` to `lambda_max` in geometric progression.
pub fn geometric_grid(lambda_min: &Float, lambda_max: &Float, steps: usize) -> Result<Vec<Float>> {
    if *lambda_min <= 0 || lambda_max < lambda_min || steps == 0 {
        return Err(Error::InvalidArgument(
            "need 0 < lambda_min <= lambda_max and at least one step".into(),
        ));
    }
    let prec = lambda_min.prec().max(lambda_max.prec());
    if steps == 1 {
        return Ok(vec![lambda_min.clone()]);
    }
    let ratio = Float::with_val(prec, lambda_max / lambda_min);
    Ok((0..steps)
        .map(|i| {
            if i == steps - 1 {
                return Float::with_val(prec, lambda_max);
            }
            let e = Float::with_val(prec, i) / (steps - 1) as u32;
            Float::with_val(prec, (&ratio).pow(&e)) * lambda_min
        })
        .collect())
}

/// Roots on a geometric `λ` grid, each chain seeded from its value at the
/// previous grid point. Targets run in parallel; each chain is sequential.
pub fn sweep(
    lambda_min: &Float,
    lambda_max: &Float,
    steps: usize,
    targets: &[SweepTarget],
    count: usize,
    ctx: &PrecisionContext,
) -> Result<Vec<SweepRecord>> {
    let grid = geometric_grid(lambda_min, lambda_max, steps)?;
    let per_target: Vec<Result<Vec<SweepRecord>>> = targets
        .par_iter()
        .map(|t| follow(*t, &grid, count, ctx))
        .collect();
    let mut out = Vec::new();
    for r in per_target {
        out.extend(r?);
    }
    Ok(out)
}

const AMBIGUITY: f64 = 1e-3;

fn distance(a: &Complex, b: &Complex) -> f64 {
    abs(&Complex::with_val(a.prec(), a - b)).to_f64()
}

fn is_real(z: &Complex) -> bool {
    z.imag().is_zero()
}

/// A refined root farther than this (relative to `max(|prev|, 1)`) from its
/// predecessor is treated as a lost chain.
const MAX_JUMP: f64 = 0.25;

/// Relative imaginary offset given to real barrier seeds.
const OFF_AXIS: f64 = 1e-3;

/// Maximum number of times one grid step is halved (geometrically) before
/// falling back to a full solve at the target `λ`.
const MAX_SUBDIVISIONS: u32 = 6;

struct Step {
    roots: Vec<Option<SpectralRoot>>,
    merged: Vec<bool>,
}

fn follow(target: SweepTarget, grid: &[Float], count: usize, ctx: &PrecisionContext) -> Result<Vec<SweepRecord>> {
    let first = target.solve(&grid[0], count, ctx)?;
    let mut out: Vec<SweepRecord> = first
        .iter()
        .map(|r| SweepRecord {
            root: r.clone(),
            coalescence: false,
        })
        .collect();
    let mut chains: Vec<Option<Complex>> = first.into_iter().map(|r| Some(r.order)).collect();

    for pair in grid.windows(2) {
        let step = advance(target, &chains, &pair[0], &pair[1], count, ctx, 0)?;
        for (i, r) in step.roots.into_iter().enumerate() {
            let Some(r) = r else {
                // retired inside a subdivided step
                chains[i] = None;
                continue;
            };
            chains[i] = Some(r.order.clone());
            out.push(SweepRecord {
                root: r,
                coalescence: step.merged[i],
            });
        }
        // the higher-index partner of a merge ends there
        for i in 0..chains.len() {
            if step.merged[i] && (0..i).any(|j| step.merged[j] && close(&chains[j], &chains[i])) {
                chains[i] = None;
            }
        }
    }
    Ok(out)
}

fn close(a: &Option<Complex>, b: &Option<Complex>) -> bool {
    match (a, b) {
        (Some(a), Some(b)) => distance(a, b) <= AMBIGUITY * abs(a).to_f64().max(1.0),
        _ => false,
    }
}

/// Moves every live chain from `from` to `to`, splitting the interval at its
/// geometric midpoint when a chain loses its root or two chains collide.
fn advance(
    target: SweepTarget,
    chains: &[Option<Complex>],
    from: &Float,
    to: &Float,
    count: usize,
    ctx: &PrecisionContext,
    depth: u32,
) -> Result<Step> {
    match try_step(target, chains, to, count, ctx, depth >= MAX_SUBDIVISIONS) {
        Ok(step) => Ok(step),
        Err(Error::ContinuationBreak { .. } | Error::NoConvergence { .. } | Error::Divergence { .. })
            if depth < MAX_SUBDIVISIONS =>
        {
            let mid = Float::with_val(to.prec(), from * to).sqrt();
            let half = advance(target, chains, from, &mid, count, ctx, depth + 1)?;
            let mut inner: Vec<Option<Complex>> = half.roots.iter().map(|r| r.as_ref().map(|r| r.order.clone())).collect();
            for i in 0..inner.len() {
                if half.merged[i] && (0..i).any(|j| half.merged[j] && close(&inner[j], &inner[i])) {
                    inner[i] = None;
                }
            }
            let mut rest = advance(target, &inner, &mid, to, count, ctx, depth + 1)?;
            for i in 0..rest.merged.len() {
                rest.merged[i] |= half.merged[i];
            }
            Ok(rest)
        }
        Err(e) => Err(e),
    }
}

fn try_step(
    target: SweepTarget,
    chains: &[Option<Complex>],
    lambda: &Float,
    count: usize,
    ctx: &PrecisionContext,
    allow_fallback: bool,
) -> Result<Step> {
    let (kind, m) = target.kind_and_sheet();
    let mut next: Vec<Option<SpectralRoot>> = vec![None; chains.len()];
    let mut fallback: Option<Vec<SpectralRoot>> = None;
    for (i, prev) in chains.iter().enumerate() {
        let Some(prev) = prev else { continue };
        let unit = abs(prev).to_f64().max(1.0);
        let seed = if kind == RootKind::Barrier && is_real(prev) {
            // a real seed keeps Newton on the axis, where it cannot follow
            // two virtual states that have merged into a resonance
            Complex::with_val(prev.prec(), (prev.real(), -OFF_AXIS * unit))
        } else {
            prev.clone()
        };
        let refined = refine_root(kind, lambda, m, i, &seed, ctx).and_then(|r| {
            if distance(&r.order, prev) > MAX_JUMP * unit {
                Err(Error::ContinuationBreak {
                    lambda: lambda.to_f64(),
                    detail: format!("chain {i} jumped to a distant root"),
                })
            } else {
                Ok(r)
            }
        });
        let root = match refined {
            Ok(r) => r,
            Err(Error::NoConvergence { .. } | Error::Divergence { .. } | Error::ContinuationBreak { .. })
                if allow_fallback =>
            {
                if fallback.is_none() {
                    fallback = Some(target.solve(lambda, count + 2, ctx)?);
                }
                let mut r = nearest_unambiguous(fallback.as_ref().unwrap(), prev, lambda.to_f64())?;
                r.n = i;
                r
            }
            Err(e) => return Err(e),
        };
        next[i] = Some(root);
    }

    let mut merged = vec![false; chains.len()];
    for i in 0..next.len() {
        for j in (i + 1)..next.len() {
            let (Some(a), Some(b)) = (&next[i], &next[j]) else { continue };
            if merged[j] {
                continue;
            }
            let unit = abs(&a.order).to_f64().max(1.0);
            if distance(&a.order, &b.order) > AMBIGUITY * unit {
                continue;
            }
            let were_real = chains[i].as_ref().is_some_and(is_real) && chains[j].as_ref().is_some_and(is_real);
            if kind == RootKind::Barrier && were_real && !is_real(&a.order) {
                merged[i] = true;
                merged[j] = true;
            } else {
                return Err(Error::ContinuationBreak {
                    lambda: lambda.to_f64(),
                    detail: format!("chains {i} and {j} converged to the same root"),
                });
            }
        }
    }
    Ok(Step { roots: next, merged })
}

fn nearest_unambiguous(candidates: &[SpectralRoot], prev: &Complex, lambda: f64) -> Result<SpectralRoot> {
    let mut ranked: Vec<(f64, &SpectralRoot)> = candidates.iter().map(|r| (distance(&r.order, prev), r)).collect();
    ranked.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let Some(&(d0, best)) = ranked.first() else {
        return Err(Error::ContinuationBreak {
            lambda,
            detail: "no candidate roots".into(),
        });
    };
    if let Some(&(d1, _)) = ranked.get(1) {
        if (d1 - d0) <= AMBIGUITY * d1.max(f64::MIN_POSITIVE) {
            return Err(Error::ContinuationBreak {
                lambda,
                detail: "two candidate roots equally close to the previous one".into(),
            });
        }
    }
    Ok(best.clone())
}
