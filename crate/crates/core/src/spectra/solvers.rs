use rug::{Complex, Float};

use super::condition::{condition_argument, evaluate_condition, Condition};
use super::newton::{newton, Axis, Converged};
use super::search::{Rect, Searcher};
use super::{Family, RootKind, SpectralRoot};
use crate::error::{Error, Result};
use crate::mpcore::{abs, complex_f64, PrecisionContext};

/// `-order²/4`.
pub fn energy_from_order(order: &Complex) -> Complex {
    let prec = order.prec();
    let sq = Complex::with_val(prec, order.square_ref());
    -(sq / 4u32)
}

fn check_lambda(lambda: &Float) -> Result<()> {
    if !lambda.is_finite() || *lambda <= 0 {
        return Err(Error::InvalidArgument(format!(
            "lambda must be positive, got {}",
            lambda.to_f64()
        )));
    }
    Ok(())
}

fn check_count(count: usize) -> Result<()> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    Ok(())
}

const MAX_SEARCH_RADIUS: f64 = 1e4;
const RADIUS_GROWTH: f64 = 1.6;
/// Offsets that keep search boundaries away from integer orders and the
/// real axis.
const RE_EDGE: f64 = 0.31;
const IM_EDGE: f64 = 0.0137;
const WELL_RE_EDGE: f64 = -0.0011;

fn close(a: &Complex, b: &Complex, ctx: &PrecisionContext) -> bool {
    let d = abs(&Complex::with_val(ctx.prec(), a - b));
    let unit = abs(a).max(&Float::with_val(ctx.prec(), 1));
    let tol = (ctx.output_digits() / 2).max(3) as i32;
    d.to_f64() <= 10f64.powi(-tol) * unit.to_f64()
}

fn dedupe(mut roots: Vec<Converged>, ctx: &PrecisionContext) -> Vec<Converged> {
    let mut out: Vec<Converged> = Vec::new();
    roots.sort_by(|a, b| order_key(&a.root).partial_cmp(&order_key(&b.root)).unwrap());
    for r in roots.drain(..) {
        if !out.iter().any(|o| close(&o.root, &r.root, ctx)) {
            out.push(r);
        }
    }
    out
}

fn order_key(z: &Complex) -> (f64, f64, f64) {
    let a = abs(z).to_f64();
    (a, z.real().to_f64(), z.imag().to_f64())
}

fn sort_by_magnitude(roots: &mut [Converged]) {
    roots.sort_by(|a, b| order_key(&a.root).partial_cmp(&order_key(&b.root)).unwrap());
}

/// Search radius at which the first few roots are expected.
fn initial_radius(x: &Float) -> f64 {
    x.to_f64() + 2.37
}

/// Barrier roots with `Im μ ≤ 0`; real roots get an exactly zero imaginary part.
fn canonical_barrier(mut c: Converged, ctx: &PrecisionContext) -> Converged {
    let snap = 10f64.powi(-((ctx.working_digits() / 2) as i32));
    let unit = abs(&c.root).to_f64().max(1.0);
    if c.root.imag().to_f64().abs() <= snap * unit {
        let p = c.root.imag().prec();
        *c.root.mut_imag() = Float::new(p);
    } else if *c.root.imag() > 0 {
        c.root.conj_mut();
    }
    c
}

fn make_root(
    lambda: &Float,
    kind: RootKind,
    m: i64,
    n: usize,
    c: Converged,
    family: Option<Family>,
) -> SpectralRoot {
    SpectralRoot {
        lambda: lambda.clone(),
        kind,
        m,
        n,
        energy: energy_from_order(&c.root),
        order: c.root,
        family,
        residual: c.residual,
    }
}

/// Collects roots from growing search regions until `count` lie within a
/// radius that the region fully covers; each growth step only searches the
/// newly added strips.
fn grow_search(
    x: &Float,
    count: usize,
    ctx: &PrecisionContext,
    region: impl Fn(f64) -> Rect,
    searcher: &Searcher<'_>,
    canonical: impl Fn(Converged) -> Converged,
) -> Result<Vec<Converged>> {
    let mut radius = initial_radius(x);
    let mut covered: Option<Rect> = None;
    let mut found: Vec<Converged> = Vec::new();
    while radius <= MAX_SEARCH_RADIUS {
        let outer = region(radius);
        let pieces = match &covered {
            None => vec![outer],
            Some(inner) => outer.minus(inner),
        };
        for piece in pieces {
            found.extend(searcher.roots_in(&piece)?.into_iter().map(&canonical));
        }
        covered = Some(outer);
        found = dedupe(std::mem::take(&mut found), ctx);
        sort_by_magnitude(&mut found);
        let inside = found
            .iter()
            .filter(|c| abs(&c.root).to_f64() <= radius * 0.999)
            .count();
        if inside >= count {
            found.truncate(count);
            return Ok(found);
        }
        radius *= RADIUS_GROWTH;
    }
    Err(Error::RootSearch(format!(
        "fewer than {count} roots within |order| < {MAX_SEARCH_RADIUS}"
    )))
}

/// First `count` roots of `I_μ(2√λ) = 0` by `|μ|`.
pub fn barrier_roots(lambda: &Float, count: usize, ctx: &PrecisionContext) -> Result<Vec<SpectralRoot>> {
    check_lambda(lambda)?;
    check_count(count)?;
    let x = condition_argument(lambda, ctx.prec());
    let searcher = Searcher::new(Condition::Barrier, &x, ctx);
    let roots = grow_search(
        &x,
        count,
        ctx,
        |r| Rect::new(-r, RE_EDGE, -r, IM_EDGE),
        &searcher,
        |c| canonical_barrier(c, ctx),
    )?;
    Ok(roots
        .into_iter()
        .enumerate()
        .map(|(n, c)| make_root(lambda, RootKind::Barrier, 0, n, c, None))
        .collect())
}

/// Second-kind well roots sit near `k/m` with `k` not a multiple of `m`.
fn classify_family(order: &Complex, m: i64) -> Family {
    let m = m.unsigned_abs() as f64;
    if m < 2.0 {
        return Family::First;
    }
    let t = order.real().to_f64() * m;
    let k = t.round();
    let is_multiple = (k / m).fract() == 0.0;
    let dist = ((t - k) / m).hypot(order.imag().to_f64());
    if !is_multiple && dist < 0.25 / m {
        Family::Second
    } else {
        Family::First
    }
}

/// First `count` roots of the well condition on sheet `m` by `|ν|`, taken
/// with `Re ν < 0` (`-ν` is also a root). Negative `m` returns the
/// conjugates of sheet `|m|`.
pub fn well_resonances(
    lambda: &Float,
    m: i64,
    count: usize,
    ctx: &PrecisionContext,
) -> Result<Vec<SpectralRoot>> {
    check_lambda(lambda)?;
    check_count(count)?;
    if m == 0 {
        return Err(Error::InvalidArgument(
            "well resonances need a nonzero sheet index; m = 0 gives bound states".into(),
        ));
    }
    if m < 0 {
        let mut roots = well_resonances(lambda, -m, count, ctx)?;
        for r in &mut roots {
            r.m = m;
            r.order.conj_mut();
            r.energy.conj_mut();
        }
        return Ok(roots);
    }
    let x = condition_argument(lambda, ctx.prec());
    let searcher = Searcher::new(Condition::Well { m }, &x, ctx);
    let roots = grow_search(
        &x,
        count,
        ctx,
        |r| Rect::new(-r, WELL_RE_EDGE, -r, r),
        &searcher,
        |c| c,
    )?;
    for c in &roots {
        warn_if_near_integer(&c.root);
    }
    Ok(roots
        .into_iter()
        .enumerate()
        .map(|(n, c)| {
            let family = classify_family(&c.root, m);
            make_root(lambda, RootKind::Well, m, n, c, Some(family))
        })
        .collect())
}

fn warn_if_near_integer(order: &Complex) {
    let re = order.real().to_f64();
    let d = (re - re.round()).hypot(order.imag().to_f64());
    if d < 1e-8 {
        log::warn!("well root {re:+e} lies within 1e-8 of an integer order");
    }
}

/// First `count` bound states `K_{iβ}(2√λ) = 0`, `β > 0`, by increasing `β`.
pub fn bound_states(lambda: &Float, count: usize, ctx: &PrecisionContext) -> Result<Vec<SpectralRoot>> {
    check_lambda(lambda)?;
    check_count(count)?;
    let x = condition_argument(lambda, ctx.prec());
    let coarse = PrecisionContext::new(30, 10)?;
    let xc = Float::with_val(coarse.prec(), &x);
    let xf = x.to_f64();
    let sample = |beta: f64| -> Result<f64> {
        let nu = complex_f64(coarse.prec(), 0.0, beta);
        let v = evaluate_condition(Condition::Bound, &xc, &nu, &coarse, false)?;
        Ok(v.value.real().to_f64().signum())
    };

    let mut out = Vec::with_capacity(count);
    let mut beta = (0.5 * xf).max(0.05);
    let mut sign = sample(beta)?;
    while out.len() < count {
        if beta > MAX_SEARCH_RADIUS {
            return Err(Error::RootSearch(format!(
                "fewer than {count} bound states below beta = {MAX_SEARCH_RADIUS}"
            )));
        }
        // zeros of K_{iβ}(x) are spaced by about π / arccosh(β/x)
        let spacing = std::f64::consts::PI / (beta / xf).max(1.0).acosh().max(0.05);
        let next = beta + (0.2 * spacing).min(0.5);
        let s = sample(next)?;
        if s != sign && s != 0.0 && sign != 0.0 {
            let (mut lo, mut hi) = (beta, next);
            while hi - lo > 1e-12 * hi {
                let mid = 0.5 * (lo + hi);
                if sample(mid)? == sign {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let seed = complex_f64(ctx.prec(), 0.0, 0.5 * (lo + hi));
            let c = newton(Condition::Bound, &x, &seed, ctx, Axis::Imaginary)?;
            let n = out.len();
            out.push(make_root(lambda, RootKind::Bound, 0, n, c, None));
        }
        beta = next;
        sign = s;
    }
    Ok(out)
}

/// Every zero of the condition inside `rect`, polished at `ctx`.
pub fn roots_in_rect(
    cond: Condition,
    lambda: &Float,
    rect: &Rect,
    ctx: &PrecisionContext,
) -> Result<Vec<Complex>> {
    check_lambda(lambda)?;
    let x = condition_argument(lambda, ctx.prec());
    let searcher = Searcher::new(cond, &x, ctx);
    let found = dedupe(searcher.roots_in(rect)?, ctx);
    Ok(found.into_iter().map(|c| c.root).collect())
}

fn condition_for(kind: RootKind, m: i64) -> Condition {
    match kind {
        RootKind::Barrier => Condition::Barrier,
        RootKind::Bound => Condition::Bound,
        RootKind::Well => Condition::Well { m },
    }
}

/// Newton from `seed` on the condition selected by `kind` and `m`.
pub fn refine_root(
    kind: RootKind,
    lambda: &Float,
    m: i64,
    n: usize,
    seed: &Complex,
    ctx: &PrecisionContext,
) -> Result<SpectralRoot> {
    check_lambda(lambda)?;
    let x = condition_argument(lambda, ctx.prec());
    let axis = if kind == RootKind::Bound {
        Axis::Imaginary
    } else {
        Axis::Free
    };
    let c = newton(condition_for(kind, m), &x, seed, ctx, axis)?;
    let c = match kind {
        RootKind::Barrier => canonical_barrier(c, ctx),
        _ => c,
    };
    let family = (kind == RootKind::Well).then(|| classify_family(&c.root, m));
    Ok(make_root(lambda, kind, if kind == RootKind::Well { m } else { 0 }, n, c, family))
}

/// The well root on sheet `m` closest to `target`.
pub fn nearest_well_root(
    lambda: &Float,
    m: i64,
    target: &Complex,
    ctx: &PrecisionContext,
) -> Result<SpectralRoot> {
    check_lambda(lambda)?;
    if m == 0 {
        return Err(Error::InvalidArgument("sheet index must be nonzero".into()));
    }
    let x = condition_argument(lambda, ctx.prec());
    let cond = Condition::Well { m };
    let searcher = Searcher::new(cond, &x, ctx);
    let (tr, ti) = (target.real().to_f64(), target.imag().to_f64());
    let distance = |z: &Complex| abs(&Complex::with_val(ctx.prec(), z - target)).to_f64();

    let mut best = match newton(cond, &x, target, ctx, Axis::Free) {
        Ok(c) => Some(c),
        Err(Error::NoConvergence { .. }) | Err(Error::Divergence { .. }) => None,
        Err(e) => return Err(e),
    };
    if best.is_none() {
        let mut half = 0.1;
        while best.is_none() && half < MAX_SEARCH_RADIUS {
            let found = searcher.roots_in(&Rect::square(tr, ti, half))?;
            best = found
                .into_iter()
                .min_by(|a, b| distance(&a.root).partial_cmp(&distance(&b.root)).unwrap());
            half *= 2.0;
        }
    }
    let mut best = best.ok_or_else(|| Error::RootSearch("no well root near target".into()))?;

    let unit = tr.hypot(ti).max(1.0);
    // a single zero in a square around the target that contains the disc
    // through the candidate proves the candidate is the nearest root
    let half = (distance(&best.root) * 1.5).max(unit * 1e-9);
    let (_, k) = searcher.count_robust(&Rect::square(tr, ti, half))?;
    if k > 1 {
        let found = searcher.roots_in(&Rect::square(tr, ti, half))?;
        for c in found {
            let (dc, db) = (distance(&c.root), distance(&best.root));
            let tie = (dc - db).abs() <= 1e-12 * db.max(f64::MIN_POSITIVE);
            if dc < db && !tie || tie && abs(&c.root) < abs(&best.root) {
                best = c;
            }
        }
    }
    let family = classify_family(&best.root, m);
    Ok(make_root(lambda, RootKind::Well, m, 0, best, Some(family)))
}
