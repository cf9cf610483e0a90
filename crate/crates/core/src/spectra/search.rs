//! Complete root sets inside rectangles by the argument principle: the
//! winding number of the condition along the boundary counts the zeros
//! inside, and rectangles are bisected until each holds one zero, which is
//! then polished by Newton.

use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::PI;

use rug::ops::Pow;
use rug::{Complex, Float};

use super::condition::{evaluate_condition, Condition};
use super::newton::{newton_within, Axis, Budget, Converged};
use crate::error::{Error, Result};
use crate::mpcore::{complex_f64, PrecisionContext};

/// Axis-aligned rectangle in the complex order plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Rect {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Self {
        Self {
            re_min,
            re_max,
            im_min,
            im_max,
        }
    }

    /// Square of half-side `half` centred on `(re, im)`.
    pub fn square(re: f64, im: f64, half: f64) -> Self {
        Self::new(re - half, re + half, im - half, im + half)
    }

    fn width(&self) -> f64 {
        self.re_max - self.re_min
    }

    fn height(&self) -> f64 {
        self.im_max - self.im_min
    }

    fn size(&self) -> f64 {
        self.width().max(self.height())
    }

    fn center(&self) -> (f64, f64) {
        (
            0.5 * (self.re_min + self.re_max),
            0.5 * (self.im_min + self.im_max),
        )
    }

    fn contains(&self, z: &Complex, margin: f64) -> bool {
        let re = z.real().to_f64();
        let im = z.imag().to_f64();
        re >= self.re_min - margin
            && re <= self.re_max + margin
            && im >= self.im_min - margin
            && im <= self.im_max + margin
    }

    fn grown(&self, by: f64) -> Self {
        Self::new(
            self.re_min - by,
            self.re_max + by,
            self.im_min - by,
            self.im_max + by,
        )
    }

    /// `self` minus `inner` (which must lie inside) as up to four rectangles.
    pub(crate) fn minus(&self, inner: &Rect) -> Vec<Rect> {
        let mut out = Vec::with_capacity(4);
        let mut push = |r: Rect| {
            if r.width() > 0.0 && r.height() > 0.0 {
                out.push(r);
            }
        };
        push(Rect::new(self.re_min, inner.re_min, self.im_min, self.im_max));
        push(Rect::new(inner.re_max, self.re_max, self.im_min, self.im_max));
        push(Rect::new(inner.re_min, inner.re_max, self.im_min, inner.im_min));
        push(Rect::new(inner.re_min, inner.re_max, inner.im_max, self.im_max));
        out
    }

    fn split(&self, ratio: f64) -> (Rect, Rect) {
        if self.width() >= self.height() {
            let cut = self.re_min + ratio * self.width();
            (
                Rect::new(self.re_min, cut, self.im_min, self.im_max),
                Rect::new(cut, self.re_max, self.im_min, self.im_max),
            )
        } else {
            let cut = self.im_min + ratio * self.height();
            (
                Rect::new(self.re_min, self.re_max, self.im_min, cut),
                Rect::new(self.re_min, self.re_max, cut, self.im_max),
            )
        }
    }
}

const SPLIT_RATIOS: [f64; 4] = [0.4813, 0.5377, 0.4409, 0.5921];
const MAX_REFINE_DEPTH: u32 = 24;
const MAX_SPLIT_DEPTH: u32 = 80;
const PHASE_STEP: f64 = 1.0;

pub(crate) struct Searcher<'a> {
    cond: Condition,
    x: Float,
    ctx: &'a PrecisionContext,
    axis: Axis,
    /// Lattice spacing for boundary samples; shared edges reuse samples.
    spacing: f64,
    memo: RefCell<HashMap<(u64, u64, u32), Option<f64>>>,
}

fn wrap(mut d: f64) -> f64 {
    while d > PI {
        d -= 2.0 * PI;
    }
    while d <= -PI {
        d += 2.0 * PI;
    }
    d
}

impl<'a> Searcher<'a> {
    pub(crate) fn new(cond: Condition, x: &Float, ctx: &'a PrecisionContext) -> Self {
        let m = match cond {
            Condition::Well { m } | Condition::WellCscForm { m } => m.unsigned_abs() as f64,
            _ => 0.0,
        };
        Self {
            cond,
            x: x.clone(),
            ctx,
            axis: Axis::Free,
            spacing: 1.0 / (3.0 + m),
            memo: RefCell::new(HashMap::new()),
        }
    }

    /// Precision for boundary sampling: enough to resolve the condition
    /// across a rectangle of the given size.
    fn sampling_context(&self, rect: &Rect) -> PrecisionContext {
        let (cr, ci) = rect.center();
        let unit = cr.hypot(ci).max(1.0);
        let extra = (-(rect.size() / unit).log10()).max(0.0).ceil() as u32;
        PrecisionContext::new(30 + extra, 10).expect("valid digits")
    }

    /// Phase of the condition at a point, or `None` when the point is too
    /// close to a zero (or an excluded order) for the phase to be trusted.
    fn phase_at(&self, re: f64, im: f64, sctx: &PrecisionContext) -> Result<Option<f64>> {
        let key = (re.to_bits(), im.to_bits(), sctx.working_digits());
        if let Some(v) = self.memo.borrow().get(&key) {
            return Ok(*v);
        }
        let v = self.phase_uncached(re, im, sctx)?;
        self.memo.borrow_mut().insert(key, v);
        Ok(v)
    }

    fn phase_uncached(&self, re: f64, im: f64, sctx: &PrecisionContext) -> Result<Option<f64>> {
        let nu = complex_f64(sctx.prec(), re, im);
        let x = Float::with_val(sctx.prec(), &self.x);
        let v = match evaluate_condition(self.cond, &x, &nu, sctx, false) {
            Ok(v) => v,
            Err(Error::IntegerOrder(_)) | Err(Error::NegativeIntegerOrder(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        let floor = Float::with_val(64, 10).pow(8 - sctx.working_digits() as i32);
        if v.relative_residual() < floor {
            return Ok(None);
        }
        Ok(Some(Float::with_val(64, v.value.arg_ref()).to_f64()))
    }

    /// Net phase change along the axis-aligned segment `a → b`, sampled at
    /// the endpoints and at every lattice point in between.
    fn edge_change(&self, a: (f64, f64), b: (f64, f64), sctx: &PrecisionContext) -> Result<Option<f64>> {
        let horizontal = a.1 == b.1;
        let (from, to) = if horizontal { (a.0, b.0) } else { (a.1, b.1) };
        let (lo, hi) = (from.min(to), from.max(to));
        let span = hi - lo;
        let unit = lo.abs().max(hi.abs()).max(1.0);
        let mut ts = Vec::new();
        if span < unit * 1e-6 {
            // too fine for a shared lattice in f64
            let n = 16;
            ts.extend((0..=n).map(|i| lo + span * i as f64 / n as f64));
        } else {
            let mut h = self.spacing;
            // keep short (and very long) edges to a sane sample count
            while span / h < 8.0 {
                h /= 4.0;
            }
            while span / h > 4096.0 {
                h *= 2.0;
            }
            ts.push(lo);
            let first = (lo / h).floor() as i64 + 1;
            let last = (hi / h).ceil() as i64 - 1;
            for k in first..=last {
                let t = k as f64 * h;
                if t > lo && t < hi {
                    ts.push(t);
                }
            }
            ts.push(hi);
        }
        if from > to {
            ts.reverse();
        }
        let point = |t: f64| if horizontal { (t, a.1) } else { (a.0, t) };
        let mut samples = Vec::with_capacity(ts.len());
        for &t in &ts {
            let p = point(t);
            match self.phase_at(p.0, p.1, sctx)? {
                Some(ph) => samples.push((t, ph)),
                None => return Ok(None),
            }
        }
        let mut total = 0.0;
        for w in samples.windows(2) {
            match self.refine(w[0], w[1], &point, sctx, 0)? {
                Some(d) => total += d,
                None => return Ok(None),
            }
        }
        Ok(Some(total))
    }

    fn refine(
        &self,
        lo: (f64, f64),
        hi: (f64, f64),
        at: &dyn Fn(f64) -> (f64, f64),
        sctx: &PrecisionContext,
        depth: u32,
    ) -> Result<Option<f64>> {
        let d = wrap(hi.1 - lo.1);
        if d.abs() <= PHASE_STEP {
            return Ok(Some(d));
        }
        if depth >= MAX_REFINE_DEPTH {
            return Ok(None);
        }
        let tm = 0.5 * (lo.0 + hi.0);
        let p = at(tm);
        let mid = match self.phase_at(p.0, p.1, sctx)? {
            Some(ph) => (tm, ph),
            None => return Ok(None),
        };
        let left = self.refine(lo, mid, at, sctx, depth + 1)?;
        let right = self.refine(mid, hi, at, sctx, depth + 1)?;
        Ok(match (left, right) {
            (Some(l), Some(r)) => Some(l + r),
            _ => None,
        })
    }

    /// Number of zeros inside `rect`, or `None` when the boundary passes too
    /// close to one.
    pub(crate) fn count(&self, rect: &Rect) -> Result<Option<i64>> {
        let sctx = self.sampling_context(rect);
        let corners = [
            (rect.re_min, rect.im_min),
            (rect.re_max, rect.im_min),
            (rect.re_max, rect.im_max),
            (rect.re_min, rect.im_max),
        ];
        let mut total = 0.0;
        for i in 0..4 {
            match self.edge_change(corners[i], corners[(i + 1) % 4], &sctx)? {
                Some(d) => total += d,
                None => return Ok(None),
            }
        }
        let turns = total / (2.0 * PI);
        let k = turns.round();
        if (turns - k).abs() > 0.2 || k < 0.0 {
            return Ok(None);
        }
        Ok(Some(k as i64))
    }

    /// Count for a rectangle, nudging its boundary outward if it grazes a zero.
    pub(crate) fn count_robust(&self, rect: &Rect) -> Result<(Rect, i64)> {
        let mut r = *rect;
        for attempt in 0..6 {
            if let Some(k) = self.count(&r)? {
                return Ok((r, k));
            }
            let nudge = r.size() * 1e-3 * (1.0 + attempt as f64) * 0.731;
            r = rect.grown(nudge);
        }
        Err(Error::RootSearch(format!(
            "winding number undetermined on [{}, {}] x [{}, {}]",
            rect.re_min, rect.re_max, rect.im_min, rect.im_max
        )))
    }

    /// Newton from the centre of `rect`, given up once it wanders well outside.
    fn polish(&self, rect: &Rect, confine: bool) -> Result<Converged> {
        let (re, im) = rect.center();
        let seed = complex_f64(self.ctx.prec(), re, im);
        let x = Float::with_val(self.ctx.prec(), &self.x);
        let region = confine.then(|| {
            let g = rect.grown(rect.size());
            (g.re_min, g.re_max, g.im_min, g.im_max)
        });
        let budget = if confine { Budget::PROBE } else { Budget::FULL };
        newton_within(self.cond, &x, &seed, self.ctx, self.axis, region, budget)
    }

    /// All zeros inside `rect` (after a possible outward nudge).
    pub(crate) fn roots_in(&self, rect: &Rect) -> Result<Vec<Converged>> {
        let (r, k) = self.count_robust(rect)?;
        let mut out = Vec::new();
        self.solve(&r, k, 0, &mut out)?;
        Ok(out)
    }

    fn solve(&self, rect: &Rect, count: i64, depth: u32, out: &mut Vec<Converged>) -> Result<()> {
        if count <= 0 {
            return Ok(());
        }
        let (cr, ci) = rect.center();
        let margin = rect.size() * 1e-6;
        if count == 1 {
            if let Ok(c) = self.polish(rect, true) {
                if rect.contains(&c.root, margin) {
                    out.push(c);
                    return Ok(());
                }
            }
        }
        let unit = cr.hypot(ci).max(1.0);
        if depth >= MAX_SPLIT_DEPTH || rect.size() < unit * 1e-14 {
            // a cluster below resolution: report the polished centre once
            let c = self.polish(rect, false)?;
            out.push(c);
            return Ok(());
        }
        for ratio in SPLIT_RATIOS {
            let (a, b) = rect.split(ratio);
            let Some(na) = self.count(&a)? else { continue };
            let nb = count - na;
            if nb < 0 {
                continue;
            }
            self.solve(&a, na, depth + 1, out)?;
            self.solve(&b, nb, depth + 1, out)?;
            return Ok(());
        }
        Err(Error::RootSearch(format!(
            "could not split [{}, {}] x [{}, {}] holding {count} zeros",
            rect.re_min, rect.re_max, rect.im_min, rect.im_max
        )))
    }
}
