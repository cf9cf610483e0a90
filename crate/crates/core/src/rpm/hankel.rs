use rug::{Complex, Float, Rational};

use super::poly::EnergyPolynomial;
use super::potential::PotentialSeries;
use super::ring::{Dual, Ring};
use super::taylor::taylor_generic;
use crate::error::{Error, Result};
use crate::mpcore::{pow10, PrecisionContext};

/// Largest dimension accepted by [`hankel_symbolic`].
pub const SYMBOLIC_LIMIT: usize = 16;

/// Size `D` and displacement `d` of the Hankel matrix with entries
/// `f_{d+i+j-1}`, `i, j = 1..D` (`d = M - N`, `D = N + 1` for a `[M/N]` Padé
/// approximant). `D = 0` denotes the empty determinant, equal to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HankelSpec {
    pub dimension: usize,
    pub displacement: i64,
}

impl HankelSpec {
    pub fn new(dimension: usize, displacement: i64) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidArgument("Hankel dimension must be at least 1".into()));
        }
        Ok(Self {
            dimension,
            displacement,
        })
    }

    /// Number of Taylor coefficients `f_0 … f_{2D+d-1}` the determinant uses.
    pub fn coefficient_count(&self) -> usize {
        (2 * self.dimension as i64 + self.displacement).max(1) as usize
    }

    fn entry<'a, T>(&self, f: &'a [T], zero: &'a T, i: usize, j: usize) -> &'a T {
        let k = self.displacement + (i + j) as i64 + 1;
        if k < 0 {
            zero
        } else {
            &f[k as usize]
        }
    }
}

/// Outcome of the quotient recursion when a divisor vanishes.
pub(crate) struct Breakdown {
    dimension: usize,
    displacement: i64,
}

impl From<Breakdown> for Error {
    fn from(b: Breakdown) -> Self {
        Error::RecursionBreakdown {
            dimension: b.dimension,
            displacement: b.displacement.max(0) as usize,
        }
    }
}

/// `H_D^d` from Sylvester's identity
/// `H_k^c H_{k-2}^{c+2} = H_{k-1}^c H_{k-1}^{c+2} - (H_{k-1}^{c+1})^2`,
/// starting from `H_0 = 1` and `H_1^c = f_{c+1}`. `cancelled(difference,
/// a, b)` reports whether `a - b` lost all significant digits; such a cell
/// counts as zero when it is later needed as a divisor.
pub(crate) fn recursion<T: Ring>(
    f: &[T],
    spec: HankelSpec,
    cancelled: impl Fn(&T, &T, &T) -> bool,
) -> std::result::Result<T, Breakdown> {
    let zero = f[0].zero_like();
    let one = f[0].one_like();
    let dim = spec.dimension;
    if dim == 0 {
        return Ok(one);
    }
    let d = spec.displacement;
    let at = |k: i64| -> T {
        if k < 0 {
            zero.clone()
        } else {
            f[k as usize].clone()
        }
    };
    // level k holds H_k^{d+o} for o = 0 ..= 2(D-k)
    let mut older: Vec<T> = vec![one; 2 * dim + 1];
    let mut older_lost = vec![false; 2 * dim + 1];
    let mut old: Vec<T> = (0..2 * dim - 1).map(|o| at(d + o as i64 + 1)).collect();
    let mut old_lost = vec![false; 2 * dim - 1];
    for k in 2..=dim {
        let width = 2 * (dim - k) + 1;
        let mut next = Vec::with_capacity(width);
        let mut lost = Vec::with_capacity(width);
        for o in 0..width {
            let den = &older[o + 2];
            if den.is_zero() || older_lost[o + 2] {
                return Err(Breakdown {
                    dimension: k,
                    displacement: d + o as i64,
                });
            }
            let a = old[o].mul(&old[o + 2]);
            let b = old[o + 1].mul(&old[o + 1]);
            let num = a.sub(&b);
            lost.push(cancelled(&num, &a, &b));
            next.push(num.div(den));
        }
        older = old;
        older_lost = old_lost;
        old = next;
        old_lost = lost;
    }
    Ok(old.swap_remove(0))
}

/// Fraction-free (Bareiss) elimination with row pivoting on the explicit
/// Hankel matrix.
pub(crate) fn bareiss<T: Ring>(f: &[T], spec: HankelSpec) -> T {
    let zero = f[0].zero_like();
    let n = spec.dimension;
    if n == 0 {
        return f[0].one_like();
    }
    let mut a: Vec<Vec<T>> = (0..n)
        .map(|i| (0..n).map(|j| spec.entry(f, &zero, i, j).clone()).collect())
        .collect();
    let mut negate = false;
    let mut prev = f[0].one_like();
    for k in 0..n - 1 {
        let p = (k..n)
            .max_by(|&x, &y| a[x][k].pivot_score().total_cmp(&a[y][k].pivot_score()).then(y.cmp(&x)))
            .unwrap();
        if a[p][k].is_zero() {
            return zero;
        }
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = v.div(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

fn breakdown_threshold(ctx: &PrecisionContext) -> Float {
    pow10(-(ctx.working_digits() as i32 - 4), 64)
}

/// `H_D^d(E)` and `dH_D^d/dE` by the quotient recursion, the derivative
/// carried alongside every intermediate quantity.
pub fn hankel_numeric(
    pot: &PotentialSeries,
    energy: &Complex,
    spec: HankelSpec,
    ctx: &PrecisionContext,
) -> Result<(Complex, Complex)> {
    let e = Dual::variable(energy, ctx.prec());
    let f = taylor_generic(pot, &e, spec.coefficient_count());
    let tol = breakdown_threshold(ctx);
    let h = recursion(&f, spec, |diff, a, b| {
        let scale = a.magnitude().max(&b.magnitude());
        diff.magnitude() < Float::with_val(64, &scale * &tol)
    })?;
    Ok((h.value, h.deriv))
}

/// As [`hankel_numeric`], switching to elimination when the recursion breaks
/// down.
pub fn hankel_numeric_or_direct(
    pot: &PotentialSeries,
    energy: &Complex,
    spec: HankelSpec,
    ctx: &PrecisionContext,
) -> Result<(Complex, Complex)> {
    match hankel_numeric(pot, energy, spec, ctx) {
        Err(Error::RecursionBreakdown { .. }) => {
            log::debug!("Hankel recursion breakdown at E = {energy}; using elimination");
            let e = Dual::variable(energy, ctx.prec());
            let f = taylor_generic(pot, &e, spec.coefficient_count());
            let h = bareiss(&f, spec);
            Ok((h.value, h.deriv))
        }
        other => other,
    }
}

/// `H_D^d(E)` by elimination on the explicit matrix.
pub fn hankel_direct(pot: &PotentialSeries, energy: &Complex, spec: HankelSpec, ctx: &PrecisionContext) -> Complex {
    let e = Complex::with_val(ctx.prec(), energy);
    let f = taylor_generic(pot, &e, spec.coefficient_count());
    bareiss(&f, spec)
}

/// `H_D^d(E)` in exact rational arithmetic by the quotient recursion.
pub fn hankel_exact(pot: &PotentialSeries, energy: &Rational, spec: HankelSpec) -> Result<Rational> {
    let f = taylor_generic(pot, energy, spec.coefficient_count());
    Ok(recursion(&f, spec, |_, _, _| false)?)
}

/// `H_D^d(E)` in exact rational arithmetic by elimination.
pub fn hankel_direct_exact(pot: &PotentialSeries, energy: &Rational, spec: HankelSpec) -> Rational {
    let f = taylor_generic(pot, energy, spec.coefficient_count());
    bareiss(&f, spec)
}

/// `H_D^d` as an exact polynomial in `E`, for `D ≤ SYMBOLIC_LIMIT`.
pub fn hankel_symbolic(pot: &PotentialSeries, spec: HankelSpec) -> Result<EnergyPolynomial> {
    hankel_symbolic_with_limit(pot, spec, SYMBOLIC_LIMIT)
}

/// [`hankel_symbolic`] with an explicit dimension cap.
pub fn hankel_symbolic_with_limit(pot: &PotentialSeries, spec: HankelSpec, limit: usize) -> Result<EnergyPolynomial> {
    if spec.dimension > limit {
        return Err(Error::ResourceLimit {
            requested: spec.dimension,
            limit,
        });
    }
    let f = taylor_generic(pot, &EnergyPolynomial::variable(), spec.coefficient_count());
    match recursion(&f, spec, |_, _, _| false) {
        Ok(h) => Ok(h),
        Err(_) => Ok(bareiss(&f, spec)),
    }
}
