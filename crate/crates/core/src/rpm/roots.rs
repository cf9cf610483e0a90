use std::f64::consts::PI;

use rug::{Complex, Float};

use super::poly::{magnitude_scale, EnergyPolynomial};
use crate::error::{Error, Result};
use crate::mpcore::{pow10, PrecisionContext};

/// One zero of a polynomial from [`all_roots`].
#[derive(Debug, Clone, PartialEq)]
pub struct PolyRoot {
    pub value: Complex,
    /// `|p(z)| / Σ|c_k||z|^k`.
    pub residual: Float,
    pub converged: bool,
}

fn horner(coeffs: &[Complex], z: &Complex) -> (Complex, Complex) {
    let prec = z.prec();
    let mut p = Complex::new(prec);
    let mut dp = Complex::new(prec);
    for c in coeffs.iter().rev() {
        dp *= z;
        dp += &p;
        p *= z;
        p += c;
    }
    (p, dp)
}

/// Every complex zero of `poly`, by Aberth–Ehrlich simultaneous iteration
/// started from circles fitted to the Newton polygon of the coefficients. Real polynomials yield sets
/// closed under conjugation, listed with each pair adjacent (positive
/// imaginary part first) in order of increasing real part.
pub fn all_roots(poly: &EnergyPolynomial, ctx: &PrecisionContext) -> Result<Vec<PolyRoot>> {
    let degree = match poly.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::InvalidArgument("polynomial degree must be at least 1".into())),
    };
    let prec = ctx.prec();
    let mut coeffs = poly.to_complex(prec);
    let lead = coeffs[degree].clone();
    for c in &mut coeffs {
        *c /= &lead;
    }

    let mut z = initial_points(&coeffs, prec);

    let eps = pow10(-(ctx.working_digits() as i32), prec);
    let noise = Float::with_val(prec, Float::with_val(prec, 4 * degree as u32) >> (prec as i32));
    let mut done = vec![false; degree];
    let max_iterations = 200 + 20 * degree;
    for _ in 0..max_iterations {
        if done.iter().all(|&d| d) {
            break;
        }
        for k in 0..degree {
            if done[k] {
                continue;
            }
            let (p, dp) = horner(&coeffs, &z[k]);
            // at the rounding level of the evaluation no further progress is possible
            let floor = Float::with_val(prec, magnitude_scale(&coeffs, &z[k]) * &noise);
            if Float::with_val(prec, p.abs_ref()) <= floor {
                done[k] = true;
                continue;
            }
            let w = Complex::with_val(prec, &p / &dp);
            let mut s = Complex::new(prec);
            for (j, zj) in z.iter().enumerate() {
                if j != k {
                    let diff = Complex::with_val(prec, &z[k] - zj);
                    s += diff.recip();
                }
            }
            let denom = Complex::with_val(prec, 1) - Complex::with_val(prec, &w * &s);
            let step = w / denom;
            let size = Float::with_val(prec, step.abs_ref());
            let scale = Float::with_val(prec, z[k].abs_ref()).max(&Float::with_val(prec, 1));
            z[k] -= &step;
            if size <= Float::with_val(prec, &eps * &scale) {
                done[k] = true;
            }
        }
    }

    let threshold = pow10(-(ctx.working_digits() as i32 - 6), prec);
    let mut roots: Vec<PolyRoot> = z
        .into_iter()
        .map(|value| {
            let (p, _) = horner(&coeffs, &value);
            let scale = magnitude_scale(&coeffs, &value);
            let residual = Float::with_val(prec, p.abs_ref()) / scale;
            let converged = residual <= threshold;
            PolyRoot {
                value,
                residual,
                converged,
            }
        })
        .collect();
    pair_conjugates(&mut roots, ctx);
    Ok(roots)
}

/// Starting points on one circle per edge of the upper convex hull of
/// `(k, log|c_k|)`, the radius of each circle matching the slope of its edge
/// (Bini's initialisation). Coefficient moduli are compared in logarithms so
/// ranges far beyond `f64` are handled.
fn initial_points(coeffs: &[Complex], prec: u32) -> Vec<Complex> {
    let logs: Vec<(usize, f64)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, Float::with_val(prec, c.abs_ref()).log2().to_f64()))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &p in &logs {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b when it lies on or below the chord a–p
            let cross = (b.0 as f64 - a.0 as f64) * (p.1 - a.1) - (b.1 - a.1) * (p.0 as f64 - a.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut z = Vec::with_capacity(coeffs.len() - 1);
    // roots at the origin for vanishing low-order coefficients
    for _ in 0..hull[0].0 {
        z.push(Complex::with_val(prec, (1e-30 * (z.len() + 1) as f64, 0.0)));
    }
    for w in hull.windows(2) {
        let ((i, li), (j, lj)) = (w[0], w[1]);
        let count = j - i;
        let radius = Float::with_val(prec, (li - lj) / count as f64).exp2();
        for m in 0..count {
            let angle = 2.0 * PI * m as f64 / count as f64 + PI / (2.0 * count as f64) + 0.4;
            let dir = Complex::with_val(prec, (angle.cos(), angle.sin()));
            z.push(dir * &radius);
        }
    }
    z
}

fn gap_to(a: &Complex, b: &Complex) -> Float {
    let d = Complex::with_val(a.prec(), a - b);
    Float::with_val(a.prec().0, d.abs_ref())
}

/// Snaps near-real roots onto the axis and makes each complex pair exact
/// conjugates of each other.
fn pair_conjugates(roots: &mut [PolyRoot], ctx: &PrecisionContext) {
    let prec = ctx.prec();
    let half = pow10(-(ctx.working_digits() as i32 / 2), prec);
    let unit = |z: &Complex| Float::with_val(prec, z.abs_ref()).max(&Float::with_val(prec, 1));
    for r in roots.iter_mut() {
        let tol = Float::with_val(prec, &half * unit(&r.value));
        if Float::with_val(prec, r.value.imag().abs_ref()) <= tol {
            *r.value.mut_imag() = Float::new(prec);
        }
    }
    let mut upper: Vec<usize> = (0..roots.len()).filter(|&i| *roots[i].value.imag() > 0).collect();
    let mut lower: Vec<usize> = (0..roots.len()).filter(|&i| *roots[i].value.imag() < 0).collect();
    upper.sort_by(|&a, &b| roots[a].value.real().total_cmp(roots[b].value.real()));
    let mut paired = vec![false; roots.len()];
    for &i in &upper {
        let conj = Complex::with_val(prec, roots[i].value.conj_ref());
        let best = lower.iter().enumerate().min_by(|(_, &a), (_, &b)| {
            let da = gap_to(&roots[a].value, &conj);
            let db = gap_to(&roots[b].value, &conj);
            da.total_cmp(&db)
        });
        let Some((pos, &j)) = best else { break };
        let gap = gap_to(&roots[j].value, &conj);
        if gap > Float::with_val(prec, &half * unit(&conj)) {
            continue;
        }
        lower.swap_remove(pos);
        paired[i] = true;
        paired[j] = true;
        let other = Complex::with_val(prec, roots[j].value.conj_ref());
        let mean = Complex::with_val(prec, &roots[i].value + &other) / 2u32;
        roots[j].value = Complex::with_val(prec, mean.conj_ref());
        roots[i].value = mean;
        let (ri, rj) = (roots[i].residual.clone(), roots[j].residual.clone());
        let worst = ri.max(&rj);
        roots[i].residual = worst.clone();
        roots[j].residual = worst;
    }
    // A real polynomial has no unpaired non-real roots. Inside a cluster of
    // nearly equal real roots the computed imaginary parts are noise of the
    // size of the cluster spread, so those are put back on the axis.
    let unpaired: Vec<usize> = (0..roots.len()).filter(|&i| !paired[i] && !roots[i].value.imag().is_zero()).collect();
    for i in unpaired {
        let spread = (0..roots.len())
            .filter(|&k| k != i)
            .map(|k| gap_to(&roots[k].value, &roots[i].value))
            .min_by(|a, b| a.total_cmp(b));
        if let Some(spread) = spread {
            if Float::with_val(prec, roots[i].value.imag().abs_ref()) <= spread {
                *roots[i].value.mut_imag() = Float::new(prec);
            }
        }
    }
    roots.sort_by(|a, b| {
        a.value
            .real()
            .total_cmp(b.value.real())
            .then_with(|| b.value.imag().clone().abs().total_cmp(&a.value.imag().clone().abs()))
            .then_with(|| b.value.imag().total_cmp(a.value.imag()))
    });
}
