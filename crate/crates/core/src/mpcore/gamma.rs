//! Gamma and digamma of complex argument by upward argument shift followed by
//! the Stirling asymptotic series, with reflection into `Re z >= 1/2`.

use std::sync::Mutex;

use rug::float::Constant;
use rug::{Complex, Float, Integer, Rational};

use super::num::{abs, is_near_integer};
use super::precision::{digits_to_bits, pow10};
use super::trig::{cot_pi, sin_pi};
use crate::error::{Error, Result};
use crate::mpcore::PrecisionContext;

/// B_0, B_2, B_4, … cached across calls; extended on demand.
static EVEN_BERNOULLI: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// Even-index Bernoulli numbers from the tangent numbers,
/// `B_2k = (-1)^(k-1) 2k T_k / (4^k (4^k - 1))`.
fn compute_even_bernoulli(count: usize) -> Vec<Rational> {
    let n = count.max(1);
    let mut t: Vec<Integer> = vec![Integer::new(); n + 1];
    t[1] = Integer::from(1);
    for k in 2..=n {
        t[k] = Integer::from(&t[k - 1] * (k as u64 - 1));
    }
    for k in 2..=n {
        for j in k..=n {
            let a = Integer::from(&t[j - 1] * (j as u64 - k as u64));
            let b = Integer::from(&t[j] * (j as u64 - k as u64 + 2));
            t[j] = a + b;
        }
    }
    let mut out = Vec::with_capacity(n);
    out.push(Rational::from(1));
    for (k, tk) in t.iter().enumerate().take(n).skip(1) {
        let four_k = Integer::from(1) << (2 * k as u32);
        let den = Integer::from(&four_k - 1u32) * &four_k;
        let mut num = Integer::from(tk * (2 * k as u64));
        if k % 2 == 0 {
            num = -num;
        }
        out.push(Rational::from((num, den)));
    }
    out
}

/// Returns B_0, B_2, …, B_{2(count-1)} as floats of precision `prec`.
fn even_bernoulli(count: usize, prec: u32) -> Vec<Float> {
    let mut cache = EVEN_BERNOULLI.lock().unwrap_or_else(|e| e.into_inner());
    if cache.len() < count {
        *cache = compute_even_bernoulli(count.max(2 * cache.len()));
    }
    cache[..count]
        .iter()
        .map(|b| Float::with_val(prec, b))
        .collect()
}

fn digits_of(prec: u32) -> f64 {
    f64::from(prec) / std::f64::consts::LOG2_10
}

/// Radius beyond which the Stirling series reaches `prec` bits.
fn stirling_radius(prec: u32) -> f64 {
    0.6 * digits_of(prec) + 8.0
}

fn stirling_terms(prec: u32) -> usize {
    (0.55 * digits_of(prec)) as usize + 20
}

/// Smallest `n` with `|z + n| >= radius`.
fn shift_count(z: &Complex, radius: f64) -> u32 {
    let re = z.real().to_f64();
    let im = z.imag().to_f64();
    if re.hypot(im) >= radius {
        return 0;
    }
    let need = (radius * radius - im * im).max(0.0).sqrt() - re;
    need.ceil().max(0.0) as u32
}

fn check_pole(z: &Complex, ctx: &PrecisionContext) -> Result<()> {
    let tol = pow10(-(ctx.working_digits() as i32), ctx.prec());
    if let Some(k) = is_near_integer(z, &tol) {
        if k <= 0 {
            return Err(Error::GammaPole(k.to_i64().unwrap_or(i64::MIN)));
        }
    }
    Ok(())
}

/// `ln Γ(w)` by the Stirling series; requires `|w|` beyond [`stirling_radius`]
/// and `Re w > 0`.
fn stirling_ln_gamma(w: &Complex, prec: u32) -> Complex {
    let nterms = stirling_terms(prec);
    let bern = even_bernoulli(nterms + 1, prec);
    let half = Float::with_val(prec, 0.5);
    let ln_2pi = Float::with_val(prec, Float::with_val(prec, Constant::Pi) * 2u32).ln();
    let ln_w = Complex::with_val(prec, w.ln_ref());
    let mut sum = Complex::with_val(prec, w - &half) * &ln_w;
    sum -= w;
    sum += Float::with_val(prec, &ln_2pi * &half);
    let w2 = Complex::with_val(prec, w.square_ref());
    let mut wpow = Complex::with_val(prec, w);
    let eps = Float::with_val(prec, Float::i_exp(1, -(prec as i32)));
    for (k, b) in bern.iter().enumerate().skip(1) {
        let denom = (2 * k * (2 * k - 1)) as u64;
        let term = Complex::with_val(prec, b / &wpow) / denom;
        sum += &term;
        if abs(&term) <= Float::with_val(prec, &eps * abs(&sum)) {
            break;
        }
        wpow *= &w2;
    }
    sum
}

/// `ψ(w)` by the asymptotic series, same domain as [`stirling_ln_gamma`].
fn asymptotic_digamma(w: &Complex, prec: u32) -> Complex {
    let nterms = stirling_terms(prec);
    let bern = even_bernoulli(nterms + 1, prec);
    let mut sum = Complex::with_val(prec, w.ln_ref());
    sum -= Complex::with_val(prec, w.recip_ref()) / 2u32;
    let w2 = Complex::with_val(prec, w.square_ref());
    let mut wpow = w2.clone();
    let eps = Float::with_val(prec, Float::i_exp(1, -(prec as i32)));
    for (k, b) in bern.iter().enumerate().skip(1) {
        let term = Complex::with_val(prec, b / &wpow) / (2 * k as u64);
        sum -= &term;
        if abs(&term) <= Float::with_val(prec, &eps * abs(&sum)) {
            break;
        }
        wpow *= &w2;
    }
    sum
}

/// `ln Γ(z)` for `Re z >= 1/2` on the principal branch of the Stirling form.
fn ln_gamma_right(z: &Complex, prec: u32) -> Complex {
    let n = shift_count(z, stirling_radius(prec));
    let mut w = Complex::with_val(prec, z);
    let mut prod = Complex::with_val(prec, (1, 0));
    for _ in 0..n {
        prod *= &w;
        w += 1u32;
    }
    let mut lg = stirling_ln_gamma(&w, prec);
    if n > 0 {
        lg -= prod.ln();
    }
    lg
}

fn gamma_right(z: &Complex, prec: u32) -> Complex {
    let n = shift_count(z, stirling_radius(prec));
    let mut w = Complex::with_val(prec, z);
    let mut prod = Complex::with_val(prec, (1, 0));
    for _ in 0..n {
        prod *= &w;
        w += 1u32;
    }
    stirling_ln_gamma(&w, prec).exp() / prod
}

/// Extra bits covering the growth of `ln Γ` at large arguments.
fn internal_prec(z: &Complex, ctx: &PrecisionContext) -> u32 {
    let mag = abs(z).to_f64().max(1.0);
    ctx.prec() + 32 + (mag * mag.ln().max(1.0)).log2().max(0.0) as u32
}

/// `Γ(z)` for complex `z` away from the poles.
pub fn gamma(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    check_pole(z, ctx)?;
    let prec = internal_prec(z, ctx);
    let g = gamma_unchecked(z, prec);
    Ok(Complex::with_val(ctx.prec(), g))
}

fn gamma_unchecked(z: &Complex, prec: u32) -> Complex {
    if *z.real() < 0.5 {
        let pi = Float::with_val(prec, Constant::Pi);
        let one_minus = Complex::with_val(prec, 1 - z);
        let denom = sin_pi(z, prec) * gamma_right(&one_minus, prec);
        Complex::with_val(prec, pi / denom)
    } else {
        gamma_right(z, prec)
    }
}

/// `1/Γ(z)`, an entire function: exactly zero at the nonpositive integers.
pub fn reciprocal_gamma(z: &Complex, prec: u32) -> Complex {
    let mag = abs(z).to_f64().max(1.0);
    let work = prec + 32 + (mag * mag.ln().max(1.0)).log2().max(0.0) as u32;
    let r = if *z.real() < 0.5 {
        let pi = Float::with_val(work, Constant::Pi);
        let one_minus = Complex::with_val(work, 1 - z);
        sin_pi(z, work) * gamma_right(&one_minus, work) / pi
    } else {
        gamma_right(z, work).recip()
    };
    Complex::with_val(prec, r)
}

/// Principal-sheet-free `ln Γ(z)` for `Re z >= 1/2` (the branch obtained by
/// continuing the Stirling form); used where only `exp` of it matters.
pub fn ln_gamma(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    check_pole(z, ctx)?;
    if *z.real() < 0.5 {
        return Err(Error::InvalidArgument(
            "ln_gamma is only provided for Re z >= 1/2".into(),
        ));
    }
    let prec = internal_prec(z, ctx);
    Ok(Complex::with_val(ctx.prec(), ln_gamma_right(z, prec)))
}

/// Digamma `ψ(z) = Γ'(z)/Γ(z)`.
pub fn digamma(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    check_pole(z, ctx)?;
    let prec = ctx.prec() + 32;
    Ok(Complex::with_val(ctx.prec(), digamma_unchecked(z, prec)))
}

pub(crate) fn digamma_unchecked(z: &Complex, prec: u32) -> Complex {
    if *z.real() < 0.5 {
        let pi = Float::with_val(prec, Constant::Pi);
        let one_minus = Complex::with_val(prec, 1 - z);
        let reflected = digamma_right(&one_minus, prec);
        reflected - cot_pi(z, prec) * pi
    } else {
        digamma_right(z, prec)
    }
}

fn digamma_right(z: &Complex, prec: u32) -> Complex {
    let n = shift_count(z, stirling_radius(prec));
    let mut w = Complex::with_val(prec, z);
    let mut correction = Complex::with_val(prec, (0, 0));
    for _ in 0..n {
        correction += Complex::with_val(prec, w.recip_ref());
        w += 1u32;
    }
    asymptotic_digamma(&w, prec) - correction
}

/// Bits needed so that a quantity known to `digits` decimal digits survives.
#[allow(dead_code)]
pub(crate) fn bits_for(digits: u32) -> u32 {
    digits_to_bits(digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpcore::complex_f64;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(50, 10).unwrap()
    }

    fn rel_err(a: &Complex, b: &Complex) -> f64 {
        let d = Complex::with_val(a.prec().0, a - b);
        (abs(&d) / abs(b)).to_f64()
    }

    #[test]
    fn bernoulli_values() {
        let b = compute_even_bernoulli(8);
        assert_eq!(b[1], Rational::from((1, 6)));
        assert_eq!(b[2], Rational::from((-1, 30)));
        assert_eq!(b[3], Rational::from((1, 42)));
        assert_eq!(b[4], Rational::from((-1, 30)));
        assert_eq!(b[5], Rational::from((5, 66)));
        assert_eq!(b[6], Rational::from((-691, 2730)));
        assert_eq!(b[7], Rational::from((7, 6)));
    }

    #[test]
    fn gamma_one_is_one() {
        let c = ctx();
        let g = gamma(&complex_f64(c.prec(), 1.0, 0.0), &c).unwrap();
        assert!(rel_err(&g, &complex_f64(c.prec(), 1.0, 0.0)) < 1e-50);
    }

    #[test]
    fn gamma_half_squared_is_pi() {
        let c = ctx();
        let g = gamma(&complex_f64(c.prec(), 0.5, 0.0), &c).unwrap();
        let sq = Complex::with_val(c.prec(), g.square_ref());
        let pi = Complex::with_val(c.prec(), (Float::with_val(c.prec(), Constant::Pi), 0));
        assert!(rel_err(&sq, &pi) < 1e-49);
    }

    #[test]
    fn gamma_recurrence_complex() {
        let c = ctx();
        let z = complex_f64(c.prec(), 2.5, 1.5);
        let g0 = gamma(&z, &c).unwrap();
        let z1 = Complex::with_val(c.prec(), &z + 1u32);
        let g1 = gamma(&z1, &c).unwrap();
        let ratio = Complex::with_val(c.prec(), &g1 / &g0);
        assert!(rel_err(&ratio, &z) < 1e-48);
    }

    #[test]
    fn gamma_poles_rejected() {
        let c = ctx();
        for k in [0.0, -1.0, -7.0] {
            let z = complex_f64(c.prec(), k, 0.0);
            assert!(matches!(gamma(&z, &c), Err(Error::GammaPole(_))));
            assert!(matches!(digamma(&z, &c), Err(Error::GammaPole(_))));
        }
    }

    #[test]
    fn reciprocal_gamma_vanishes_at_poles() {
        let z = complex_f64(200, -3.0, 0.0);
        assert!(reciprocal_gamma(&z, 200).is_zero());
    }

    #[test]
    fn digamma_recurrence_and_reflection() {
        let c = ctx();
        let p = c.prec();
        let z = complex_f64(p, 3.0, 2.0);
        let z1 = Complex::with_val(p, &z + 1u32);
        let diff = digamma(&z1, &c).unwrap() - digamma(&z, &c).unwrap();
        let inv = Complex::with_val(p, z.recip_ref());
        assert!(rel_err(&diff, &inv) < 1e-48);

        let q = complex_f64(p, 0.25, 0.0);
        let one_minus = Complex::with_val(p, 1 - &q);
        let lhs = digamma(&one_minus, &c).unwrap() - digamma(&q, &c).unwrap();
        let rhs = cot_pi(&q, p) * Float::with_val(p, Constant::Pi);
        assert!(rel_err(&lhs, &rhs) < 1e-48);

        let d = digamma(&complex_f64(p, 2.0, 0.0), &c).unwrap()
            - digamma(&complex_f64(p, 1.0, 0.0), &c).unwrap();
        assert!(rel_err(&d, &complex_f64(p, 1.0, 0.0)) < 1e-49);
    }

    #[test]
    fn digamma_at_one_is_minus_euler() {
        let c = ctx();
        let p = c.prec();
        let psi = digamma(&complex_f64(p, 1.0, 0.0), &c).unwrap();
        let euler = -Float::with_val(p, Constant::Euler);
        assert!(rel_err(&psi, &Complex::with_val(p, (euler, 0))) < 1e-49);
    }
}
