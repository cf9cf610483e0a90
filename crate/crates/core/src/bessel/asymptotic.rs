//! Large-argument expansions of `I_ν(s)` and `K_ν(s)`.

use rug::float::Constant;
use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::mpcore::abs;

/// A truncated asymptotic sum together with the magnitude of the first
/// omitted term (already multiplied by the exponential prefactor).
#[derive(Debug, Clone)]
pub struct AsymptoticValue {
    pub value: Complex,
    pub error_estimate: Float,
}

fn check_sector(s: &Complex, lo: f64, hi: f64) -> Result<()> {
    let arg = Float::with_val(64, s.arg_ref()).to_f64();
    let pi = std::f64::consts::PI;
    if arg <= lo * pi || arg >= hi * pi || s.is_zero() {
        return Err(Error::OutOfSector {
            arg,
            lo: lo * pi,
            hi: hi * pi,
        });
    }
    Ok(())
}

/// Partial sum `Σ_{k<terms} sign^k a_k(ν) / s^k` with
/// `a_k = Π_{j=1..k} (4ν² - (2j-1)²) / (k! 8^k)`; returns the sum and the
/// first omitted term.
fn hankel_sum(nu: &Complex, s: &Complex, terms: usize, alternate: bool) -> (Complex, Complex) {
    let prec = nu.prec().0.max(s.prec().0);
    let four_nu2 = Complex::with_val(prec, nu.square_ref()) * 4u32;
    let mut term = Complex::with_val(prec, (1, 0));
    let mut sum = Complex::new(prec);
    for k in 0..terms {
        sum += &term;
        let j = (2 * k + 1) as u64;
        let mut factor = Complex::with_val(prec, &four_nu2 - j * j);
        factor /= Complex::with_val(prec, s * ((8 * (k + 1)) as u64));
        if alternate {
            factor = -factor;
        }
        term *= factor;
    }
    (sum, term)
}

/// `I_ν(s) ~ (2πs)^{-1/2} e^s [1 - (4ν²-1)/(8s) + …]`, valid for
/// `-π/2 < arg s < π`.
pub fn asymptotic_i(nu: &Complex, s: &Complex, terms: usize) -> Result<AsymptoticValue> {
    check_sector(s, -0.5, 1.0)?;
    let prec = nu.prec().0.max(s.prec().0);
    let (sum, next) = hankel_sum(nu, s, terms.max(1), true);
    let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;
    let prefactor = (Complex::with_val(prec, s * two_pi)).sqrt().recip() * s.clone().exp();
    let error_estimate = abs(&prefactor) * abs(&next);
    Ok(AsymptoticValue {
        value: prefactor * sum,
        error_estimate,
    })
}

/// `K_ν(s) ~ (π/(2s))^{1/2} e^{-s} [1 + (4ν²-1)/(8s) + …]`, valid for
/// `-π < arg s < π`.
pub fn asymptotic_k(nu: &Complex, s: &Complex, terms: usize) -> Result<AsymptoticValue> {
    check_sector(s, -1.0, 1.0)?;
    let prec = nu.prec().0.max(s.prec().0);
    let (sum, next) = hankel_sum(nu, s, terms.max(1), false);
    let pi = Float::with_val(prec, Constant::Pi);
    let ratio = Complex::with_val(prec, pi / Complex::with_val(prec, s * 2u32));
    let prefactor = ratio.sqrt() * Complex::with_val(prec, -s).exp();
    let error_estimate = abs(&prefactor) * abs(&next);
    Ok(AsymptoticValue {
        value: prefactor * sum,
        error_estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpcore::complex_f64;

    #[test]
    fn half_order_is_exact() {
        let p = 200;
        let nu = complex_f64(p, 0.5, 0.0);
        let s = complex_f64(p, 3.0, 1.0);
        let k = asymptotic_k(&nu, &s, 6).unwrap();
        assert!(k.error_estimate.is_zero());
        let pi = Float::with_val(p, Constant::Pi);
        let exact = Complex::with_val(p, pi / Complex::with_val(p, &s * 2u32)).sqrt()
            * Complex::with_val(p, -&s).exp();
        assert!(abs(&(k.value - &exact)) < 1e-55);

        let i = asymptotic_i(&nu, &s, 6).unwrap();
        assert!(i.error_estimate.is_zero());
        let two_pi = Float::with_val(p, Constant::Pi) * 2u32;
        let exact = Complex::with_val(p, &s * two_pi).sqrt().recip() * s.clone().exp();
        assert!(abs(&(i.value - &exact)) < 1e-55);
    }

    #[test]
    fn sectors_enforced() {
        let p = 100;
        let nu = complex_f64(p, 0.3, 0.0);
        let bad = complex_f64(p, -1.0, -1.0); // arg = -3π/4
        assert!(matches!(
            asymptotic_i(&nu, &bad, 3),
            Err(Error::OutOfSector { .. })
        ));
        assert!(asymptotic_k(&nu, &bad, 3).is_ok());
        let negative_axis = complex_f64(p, -1.0, 0.0);
        assert!(asymptotic_k(&nu, &negative_axis, 3).is_err());
    }
}
