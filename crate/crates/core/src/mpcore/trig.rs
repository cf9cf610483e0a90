use rug::float::Constant;
use rug::{Complex, Float, Integer};

use super::num::{abs, nearest_integer};
use super::precision::pow10;
use crate::error::{Error, Result};
use crate::mpcore::PrecisionContext;

/// Splits `z = k + r` with `k` the integer nearest to `Re z`; `r` is exact.
fn reduce(z: &Complex) -> (Integer, Complex) {
    let k = nearest_integer(z.real());
    let exp = z.real().get_exp().unwrap_or(0).max(0) as u32;
    let mut r = Complex::with_val(z.prec().0.max(z.prec().1) + exp + 2, z);
    *r.mut_real() -= &k;
    (k, r)
}

fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// `sin(πz)` with the integer part of `Re z` removed exactly, so that the
/// relative accuracy survives near the zeros at integers.
pub fn sin_pi(z: &Complex, prec: u32) -> Complex {
    let (k, r) = reduce(z);
    let arg = Complex::with_val(prec, &r * pi(prec));
    let s = arg.sin();
    if k.is_odd() {
        -s
    } else {
        s
    }
}

pub fn cos_pi(z: &Complex, prec: u32) -> Complex {
    let (k, r) = reduce(z);
    let arg = Complex::with_val(prec, &r * pi(prec));
    let c = arg.cos();
    if k.is_odd() {
        -c
    } else {
        c
    }
}

pub fn cot_pi(z: &Complex, prec: u32) -> Complex {
    cos_pi(z, prec) / sin_pi(z, prec)
}

/// `1/sin(πν)`, evaluated with the precision raised by `-log10|sin(πν)|`
/// digits when `ν` sits close to an integer.
pub fn csc_pi(nu: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let prec = ctx.prec();
    let (_, r) = reduce(nu);
    if abs(&r) < pow10(-(ctx.working_digits() as i32), prec) {
        return Err(Error::IntegerOrder(format!("{:.20}", nu)));
    }
    let probe = sin_pi(nu, 64);
    let boost_digits = (-super::num::log10_abs(&probe)).max(0.0).ceil() as u32;
    let boosted = prec + super::precision::digits_to_bits(boost_digits);
    let s = sin_pi(nu, boosted);
    Ok(Complex::with_val(prec, s.recip()))
}
