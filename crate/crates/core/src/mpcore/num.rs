use rug::{Complex, Float, Integer};

pub fn real(prec: u32, value: f64) -> Float {
    Float::with_val(prec, value)
}

pub fn complex(re: Float, im: Float) -> Complex {
    let prec = re.prec().max(im.prec());
    Complex::with_val(prec, (re, im))
}

pub fn complex_f64(prec: u32, re: f64, im: f64) -> Complex {
    Complex::with_val(prec, (re, im))
}

/// Modulus `|z|` at the precision of `z`.
pub fn abs(z: &Complex) -> Float {
    Float::with_val(z.prec().0, z.abs_ref())
}

/// `log10 |z|` as an `f64`; `-inf` for zero. Safe for magnitudes outside
/// the `f64` exponent range.
pub fn log10_abs(z: &Complex) -> f64 {
    let a = abs(z);
    if a.is_zero() {
        return f64::NEG_INFINITY;
    }
    a.log10().to_f64()
}

pub fn to_c64(z: &Complex) -> (f64, f64) {
    (z.real().to_f64(), z.imag().to_f64())
}

pub fn nearest_integer(x: &Float) -> Integer {
    x.clone()
        .round()
        .to_integer()
        .expect("finite value has a nearest integer")
}

/// Returns the integer `k` when `|z - k| < tol`.
pub fn is_near_integer(z: &Complex, tol: &Float) -> Option<Integer> {
    if !z.real().is_finite() || !z.imag().is_finite() {
        return None;
    }
    if z.imag().clone().abs() >= *tol {
        return None;
    }
    let k = nearest_integer(z.real());
    let mut d = Complex::with_val(z.prec().0 + 64, z);
    *d.mut_real() -= &k;
    if abs(&d) < *tol {
        Some(k)
    } else {
        None
    }
}

/// `|a - b| / max(|a|, |b|)`, or the absolute distance when both vanish.
pub fn relative_distance(a: &Complex, b: &Complex) -> Float {
    let prec = a.prec().0.max(b.prec().0);
    let diff = Complex::with_val(prec, a - b);
    let d = abs(&diff);
    let scale = abs(a).max(&abs(b));
    if scale.is_zero() {
        d
    } else {
        d / scale
    }
}
