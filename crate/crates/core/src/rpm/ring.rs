//! The small amount of commutative-ring structure the Taylor and Hankel
//! algorithms need, so one implementation serves exact rationals, exact
//! polynomials in `E`, and value/derivative pairs.

use rug::{Complex, Float, Rational};

pub(crate) trait Ring: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn constant_like(&self, q: &Rational) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Division known to be exact in the ring (always exact in a field).
    fn div(&self, other: &Self) -> Self;
    fn div_u64(&self, k: u64) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Preference for a Bareiss pivot: larger is better, `-inf` for zero.
    fn pivot_score(&self) -> f64;
}

impl Ring for Rational {
    fn zero_like(&self) -> Self {
        Rational::new()
    }
    fn one_like(&self) -> Self {
        Rational::from(1)
    }
    fn constant_like(&self, q: &Rational) -> Self {
        q.clone()
    }
    fn add(&self, other: &Self) -> Self {
        Rational::from(self + other)
    }
    fn sub(&self, other: &Self) -> Self {
        Rational::from(self - other)
    }
    fn mul(&self, other: &Self) -> Self {
        Rational::from(self * other)
    }
    fn div(&self, other: &Self) -> Self {
        Rational::from(self / other)
    }
    fn div_u64(&self, k: u64) -> Self {
        Rational::from(self / k)
    }
    fn neg(&self) -> Self {
        Rational::from(-self)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn pivot_score(&self) -> f64 {
        if *self == 0 {
            f64::NEG_INFINITY
        } else {
            0.0
        }
    }
}

/// A complex value paired with its derivative with respect to `E`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dual {
    pub value: Complex,
    pub deriv: Complex,
}

impl Dual {
    pub fn variable(e: &Complex, prec: u32) -> Self {
        Self {
            value: Complex::with_val(prec, e),
            deriv: Complex::with_val(prec, 1),
        }
    }

    pub fn constant(c: Complex) -> Self {
        let deriv = Complex::new(c.prec());
        Self { value: c, deriv }
    }

    fn prec(&self) -> u32 {
        self.value.prec().0
    }

    pub(crate) fn magnitude(&self) -> Float {
        Float::with_val(self.prec(), self.value.abs_ref())
    }
}

impl Ring for Dual {
    fn zero_like(&self) -> Self {
        Dual::constant(Complex::new(self.prec()))
    }
    fn one_like(&self) -> Self {
        Dual::constant(Complex::with_val(self.prec(), 1))
    }
    fn constant_like(&self, q: &Rational) -> Self {
        Dual::constant(Complex::with_val(self.prec(), q))
    }
    fn add(&self, o: &Self) -> Self {
        Dual {
            value: Complex::with_val(self.prec(), &self.value + &o.value),
            deriv: Complex::with_val(self.prec(), &self.deriv + &o.deriv),
        }
    }
    fn sub(&self, o: &Self) -> Self {
        Dual {
            value: Complex::with_val(self.prec(), &self.value - &o.value),
            deriv: Complex::with_val(self.prec(), &self.deriv - &o.deriv),
        }
    }
    fn mul(&self, o: &Self) -> Self {
        let p = self.prec();
        let mut deriv = Complex::with_val(p, &self.deriv * &o.value);
        deriv += Complex::with_val(p, &self.value * &o.deriv);
        Dual {
            value: Complex::with_val(p, &self.value * &o.value),
            deriv,
        }
    }
    fn div(&self, o: &Self) -> Self {
        let p = self.prec();
        let value = Complex::with_val(p, &self.value / &o.value);
        // (a/b)' = (a' - (a/b) b') / b
        let mut deriv = Complex::with_val(p, &value * &o.deriv);
        deriv = Complex::with_val(p, &self.deriv - &deriv);
        deriv /= &o.value;
        Dual { value, deriv }
    }
    fn div_u64(&self, k: u64) -> Self {
        let p = self.prec();
        let k = Float::with_val(p, k);
        Dual {
            value: Complex::with_val(p, &self.value / &k),
            deriv: Complex::with_val(p, &self.deriv / &k),
        }
    }
    fn neg(&self) -> Self {
        Dual {
            value: Complex::with_val(self.prec(), -&self.value),
            deriv: Complex::with_val(self.prec(), -&self.deriv),
        }
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
    fn pivot_score(&self) -> f64 {
        if self.value.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.magnitude().log2().to_f64()
        }
    }
}

/// Plain complex arithmetic, for value-only evaluation.
impl Ring for Complex {
    fn zero_like(&self) -> Self {
        Complex::new(self.prec())
    }
    fn one_like(&self) -> Self {
        Complex::with_val(self.prec(), 1)
    }
    fn constant_like(&self, q: &Rational) -> Self {
        Complex::with_val(self.prec(), q)
    }
    fn add(&self, o: &Self) -> Self {
        Complex::with_val(self.prec(), self + o)
    }
    fn sub(&self, o: &Self) -> Self {
        Complex::with_val(self.prec(), self - o)
    }
    fn mul(&self, o: &Self) -> Self {
        Complex::with_val(self.prec(), self * o)
    }
    fn div(&self, o: &Self) -> Self {
        Complex::with_val(self.prec(), self / o)
    }
    fn div_u64(&self, k: u64) -> Self {
        Complex::with_val(self.prec(), self / Float::with_val(self.prec().0, k))
    }
    fn neg(&self) -> Self {
        Complex::with_val(self.prec(), -self)
    }
    fn is_zero(&self) -> bool {
        Complex::is_zero(self)
    }
    fn pivot_score(&self) -> f64 {
        if Complex::is_zero(self) {
            f64::NEG_INFINITY
        } else {
            Float::with_val(self.prec().0, self.abs_ref()).log2().to_f64()
        }
    }
}
