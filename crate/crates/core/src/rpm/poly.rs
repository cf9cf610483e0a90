use std::fmt;

use rug::{Complex, Float, Integer, Rational};

use super::ring::Ring;

/// Polynomial in the energy `E` with exact rational coefficients.
///
/// Stored as `content · P(E)` with `P` a primitive integer polynomial whose
/// leading coefficient is positive, so products and exact quotients stay in
/// integer arithmetic (Gauss's lemma).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EnergyPolynomial {
    content: Rational,
    /// Lowest degree first; empty for the zero polynomial.
    primitive: Vec<Integer>,
}

impl EnergyPolynomial {
    pub fn new(coefficients: Vec<Rational>) -> Self {
        let mut den = Integer::from(1);
        for c in &coefficients {
            den.lcm_mut(c.denom());
        }
        let ints = coefficients
            .iter()
            .map(|c| Integer::from(&den / c.denom()) * c.numer())
            .collect();
        Self::from_integers(Rational::from((Integer::from(1), den)), ints)
    }

    /// `scale · Σ ints[k] E^k`, normalised.
    fn from_integers(scale: Rational, mut ints: Vec<Integer>) -> Self {
        while ints.last().is_some_and(|c| *c == 0) {
            ints.pop();
        }
        if ints.is_empty() || scale == 0 {
            return Self::zero();
        }
        let mut g = Integer::new();
        for c in &ints {
            g.gcd_mut(c);
            if g == 1 {
                break;
            }
        }
        if *ints.last().unwrap() < 0 {
            g = -g;
        }
        if g != 1 {
            for c in &mut ints {
                c.div_exact_mut(&g);
            }
        }
        Self {
            content: scale * g,
            primitive: ints,
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_integers(c, vec![Integer::from(1)])
    }

    /// The polynomial `E`.
    pub fn variable() -> Self {
        Self::from_integers(Rational::from(1), vec![Integer::new(), Integer::from(1)])
    }

    /// Exact coefficients, lowest degree first.
    pub fn coefficients(&self) -> Vec<Rational> {
        self.primitive.iter().map(|c| Rational::from(&self.content * c)).collect()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.primitive.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Rational> {
        self.primitive.last().map(|c| Rational::from(&self.content * c))
    }

    pub fn is_zero(&self) -> bool {
        self.primitive.is_empty()
    }

    pub fn eval_rational(&self, e: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.primitive.iter().rev() {
            acc *= e;
            acc += c;
        }
        acc * &self.content
    }

    pub fn eval_complex(&self, e: &Complex) -> Complex {
        let prec = e.prec();
        let mut acc = Complex::new(prec);
        for c in self.primitive.iter().rev() {
            acc *= e;
            acc += Complex::with_val(prec, c);
        }
        acc * Complex::with_val(prec, &self.content)
    }

    pub fn derivative(&self) -> Self {
        Self::from_integers(
            self.content.clone(),
            self.primitive
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| Integer::from(c * k as u64))
                .collect(),
        )
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        if self.is_zero() || *factor == 0 {
            return Self::zero();
        }
        Self::from_integers(Rational::from(&self.content * factor), self.primitive.clone())
    }

    /// Coefficients rounded to `prec` bits.
    pub fn to_complex(&self, prec: u32) -> Vec<Complex> {
        let content = Complex::with_val(prec, &self.content);
        self.primitive
            .iter()
            .map(|c| Complex::with_val(prec, c) * &content)
            .collect()
    }

    fn combine(&self, other: &Self, subtract: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if subtract { other.neg_poly() } else { other.clone() };
        }
        // a/b P + e/f Q = (a f P ± e b Q) / (b f)
        let (a, b) = (self.content.numer(), self.content.denom());
        let (e, f) = (other.content.numer(), other.content.denom());
        let x = Integer::from(a * f);
        let mut y = Integer::from(e * b);
        if subtract {
            y = -y;
        }
        let n = self.primitive.len().max(other.primitive.len());
        let ints = (0..n)
            .map(|k| {
                let mut v = Integer::new();
                if let Some(p) = self.primitive.get(k) {
                    v += &x * p;
                }
                if let Some(q) = other.primitive.get(k) {
                    v += &y * q;
                }
                v
            })
            .collect();
        Self::from_integers(Rational::from((Integer::from(1), Integer::from(b * f))), ints)
    }

    fn neg_poly(&self) -> Self {
        Self {
            content: Rational::from(-&self.content),
            primitive: self.primitive.clone(),
        }
    }
}

impl fmt::Display for EnergyPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coefficients().iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*E")?,
                _ => write!(f, "({c})*E^{k}")?,
            }
        }
        Ok(())
    }
}

impl Ring for EnergyPolynomial {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::constant(Rational::from(1))
    }
    fn constant_like(&self, q: &Rational) -> Self {
        Self::constant(q.clone())
    }
    fn add(&self, o: &Self) -> Self {
        self.combine(o, false)
    }
    fn sub(&self, o: &Self) -> Self {
        self.combine(o, true)
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Integer::new(); self.primitive.len() + o.primitive.len() - 1];
        for (i, a) in self.primitive.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in o.primitive.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        // the product of primitive polynomials is primitive
        Self {
            content: Rational::from(&self.content * &o.content),
            primitive: out,
        }
    }
    fn div(&self, o: &Self) -> Self {
        let dd = o.degree().expect("division by the zero polynomial");
        if self.is_zero() {
            return Self::zero();
        }
        // quotient of primitive polynomials is a primitive integer polynomial
        let lead = o.primitive.last().unwrap();
        let mut rem = self.primitive.clone();
        assert!(rem.len() > dd, "inexact polynomial division");
        let mut quot = vec![Integer::new(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = Integer::from(rem[k + dd].div_exact_ref(lead));
            if q != 0 {
                for (i, c) in o.primitive.iter().enumerate() {
                    rem[k + i] -= &q * c;
                }
            }
            quot[k] = q;
        }
        debug_assert!(rem.iter().all(|c| *c == 0), "inexact polynomial division");
        Self::from_integers(Rational::from(&self.content / &o.content), quot)
    }
    fn div_u64(&self, k: u64) -> Self {
        Self {
            content: Rational::from(&self.content / k),
            primitive: self.primitive.clone(),
        }
    }
    fn neg(&self) -> Self {
        self.neg_poly()
    }
    fn is_zero(&self) -> bool {
        self.primitive.is_empty()
    }
    fn pivot_score(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            -(self.primitive.len() as f64)
        }
    }
}

/// `Σ |c_k| |z|^k`, the natural scale for judging a residual at `z`.
pub(crate) fn magnitude_scale(coeffs: &[Complex], z: &Complex) -> Float {
    let prec = z.prec().0;
    let r = Float::with_val(prec, z.abs_ref());
    let mut acc = Float::new(prec);
    for c in coeffs.iter().rev() {
        acc *= &r;
        acc += Float::with_val(prec, c.abs_ref());
    }
    acc
}
