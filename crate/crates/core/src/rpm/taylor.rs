use rug::{Complex, Rational};

use super::poly::EnergyPolynomial;
use super::potential::PotentialSeries;
use super::ring::{Dual, Ring};
use crate::mpcore::PrecisionContext;

/// `f_0 … f_{count-1}` of the regularised logarithmic derivative
/// `f(r) = (l+1)/r - ψ'(r)/ψ(r)`, from the Riccati recurrence
/// `f_{j+1} = [Σ_{i≤j} f_i f_{j-i} - v_j + E δ_{j0}] / (2l + j + 3)`.
pub(crate) fn taylor_generic<T: Ring>(pot: &PotentialSeries, energy: &T, count: usize) -> Vec<T> {
    let mut f = Vec::with_capacity(count);
    if count == 0 {
        return f;
    }
    let l = u64::from(pot.l());
    let v = pot.coefficients(count);
    f.push(energy.constant_like(&pot.coefficient(-1)).neg().div_u64(2 * l + 2));
    for j in 0..count - 1 {
        // Σ f_i f_{j-i} using the symmetry of the convolution
        let mut acc = energy.zero_like();
        for i in 0..j.div_ceil(2) {
            acc = acc.add(&f[i].mul(&f[j - i]));
        }
        acc = acc.add(&acc);
        if j % 2 == 0 {
            acc = acc.add(&f[j / 2].mul(&f[j / 2]));
        }
        acc = acc.sub(&energy.constant_like(&v[j]));
        if j == 0 {
            acc = acc.add(energy);
        }
        f.push(acc.div_u64(2 * l + j as u64 + 3));
    }
    f
}

/// Taylor coefficients at a numeric energy.
pub fn taylor_coeffs_numeric(
    pot: &PotentialSeries,
    energy: &Complex,
    count: usize,
    ctx: &PrecisionContext,
) -> Vec<Complex> {
    let e = Complex::with_val(ctx.prec(), energy);
    taylor_generic(pot, &e, count)
}

/// Taylor coefficients at an exact rational energy.
pub fn taylor_coeffs_exact(pot: &PotentialSeries, energy: &Rational, count: usize) -> Vec<Rational> {
    taylor_generic(pot, energy, count)
}

/// Taylor coefficients as exact polynomials in `E`.
pub fn taylor_coeffs_symbolic(pot: &PotentialSeries, count: usize) -> Vec<EnergyPolynomial> {
    taylor_generic(pot, &EnergyPolynomial::variable(), count)
}

/// Taylor coefficients paired with their `E`-derivatives.
pub fn taylor_coeffs_dual(
    pot: &PotentialSeries,
    energy: &Complex,
    count: usize,
    ctx: &PrecisionContext,
) -> Vec<Dual> {
    taylor_generic(pot, &Dual::variable(energy, ctx.prec()), count)
}
