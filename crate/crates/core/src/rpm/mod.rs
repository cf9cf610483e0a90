//! Riccati–Padé method: Hankel determinants built from the Taylor
//! coefficients of the regularised logarithmic derivative of the
//! wavefunction, whose zeros in `E` approximate eigenvalues.
//!
//! Determinants are available in three arithmetics sharing one
//! implementation: numeric with the `E`-derivative carried along (for
//! Newton), exact rational, and exact polynomial in `E` (for exhaustive
//! root extraction at small `D`; the degree of `H_D^d` is `D(D+1)/2`).

mod classify;
mod convergence;
mod hankel;
mod newton;
mod poly;
mod potential;
mod ring;
mod roots;
mod taylor;

pub use classify::{
    classify_against, classify_roots, ExactEigenvalue, ExactSpectrum, RpmClassification, SpectrumCounts,
    MATCH_RADIUS,
};
pub use convergence::{
    convergence_curve, find_plateaus, fit_line, ConvergenceCurve, ConvergenceRecord, CurveFailure, CurveTarget,
    LineFit, Plateau, PLATEAU_STEP,
};
pub use hankel::{
    hankel_direct, hankel_direct_exact, hankel_exact, hankel_numeric, hankel_numeric_or_direct,
    hankel_symbolic, hankel_symbolic_with_limit, HankelSpec, SYMBOLIC_LIMIT,
};
pub use newton::{newton_polish, RpmRoot, DIVERGENCE_RADIUS, MAX_ITERATIONS};
pub use poly::EnergyPolynomial;
pub use potential::{parse_rational, ExpSign, PotentialSeries};
pub use ring::Dual;
pub use roots::{all_roots, PolyRoot};
pub use taylor::{taylor_coeffs_dual, taylor_coeffs_exact, taylor_coeffs_numeric, taylor_coeffs_symbolic};
