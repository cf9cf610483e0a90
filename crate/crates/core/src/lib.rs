//! High-precision spectra of the Schrödinger equation with exponential
//! potentials `λe^{-r}` (repulsive barrier) and `λe^{r}` (exponential wall),
//! together with a Riccati–Padé (Hankel determinant) eigenvalue solver.
//!
//! The crate is organised bottom-up:
//!
//! * [`mpcore`] — precision policy and the multiprecision special functions
//!   (gamma, digamma, `sin(πν)` / `csc(πν)`).
//! * [`bessel`] — modified Bessel functions `I_ν(x)`, `K_ν(x)` of complex
//!   order, their order derivatives, asymptotic forms and analytic
//!   continuation across Riemann sheets.
//! * [`spectra`] — exact barrier roots, bound states and well resonances,
//!   parameter sweeps and the barrier/well comparison metrics.
//! * [`rpm`] — Taylor coefficients of the regularised logarithmic
//!   derivative, Hankel determinants (numeric, exact and symbolic), full
//!   polynomial root extraction, Newton polishing and convergence curves.
//!
//! All values are immutable once built and every public operation is a pure
//! function of its inputs, so independent jobs may run concurrently.

pub mod bessel;
pub mod error;
pub mod mpcore;
pub mod rpm;
pub mod spectra;

pub use error::{Error, Result};
pub use mpcore::{BigComplex, BigReal, PrecisionContext};
