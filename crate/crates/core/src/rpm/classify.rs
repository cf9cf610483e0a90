use rug::{Complex, Float};

use super::newton::RpmRoot;
use crate::error::Result;
use crate::mpcore::{abs, PrecisionContext};
use crate::spectra::{barrier_roots, bound_states, well_resonances, Family, RootKind};

/// Roots farther than this from every exact eigenvalue are spurious.
pub const MATCH_RADIUS: f64 = 1e-2;

/// One exact eigenvalue used as a classification target.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactEigenvalue {
    pub kind: RootKind,
    /// Well-sheet index; the conjugate of a sheet-`m` eigenvalue is labelled `-m`.
    pub m: i64,
    pub n: usize,
    pub energy: Complex,
    pub family: Option<Family>,
    /// For barrier resonances: the growing-state (conjugate) partner.
    pub conjugate: bool,
}

/// How many exact eigenvalues of each kind to compute for classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpectrumCounts {
    pub bound: usize,
    pub barrier: usize,
    pub max_sheet: i64,
    pub per_sheet: usize,
}

impl Default for SpectrumCounts {
    fn default() -> Self {
        Self {
            bound: 10,
            barrier: 8,
            max_sheet: 3,
            per_sheet: 10,
        }
    }
}

/// Exact eigenvalues at one `λ`, closed under conjugation like the root sets
/// of the real Hankel polynomials. Virtual states are kept apart: they are
/// never classification targets.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactSpectrum {
    pub eigenvalues: Vec<ExactEigenvalue>,
    pub virtual_energies: Vec<Complex>,
}

impl ExactSpectrum {
    pub fn compute(lambda: &Float, counts: SpectrumCounts, ctx: &PrecisionContext) -> Result<Self> {
        let mut eigenvalues = Vec::new();
        let mut virtual_energies = Vec::new();
        let push = |out: &mut Vec<ExactEigenvalue>, kind, m, n, energy: &Complex, family, conjugate| {
            out.push(ExactEigenvalue {
                kind,
                m,
                n,
                energy: energy.clone(),
                family,
                conjugate,
            });
        };
        if counts.bound > 0 {
            for r in bound_states(lambda, counts.bound, ctx)? {
                push(&mut eigenvalues, RootKind::Bound, 0, r.n, &r.energy, None, false);
            }
        }
        if counts.barrier > 0 {
            for r in barrier_roots(lambda, counts.barrier, ctx)? {
                if r.is_virtual() {
                    virtual_energies.push(r.energy);
                    continue;
                }
                let conj = Complex::with_val(ctx.prec(), r.energy.conj_ref());
                push(&mut eigenvalues, RootKind::Barrier, 0, r.n, &r.energy, None, false);
                push(&mut eigenvalues, RootKind::Barrier, 0, r.n, &conj, None, true);
            }
        }
        for m in 1..=counts.max_sheet {
            if counts.per_sheet == 0 {
                break;
            }
            for r in well_resonances(lambda, m, counts.per_sheet, ctx)? {
                let conj = Complex::with_val(ctx.prec(), r.energy.conj_ref());
                push(&mut eigenvalues, RootKind::Well, m, r.n, &r.energy, r.family, false);
                push(&mut eigenvalues, RootKind::Well, -m, r.n, &conj, r.family, false);
            }
        }
        Ok(Self {
            eigenvalues,
            virtual_energies,
        })
    }
}

/// Label attached to a Hankel root that approximates an exact eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct RpmClassification {
    pub kind: RootKind,
    pub m: i64,
    pub n: usize,
    pub family: Option<Family>,
    pub conjugate: bool,
    pub distance: f64,
    /// Other exact eigenvalues practically indistinguishable from the match
    /// (within ten times its distance, or 1e-10): `(kind, m, n)`.
    pub coincident: Vec<(RootKind, i64, usize)>,
}

fn distance(a: &Complex, b: &Complex) -> f64 {
    abs(&Complex::with_val(a.prec().0.max(b.prec().0), a - b)).to_f64()
}

/// Tags each root with its nearest exact eigenvalue; roots farther than
/// [`MATCH_RADIUS`] stay unclassified.
pub fn classify_against(roots: &[RpmRoot], exact: &ExactSpectrum) -> Vec<RpmRoot> {
    roots
        .iter()
        .map(|r| {
            let mut out = r.clone();
            let mut ranked: Vec<(f64, &ExactEigenvalue)> =
                exact.eigenvalues.iter().map(|e| (distance(&r.energy, &e.energy), e)).collect();
            ranked.sort_by(|a, b| a.0.total_cmp(&b.0));
            out.classification = ranked.first().filter(|(d, _)| *d <= MATCH_RADIUS).map(|&(d, e)| {
                let limit = (10.0 * d).max(1e-10);
                RpmClassification {
                    kind: e.kind,
                    m: e.m,
                    n: e.n,
                    family: e.family,
                    conjugate: e.conjugate,
                    distance: d,
                    coincident: ranked[1..]
                        .iter()
                        .take_while(|(dd, _)| *dd <= limit)
                        .map(|(_, x)| (x.kind, x.m, x.n))
                        .collect(),
                }
            });
            out
        })
        .collect()
}

/// [`classify_against`] with the default exact spectrum at `λ`.
pub fn classify_roots(roots: &[RpmRoot], lambda: &Float, ctx: &PrecisionContext) -> Result<Vec<RpmRoot>> {
    if roots.is_empty() {
        return Ok(Vec::new());
    }
    let exact = ExactSpectrum::compute(lambda, SpectrumCounts::default(), ctx)?;
    Ok(classify_against(roots, &exact))
}
