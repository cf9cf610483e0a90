//! Exact spectra of the repulsive exponential potential `λe^{-r}` (barrier
//! problem) and the exponential wall `λe^{r}` (well problem).
//!
//! * barrier: `I_μ(2√λ) = 0`, virtual states on the negative real axis and
//!   resonances reported with `Im μ < 0`;
//! * bound: `K_ν(2√λ) = 0` with `ν = iβ`, `β > 0`;
//! * well: the continued condition on sheet `m`,
//!   `e^{-mνπi} K_ν(2√λ) - πi sin(mνπ) csc(νπ) I_ν(2√λ) = 0`, reported with
//!   `Re ν < 0` (the condition is odd in `ν`).
//!
//! Energies are `-order²/4` throughout.

mod compare;
mod condition;
mod newton;
mod search;
mod solvers;
mod sweep;

pub use compare::{branch_index, compare_with_barrier, difference_estimate, match_nearest, ComparisonRecord};
pub use condition::{condition_argument, evaluate_condition, Condition, ConditionValue};
pub use search::Rect;
pub use solvers::{
    barrier_roots, bound_states, energy_from_order, nearest_well_root, refine_root, roots_in_rect,
    well_resonances,
};
pub use sweep::{geometric_grid, sweep, SweepRecord, SweepTarget};

use rug::{Complex, Float};

/// Which quantization condition a root satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootKind {
    Barrier,
    Bound,
    Well,
}

impl RootKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RootKind::Barrier => "barrier",
            RootKind::Bound => "bound",
            RootKind::Well => "well",
        }
    }
}

impl std::fmt::Display for RootKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for RootKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "barrier" => Ok(RootKind::Barrier),
            "bound" => Ok(RootKind::Bound),
            "well" => Ok(RootKind::Well),
            other => Err(crate::Error::InvalidArgument(format!(
                "unknown root kind '{other}' (expected barrier, bound or well)"
            ))),
        }
    }
}

/// Well resonances split into those that follow a barrier resonance as `λ`
/// grows and those that settle near a fraction `k/m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    First,
    Second,
}

#[derive(Debug, Clone)]
pub struct SpectralRoot {
    pub lambda: Float,
    pub kind: RootKind,
    /// Sheet index; 0 for bound states and barrier roots.
    pub m: i64,
    /// Position in the list ordered by increasing `|order|`.
    pub n: usize,
    pub order: Complex,
    pub energy: Complex,
    /// Only set for well resonances.
    pub family: Option<Family>,
    /// `|condition| / scale` at the returned order.
    pub residual: Float,
}

impl SpectralRoot {
    /// A barrier root on the real axis.
    pub fn is_virtual(&self) -> bool {
        self.kind == RootKind::Barrier && self.order.imag().is_zero()
    }
}
