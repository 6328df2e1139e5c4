//! Shared types for emission spectra built from branch Lorentzians.
//!
//! Every emission spectrum in this crate has the same shape: a set of
//! complex branch energies Ω_i turned into Lorentzian lines
//!
//! ```text
//! S(ω) = Σ_i  w_i · Γ_i / ((ω − Re Ω_i)² + Γ_i²),
//! ```
//!
//! where the weight w_i carries the photon content of the branch and the
//! half-width Γ_i comes from one of two conventions selected by
//! [`GammaMode`]. This module holds the branch/series containers, grid
//! validation, and peak finding used by the single-mode, deformed, and
//! two-exciton-mode spectra.

use thiserror::Error;

use crate::qalgebra::DomainError;

/// Errors produced while assembling branch energies or spectra.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    /// A deformation parameter was out of domain.
    #[error(transparent)]
    Domain(#[from] DomainError),
    /// A physical parameter failed validation.
    #[error("invalid parameters: {what}")]
    InvalidParams {
        /// Which constraint failed.
        what: String,
    },
    /// The frequency grid is unusable.
    #[error("invalid grid: {what}")]
    InvalidGrid {
        /// Which constraint failed.
        what: String,
    },
    /// A branch Lorentzian would have zero half-width, so the line shape is
    /// undefined.
    #[error("branch {branch} has zero linewidth")]
    ZeroLinewidth {
        /// Zero-based branch index.
        branch: usize,
    },
    /// Branch energies coincide (an exceptional point), so the
    /// transformation coefficients are not defined.
    #[error("degenerate branches: separation scale {separation:e}")]
    DegenerateBranches {
        /// Magnitude of the quantity whose vanishing signals the degeneracy.
        separation: f64,
    },
    /// A polynomial root failed its residual bound even after polishing.
    #[error("root residual {residual:e} exceeds bound {bound:e}")]
    ResidualBound {
        /// Residual |P(root)| actually achieved.
        residual: f64,
        /// Maximum residual allowed.
        bound: f64,
    },
}

impl SpectrumError {
    /// True for failures of the numerics (degeneracies, residual bounds)
    /// rather than of the input description.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            SpectrumError::DegenerateBranches { .. } | SpectrumError::ResidualBound { .. }
        )
    }
}

/// How the Lorentzian half-width Γ_i of a branch is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GammaMode {
    /// Γ_i = (sum of the bare damping rates)/2 for every branch: the common
    /// effective linewidth used when branches share their damping roughly
    /// equally.
    #[default]
    HalfDampingSum,
    /// Γ_i = −Im Ω_i: each branch keeps the linewidth of its own complex
    /// energy.
    BranchImaginary,
}

/// Options shared by the single-exciton-mode spectra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SpectrumOptions {
    /// Half-width convention; defaults to [`GammaMode::HalfDampingSum`].
    pub gamma_mode: GammaMode,
}

/// One Lorentzian line of an emission spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchLine {
    /// Line center Re Ω_i in eV.
    pub center: f64,
    /// Half-width Γ_i in eV; strictly positive.
    pub width: f64,
    /// Non-negative weight multiplying the Lorentzian.
    pub weight: f64,
}

/// An emission spectrum sampled on a frequency grid, together with the
/// branch lines it was assembled from.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSeries {
    /// Strictly increasing probe energies in eV.
    pub grid: Vec<f64>,
    /// Spectrum values, same length as `grid`; all finite and ≥ 0.
    pub values: Vec<f64>,
    /// The Lorentzian lines summed into `values`, in branch order.
    pub branches: Vec<BranchLine>,
}

/// Rejects empty, non-finite, or non-increasing grids.
pub fn validate_grid(grid: &[f64]) -> Result<(), SpectrumError> {
    if grid.is_empty() {
        return Err(SpectrumError::InvalidGrid { what: "grid is empty".into() });
    }
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(SpectrumError::InvalidGrid { what: "grid contains non-finite values".into() });
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(SpectrumError::InvalidGrid { what: "grid is not strictly increasing".into() });
    }
    Ok(())
}

impl SpectrumSeries {
    /// Sums the branch Lorentzians over the grid. The accumulation order is
    /// fixed — branches in the given order at each grid point — so the
    /// result is bit-for-bit reproducible.
    pub fn from_branches(grid: &[f64], branches: Vec<BranchLine>) -> Result<Self, SpectrumError> {
        validate_grid(grid)?;
        for (i, b) in branches.iter().enumerate() {
            if !b.center.is_finite() || !b.weight.is_finite() || !b.width.is_finite() {
                return Err(SpectrumError::InvalidParams {
                    what: format!("branch {i} has non-finite line parameters"),
                });
            }
            if b.weight < 0.0 {
                return Err(SpectrumError::InvalidParams {
                    what: format!("branch {i} has negative weight {}", b.weight),
                });
            }
            if b.width <= 0.0 {
                return Err(SpectrumError::ZeroLinewidth { branch: i });
            }
        }
        let values = grid
            .iter()
            .map(|&x| {
                branches
                    .iter()
                    .map(|b| {
                        let d = x - b.center;
                        b.weight * b.width / (d * d + b.width * b.width)
                    })
                    .sum()
            })
            .collect();
        Ok(SpectrumSeries { grid: grid.to_vec(), values, branches })
    }

    /// Index of the largest value (first one on exact ties).
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, &v) in self.values.iter().enumerate() {
            if v > self.values[best] {
                best = i;
            }
        }
        best
    }
}

/// Indices of strict interior local maxima: `values[i-1] < values[i] >
/// values[i+1]`.
pub fn local_maxima(values: &[f64]) -> Vec<usize> {
    let mut out = Vec::new();
    for i in 1..values.len().saturating_sub(1) {
        if values[i] > values[i - 1] && values[i] > values[i + 1] {
            out.push(i);
        }
    }
    out
}

/// Evenly spaced grid of `points ≥ 2` energies from `start` to `stop`
/// inclusive; the endpoints are reproduced exactly.
pub fn linspace(start: f64, stop: f64, points: usize) -> Vec<f64> {
    assert!(points >= 2, "linspace needs at least two points");
    let step = (stop - start) / (points - 1) as f64;
    let mut grid: Vec<f64> = (0..points).map(|j| start + step * j as f64).collect();
    grid[points - 1] = stop;
    grid
}
