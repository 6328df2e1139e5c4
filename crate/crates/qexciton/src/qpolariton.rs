//! Polaritons whose normal modes themselves obey a deformed algebra.
//!
//! Treating each polariton branch as an s-deformed boson with structure
//! function M(s, n_k) (the same map as k, with its own parameter s and the
//! branch occupation n_k) rescales the branch energies:
//!
//! ```text
//! Ω′_i = Ω_i / M(s, n_k),
//! ```
//!
//! so Ω′_i·M = Ω_i exactly and the emission line centers do not move with
//! s. The branch transformation coefficients acquire a factor −√M:
//!
//! ```text
//! u′ = −√M · u,   v′ = −√M · v,
//! ```
//!
//! still solving the same eigenvector equations but normalized to
//! u′²k + v′² = M (so |u′|²k + |v′|² = M without damping). The emitted
//! spectrum keeps the Lorentzian form with an extra overall factor
//! (|v′₁|² + |v′₂|²), making peak heights grow like M² while centers and
//! widths stay fixed.

use crate::polariton::{branch_energies_from_k, hopfield_from_k, Branch, SystemParams};
use crate::qalgebra::{k_factor, m_factor};
use crate::spectrum::{
    validate_grid, BranchLine, SpectrumError, SpectrumOptions, SpectrumSeries,
};
use crate::C64;

/// Deformed branch energies (Ω′₁, Ω′₂) = (Ω₁, Ω₂)/M(s, n_k) at polariton
/// occupation n_k.
pub fn deformed_polariton_spectrum(
    p: &SystemParams,
    q: f64,
    n: u32,
    s: f64,
    n_k: u32,
) -> Result<(C64, C64), SpectrumError> {
    p.validate()?;
    let k = k_factor(q, n)?;
    let m = m_factor(s, n_k)?;
    let (plus, minus) = branch_energies_from_k(p, k);
    Ok((plus / m, minus / m))
}

/// Deformed transformation coefficients (u′, v′) = −√M·(u, v) of one
/// branch, normalized to u′²k + v′² = M.
pub fn deformed_coefficients(
    p: &SystemParams,
    q: f64,
    n: u32,
    s: f64,
    n_k: u32,
    branch: Branch,
) -> Result<(C64, C64), SpectrumError> {
    p.validate()?;
    let k = k_factor(q, n)?;
    let m = m_factor(s, n_k)?;
    let (u, v) = hopfield_from_k(p, k, branch)?;
    let factor = C64::from(-m.sqrt());
    Ok((factor * u, factor * v))
}

/// Emission spectrum of the deformed polaritons with default options.
pub fn deformed_emission_spectrum(
    p: &SystemParams,
    q: f64,
    n: u32,
    s: f64,
    n_k: u32,
    grid: &[f64],
) -> Result<SpectrumSeries, SpectrumError> {
    deformed_emission_spectrum_with(p, q, n, s, n_k, grid, &SpectrumOptions::default())
}

/// Emission spectrum of the deformed polaritons,
///
/// ```text
/// S(ω) = (A·|α|²/π)·(|v′₁|² + |v′₂|²) Σ_i |v′_i|² Γ_i /((ω − Re(Ω′_i·M))² + Γ_i²).
/// ```
///
/// The centers Re(Ω′_i·M) equal Re Ω_i identically, so only heights grow
/// with s. Line widths follow the same conventions as the undeformed
/// spectrum.
pub fn deformed_emission_spectrum_with(
    p: &SystemParams,
    q: f64,
    n: u32,
    s: f64,
    n_k: u32,
    grid: &[f64],
    opts: &SpectrumOptions,
) -> Result<SpectrumSeries, SpectrumError> {
    p.validate()?;
    validate_grid(grid)?;
    let k = k_factor(q, n)?;
    m_factor(s, n_k)?;
    let (plus, minus) = branch_energies_from_k(p, k);
    let (_, v1) = deformed_coefficients(p, q, n, s, n_k, Branch::Plus)?;
    let (_, v2) = deformed_coefficients(p, q, n, s, n_k, Branch::Minus)?;
    let (w_plus, w_minus) = crate::polariton::branch_widths(p, plus, minus, opts.gamma_mode);
    let photon_sum = v1.norm_sqr() + v2.norm_sqr();
    let pref = p.scale * p.alpha_sq / std::f64::consts::PI * photon_sum;
    let branches = vec![
        BranchLine { center: plus.re, width: w_plus, weight: pref * v1.norm_sqr() },
        BranchLine { center: minus.re, width: w_minus, weight: pref * v2.norm_sqr() },
    ];
    SpectrumSeries::from_branches(grid, branches)
}
