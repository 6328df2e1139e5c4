//! Polariton branches of one deformed exciton mode coupled to a cavity mode.
//!
//! With the exciton occupation n entering only through the structure
//! function k = k(q, n), the linearized exciton–photon system is the 2×2
//! non-Hermitian matrix
//!
//! ```text
//! ⎡ ω_ex·k − iγ_ex      g        ⎤   acting on (exciton, photon)
//! ⎣ g·k                 ω − iγ_ph ⎦   amplitudes (u, v),
//! ```
//!
//! whose eigenvalues are the complex branch energies
//!
//! ```text
//! Ω± = [ω_ex·k + ω − i(γ_ex + γ_ph)]/2
//!      ± ½·√( [ω_ex·k − ω − i(γ_ex − γ_ph)]² + 4g²k ).
//! ```
//!
//! The transformation coefficients of a branch are
//!
//! ```text
//! u = √( (ω − iγ_ph − Ω) / (k·D) ),   v = −√( (ω_ex·k − iγ_ex − Ω) / D ),
//! D = ω_ex·k + ω − i(γ_ex + γ_ph) − 2Ω,
//! ```
//!
//! which satisfy u²k + v² = 1 identically (so |u|²k + |v|² = 1 without
//! damping). The square roots leave a relative sign free; it is fixed by
//! minimizing the eigenvector residual of the matrix above. Cavity emission
//! is a sum of branch Lorentzians weighted by the photon content |v_i|².

use crate::qalgebra::k_factor;
use crate::spectrum::{
    validate_grid, BranchLine, GammaMode, SpectrumError, SpectrumOptions, SpectrumSeries,
};
use crate::C64;

/// Physical parameters of one exciton mode in a single-mode cavity.
/// All energies and rates are in eV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Cavity mode energy ω.
    pub omega: f64,
    /// Bare exciton energy ω_ex.
    pub omega_ex: f64,
    /// Exciton–photon coupling g.
    pub g: f64,
    /// Exciton damping rate γ_ex.
    pub gamma_ex: f64,
    /// Photon damping rate γ_ph.
    pub gamma_ph: f64,
    /// Mean photon occupation |α|² of the emitting state.
    pub alpha_sq: f64,
    /// Overall spectrum scale factor A.
    pub scale: f64,
}

impl SystemParams {
    /// Checks positivity/finiteness constraints shared by all spectra.
    pub fn validate(&self) -> Result<(), SpectrumError> {
        let checks: [(&str, f64, bool); 7] = [
            ("omega", self.omega, self.omega.is_finite() && self.omega > 0.0),
            ("omega_ex", self.omega_ex, self.omega_ex.is_finite() && self.omega_ex > 0.0),
            ("g", self.g, self.g.is_finite() && self.g >= 0.0),
            ("gamma_ex", self.gamma_ex, self.gamma_ex.is_finite() && self.gamma_ex >= 0.0),
            ("gamma_ph", self.gamma_ph, self.gamma_ph.is_finite() && self.gamma_ph >= 0.0),
            ("alpha_sq", self.alpha_sq, self.alpha_sq.is_finite() && self.alpha_sq >= 0.0),
            ("scale", self.scale, self.scale.is_finite() && self.scale >= 0.0),
        ];
        for (name, value, ok) in checks {
            if !ok {
                return Err(SpectrumError::InvalidParams {
                    what: format!("{name} = {value} is out of range"),
                });
            }
        }
        Ok(())
    }
}

/// Which polariton branch: branch 1 carries the "+" square root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Branch 1, the "+" root.
    Plus,
    /// Branch 2, the "−" root.
    Minus,
}

/// Exciton and photon complex diagonal energies for a given structure
/// factor.
fn diagonals(p: &SystemParams, k: f64) -> (C64, C64) {
    let a = C64::new(p.omega_ex * k, -p.gamma_ex);
    let b = C64::new(p.omega, -p.gamma_ph);
    (a, b)
}

/// Branch energies (Ω₊, Ω₋) for a given structure factor k.
pub(crate) fn branch_energies_from_k(p: &SystemParams, k: f64) -> (C64, C64) {
    let (a, b) = diagonals(p, k);
    let half_sum = 0.5 * (a + b);
    let root = (0.25 * (a - b) * (a - b) + C64::from(p.g * p.g * k)).sqrt();
    (half_sum + root, half_sum - root)
}

/// Complex branch energies (Ω₁, Ω₂) of the deformed exciton–cavity system
/// at exciton occupation n; branch 1 is the "+" root.
pub fn polariton_spectrum(
    p: &SystemParams,
    q: f64,
    n: u32,
) -> Result<(C64, C64), SpectrumError> {
    p.validate()?;
    let k = k_factor(q, n)?;
    Ok(branch_energies_from_k(p, k))
}

/// Residual of (u, v) as an eigenvector candidate of the system matrix at
/// energy Ω, scale-normalized.
fn eigen_residual(a: C64, b: C64, g: f64, k: f64, omega_c: C64, u: C64, v: C64) -> f64 {
    let r1 = (a - omega_c) * u + C64::from(g) * v;
    let r2 = C64::from(g * k) * u + (b - omega_c) * v;
    let scale = (a.norm() + b.norm() + g * (1.0 + k)).max(1e-300) * u.norm().max(v.norm());
    (r1.norm() + r2.norm()) / scale.max(1e-300)
}

/// Transformation coefficients for a given structure factor and branch,
/// with the relative square-root sign fixed by the eigenvector residual.
pub(crate) fn hopfield_from_k(
    p: &SystemParams,
    k: f64,
    branch: Branch,
) -> Result<(C64, C64), SpectrumError> {
    let (a, b) = diagonals(p, k);
    let (plus, minus) = branch_energies_from_k(p, k);
    let omega_c = match branch {
        Branch::Plus => plus,
        Branch::Minus => minus,
    };
    let d = a + b - 2.0 * omega_c;
    // D = ∓2·(square root term); its vanishing is an exceptional point where
    // the two branches coincide and the coefficients are undefined.
    let scale = a.norm() + b.norm() + p.g * (1.0 + k);
    if d.norm() <= 1e-12 * scale.max(1e-300) {
        return Err(SpectrumError::DegenerateBranches { separation: d.norm() });
    }
    // Whichever bare energy the branch clings to leaves its gap as an
    // almost-exact cancellation (true size ~g²k/|a−b| for weak coupling),
    // and the square root would amplify that rounding noise. The
    // eigenvalue equation (a−Ω)(b−Ω) = g²k recovers the small gap stably
    // from the large one.
    let g2k = C64::from(p.g * p.g * k);
    let mut gap_a = a - omega_c;
    let mut gap_b = b - omega_c;
    if gap_b.norm() < 1e-3 * scale && gap_a.norm() > 1e-3 * scale {
        gap_b = g2k / gap_a;
    } else if gap_a.norm() < 1e-3 * scale && gap_b.norm() > 1e-3 * scale {
        gap_a = g2k / gap_b;
    }
    let u = (gap_b / (k * d)).sqrt();
    let v = -(gap_a / d).sqrt();
    // The principal square roots fix |u| and |v| but not the relative sign;
    // keep whichever candidate better solves the eigenvector equations.
    let r_keep = eigen_residual(a, b, p.g, k, omega_c, u, v);
    let r_flip = eigen_residual(a, b, p.g, k, omega_c, u, -v);
    if r_flip < r_keep {
        Ok((u, -v))
    } else {
        Ok((u, v))
    }
}

/// Transformation coefficients (u, v) of one branch: u is the exciton
/// amplitude (weighted by k in the normalization u²k + v² = 1), v the
/// photon amplitude.
pub fn hopfield_coefficients(
    p: &SystemParams,
    q: f64,
    n: u32,
    branch: Branch,
) -> Result<(C64, C64), SpectrumError> {
    p.validate()?;
    let k = k_factor(q, n)?;
    hopfield_from_k(p, k, branch)
}

/// Half-widths (Γ₁, Γ₂) for the two branches under the chosen convention.
pub(crate) fn branch_widths(
    p: &SystemParams,
    plus: C64,
    minus: C64,
    mode: GammaMode,
) -> (f64, f64) {
    match mode {
        GammaMode::HalfDampingSum => {
            let g = 0.5 * (p.gamma_ex + p.gamma_ph);
            (g, g)
        }
        GammaMode::BranchImaginary => (-plus.im, -minus.im),
    }
}

/// Cavity emission spectrum with default options
/// ([`GammaMode::HalfDampingSum`]).
pub fn emission_spectrum(
    p: &SystemParams,
    q: f64,
    n: u32,
    grid: &[f64],
) -> Result<SpectrumSeries, SpectrumError> {
    emission_spectrum_with(p, q, n, grid, &SpectrumOptions::default())
}

/// Cavity emission spectrum
///
/// ```text
/// S(ω) = (A·|α|²/π) Σ_{i=1,2} |v_i|² Γ_i / ((ω − Re Ω_i)² + Γ_i²)
/// ```
///
/// summed over the two branches in fixed order.
pub fn emission_spectrum_with(
    p: &SystemParams,
    q: f64,
    n: u32,
    grid: &[f64],
    opts: &SpectrumOptions,
) -> Result<SpectrumSeries, SpectrumError> {
    p.validate()?;
    validate_grid(grid)?;
    let k = k_factor(q, n)?;
    let (plus, minus) = branch_energies_from_k(p, k);
    let (_, v_plus) = hopfield_from_k(p, k, Branch::Plus)?;
    let (_, v_minus) = hopfield_from_k(p, k, Branch::Minus)?;
    let (w_plus, w_minus) = branch_widths(p, plus, minus, opts.gamma_mode);
    let pref = p.scale * p.alpha_sq / std::f64::consts::PI;
    let branches = vec![
        BranchLine { center: plus.re, width: w_plus, weight: pref * v_plus.norm_sqr() },
        BranchLine { center: minus.re, width: w_minus, weight: pref * v_minus.norm_sqr() },
    ];
    SpectrumSeries::from_branches(grid, branches)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{linspace, local_maxima};

    /// Strong-coupling microcavity example used throughout the tests:
    /// degenerate cavity and exciton at 1.75 eV, g = 200 µeV,
    /// γ_ex = 20 µeV, γ_ph = 40 µeV.
    pub(crate) fn example_params() -> SystemParams {
        SystemParams {
            omega: 1.75,
            omega_ex: 1.75,
            g: 200e-6,
            gamma_ex: 20e-6,
            gamma_ph: 40e-6,
            alpha_sq: 9.0,
            scale: 1.0,
        }
    }

    fn assert_close(actual: f64, expected: f64, tol: f64) {
        assert!(
            (actual - expected).abs() <= tol,
            "actual {actual:e} vs expected {expected:e}"
        );
    }

    #[test]
    fn undeformed_resonant_branches_match_hand_evaluation() {
        // At q = 1, resonance: Ω± = ω − i(γ_ex+γ_ph)/2 ± √(g² − (γ_ex−γ_ph)²/4).
        let p = example_params();
        let (plus, minus) = polariton_spectrum(&p, 1.0, 1).unwrap();
        let root = (200e-6f64.powi(2) - 1e-5f64.powi(2)).sqrt();
        assert_close(plus.re, 1.75 + root, 1e-15);
        assert_close(minus.re, 1.75 - root, 1e-15);
        assert_close(plus.im, -30e-6, 1e-18);
        assert_close(minus.im, -30e-6, 1e-18);
    }

    #[test]
    fn zero_coupling_gives_bare_modes_as_a_set() {
        let mut p = example_params();
        p.g = 0.0;
        p.omega_ex = 1.76;
        let (plus, minus) = polariton_spectrum(&p, 1.0, 1).unwrap();
        let bare_ex = C64::new(1.76, -20e-6);
        let bare_ph = C64::new(1.75, -40e-6);
        let hit = ((plus - bare_ex).norm() < 1e-12 && (minus - bare_ph).norm() < 1e-12)
            || ((plus - bare_ph).norm() < 1e-12 && (minus - bare_ex).norm() < 1e-12);
        assert!(hit, "got {plus} / {minus}");
    }

    #[test]
    fn complex_normalization_is_algebraically_exact() {
        let p = example_params();
        for (q, n) in [(1.0, 1u32), (1.015, 1), (1.1, 7), (0.93, 3)] {
            let k = k_factor(q, n).unwrap();
            for branch in [Branch::Plus, Branch::Minus] {
                let (u, v) = hopfield_coefficients(&p, q, n, branch).unwrap();
                let norm = u * u * k + v * v;
                assert!((norm - C64::from(1.0)).norm() < 1e-12, "u²k+v² = {norm}");
            }
        }
    }

    #[test]
    fn coefficients_solve_the_eigenvector_equations() {
        let p = example_params();
        for (q, n) in [(1.0, 1u32), (1.015, 1), (1.08, 2)] {
            let k = k_factor(q, n).unwrap();
            let a = C64::new(p.omega_ex * k, -p.gamma_ex);
            let b = C64::new(p.omega, -p.gamma_ph);
            let (plus, minus) = polariton_spectrum(&p, q, n).unwrap();
            for (branch, omega_c) in [(Branch::Plus, plus), (Branch::Minus, minus)] {
                let (u, v) = hopfield_coefficients(&p, q, n, branch).unwrap();
                let r1 = ((a - omega_c) * u + C64::from(p.g) * v).norm();
                let r2 = (C64::from(p.g * k) * u + (b - omega_c) * v).norm();
                assert!(r1 < 1e-12 && r2 < 1e-12, "residuals {r1:e}, {r2:e}");
            }
        }
    }

    #[test]
    fn undamped_coefficients_have_unit_weighted_modulus() {
        let mut p = example_params();
        p.gamma_ex = 0.0;
        p.gamma_ph = 0.0;
        for branch in [Branch::Plus, Branch::Minus] {
            let (u, v) = hopfield_coefficients(&p, 1.015, 2, branch).unwrap();
            let k = k_factor(1.015, 2).unwrap();
            assert_close(u.norm_sqr() * k + v.norm_sqr(), 1.0, 1e-12);
        }
    }

    #[test]
    fn zero_coupling_photon_branch_is_pure_photon() {
        // With g = 0 the sign fix must still produce a consistent
        // eigenvector: the photon branch has u = 0, |v| = 1.
        let mut p = example_params();
        p.g = 0.0;
        p.omega_ex = 1.76;
        p.gamma_ex = 0.0;
        p.gamma_ph = 0.0;
        let (plus, minus) = polariton_spectrum(&p, 1.0, 1).unwrap();
        let photon_branch = if (plus.re - 1.75).abs() < 1e-9 { Branch::Plus } else {
            assert!((minus.re - 1.75).abs() < 1e-9);
            Branch::Minus
        };
        let (u, v) = hopfield_coefficients(&p, 1.0, 1, photon_branch).unwrap();
        assert!(u.norm() < 1e-12);
        assert_close(v.norm(), 1.0, 1e-12);
    }

    #[test]
    fn degenerate_branches_are_reported() {
        // Exceptional point: resonance with g = |γ_ex − γ_ph|/2 closes the
        // square root exactly.
        let p = SystemParams {
            omega: 1.75,
            omega_ex: 1.75,
            g: 20e-6,
            gamma_ex: 0.0,
            gamma_ph: 40e-6,
            alpha_sq: 1.0,
            scale: 1.0,
        };
        let err = hopfield_coefficients(&p, 1.0, 1, Branch::Plus).unwrap_err();
        assert!(matches!(err, SpectrumError::DegenerateBranches { .. }), "{err:?}");
    }

    #[test]
    fn emission_spectrum_shows_the_rabi_doublet() {
        let p = example_params();
        let grid = linspace(1.7485, 1.7515, 6001);
        let s = emission_spectrum(&p, 1.0, 1, &grid).unwrap();
        let peaks = local_maxima(&s.values);
        assert_eq!(peaks.len(), 2, "expected a two-peak doublet");
        let split = grid[peaks[1]] - grid[peaks[0]];
        // 2·√(g² − (γ_ex−γ_ph)²/4) = 399.50 µeV, measured on a 0.5 µeV grid.
        assert_close(split, 399.5e-6, 1.0e-6);
        // Resonant q = 1 doublet is symmetric about the bare energy.
        assert_close(0.5 * (grid[peaks[0]] + grid[peaks[1]]), 1.75, 1e-6);
    }

    #[test]
    fn deformation_blueshifts_the_upper_branch() {
        let p = example_params();
        let (plus_1, minus_1) = polariton_spectrum(&p, 1.0, 1).unwrap();
        let (plus_q, minus_q) = polariton_spectrum(&p, 1.015, 1).unwrap();
        // k(1.015, 1) > 1 raises the exciton energy, pushing the upper
        // branch up; the lower branch stays pinned near the cavity.
        assert!(plus_q.re > plus_1.re);
        assert!((minus_q.re - minus_1.re).abs() < (plus_q.re - plus_1.re));
    }

    #[test]
    fn linewidth_conventions_differ_off_resonance() {
        let mut p = example_params();
        p.omega_ex = 1.76;
        let grid = linspace(1.745, 1.765, 2001);
        let s_half = emission_spectrum_with(
            &p, 1.0, 1, &grid,
            &SpectrumOptions { gamma_mode: GammaMode::HalfDampingSum },
        )
        .unwrap();
        let s_imag = emission_spectrum_with(
            &p, 1.0, 1, &grid,
            &SpectrumOptions { gamma_mode: GammaMode::BranchImaginary },
        )
        .unwrap();
        assert_close(s_half.branches[0].width, 30e-6, 1e-12);
        assert_close(s_half.branches[1].width, 30e-6, 1e-12);
        // Off resonance the branch linewidths split toward the bare rates.
        assert!(s_imag.branches[0].width != s_imag.branches[1].width);
        let total: f64 = s_imag.branches.iter().map(|b| b.width).sum();
        assert_close(total, 60e-6, 1e-15);
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        let mut p = example_params();
        p.omega = -1.0;
        assert!(polariton_spectrum(&p, 1.0, 1).is_err());
        let mut p = example_params();
        p.g = f64::NAN;
        assert!(polariton_spectrum(&p, 1.0, 1).is_err());
        let p = example_params();
        assert!(polariton_spectrum(&p, -0.5, 1).is_err());
    }
}
