//! Two deformed exciton modes sharing one cavity mode.
//!
//! With structure factors k₁ = k(q₁, n₁) and k₂ = k(q₂, n₂) and complex
//! diagonals c = ω_ex1·k₁ − iγ_ex1, d = ω_ex2·k₂ − iγ_ex2,
//! b = ω − iγ_ph, the linearized system is the 3×3 matrix
//!
//! ```text
//! ⎡ c      0      g ⎤   acting on (exciton₁, exciton₂, photon)
//! ⎢ 0      d      g ⎥   amplitudes (u, x, v).
//! ⎣ g·k₁   g·k₂   b ⎦
//! ```
//!
//! Its characteristic polynomial is the monic cubic
//!
//! ```text
//! P(Ω) = (c−Ω)(d−Ω)(b−Ω) − g²k₂(c−Ω) − g²k₁(d−Ω) = 0   (up to sign),
//! ```
//!
//! solved in closed form. For a branch energy Ω the transformation
//! coefficients are
//!
//! ```text
//! (u, x, v) = ( g·W,  g³k₁,  −(c−Ω)·W ) / A,
//! W = (d−Ω)(b−Ω) − g²k₂,
//! A = √( (g²k₁ + (c−Ω)²)·W² + g⁶k₁²k₂ ),
//! ```
//!
//! which is proportional to the matrix eigenvector — the characteristic
//! equation is exactly the identity (c−Ω)W = g²k₁(d−Ω) that makes it so —
//! and satisfies u²k₁ + x²k₂ + v² = 1 identically. Cavity emission sums
//! the three branch Lorentzians weighted by photon content |v_i|².

use crate::qalgebra::k_factor;
use crate::spectrum::{
    validate_grid, BranchLine, GammaMode, SpectrumError, SpectrumSeries,
};
use crate::C64;

/// Physical parameters of two exciton modes in a single-mode cavity.
/// All energies and rates are in eV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeParams {
    /// Cavity mode energy ω.
    pub omega: f64,
    /// First exciton energy ω_ex1.
    pub omega_ex1: f64,
    /// Second exciton energy ω_ex2.
    pub omega_ex2: f64,
    /// Common exciton–photon coupling g.
    pub g: f64,
    /// First exciton damping rate γ_ex1.
    pub gamma_ex1: f64,
    /// Second exciton damping rate γ_ex2.
    pub gamma_ex2: f64,
    /// Photon damping rate γ_ph.
    pub gamma_ph: f64,
    /// Deformation parameter of the first exciton mode.
    pub q1: f64,
    /// Deformation parameter of the second exciton mode.
    pub q2: f64,
    /// Occupation of the first exciton mode.
    pub n1: u32,
    /// Occupation of the second exciton mode.
    pub n2: u32,
    /// Mean photon occupation |α|² of the emitting state.
    pub alpha_sq: f64,
    /// Overall spectrum scale factor A.
    pub scale: f64,
}

impl TwoModeParams {
    /// Checks positivity/finiteness constraints.
    pub fn validate(&self) -> Result<(), SpectrumError> {
        let checks: [(&str, f64, bool); 9] = [
            ("omega", self.omega, self.omega.is_finite() && self.omega > 0.0),
            ("omega_ex1", self.omega_ex1, self.omega_ex1.is_finite() && self.omega_ex1 > 0.0),
            ("omega_ex2", self.omega_ex2, self.omega_ex2.is_finite() && self.omega_ex2 > 0.0),
            ("g", self.g, self.g.is_finite() && self.g >= 0.0),
            ("gamma_ex1", self.gamma_ex1, self.gamma_ex1.is_finite() && self.gamma_ex1 >= 0.0),
            ("gamma_ex2", self.gamma_ex2, self.gamma_ex2.is_finite() && self.gamma_ex2 >= 0.0),
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

    /// Structure factors (k₁, k₂) of the two exciton modes.
    pub fn structure_factors(&self) -> Result<(f64, f64), SpectrumError> {
        Ok((k_factor(self.q1, self.n1)?, k_factor(self.q2, self.n2)?))
    }

    /// Complex diagonal energies (c, d, b) for given structure factors.
    fn diagonals(&self, k1: f64, k2: f64) -> (C64, C64, C64) {
        (
            C64::new(self.omega_ex1 * k1, -self.gamma_ex1),
            C64::new(self.omega_ex2 * k2, -self.gamma_ex2),
            C64::new(self.omega, -self.gamma_ph),
        )
    }
}

/// A monic cubic Ω³ + c₂Ω² + c₁Ω + c₀.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cubic {
    /// Quadratic coefficient c₂.
    pub c2: C64,
    /// Linear coefficient c₁.
    pub c1: C64,
    /// Constant coefficient c₀.
    pub c0: C64,
}

impl Cubic {
    /// P(Ω) for this monic cubic.
    pub fn eval(&self, omega: C64) -> C64 {
        ((omega + self.c2) * omega + self.c1) * omega + self.c0
    }

    /// P′(Ω).
    pub fn deriv(&self, omega: C64) -> C64 {
        (3.0 * omega + 2.0 * self.c2) * omega + self.c1
    }
}

/// The three complex roots of a cubic, ordered by (Re, Im) ascending,
/// with their polynomial residuals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicRoots {
    /// Roots ordered by real part, then imaginary part.
    pub roots: [C64; 3],
    /// |P(root)| of the monic polynomial for each root, same order.
    pub residuals: [f64; 3],
    /// True when two roots lie closer than 1e−6 relative to the root
    /// scale — the discriminant, a product of squared root differences,
    /// is then below 1e−12 relative and the roots are near-defective.
    pub degenerate: bool,
}

/// Monic characteristic cubic of the three-mode system matrix for given
/// diagonals, coupling, and structure factors.
pub(crate) fn cubic_from_parts(b: C64, c: C64, d: C64, g: f64, k1: f64, k2: f64) -> Cubic {
    let g2 = C64::from(g * g);
    Cubic {
        c2: -(b + c + d),
        c1: c * d + c * b + d * b - g2 * (k1 + k2),
        c0: -(b * c * d) + g2 * (k1 * d + k2 * c),
    }
}

/// Monic characteristic cubic whose roots are the three branch energies.
pub fn characteristic_cubic(p: &TwoModeParams) -> Result<Cubic, SpectrumError> {
    p.validate()?;
    let (k1, k2) = p.structure_factors()?;
    let (c, d, b) = p.diagonals(k1, k2);
    Ok(cubic_from_parts(b, c, d, p.g, k1, k2))
}

fn sort_roots(mut roots: [C64; 3]) -> [C64; 3] {
    roots.sort_by(|a, b| {
        a.re.total_cmp(&b.re).then_with(|| a.im.total_cmp(&b.im))
    });
    roots
}

/// Solves a₃Ω³ + a₂Ω² + a₁Ω + a₀ = 0 in closed form (coefficients in
/// descending degree), with one Newton polish per root and a residual
/// check on the monic polynomial.
pub fn solve_cubic(coeffs: &[C64; 4]) -> Result<CubicRoots, SpectrumError> {
    let [a3, a2, a1, a0] = *coeffs;
    let tail_scale = a2.norm().max(a1.norm()).max(a0.norm()).max(1.0);
    if !coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
        return Err(SpectrumError::InvalidParams { what: "non-finite cubic coefficients".into() });
    }
    if a3.norm() <= 1e-300 * tail_scale {
        return Err(SpectrumError::InvalidParams {
            what: "leading cubic coefficient is zero".into(),
        });
    }
    let cubic = Cubic { c2: a2 / a3, c1: a1 / a3, c0: a0 / a3 };
    solve_monic_cubic(&cubic)
}

pub(crate) fn solve_monic_cubic(cubic: &Cubic) -> Result<CubicRoots, SpectrumError> {
    let Cubic { c2, c1, c0 } = *cubic;
    let shift = c2 / 3.0;
    // Depressed form t³ + p·t + q with Ω = t − c₂/3.
    let p = c1 - c2 * c2 / 3.0;
    let q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
    let s = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    // Pick the Cardano branch that avoids cancellation in −q/2 ± s.
    let cand_plus = -q / 2.0 + s;
    let cand_minus = -q / 2.0 - s;
    let u_cubed = if cand_plus.norm() >= cand_minus.norm() { cand_plus } else { cand_minus };
    let mut roots = if u_cubed.norm() == 0.0 {
        // p = q = 0: a triple root at −c₂/3.
        [-shift, -shift, -shift]
    } else {
        let u = u_cubed.cbrt();
        let rot = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let mut out = [C64::from(0.0); 3];
        let mut w = u;
        for slot in &mut out {
            *slot = w - p / (3.0 * w) - shift;
            w *= rot;
        }
        out
    };
    // One or two Newton steps per root remove the last rounding drift of
    // the closed form; keep the better iterate.
    for r in &mut roots {
        for _ in 0..2 {
            let f = cubic.eval(*r);
            let df = cubic.deriv(*r);
            if df.norm() == 0.0 {
                break;
            }
            let next = *r - f / df;
            if cubic.eval(next).norm() < f.norm() {
                *r = next;
            } else {
                break;
            }
        }
    }
    let roots = sort_roots(roots);
    let residuals = [
        cubic.eval(roots[0]).norm(),
        cubic.eval(roots[1]).norm(),
        cubic.eval(roots[2]).norm(),
    ];
    let coeff_scale = c2.norm().max(c1.norm()).max(c0.norm()).max(1.0);
    let bound = 1e-9 * coeff_scale;
    // NaN residuals must fail the bound too, hence the explicit check.
    if residuals.iter().any(|&r| r.is_nan() || r > bound) {
        return Err(SpectrumError::ResidualBound {
            residual: residuals.iter().cloned().fold(0.0, f64::max),
            bound,
        });
    }
    let root_scale = roots.iter().map(|r| r.norm()).fold(1.0, f64::max);
    let min_dist = (roots[0] - roots[1])
        .norm()
        .min((roots[0] - roots[2]).norm())
        .min((roots[1] - roots[2]).norm());
    Ok(CubicRoots { roots, residuals, degenerate: min_dist <= 1e-6 * root_scale })
}

/// Characteristic polynomial in factored parts,
/// P(Ω) = (c−Ω)·W(Ω) − g²k₁·(d−Ω) with W(Ω) = (d−Ω)(b−Ω) − g²k₂.
/// Near clustered branches this form evaluates without the catastrophic
/// cancellation of the expanded monic coefficients, so Newton steps against
/// it recover the roots to machine accuracy even for µeV splittings on
/// eV-scale energies.
struct PartsCubic {
    b: C64,
    c: C64,
    d: C64,
    g2k1: f64,
    g2k2: f64,
}

impl PartsCubic {
    fn eval(&self, omega: C64) -> C64 {
        let w = (self.d - omega) * (self.b - omega) - self.g2k2;
        (self.c - omega) * w - self.g2k1 * (self.d - omega)
    }

    fn deriv(&self, omega: C64) -> C64 {
        let w = (self.d - omega) * (self.b - omega) - self.g2k2;
        let w_prime = -(self.d - omega) - (self.b - omega);
        -w + (self.c - omega) * w_prime + self.g2k1
    }

    fn polish(&self, root: C64) -> C64 {
        let mut r = root;
        for _ in 0..3 {
            let f = self.eval(r);
            let df = self.deriv(r);
            if df.norm() == 0.0 {
                break;
            }
            let next = r - f / df;
            if self.eval(next).norm() < f.norm() {
                r = next;
            } else {
                break;
            }
        }
        r
    }
}

/// The three complex branch energies of the two-exciton-mode system,
/// ordered by (Re, Im) ascending. Roots are polished against the factored
/// characteristic form, which stays accurate for branches split by
/// energies many orders below the absolute scale.
pub fn two_exciton_roots(p: &TwoModeParams) -> Result<CubicRoots, SpectrumError> {
    p.validate()?;
    let (k1, k2) = p.structure_factors()?;
    roots_from_k(p, k1, k2)
}

/// Branch energies for explicit structure factors; the validation sweeps
/// call this to compare against the matrix route at independently chosen
/// factors.
pub(crate) fn roots_from_k(
    p: &TwoModeParams,
    k1: f64,
    k2: f64,
) -> Result<CubicRoots, SpectrumError> {
    let (c, d, b) = p.diagonals(k1, k2);
    let cubic = cubic_from_parts(b, c, d, p.g, k1, k2);
    let coarse = solve_monic_cubic(&cubic)?;
    let parts = PartsCubic { b, c, d, g2k1: p.g * p.g * k1, g2k2: p.g * p.g * k2 };
    let roots = sort_roots([
        parts.polish(coarse.roots[0]),
        parts.polish(coarse.roots[1]),
        parts.polish(coarse.roots[2]),
    ]);
    let residuals = [
        cubic.eval(roots[0]).norm(),
        cubic.eval(roots[1]).norm(),
        cubic.eval(roots[2]).norm(),
    ];
    let root_scale = roots.iter().map(|r| r.norm()).fold(1.0, f64::max);
    let min_dist = (roots[0] - roots[1])
        .norm()
        .min((roots[0] - roots[2]).norm())
        .min((roots[1] - roots[2]).norm());
    Ok(CubicRoots { roots, residuals, degenerate: min_dist <= 1e-6 * root_scale })
}

/// How the closed-form coefficient triple is normalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoefficientConvention {
    /// Divide by the complex normalizer A above: u²k₁ + x²k₂ + v² = 1
    /// exactly, matching the closed-form transformation.
    #[default]
    ClosedFormNormalizer,
    /// Divide by the real modulus norm √(|u|²k₁ + |x|²k₂ + |v|²) instead,
    /// so the weighted moduli sum to 1 even with damping.
    ModulusNormalized,
}

/// Options for the two-exciton-mode spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoModeOptions {
    /// Half-width convention; defaults to [`GammaMode::BranchImaginary`]
    /// (each branch keeps its own imaginary part).
    pub gamma_mode: GammaMode,
    /// Coefficient normalization; defaults to the closed-form normalizer.
    pub coefficients: CoefficientConvention,
}

impl Default for TwoModeOptions {
    fn default() -> Self {
        TwoModeOptions {
            gamma_mode: GammaMode::BranchImaginary,
            coefficients: CoefficientConvention::ClosedFormNormalizer,
        }
    }
}

fn coefficients_at(
    p: &TwoModeParams,
    omega_c: C64,
    convention: CoefficientConvention,
) -> Result<(C64, C64, C64), SpectrumError> {
    let (k1, k2) = p.structure_factors()?;
    coefficients_from_k(p, omega_c, k1, k2, convention)
}

/// Residual of (u, x, v) as an eigenvector candidate at energy Ω,
/// normalized by the matrix scale and the largest component.
fn triple_residual(
    diag: (C64, C64, C64),
    g: f64,
    k1: f64,
    k2: f64,
    omega_c: C64,
    (u, x, v): (C64, C64, C64),
) -> f64 {
    let (c, d, b) = diag;
    let r1 = (c - omega_c) * u + C64::from(g) * v;
    let r2 = (d - omega_c) * x + C64::from(g) * v;
    let r3 = C64::from(g * k1) * u + C64::from(g * k2) * x + (b - omega_c) * v;
    let matrix_scale = c.norm().max(d.norm()).max(b.norm()).max(g * (1.0 + k1 + k2));
    let component = u.norm().max(x.norm()).max(v.norm());
    (r1.norm() + r2.norm() + r3.norm()) / (matrix_scale.max(1e-300) * component.max(1e-300))
}

/// Solves (M − ΩI)z = y by partial-pivot elimination, M being the
/// three-mode system matrix. At an eigenvalue the system is nearly
/// singular — exactly what inverse iteration exploits to amplify the
/// eigendirection of the right-hand side.
fn inverse_iteration_step(
    diag: (C64, C64, C64),
    g: f64,
    k1: f64,
    k2: f64,
    omega_c: C64,
    y: [C64; 3],
) -> Option<[C64; 3]> {
    let (c, d, b) = diag;
    let zero = C64::from(0.0);
    let mut a = [
        [c - omega_c, zero, C64::from(g), y[0]],
        [zero, d - omega_c, C64::from(g), y[1]],
        [C64::from(g * k1), C64::from(g * k2), b - omega_c, y[2]],
    ];
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))?;
        if a[pivot][col].norm() == 0.0 {
            return None;
        }
        a.swap(col, pivot);
        for row in col + 1..3 {
            let f = a[row][col] / a[col][col];
            let pivot_row = a[col];
            for (dst, src) in a[row].iter_mut().zip(pivot_row).skip(col) {
                *dst -= f * src;
            }
        }
    }
    let mut z = [zero; 3];
    for row in (0..3).rev() {
        let mut s = a[row][3];
        for j in row + 1..3 {
            s -= a[row][j] * z[j];
        }
        z[row] = s / a[row][row];
        if !z[row].re.is_finite() || !z[row].im.is_finite() {
            return None;
        }
    }
    Some(z)
}

/// Applies the requested normalization to a raw direction vector. Returns
/// `None` when the closed-form bilinear normalizer degenerates (a
/// quasi-null eigenvector), where the convention is not representable.
fn normalize_triple(
    z: [C64; 3],
    k1: f64,
    k2: f64,
    convention: CoefficientConvention,
) -> Option<(C64, C64, C64)> {
    let modulus = (z[0].norm_sqr() * k1 + z[1].norm_sqr() * k2 + z[2].norm_sqr()).sqrt();
    if modulus == 0.0 || !modulus.is_finite() {
        return None;
    }
    match convention {
        CoefficientConvention::ClosedFormNormalizer => {
            let form = (z[0] * z[0] * k1 + z[1] * z[1] * k2 + z[2] * z[2]).sqrt();
            if form.norm() <= 1e-12 * modulus {
                return None;
            }
            Some((z[0] / form, z[1] / form, z[2] / form))
        }
        CoefficientConvention::ModulusNormalized => {
            Some((z[0] / modulus, z[1] / modulus, z[2] / modulus))
        }
    }
}

/// Coefficient triple for explicit structure factors; used by the
/// validation sweeps alongside [`roots_from_k`].
pub(crate) fn coefficients_from_k(
    p: &TwoModeParams,
    omega_c: C64,
    k1: f64,
    k2: f64,
    convention: CoefficientConvention,
) -> Result<(C64, C64, C64), SpectrumError> {
    let (c, d, b) = p.diagonals(k1, k2);
    let g = p.g;
    let w_direct = (d - omega_c) * (b - omega_c) - C64::from(g * g * k2);
    // Near the branch dominated by the second exciton mode the two parts
    // of w cancel almost exactly (its true size collapses from ~|Ω|² to
    // ~g⁴), so the direct difference is rounding noise for weak coupling.
    // There the characteristic equation pins w = g²k₁(d−Ω)/(c−Ω), which
    // is well-conditioned precisely because that branch lies far from the
    // first mode's energy.
    let cancellation = (d - omega_c).norm() * (b - omega_c).norm() + g * g * k2;
    let first_gap = (c - omega_c).norm();
    let scale = c.norm().max(d.norm()).max(b.norm()).max(1e-300);
    let w = if w_direct.norm() < 1e-3 * cancellation && first_gap > 1e-3 * scale {
        C64::from(g * g * k1) * (d - omega_c) / (c - omega_c)
    } else {
        w_direct
    };
    let u0 = g * w;
    let x0 = C64::from(g * g * g * k1);
    let v0 = -(c - omega_c) * w;
    let numerator_scale = u0.norm().max(x0.norm()).max(v0.norm());
    let a = ((C64::from(g * g * k1) + (c - omega_c) * (c - omega_c)) * w * w
        + C64::from(g.powi(6) * k1 * k1 * k2))
    .sqrt();
    if a.norm() <= 1e-12 * numerator_scale.max(1e-300) || numerator_scale == 0.0 {
        return Err(SpectrumError::DegenerateBranches { separation: a.norm() });
    }
    let initial = match convention {
        CoefficientConvention::ClosedFormNormalizer => (u0 / a, x0 / a, v0 / a),
        CoefficientConvention::ModulusNormalized => {
            let n = (u0.norm_sqr() * k1 + x0.norm_sqr() * k2 + v0.norm_sqr()).sqrt();
            (u0 / n, x0 / n, v0 / n)
        }
    };
    Ok(polish_triple((c, d, b), g, k1, k2, omega_c, initial, convention))
}

/// Residual-triggered inverse-iteration polish of a coefficient triple.
///
/// The closed form above is exact algebra, but when a root lands close to
/// both exciton branches at once, every equivalent expression for w loses
/// most of its digits to cancellation and the triple can miss the true
/// eigendirection by far more than rounding. The closed-form result is
/// kept untouched whenever it already solves the eigenproblem to near
/// machine precision; otherwise up to two inverse-iteration steps refine
/// the direction, sign-aligned to the incoming vector so the branch phase
/// is preserved.
fn polish_triple(
    diag: (C64, C64, C64),
    g: f64,
    k1: f64,
    k2: f64,
    omega_c: C64,
    initial: (C64, C64, C64),
    convention: CoefficientConvention,
) -> (C64, C64, C64) {
    let mut best = initial;
    let mut best_res = triple_residual(diag, g, k1, k2, omega_c, best);
    if best_res <= 1e-13 {
        return best;
    }
    let mut current = best;
    for _ in 0..2 {
        let rhs = [current.0, current.1, current.2];
        let Some(z) = inverse_iteration_step(diag, g, k1, k2, omega_c, rhs) else {
            break;
        };
        let Some(mut candidate) = normalize_triple(z, k1, k2, convention) else {
            break;
        };
        let keep = (candidate.0 - current.0).norm()
            + (candidate.1 - current.1).norm()
            + (candidate.2 - current.2).norm();
        let flip = (candidate.0 + current.0).norm()
            + (candidate.1 + current.1).norm()
            + (candidate.2 + current.2).norm();
        if flip < keep {
            candidate = (-candidate.0, -candidate.1, -candidate.2);
        }
        let res = triple_residual(diag, g, k1, k2, omega_c, candidate);
        if res < best_res {
            best = candidate;
            best_res = res;
            current = candidate;
        } else {
            break;
        }
    }
    best
}

/// Transformation coefficients (u, x, v) — exciton₁, exciton₂, and photon
/// amplitudes — of one branch, `branch` indexing the (Re, Im)-ordered
/// roots. Uses the closed-form normalizer.
pub fn three_mode_coefficients(
    p: &TwoModeParams,
    branch: usize,
) -> Result<(C64, C64, C64), SpectrumError> {
    three_mode_coefficients_with(p, branch, CoefficientConvention::ClosedFormNormalizer)
}

/// [`three_mode_coefficients`] with an explicit normalization convention.
pub fn three_mode_coefficients_with(
    p: &TwoModeParams,
    branch: usize,
    convention: CoefficientConvention,
) -> Result<(C64, C64, C64), SpectrumError> {
    if branch >= 3 {
        return Err(SpectrumError::InvalidParams {
            what: format!("branch index {branch} out of range 0..3"),
        });
    }
    let roots = two_exciton_roots(p)?;
    coefficients_at(p, roots.roots[branch], convention)
}

/// Emission spectrum of the two-exciton-mode system with default options.
pub fn two_exciton_spectrum(
    p: &TwoModeParams,
    grid: &[f64],
) -> Result<SpectrumSeries, SpectrumError> {
    two_exciton_spectrum_with(p, grid, &TwoModeOptions::default())
}

/// Emission spectrum of the two-exciton-mode system,
///
/// ```text
/// S(ω) = (A·|α|²/π) Σ_{i=0..2} |v_i|² Γ_i / ((ω − Re Ω_i)² + Γ_i²),
/// ```
///
/// with branches in (Re, Im)-ascending order. At zero coupling the photon
/// line decouples exactly: it carries the full weight and the two exciton
/// lines carry none.
pub fn two_exciton_spectrum_with(
    p: &TwoModeParams,
    grid: &[f64],
    opts: &TwoModeOptions,
) -> Result<SpectrumSeries, SpectrumError> {
    p.validate()?;
    validate_grid(grid)?;
    let roots = two_exciton_roots(p)?;
    let pref = p.scale * p.alpha_sq / std::f64::consts::PI;
    let photon_weights: [f64; 3] = if p.g == 0.0 {
        // The closed-form triple degenerates at g = 0; the exact limit is a
        // pure photon line. Identify the photon root as the closest to the
        // bare cavity energy.
        let bare = C64::new(p.omega, -p.gamma_ph);
        let mut photon_idx = 0;
        for (i, r) in roots.roots.iter().enumerate() {
            if (r - bare).norm() < (roots.roots[photon_idx] - bare).norm() {
                photon_idx = i;
            }
        }
        let mut w = [0.0; 3];
        w[photon_idx] = 1.0;
        w
    } else {
        let mut w = [0.0; 3];
        for (i, slot) in w.iter_mut().enumerate() {
            let (_, _, v) = coefficients_at(p, roots.roots[i], opts.coefficients)?;
            *slot = v.norm_sqr();
        }
        w
    };
    let constant_width = 0.5 * (p.gamma_ex1 + p.gamma_ex2 + p.gamma_ph);
    let branches = (0..3)
        .map(|i| {
            let width = match opts.gamma_mode {
                GammaMode::BranchImaginary => -roots.roots[i].im,
                GammaMode::HalfDampingSum => constant_width,
            };
            BranchLine {
                center: roots.roots[i].re,
                width,
                weight: pref * photon_weights[i],
            }
        })
        .collect();
    SpectrumSeries::from_branches(grid, branches)
}
