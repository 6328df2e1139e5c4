//! Probe absorption of a cavity-dressed deformed exciton.
//!
//! A weak probe drives the exciton transition while the cavity mode, with
//! mean coupling g and energy ω, dresses every exciton level. Expanding the
//! dressed dipole correlation function in the probe field produces, at each
//! perturbative order, a finite table of excitation pathways. Each pathway
//! is a product of time integrals that evaluate to resonance factors
//! i/(Δ + iη), with Δ the detuning of a (possibly k-shifted) exciton energy
//! from the probe, an occupation-dependent amplitude built from the
//! deformed algebra, and a common dressing weight
//!
//! ```text
//! C(n) = (g²ⁿ/n!) · Π_{m=1}^{n} 1/(ω_ex·k(m+1)) · √([n]_q!) · e^{−g²·L(n)/2},
//! ```
//!
//! where the lattice sum
//!
//! ```text
//! L(n) = [n]_q · [ 1/((ω − ω_ex·k(n−1) + iη)(ω − ω_ex·k(n+1) + iη))
//!                + 1/((ω − ω_ex·k(n+2) + iη)(ω − ω_ex·k(n)  + iη)) ]
//! ```
//!
//! is evaluated at the fixed cavity energy ω, not at the probe energy. The
//! table is odd in the probe field: only odd orders carry terms, so the
//! quadratic response vanishes identically. Linear absorption is a positive
//! Lorentzian of full width 2η at the exciton line with weak negative
//! (gain) replicas at k-shifted energies; the third-order response adds
//! pathways resonant at ω_ex·k(n±1), which separate from the main line
//! only when q ≠ 1.

use thiserror::Error;

use crate::qalgebra::{f_q, k_factor, k_factor_extended, q_bracket, DomainError};
use crate::C64;

/// Largest dressing order the automatic truncation will try before
/// declaring the series non-convergent.
pub const MAX_AUTO_TERMS: u32 = 64;

/// Relative size at which the automatic truncation stops adding terms.
const AUTO_STOP_REL: f64 = 1e-16;

/// Relative truncation error above which a capped series is an error
/// rather than a result.
const TRUNCATION_FAIL_REL: f64 = 1e-10;

/// Errors of the absorption calculations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ResponseError {
    /// A deformation parameter was out of domain.
    #[error(transparent)]
    Domain(#[from] DomainError),
    /// A physical parameter failed validation.
    #[error("invalid parameters: {what}")]
    InvalidParams {
        /// Which constraint failed.
        what: String,
    },
    /// The probe grid is unusable.
    #[error("invalid grid: {what}")]
    InvalidGrid {
        /// Which constraint failed.
        what: String,
    },
    /// The cavity coupling must stay below the exciton energy for the
    /// dressing expansion to converge.
    #[error("coupling g = {g} is not below the exciton energy {omega_ex}")]
    StrongCoupling {
        /// Offending coupling.
        g: f64,
        /// Exciton energy it must stay below.
        omega_ex: f64,
    },
    /// The dressing series did not fall below the stopping threshold within
    /// [`MAX_AUTO_TERMS`] orders, or produced non-finite terms.
    #[error("dressing series not convergent: relative remainder {remainder:e}")]
    NonConvergent {
        /// Relative size of the first dropped term.
        remainder: f64,
    },
}

impl ResponseError {
    /// True for failures of the numerics rather than of the input
    /// description.
    pub fn is_numerical(&self) -> bool {
        matches!(self, ResponseError::NonConvergent { .. })
    }
}

/// How many dressing orders to sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Truncation {
    /// Add orders until they stop contributing, up to [`MAX_AUTO_TERMS`].
    #[default]
    Auto,
    /// Sum orders n = 0..=n_max; n_max must be ≥ 1.
    Fixed(u32),
}

/// Parameters of the probe-absorption calculation. Energies in eV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResponseParams {
    /// Cavity mode energy ω entering the dressing weights.
    pub omega: f64,
    /// Bare exciton energy ω_ex.
    pub omega_ex: f64,
    /// Exciton–cavity coupling g; must satisfy g < ω_ex.
    pub g: f64,
    /// Exciton deformation parameter.
    pub q: f64,
    /// Transition dipole strength; enters squared per interaction pair.
    pub dipole: f64,
    /// Phenomenological line half-width η (the linear peak has FWHM 2η).
    pub eta: f64,
    /// Dressing-series truncation.
    pub n_max: Truncation,
}

impl ResponseParams {
    /// Checks positivity/finiteness constraints and the weak-coupling
    /// requirement g < ω_ex.
    pub fn validate(&self) -> Result<(), ResponseError> {
        let checks: [(&str, f64, bool); 5] = [
            ("omega", self.omega, self.omega.is_finite() && self.omega > 0.0),
            ("omega_ex", self.omega_ex, self.omega_ex.is_finite() && self.omega_ex > 0.0),
            ("g", self.g, self.g.is_finite() && self.g >= 0.0),
            ("dipole", self.dipole, self.dipole.is_finite() && self.dipole >= 0.0),
            ("eta", self.eta, self.eta.is_finite() && self.eta > 0.0),
        ];
        for (name, value, ok) in checks {
            if !ok {
                return Err(ResponseError::InvalidParams {
                    what: format!("{name} = {value} is out of range"),
                });
            }
        }
        if self.g >= self.omega_ex {
            return Err(ResponseError::StrongCoupling { g: self.g, omega_ex: self.omega_ex });
        }
        if let Truncation::Fixed(0) = self.n_max {
            return Err(ResponseError::InvalidParams {
                what: "fixed truncation must keep at least orders 0 and 1".into(),
            });
        }
        Ok(())
    }
}

/// Susceptibility sampled on a probe grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SusceptibilitySeries {
    /// Strictly increasing probe energies in eV.
    pub grid: Vec<f64>,
    /// Complex linear susceptibility χ⁽¹⁾ at each probe energy.
    pub chi1: Vec<C64>,
    /// Linear absorption Im χ⁽¹⁾.
    pub alpha1: Vec<f64>,
    /// Third-order absorption Im χ⁽³⁾; zeros when only the linear part was
    /// requested.
    pub alpha3: Vec<f64>,
    /// Number of dressing orders n that were summed.
    pub terms_used: u32,
    /// Relative bound on the first dropped order.
    pub truncation_error: f64,
}

/// The lattice sum L(n) described in the module docs, evaluated at the
/// fixed cavity energy `omega`.
pub fn l_function(
    q: f64,
    n: u32,
    omega: f64,
    omega_ex: f64,
    eta: f64,
) -> Result<C64, ResponseError> {
    if !(omega.is_finite() && omega_ex.is_finite() && omega_ex > 0.0) {
        return Err(ResponseError::InvalidParams {
            what: format!("omega = {omega}, omega_ex = {omega_ex} out of range"),
        });
    }
    if !(eta.is_finite() && eta > 0.0) {
        return Err(ResponseError::InvalidParams { what: format!("eta = {eta} out of range") });
    }
    let bracket = q_bracket(q, n)?;
    if bracket == 0.0 {
        return Ok(C64::from(0.0));
    }
    let den = |shift: i64| -> Result<C64, ResponseError> {
        let k = k_factor_extended(q, i64::from(n) + shift)?;
        Ok(C64::new(omega - omega_ex * k, eta))
    };
    let first = den(-1)? * den(1)?;
    let second = den(2)? * den(0)?;
    Ok(bracket * (first.inv() + second.inv()))
}

/// One excitation pathway of the dressed dipole correlation at a given
/// order: `prefactor · amplitude · Π_j i/(bases[j] − ω_probe + iη)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseTerm {
    /// ±i (linear) or ±i/2 (third order) pathway prefactor.
    pub prefactor: C64,
    /// Occupation-dependent amplitude, including the common dressing
    /// weight C(n).
    pub amplitude: C64,
    /// One resonance energy per time integral; the probe subtracts from
    /// each.
    pub bases: Vec<f64>,
}

/// Cached deformed-algebra products up to the orders a term table needs.
struct Tables {
    /// k(q, m) for m = 0..=n+2.
    k: Vec<f64>,
    /// f_q(m) = √[m]_q.
    fq: Vec<f64>,
    /// √([m]_q!) cumulative products.
    qf: Vec<f64>,
    /// h₀!(m) = Π_{j=1..m} 1/(ω_ex·k(j)).
    h0f: Vec<f64>,
    /// h₁!(m) = Π_{j=1..m} 1/(ω_ex·k(j+1)).
    h1f: Vec<f64>,
    /// k(q, n−1) with the algebraic extension k(−1) = 1.
    k_prev: f64,
}

fn tables(p: &ResponseParams, n: u32) -> Result<Tables, ResponseError> {
    let top = (n + 2) as usize;
    let mut k = Vec::with_capacity(top + 2);
    let mut fq = Vec::with_capacity(top + 1);
    let mut qf = Vec::with_capacity(top + 1);
    let mut h0f = Vec::with_capacity(top + 1);
    let mut h1f = Vec::with_capacity(top + 1);
    qf.push(1.0);
    h0f.push(1.0);
    h1f.push(1.0);
    fq.push(0.0);
    for m in 0..=(top as u32 + 1) {
        k.push(k_factor(p.q, m)?);
    }
    for m in 1..=top {
        fq.push(f_q(p.q, m as u32)?);
        qf.push(qf[m - 1] * fq[m]);
        h0f.push(h0f[m - 1] / (p.omega_ex * k[m]));
        h1f.push(h1f[m - 1] / (p.omega_ex * k[m + 1]));
    }
    let k_prev = k_factor_extended(p.q, i64::from(n) - 1)?;
    Ok(Tables { k, fq, qf, h0f, h1f, k_prev })
}

/// Common dressing weight C(n) of every pathway at occupation n.
fn common_weight(p: &ResponseParams, n: u32, t: &Tables) -> Result<C64, ResponseError> {
    let mut g_pow_over_fact = 1.0;
    for m in 1..=n {
        g_pow_over_fact *= p.g * p.g / m as f64;
    }
    let l_n = l_function(p.q, n, p.omega, p.omega_ex, p.eta)?;
    let exp_term = (-(p.g * p.g) * l_n / 2.0).exp();
    Ok(g_pow_over_fact * t.h1f[n as usize] * t.qf[n as usize].sqrt() * exp_term)
}

/// The excitation-pathway table at perturbative `order` and occupation `n`.
/// Orders 1 and 3 are populated; every even order has an empty table — the
/// dressed dipole expansion is odd in the probe field.
pub fn response_terms(
    p: &ResponseParams,
    order: u32,
    n: u32,
) -> Result<Vec<ResponseTerm>, ResponseError> {
    p.validate()?;
    if order % 2 == 0 {
        return Ok(Vec::new());
    }
    if order != 1 && order != 3 {
        return Err(ResponseError::InvalidParams {
            what: format!("order {order} not implemented; only 1 and 3 carry tables"),
        });
    }
    let t = tables(p, n)?;
    let common = common_weight(p, n, &t)?;
    let exp_l1 = (-(p.g * p.g) * l_function(p.q, 1, p.omega, p.omega_ex, p.eta)? / 2.0).exp();
    let i = C64::new(0.0, 1.0);
    let nu = n as usize;
    let wex = p.omega_ex;
    let mut out = Vec::new();
    if order == 1 {
        // Emission out of the (n+1)-dressed manifold, resonant at the bare
        // exciton line.
        out.push(ResponseTerm {
            prefactor: i,
            amplitude: common * exp_l1 * t.h0f[nu + 1] * (t.qf[nu + 1] * t.fq[nu + 1]).sqrt(),
            bases: vec![wex],
        });
        // Absorption back into the n-manifold, resonant at the k-shifted
        // line ω_ex·k(n−1); its √f_q(n) factor removes the n = 0 pathway.
        out.push(ResponseTerm {
            prefactor: -i,
            amplitude: common * t.fq[nu].sqrt() * t.h0f[nu] * (t.qf[nu] * t.fq[nu]).sqrt(),
            bases: vec![wex * t.k_prev],
        });
    } else {
        let half = 0.5 * i;
        out.push(ResponseTerm {
            prefactor: half,
            amplitude: common
                * t.fq[nu + 1].sqrt()
                * t.h0f[nu + 2]
                * (t.qf[nu + 2] * t.fq[nu + 2]).sqrt(),
            bases: vec![-wex * t.k[nu + 1], wex, wex],
        });
        out.push(ResponseTerm {
            prefactor: half,
            amplitude: common * t.fq[nu].sqrt() * t.h0f[nu] * (t.qf[nu] * t.fq[nu]).sqrt(),
            bases: vec![wex * t.k_prev, -wex, wex],
        });
        out.push(ResponseTerm {
            prefactor: -half,
            amplitude: common
                * t.fq[nu + 1].sqrt()
                * t.h0f[nu + 1]
                * exp_l1
                * (t.qf[nu + 1] * t.fq[nu + 1]).sqrt(),
            bases: vec![wex, -wex * t.k[nu + 1], wex * t.k[nu + 1]],
        });
        out.push(ResponseTerm {
            prefactor: -half,
            amplitude: common
                * t.fq[nu].sqrt()
                * t.h0f[nu + 1]
                * exp_l1
                * (t.qf[nu + 1] * t.fq[nu + 1]).sqrt(),
            bases: vec![wex, wex * t.k[nu + 1], -wex * t.k[nu + 1]],
        });
    }
    Ok(out)
}

fn validate_probe_grid(grid: &[f64]) -> Result<(), ResponseError> {
    if grid.is_empty() {
        return Err(ResponseError::InvalidGrid { what: "grid is empty".into() });
    }
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(ResponseError::InvalidGrid { what: "grid contains non-finite values".into() });
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ResponseError::InvalidGrid { what: "grid is not strictly increasing".into() });
    }
    Ok(())
}

/// Evaluates one term over the probe grid, adding into `acc`.
fn accumulate_term(term: &ResponseTerm, scale: f64, eta: f64, grid: &[f64], acc: &mut [C64]) {
    let i = C64::new(0.0, 1.0);
    for (slot, &w) in acc.iter_mut().zip(grid.iter()) {
        let mut value = term.prefactor * term.amplitude * scale;
        for &base in &term.bases {
            value *= i / C64::new(base - w, eta);
        }
        *slot += value;
    }
}

/// Conservative magnitude bound of one occupation's contribution: every
/// resonance factor is at most 1/η in modulus.
fn order_bound(terms: &[ResponseTerm], scale: f64, eta: f64) -> f64 {
    terms
        .iter()
        .map(|t| t.amplitude.norm() * scale * eta.powi(-(t.bases.len() as i32)))
        .sum()
}

fn series(
    p: &ResponseParams,
    grid: &[f64],
    include_third: bool,
) -> Result<SusceptibilitySeries, ResponseError> {
    p.validate()?;
    validate_probe_grid(grid)?;
    let mu2 = p.dipole * p.dipole;
    let scale1 = mu2;
    let scale3 = mu2 * mu2;
    let mut chi1 = vec![C64::from(0.0); grid.len()];
    let mut chi3 = vec![C64::from(0.0); grid.len()];
    let mut acc_bound1 = 0.0_f64;
    let mut acc_bound3 = 0.0_f64;
    let mut terms_used = 0u32;
    let truncation_error: f64;
    let cap = match p.n_max {
        Truncation::Auto => MAX_AUTO_TERMS,
        Truncation::Fixed(nm) => nm,
    };
    let mut n = 0u32;
    loop {
        let t1 = response_terms(p, 1, n)?;
        let b1 = order_bound(&t1, scale1, p.eta);
        let (t3, b3) = if include_third {
            let t3 = response_terms(p, 3, n)?;
            let b3 = order_bound(&t3, scale3, p.eta);
            (t3, b3)
        } else {
            (Vec::new(), 0.0)
        };
        if !(b1.is_finite() && b3.is_finite()) {
            return Err(ResponseError::NonConvergent { remainder: f64::INFINITY });
        }
        let rel = |b: f64, acc: f64| b / acc.max(f64::MIN_POSITIVE);
        let contribution_rel = rel(b1, acc_bound1).max(if include_third {
            rel(b3, acc_bound3)
        } else {
            0.0
        });
        if matches!(p.n_max, Truncation::Auto) && n >= 2 && contribution_rel <= AUTO_STOP_REL {
            truncation_error = contribution_rel;
            break;
        }
        if n > cap {
            truncation_error = contribution_rel;
            if matches!(p.n_max, Truncation::Auto) && contribution_rel > TRUNCATION_FAIL_REL {
                return Err(ResponseError::NonConvergent { remainder: contribution_rel });
            }
            break;
        }
        for term in &t1 {
            accumulate_term(term, scale1, p.eta, grid, &mut chi1);
        }
        for term in &t3 {
            accumulate_term(term, scale3, p.eta, grid, &mut chi3);
        }
        acc_bound1 += b1;
        acc_bound3 += b3;
        terms_used = n + 1;
        n += 1;
    }
    let alpha1 = chi1.iter().map(|c| c.im).collect();
    let alpha3 = if include_third {
        chi3.iter().map(|c| c.im).collect()
    } else {
        vec![0.0; grid.len()]
    };
    Ok(SusceptibilitySeries {
        grid: grid.to_vec(),
        chi1,
        alpha1,
        alpha3,
        terms_used,
        truncation_error,
    })
}

/// Linear susceptibility χ⁽¹⁾ and absorption α₁ = Im χ⁽¹⁾ over a probe
/// grid. `alpha3` is left at zero.
pub fn linear_susceptibility(
    p: &ResponseParams,
    grid: &[f64],
) -> Result<SusceptibilitySeries, ResponseError> {
    series(p, grid, false)
}

/// Third-order absorption α₃ = Im χ⁽³⁾ over a probe grid; the linear part
/// is computed alongside and returned in the same series.
pub fn third_order_absorption(
    p: &ResponseParams,
    grid: &[f64],
) -> Result<SusceptibilitySeries, ResponseError> {
    series(p, grid, true)
}

/// The quadratic response, assembled from the (empty) order-2 pathway
/// table: identically zero at every probe energy.
pub fn quadratic_response(
    p: &ResponseParams,
    grid: &[f64],
) -> Result<Vec<C64>, ResponseError> {
    p.validate()?;
    validate_probe_grid(grid)?;
    let mut acc = vec![C64::from(0.0); grid.len()];
    let cap = match p.n_max {
        Truncation::Auto => 4,
        Truncation::Fixed(nm) => nm,
    };
    for n in 0..=cap {
        for term in response_terms(p, 2, n)? {
            accumulate_term(&term, p.dipole * p.dipole * p.dipole, p.eta, grid, &mut acc);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::linspace;

    fn example_params() -> ResponseParams {
        ResponseParams {
            omega: 1.5,
            omega_ex: 1.574,
            g: 200e-6,
            q: 1.01,
            dipole: 1.0,
            eta: 50e-6,
            n_max: Truncation::Auto,
        }
    }

    fn probe_grid() -> Vec<f64> {
        linspace(1.5720, 1.5770, 5001)
    }

    #[test]
    fn l_function_vanishes_at_zero_occupation() {
        assert_eq!(l_function(1.01, 0, 1.5, 1.574, 50e-6).unwrap(), C64::from(0.0));
    }

    #[test]
    fn l_function_matches_direct_denominator_product() {
        let (q, n, w, wex, eta) = (1.01, 2u32, 1.5, 1.574, 50e-6);
        let k = |m: i64| crate::qalgebra::k_factor_extended(q, m).unwrap();
        let d = |m: i64| C64::new(w - wex * k(m), eta);
        let expected = crate::qalgebra::q_bracket(q, n).unwrap()
            * ((d(1) * d(3)).inv() + (d(4) * d(2)).inv());
        let got = l_function(q, n, w, wex, eta).unwrap();
        assert!((got - expected).norm() < 1e-18, "{got} vs {expected}");
    }

    #[test]
    fn linear_absorption_peaks_at_the_exciton_line_with_fwhm_two_eta() {
        let p = example_params();
        let grid = probe_grid();
        let s = linear_susceptibility(&p, &grid).unwrap();
        let imax = s
            .alpha1
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap()
            .0;
        assert!((grid[imax] - 1.574).abs() <= 1.5e-6, "peak at {}", grid[imax]);
        let peak = s.alpha1[imax];
        assert!(peak > 0.0);
        // Full width at half maximum ≈ 2η.
        let half = peak / 2.0;
        let left = (0..imax).rev().find(|&i| s.alpha1[i] < half).unwrap();
        let right = (imax..grid.len()).find(|&i| s.alpha1[i] < half).unwrap();
        let fwhm = grid[right] - grid[left];
        assert!((fwhm - 100e-6).abs() < 5e-6, "FWHM {fwhm}");
    }

    #[test]
    fn undeformed_linear_susceptibility_has_a_single_pole() {
        let mut p = example_params();
        p.q = 1.0;
        let grid = probe_grid();
        let s = linear_susceptibility(&p, &grid).unwrap();
        // At q = 1 every pathway is resonant at ω_ex, so χ⁽¹⁾ must equal
        // K·i/(ω_ex − ω + iη) for a single complex constant K.
        let i = C64::new(0.0, 1.0);
        let k_est = s.chi1[0] * C64::new(p.omega_ex - grid[0], p.eta) / i;
        for (&w, &chi) in grid.iter().zip(s.chi1.iter()) {
            let model = k_est * i / C64::new(p.omega_ex - w, p.eta);
            assert!(
                (chi - model).norm() <= 1e-10 * chi.norm(),
                "extra structure at {w}: {chi} vs {model}"
            );
        }
    }

    #[test]
    fn deformation_barely_moves_the_linear_line_but_reshapes_the_cubic_one() {
        // The main linear line keeps its undeformed pole at ω_ex; the
        // deformation only rescales its residue through the 1/(ω_ex·k(1))
        // dressing factor, a relative change of k(1) − 1 ≈ 9.9e−5 at
        // q = 1.01. The cubic response instead acquires order-one structure
        // at the shifted resonances.
        let grid = probe_grid();
        let mut p = example_params();
        p.q = 1.0;
        let base = third_order_absorption(&p, &grid).unwrap();
        p.q = 1.01;
        let deformed = third_order_absorption(&p, &grid).unwrap();
        // Same grid bin hosts the α₁ maximum before and after.
        let argmax = |v: &[f64]| {
            v.iter()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(b.1))
                .map(|(i, _)| i)
                .unwrap()
        };
        assert_eq!(argmax(&base.alpha1), argmax(&deformed.alpha1));
        let peak1 = base.alpha1.iter().cloned().fold(f64::MIN, f64::max);
        let max_d1 = base
            .alpha1
            .iter()
            .zip(deformed.alpha1.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(max_d1 <= 2e-4 * peak1, "linear line moved: {max_d1:e}");
        assert!(max_d1 >= 1e-5 * peak1, "residue rescaling missing: {max_d1:e}");
        let peak3 = base.alpha3.iter().cloned().map(f64::abs).fold(f64::MIN, f64::max);
        let max_d3 = base
            .alpha3
            .iter()
            .zip(deformed.alpha3.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(max_d3 > 1e-2 * peak3, "cubic response ignored q: {max_d3:e}");
    }

    #[test]
    fn third_order_absorption_has_gain_regions() {
        let mut p = example_params();
        p.q = 1.01;
        let grid = probe_grid();
        let s = third_order_absorption(&p, &grid).unwrap();
        let max = s.alpha3.iter().cloned().fold(f64::MIN, f64::max);
        let min = s.alpha3.iter().cloned().fold(f64::MAX, f64::min);
        assert!(max > 0.0 && min < 0.0, "expected both signs, got [{min:e}, {max:e}]");
    }

    #[test]
    fn quadratic_response_is_identically_zero() {
        let p = example_params();
        let grid = probe_grid();
        assert!(response_terms(&p, 2, 0).unwrap().is_empty());
        assert!(response_terms(&p, 2, 3).unwrap().is_empty());
        let chi2 = quadratic_response(&p, &grid).unwrap();
        assert!(chi2.iter().all(|c| c.re == 0.0 && c.im == 0.0));
    }

    #[test]
    fn third_order_grows_structure_away_from_the_main_line_when_deformed() {
        let mut p = example_params();
        let grid = probe_grid();
        p.q = 1.0;
        let s1 = third_order_absorption(&p, &grid).unwrap();
        p.q = 1.01;
        let sq = third_order_absorption(&p, &grid).unwrap();
        // The k-shifted pathway resonance ω_ex·k(1) sits ~156 µeV above the
        // main line for q = 1.01 and collapses onto it at q = 1.
        let shifted = 1.574 * crate::qalgebra::k_factor(1.01, 1).unwrap();
        let idx = grid.iter().position(|&w| w >= shifted).unwrap();
        let near = |s: &SusceptibilitySeries| s.alpha3[idx].abs();
        let at_main = |s: &SusceptibilitySeries| {
            s.alpha3
                .iter()
                .cloned()
                .map(f64::abs)
                .fold(f64::MIN, f64::max)
        };
        // Relative weight at the shifted energy grows under deformation.
        assert!(near(&sq) / at_main(&sq) > 2.0 * near(&s1) / at_main(&s1));
    }

    #[test]
    fn truncation_is_stable_and_reported() {
        let p = example_params();
        let grid = linspace(1.5730, 1.5750, 201);
        let auto = third_order_absorption(&p, &grid).unwrap();
        assert!(auto.terms_used >= 3, "auto kept {} orders", auto.terms_used);
        assert!(auto.truncation_error <= 1e-12);
        let fixed6 = ResponseParams { n_max: Truncation::Fixed(6), ..p };
        let fixed11 = ResponseParams { n_max: Truncation::Fixed(11), ..p };
        let a = third_order_absorption(&fixed6, &grid).unwrap();
        let b = third_order_absorption(&fixed11, &grid).unwrap();
        let scale1 = a.alpha1.iter().cloned().map(f64::abs).fold(1e-300, f64::max);
        let scale3 = a.alpha3.iter().cloned().map(f64::abs).fold(1e-300, f64::max);
        for ((&x, &y), (&u, &v)) in a
            .alpha1
            .iter()
            .zip(b.alpha1.iter())
            .zip(a.alpha3.iter().zip(b.alpha3.iter()))
        {
            assert!((x - y).abs() <= 1e-10 * scale1);
            assert!((u - v).abs() <= 1e-10 * scale3);
        }
    }

    #[test]
    fn deformation_and_inverse_deformation_agree() {
        let mut p = example_params();
        let grid = linspace(1.5730, 1.5750, 101);
        p.q = 1.01;
        let a = linear_susceptibility(&p, &grid).unwrap();
        p.q = 1.0 / 1.01;
        let b = linear_susceptibility(&p, &grid).unwrap();
        for (x, y) in a.alpha1.iter().zip(b.alpha1.iter()) {
            assert!((x - y).abs() <= 1e-12 * x.abs().max(1e-300));
        }
    }

    #[test]
    fn strong_coupling_is_rejected() {
        let mut p = example_params();
        p.g = 2.0;
        assert!(matches!(
            linear_susceptibility(&p, &probe_grid()).unwrap_err(),
            ResponseError::StrongCoupling { .. }
        ));
    }

    #[test]
    fn zero_order_fixed_truncation_is_rejected() {
        let mut p = example_params();
        p.n_max = Truncation::Fixed(0);
        assert!(linear_susceptibility(&p, &probe_grid()).is_err());
    }

    #[test]
    fn zero_coupling_reduces_to_the_bare_exciton_line() {
        let mut p = example_params();
        p.g = 0.0;
        p.q = 1.07;
        let grid = probe_grid();
        let s = linear_susceptibility(&p, &grid).unwrap();
        let imax = s
            .alpha1
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap()
            .0;
        // Without cavity dressing only the bare line survives, whatever q.
        assert!((grid[imax] - 1.574).abs() <= 1.5e-6);
        assert!(s.alpha1.iter().all(|&a| a >= -1e-30));
    }
}
