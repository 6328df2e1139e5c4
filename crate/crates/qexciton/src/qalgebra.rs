//! Scalar functions of the deformed boson algebra.
//!
//! A q-deformed boson mode replaces the canonical commutator `[b, b†] = 1` by
//! `[b, b†] = k(n̂)` with the structure function
//!
//! ```text
//! k(n) = q/(q+1) · (qⁿ + q⁻⁽ⁿ⁺¹⁾) = (qⁿ⁺¹ + q⁻ⁿ) / (q + 1),
//! ```
//!
//! and its number operator has matrix elements given by the symmetric
//! q-number
//!
//! ```text
//! [n]_q = (qⁿ − q⁻ⁿ) / (q − q⁻¹).
//! ```
//!
//! Both functions are invariant under q ↦ 1/q and reduce to 1 and n in the
//! undeformed limit q → 1. The deformed-polariton algebra reuses the same
//! structure function with its own parameter s, exposed here as
//! [`m_factor`].
//!
//! All evaluations treat the operator argument n̂ as a c-number occupation,
//! which is how the closed-form spectra consume these functions.

use thiserror::Error;

/// Deformation parameters closer to 1 than this are evaluated in the
/// undeformed limit. Below this distance the generic formulas lose all
/// significant digits to cancellation, while the limit values are exact.
pub const Q_LIMIT_THRESHOLD: f64 = 1e-12;

/// Rejects invalid deformation parameters.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum DomainError {
    /// The deformation parameter must be a strictly positive finite real.
    #[error("deformation parameter {name} must be strictly positive and finite, got {value}")]
    NonPositive {
        /// Which parameter was rejected (`"q"` or `"s"`).
        name: &'static str,
        /// The offending value.
        value: f64,
    },
}

fn check_deformation(name: &'static str, value: f64) -> Result<(), DomainError> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(DomainError::NonPositive { name, value })
    }
}

/// Integer power by repeated squaring; falls back to `exp` for exponents
/// outside the `i32` range `powi` accepts.
fn ipow(base: f64, exp: i64) -> f64 {
    if exp.unsigned_abs() <= i32::MAX as u64 {
        base.powi(exp as i32)
    } else {
        (exp as f64 * base.ln()).exp()
    }
}

fn k_factor_impl(q: f64, n: i64) -> f64 {
    // n = 0 and n = -1 give exactly 1 for every q; returning the exact value
    // keeps the undeformed entries of downstream matrices bit-exact.
    if n == 0 || n == -1 || (q - 1.0).abs() < Q_LIMIT_THRESHOLD {
        return 1.0;
    }
    let k = (ipow(q, n + 1) + ipow(q, -n)) / (q + 1.0);
    // k(n) ≥ 1 holds algebraically for every q > 0; the guard only absorbs
    // sub-ulp rounding for q extremely close to 1.
    k.max(1.0)
}

/// Structure function k(n) = (qⁿ⁺¹ + q⁻ⁿ)/(q + 1) of the deformed
/// commutator, for integer occupation n ≥ 0.
///
/// Invariant under q ↦ 1/q, equal to 1 at q = 1 or n = 0, strictly
/// increasing in n for q ≠ 1, and always ≥ 1.
pub fn k_factor(q: f64, n: u32) -> Result<f64, DomainError> {
    check_deformation("q", q)?;
    Ok(k_factor_impl(q, i64::from(n)))
}

/// [`k_factor`] extended to negative integer arguments.
///
/// The closed form is well defined for any integer n; in particular
/// k(−1) = (q⁰ + q¹)/(q + 1) = 1 exactly, which the absorption kernels use
/// for the vacuum term of shifted resonances.
pub fn k_factor_extended(q: f64, n: i64) -> Result<f64, DomainError> {
    check_deformation("q", q)?;
    Ok(k_factor_impl(q, n))
}

/// Symmetric q-number [n]_q = (qⁿ − q⁻ⁿ)/(q − q⁻¹), evaluated as
/// sinh(n·ln q)/sinh(ln q) to avoid cancellation near q = 1, where it
/// reduces to n exactly.
///
/// Invariant under q ↦ 1/q, zero at n = 0, and strictly increasing in n.
pub fn q_bracket(q: f64, n: u32) -> Result<f64, DomainError> {
    check_deformation("q", q)?;
    if n == 0 {
        return Ok(0.0);
    }
    if (q - 1.0).abs() < Q_LIMIT_THRESHOLD {
        return Ok(f64::from(n));
    }
    let x = q.ln();
    Ok((f64::from(n) * x).sinh() / x.sinh())
}

/// Deformed amplitude f_q(n) = √[n]_q. The deformed ladder operators act
/// with these amplitudes instead of √n.
pub fn f_q(q: f64, n: u32) -> Result<f64, DomainError> {
    Ok(q_bracket(q, n)?.sqrt())
}

/// Deformed factorial ∏_{m=1}^{n} f_q(m) = √([n]_q!), with the empty
/// product equal to 1 at n = 0.
pub fn q_factorial(q: f64, n: u32) -> Result<f64, DomainError> {
    check_deformation("q", q)?;
    let mut acc = 1.0;
    for m in 1..=n {
        acc *= f_q(q, m)?;
    }
    Ok(acc)
}

/// Structure function M(s, n_k) of the deformed-polariton algebra: the same
/// map as [`k_factor`] with deformation parameter s and polariton
/// occupation n_k.
pub fn m_factor(s: f64, n_k: u32) -> Result<f64, DomainError> {
    check_deformation("s", s)?;
    Ok(k_factor_impl(s, i64::from(n_k)))
}

#[cfg(test)]
// Reference values keep every digit the independent computation produced,
// even where fewer digits would round to the same f64.
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    /// Relative tolerance for values cross-checked against 50-digit
    /// arbitrary-precision evaluation of the same closed forms.
    const FROZEN_REL: f64 = 1e-13;

    fn assert_rel(actual: f64, expected: f64, rel: f64) {
        let scale = expected.abs().max(1e-300);
        assert!(
            (actual - expected).abs() / scale <= rel,
            "actual {actual:e} vs expected {expected:e} (rel {:e})",
            (actual - expected).abs() / scale
        );
    }

    #[test]
    fn k_factor_undeformed_is_exactly_one() {
        for n in [0u32, 1, 5, 100] {
            assert_eq!(k_factor(1.0, n).unwrap(), 1.0);
        }
    }

    #[test]
    fn k_factor_at_zero_occupation_is_exactly_one() {
        for q in [0.5, 0.99, 1.015, 2.7] {
            assert_eq!(k_factor(q, 0).unwrap(), 1.0);
        }
    }

    #[test]
    fn k_factor_matches_high_precision_reference() {
        // Reference values from 50-digit evaluation of (q^(n+1)+q^(-n))/(q+1).
        assert_rel(k_factor(1.015, 100).unwrap(), 2.3444941832464966, FROZEN_REL);
        assert_rel(k_factor(1.01, 1).unwrap(), 1.0000990099009901, FROZEN_REL);
        assert_rel(k_factor(1.04, 1).unwrap(), 1.0015384615384615, FROZEN_REL);
        assert_rel(k_factor(1.08, 1).unwrap(), 1.0059259259259260, FROZEN_REL);
    }

    #[test]
    fn k_factor_small_occupations_by_hand() {
        // k(q, 1) = (q² + q⁻¹)/(q + 1), spot-checked directly.
        let q = 1.3_f64;
        let expected = (q * q + 1.0 / q) / (q + 1.0);
        assert_rel(k_factor(q, 1).unwrap(), expected, 1e-15);
    }

    #[test]
    fn k_factor_extended_vacuum_identities() {
        for q in [0.7, 1.01, 3.2] {
            assert_eq!(k_factor_extended(q, -1).unwrap(), 1.0);
            assert_eq!(k_factor_extended(q, 0).unwrap(), 1.0);
        }
        // Agreement with the non-extended map on shared domain.
        for n in 0..20 {
            assert_eq!(
                k_factor_extended(1.07, n).unwrap(),
                k_factor(1.07, n as u32).unwrap()
            );
        }
    }

    #[test]
    fn q_bracket_undeformed_is_exactly_n() {
        assert_eq!(q_bracket(1.0, 7).unwrap(), 7.0);
        assert_eq!(q_bracket(1.0, 0).unwrap(), 0.0);
        assert_eq!(q_bracket(1.0 + 1e-13, 3).unwrap(), 3.0);
    }

    #[test]
    fn q_bracket_matches_high_precision_reference() {
        // Reference values from 50-digit evaluation of (qⁿ−q⁻ⁿ)/(q−q⁻¹).
        assert_rel(q_bracket(1.01, 3).unwrap(), 3.0003960494069209, FROZEN_REL);
        assert_rel(q_bracket(1.05, 1).unwrap(), 1.0, FROZEN_REL);
    }

    #[test]
    fn q_bracket_of_one_is_exactly_one() {
        // [1]_q = 1 for every q; the absorption weights rely on this.
        for q in [0.9, 1.0, 1.04, 2.0] {
            assert_eq!(q_bracket(q, 1).unwrap(), 1.0);
        }
    }

    #[test]
    fn q_bracket_continuous_through_the_limit_threshold() {
        // Values just outside the undeformed window must agree with the
        // limit to far better than the window width implies.
        for q in [1.0 + 1e-8, 1.0 - 1e-8] {
            assert_rel(q_bracket(q, 1000).unwrap(), 1000.0, 1e-6);
        }
    }

    #[test]
    fn q_factorial_matches_high_precision_reference() {
        assert_rel(q_factorial(1.01, 3).unwrap(), 2.4497120581263474, FROZEN_REL);
        // q = 1 reduces to √(n!).
        assert_rel(q_factorial(1.0, 4).unwrap(), 24.0_f64.sqrt(), 1e-15);
        assert_eq!(q_factorial(1.37, 0).unwrap(), 1.0);
    }

    #[test]
    fn m_factor_is_the_same_map_as_k_factor() {
        for n in [0u32, 1, 2, 17] {
            assert_eq!(m_factor(1.007, n).unwrap(), k_factor(1.007, n).unwrap());
        }
    }

    #[test]
    fn invalid_deformation_parameters_are_rejected() {
        for bad in [0.0, -1.0, f64::NAN, f64::INFINITY, f64::NEG_INFINITY] {
            assert!(k_factor(bad, 1).is_err());
            assert!(k_factor_extended(bad, -1).is_err());
            assert!(q_bracket(bad, 1).is_err());
            assert!(f_q(bad, 1).is_err());
            assert!(q_factorial(bad, 1).is_err());
            assert!(m_factor(bad, 1).is_err());
        }
        assert_eq!(
            k_factor(-2.0, 1).unwrap_err(),
            DomainError::NonPositive { name: "q", value: -2.0 }
        );
        assert_eq!(
            m_factor(0.0, 1).unwrap_err(),
            DomainError::NonPositive { name: "s", value: 0.0 }
        );
    }
}
