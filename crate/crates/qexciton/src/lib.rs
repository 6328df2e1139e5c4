//! Spectra of deformed-boson excitons coupled to a single cavity mode.
//!
//! The library models a semiconductor exciton as a q-deformed boson — a mode
//! whose commutator carries a structure function k(n) instead of 1 — placed
//! inside a single-mode cavity in the rotating-wave approximation. It
//! computes:
//!
//! - complex polariton branch energies and transformation coefficients for
//!   one exciton mode ([`polariton`]) and two exciton modes ([`multimode`]),
//! - cavity emission spectra as sums of branch Lorentzians,
//! - an s-deformed polariton variant where the normal modes themselves obey
//!   a deformed algebra ([`qpolariton`]),
//! - linear and third-order probe absorption of the driven deformed exciton
//!   ([`response`]),
//! - and independent verification machinery ([`oracle`]): a dense complex
//!   eigensolver and truncated Fock-sector diagonalization used to validate
//!   every closed form against a matrix route.
//!
//! All energies are in eV with ħ = 1.

pub mod multimode;
pub mod oracle;
pub mod polariton;
pub mod qalgebra;
pub mod qpolariton;
pub mod response;
pub mod spectrum;

/// Complex double-precision scalar used throughout.
pub type C64 = num_complex::Complex64;
