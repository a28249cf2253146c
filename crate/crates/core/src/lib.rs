//! Two-mode bosonic Josephson junction (BJJ) toolkit.
//!
//! A condensate of N attractively interacting bosons in a double well is
//! described in the Fock basis |n, N−n⟩ by a real symmetric tridiagonal
//! Hamiltonian.  Its ground state deforms, as the interaction-to-coupling
//! ratio λ = uN/ħω_R crosses 1, from a single Gaussian packet in the
//! population imbalance into a two-lobed Schrödinger-cat superposition, and
//! approaches the N00N state (|N,0⟩ + |0,N⟩)/√2 as λ grows.
//!
//! The crate is organized along that story:
//!
//! * [`model`] — dimensionless problem definition and state observables,
//! * [`solver`] — tridiagonal eigensolver (Sturm bisection + inverse
//!   iteration) with parity handling for the quasi-degenerate cat doublet,
//! * [`continuum`] — large-N effective-potential mapping: minima, barrier,
//!   packet widths, Gaussian/double-Gaussian envelopes,
//! * [`wigner`] — phase-space quasiprobabilities: closed forms and an
//!   independent quadrature transform,
//! * [`thermal`] — thermal-activation vs quantum-tunneling escape analysis
//!   with Ohmic damping,
//! * [`units`] — SI ↔ dimensionless conversions for laboratory parameters.
//!
//! All internal energies are expressed in units of ħω_R; kelvin and joule
//! enter only through [`units`] and [`thermal`].

pub mod continuum;
pub mod error;
pub mod model;
pub mod solver;
pub mod thermal;
pub mod units;
pub mod wigner;

pub use error::{Error, Result};
