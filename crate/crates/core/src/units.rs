//! Laboratory-to-model unit mapping and physical constants.
//!
//! The dimensionless model is controlled by λ = uN/(ħω_R), where the
//! Kerr-like interaction energy u = 4πħ²|a_sc|/(a_⊥³M) follows from the atom
//! mass, the (negative) s-wave scattering length, and the transverse trap
//! confinement a_⊥ = √(ħ/(Mω_⊥)).  Temperatures are reported against
//! T₀ = ħω_R/(2πk_B), the critical-temperature scale of the λ = 2 junction.
//!
//! Everything here is SI in and SI out; the only numbers baked in are the
//! CODATA constants below.

use crate::error::{Error, Result};

/// Reduced Planck constant, J·s (CODATA 2018 exact-definition era).
pub const HBAR: f64 = 1.054571817e-34;

/// Boltzmann constant, J/K (exact by SI definition).
pub const BOLTZMANN: f64 = 1.380649e-23;

/// Laboratory inputs describing a two-mode condensate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    /// Atom mass M in kg.
    pub atom_mass: f64,
    /// s-wave scattering length in m; must be negative (attractive gas).
    pub scattering_length: f64,
    /// Transverse trap angular frequency ω_⊥ in rad/s.
    pub omega_perp: f64,
    /// Rabi (Josephson coupling) angular frequency ω_R in rad/s.
    pub omega_r: f64,
    /// Particle count N.
    pub n_atoms: usize,
}

impl PhysicalParams {
    /// Validates signs and finiteness of all laboratory inputs.
    pub fn new(
        atom_mass: f64,
        scattering_length: f64,
        omega_perp: f64,
        omega_r: f64,
        n_atoms: usize,
    ) -> Result<PhysicalParams> {
        if !atom_mass.is_finite() || atom_mass <= 0.0 {
            return Err(Error::Mass(atom_mass));
        }
        if !scattering_length.is_finite() || scattering_length >= 0.0 {
            return Err(Error::ScatteringSign(scattering_length));
        }
        if !omega_perp.is_finite() || omega_perp <= 0.0 {
            return Err(Error::Frequency(omega_perp));
        }
        if !omega_r.is_finite() || omega_r <= 0.0 {
            return Err(Error::Frequency(omega_r));
        }
        if n_atoms < 2 {
            return Err(Error::ParticleCount(n_atoms));
        }
        Ok(PhysicalParams {
            atom_mass,
            scattering_length,
            omega_perp,
            omega_r,
            n_atoms,
        })
    }
}

/// Everything the unit mapping derives from one set of laboratory inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitsReport {
    /// Transverse oscillator length a_⊥ in m.
    pub transverse_length: f64,
    /// Interaction strength u in J.
    pub interaction_strength: f64,
    /// Interaction energy per k_B, uN/k_B, in K.
    pub interaction_temperature: f64,
    /// Dimensionless coupling λ = uN/(ħω_R).
    pub lambda: f64,
    /// Reference temperature T₀ = ħω_R/(2πk_B) in K.
    pub reference_temperature: f64,
}

/// Transverse oscillator length a_⊥ = √(ħ/(Mω_⊥)) in m.
pub fn transverse_length(atom_mass: f64, omega_perp: f64) -> Result<f64> {
    if !atom_mass.is_finite() || atom_mass <= 0.0 {
        return Err(Error::Mass(atom_mass));
    }
    if !omega_perp.is_finite() || omega_perp <= 0.0 {
        return Err(Error::Frequency(omega_perp));
    }
    Ok((HBAR / (atom_mass * omega_perp)).sqrt())
}

/// Kerr-like interaction strength u = 4πħ²|a_sc|/(a_⊥³M) in J.
pub fn interaction_strength(scattering_length: f64, transverse_length: f64, atom_mass: f64) -> Result<f64> {
    if !scattering_length.is_finite() {
        return Err(Error::ScatteringSign(scattering_length));
    }
    if !transverse_length.is_finite() || transverse_length <= 0.0 {
        return Err(Error::Length(transverse_length));
    }
    if !atom_mass.is_finite() || atom_mass <= 0.0 {
        return Err(Error::Mass(atom_mass));
    }
    let a3 = transverse_length.powi(3);
    Ok(4.0 * std::f64::consts::PI * HBAR * HBAR * scattering_length.abs() / (a3 * atom_mass))
}

/// Dimensionless coupling λ = uN/(ħω_R).
pub fn lambda_physical(interaction: f64, n_atoms: usize, omega_r: f64) -> Result<f64> {
    if !interaction.is_finite() || interaction < 0.0 {
        return Err(Error::Interaction(interaction));
    }
    if !omega_r.is_finite() || omega_r <= 0.0 {
        return Err(Error::Frequency(omega_r));
    }
    Ok(interaction * n_atoms as f64 / (HBAR * omega_r))
}

/// Reference temperature T₀ = ħω_R/(2πk_B) in K.
pub fn reference_temperature(omega_r: f64) -> Result<f64> {
    if !omega_r.is_finite() || omega_r <= 0.0 {
        return Err(Error::Frequency(omega_r));
    }
    Ok(HBAR * omega_r / (2.0 * std::f64::consts::PI * BOLTZMANN))
}

/// Full unit mapping for one laboratory configuration.
pub fn derive_units(p: &PhysicalParams) -> Result<UnitsReport> {
    let a_perp = transverse_length(p.atom_mass, p.omega_perp)?;
    let u = interaction_strength(p.scattering_length, a_perp, p.atom_mass)?;
    let lambda = lambda_physical(u, p.n_atoms, p.omega_r)?;
    Ok(UnitsReport {
        transverse_length: a_perp,
        interaction_strength: u,
        interaction_temperature: u * p.n_atoms as f64 / BOLTZMANN,
        lambda,
        reference_temperature: reference_temperature(p.omega_r)?,
    })
}
