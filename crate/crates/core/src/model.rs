//! Dimensionless two-mode BJJ problem in the Fock basis |n, N−n⟩.
//!
//! The index n counts particles in well "a"; the normalized population
//! imbalance is x = 2n/N − 1, so n = 0 maps to x = −1.  With s ≡ N/2 and the
//! vital parameter λ = uN/(ħω_R), the stationary amplitudes A_n obey a
//! three-term recursion equivalent to a real symmetric tridiagonal
//! Hamiltonian with
//!
//!   α_n = −(ħω_R/2)·s·λ·(2n/N − 1)²,
//!   β_n = −(ħω_R/2)·√((n+1)(N−n)).
//!
//! All energies produced here are in units of ħω_R.

use crate::error::{Error, Result};

/// Problem definition: particle count, vital parameter λ, Rabi frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Total particle count N ≥ 2.
    pub n_atoms: usize,
    /// Vital parameter λ = uN/(ħω_R) ≥ 0; λ = 1 marks the phase transition.
    pub lambda: f64,
    /// Rabi angular frequency ω_R in rad/s; only used at unit boundaries.
    pub omega_r: f64,
}

impl ModelParams {
    /// Dimensionless setup (ω_R = 1): energies read directly in units ħω_R.
    pub fn new(n_atoms: usize, lambda: f64) -> Result<Self> {
        Self::with_omega_r(n_atoms, lambda, 1.0)
    }

    /// Setup with an explicit Rabi frequency for later unit conversion.
    pub fn with_omega_r(n_atoms: usize, lambda: f64, omega_r: f64) -> Result<Self> {
        if n_atoms < 2 {
            return Err(Error::ParticleCount(n_atoms));
        }
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(Error::Lambda(lambda));
        }
        if !omega_r.is_finite() || omega_r <= 0.0 {
            return Err(Error::Frequency(omega_r));
        }
        Ok(Self {
            n_atoms,
            lambda,
            omega_r,
        })
    }

    /// Collective spin s = N/2 (derived, never stored).
    pub fn spin(&self) -> f64 {
        self.n_atoms as f64 / 2.0
    }
}

/// Real symmetric tridiagonal operator of dimension N+1, energies in ħω_R.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalOperator {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl TridiagonalOperator {
    /// Dimension N+1 of the Fock space.
    pub fn dimension(&self) -> usize {
        self.diag.len()
    }

    /// Diagonal entries α_0..α_N.
    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    /// Off-diagonal entries β_0..β_{N−1} (strictly negative).
    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// Matrix-vector product y = H·v.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.diag.len();
        assert_eq!(v.len(), n, "operand length must match operator dimension");
        let mut y = vec![0.0; n];
        for i in 0..n {
            let mut acc = self.diag[i] * v[i];
            if i > 0 {
                acc += self.offdiag[i - 1] * v[i - 1];
            }
            if i + 1 < n {
                acc += self.offdiag[i] * v[i + 1];
            }
            y[i] = acc;
        }
        y
    }
}

/// Imbalance coordinate x = 2n/N − 1, computed as (2n−N)/N so that the
/// mirror pair n ↔ N−n maps to exactly opposite floating-point values.
pub fn imbalance_coordinate(n: usize, n_atoms: usize) -> f64 {
    (2 * n as i64 - n_atoms as i64) as f64 / n_atoms as f64
}

/// Build the Fock-basis Hamiltonian for the given parameters (units ħω_R).
pub fn build_hamiltonian(params: &ModelParams) -> TridiagonalOperator {
    let n_atoms = params.n_atoms;
    let s = params.spin();
    let mut diag = Vec::with_capacity(n_atoms + 1);
    let mut offdiag = Vec::with_capacity(n_atoms);
    for n in 0..=n_atoms {
        let x = imbalance_coordinate(n, n_atoms);
        diag.push(-0.5 * s * params.lambda * x * x);
    }
    for n in 0..n_atoms {
        // (n+1)(N−n) in integers keeps β_n = β_{N−1−n} exact bit-for-bit.
        let product = ((n + 1) as u64) * ((n_atoms - n) as u64);
        offdiag.push(-0.5 * (product as f64).sqrt());
    }
    TridiagonalOperator { diag, offdiag }
}

/// Real Fock-state amplitudes A_0..A_N with fixed normalization and sign.
#[derive(Debug, Clone, PartialEq)]
pub struct FockAmplitudes {
    coeffs: Vec<f64>,
}

impl FockAmplitudes {
    /// Normalization tolerance |Σ A_n² − 1| accepted by the constructor.
    pub const NORM_TOLERANCE: f64 = 1e-12;

    /// Wrap a coefficient vector; requires Σ A_n² = 1 within 1e−12 and fixes
    /// the global sign so that Σ A_n > 0 (falling back, for vectors with a
    /// vanishing sum such as odd-parity states, to making the largest-modulus
    /// entry positive).
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() < 3 {
            return Err(Error::ParticleCount(coeffs.len().saturating_sub(1)));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NotFinite {
                what: "Fock amplitude",
            });
        }
        let norm_sq: f64 = coeffs.iter().map(|c| c * c).sum();
        let defect = (norm_sq - 1.0).abs();
        if defect > Self::NORM_TOLERANCE {
            return Err(Error::NotNormalized { defect });
        }
        let mut coeffs = coeffs;
        if needs_sign_flip(&coeffs) {
            for c in &mut coeffs {
                *c = -*c;
            }
        }
        Ok(Self { coeffs })
    }

    /// Particle count N (one less than the coefficient count).
    pub fn n_atoms(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Amplitudes A_0..A_N.
    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    /// Parity image (PA)_n = A_{N−n}.
    pub fn parity_reflected(&self) -> FockAmplitudes {
        let mut coeffs: Vec<f64> = self.coeffs.clone();
        coeffs.reverse();
        // Reversal preserves norm and sum, so the invariants still hold.
        FockAmplitudes { coeffs }
    }
}

/// Sign convention: Σ A_n > 0, with a largest-entry fallback for sums that
/// vanish to rounding (odd-parity eigenvectors).
fn needs_sign_flip(coeffs: &[f64]) -> bool {
    let sum: f64 = coeffs.iter().sum();
    if sum.abs() > 1e-9 {
        return sum < 0.0;
    }
    let mut lead = 0.0_f64;
    for &c in coeffs {
        if c.abs() > lead.abs() {
            lead = c;
        }
    }
    lead < 0.0
}

/// Variational energy ⟨A|H|A⟩ = Σ α_n A_n² + 2 Σ β_n A_n A_{n+1} (units ħω_R).
pub fn energy_expectation(h: &TridiagonalOperator, a: &FockAmplitudes) -> Result<f64> {
    let coeffs = a.coefficients();
    if coeffs.len() != h.dimension() {
        return Err(Error::DimensionMismatch {
            len: coeffs.len(),
            dim: h.dimension(),
        });
    }
    let mut energy = 0.0;
    for (i, &c) in coeffs.iter().enumerate() {
        energy += h.diag()[i] * c * c;
        if i + 1 < coeffs.len() {
            energy += 2.0 * h.offdiag()[i] * c * coeffs[i + 1];
        }
    }
    Ok(energy)
}

/// N00N-state fidelity F = |⟨N00N|Ψ⟩|² = (A_0 + A_N)²/2 for real amplitudes.
pub fn fidelity_noon(a: &FockAmplitudes) -> f64 {
    let coeffs = a.coefficients();
    let edge = coeffs[0] + coeffs[coeffs.len() - 1];
    (0.5 * edge * edge).clamp(0.0, 1.0)
}

/// Imbalance probability distribution P_n = A_n².
pub fn imbalance_distribution(a: &FockAmplitudes) -> Vec<f64> {
    a.coefficients().iter().map(|c| c * c).collect()
}

/// Index of the distribution maximum (first index on ties).
pub fn distribution_peak(p: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in p.iter().enumerate() {
        if v > p[best] {
            best = i;
        }
    }
    best
}

/// Bimodality detector: the maximum sits away from the center bins and
/// strictly exceeds the central probability (1e−9 relative margin guards
/// against ties at rounding level).
pub fn is_bimodal(p: &[f64]) -> bool {
    let n = p.len() - 1;
    let lo_mid = n / 2;
    let hi_mid = n - lo_mid;
    let peak = distribution_peak(p);
    if peak == lo_mid || peak == hi_mid {
        return false;
    }
    let central = p[lo_mid].max(p[hi_mid]);
    p[peak] > central * (1.0 + 1e-9)
}
