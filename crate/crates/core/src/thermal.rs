//! Thermally activated and dissipative escape from the metastable well.
//!
//! Above the transition the inverted barrier supports a "thermon"
//! quasiparticle of frequency ω = ω_R√(λ−1); its period fixes the crossover
//! temperature T_c = ħωα/(2πk_B) separating Arrhenius-style thermal
//! activation from quantum tunneling.  Ohmic friction γ enters only through
//! the factor α = √(1+(γ/2ω)²) − γ/2ω, which suppresses both T_c and the
//! escape rate.  Rates are valid well above T_c; below-crossover requests
//! return an explicit validity error instead of an extrapolated number.
//!
//! Temperatures are kelvin and rates 1/s; the dimensionless barrier data
//! come from [`crate::continuum`] and are converted through ħω_R.

use crate::continuum::{barrier_height, oscillation_frequency, ContinuumParams};
use crate::error::{Error, Result};
use crate::units::{BOLTZMANN, HBAR};

/// Default interpretation of "≫ 1" in the metastability conditions.
pub const DEFAULT_METASTABILITY_THRESHOLD: f64 = 10.0;

/// Bath state: temperature and Ohmic damping rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalParams {
    /// Temperature T in kelvin (≥ 0).
    pub temperature: f64,
    /// Ohmic damping rate γ in rad/s (≥ 0).
    pub gamma: f64,
}

impl ThermalParams {
    /// Validates T ≥ 0 and γ ≥ 0 (both finite).
    pub fn new(temperature: f64, gamma: f64) -> Result<ThermalParams> {
        if !temperature.is_finite() || temperature < 0.0 {
            return Err(Error::TemperatureNegative(temperature));
        }
        if !gamma.is_finite() || gamma < 0.0 {
            return Err(Error::Damping(gamma));
        }
        Ok(ThermalParams { temperature, gamma })
    }

    /// True in the weak-friction regime γ < ω the rate formulas assume.
    pub fn is_underdamped(&self, omega: f64) -> bool {
        self.gamma < omega
    }
}

/// Escape-mechanism classification relative to the crossover temperature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// T > 3T_c: thermal activation over the barrier dominates.
    Classical,
    /// Within a factor 3 of T_c: neither limit is clean.
    Crossover,
    /// T < T_c/3: quantum tunneling dominates; the rate goes as e^{−B}
    /// with a temperature-independent exponent.
    Quantum,
}

impl Regime {
    /// Lower-case label for reports and CSV cells.
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Classical => "classical",
            Regime::Crossover => "crossover",
            Regime::Quantum => "quantum",
        }
    }
}

/// Crossover summary for one (λ, T, γ) point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossoverResult {
    /// Thermon frequency ω in rad/s.
    pub omega: f64,
    /// Damping factor α ∈ (0, 1].
    pub alpha: f64,
    /// Crossover temperature T_c in kelvin.
    pub t_c: f64,
    /// Dimensionless crossover exponent B_c = V₀/(k_B T_c).
    pub b_c: f64,
    /// Classification of the supplied temperature against T_c.
    pub regime: Regime,
}

/// Both "≫ 1" conditions for weak metastability, with their raw ratios.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetastabilityReport {
    /// V₀/(k_B T): barrier height against thermal energy.
    pub thermal_ratio: f64,
    /// V₀/(ħω₀) = (s/2λ)(λ−1)^{3/2}/√(λ+1): barrier against level spacing.
    pub quantum_ratio: f64,
    /// thermal_ratio ≥ threshold.
    pub thermal_ok: bool,
    /// quantum_ratio ≥ threshold.
    pub quantum_ok: bool,
}

impl MetastabilityReport {
    /// True when both conditions clear the threshold.
    pub fn satisfied(&self) -> bool {
        self.thermal_ok && self.quantum_ok
    }
}

/// Coefficients (c₂, c₄) of the inverted barrier expansion
/// U(x) ≈ U(0) − (c₂x² + c₄x⁴): c₂ = −s(ħω_R/2)(λ−1) and c₄ = sħω_R/8,
/// in units ħω_R.
pub fn inverted_coeffs(p: &ContinuumParams) -> Result<(f64, f64)> {
    if p.lambda() <= 1.0 {
        return Err(Error::RequiresDoubleWell(p.lambda()));
    }
    let c2 = -0.5 * p.s() * (p.lambda() - 1.0);
    let c4 = p.s() / 8.0;
    Ok((c2, c4))
}

/// Thermon frequency ω = ω_R√(λ−1) (equivalently ω₀/√(λ+1)) in rad/s.
pub fn thermon_frequency(lambda: f64, omega_r: f64) -> Result<f64> {
    if !omega_r.is_finite() || omega_r <= 0.0 {
        return Err(Error::Frequency(omega_r));
    }
    if !lambda.is_finite() || lambda < 1.0 {
        return Err(Error::RequiresBarrier(lambda));
    }
    Ok(omega_r * (lambda - 1.0).sqrt())
}

/// Ohmic suppression factor α = √(1+(γ/2ω)²) − γ/2ω ∈ (0, 1].
pub fn damping_factor(gamma: f64, omega: f64) -> Result<f64> {
    if !omega.is_finite() || omega <= 0.0 {
        return Err(Error::Frequency(omega));
    }
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::Damping(gamma));
    }
    let half_ratio = gamma / (2.0 * omega);
    Ok((1.0 + half_ratio * half_ratio).sqrt() - half_ratio)
}

/// Crossover temperature T_c = ħωα/(2πk_B) in kelvin; zero at the
/// transition point λ = 1 where the barrier disappears.
pub fn critical_temperature(lambda: f64, omega_r: f64, gamma: f64) -> Result<f64> {
    let omega = thermon_frequency(lambda, omega_r)?;
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::Damping(gamma));
    }
    if omega == 0.0 {
        return Ok(0.0);
    }
    let alpha = damping_factor(gamma, omega)?;
    Ok(HBAR * omega * alpha / (2.0 * std::f64::consts::PI * BOLTZMANN))
}

/// Arrhenius rate Γ_cl = (ω₀/2π)e^{−V₀/(k_B T)}; V₀ in joules.
pub fn classical_rate(v0: f64, omega0: f64, temperature: f64) -> Result<f64> {
    if !v0.is_finite() || v0 < 0.0 {
        return Err(Error::BarrierHeight(v0));
    }
    if !omega0.is_finite() || omega0 < 0.0 {
        return Err(Error::Frequency(omega0));
    }
    if !temperature.is_finite() || temperature <= 0.0 {
        return Err(Error::TemperatureNotPositive(temperature));
    }
    Ok(omega0 / (2.0 * std::f64::consts::PI) * (-v0 / (BOLTZMANN * temperature)).exp())
}

/// Leading quantum enhancement f_q = exp[ħ²(ω₀²+ω²)/(24(k_B T)²)] of the
/// classical rate, valid well above the crossover; independent of damping.
pub fn quantum_correction(omega0: f64, omega: f64, temperature: f64) -> Result<f64> {
    if !omega0.is_finite() || omega0 < 0.0 {
        return Err(Error::Frequency(omega0));
    }
    if !omega.is_finite() || omega < 0.0 {
        return Err(Error::Frequency(omega));
    }
    if !temperature.is_finite() || temperature <= 0.0 {
        return Err(Error::TemperatureNotPositive(temperature));
    }
    let kt = BOLTZMANN * temperature;
    Ok((HBAR * HBAR * (omega0 * omega0 + omega * omega) / (24.0 * kt * kt)).exp())
}

/// Quantum-corrected dissipative escape rate
/// Γ = (ω₀α/2π)·f_q·e^{−V₀/(k_B T)}, only valid above the crossover
/// temperature; requests at T ≤ T_c are refused rather than extrapolated.
pub fn dissipative_rate(p: &ContinuumParams, tp: &ThermalParams, omega_r: f64) -> Result<f64> {
    if p.lambda() <= 1.0 {
        return Err(Error::RequiresDoubleWell(p.lambda()));
    }
    let t_c = critical_temperature(p.lambda(), omega_r, tp.gamma)?;
    if tp.temperature <= t_c {
        return Err(Error::BelowCrossover {
            t: tp.temperature,
            t_c,
        });
    }
    let omega0 = oscillation_frequency(p.lambda(), omega_r)?;
    let omega = thermon_frequency(p.lambda(), omega_r)?;
    let alpha = damping_factor(tp.gamma, omega)?;
    let f_q = quantum_correction(omega0, omega, tp.temperature)?;
    let v0 = barrier_height(p)? * HBAR * omega_r;
    Ok(omega0 * alpha / (2.0 * std::f64::consts::PI)
        * f_q
        * (-v0 / (BOLTZMANN * tp.temperature)).exp())
}

/// Crossover exponent B_c = (sπ/(αλ))(λ−1)^{3/2}, algebraically equal to
/// V₀/(k_B T_c).
pub fn crossover_exponent(p: &ContinuumParams, alpha: f64) -> Result<f64> {
    if p.lambda() <= 1.0 {
        return Err(Error::RequiresDoubleWell(p.lambda()));
    }
    if !alpha.is_finite() || alpha <= 0.0 || alpha > 1.0 {
        return Err(Error::Alpha(alpha));
    }
    let d = p.lambda() - 1.0;
    Ok(p.s() * std::f64::consts::PI / (alpha * p.lambda()) * d * d.sqrt())
}

/// Checks the two weak-metastability conditions V₀/(k_B T) ≫ 1 and
/// V₀/(ħω₀) ≫ 1, interpreting "≫" as ≥ `threshold`.
pub fn metastability_check(
    p: &ContinuumParams,
    temperature: f64,
    omega_r: f64,
    threshold: f64,
) -> Result<MetastabilityReport> {
    if p.lambda() <= 1.0 {
        return Err(Error::RequiresDoubleWell(p.lambda()));
    }
    if !temperature.is_finite() || temperature <= 0.0 {
        return Err(Error::TemperatureNotPositive(temperature));
    }
    if !threshold.is_finite() || threshold <= 0.0 {
        return Err(Error::Threshold(threshold));
    }
    let v0 = barrier_height(p)? * HBAR * omega_r;
    let omega0 = oscillation_frequency(p.lambda(), omega_r)?;
    let thermal_ratio = v0 / (BOLTZMANN * temperature);
    let quantum_ratio = v0 / (HBAR * omega0);
    Ok(MetastabilityReport {
        thermal_ratio,
        quantum_ratio,
        thermal_ok: thermal_ratio >= threshold,
        quantum_ok: quantum_ratio >= threshold,
    })
}

/// Classifies a temperature against the crossover scale: classical above
/// 3T_c, quantum below T_c/3, crossover in between.
pub fn regime_classify(temperature: f64, t_c: f64) -> Result<Regime> {
    if !temperature.is_finite() || temperature < 0.0 {
        return Err(Error::TemperatureNegative(temperature));
    }
    if !t_c.is_finite() || t_c < 0.0 {
        return Err(Error::TemperatureNegative(t_c));
    }
    if temperature > 3.0 * t_c {
        Ok(Regime::Classical)
    } else if temperature < t_c / 3.0 {
        Ok(Regime::Quantum)
    } else {
        Ok(Regime::Crossover)
    }
}

/// Full crossover summary (ω, α, T_c, B_c, regime) for one parameter point.
pub fn crossover(
    p: &ContinuumParams,
    tp: &ThermalParams,
    omega_r: f64,
) -> Result<CrossoverResult> {
    if p.lambda() <= 1.0 {
        return Err(Error::RequiresDoubleWell(p.lambda()));
    }
    let omega = thermon_frequency(p.lambda(), omega_r)?;
    let alpha = damping_factor(tp.gamma, omega)?;
    let t_c = critical_temperature(p.lambda(), omega_r, tp.gamma)?;
    let b_c = crossover_exponent(p, alpha)?;
    let regime = regime_classify(tp.temperature, t_c)?;
    Ok(CrossoverResult {
        omega,
        alpha,
        t_c,
        b_c,
        regime,
    })
}
