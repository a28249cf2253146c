//! Large-N continuum picture: effective potential, Gaussian envelopes, fit error.
//!
//! For N ≫ 1 the Fock-space recursion maps onto a fictitious particle of mass
//! m = sħ/ω_R moving in V(x) = −s(ħω_R/2)(λx² + 2√(1−x²)) over the imbalance
//! coordinate x ∈ [−1, 1].  Below λ = 1 the potential has one minimum at
//! x = 0 and the ground state is a single Gaussian; above it, two minima at
//! x = ±√(1−λ⁻²) carry a symmetric pair of packets — the cat envelope.  A
//! fixed L∞ metric compares these envelopes against the discrete ground-state
//! probabilities.
//!
//! All energies are expressed in units of ħω_R; only operations that need a
//! laboratory rate (oscillation frequency) take ω_R explicitly.

use crate::error::{Error, Result};
use crate::model::{imbalance_coordinate, ModelParams};

/// Relative density threshold defining the envelope support in [`fit_error`].
const SUPPORT_THRESHOLD: f64 = 1e-3;

/// Dimensionless parameters of the continuum mapping: s = N/2 and λ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuumParams {
    s: f64,
    lambda: f64,
}

impl ContinuumParams {
    /// Validates s ≥ 1 and λ ≥ 0 (both finite).
    pub fn new(s: f64, lambda: f64) -> Result<ContinuumParams> {
        if !s.is_finite() || s < 1.0 {
            return Err(Error::Spin(s));
        }
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(Error::Lambda(lambda));
        }
        Ok(ContinuumParams { s, lambda })
    }

    /// Continuum parameters matching a discrete model (s = N/2).
    pub fn from_model(params: &ModelParams) -> ContinuumParams {
        ContinuumParams {
            s: params.spin(),
            lambda: params.lambda,
        }
    }

    /// Half the particle number, s = N/2.
    pub fn s(&self) -> f64 {
        self.s
    }

    /// Interaction-to-coupling ratio λ.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// True inside the window |λ−1| < 3/N^{2/3} around the transition, where
    /// the quadratic expansion under the Gaussian envelopes breaks down.
    pub fn is_anharmonic(&self) -> bool {
        let n = 2.0 * self.s;
        (self.lambda - 1.0).abs() < 3.0 / n.powf(2.0 / 3.0)
    }
}

/// Shape of the ground-state envelope.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnvelopeKind {
    /// One Gaussian at x = 0 (λ < 1).
    Single,
    /// Two mirror-image Gaussians at ±x₀ (λ > 1).
    Double,
}

/// Gaussian (λ < 1) or double-Gaussian (λ > 1) envelope of the ground state.
///
/// The normalization `amplitude` is exact, including the overlap of the two
/// lobes, so ∫|ψ|²dx = 1 over the whole line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatEnvelope {
    /// Lobe center |x_min|; zero for the single kind.
    pub x0: f64,
    /// Packet width σ.
    pub sigma: f64,
    /// Normalization amplitude C multiplying the Gaussian(s).
    pub amplitude: f64,
    /// Single below the transition, double above it.
    pub kind: EnvelopeKind,
    /// Set inside the anharmonic window around λ = 1, where the Gaussian
    /// picture is not trustworthy even though numbers are produced.
    pub anharmonic: bool,
    /// Set when σ·N < 2: the packets are narrower than a Fock bin and the
    /// continuum picture itself has broken down.
    pub sub_bin: bool,
}

impl CatEnvelope {
    /// Envelope wavefunction ψ(x).
    pub fn psi(&self, x: f64) -> f64 {
        let two_sigma_sq = 2.0 * self.sigma * self.sigma;
        match self.kind {
            EnvelopeKind::Single => self.amplitude * (-x * x / two_sigma_sq).exp(),
            EnvelopeKind::Double => {
                let left = (-(x + self.x0) * (x + self.x0) / two_sigma_sq).exp();
                let right = (-(x - self.x0) * (x - self.x0) / two_sigma_sq).exp();
                self.amplitude * (left + right)
            }
        }
    }

    /// Envelope probability density |ψ(x)|².
    pub fn density(&self, x: f64) -> f64 {
        let psi = self.psi(x);
        psi * psi
    }

    /// Overlap factor exp(−x₀²/σ²) between the two lobes (zero separation
    /// cost for the single kind, where it is 1).
    pub fn lobe_overlap(&self) -> f64 {
        (-self.x0 * self.x0 / (self.sigma * self.sigma)).exp()
    }
}

/// Effective potential V(x) = −s(ħω_R/2)(λx² + 2√(1−x²)) in units ħω_R.
pub fn effective_potential(x: f64, p: &ContinuumParams) -> Result<f64> {
    if !x.is_finite() || x.abs() > 1.0 {
        return Err(Error::ImbalanceRange(x));
    }
    Ok(-0.5 * p.s * (p.lambda * x * x + 2.0 * (1.0 - x * x).sqrt()))
}

/// Effective mass m_eff(x) = m/√(1−x²) in units of the bare mass m = sħ/ω_R.
pub fn effective_mass(x: f64, p: &ContinuumParams) -> Result<f64> {
    if !x.is_finite() || x.abs() > 1.0 {
        return Err(Error::ImbalanceRange(x));
    }
    if x.abs() == 1.0 {
        return Err(Error::MassSingular);
    }
    let _ = p; // the ratio to the bare mass is independent of s
    Ok(1.0 / (1.0 - x * x).sqrt())
}

/// Minima of the effective potential: {0} for λ ≤ 1, ±√(1−λ⁻²) for λ > 1.
pub fn minima(lambda: f64) -> Result<Vec<f64>> {
    if !lambda.is_finite() || lambda < 0.0 {
        return Err(Error::Lambda(lambda));
    }
    if lambda <= 1.0 {
        return Ok(vec![0.0]);
    }
    let x0 = (1.0 - lambda.powi(-2)).sqrt();
    Ok(vec![-x0, x0])
}

/// Barrier height V₀ = s(ħω_R/2)(λ−1)²/λ between the two wells, units ħω_R.
pub fn barrier_height(p: &ContinuumParams) -> Result<f64> {
    if p.lambda < 1.0 {
        return Err(Error::RequiresBarrier(p.lambda));
    }
    let d = p.lambda - 1.0;
    Ok(0.5 * p.s * d * d / p.lambda)
}

/// Quadratic coefficient c₂ = s(ħω_R/2)((1−x²)^{−3/2} − λ) of the expansion
/// around `x_min`, units ħω_R.  Positive at the λ > 1 well minima, negative
/// at the x = 0 saddle, and zero at the transition point (rejected).
pub fn curvature_c2(p: &ContinuumParams, x_min: f64) -> Result<f64> {
    if !x_min.is_finite() || x_min.abs() > 1.0 {
        return Err(Error::ImbalanceRange(x_min));
    }
    if x_min.abs() == 1.0 {
        return Err(Error::MassSingular);
    }
    if p.lambda == 1.0 {
        return Err(Error::DegeneratePoint);
    }
    Ok(0.5 * p.s * ((1.0 - x_min * x_min).powf(-1.5) - p.lambda))
}

/// Packet width σ = (s²(1−λ))^{−1/4} below the transition and
/// (s²λ²(λ²−1))^{−1/4} above it.
pub fn packet_width(p: &ContinuumParams) -> Result<f64> {
    if p.lambda == 1.0 {
        return Err(Error::DegeneratePoint);
    }
    let s2 = p.s * p.s;
    if p.lambda < 1.0 {
        Ok((s2 * (1.0 - p.lambda)).powf(-0.25))
    } else {
        let l2 = p.lambda * p.lambda;
        Ok((s2 * l2 * (l2 - 1.0)).powf(-0.25))
    }
}

/// Large-λ asymptote of the packet width, σ ≈ 1/(√s·λ).
pub fn packet_width_asymptotic(p: &ContinuumParams) -> Result<f64> {
    if p.lambda <= 0.0 {
        return Err(Error::Lambda(p.lambda));
    }
    Ok(1.0 / (p.s.sqrt() * p.lambda))
}

/// Squared cat amplitude C² = (√(sλ)/(2√π))(λ²−1)^{1/4} in its closed form.
///
/// Algebraically this equals 1/(2σ√π), the overlap-free normalization of two
/// separated lobes; the envelope itself uses the exact constant including the
/// overlap term, which [`CatEnvelope::amplitude`] carries.
pub fn cat_amplitude(p: &ContinuumParams) -> Result<f64> {
    if p.lambda <= 1.0 {
        return Err(Error::RequiresDoubleWell(p.lambda));
    }
    let l2 = p.lambda * p.lambda;
    Ok((p.s * p.lambda).sqrt() / (2.0 * std::f64::consts::PI.sqrt()) * (l2 - 1.0).powf(0.25))
}

/// Harmonic frequency ω₀ = ω_R√(λ²−1) of small oscillations about the well
/// minima, in rad/s.
pub fn oscillation_frequency(lambda: f64, omega_r: f64) -> Result<f64> {
    if !omega_r.is_finite() || omega_r <= 0.0 {
        return Err(Error::Frequency(omega_r));
    }
    if !lambda.is_finite() || lambda < 1.0 {
        return Err(Error::RequiresBarrier(lambda));
    }
    Ok(omega_r * (lambda * lambda - 1.0).sqrt())
}

/// Ground-state envelope: a single Gaussian below the transition, a
/// double-Gaussian cat above it, with exact normalization either way.
pub fn envelope(p: &ContinuumParams) -> Result<CatEnvelope> {
    if p.lambda == 1.0 {
        return Err(Error::DegeneratePoint);
    }
    let sigma = packet_width(p)?;
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let anharmonic = p.is_anharmonic();
    let sub_bin = sigma * 2.0 * p.s < 2.0;
    if p.lambda < 1.0 {
        // ∫C²e^{−x²/σ²}dx = C²σ√π = 1.
        let amplitude = 1.0 / (sigma * sqrt_pi).sqrt();
        Ok(CatEnvelope {
            x0: 0.0,
            sigma,
            amplitude,
            kind: EnvelopeKind::Single,
            anharmonic,
            sub_bin,
        })
    } else {
        let x0 = (1.0 - p.lambda.powi(-2)).sqrt();
        // ∫C²(g₊+g₋)²dx = 2C²σ√π(1 + e^{−x₀²/σ²}) = 1.
        let overlap = (-x0 * x0 / (sigma * sigma)).exp();
        let amplitude = 1.0 / (2.0 * sigma * sqrt_pi * (1.0 + overlap)).sqrt();
        Ok(CatEnvelope {
            x0,
            sigma,
            amplitude,
            kind: EnvelopeKind::Double,
            anharmonic,
            sub_bin,
        })
    }
}

/// L∞ error of the envelope against a discrete probability array:
/// max |P_n − |ψ(x_n)|²·Δx| / max P, taken over the bins where the envelope
/// density reaches 1e−3 of its largest bin value, with x_n = 2n/N − 1 and
/// Δx = 2/N.
pub fn fit_error(probabilities: &[f64], env: &CatEnvelope) -> Result<f64> {
    if probabilities.len() < 3 {
        return Err(Error::TooFewSamples {
            got: probabilities.len(),
            min: 3,
        });
    }
    let n_atoms = probabilities.len() - 1;
    let p_max = probabilities.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !p_max.is_finite() || p_max <= 0.0 {
        return Err(Error::NotFinite {
            what: "probability array",
        });
    }
    let densities: Vec<f64> = (0..=n_atoms)
        .map(|n| env.density(imbalance_coordinate(n, n_atoms)))
        .collect();
    let d_max = densities.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let bin = 2.0 / n_atoms as f64;
    let mut worst = f64::NEG_INFINITY;
    for (pn, dn) in probabilities.iter().zip(&densities) {
        if *dn >= SUPPORT_THRESHOLD * d_max {
            worst = worst.max((pn - dn * bin).abs());
        }
    }
    if !worst.is_finite() {
        return Err(Error::EmptySupport);
    }
    Ok(worst / p_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_hamiltonian, imbalance_distribution, ModelParams};
    use crate::solver::{ground_state, DEFAULT_TOLERANCE};

    fn params(s: f64, lambda: f64) -> ContinuumParams {
        ContinuumParams::new(s, lambda).unwrap()
    }

    /// Composite Simpson integral of f over [a, b] with an even step count.
    fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, intervals: usize) -> f64 {
        let h = (b - a) / intervals as f64;
        let mut sum = f(a) + f(b);
        for i in 1..intervals {
            let weight = if i % 2 == 1 { 4.0 } else { 2.0 };
            sum += weight * f(a + i as f64 * h);
        }
        sum * h / 3.0
    }

    #[test]
    fn parameter_validation() {
        assert!(matches!(
            ContinuumParams::new(0.5, 1.0),
            Err(Error::Spin(_))
        ));
        assert!(matches!(
            ContinuumParams::new(50.0, -0.1),
            Err(Error::Lambda(_))
        ));
        assert!(matches!(
            ContinuumParams::new(f64::NAN, 1.0),
            Err(Error::Spin(_))
        ));
        let p = ContinuumParams::from_model(&ModelParams::new(100, 1.2).unwrap());
        assert_eq!(p.s(), 50.0);
        assert_eq!(p.lambda(), 1.2);
    }

    #[test]
    fn potential_reference_points() {
        let p = params(50.0, 1.2);
        // V(0) = -s for any lambda.
        assert_eq!(effective_potential(0.0, &p).unwrap(), -50.0);
        let free = params(50.0, 0.0);
        assert_eq!(effective_potential(1.0, &free).unwrap(), 0.0);
        assert_eq!(effective_potential(-1.0, &free).unwrap(), 0.0);
        for &x in &[0.1, 0.3, 0.55, 0.9] {
            let plus = effective_potential(x, &p).unwrap();
            let minus = effective_potential(-x, &p).unwrap();
            assert_eq!(plus, minus, "potential must be even in x");
        }
        assert!(matches!(
            effective_potential(1.5, &p),
            Err(Error::ImbalanceRange(_))
        ));
    }

    #[test]
    fn potential_minimum_sits_at_the_predicted_lobe_center() {
        let p = params(50.0, 1.2);
        let x0 = minima(1.2).unwrap()[1];
        assert!((x0 - 0.5527707983925667).abs() < 1e-12);
        let v0 = effective_potential(x0, &p).unwrap();
        assert!(v0 < effective_potential(x0 - 0.01, &p).unwrap());
        assert!(v0 < effective_potential(x0 + 0.01, &p).unwrap());
    }

    #[test]
    fn mass_ratio_reference_points() {
        let p = params(50.0, 2.0);
        assert_eq!(effective_mass(0.0, &p).unwrap(), 1.0);
        // At the well minima the ratio equals lambda exactly.
        let x0 = minima(2.0).unwrap()[1];
        assert!((effective_mass(x0, &p).unwrap() - 2.0).abs() < 1e-12);
        assert!((effective_mass(0.8, &p).unwrap() - 1.0 / 0.6).abs() < 1e-12);
        assert!(matches!(effective_mass(1.0, &p), Err(Error::MassSingular)));
        assert!(matches!(
            effective_mass(1.2, &p),
            Err(Error::ImbalanceRange(_))
        ));
    }

    #[test]
    fn minima_branch_structure() {
        assert_eq!(minima(0.5).unwrap(), vec![0.0]);
        assert_eq!(minima(1.0).unwrap(), vec![0.0]);
        let deep = minima(7.0).unwrap();
        assert_eq!(deep.len(), 2);
        assert!((deep[1] - 0.9897433186107870).abs() < 1e-12);
        assert_eq!(deep[0], -deep[1]);
        // Continuity at the transition: x0 -> 0 as lambda -> 1+.
        assert!(minima(1.000001).unwrap()[1] < 2e-3);
        assert!(matches!(minima(-1.0), Err(Error::Lambda(_))));
    }

    #[test]
    fn barrier_reference_values() {
        assert_eq!(barrier_height(&params(50.0, 1.0)).unwrap(), 0.0);
        assert!((barrier_height(&params(50.0, 2.0)).unwrap() - 12.5).abs() < 1e-12);
        assert!((barrier_height(&params(50.0, 1.2)).unwrap() - 5.0 / 6.0).abs() < 1e-12);
        assert!(matches!(
            barrier_height(&params(50.0, 0.9)),
            Err(Error::RequiresBarrier(_))
        ));
    }

    #[test]
    fn curvature_reference_values() {
        assert_eq!(curvature_c2(&params(50.0, 0.0), 0.0).unwrap(), 25.0);
        let x0 = minima(2.0).unwrap()[1];
        assert!((curvature_c2(&params(50.0, 2.0), x0).unwrap() - 150.0).abs() < 1e-9);
        // At the saddle between the wells the curvature is negative.
        assert_eq!(curvature_c2(&params(50.0, 2.0), 0.0).unwrap(), -25.0);
        assert!(matches!(
            curvature_c2(&params(50.0, 1.0), 0.0),
            Err(Error::DegeneratePoint)
        ));
        assert!(matches!(
            curvature_c2(&params(50.0, 2.0), 1.0),
            Err(Error::MassSingular)
        ));
    }

    #[test]
    fn packet_width_branches() {
        // s = 50: sigma(0) = 50^{-1/2}, sigma(1.2) and sigma(7) from the
        // upper branch.
        assert!((packet_width(&params(50.0, 0.0)).unwrap() - 0.1414213562373095).abs() < 1e-12);
        assert!((packet_width(&params(50.0, 1.2)).unwrap() - 0.158511656926).abs() < 1e-10);
        let sigma7 = packet_width(&params(50.0, 7.0)).unwrap();
        assert!((sigma7 - 0.020307462900).abs() < 1e-10);
        let asym = packet_width_asymptotic(&params(50.0, 7.0)).unwrap();
        assert!((asym - 1.0 / (50.0_f64.sqrt() * 7.0)).abs() < 1e-15);
        assert!((sigma7 / asym - 1.0).abs() < 0.01, "asymptote off: {sigma7} vs {asym}");
        assert!(matches!(
            packet_width(&params(50.0, 1.0)),
            Err(Error::DegeneratePoint)
        ));
    }

    #[test]
    fn cat_amplitude_reference_values() {
        let c2 = cat_amplitude(&params(50.0, 7.0)).unwrap();
        assert!((c2 - 13.891188336411).abs() < 1e-9, "C^2 = {c2}");
        // The closed form equals the overlap-free normalization 1/(2 sigma sqrt(pi)).
        for &lambda in &[1.5, 2.0, 7.0] {
            let p = params(50.0, lambda);
            let closed = cat_amplitude(&p).unwrap();
            let sigma = packet_width(&p).unwrap();
            let direct = 1.0 / (2.0 * sigma * std::f64::consts::PI.sqrt());
            assert!(
                ((closed - direct) / direct).abs() < 1e-12,
                "lambda = {lambda}: {closed} vs {direct}"
            );
        }
        // Vanishes toward the transition, grows linearly in lambda beyond it.
        let near = cat_amplitude(&params(50.0, 1.0001)).unwrap();
        assert!(near < cat_amplitude(&params(50.0, 1.2)).unwrap());
        let linear = (50.0_f64).sqrt() * 7.0 / (2.0 * std::f64::consts::PI.sqrt());
        assert!((c2 / linear - 1.0).abs() < 0.01);
        assert!(matches!(
            cat_amplitude(&params(50.0, 1.0)),
            Err(Error::RequiresDoubleWell(_))
        ));
    }

    #[test]
    fn oscillation_frequency_reference_values() {
        assert_eq!(oscillation_frequency(1.0, 2.5).unwrap(), 0.0);
        assert!((oscillation_frequency(2.0_f64.sqrt(), 2.5).unwrap() - 2.5).abs() < 1e-12);
        let w = oscillation_frequency(7.0, 1.0).unwrap();
        assert!((w - 48.0_f64.sqrt()).abs() < 1e-12);
        assert!(matches!(
            oscillation_frequency(0.5, 1.0),
            Err(Error::RequiresBarrier(_))
        ));
        assert!(matches!(
            oscillation_frequency(2.0, 0.0),
            Err(Error::Frequency(_))
        ));
    }

    #[test]
    fn harmonic_consistency_at_the_minima() {
        // omega_0^2 = 2 c_2 / m_eff with m_eff = lambda m, in units where
        // m = s and omega_R = 1.
        for &lambda in &[1.2, 2.0, 5.0] {
            let p = params(50.0, lambda);
            let x0 = minima(lambda).unwrap()[1];
            let c2 = curvature_c2(&p, x0).unwrap();
            let w0 = oscillation_frequency(lambda, 1.0).unwrap();
            let lhs = w0 * w0;
            let rhs = 2.0 * c2 / (lambda * p.s());
            assert!(
                ((lhs - rhs) / rhs).abs() < 1e-12,
                "lambda = {lambda}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn envelope_shapes_and_flags() {
        let single = envelope(&params(50.0, 0.0)).unwrap();
        assert_eq!(single.kind, EnvelopeKind::Single);
        assert_eq!(single.x0, 0.0);
        let expect_c = 1.0 / (single.sigma * std::f64::consts::PI.sqrt()).sqrt();
        assert!((single.amplitude - expect_c).abs() < 1e-12);
        assert!(!single.anharmonic);
        assert!(!single.sub_bin);

        let cat = envelope(&params(50.0, 1.2)).unwrap();
        assert_eq!(cat.kind, EnvelopeKind::Double);
        assert!((cat.x0 - 0.5527707983925667).abs() < 1e-12);
        assert!((cat.sigma - 0.158511656926).abs() < 1e-10);
        // Exact normalization includes the lobe overlap.
        let ov = cat.lobe_overlap();
        let expect_c =
            1.0 / (2.0 * cat.sigma * std::f64::consts::PI.sqrt() * (1.0 + ov)).sqrt();
        assert!((cat.amplitude - expect_c).abs() < 1e-12);
        assert!(!cat.anharmonic);

        // The window |lambda - 1| < 3/N^{2/3} is flagged (N = 100 here).
        assert!(envelope(&params(50.0, 1.05)).unwrap().anharmonic);
        assert!(envelope(&params(50.0, 0.95)).unwrap().anharmonic);
        assert!(!envelope(&params(50.0, 2.0)).unwrap().anharmonic);

        // sigma*N = 2.03 at lambda = 7 (still resolvable), 0.9 at lambda = 16.
        assert!(!envelope(&params(50.0, 7.0)).unwrap().sub_bin);
        assert!(envelope(&params(50.0, 16.0)).unwrap().sub_bin);

        assert!(matches!(
            envelope(&params(50.0, 1.0)),
            Err(Error::DegeneratePoint)
        ));
    }

    #[test]
    fn envelope_densities_are_even() {
        for &lambda in &[0.0, 1.2, 7.0] {
            let env = envelope(&params(50.0, lambda)).unwrap();
            for &x in &[0.1, 0.5, 0.9] {
                let d = env.density(x);
                assert_eq!(d, env.density(-x), "density must be even at x = {x}");
                assert!(d.is_finite());
            }
        }
    }

    #[test]
    fn envelope_normalization_on_the_physical_interval() {
        // The single and the lambda = 1.2 cat carry their mass inside
        // [-1, 1]; the lambda = 7 lobes at x0 = 0.99 lose a fixed fraction
        // past the interval edges (frozen value), while the whole-line
        // integral stays 1 because the normalization is exact.
        for &lambda in &[0.0, 1.2] {
            let env = envelope(&params(50.0, lambda)).unwrap();
            let mass = simpson(|x| env.density(x), -1.0, 1.0, 4000);
            assert!((mass - 1.0).abs() < 1e-3, "lambda = {lambda}: mass {mass}");
        }
        let edge = envelope(&params(50.0, 7.0)).unwrap();
        let inside = simpson(|x| edge.density(x), -1.0, 1.0, 8000);
        assert!((inside - 0.762471804470).abs() < 1e-6, "mass {inside}");
        let total = simpson(|x| edge.density(x), -2.0, 2.0, 40000);
        assert!((total - 1.0).abs() < 1e-8, "whole-line mass {total}");
    }

    #[test]
    fn lobe_overlap_is_negligible_above_the_transition() {
        let ov12 = envelope(&params(50.0, 1.2)).unwrap().lobe_overlap();
        assert!((ov12 - 5.230741e-6).abs() < 1e-11);
        for &lambda in &[1.2, 2.0, 7.0] {
            let ov = envelope(&params(50.0, lambda)).unwrap().lobe_overlap();
            assert!(ov < 1e-5, "lambda = {lambda}: overlap {ov}");
        }
    }

    #[test]
    fn fit_error_frozen_values() {
        // L-infinity error of the envelope against the solver's P_n at
        // N = 100, frozen from an independent dense diagonalization.
        for &(lambda, expect) in &[
            (0.0, 2.503085839843e-3),
            (1.2, 1.155677159451e-1),
            (7.0, 2.743516993365e-1),
        ] {
            let model = ModelParams::new(100, lambda).unwrap();
            let h = build_hamiltonian(&model);
            let state = ground_state(&h, DEFAULT_TOLERANCE).unwrap();
            let p = imbalance_distribution(&state.states[0]);
            let env = envelope(&ContinuumParams::from_model(&model)).unwrap();
            let err = fit_error(&p, &env).unwrap();
            assert!(
                (err - expect).abs() < 1e-8,
                "lambda = {lambda}: fit error {err} vs {expect}"
            );
        }
    }

    #[test]
    fn fit_error_rejects_bad_input() {
        let env = envelope(&params(50.0, 0.0)).unwrap();
        assert!(matches!(
            fit_error(&[0.5, 0.5], &env),
            Err(Error::TooFewSamples { got: 2, min: 3 })
        ));
        assert!(matches!(
            fit_error(&[0.0, 0.0, 0.0], &env),
            Err(Error::NotFinite { .. })
        ));
    }
}
