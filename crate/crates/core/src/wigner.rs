//! Wigner quasiprobability functions of the continuum envelopes.
//!
//! Closed forms cover the single Gaussian, W = (1/π)exp(−x²/σ² − σ²p²), and
//! the cat state, whose two displaced lobes come with an interference ridge
//! at x = 0 oscillating in p — the negativity that marks the state as
//! nonclassical.  An independent quadrature transform
//! W(x,p) = (2/π)∫₀^∞ ψ(x+ζ)ψ(x−ζ)cos(2pζ)dζ acts as the oracle: it is
//! computed from interpolated samples of ψ with no knowledge of the closed
//! forms.  Grids are filled from the exactly normalized envelope so that the
//! fundamental bound |W| ≤ 1/π holds everywhere.

use crate::continuum::{CatEnvelope, EnvelopeKind};
use crate::error::{Error, Result};

/// Half-width of the fixed x-axis of emitted phase-space grids.
const GRID_X_MAX: f64 = 1.2;

/// Default momentum extent in units of 1/σ.
const GRID_P_SIGMA: f64 = 3.0;

/// Minimum points per axis for a phase-space grid.
const MIN_GRID_POINTS: usize = 16;

/// Largest tolerated edge-to-peak amplitude ratio of a sampled wavefunction;
/// an edge ratio r leaves a truncated tail mass of order r², so 1e−4 keeps
/// the quadrature honest to ~1e−8.
const TAIL_RATIO_LIMIT: f64 = 1e-4;

/// Absolute tolerance of the adaptive ζ-quadrature.
const QUADRATURE_TOLERANCE: f64 = 1e-11;

/// Recursion depth cap of the adaptive ζ-quadrature.
const QUADRATURE_DEPTH: u32 = 30;

fn check_width(sigma: f64) -> Result<()> {
    if !sigma.is_finite() || sigma <= 0.0 {
        return Err(Error::Width(sigma));
    }
    Ok(())
}

fn check_point(x: f64, p: f64) -> Result<()> {
    if !x.is_finite() || !p.is_finite() {
        return Err(Error::NotFinite {
            what: "phase-space point",
        });
    }
    Ok(())
}

/// Wigner function of a single Gaussian packet: W = (1/π)e^{−x²/σ² − σ²p²}.
pub fn wigner_single(x: f64, p: f64, sigma: f64) -> Result<f64> {
    check_width(sigma)?;
    check_point(x, p)?;
    let s2 = sigma * sigma;
    Ok((-x * x / s2 - s2 * p * p).exp() / std::f64::consts::PI)
}

/// Wigner function of the cat state in its two-lobes-plus-interference form:
///
/// W = e^{−σ²p²}/(2π) · [e^{−(x−x₀)²/σ²} + e^{−(x+x₀)²/σ²}
///                        + 2e^{−x²/σ²}cos(2px₀)].
///
/// This is the overlap-free normalization: it integrates to 1 + e^{−x₀²/σ²}
/// rather than 1, and its peak exceeds 1/π by the same sliver.  Dividing by
/// (1 + e^{−x₀²/σ²}) recovers the Wigner function of the exactly normalized
/// envelope, which is what [`wigner_grid`] emits.
pub fn wigner_cat(x: f64, p: f64, x0: f64, sigma: f64) -> Result<f64> {
    check_width(sigma)?;
    if !x0.is_finite() || x0 <= 0.0 || x0 >= 1.0 {
        return Err(Error::ImbalanceRange(x0));
    }
    check_point(x, p)?;
    let s2 = sigma * sigma;
    let lobes = (-(x - x0) * (x - x0) / s2).exp() + (-(x + x0) * (x + x0) / s2).exp();
    let interference = 2.0 * (-x * x / s2).exp() * (2.0 * p * x0).cos();
    Ok((-s2 * p * p).exp() * (lobes + interference) / (2.0 * std::f64::consts::PI))
}

/// Real wavefunction sampled on a uniform grid, evaluated in between by
/// Catmull–Rom interpolation (zero beyond the sampled range).
///
/// Construction rejects samples whose edge amplitude exceeds
/// [`TAIL_RATIO_LIMIT`] of the peak: a visible tail at the range boundary
/// means the quadrature would silently truncate real mass.
#[derive(Debug, Clone)]
pub struct SampledWavefunction {
    start: f64,
    step: f64,
    values: Vec<f64>,
    /// Packet centers, used to pre-split the oscillatory quadrature.
    centers: Vec<f64>,
}

impl SampledWavefunction {
    /// Wraps raw uniform samples; the packet center is taken at the largest
    /// |ψ| sample.
    pub fn from_samples(start: f64, step: f64, values: Vec<f64>) -> Result<SampledWavefunction> {
        let mut best = 0usize;
        let mut peak = f64::NEG_INFINITY;
        for (i, v) in values.iter().enumerate() {
            if v.abs() > peak {
                peak = v.abs();
                best = i;
            }
        }
        let center = start + best as f64 * step;
        Self::build(start, step, values, vec![center])
    }

    /// Samples an envelope at `points_per_sigma` resolution over ±8σ around
    /// the outermost packet centers.
    pub fn from_envelope(
        env: &CatEnvelope,
        points_per_sigma: usize,
    ) -> Result<SampledWavefunction> {
        if points_per_sigma < 8 {
            return Err(Error::TooFewSamples {
                got: points_per_sigma,
                min: 8,
            });
        }
        let reach = env.x0 + 8.0 * env.sigma;
        let step = env.sigma / points_per_sigma as f64;
        let count = (2.0 * reach / step).ceil() as usize + 1;
        let start = -reach;
        let values = (0..count)
            .map(|i| env.psi(start + i as f64 * step))
            .collect();
        let centers = match env.kind {
            EnvelopeKind::Single => vec![0.0],
            EnvelopeKind::Double => vec![-env.x0, env.x0],
        };
        Self::build(start, step, values, centers)
    }

    fn build(
        start: f64,
        step: f64,
        values: Vec<f64>,
        centers: Vec<f64>,
    ) -> Result<SampledWavefunction> {
        if values.len() < 16 {
            return Err(Error::TooFewSamples {
                got: values.len(),
                min: 16,
            });
        }
        if !step.is_finite() || step <= 0.0 {
            return Err(Error::SampleSpacing(step));
        }
        if !start.is_finite() || values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NotFinite {
                what: "wavefunction sample",
            });
        }
        let peak = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        if peak == 0.0 {
            return Err(Error::NotFinite {
                what: "wavefunction sample",
            });
        }
        let edge = values[0].abs().max(values[values.len() - 1].abs());
        let ratio = edge / peak;
        if ratio > TAIL_RATIO_LIMIT {
            return Err(Error::TailMass(ratio));
        }
        Ok(SampledWavefunction {
            start,
            step,
            values,
            centers,
        })
    }

    /// Sampled range (first sample, last sample).
    pub fn range(&self) -> (f64, f64) {
        (
            self.start,
            self.start + (self.values.len() - 1) as f64 * self.step,
        )
    }

    /// Interpolated ψ(x); zero outside the sampled range.
    pub fn evaluate(&self, x: f64) -> f64 {
        let t = (x - self.start) / self.step;
        let last = (self.values.len() - 1) as f64;
        if !(0.0..=last).contains(&t) {
            return 0.0;
        }
        let i = (t.floor() as usize).min(self.values.len() - 2);
        let u = t - i as f64;
        // Catmull-Rom with zero padding past the ends (tails are below the
        // admission threshold, so the padding error is negligible).
        let fetch = |k: isize| -> f64 {
            if k < 0 || k as usize >= self.values.len() {
                0.0
            } else {
                self.values[k as usize]
            }
        };
        let f0 = fetch(i as isize - 1);
        let f1 = fetch(i as isize);
        let f2 = fetch(i as isize + 1);
        let f3 = fetch(i as isize + 2);
        0.5 * (2.0 * f1
            + (f2 - f0) * u
            + (2.0 * f0 - 5.0 * f1 + 4.0 * f2 - f3) * u * u
            + (3.0 * f1 - f0 - 3.0 * f2 + f3) * u * u * u)
    }
}

/// Adaptive Simpson with the standard Richardson acceptance test.
fn adaptive_simpson(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let refined = left + right;
    if depth == 0 || (refined - whole).abs() <= 15.0 * tol {
        refined + (refined - whole) / 15.0
    } else {
        adaptive_simpson(f, a, m, fa, flm, fm, 0.5 * tol, depth - 1)
            + adaptive_simpson(f, m, b, fm, frm, fb, 0.5 * tol, depth - 1)
    }
}

/// Integrate f over [a, b] with forced subdivision points.
fn integrate_with_cuts(f: &impl Fn(f64) -> f64, cuts: &[f64], tol: f64) -> f64 {
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b - a <= 0.0 {
            continue;
        }
        let m = 0.5 * (a + b);
        total += adaptive_simpson(f, a, b, f(a), f(m), f(b), tol, QUADRATURE_DEPTH);
    }
    total
}

/// Wigner transform by direct quadrature:
/// W(x,p) = (2/π)∫₀^Z ψ(x+ζ)ψ(x−ζ)cos(2pζ)dζ, with Z the largest shift that
/// keeps both arguments inside the sampled range (ψ vanishes beyond it).
pub fn wigner_quadrature(psi: &SampledWavefunction, x: f64, p: f64) -> Result<f64> {
    check_point(x, p)?;
    let (a, b) = psi.range();
    let z = (b - x).min(x - a);
    if z <= 0.0 {
        return Ok(0.0);
    }
    // Pre-split where either factor of ψ(x+ζ)ψ(x−ζ) crosses a packet center,
    // so the adaptive rule starts from bump-aligned intervals.
    let mut cuts = vec![0.0, z];
    for &c in &psi.centers {
        for candidate in [c - x, x - c] {
            if candidate > 0.0 && candidate < z {
                cuts.push(candidate);
            }
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let integrand = |zeta: f64| psi.evaluate(x + zeta) * psi.evaluate(x - zeta) * (2.0 * p * zeta).cos();
    let integral = integrate_with_cuts(&integrand, &cuts, QUADRATURE_TOLERANCE);
    Ok(2.0 / std::f64::consts::PI * integral)
}

/// Phase-space grid of Wigner values on uniform axes.
///
/// `values` is row-major over x: the entry for (x_axis[i], p_axis[j]) sits at
/// index i·np + j.
#[derive(Debug, Clone)]
pub struct PhaseSpaceGrid {
    pub x_axis: Vec<f64>,
    pub p_axis: Vec<f64>,
    pub values: Vec<f64>,
    /// Carried over from the envelope: σ·N < 2 means the packets are below
    /// the Fock-bin resolution and the continuum Wigner picture is suspect.
    pub sub_bin: bool,
}

impl PhaseSpaceGrid {
    /// Wigner value at (x_axis[ix], p_axis[ip]).
    pub fn value(&self, ix: usize, ip: usize) -> f64 {
        self.values[ix * self.p_axis.len() + ip]
    }

    /// Smallest Wigner value on the grid (most negative interference dip).
    pub fn min_value(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    /// Largest Wigner value on the grid.
    pub fn max_value(&self) -> f64 {
        self.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }
}

fn uniform_axis(max: f64, count: usize) -> Vec<f64> {
    let step = 2.0 * max / (count - 1) as f64;
    (0..count).map(|i| -max + i as f64 * step).collect()
}

/// Fill an nx × np grid over x ∈ [−1.2, 1.2], p ∈ [−p_max, p_max] (default
/// p_max = 3/σ) from the closed form matching the envelope kind, normalized
/// exactly so that |W| ≤ 1/π everywhere.
pub fn wigner_grid(
    env: &CatEnvelope,
    nx: usize,
    np: usize,
    p_max: Option<f64>,
) -> Result<PhaseSpaceGrid> {
    if nx < MIN_GRID_POINTS || np < MIN_GRID_POINTS {
        return Err(Error::GridTooCoarse { nx, np });
    }
    check_width(env.sigma)?;
    let p_extent = match p_max {
        Some(p) => {
            if !p.is_finite() || p <= 0.0 {
                return Err(Error::NotFinite {
                    what: "momentum extent",
                });
            }
            p
        }
        None => GRID_P_SIGMA / env.sigma,
    };
    let x_axis = uniform_axis(GRID_X_MAX, nx);
    let p_axis = uniform_axis(p_extent, np);
    let mut values = Vec::with_capacity(nx * np);
    match env.kind {
        EnvelopeKind::Single => {
            for &x in &x_axis {
                for &p in &p_axis {
                    values.push(wigner_single(x, p, env.sigma)?);
                }
            }
        }
        EnvelopeKind::Double => {
            let norm = 1.0 + env.lobe_overlap();
            for &x in &x_axis {
                for &p in &p_axis {
                    values.push(wigner_cat(x, p, env.x0, env.sigma)? / norm);
                }
            }
        }
    }
    Ok(PhaseSpaceGrid {
        x_axis,
        p_axis,
        values,
        sub_bin: env.sub_bin,
    })
}
