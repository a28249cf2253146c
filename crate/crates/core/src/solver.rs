//! Lowest eigenpairs of the symmetric tridiagonal Hamiltonian.
//!
//! Eigenvalues come from Sturm-sequence bisection inside Gershgorin bounds;
//! eigenvectors from inverse iteration with a fixed shift slightly below the
//! bisected eigenvalue.  At λ > 1 the two lowest states form a doublet split
//! by an exponentially small gap, so a converged vector can be an arbitrary
//! mixture of the parity partners; every returned state is therefore
//! projected onto a parity eigenspace, which preserves the eigenspace
//! because the Hamiltonian commutes with the mirror map A_n ↔ A_{N−n}.
//! A cyclic-Jacobi dense diagonalization, implemented independently of the
//! fast path, serves as a brute-force oracle in tests.

use crate::error::{Error, Result};
use crate::model::{FockAmplitudes, TridiagonalOperator};

/// Bisection step cap; halving the Gershgorin interval this many times
/// drives the bracket below one ulp of any double-precision eigenvalue.
const BISECTION_STEPS: usize = 60;

/// Inverse-iteration step cap.
const INVERSE_ITERATION_STEPS: usize = 50;

/// Dense-oracle dimension guard against accidental huge dense solves.
const ORACLE_DIMENSION_LIMIT: usize = 256;

/// Default residual tolerance ‖H·A − E·A‖ for the iterative path.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Eigenpairs sorted by ascending energy (units ħω_R).
#[derive(Debug, Clone)]
pub struct EigenResult {
    /// Ascending eigenvalues (equal values possible inside a collapsed doublet).
    pub energies: Vec<f64>,
    /// Normalized, sign-fixed, parity-pure eigenvectors matching `energies`.
    pub states: Vec<FockAmplitudes>,
    /// Residual norms ‖H·A − E·A‖ per returned pair.
    pub residuals: Vec<f64>,
}

impl EigenResult {
    /// Doublet gap ΔE = E₁ − E₀, clamped to zero when the splitting falls
    /// below the bisection resolution.
    pub fn doublet_gap(&self) -> Option<f64> {
        if self.energies.len() < 2 {
            return None;
        }
        Some((self.energies[1] - self.energies[0]).max(0.0))
    }
}

/// Spectral bounds from the Gershgorin circles of the tridiagonal operator.
fn gershgorin_bounds(diag: &[f64], offdiag: &[f64]) -> (f64, f64) {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let mut radius = 0.0;
        if i > 0 {
            radius += offdiag[i - 1].abs();
        }
        if i < n - 1 {
            radius += offdiag[i].abs();
        }
        lo = lo.min(diag[i] - radius);
        hi = hi.max(diag[i] + radius);
    }
    (lo, hi)
}

/// Number of eigenvalues strictly below `shift`, counted as the negative
/// pivots of the LDLᵀ factorization of (T − shift·I).  Vanishing pivots are
/// replaced by a tiny negative value (the standard safeguard).
fn sturm_count(diag: &[f64], offdiag: &[f64], shift: f64, pivmin: f64) -> usize {
    let mut count = 0;
    let mut d = diag[0] - shift;
    if d.abs() < pivmin {
        d = -pivmin;
    }
    if d < 0.0 {
        count += 1;
    }
    for i in 1..diag.len() {
        d = diag[i] - shift - offdiag[i - 1] * offdiag[i - 1] / d;
        if d.abs() < pivmin {
            d = -pivmin;
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// k-th smallest eigenvalue (k = 0 is the ground state) by bisection.
fn bisect_eigenvalue(diag: &[f64], offdiag: &[f64], k: usize, lo0: f64, hi0: f64) -> f64 {
    let scale = lo0.abs().max(hi0.abs()).max(1.0);
    let pivmin = f64::EPSILON * f64::EPSILON * scale;
    let mut lo = lo0;
    let mut hi = hi0;
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if sturm_count(diag, offdiag, mid, pivmin) > k {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// LU factorization of (T − μ·I) with partial pivoting, specialised to the
/// tridiagonal band.  Row swaps create one extra superdiagonal of fill-in,
/// stored in `super2`.
struct ShiftedLu {
    /// Elimination multipliers (the subdiagonal of L).
    multipliers: Vec<f64>,
    /// Main diagonal of U.
    diag: Vec<f64>,
    /// First superdiagonal of U.
    super1: Vec<f64>,
    /// Second superdiagonal of U (fill-in from row swaps).
    super2: Vec<f64>,
    /// Whether rows i and i+1 were swapped at elimination step i.
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn factor(diag_in: &[f64], offdiag: &[f64], mu: f64) -> ShiftedLu {
        let n = diag_in.len();
        // A final pivot that rounds to exactly zero is replaced by this; the
        // solve then amplifies the null direction, which is the
        // inverse-iteration target anyway.
        let tiny = f64::EPSILON * f64::EPSILON;
        let mut d: Vec<f64> = diag_in.iter().map(|x| x - mu).collect();
        let mut du: Vec<f64> = offdiag.to_vec();
        let mut dl: Vec<f64> = offdiag.to_vec();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if dl[i].abs() <= d[i].abs() {
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                swapped[i] = true;
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let old_super = du[i];
                du[i] = d[i + 1];
                d[i + 1] = old_super - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
            }
        }
        if d[n - 1] == 0.0 {
            d[n - 1] = tiny;
        }
        ShiftedLu {
            multipliers: dl,
            diag: d,
            super1: du,
            super2: du2,
            swapped,
        }
    }

    /// Solve (T − μ·I)·x = rhs in place.
    fn solve(&self, rhs: &mut [f64]) {
        let n = self.diag.len();
        for i in 0..n - 1 {
            if self.swapped[i] {
                rhs.swap(i, i + 1);
            }
            rhs[i + 1] -= self.multipliers[i] * rhs[i];
        }
        rhs[n - 1] /= self.diag[n - 1];
        if n > 1 {
            rhs[n - 2] = (rhs[n - 2] - self.super1[n - 2] * rhs[n - 1]) / self.diag[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            rhs[i] = (rhs[i] - self.super1[i] * rhs[i + 1] - self.super2[i] * rhs[i + 2])
                / self.diag[i];
        }
    }
}

/// Residual ‖H·v − e·v‖₂ for a unit vector v.
fn residual_norm(h: &TridiagonalOperator, v: &[f64], e: f64) -> f64 {
    let hv = h.apply(v);
    hv.iter()
        .zip(v)
        .map(|(a, b)| {
            let r = a - e * b;
            r * r
        })
        .sum::<f64>()
        .sqrt()
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
    for c in v.iter_mut() {
        *c /= norm;
    }
}

/// Remove the components of `v` along each unit vector in `basis`.
fn orthogonalize(v: &mut [f64], basis: &[Vec<f64>]) {
    for b in basis {
        let dot: f64 = v.iter().zip(b).map(|(a, c)| a * c).sum();
        for (vi, bi) in v.iter_mut().zip(b) {
            *vi -= dot * bi;
        }
    }
}

/// Project onto the dominant parity component (even or odd) and renormalize.
/// For a vector already inside one parity sector this only strips the
/// rounding-level contamination of the other sector.
fn parity_purify(v: &mut [f64]) {
    let n = v.len();
    let mut even_norm = 0.0;
    let mut odd_norm = 0.0;
    for i in 0..n {
        let e = 0.5 * (v[i] + v[n - 1 - i]);
        let o = 0.5 * (v[i] - v[n - 1 - i]);
        even_norm += e * e;
        odd_norm += o * o;
    }
    let keep_even = even_norm >= odd_norm;
    for i in 0..n / 2 {
        let j = n - 1 - i;
        let (a, b) = (v[i], v[j]);
        if keep_even {
            let e = 0.5 * (a + b);
            v[i] = e;
            v[j] = e;
        } else {
            let o = 0.5 * (a - b);
            v[i] = o;
            v[j] = -o;
        }
    }
    if n % 2 == 1 && !keep_even {
        v[n / 2] = 0.0;
    }
    normalize(v);
}

/// Deterministic start vector for the j-th eigenpair: the uniform vector for
/// j = 0 (never orthogonal to the all-positive ground state), a fixed linear
/// congruential stream for excited states.
fn start_vector(dimension: usize, j: usize) -> Vec<f64> {
    let mut v = vec![0.0; dimension];
    if j == 0 {
        for c in v.iter_mut() {
            *c = 1.0;
        }
    } else {
        let mut state = 0x9E37_79B9_7F4A_7C15_u64 ^ (j as u64).wrapping_mul(0xD1B5_4A32_D192_ED03);
        for c in v.iter_mut() {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            // Map the top 53 bits to (−1, 1).
            *c = ((state >> 11) as f64) / (1u64 << 52) as f64 - 1.0;
        }
    }
    normalize(&mut v);
    v
}

/// Inverse iteration at the fixed shift μ = e − δ with re-orthogonalization
/// against previously found vectors; returns a unit vector whose residual
/// against `e` is at most `tol`.
fn inverse_iteration(
    h: &TridiagonalOperator,
    e: f64,
    j: usize,
    previous: &[Vec<f64>],
    tol: f64,
) -> Result<(Vec<f64>, f64)> {
    let (lo, hi) = gershgorin_bounds(h.diag(), h.offdiag());
    let scale = lo.abs().max(hi.abs()).max(1.0);
    // Shift strictly below the eigenvalue: keeps the factorization away from
    // exact singularity while still amplifying the target eigendirection by
    // roughly 1/δ per step.
    let delta = 1e3 * f64::EPSILON * scale;
    let lu = ShiftedLu::factor(h.diag(), h.offdiag(), e - delta);
    let mut v = start_vector(h.dimension(), j);
    orthogonalize(&mut v, previous);
    normalize(&mut v);
    let mut residual = f64::INFINITY;
    for _ in 0..INVERSE_ITERATION_STEPS {
        lu.solve(&mut v);
        orthogonalize(&mut v, previous);
        normalize(&mut v);
        residual = residual_norm(h, &v, e);
        if residual <= 0.5 * tol {
            return Ok((v, residual));
        }
    }
    if residual <= tol {
        return Ok((v, residual));
    }
    Err(Error::NoConvergence {
        steps: INVERSE_ITERATION_STEPS,
        residual,
        tolerance: tol,
    })
}

fn validate_tolerance(tol: f64) -> Result<()> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::Tolerance(tol));
    }
    Ok(())
}

/// Ground state of the Hamiltonian: lowest eigenvalue by bisection, vector by
/// inverse iteration, then projection onto the even-parity sector (a no-op
/// below the transition, the physical cat branch above it).  All amplitudes
/// of the returned state are positive in exact arithmetic because the
/// off-diagonal entries are strictly negative.
pub fn ground_state(h: &TridiagonalOperator, tol: f64) -> Result<EigenResult> {
    validate_tolerance(tol)?;
    let (lo, hi) = gershgorin_bounds(h.diag(), h.offdiag());
    let e0 = bisect_eigenvalue(h.diag(), h.offdiag(), 0, lo, hi);
    let (mut v, _) = inverse_iteration(h, e0, 0, &[], tol)?;
    // Even-parity projection: symmetrize, renormalize, re-verify.
    let n = v.len();
    for i in 0..n / 2 {
        let e = 0.5 * (v[i] + v[n - 1 - i]);
        v[i] = e;
        v[n - 1 - i] = e;
    }
    normalize(&mut v);
    let residual = residual_norm(h, &v, e0);
    if residual > tol {
        return Err(Error::NoConvergence {
            steps: INVERSE_ITERATION_STEPS,
            residual,
            tolerance: tol,
        });
    }
    let state = FockAmplitudes::new(v)?;
    Ok(EigenResult {
        energies: vec![e0],
        states: vec![state],
        residuals: vec![residual],
    })
}

/// k lowest eigenpairs (1 ≤ k ≤ N+1), each vector parity-purified and
/// orthogonalized against the pairs found before it.
pub fn spectrum(h: &TridiagonalOperator, k: usize, tol: f64) -> Result<EigenResult> {
    validate_tolerance(tol)?;
    let dim = h.dimension();
    if k == 0 || k > dim {
        return Err(Error::EigenpairCount { k, max: dim });
    }
    let (lo, hi) = gershgorin_bounds(h.diag(), h.offdiag());
    let mut energies = Vec::with_capacity(k);
    for j in 0..k {
        energies.push(bisect_eigenvalue(h.diag(), h.offdiag(), j, lo, hi));
    }
    // Sturm brackets are ordered by construction; sorting only repairs
    // rounding-level inversions inside collapsed doublets.
    energies.sort_by(f64::total_cmp);

    let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(k);
    let mut residuals = Vec::with_capacity(k);
    for (j, &e) in energies.iter().enumerate() {
        let (mut v, _) = inverse_iteration(h, e, j, &vectors, tol)?;
        parity_purify(&mut v);
        let residual = residual_norm(h, &v, e);
        if residual > tol {
            return Err(Error::NoConvergence {
                steps: INVERSE_ITERATION_STEPS,
                residual,
                tolerance: tol,
            });
        }
        residuals.push(residual);
        vectors.push(v);
    }
    let states = vectors
        .into_iter()
        .map(FockAmplitudes::new)
        .collect::<Result<Vec<_>>>()?;
    Ok(EigenResult {
        energies,
        states,
        residuals,
    })
}

/// Full spectrum by cyclic Jacobi rotations on a dense copy — an independent
/// brute-force oracle for tests and cross-checks, guarded to dimension ≤ 256.
pub fn dense_oracle(h: &TridiagonalOperator) -> Result<EigenResult> {
    let n = h.dimension();
    if n > ORACLE_DIMENSION_LIMIT {
        return Err(Error::OracleDimension {
            dim: n,
            limit: ORACLE_DIMENSION_LIMIT,
        });
    }
    // Dense symmetric copy, row-major.
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        a[i * n + i] = h.diag()[i];
        if i + 1 < n {
            a[i * n + i + 1] = h.offdiag()[i];
            a[(i + 1) * n + i] = h.offdiag()[i];
        }
    }
    let mut vecs = vec![0.0; n * n];
    for i in 0..n {
        vecs[i * n + i] = 1.0;
    }
    let frobenius = a.iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
    let target = 1e-14 * frobenius;
    let off_norm = |a: &[f64]| {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        (2.0 * off).sqrt()
    };
    let mut converged = false;
    for _sweep in 0..50 {
        if off_norm(&a) <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for i in 0..n {
                    let aip = a[i * n + p];
                    let aiq = a[i * n + q];
                    a[i * n + p] = c * aip - s * aiq;
                    a[i * n + q] = s * aip + c * aiq;
                }
                for i in 0..n {
                    let api = a[p * n + i];
                    let aqi = a[q * n + i];
                    a[p * n + i] = c * api - s * aqi;
                    a[q * n + i] = s * api + c * aqi;
                }
                for i in 0..n {
                    let vip = vecs[i * n + p];
                    let viq = vecs[i * n + q];
                    vecs[i * n + p] = c * vip - s * viq;
                    vecs[i * n + q] = s * vip + c * viq;
                }
            }
        }
    }
    if !converged && off_norm(&a) > target {
        return Err(Error::NoConvergence {
            steps: 50,
            residual: off_norm(&a),
            tolerance: target,
        });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let mut energies = Vec::with_capacity(n);
    let mut states = Vec::with_capacity(n);
    let mut residuals = Vec::with_capacity(n);
    for &col in &order {
        let e = a[col * n + col];
        let mut v: Vec<f64> = (0..n).map(|i| vecs[i * n + col]).collect();
        normalize(&mut v);
        let residual = residual_norm(h, &v, e);
        energies.push(e);
        states.push(FockAmplitudes::new(v)?);
        residuals.push(residual);
    }
    Ok(EigenResult {
        energies,
        states,
        residuals,
    })
}
