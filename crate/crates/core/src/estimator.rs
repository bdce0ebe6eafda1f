//! Beat-frequency estimation and Cramér–Rao benchmarks.
//!
//! The estimator runs in three stages: a zero-padded periodogram coarse
//! search restricted to a guard band (a real sinusoid has a DC image and
//! a Nyquist image), a three-point quadratic interpolation around the
//! peak, and a short local maximization of the single-frequency
//! least-squares objective.

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::constants::PhysicalConstants;
use crate::error::{RadarError, Result};
use crate::waveform::SampledWaveform;

/// Default excluded margin at each end of (0, π), as a fraction of π.
pub const DEFAULT_GUARD_FRACTION: f64 = 0.02;
/// Zero-padding factor for the coarse periodogram.
pub const ZERO_PAD_FACTOR: usize = 4;
/// Maximum local-refinement iterations.
pub const MAX_REFINEMENT_ITERATIONS: usize = 8;
/// Refinement convergence tolerance (rad/sample).
pub const CONVERGENCE_TOL: f64 = 1e-10;

/// Result of a frequency estimate on one record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyEstimate {
    /// Estimated normalized frequency ω̂ ∈ (0, π) (rad/sample).
    pub omega_hat: f64,
    /// Coarse periodogram bin of the spectral peak.
    pub coarse_bin: usize,
    /// Local-refinement iterations actually used.
    pub refinement_iterations: usize,
    /// Set when the spectral peak sat on the guard-band boundary.
    pub boundary_warning: bool,
    /// Velocity (m/s) once attached via [`FrequencyEstimate::with_velocity`].
    pub velocity_hat: Option<f64>,
}

impl FrequencyEstimate {
    /// Attaches the velocity read-out v = ω̂·f_s·c/(4πf₁).
    pub fn with_velocity(mut self, fs: f64, carrier_f1: f64, consts: &PhysicalConstants) -> Self {
        self.velocity_hat = Some(omega_to_velocity(self.omega_hat, fs, carrier_f1, consts));
        self
    }
}

/// Single-frequency least-squares objective: energy of the record
/// explained by a·cos(ωn)+b·sin(ωn), n = 1..N, maximized over (a, b).
fn ls_objective(samples: &[f64], omega: f64) -> f64 {
    let mut cc = 0.0;
    let mut ss = 0.0;
    let mut cs = 0.0;
    let mut yc = 0.0;
    let mut ys = 0.0;
    for (i, &y) in samples.iter().enumerate() {
        let arg = omega * (i + 1) as f64;
        let (s, c) = arg.sin_cos();
        cc += c * c;
        ss += s * s;
        cs += c * s;
        yc += y * c;
        ys += y * s;
    }
    let det = cc * ss - cs * cs;
    if det.abs() < 1e-9 * cc * ss.max(1.0) {
        // Near-degenerate basis at the band edges.
        return yc * yc / cc.max(f64::MIN_POSITIVE);
    }
    let a = (ss * yc - cs * ys) / det;
    let b = (cc * ys - cs * yc) / det;
    a * yc + b * ys
}

/// Estimates the frequency of the dominant sinusoid in `record`, searching
/// inside the guard band (guard·π, (1−guard)·π).
pub fn estimate_frequency(
    record: &SampledWaveform,
    guard_fraction: f64,
) -> Result<FrequencyEstimate> {
    let samples = &record.samples;
    let n = samples.len();
    if n < 8 {
        return Err(RadarError::domain(format!(
            "estimate_frequency requires at least 8 samples, got {n}"
        )));
    }
    if !(0.0..0.5).contains(&guard_fraction) {
        return Err(RadarError::domain(format!(
            "guard_fraction must be in [0, 0.5), got {guard_fraction}"
        )));
    }
    if samples.iter().all(|&y| y == 0.0) {
        return Err(RadarError::NoSignal);
    }

    // Stage 1: zero-padded periodogram over the positive-frequency half.
    let m = ZERO_PAD_FACTOR * n;
    let mut buf: Vec<Complex64> = samples
        .iter()
        .map(|&y| Complex64::new(y, 0.0))
        .chain(std::iter::repeat(Complex64::new(0.0, 0.0)))
        .take(m)
        .collect();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);

    let half = m / 2;
    // Bin k has normalized frequency 2πk/m; guard keeps it off DC and
    // Nyquist where the image of a real sinusoid interferes.
    let k_min = ((guard_fraction * half as f64).floor() as usize + 1).max(1);
    let k_max = (((1.0 - guard_fraction) * half as f64).ceil() as usize).min(half) - 1;
    if k_min >= k_max {
        return Err(RadarError::domain(
            "guard band leaves no searchable spectrum",
        ));
    }
    let mut best_k = k_min;
    let mut best_p = f64::NEG_INFINITY;
    for (k, c) in buf.iter().enumerate().take(k_max + 1).skip(k_min) {
        let p = c.norm_sqr();
        if p > best_p {
            best_p = p;
            best_k = k;
        }
    }
    let boundary_warning = best_k == k_min || best_k == k_max;

    // Stage 2: three-point quadratic interpolation on the power spectrum.
    let pm = buf[best_k - 1].norm_sqr();
    let pp = buf[best_k + 1].norm_sqr();
    let denom = pm - 2.0 * best_p + pp;
    let delta = if denom < 0.0 {
        (0.5 * (pm - pp) / denom).clamp(-1.0, 1.0)
    } else {
        0.0
    };
    let bin_width = std::f64::consts::TAU / m as f64;
    let mut omega = (best_k as f64 + delta) * bin_width;

    // Stage 3: local maximization of the least-squares objective.
    let mut h = bin_width;
    let mut iterations = 0;
    let mut j0 = ls_objective(samples, omega);
    for _ in 0..MAX_REFINEMENT_ITERATIONS {
        iterations += 1;
        let jm = ls_objective(samples, omega - h);
        let jp = ls_objective(samples, omega + h);
        let curv = jm - 2.0 * j0 + jp;
        let step = if curv < 0.0 {
            (0.5 * h * (jm - jp) / curv).clamp(-h, h)
        } else if jp > j0 {
            h
        } else if jm > j0 {
            -h
        } else {
            0.0
        };
        omega += step;
        j0 = ls_objective(samples, omega);
        if step.abs() < CONVERGENCE_TOL {
            break;
        }
        h = (2.0 * step.abs()).max(h / 4.0).min(h);
    }

    let eps = 1e-12;
    Ok(FrequencyEstimate {
        omega_hat: omega.clamp(eps, std::f64::consts::PI - eps),
        coarse_bin: best_k,
        refinement_iterations: iterations,
        boundary_warning,
        velocity_hat: None,
    })
}

/// Least-squares amplitude and phase of a sinusoid α·cos(ωn+φ) fitted at
/// a fixed frequency. Returns (α, φ) with α ≥ 0 and φ ∈ [0, 2π).
pub fn amplitude_phase_at(record: &SampledWaveform, omega: f64) -> (f64, f64) {
    let samples = &record.samples;
    let mut cc = 0.0;
    let mut ss = 0.0;
    let mut cs = 0.0;
    let mut yc = 0.0;
    let mut ys = 0.0;
    for (i, &y) in samples.iter().enumerate() {
        let arg = omega * (i + 1) as f64;
        let (s, c) = arg.sin_cos();
        cc += c * c;
        ss += s * s;
        cs += c * s;
        yc += y * c;
        ys += y * s;
    }
    let det = (cc * ss - cs * cs).max(f64::MIN_POSITIVE);
    let a = (ss * yc - cs * ys) / det;
    let b = (cc * ys - cs * yc) / det;
    // a·cos + b·sin = α·cos(ωn + φ) with α = hypot(a,b), φ = atan2(−b, a).
    let alpha = a.hypot(b);
    let phi = (-b).atan2(a).rem_euclid(std::f64::consts::TAU);
    (alpha, phi)
}

/// Velocity from normalized frequency: v = ω·f_s·c/(4πf₁) (m/s).
pub fn omega_to_velocity(omega: f64, fs: f64, carrier_f1: f64, consts: &PhysicalConstants) -> f64 {
    omega * velocity_scale(fs, carrier_f1, consts)
}

/// The linear factor f_s·c/(4πf₁) mapping rad/sample to m/s.
pub fn velocity_scale(fs: f64, carrier_f1: f64, consts: &PhysicalConstants) -> f64 {
    fs * consts.light_speed / (4.0 * std::f64::consts::PI * carrier_f1)
}

/// Asymptotic Cramér–Rao bound on frequency variance:
/// σ_ω² ≥ 12/(γ·N·(N²−1)) (rad²/sample²).
pub fn acrb_omega(snr: f64, n: usize) -> Result<f64> {
    if !(snr > 0.0) {
        return Err(RadarError::domain(format!(
            "acrb_omega requires snr > 0, got {snr}"
        )));
    }
    if n < 2 {
        return Err(RadarError::domain(format!(
            "acrb_omega requires n >= 2, got {n}"
        )));
    }
    let nf = n as f64;
    Ok(12.0 / (snr * nf * (nf * nf - 1.0)))
}

/// Asymptotic Cramér–Rao bound on velocity variance:
/// σ_v² ≥ 3f_s²c²/(4π²γ(N²−1)N·f₁²) ((m/s)²).
pub fn acrb_velocity(
    snr: f64,
    n: usize,
    fs: f64,
    carrier_f1: f64,
    consts: &PhysicalConstants,
) -> Result<f64> {
    let scale = velocity_scale(fs, carrier_f1, consts);
    Ok(acrb_omega(snr, n)? * scale * scale)
}
