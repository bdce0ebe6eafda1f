//! Superheterodyne beat waveform and noisy APD sample records.
//!
//! Only the slow beat envelope is ever sampled; the optical carrier is
//! filtered out physically. Records are reproducible: the noise stream is
//! a ChaCha12 generator keyed by a documented mix of
//! (master_seed, receiver_id, range_index, trial_index).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::error::{RadarError, Result};

/// Maximum echo-to-LO amplitude ratio accepted by the linearized model.
pub const MAX_ECHO_TO_LO_RATIO: f64 = 0.1;

/// Parameters of one sampled beat record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveformParams {
    /// LO field amplitude A₁ (V/m).
    pub lo_amplitude: f64,
    /// Echo field amplitude A₂ (V/m).
    pub echo_amplitude: f64,
    /// Beat (intermediate) frequency Δf (Hz).
    pub beat_freq: f64,
    /// Beat phase φ, wrapped to [0, 2π).
    pub phase: f64,
    /// Sample rate f_s (Hz).
    pub sample_rate: f64,
    /// Record length N.
    pub num_samples: usize,
    /// Current-signal amplitude α = M·𝓡·C·A₂ (A).
    pub signal_amplitude: f64,
}

impl WaveformParams {
    /// Builds params tying the current amplitude to the physical chain:
    /// α = apd_gain · responsivity · c_gain · echo_amplitude.
    #[allow(clippy::too_many_arguments)]
    pub fn from_chain(
        lo_amplitude: f64,
        echo_amplitude: f64,
        beat_freq: f64,
        phase: f64,
        sample_rate: f64,
        num_samples: usize,
        apd_gain: f64,
        responsivity: f64,
        c_gain: f64,
    ) -> Result<Self> {
        Self::with_amplitude(
            lo_amplitude,
            echo_amplitude,
            beat_freq,
            phase,
            sample_rate,
            num_samples,
            apd_gain * responsivity * c_gain * echo_amplitude,
        )
    }

    /// Raw constructor for callers supplying the current amplitude
    /// directly (e.g. the unit-amplitude classical-receiver model).
    pub fn with_amplitude(
        lo_amplitude: f64,
        echo_amplitude: f64,
        beat_freq: f64,
        phase: f64,
        sample_rate: f64,
        num_samples: usize,
        signal_amplitude: f64,
    ) -> Result<Self> {
        if !(lo_amplitude > 0.0) {
            return Err(RadarError::domain(format!(
                "WaveformParams.lo_amplitude must be > 0, got {lo_amplitude}"
            )));
        }
        if echo_amplitude < 0.0 {
            return Err(RadarError::domain(format!(
                "WaveformParams.echo_amplitude must be >= 0, got {echo_amplitude}"
            )));
        }
        if echo_amplitude > MAX_ECHO_TO_LO_RATIO * lo_amplitude {
            return Err(RadarError::ModelValidity(format!(
                "echo amplitude {echo_amplitude} exceeds {MAX_ECHO_TO_LO_RATIO} of LO amplitude {lo_amplitude}; linearized beat model invalid"
            )));
        }
        if !(sample_rate > 2.0 * beat_freq.abs()) {
            return Err(RadarError::domain(format!(
                "Nyquist violation: sample_rate {sample_rate} Hz must exceed 2|beat_freq| = {}",
                2.0 * beat_freq.abs()
            )));
        }
        if num_samples < 8 {
            return Err(RadarError::domain(format!(
                "WaveformParams.num_samples must be >= 8, got {num_samples}"
            )));
        }
        Ok(WaveformParams {
            lo_amplitude,
            echo_amplitude,
            beat_freq,
            phase: phase.rem_euclid(std::f64::consts::TAU),
            sample_rate,
            num_samples,
            signal_amplitude,
        })
    }

    /// Normalized frequency ω = 2πΔf/f_s (rad/sample).
    pub fn omega(&self) -> f64 {
        std::f64::consts::TAU * self.beat_freq / self.sample_rate
    }
}

/// Generation metadata kept with each record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecordMetadata {
    pub seed: u64,
    pub true_beat_freq: f64,
    pub true_phase: f64,
    pub sigma_z: f64,
}

/// A finite record of APD current samples.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledWaveform {
    /// Current samples y[n], n = 1..N (A).
    pub samples: Vec<f64>,
    /// Sample rate f_s (Hz).
    pub sample_rate: f64,
    pub metadata: RecordMetadata,
}

/// Exact beat envelope E_s(t) = sqrt(A₁²+A₂²+2A₁A₂cos(2πΔf·t+φ)).
pub fn beat_envelope_exact(a1: f64, a2: f64, delta_f: f64, phi: f64, t: f64) -> Result<f64> {
    if a1 < 0.0 || a2 < 0.0 {
        return Err(RadarError::domain(format!(
            "beat_envelope_exact requires nonnegative amplitudes, got {a1}, {a2}"
        )));
    }
    let c = (std::f64::consts::TAU * delta_f * t + phi).cos();
    Ok((a1 * a1 + a2 * a2 + 2.0 * a1 * a2 * c).sqrt())
}

/// Strong-LO linearization E_s(t) ≈ A₁ + A₂cos(2πΔf·t+φ); requires
/// A₂ ≤ 0.1·A₁.
pub fn beat_envelope_linearized(a1: f64, a2: f64, delta_f: f64, phi: f64, t: f64) -> Result<f64> {
    if a1 <= 0.0 || a2 < 0.0 {
        return Err(RadarError::domain(format!(
            "beat_envelope_linearized requires a1 > 0 and a2 >= 0, got {a1}, {a2}"
        )));
    }
    if a2 > MAX_ECHO_TO_LO_RATIO * a1 {
        return Err(RadarError::ModelValidity(format!(
            "beat_envelope_linearized requires a2 <= {MAX_ECHO_TO_LO_RATIO}*a1, got a2/a1 = {}",
            a2 / a1
        )));
    }
    Ok(a1 + a2 * (std::f64::consts::TAU * delta_f * t + phi).cos())
}

/// Probe power P(t) = P₀ + C·A₂cos(2πΔf·t+φ) seen at the detector.
pub fn probe_power_waveform(
    p0: f64,
    c_gain: f64,
    a2: f64,
    delta_f: f64,
    phi: f64,
    t: f64,
) -> Result<f64> {
    if !(p0 > 0.0) {
        return Err(RadarError::domain(format!(
            "probe_power_waveform requires p0 > 0, got {p0}"
        )));
    }
    let depth = c_gain * a2;
    if depth >= p0 {
        return Err(RadarError::ModelValidity(format!(
            "modulation depth C*A2 = {depth} W is not below the DC power {p0} W; probe power would go negative"
        )));
    }
    Ok(p0 + depth * (std::f64::consts::TAU * delta_f * t + phi).cos())
}

/// Mixes a seed tuple into a single 64-bit stream key.
///
/// SplitMix64 finalization over the fields in order; this mapping is part
/// of the reproducibility contract for sweep outputs.
pub fn derive_seed(master_seed: u64, receiver_id: u64, range_index: u64, trial_index: u64) -> u64 {
    let mut state = master_seed;
    for word in [receiver_id, range_index, trial_index] {
        state = splitmix64(state.wrapping_add(0x9E37_79B9_7F4A_7C15).wrapping_add(word));
    }
    state
}

fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic noise stream for a derived seed.
pub fn noise_rng(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

/// Samples y[n] = α·cos(ωn+φ) + z[n] for n = 1..N with
/// z[n] ~ N(0, σ²) drawn from `rng`.
pub fn sample_noisy_sinusoid(
    alpha: f64,
    omega: f64,
    phi: f64,
    num_samples: usize,
    sigma: f64,
    rng: &mut ChaCha12Rng,
) -> Vec<f64> {
    (1..=num_samples)
        .map(|n| {
            let noise: f64 = if sigma > 0.0 {
                let g: f64 = rng.sample(StandardNormal);
                sigma * g
            } else {
                0.0
            };
            alpha * (omega * n as f64 + phi).cos() + noise
        })
        .collect()
}

/// Generates the noisy APD record for one trial. Deterministic for a
/// given `(params, sigma_z, seed)`.
pub fn synthesize_apd_record(
    params: &WaveformParams,
    sigma_z: f64,
    seed: u64,
) -> Result<SampledWaveform> {
    if sigma_z < 0.0 {
        return Err(RadarError::domain(format!(
            "synthesize_apd_record requires sigma_z >= 0, got {sigma_z}"
        )));
    }
    let mut rng = noise_rng(seed);
    let samples = sample_noisy_sinusoid(
        params.signal_amplitude,
        params.omega(),
        params.phase,
        params.num_samples,
        sigma_z,
        &mut rng,
    );
    Ok(SampledWaveform {
        samples,
        sample_rate: params.sample_rate,
        metadata: RecordMetadata {
            seed,
            true_beat_freq: params.beat_freq,
            true_phase: params.phase,
            sigma_z,
        },
    })
}

/// Writes a record as `n,t_seconds,y_amperes` CSV rows.
pub fn write_waveform_csv<W: std::io::Write>(record: &SampledWaveform, out: &mut W) -> Result<()> {
    writeln!(out, "n,t_seconds,y_amperes")?;
    for (i, y) in record.samples.iter().enumerate() {
        let n = i + 1;
        let t = n as f64 / record.sample_rate;
        writeln!(out, "{n},{t},{y}")?;
    }
    Ok(())
}
