//! Experiment orchestration: SNR sweeps, Monte Carlo RMSE sweeps, CSV
//! emission, and the gain-constant report.
//!
//! Sweeps are deterministic: every trial's noise stream is keyed by
//! (master_seed, receiver_id, range_index, trial_index), and RMSE
//! aggregation uses compensated summation so the result does not depend
//! on accumulation order.

use rayon::prelude::*;

use crate::atomic::{optical_gain_breakdown, OpticalGainBreakdown};
use crate::config::{ExperimentConfig, PhaseMode};
use crate::error::{RadarError, Result};
use crate::estimator::{self, estimate_frequency, DEFAULT_GUARD_FRACTION};
use crate::link;
use crate::waveform::{self, SampledWaveform, WaveformParams};

/// Receiver ids used in seed derivation.
pub const RECEIVER_QUANTUM: u64 = 0;
pub const RECEIVER_CLASSICAL: u64 = 1;

/// One range point of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub range_m: f64,
    pub snr_quantum_linear: f64,
    pub snr_quantum_db: f64,
    pub snr_classical_linear: f64,
    pub snr_classical_db: f64,
    pub rmse_quantum_mps: Option<f64>,
    pub rmse_classical_mps: Option<f64>,
    pub acrb_rms_quantum_mps: Option<f64>,
    pub acrb_rms_classical_mps: Option<f64>,
    pub trials_used: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

/// Strictly increasing range grid from the sweep settings.
pub fn range_grid(cfg: &ExperimentConfig) -> Vec<f64> {
    let s = &cfg.sweep;
    let n = s.points;
    (0..n)
        .map(|i| {
            let frac = i as f64 / (n - 1) as f64;
            if s.log_spacing {
                s.r_min * (s.r_max / s.r_min).powf(frac)
            } else {
                s.r_min + (s.r_max - s.r_min) * frac
            }
        })
        .collect()
}

fn snr_pair(cfg: &ExperimentConfig, c_gain: f64, range_m: f64) -> Result<(f64, f64)> {
    let gq = link::quantum_snr(&cfg.link, &cfg.noise, c_gain, range_m, &cfg.constants)?;
    let gs = link::classical_snr(
        &cfg.link,
        &cfg.classical,
        cfg.noise.bandwidth,
        range_m,
        &cfg.constants,
    )?;
    Ok((gq, gs))
}

/// SNR-versus-range sweep for both receivers. No randomness involved.
pub fn run_snr_sweep(cfg: &ExperimentConfig) -> Result<SweepResult> {
    let c_gain = crate::atomic::optical_gain_c(&cfg.atomic, &cfg.constants)?;
    let rows = range_grid(cfg)
        .into_iter()
        .map(|r| {
            let (gq, gs) = snr_pair(cfg, c_gain, r)?;
            Ok(SweepRow {
                range_m: r,
                snr_quantum_linear: gq,
                snr_quantum_db: link::to_db(gq),
                snr_classical_linear: gs,
                snr_classical_db: link::to_db(gs),
                rmse_quantum_mps: None,
                rmse_classical_mps: None,
                acrb_rms_quantum_mps: None,
                acrb_rms_classical_mps: None,
                trials_used: None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult { rows })
}

/// Compensated (Kahan) sum; keeps RMSE independent of trial ordering to
/// well below the asserted 1e-12 relative tolerance.
fn kahan_sum(values: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for &v in values {
        let y = v - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum
}

struct TrialSetup {
    alpha: f64,
    sigma: f64,
    omega: f64,
    deterministic_phase: Option<f64>,
}

fn run_trials(
    cfg: &ExperimentConfig,
    setup: &TrialSetup,
    receiver_id: u64,
    range_index: usize,
    true_velocity: f64,
) -> f64 {
    let mc = &cfg.montecarlo;
    let sq_errors: Vec<f64> = (0..mc.trials)
        .into_par_iter()
        .map(|trial| {
            let seed = waveform::derive_seed(
                mc.master_seed,
                receiver_id,
                range_index as u64,
                trial as u64,
            );
            let mut rng = waveform::noise_rng(seed);
            let phi = match setup.deterministic_phase {
                Some(p) => p,
                None => {
                    use rand::Rng;
                    rng.random::<f64>() * std::f64::consts::TAU
                }
            };
            let samples = waveform::sample_noisy_sinusoid(
                setup.alpha,
                setup.omega,
                phi,
                mc.num_samples,
                setup.sigma,
                &mut rng,
            );
            let record = SampledWaveform {
                samples,
                sample_rate: mc.sample_rate,
                metadata: waveform::RecordMetadata {
                    seed,
                    true_beat_freq: setup.omega * mc.sample_rate / std::f64::consts::TAU,
                    true_phase: phi,
                    sigma_z: setup.sigma,
                },
            };
            let v_hat = match estimate_frequency(&record, DEFAULT_GUARD_FRACTION) {
                Ok(est) => estimator::omega_to_velocity(
                    est.omega_hat,
                    mc.sample_rate,
                    cfg.link.carrier_f1,
                    &cfg.constants,
                ),
                // A failed estimate still counts in the row's RMSE.
                Err(_) => 0.0,
            };
            let e = v_hat - true_velocity;
            e * e
        })
        .collect();
    (kahan_sum(&sq_errors) / mc.trials as f64).sqrt()
}

/// Monte Carlo RMSE-versus-range sweep for both receivers.
///
/// The quantum receiver's record amplitude and noise come from the
/// physical chain (α = M𝓡CA₂, σ_z from the APD model). The classical
/// receiver observes the same beat tone after conventional mixing,
/// modeled as a unit-amplitude sinusoid with noise variance 1/(2γ_s) so
/// its per-sample SNR equals γ_s.
pub fn run_rmse_sweep(cfg: &ExperimentConfig) -> Result<SweepResult> {
    let mc = &cfg.montecarlo;
    let consts = &cfg.constants;
    let c_gain = crate::atomic::optical_gain_c(&cfg.atomic, consts)?;
    let v = mc.target_velocity;
    let beat = link::doppler_shift(v, cfg.link.carrier_f1, consts);
    let sigma_z = link::noise_variance(&cfg.noise, consts).sqrt();
    // LO field amplitude implied by the configured LO Rabi frequency.
    let lo_amplitude = cfg.atomic.omega_lo * consts.hbar / cfg.atomic.dipole_rf;

    let mut rows = Vec::with_capacity(cfg.sweep.points);
    for (range_index, r) in range_grid(cfg).into_iter().enumerate() {
        let (gq, gs) = snr_pair(cfg, c_gain, r)?;

        let deterministic_phase = match mc.phase_mode {
            PhaseMode::Uniform => None,
            PhaseMode::Deterministic => {
                let f2 = (1.0 + 2.0 * v / consts.light_speed) * cfg.link.carrier_f1;
                let tau_d = link::round_trip_delay(r, consts)?;
                Some((std::f64::consts::TAU * f2 * tau_d).rem_euclid(std::f64::consts::TAU))
            }
        };

        // Quantum receiver: physical signal chain.
        let p_r = link::received_power(&cfg.link, r)?;
        let a2 = link::echo_field_amplitude(p_r, cfg.link.sensor_area, consts)?;
        let params = WaveformParams::from_chain(
            lo_amplitude,
            a2,
            beat,
            0.0,
            mc.sample_rate,
            mc.num_samples,
            cfg.noise.apd_gain,
            cfg.noise.responsivity,
            c_gain,
        )?;
        let q_setup = TrialSetup {
            alpha: params.signal_amplitude,
            sigma: if mc.force_zero_noise { 0.0 } else { sigma_z },
            omega: params.omega(),
            deterministic_phase,
        };
        let rmse_q = run_trials(cfg, &q_setup, RECEIVER_QUANTUM, range_index, v);

        // Classical receiver: unit amplitude, per-sample SNR = gamma_s.
        let c_setup = TrialSetup {
            alpha: 1.0,
            sigma: if mc.force_zero_noise {
                0.0
            } else {
                (1.0 / (2.0 * gs)).sqrt()
            },
            omega: params.omega(),
            deterministic_phase,
        };
        let rmse_c = run_trials(cfg, &c_setup, RECEIVER_CLASSICAL, range_index, v);

        let acrb_q = estimator::acrb_velocity(
            gq,
            mc.num_samples,
            mc.sample_rate,
            cfg.link.carrier_f1,
            consts,
        )?
        .sqrt();
        let acrb_c = estimator::acrb_velocity(
            gs,
            mc.num_samples,
            mc.sample_rate,
            cfg.link.carrier_f1,
            consts,
        )?
        .sqrt();

        rows.push(SweepRow {
            range_m: r,
            snr_quantum_linear: gq,
            snr_quantum_db: link::to_db(gq),
            snr_classical_linear: gs,
            snr_classical_db: link::to_db(gs),
            rmse_quantum_mps: Some(rmse_q),
            rmse_classical_mps: Some(rmse_c),
            acrb_rms_quantum_mps: Some(acrb_q),
            acrb_rms_classical_mps: Some(acrb_c),
            trials_used: Some(mc.trials),
        });
    }
    Ok(SweepResult { rows })
}

/// Exact CSV header emitted by [`write_csv`].
pub const CSV_HEADER: &str =
    "range_m,snr_quantum_db,snr_classical_db,rmse_quantum_mps,rmse_classical_mps,acrb_rms_quantum_mps,acrb_rms_classical_mps";

fn opt_field(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Writes a sweep as CSV. Numbers use shortest round-trip decimals;
/// columns not produced by the sweep type are left empty.
pub fn write_csv<W: std::io::Write>(result: &SweepResult, out: &mut W) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in &result.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            row.range_m,
            row.snr_quantum_db,
            row.snr_classical_db,
            opt_field(row.rmse_quantum_mps),
            opt_field(row.rmse_classical_mps),
            opt_field(row.acrb_rms_quantum_mps),
            opt_field(row.acrb_rms_classical_mps),
        )?;
    }
    Ok(())
}

/// Renders a sweep to a CSV string.
pub fn csv_string(result: &SweepResult) -> String {
    let mut buf = Vec::new();
    write_csv(result, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("CSV output is ASCII")
}

/// Textual report of the optical-gain chain with every intermediate.
pub fn compute_c_report(cfg: &ExperimentConfig) -> Result<String> {
    let b: OpticalGainBreakdown = optical_gain_breakdown(&cfg.atomic, &cfg.constants)?;
    let mut s = String::new();
    use std::fmt::Write;
    writeln!(s, "optical gain constant chain").unwrap();
    writeln!(s, "  k_p      = {:.6e} rad/m   (2*pi / probe wavelength)", b.k_p).unwrap();
    writeln!(s, "  C0       = {:.6e}         (susceptibility scale, dimensionless)", b.c0).unwrap();
    writeln!(s, "  Abar     = {:.6e}         (DC absorption factor)", b.abar).unwrap();
    writeln!(s, "  Gamma    = {:.6e} rad/s   (EIT linewidth)", b.gamma_eit).unwrap();
    writeln!(s, "  Lambda   = {:.6e}         (transmission ratio at LO bias)", b.lambda_at_lo).unwrap();
    writeln!(s, "  kappa_p  = {:.6e} s/rad   (bias-point slope)", b.kappa_p).unwrap();
    writeln!(s, "  alpha    = {:.6e}         (k_p * L * C0 * Abar)", b.alpha).unwrap();
    writeln!(s, "  kappa    = {:.6e} W*s/rad (alpha * P0_probe * kappa_p)", b.kappa).unwrap();
    writeln!(s, "  C        = {:.6e} W/(V/m) (signed, kappa * d_RF / hbar)", b.c_signed).unwrap();
    writeln!(s, "  |C|      = {:.6e} W/(V/m)", b.c_magnitude).unwrap();
    writeln!(
        s,
        "note: Rabi frequencies follow the convention Omega = d*E/hbar (angular)."
    )
    .unwrap();
    Ok(s)
}

/// Error classification for CLI exit codes: 1 for validation problems,
/// 2 for i/o.
pub fn exit_code_for(err: &RadarError) -> i32 {
    match err {
        RadarError::Io(_) => 2,
        _ => 1,
    }
}
