//! End-to-end simulation of a Rydberg-atom quantum radar receiver.
//!
//! The chain runs: atomic optical response (EIT susceptibility and the
//! LO-dressed optical gain constant) → radar link budget → APD noise and
//! receiver SNR → superheterodyne beat waveform synthesis → beat-frequency
//! (Doppler velocity) estimation with Cramér–Rao benchmarks, plus an
//! experiment layer producing SNR-vs-range and RMSE-vs-range CSV sweeps
//! comparing the quantum receiver against a classical dipole-antenna
//! radar.
//!
//! # Example
//!
//! ```
//! use rydar_core::prelude::*;
//!
//! let consts = PhysicalConstants::codata();
//! let atomic = AtomicSystem::cesium_defaults(&consts);
//! let c_gain = optical_gain_c(&atomic, &consts).unwrap();
//! assert!((c_gain - 6.59e-4).abs() / 6.59e-4 < 0.15);
//!
//! let cfg = ExperimentConfig::defaults();
//! let snr = quantum_snr(&cfg.link, &cfg.noise, c_gain, 1000.0, &consts).unwrap();
//! assert!(snr > 1.0);
//! ```

// `!(x > 0.0)` is used deliberately throughout validation so NaN fails
// closed; frozen test fixtures keep every digit of their oracle values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::excessive_precision)]

pub mod atomic;
pub mod config;
pub mod constants;
pub mod error;
pub mod estimator;
pub mod link;
pub mod sweep;
pub mod waveform;

pub mod prelude {
    pub use crate::atomic::{
        c0_coefficient, dc_absorption_abar, eit_linewidth_gamma, field_from_intensity,
        gaussian_beam_intensity, im_rho21_resonant, kappa_p_slope, lambda_ratio,
        optical_gain_breakdown, optical_gain_c, probe_transmission, rabi_from_field, AtomicSystem,
        OpticalGainBreakdown,
    };
    pub use crate::config::{parse_config, ExperimentConfig, PhaseMode};
    pub use crate::constants::{PhysicalConstants, CODATA};
    pub use crate::error::{RadarError, Result};
    pub use crate::estimator::{
        acrb_omega, acrb_velocity, estimate_frequency, omega_to_velocity, velocity_scale,
        FrequencyEstimate,
    };
    pub use crate::link::{
        classical_snr, doppler_shift, echo_field_amplitude, noise_variance, quantum_snr,
        quantum_snr_from_amplitude, received_power, round_trip_delay, to_db, ClassicalReceiver,
        RadarLink, ReceiverNoise,
    };
    pub use crate::sweep::{
        compute_c_report, csv_string, run_rmse_sweep, run_snr_sweep, write_csv, SweepResult,
        SweepRow,
    };
    pub use crate::waveform::{
        beat_envelope_exact, beat_envelope_linearized, derive_seed, probe_power_waveform,
        synthesize_apd_record, SampledWaveform, WaveformParams,
    };
}
