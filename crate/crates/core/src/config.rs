//! Experiment configuration: a flat, sectioned key-value document (TOML
//! syntax) with every default set to the nominal simulation parameters.
//!
//! Units are spelled out in key names; angular frequencies are given as
//! `*_mhz_times_2pi` keys and converted to rad/s at parse time.

use serde::Deserialize;

use crate::atomic::AtomicSystem;
use crate::constants::{PhysicalConstants, CODATA};
use crate::error::{RadarError, Result};
use crate::link::{doppler_shift, ClassicalReceiver, RadarLink, ReceiverNoise};

/// Fully validated experiment configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub atomic: AtomicSystem,
    pub link: RadarLink,
    pub noise: ReceiverNoise,
    pub classical: ClassicalReceiver,
    pub sweep: SweepSettings,
    pub montecarlo: MonteCarloSettings,
    pub output: OutputSettings,
    pub constants: PhysicalConstants,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSettings {
    pub r_min: f64,
    pub r_max: f64,
    pub points: usize,
    pub log_spacing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseMode {
    /// φ drawn uniformly on [0, 2π) per trial.
    Uniform,
    /// φ = 2πf₂τ_d mod 2π from the row's range.
    Deterministic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloSettings {
    pub trials: usize,
    pub master_seed: u64,
    pub target_velocity: f64,
    pub sample_rate: f64,
    pub num_samples: usize,
    pub phase_mode: PhaseMode,
    /// Debug switch: synthesize records with σ_z = 0.
    pub force_zero_noise: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputSettings {
    pub path: Option<String>,
    pub format: String,
}

// ---------------------------------------------------------------------------
// Raw file schema
// ---------------------------------------------------------------------------

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawConfig {
    atomic: RawAtomic,
    link: RawLink,
    noise: RawNoise,
    classical: RawClassical,
    sweep: RawSweep,
    montecarlo: RawMonteCarlo,
    output: RawOutput,
}

macro_rules! raw_section {
    ($name:ident { $($field:ident : $ty:ty = $default:expr),+ $(,)? }) => {
        #[derive(Debug, Deserialize)]
        #[serde(deny_unknown_fields, default)]
        struct $name {
            $($field: $ty),+
        }
        impl Default for $name {
            fn default() -> Self {
                Self { $($field: $default),+ }
            }
        }
    };
}

raw_section!(RawAtomic {
    gamma2_mhz_times_2pi: f64 = 5.2,
    omega_p_mhz_times_2pi: f64 = 4.75,
    omega_c_mhz_times_2pi: f64 = 1.66,
    omega_lo_mhz_times_2pi: f64 = 0.6,
    dipole_12_ea0: f64 = 2.5,
    dipole_rf_ea0: f64 = 551.35,
    density_n0_per_m3: f64 = 4.89e16,
    cell_length_m: f64 = 0.01,
    probe_wavelength_m: f64 = 509.4e-9,
    probe_dc_power_w: f64 = 20.7e-6,
});

raw_section!(RawLink {
    transmit_power_w: f64 = 10.0,
    transmit_gain_db: f64 = 10.0,
    rcs_m2: f64 = 1.0,
    sensor_area_m2: f64 = 1e-4,
    classical_antenna_area_m2: f64 = 1e-4,
    carrier_f1_hz: f64 = 29.539e9,
});

raw_section!(RawNoise {
    apd_gain: f64 = 50.0,
    responsivity_a_per_w: f64 = 0.6,
    load_resistance_ohm: f64 = 1000.0,
    dc_optical_power_w: f64 = 10e-6,
    dark_current_a: f64 = 1e-9,
    temperature_k: f64 = 300.0,
    bandwidth_hz: f64 = 1e6,
});

raw_section!(RawClassical {
    system_temperature_k: f64 = 1000.0,
});

raw_section!(RawSweep {
    r_min_m: f64 = 100.0,
    r_max_m: f64 = 10_000.0,
    points: usize = 40,
    log_spacing: bool = true,
});

raw_section!(RawMonteCarlo {
    trials: usize = 500,
    master_seed: u64 = 1,
    target_velocity_mps: f64 = 100.0,
    sample_rate_hz: f64 = 60_000.0,
    num_samples: usize = 2048,
    phase_mode: String = "uniform".to_string(),
    force_zero_noise: bool = false,
});

raw_section!(RawOutput {
    path: Option<String> = None,
    format: String = "csv".to_string(),
});

const MHZ_TIMES_2PI: f64 = 2.0 * std::f64::consts::PI * 1e6;

/// Parses and validates a configuration document. An empty document
/// yields the full nominal default configuration.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let raw: RawConfig =
        toml::from_str(text).map_err(|e| RadarError::Config(e.to_string()))?;
    let consts = CODATA;

    let atomic = AtomicSystem::new(
        raw.atomic.gamma2_mhz_times_2pi * MHZ_TIMES_2PI,
        raw.atomic.omega_p_mhz_times_2pi * MHZ_TIMES_2PI,
        raw.atomic.omega_c_mhz_times_2pi * MHZ_TIMES_2PI,
        raw.atomic.omega_lo_mhz_times_2pi * MHZ_TIMES_2PI,
        consts.dipole_from_ea0(raw.atomic.dipole_12_ea0),
        consts.dipole_from_ea0(raw.atomic.dipole_rf_ea0),
        raw.atomic.density_n0_per_m3,
        raw.atomic.cell_length_m,
        raw.atomic.probe_wavelength_m,
        raw.atomic.probe_dc_power_w,
    )
    .map_err(config_err)?;

    let link = RadarLink {
        transmit_power: raw.link.transmit_power_w,
        // Gain is written in dB in the file and stored linear.
        transmit_gain: 10f64.powf(raw.link.transmit_gain_db / 10.0),
        rcs: raw.link.rcs_m2,
        sensor_area: raw.link.sensor_area_m2,
        classical_antenna_area: raw.link.classical_antenna_area_m2,
        carrier_f1: raw.link.carrier_f1_hz,
    };
    link.validate().map_err(config_err)?;

    let noise = ReceiverNoise {
        apd_gain: raw.noise.apd_gain,
        responsivity: raw.noise.responsivity_a_per_w,
        load_resistance: raw.noise.load_resistance_ohm,
        dc_optical_power: raw.noise.dc_optical_power_w,
        dark_current: raw.noise.dark_current_a,
        temperature: raw.noise.temperature_k,
        bandwidth: raw.noise.bandwidth_hz,
    };
    noise.validate().map_err(config_err)?;

    let classical = ClassicalReceiver {
        system_temperature: raw.classical.system_temperature_k,
    };
    classical.validate().map_err(config_err)?;

    let sweep = SweepSettings {
        r_min: raw.sweep.r_min_m,
        r_max: raw.sweep.r_max_m,
        points: raw.sweep.points,
        log_spacing: raw.sweep.log_spacing,
    };
    if !(sweep.r_min > 0.0) || !(sweep.r_min < sweep.r_max) {
        return Err(RadarError::Config(format!(
            "sweep: requires 0 < r_min_m < r_max_m, got r_min_m={}, r_max_m={}",
            sweep.r_min, sweep.r_max
        )));
    }
    if sweep.points < 2 {
        return Err(RadarError::Config(format!(
            "sweep.points must be >= 2, got {}",
            sweep.points
        )));
    }

    let phase_mode = match raw.montecarlo.phase_mode.as_str() {
        "uniform" => PhaseMode::Uniform,
        "deterministic" => PhaseMode::Deterministic,
        other => {
            return Err(RadarError::Config(format!(
                "montecarlo.phase_mode must be \"uniform\" or \"deterministic\", got \"{other}\""
            )))
        }
    };
    let montecarlo = MonteCarloSettings {
        trials: raw.montecarlo.trials,
        master_seed: raw.montecarlo.master_seed,
        target_velocity: raw.montecarlo.target_velocity_mps,
        sample_rate: raw.montecarlo.sample_rate_hz,
        num_samples: raw.montecarlo.num_samples,
        phase_mode,
        force_zero_noise: raw.montecarlo.force_zero_noise,
    };
    if montecarlo.trials < 1 {
        return Err(RadarError::Config("montecarlo.trials must be >= 1".into()));
    }
    if montecarlo.num_samples < 8 {
        return Err(RadarError::Config(format!(
            "montecarlo.num_samples must be >= 8, got {}",
            montecarlo.num_samples
        )));
    }
    if !(montecarlo.sample_rate > 0.0) {
        return Err(RadarError::Config(format!(
            "montecarlo.sample_rate_hz must be > 0, got {}",
            montecarlo.sample_rate
        )));
    }
    // Nyquist: the beat at 2|v|f1/c must sit below fs/2.
    let beat = doppler_shift(montecarlo.target_velocity, link.carrier_f1, &consts).abs();
    if 2.0 * beat >= montecarlo.sample_rate {
        return Err(RadarError::Config(format!(
            "Nyquist violation: montecarlo.target_velocity_mps={} and link.carrier_f1_hz={} imply a beat of {beat} Hz, but montecarlo.sample_rate_hz={} gives fs/2 = {}",
            montecarlo.target_velocity,
            link.carrier_f1,
            montecarlo.sample_rate,
            montecarlo.sample_rate / 2.0
        )));
    }

    let output = OutputSettings {
        path: raw.output.path,
        format: raw.output.format,
    };
    if output.format != "csv" {
        return Err(RadarError::Config(format!(
            "output.format: only \"csv\" is supported, got \"{}\"",
            output.format
        )));
    }

    Ok(ExperimentConfig {
        atomic,
        link,
        noise,
        classical,
        sweep,
        montecarlo,
        output,
        constants: consts,
    })
}

fn config_err(e: RadarError) -> RadarError {
    RadarError::Config(e.to_string())
}

impl ExperimentConfig {
    /// The full nominal default configuration.
    pub fn defaults() -> Self {
        parse_config("").expect("built-in defaults must parse")
    }
}
