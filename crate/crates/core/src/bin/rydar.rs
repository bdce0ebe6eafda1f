//! Command-line driver for the Rydberg quantum radar experiments.
//!
//! Subcommands: `compute-c`, `snr-sweep`, `rmse-sweep`, `dump-waveform`.
//! Exit codes: 0 success, 1 validation error, 2 i/o error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use rydar_core::config::{parse_config, ExperimentConfig};
use rydar_core::error::{RadarError, Result};
use rydar_core::sweep::{self, compute_c_report, run_rmse_sweep, run_snr_sweep};
use rydar_core::waveform::{self, WaveformParams};
use rydar_core::{atomic, link};

#[derive(Parser)]
#[command(
    name = "rydar",
    about = "Rydberg-atom quantum radar simulator: SNR and velocity-estimation sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Configuration file (TOML key-value sections); defaults used when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override montecarlo.master_seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override montecarlo.trials.
    #[arg(long)]
    trials: Option<usize>,
    /// Suppress progress chatter on stderr.
    #[arg(long)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the optical gain constant C and every intermediate of its chain.
    ComputeC(CommonOpts),
    /// SNR versus range for the quantum and classical receivers (CSV).
    SnrSweep(CommonOpts),
    /// Monte Carlo velocity-estimation RMSE versus range (CSV).
    RmseSweep(CommonOpts),
    /// Emit one synthesized APD sample record as CSV.
    DumpWaveform {
        #[command(flatten)]
        common: CommonOpts,
        /// Target range for the synthesized echo (m).
        #[arg(long, default_value_t = 1000.0)]
        range_m: f64,
    },
}

fn load_config(opts: &CommonOpts) -> Result<ExperimentConfig> {
    let text = match &opts.config {
        Some(path) => fs::read_to_string(path)?,
        None => String::new(),
    };
    let mut cfg = parse_config(&text)?;
    if let Some(seed) = opts.seed {
        cfg.montecarlo.master_seed = seed;
    }
    if let Some(trials) = opts.trials {
        if trials < 1 {
            return Err(RadarError::Config("--trials must be >= 1".into()));
        }
        cfg.montecarlo.trials = trials;
    }
    Ok(cfg)
}

fn emit(opts: &CommonOpts, text: &str) -> Result<()> {
    match &opts.out {
        Some(path) => fs::write(path, text)?,
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn dump_waveform(cfg: &ExperimentConfig, range_m: f64) -> Result<String> {
    let consts = &cfg.constants;
    let c_gain = atomic::optical_gain_c(&cfg.atomic, consts)?;
    let p_r = link::received_power(&cfg.link, range_m)?;
    let a2 = link::echo_field_amplitude(p_r, cfg.link.sensor_area, consts)?;
    let beat = link::doppler_shift(cfg.montecarlo.target_velocity, cfg.link.carrier_f1, consts);
    let lo_amplitude = cfg.atomic.omega_lo * consts.hbar / cfg.atomic.dipole_rf;
    let params = WaveformParams::from_chain(
        lo_amplitude,
        a2,
        beat,
        0.0,
        cfg.montecarlo.sample_rate,
        cfg.montecarlo.num_samples,
        cfg.noise.apd_gain,
        cfg.noise.responsivity,
        c_gain,
    )?;
    let sigma = if cfg.montecarlo.force_zero_noise {
        0.0
    } else {
        link::noise_variance(&cfg.noise, consts).sqrt()
    };
    let seed = waveform::derive_seed(cfg.montecarlo.master_seed, sweep::RECEIVER_QUANTUM, 0, 0);
    let record = waveform::synthesize_apd_record(&params, sigma, seed)?;
    let mut buf = Vec::new();
    waveform::write_waveform_csv(&record, &mut buf)?;
    Ok(String::from_utf8(buf).expect("CSV output is ASCII"))
}

fn run(cli: Cli) -> Result<()> {
    match &cli.command {
        Command::ComputeC(opts) => {
            let cfg = load_config(opts)?;
            let mut report = compute_c_report(&cfg)?;
            let gq = link::quantum_snr(
                &cfg.link,
                &cfg.noise,
                atomic::optical_gain_c(&cfg.atomic, &cfg.constants)?,
                1000.0,
                &cfg.constants,
            )?;
            if !opts.quiet {
                report.push_str(&format!(
                    "quantum SNR at 1 km with this C: {:.3} dB\n",
                    link::to_db(gq)
                ));
            }
            emit(opts, &report)
        }
        Command::SnrSweep(opts) => {
            let cfg = load_config(opts)?;
            let result = run_snr_sweep(&cfg)?;
            emit(opts, &sweep::csv_string(&result))
        }
        Command::RmseSweep(opts) => {
            let cfg = load_config(opts)?;
            if !opts.quiet {
                eprintln!(
                    "rmse-sweep: {} ranges x {} trials x 2 receivers, N = {}, seed = {}",
                    cfg.sweep.points,
                    cfg.montecarlo.trials,
                    cfg.montecarlo.num_samples,
                    cfg.montecarlo.master_seed
                );
            }
            let result = run_rmse_sweep(&cfg)?;
            if !opts.quiet {
                if let (Some(first), Some(last)) = (result.rows.first(), result.rows.last()) {
                    eprintln!(
                        "rmse-sweep: quantum RMSE {:.3e} m/s at {:.0} m ... {:.3e} m/s at {:.0} m",
                        first.rmse_quantum_mps.unwrap_or(f64::NAN),
                        first.range_m,
                        last.rmse_quantum_mps.unwrap_or(f64::NAN),
                        last.range_m
                    );
                }
            }
            emit(opts, &sweep::csv_string(&result))
        }
        Command::DumpWaveform { common, range_m } => {
            let cfg = load_config(common)?;
            let text = dump_waveform(&cfg, *range_m)?;
            emit(common, &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(sweep::exit_code_for(&err) as u8)
        }
    }
}
