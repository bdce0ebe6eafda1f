//! Python bindings for the `rydar` quantum-radar simulator.
//!
//! Exposes the main pipeline as a `rydar` extension module: an
//! `Experiment` class wrapping a full configuration, a `FrequencyEstimate`
//! result type, and module-level helpers for the estimator and its
//! Cramér–Rao benchmarks.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use rydar_core::prelude::*;
use rydar_core::waveform::{noise_rng, sample_noisy_sinusoid, RecordMetadata};

fn to_py_err(err: RadarError) -> PyErr {
    PyValueError::new_err(err.to_string())
}

/// A fully resolved experiment scenario (atomic system, link budget,
/// receiver noise, sweep and Monte Carlo settings).
#[pyclass(name = "Experiment")]
struct PyExperiment {
    cfg: ExperimentConfig,
}

#[pymethods]
impl PyExperiment {
    /// Builds a scenario from TOML text; an empty string gives the
    /// built-in defaults.
    #[new]
    #[pyo3(signature = (config_text = ""))]
    fn new(config_text: &str) -> PyResult<Self> {
        Ok(PyExperiment {
            cfg: parse_config(config_text).map_err(to_py_err)?,
        })
    }

    /// Optical gain constant |C| in W/(V/m).
    fn optical_gain_c(&self) -> PyResult<f64> {
        optical_gain_c(&self.cfg.atomic, &self.cfg.constants).map_err(to_py_err)
    }

    /// Human-readable report of the full optical-gain chain.
    fn gain_report(&self) -> PyResult<String> {
        compute_c_report(&self.cfg).map_err(to_py_err)
    }

    /// Quantum-receiver SNR (dB) at range `range_m`.
    fn quantum_snr_db(&self, range_m: f64) -> PyResult<f64> {
        let c = optical_gain_c(&self.cfg.atomic, &self.cfg.constants).map_err(to_py_err)?;
        quantum_snr(&self.cfg.link, &self.cfg.noise, c, range_m, &self.cfg.constants)
            .map(to_db)
            .map_err(to_py_err)
    }

    /// Classical-receiver SNR (dB) at range `range_m`.
    fn classical_snr_db(&self, range_m: f64) -> PyResult<f64> {
        classical_snr(
            &self.cfg.link,
            &self.cfg.classical,
            self.cfg.noise.bandwidth,
            range_m,
            &self.cfg.constants,
        )
        .map(to_db)
        .map_err(to_py_err)
    }

    /// Two-way Doppler shift (Hz) for a radial velocity (m/s) on the
    /// configured carrier.
    fn doppler_shift(&self, velocity_mps: f64) -> f64 {
        doppler_shift(velocity_mps, self.cfg.link.carrier_f1, &self.cfg.constants)
    }

    /// SNR-versus-range sweep as CSV text.
    fn snr_sweep_csv(&self) -> PyResult<String> {
        run_snr_sweep(&self.cfg).map(|r| csv_string(&r)).map_err(to_py_err)
    }

    /// Monte Carlo velocity-RMSE sweep as CSV text.
    fn rmse_sweep_csv(&self) -> PyResult<String> {
        run_rmse_sweep(&self.cfg).map(|r| csv_string(&r)).map_err(to_py_err)
    }
}

/// Result of the beat-frequency estimator.
#[pyclass(name = "FrequencyEstimate")]
struct PyFrequencyEstimate {
    #[pyo3(get)]
    omega_hat: f64,
    #[pyo3(get)]
    coarse_bin: usize,
    #[pyo3(get)]
    refinement_iterations: usize,
    #[pyo3(get)]
    boundary_warning: bool,
}

#[pymethods]
impl PyFrequencyEstimate {
    fn __repr__(&self) -> String {
        format!(
            "FrequencyEstimate(omega_hat={}, coarse_bin={}, refinement_iterations={}, \
             boundary_warning={})",
            self.omega_hat, self.coarse_bin, self.refinement_iterations, self.boundary_warning
        )
    }
}

/// Estimates the normalized beat frequency (rad/sample) of a real sample
/// record via periodogram coarse search plus least-squares refinement.
#[pyfunction(name = "estimate_frequency")]
#[pyo3(signature = (samples, guard_fraction = 0.02))]
fn estimate_frequency_py(samples: Vec<f64>, guard_fraction: f64) -> PyResult<PyFrequencyEstimate> {
    let record = SampledWaveform {
        samples,
        sample_rate: 1.0,
        metadata: RecordMetadata {
            seed: 0,
            true_beat_freq: 0.0,
            true_phase: 0.0,
            sigma_z: 0.0,
        },
    };
    let est = estimate_frequency(&record, guard_fraction).map_err(to_py_err)?;
    Ok(PyFrequencyEstimate {
        omega_hat: est.omega_hat,
        coarse_bin: est.coarse_bin,
        refinement_iterations: est.refinement_iterations,
        boundary_warning: est.boundary_warning,
    })
}

/// Samples y[n] = alpha*cos(omega*n + phi) + N(0, sigma^2), n = 1..n,
/// deterministically from `seed`.
#[pyfunction]
fn noisy_sinusoid(
    alpha: f64,
    omega: f64,
    phi: f64,
    n: usize,
    sigma: f64,
    seed: u64,
) -> Vec<f64> {
    let mut rng = noise_rng(seed);
    sample_noisy_sinusoid(alpha, omega, phi, n, sigma, &mut rng)
}

/// Asymptotic Cramér–Rao bound on frequency variance (rad²/sample²).
#[pyfunction(name = "acrb_omega")]
fn acrb_omega_py(snr: f64, n: usize) -> PyResult<f64> {
    acrb_omega(snr, n).map_err(to_py_err)
}

/// Asymptotic Cramér–Rao bound on velocity variance (m²/s²).
#[pyfunction(name = "acrb_velocity")]
fn acrb_velocity_py(snr: f64, n: usize, sample_rate_hz: f64, carrier_f1_hz: f64) -> PyResult<f64> {
    acrb_velocity(snr, n, sample_rate_hz, carrier_f1_hz, &CODATA).map_err(to_py_err)
}

/// Maps a normalized frequency (rad/sample) to radial velocity (m/s).
#[pyfunction(name = "omega_to_velocity")]
fn omega_to_velocity_py(omega: f64, sample_rate_hz: f64, carrier_f1_hz: f64) -> f64 {
    omega_to_velocity(omega, sample_rate_hz, carrier_f1_hz, &CODATA)
}

#[pymodule]
fn rydar_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyExperiment>()?;
    m.add_class::<PyFrequencyEstimate>()?;
    m.add_function(wrap_pyfunction!(estimate_frequency_py, m)?)?;
    m.add_function(wrap_pyfunction!(noisy_sinusoid, m)?)?;
    m.add_function(wrap_pyfunction!(acrb_omega_py, m)?)?;
    m.add_function(wrap_pyfunction!(acrb_velocity_py, m)?)?;
    m.add_function(wrap_pyfunction!(omega_to_velocity_py, m)?)?;
    Ok(())
}
