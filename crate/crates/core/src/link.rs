//! Radar link budget, APD noise, and receiver SNR.
//!
//! Echo power follows the monostatic radar equation; the Rydberg receiver
//! converts the echo field amplitude through the optical gain constant and
//! is limited by APD shot + thermal noise, while the classical dipole
//! receiver is limited by its system noise temperature.

use crate::constants::PhysicalConstants;
use crate::error::{RadarError, Result};

/// APD excess-noise exponent: multiplied shot noise scales as M^2.3.
pub const APD_EXCESS_NOISE_EXPONENT: f64 = 2.3;

/// Link-budget parameters shared by both receivers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadarLink {
    /// Transmit power P_t (W).
    pub transmit_power: f64,
    /// Transmit antenna gain G_t (linear, dimensionless).
    pub transmit_gain: f64,
    /// Radar cross section σ (m²).
    pub rcs: f64,
    /// Rydberg sensor effective area A_e (m²).
    pub sensor_area: f64,
    /// Classical receive antenna effective area A_s (m²).
    pub classical_antenna_area: f64,
    /// Carrier frequency f₁ (Hz).
    pub carrier_f1: f64,
}

impl RadarLink {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("transmit_power", self.transmit_power),
            ("transmit_gain", self.transmit_gain),
            ("rcs", self.rcs),
            ("sensor_area", self.sensor_area),
            ("classical_antenna_area", self.classical_antenna_area),
            ("carrier_f1", self.carrier_f1),
        ];
        for (name, v) in fields {
            if !(v > 0.0) || !v.is_finite() {
                return Err(RadarError::domain(format!(
                    "RadarLink.{name} must be strictly positive and finite, got {v}"
                )));
            }
        }
        if !(1e6..=1e12).contains(&self.carrier_f1) {
            return Err(RadarError::domain(format!(
                "RadarLink.carrier_f1 = {} Hz outside sanity band [1 MHz, 1 THz]",
                self.carrier_f1
            )));
        }
        Ok(())
    }
}

/// APD receiver noise parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReceiverNoise {
    /// Avalanche multiplication gain M (≥ 1).
    pub apd_gain: f64,
    /// Responsivity 𝓡 (A/W).
    pub responsivity: f64,
    /// Load resistance R_l (Ω).
    pub load_resistance: f64,
    /// DC optical power P₀ at the APD (W).
    pub dc_optical_power: f64,
    /// Dark current I_d (A), ≥ 0.
    pub dark_current: f64,
    /// Operating temperature T (K).
    pub temperature: f64,
    /// Electrical bandwidth B_e (Hz).
    pub bandwidth: f64,
}

impl ReceiverNoise {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("apd_gain", self.apd_gain),
            ("responsivity", self.responsivity),
            ("load_resistance", self.load_resistance),
            ("dc_optical_power", self.dc_optical_power),
            ("temperature", self.temperature),
            ("bandwidth", self.bandwidth),
        ];
        for (name, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(RadarError::domain(format!(
                    "ReceiverNoise.{name} must be strictly positive and finite, got {v}"
                )));
            }
        }
        if self.apd_gain < 1.0 {
            return Err(RadarError::domain(format!(
                "ReceiverNoise.apd_gain must be >= 1, got {}",
                self.apd_gain
            )));
        }
        if self.dark_current < 0.0 || !self.dark_current.is_finite() {
            return Err(RadarError::domain(format!(
                "ReceiverNoise.dark_current must be >= 0, got {}",
                self.dark_current
            )));
        }
        Ok(())
    }

    /// Primary DC photocurrent I₀ = 𝓡·P₀ (A), before avalanche gain; the
    /// M^2.3 factor in the shot term carries the multiplication.
    pub fn dc_photocurrent(&self) -> f64 {
        self.responsivity * self.dc_optical_power
    }
}

/// Classical dipole-antenna receiver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalReceiver {
    /// System noise temperature T_s (K).
    pub system_temperature: f64,
}

impl ClassicalReceiver {
    pub fn validate(&self) -> Result<()> {
        if !(self.system_temperature > 0.0) || !self.system_temperature.is_finite() {
            return Err(RadarError::domain(format!(
                "ClassicalReceiver.system_temperature must be > 0, got {}",
                self.system_temperature
            )));
        }
        Ok(())
    }
}

fn check_range(range_r: f64) -> Result<()> {
    if !(range_r > 0.0) || !range_r.is_finite() {
        return Err(RadarError::domain(format!(
            "range must be strictly positive and finite, got {range_r}"
        )));
    }
    Ok(())
}

/// Echo power P_r = P_t·G_t·σ·A_e / ((4π)²R⁴) captured by the sensor (W).
pub fn received_power(link: &RadarLink, range_r: f64) -> Result<f64> {
    check_range(range_r)?;
    let four_pi_sq = (4.0 * std::f64::consts::PI).powi(2);
    Ok(link.transmit_power * link.transmit_gain * link.rcs * link.sensor_area
        / (four_pi_sq * range_r.powi(4)))
}

/// Echo field amplitude from captured power, inverting P_r = A₂²A_e/(2Z):
/// A₂ = sqrt(2Z·P_r/A_e) (V/m).
pub fn echo_field_amplitude(p_r: f64, sensor_area: f64, consts: &PhysicalConstants) -> Result<f64> {
    if p_r < 0.0 {
        return Err(RadarError::domain(format!(
            "echo_field_amplitude requires p_r >= 0, got {p_r}"
        )));
    }
    if !(sensor_area > 0.0) {
        return Err(RadarError::domain(format!(
            "echo_field_amplitude requires sensor_area > 0, got {sensor_area}"
        )));
    }
    Ok((2.0 * consts.free_space_impedance * p_r / sensor_area).sqrt())
}

/// Shot-noise term 2q(I₀+I_d)M^2.3·B_e of the APD current variance (A²).
pub fn shot_noise_term(rx: &ReceiverNoise, consts: &PhysicalConstants) -> f64 {
    2.0 * consts.electron_charge
        * (rx.dc_photocurrent() + rx.dark_current)
        * rx.apd_gain.powf(APD_EXCESS_NOISE_EXPONENT)
        * rx.bandwidth
}

/// Thermal-noise term 4k_B·T·B_e/R_l of the APD current variance (A²).
pub fn thermal_noise_term(rx: &ReceiverNoise, consts: &PhysicalConstants) -> f64 {
    4.0 * consts.boltzmann * rx.temperature * rx.bandwidth / rx.load_resistance
}

/// Total APD current noise variance σ_z² = shot + thermal (A²).
pub fn noise_variance(rx: &ReceiverNoise, consts: &PhysicalConstants) -> f64 {
    shot_noise_term(rx, consts) + thermal_noise_term(rx, consts)
}

/// Quantum-receiver SNR γ = 0.5(M𝓡CA₂)²/σ_z² for a given echo amplitude.
pub fn quantum_snr_from_amplitude(
    a2: f64,
    c_gain: f64,
    rx: &ReceiverNoise,
    consts: &PhysicalConstants,
) -> Result<f64> {
    if a2 < 0.0 {
        return Err(RadarError::domain(format!(
            "quantum_snr_from_amplitude requires a2 >= 0, got {a2}"
        )));
    }
    let sig = rx.apd_gain * rx.responsivity * c_gain * a2;
    Ok(0.5 * sig * sig / noise_variance(rx, consts))
}

/// Quantum-receiver SNR versus range,
/// γ_r = 0.5(M𝓡C)²·(2Z·P_t·G_t·σ/((4π)²R⁴))/σ_z².
pub fn quantum_snr(
    link: &RadarLink,
    rx: &ReceiverNoise,
    c_gain: f64,
    range_r: f64,
    consts: &PhysicalConstants,
) -> Result<f64> {
    check_range(range_r)?;
    let four_pi_sq = (4.0 * std::f64::consts::PI).powi(2);
    let sig = rx.apd_gain * rx.responsivity * c_gain;
    let field_sq = 2.0 * consts.free_space_impedance * link.transmit_power * link.transmit_gain
        * link.rcs
        / (four_pi_sq * range_r.powi(4));
    Ok(0.5 * sig * sig * field_sq / noise_variance(rx, consts))
}

/// Classical-receiver SNR γ_s = P_t·G_t·σ·A_s/((4π)²R⁴·k_B·T_s·B_e).
///
/// Shares the radar-equation R⁻⁴ factor with [`quantum_snr`]; the noise
/// bandwidth is the same `bandwidth` as the APD chain.
pub fn classical_snr(
    link: &RadarLink,
    cls: &ClassicalReceiver,
    bandwidth: f64,
    range_r: f64,
    consts: &PhysicalConstants,
) -> Result<f64> {
    check_range(range_r)?;
    let four_pi_sq = (4.0 * std::f64::consts::PI).powi(2);
    Ok(
        link.transmit_power * link.transmit_gain * link.rcs * link.classical_antenna_area
            / (four_pi_sq
                * range_r.powi(4)
                * consts.boltzmann
                * cls.system_temperature
                * bandwidth),
    )
}

/// Two-way Doppler shift Δf = 2v·f₁/c (Hz); positive for v > 0.
pub fn doppler_shift(velocity: f64, carrier_f1: f64, consts: &PhysicalConstants) -> f64 {
    2.0 * velocity * carrier_f1 / consts.light_speed
}

/// Round-trip delay τ_d = 2R/c (s).
pub fn round_trip_delay(range_r: f64, consts: &PhysicalConstants) -> Result<f64> {
    if range_r < 0.0 {
        return Err(RadarError::domain(format!(
            "round_trip_delay requires range >= 0, got {range_r}"
        )));
    }
    Ok(2.0 * range_r / consts.light_speed)
}

/// Linear power ratio to decibels.
pub fn to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}
