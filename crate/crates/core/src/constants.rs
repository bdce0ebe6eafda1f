//! Physical constants.
//!
//! CODATA 2018 values, except for the free-space impedance which is fixed
//! at 377 ohm exactly to match the link-budget convention used throughout
//! the SNR formulas.

/// Immutable bundle of physical constants.
///
/// Constructed once via [`PhysicalConstants::codata`] (or `Default`);
/// fields are read-only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Reduced Planck constant (J·s).
    pub hbar: f64,
    /// Vacuum permittivity (F/m).
    pub epsilon0: f64,
    /// Elementary charge (C).
    pub electron_charge: f64,
    /// Bohr radius (m).
    pub bohr_radius: f64,
    /// Boltzmann constant (J/K).
    pub boltzmann: f64,
    /// Speed of light in vacuum (m/s), exact.
    pub light_speed: f64,
    /// Free-space impedance (ohm), 377 exactly.
    pub free_space_impedance: f64,
}

pub const CODATA: PhysicalConstants = PhysicalConstants {
    hbar: 1.054_571_817e-34,
    epsilon0: 8.854_187_812_8e-12,
    electron_charge: 1.602_176_634e-19,
    bohr_radius: 5.291_772_109_03e-11,
    boltzmann: 1.380_649e-23,
    light_speed: 299_792_458.0,
    free_space_impedance: 377.0,
};

impl PhysicalConstants {
    pub const fn codata() -> Self {
        CODATA
    }

    /// Dipole moment in SI units (C·m) from a value expressed in units of
    /// e·a0 (elementary charge times Bohr radius).
    pub fn dipole_from_ea0(&self, value_ea0: f64) -> f64 {
        value_ea0 * self.electron_charge * self.bohr_radius
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        CODATA
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn light_speed_and_impedance_are_exact() {
        let c = PhysicalConstants::codata();
        assert_eq!(c.light_speed, 299_792_458.0);
        assert_eq!(c.free_space_impedance, 377.0);
    }

    #[test]
    fn dipole_conversion() {
        let c = CODATA;
        let d = c.dipole_from_ea0(1.0);
        assert!((d - 8.478_353e-30).abs() / d < 1e-6);
    }
}
