//! Physical constants in SI units (CODATA 2018 exact or recommended values).

/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380_649e-23;
/// Conversion of a Gaussian-units polarizability volume from cm^3 to m^3.
pub const CM3_TO_M3: f64 = 1e-6;

/// Reference frequency used to express the metamaterial parameters, rad/s.
pub const OMEGA_REF: f64 = 1.37e16;

/// Wavelength associated with [`OMEGA_REF`], m.
pub fn lambda_ref() -> f64 {
    2.0 * std::f64::consts::PI * SPEED_OF_LIGHT / OMEGA_REF
}
