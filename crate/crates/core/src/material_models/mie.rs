//! Dipolar Mie coefficients of a sphere and the extended Maxwell Garnett
//! effective medium built from them.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::closed_form::{polaritonic_eps, DrudeParams, Frequency, PolaritonicParams};
use crate::constants::SPEED_OF_LIGHT;
use crate::error::ModelError;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

// Below this modulus the closed forms of psi_1 lose digits to cancellation.
const SERIES_SWITCH: f64 = 0.1;

/// Riccati-Bessel `psi_1(z) = z j_1(z)` and its derivative.
fn psi1(z: Complex64) -> (Complex64, Complex64) {
    if z.norm() < SERIES_SWITCH {
        // psi = sum_k (-1)^(k+1) 2k z^(2k) / (2k+1)!
        let z2 = z * z;
        let mut pow = Complex64::new(1.0, 0.0); // z^(2k-2)
        let mut fact = 1.0; // (2k+1)!
        let (mut psi, mut dpsi) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for k in 1..=8 {
            let kf = k as f64;
            fact *= (2.0 * kf) * (2.0 * kf + 1.0);
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            dpsi += sign * 4.0 * kf * kf * pow * z / fact;
            pow *= z2;
            psi += sign * 2.0 * kf * pow / fact;
        }
        (psi, dpsi)
    } else {
        let (s, c) = (z.sin(), z.cos());
        (s / z - c, c / z - s / (z * z) + s)
    }
}

/// Riccati-Hankel `xi_1(x) = x h_1^(1)(x)` and its derivative, for real x > 0.
fn xi1(x: f64) -> (Complex64, Complex64) {
    let e = Complex64::new(0.0, x).exp();
    let v = -e * (1.0 + I / x);
    let dv = e * (-I + 1.0 / x + I / (x * x));
    (v, dv)
}

/// Electric and magnetic dipole coefficients `(a1, b1)` of a non-magnetic
/// sphere with permittivity `eps_in` in a host `eps_h`, for host size
/// parameter `x = sqrt(eps_h) omega R / c`.
///
/// Sign convention: `a1 ~ (2i/3) x^3 (eps_in - eps_h) / (eps_in + 2 eps_h)`
/// for small spheres, the negative of the Bohren-Huffman coefficients.
pub fn mie_dipole_coeffs(x: f64, eps_in: Complex64, eps_h: Complex64) -> Result<(Complex64, Complex64), ModelError> {
    if !(x.is_finite() && x >= 0.0) {
        return Err(ModelError::InvalidParameter { name: "size_parameter", value: x });
    }
    if x == 0.0 {
        return Ok((Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)));
    }
    let m = (eps_in / eps_h).sqrt();
    let (psi_x, dpsi_x) = psi1(Complex64::new(x, 0.0));
    let (psi_mx, dpsi_mx) = psi1(m * x);
    let (xi_x, dxi_x) = xi1(x);
    let a = (m * psi_mx * dpsi_x - psi_x * dpsi_mx) / (m * psi_mx * dxi_x - xi_x * dpsi_mx);
    let b = (psi_mx * dpsi_x - m * psi_x * dpsi_mx) / (psi_mx * dxi_x - m * xi_x * dpsi_mx);
    if !(a.is_finite() && b.is_finite()) {
        return Err(ModelError::NonFinite("Mie coefficients"));
    }
    Ok((-a, -b))
}

/// Inclusion material for the sphere composite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum Inclusion {
    Polaritonic(PolaritonicParams),
    Drude(DrudeParams),
}

impl Inclusion {
    pub fn eps(&self, omega: Frequency) -> Complex64 {
        match self {
            Inclusion::Polaritonic(p) => polaritonic_eps(p, omega),
            Inclusion::Drude(p) => {
                let om2 = p.plasma_freq * p.plasma_freq;
                match omega {
                    Frequency::Real(w) => 1.0 - om2 / Complex64::new(w * w, p.dissipation * w),
                    Frequency::Imaginary(xi) => {
                        let x = xi.get();
                        Complex64::new(1.0 + om2 / (x * x + p.dissipation * x), 0.0)
                    }
                }
            }
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        match self {
            Inclusion::Polaritonic(p) => p.validate(),
            Inclusion::Drude(p) => p.validate(),
        }
    }
}

/// Spheres of radius `sphere_radius` (m) at volume fraction `filling_factor`
/// in a non-dispersive host of permittivity `host_eps`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SphereCompositeParams {
    pub filling_factor: f64,
    pub sphere_radius: f64,
    pub host_eps: f64,
    pub inclusion: Inclusion,
}

impl SphereCompositeParams {
    pub fn validate(&self) -> Result<(), ModelError> {
        if !(0.0..1.0).contains(&self.filling_factor) {
            return Err(ModelError::InvalidParameter { name: "filling_factor", value: self.filling_factor });
        }
        if !(self.sphere_radius > 0.0 && self.sphere_radius.is_finite()) {
            return Err(ModelError::InvalidParameter { name: "sphere_radius", value: self.sphere_radius });
        }
        if !(self.host_eps > 0.0 && self.host_eps.is_finite()) {
            return Err(ModelError::InvalidParameter { name: "host_eps", value: self.host_eps });
        }
        self.inclusion.validate()
    }

    pub fn size_parameter(&self, omega: f64) -> f64 {
        self.host_eps.sqrt() * omega * self.sphere_radius / SPEED_OF_LIGHT
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmgResponse {
    pub eps: Complex64,
    pub mu: Complex64,
    pub size_parameter: f64,
    /// The dipole approximation is trusted only for `x <= 0.3`.
    pub dipole_valid: bool,
    /// The effective-medium denominator is within 1e-8 of vanishing.
    pub near_pole: bool,
}

/// Effective permittivity and permeability of the sphere composite at real
/// frequency `omega` (rad/s).
pub fn emg_effective_response(p: &SphereCompositeParams, omega: f64) -> Result<EmgResponse, ModelError> {
    let x = p.size_parameter(omega);
    let eps_h = Complex64::new(p.host_eps, 0.0);
    let (a1, b1) = mie_dipole_coeffs(x, p.inclusion.eps(Frequency::Real(omega)), eps_h)?;
    if x == 0.0 {
        return Err(ModelError::Domain { what: "extended Maxwell Garnett response", xi: 0.0 });
    }
    let x3 = x * x * x;
    let f = p.filling_factor;
    let (den_e, den_m) = (x3 + 1.5 * I * f * a1, x3 + 1.5 * I * f * b1);
    if den_e.norm() == 0.0 || den_m.norm() == 0.0 {
        return Err(ModelError::NonFinite("extended Maxwell Garnett"));
    }
    let eps = eps_h * (x3 - 3.0 * I * f * a1) / den_e;
    let mu = (x3 - 3.0 * I * f * b1) / den_m;
    if !(eps.is_finite() && mu.is_finite()) {
        return Err(ModelError::NonFinite("extended Maxwell Garnett"));
    }
    let near_pole = den_e.norm().min(den_m.norm()) < 1e-8 * x3;
    Ok(EmgResponse { eps, mu, size_parameter: x, dipole_valid: x <= 0.3, near_pole })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn series_and_closed_form_agree_at_switch() {
        for z in [c(0.0999, 0.0), c(0.07, 0.07), c(0.0, 0.0999)] {
            let (s, ds) = psi1(z);
            let (sc, dsc) = (z.sin() / z - z.cos(), z.cos() / z - z.sin() / (z * z) + z.sin());
            assert!((s - sc).norm() < 1e-12 * sc.norm().max(1e-30) + 1e-15);
            assert!((ds - dsc).norm() < 1e-10 * dsc.norm());
        }
    }

    #[test]
    fn small_sphere_limit() {
        let x = 1e-3;
        let (e, eh) = (c(-4.0, 0.3), c(1.5, 0.0));
        let (a1, b1) = mie_dipole_coeffs(x, e, eh).unwrap();
        let expect = I * (2.0 / 3.0) * x.powi(3) * (e - eh) / (e + 2.0 * eh);
        assert!((a1 - expect).norm() < 1e-5 * expect.norm());
        // magnetic dipole is O(x^5)
        assert!(b1.norm() < 1e-12);
    }

    #[test]
    fn matched_sphere_is_invisible() {
        let (a1, b1) = mie_dipole_coeffs(0.7, c(2.0, 0.0), c(2.0, 0.0)).unwrap();
        assert!(a1.norm() < 1e-14 && b1.norm() < 1e-14);
    }

    #[test]
    fn lossless_sphere_obeys_unitarity() {
        // For real eps, |a1 - 1/2| = 1/2 (energy conservation) in either sign convention.
        for x in [0.05, 0.5, 2.0] {
            let (a1, b1) = mie_dipole_coeffs(x, c(6.0, 0.0), c(1.0, 0.0)).unwrap();
            assert_relative_eq!((-a1 - 0.5).norm(), 0.5, epsilon = 1e-12);
            assert_relative_eq!((-b1 - 0.5).norm(), 0.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn bohren_huffman_reference() {
        // Independent evaluation from spherical Bessel j and y at x = 0.5, eps = 4.
        let x = 0.5;
        let m = 2.0;
        let j1 = |z: f64| z.sin() / (z * z) - z.cos() / z;
        let j0 = |z: f64| z.sin() / z;
        let y1 = |z: f64| -z.cos() / (z * z) - z.sin() / z;
        let y0 = |z: f64| -z.cos() / z;
        // [z j1(z)]' = z j0(z) - j1(z)
        let psi = |z: f64| z * j1(z);
        let dpsi = |z: f64| z * j0(z) - j1(z);
        let xi = c(psi(x), psi(x) * 0.0 + x * y1(x));
        let dxi = c(dpsi(x), x * y0(x) - y1(x));
        let a_bh = (m * psi(m * x) * dpsi(x) - psi(x) * dpsi(m * x)) / (m * psi(m * x) * dxi - xi * dpsi(m * x));
        let (a1, _) = mie_dipole_coeffs(x, c(m * m, 0.0), c(1.0, 0.0)).unwrap();
        assert!((a1 + a_bh).norm() < 1e-13);
    }

    #[test]
    fn small_x_error_is_fifth_order() {
        let (e, eh) = (c(3.0, 0.5), c(1.0, 0.0));
        let dev = |x: f64| {
            let (a1, _) = mie_dipole_coeffs(x, e, eh).unwrap();
            (a1 - I * (2.0 / 3.0) * x.powi(3) * (e - eh) / (e + 2.0 * eh)).norm()
        };
        let slope = (dev(0.02).ln() - dev(0.005).ln()) / 4f64.ln();
        assert!((slope - 5.0).abs() < 0.1, "slope {slope}");
    }

    #[test]
    fn empty_composite_is_host() {
        let p = SphereCompositeParams {
            filling_factor: 0.0,
            sphere_radius: 1e-8,
            host_eps: 2.25,
            inclusion: Inclusion::Drude(DrudeParams::gold()),
        };
        let r = emg_effective_response(&p, 1e15).unwrap();
        assert!((r.eps - 2.25).norm() < 1e-14 && (r.mu - 1.0).norm() < 1e-14);
    }

    #[test]
    fn emg_reduces_to_maxwell_garnett() {
        let p = SphereCompositeParams {
            filling_factor: 0.2,
            sphere_radius: 1e-11,
            host_eps: 1.0,
            inclusion: Inclusion::Polaritonic(PolaritonicParams {
                eps_inf: 2.0,
                omega_longitudinal: 0.4 * 1.37e16,
                omega_transverse: 0.15 * 1.37e16,
                dissipation: 0.001 * 1.37e16,
            }),
        };
        let w = 0.2 * 1.37e16;
        let r = emg_effective_response(&p, w).unwrap();
        let e = p.inclusion.eps(Frequency::Real(w));
        let k = (e - 1.0) / (e + 2.0);
        let mg = (1.0 + 2.0 * 0.2 * k) / (1.0 - 0.2 * k);
        assert!((r.eps - mg).norm() < 1e-6 * mg.norm());
        assert!((r.mu - 1.0).norm() < 1e-8);
        assert!(r.dipole_valid);
    }

    /// Peak of `Im eps` on a dense real-frequency grid, with the largest `|Im mu|`.
    fn scan_peak(p: &SphereCompositeParams, scale: f64) -> (f64, f64, f64) {
        let (mut best, mut peak, mut mu_max) = (0.0, 0.0, 0.0f64);
        for j in 1..=20_000 {
            let w = 0.6 * j as f64 / 20_000.0;
            let r = emg_effective_response(p, w * scale).unwrap();
            if r.eps.im > peak {
                (best, peak) = (w, r.eps.im);
            }
            mu_max = mu_max.max(r.mu.im.abs());
        }
        (best, peak, mu_max)
    }

    #[test]
    fn single_electric_resonance_at_froehlich_frequency() {
        let scale = 1.37e16;
        let pol = PolaritonicParams {
            eps_inf: 2.0,
            omega_longitudinal: 0.4 * scale,
            omega_transverse: 0.15 * scale,
            dissipation: 0.001 * scale,
        };
        for (f, radius) in [(0.4, 1.375e-8), (0.02, 1.375e-8)] {
            let p = SphereCompositeParams {
                filling_factor: f,
                sphere_radius: radius,
                host_eps: 1.0,
                inclusion: Inclusion::Polaritonic(pol),
            };
            // lossless MG pole: eps_pol = -(2 + f) / (1 - f)
            let k = (2.0 + f) / (1.0 - f);
            let (wl, wt) = (0.4f64, 0.15f64);
            let expect = ((2.0 * wl * wl + k * wt * wt) / (2.0 + k)).sqrt();
            let (w, peak, mu_max) = scan_peak(&p, scale);
            assert!((w - expect).abs() < 0.1 * expect, "f = {f}: peak at {w}, expected {expect}");
            assert!(mu_max < 1e-2 * peak, "f = {f}: Im mu {mu_max} vs Im eps {peak}");
        }
        // the dilute composite resonates near 0.3 Omega
        let dilute = ((2.0 * 0.16 + 2.0 * 0.0225) / 4.0f64).sqrt();
        assert!((dilute - 0.3).abs() < 0.03);
    }
}
