//! Natural-unit constants and laser/atom parameter bookkeeping.
//!
//! Everything downstream works in hbar = c = 1 units: energies in eV, lengths
//! and times in 1/eV. The only SI-facing quantity is the laser intensity in
//! W/cm^2, converted here and nowhere else.

use crate::error::{Error, Result};
use serde::Serialize;

/// Physical constants in natural units (energies in eV).
pub mod consts {
    /// Electron mass, eV (CODATA 2018).
    pub const ELECTRON_MASS: f64 = 510_998.95;

    /// Inverse fine-structure constant (CODATA 2018).
    pub const INV_ALPHA: f64 = 137.035_999;

    /// Fine-structure constant. Equals the squared electron charge in
    /// Gaussian natural units, so `ALPHA` is what multiplies 1/r in the
    /// Coulomb potential.
    pub const ALPHA: f64 = 1.0 / INV_ALPHA;

    /// Hydrogen ground-state binding energy for Z = 1, eV.
    pub const RYDBERG: f64 = 13.605_7;

    /// hbar, eV s (exact in the 2019 SI).
    pub const HBAR_EV_S: f64 = 6.582_119_569e-16;

    /// hbar c, eV cm.
    pub const HBARC_EV_CM: f64 = 1.973_269_804e-5;

    /// Joules per eV (exact in the 2019 SI).
    pub const JOULES_PER_EV: f64 = 1.602_176_634e-19;

    /// One W/cm^2 expressed in natural units, eV^4:
    /// (1 J in eV) x (1/s in eV) x (1/cm in eV)^2.
    pub const W_PER_CM2: f64 =
        (1.0 / JOULES_PER_EV) * HBAR_EV_S * (HBARC_EV_CM * HBARC_EV_CM);
}

fn require_positive(value: f64, what: &str) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::Domain(format!("{what} must be positive, got {value}")))
    }
}

/// Cycle-averaged quiver energy U_p of a free electron in a linearly
/// polarized field of the given intensity, eV.
///
/// With the cycle-averaged Gaussian-units relation I = E^2 / 8 pi this is
/// U_p = e^2 E^2 / (4 m w^2) = 2 pi alpha I / (m w^2).
pub fn ponderomotive_energy(intensity_w_cm2: f64, photon_ev: f64) -> Result<f64> {
    let i = require_positive(intensity_w_cm2, "intensity")?;
    let w = require_positive(photon_ev, "photon energy")?;
    let i_nat = i * consts::W_PER_CM2;
    Ok(2.0 * std::f64::consts::PI * consts::ALPHA * i_nat
        / (consts::ELECTRON_MASS * w * w))
}

/// Peak electric field in natural units (eV^2) for the given intensity,
/// E = sqrt(8 pi I).
pub fn peak_field(intensity_w_cm2: f64) -> Result<f64> {
    let i = require_positive(intensity_w_cm2, "intensity")?;
    Ok((8.0 * std::f64::consts::PI * i * consts::W_PER_CM2).sqrt())
}

/// Quiver (excursion) amplitude lambda_L = sqrt(4 U_p / m) / w, 1/eV.
///
/// This is the half-width of the classical figure-eight-free oscillation
/// x(t) = lambda_L sin(w t) of a free electron in the field.
pub fn quiver_amplitude(up_ev: f64, photon_ev: f64) -> Result<f64> {
    let up = require_positive(up_ev, "ponderomotive energy")?;
    let w = require_positive(photon_ev, "photon energy")?;
    Ok((4.0 * up / consts::ELECTRON_MASS).sqrt() / w)
}

/// Keldysh adiabaticity parameter in the sqrt(I_B / U_p) convention used
/// throughout this crate. Below one means tunneling-dominated ionization.
///
/// Note the more common convention has 2 U_p under the root; see
/// [`keldysh_gamma_conventional`]. All closed-form rates and amplitudes in
/// [`crate::rates`] and [`crate::harmonics`] expect THIS convention.
pub fn keldysh_gamma(ionization_ev: f64, up_ev: f64) -> Result<f64> {
    let ib = require_positive(ionization_ev, "ionization energy")?;
    let up = require_positive(up_ev, "ponderomotive energy")?;
    Ok((ib / up).sqrt())
}

/// Keldysh parameter in the textbook sqrt(I_B / 2 U_p) convention, a factor
/// 1/sqrt(2) below [`keldysh_gamma`].
pub fn keldysh_gamma_conventional(ionization_ev: f64, up_ev: f64) -> Result<f64> {
    Ok(keldysh_gamma(ionization_ev, up_ev)? / std::f64::consts::SQRT_2)
}

/// Smallest n >= 0 such that (2n+1) photons reach the ionization threshold,
/// i.e. (2n+1) w >= I_B. The threshold itself counts as reachable.
pub fn min_harmonic_order(ionization_ev: f64, photon_ev: f64) -> Result<u32> {
    let ib = require_positive(ionization_ev, "ionization energy")?;
    let w = require_positive(photon_ev, "photon energy")?;
    let n = ((ib / w - 1.0) / 2.0).ceil();
    Ok(if n <= 0.0 { 0 } else { n as u32 })
}

/// Hydrogen-like Bohr radius a = 1 / (m Z alpha), 1/eV.
pub fn bohr_radius(z: u32) -> Result<f64> {
    if z == 0 {
        return Err(Error::Domain("nuclear charge must be at least 1".into()));
    }
    Ok(consts::INV_ALPHA / (consts::ELECTRON_MASS * f64::from(z)))
}

/// Laser parameters with every derived field-strength quantity precomputed.
///
/// Constructed either from an intensity in W/cm^2 or directly from a
/// ponderomotive energy; the remaining members are filled in consistently
/// either way.
#[derive(Debug, Clone, Serialize)]
pub struct LaserParams {
    /// Photon energy w, eV.
    pub photon: f64,
    /// Peak intensity in W/cm^2 when the parameters came from one.
    pub intensity_w_cm2: Option<f64>,
    /// Ponderomotive energy U_p, eV.
    pub ponderomotive: f64,
    /// Quiver amplitude lambda_L, 1/eV.
    pub quiver: f64,
    /// Peak electric field, eV^2 (natural Gaussian units).
    pub field: f64,
}

impl LaserParams {
    pub fn from_intensity(photon_ev: f64, intensity_w_cm2: f64) -> Result<Self> {
        let up = ponderomotive_energy(intensity_w_cm2, photon_ev)?;
        Ok(Self {
            photon: photon_ev,
            intensity_w_cm2: Some(intensity_w_cm2),
            ponderomotive: up,
            quiver: quiver_amplitude(up, photon_ev)?,
            field: peak_field(intensity_w_cm2)?,
        })
    }

    pub fn from_ponderomotive(photon_ev: f64, up_ev: f64) -> Result<Self> {
        let up = require_positive(up_ev, "ponderomotive energy")?;
        let w = require_positive(photon_ev, "photon energy")?;
        // Invert U_p = e^2 E^2 / (4 m w^2) with e^2 = alpha.
        let field = 2.0 * w * (consts::ELECTRON_MASS * up / consts::ALPHA).sqrt();
        Ok(Self {
            photon: w,
            intensity_w_cm2: None,
            ponderomotive: up,
            quiver: quiver_amplitude(up, w)?,
            field,
        })
    }
}

/// A hydrogen-like target atom: nuclear charge plus the measured ionization
/// energy of the state being stripped (not the hydrogenic Z^2 Rydberg value,
/// which is wrong for multi-electron atoms).
#[derive(Debug, Clone, Serialize)]
pub struct AtomSpec {
    pub z: u32,
    /// Ionization energy I_B, eV.
    pub ionization: f64,
    /// Bohr radius 1 / (m Z alpha), 1/eV.
    pub bohr: f64,
}

impl AtomSpec {
    pub fn new(z: u32, ionization_ev: f64) -> Result<Self> {
        let ib = require_positive(ionization_ev, "ionization energy")?;
        Ok(Self { z, ionization: ib, bohr: bohr_radius(z)? })
    }

    /// Helium, first ionization energy 24.59 eV.
    pub fn helium() -> Self {
        Self::new(2, 24.59).expect("static parameters are valid")
    }

    /// Neon, first ionization energy 21.56 eV.
    pub fn neon() -> Self {
        Self::new(10, 21.56).expect("static parameters are valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn intensity_conversion_constant() {
        // 1 W/cm^2 in eV^4, assembled from the three exact-SI factors.
        assert_relative_eq!(consts::W_PER_CM2, 1.599_663e-6, max_relative = 1e-6);
    }

    #[test]
    fn helium_reference_ponderomotive_energy() {
        // 1.5e15 W/cm^2 at 1.177 eV photons: U_p close to 155 eV.
        let up = ponderomotive_energy(1.5e15, 1.177).unwrap();
        assert_relative_eq!(up, 155.0, max_relative = 0.01);
        // Frozen value from the constants above, pinned against drift.
        assert_relative_eq!(up, 155.414_608_109, max_relative = 1e-9);
    }

    #[test]
    fn helium_reference_quiver_amplitude() {
        let up = ponderomotive_energy(1.5e15, 1.177).unwrap();
        let quiver = quiver_amplitude(up, 1.177).unwrap();
        assert_relative_eq!(quiver, 2.96e-2, max_relative = 0.01);
        // Large compared to the He Bohr radius: the dressed well is wide.
        let ratio = quiver / bohr_radius(2).unwrap();
        assert_relative_eq!(ratio, 220.7, max_relative = 0.01);
    }

    #[test]
    fn quiver_amplitude_matches_field_route() {
        // lambda_L = e E / (m w^2) must agree with the U_p route identically.
        let w = 1.177;
        let i = 1.5e15;
        let up = ponderomotive_energy(i, w).unwrap();
        let via_up = quiver_amplitude(up, w).unwrap();
        let e = peak_field(i).unwrap();
        let via_field = consts::ALPHA.sqrt() * e / (consts::ELECTRON_MASS * w * w);
        assert_relative_eq!(via_up, via_field, max_relative = 1e-12);
    }

    #[test]
    fn keldysh_values_for_helium_and_neon() {
        let up = ponderomotive_energy(1.5e15, 1.177).unwrap();
        assert_relative_eq!(keldysh_gamma(24.59, up).unwrap(), 0.398, max_relative = 2e-3);
        assert_relative_eq!(keldysh_gamma(21.56, up).unwrap(), 0.372, max_relative = 2e-3);
        let conv = keldysh_gamma_conventional(24.59, up).unwrap();
        assert_relative_eq!(
            conv * std::f64::consts::SQRT_2,
            keldysh_gamma(24.59, up).unwrap(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn minimum_orders_for_reference_atoms() {
        // He at 1.177 eV: 21 photons needed, n0 = 10; Ne: 19 photons, n0 = 9.
        assert_eq!(min_harmonic_order(24.59, 1.177).unwrap(), 10);
        assert_eq!(min_harmonic_order(21.56, 1.177).unwrap(), 9);
        // One photon is already enough.
        assert_eq!(min_harmonic_order(0.5, 1.0).unwrap(), 0);
        // Threshold is inclusive: I_B = 3 w needs exactly 3 photons, n0 = 1.
        assert_eq!(min_harmonic_order(3.0, 1.0).unwrap(), 1);
        // Just above threshold bumps the order.
        assert_eq!(min_harmonic_order(3.0 + 1e-9, 1.0).unwrap(), 2);
    }

    #[test]
    fn bohr_radius_values() {
        let a1 = bohr_radius(1).unwrap();
        assert_relative_eq!(a1, 2.68e-4, max_relative = 0.01);
        assert_relative_eq!(bohr_radius(2).unwrap(), a1 / 2.0, max_relative = 1e-14);
        assert!(bohr_radius(0).is_err());
    }

    #[test]
    fn ground_state_scale_consistency() {
        // The Rydberg constant used elsewhere matches alpha^2 m / 2.
        let ry = 0.5 * consts::ALPHA * consts::ALPHA * consts::ELECTRON_MASS;
        assert_relative_eq!(ry, consts::RYDBERG, max_relative = 1e-5);
    }

    #[test]
    fn laser_params_routes_agree() {
        let a = LaserParams::from_intensity(1.177, 1.5e15).unwrap();
        let b = LaserParams::from_ponderomotive(1.177, a.ponderomotive).unwrap();
        assert_relative_eq!(a.quiver, b.quiver, max_relative = 1e-12);
        assert_relative_eq!(a.field, b.field, max_relative = 1e-12);
        assert!(b.intensity_w_cm2.is_none());
    }

    #[test]
    fn domain_errors_on_nonpositive_inputs() {
        assert!(ponderomotive_energy(-1.0, 1.0).is_err());
        assert!(ponderomotive_energy(1.0, 0.0).is_err());
        assert!(quiver_amplitude(0.0, 1.0).is_err());
        assert!(keldysh_gamma(1.0, f64::NAN).is_err());
        assert!(min_harmonic_order(1.0, -2.0).is_err());
    }

    #[test]
    fn invariant_scalings() {
        // U_p linear in intensity, quadratic in 1/w; quiver ~ sqrt(U_p).
        let up1 = ponderomotive_energy(1e14, 1.0).unwrap();
        let up4 = ponderomotive_energy(4e14, 1.0).unwrap();
        assert_relative_eq!(up4, 4.0 * up1, max_relative = 1e-12);
        let uphalf = ponderomotive_energy(1e14, 2.0).unwrap();
        assert_relative_eq!(uphalf, up1 / 4.0, max_relative = 1e-12);
        let q1 = quiver_amplitude(up1, 1.0).unwrap();
        let q4 = quiver_amplitude(4.0 * up1, 1.0).unwrap();
        assert_relative_eq!(q4, 2.0 * q1, max_relative = 1e-12);
    }

    #[test]
    fn atom_presets() {
        let he = AtomSpec::helium();
        assert_eq!(he.z, 2);
        assert_abs_diff_eq!(he.ionization, 24.59);
        let ne = AtomSpec::neon();
        assert_eq!(ne.z, 10);
        assert_abs_diff_eq!(ne.ionization, 21.56);
    }
}
