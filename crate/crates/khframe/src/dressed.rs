//! Harmonic components of the rigidly oscillating atomic potential.
//!
//! In the oscillating frame the potential becomes V(x + a(t), y, z) with the
//! drive a(t) along x and amplitude lambda_L. Expanding the translation in
//! harmonics of the drive phase gives component functions
//!
//!   v_k(x, y, z) = int_{-1}^{1} V(sqrt((x - lambda u)^2 + y^2 + z^2))
//!                  T_k(u) / (pi sqrt(1 - u^2)) du,
//!
//! so that V(x - lambda cos p, y, z) = v_0 + 2 sum_k v_k(x,y,z) cos(k p).
//! v_0 is the static dressed well; the k >= 1 components drive transitions at
//! k times the laser frequency. Odd k dominate near the center (they are odd
//! in x), and for the Coulomb potential their small-x form has the closed
//! dipole expression implemented here alongside the numeric route.

use crate::error::{Error, Result};
use crate::special::{
    chebyshev_t, integrate_chebyshev_weight, legendre_p, QuadratureSpec,
};
use crate::units::consts::ALPHA;
use crate::Complex;

/// Observation point in the oscillating frame, lengths in 1/eV. The drive
/// axis is x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacePoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl SpacePoint {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    /// Distance from the origin.
    pub fn r(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// Squared distance from the drive axis.
    pub fn rho2(&self) -> f64 {
        self.y * self.y + self.z * self.z
    }
}

/// Attractive Coulomb potential -Z alpha / sqrt(r^2 + softening^2).
///
/// `softening = 0` is the bare nucleus; a small positive value regularizes
/// integrals whose path crosses the center.
#[derive(Debug, Clone, Copy)]
pub struct SoftCoulomb {
    pub z: u32,
    pub softening: f64,
}

impl SoftCoulomb {
    pub fn bare(z: u32) -> Result<Self> {
        Self::new(z, 0.0)
    }

    pub fn new(z: u32, softening: f64) -> Result<Self> {
        if z == 0 {
            return Err(Error::Domain("nuclear charge must be at least 1".into()));
        }
        if !(softening.is_finite() && softening >= 0.0) {
            return Err(Error::Domain(format!(
                "softening must be finite and non-negative, got {softening}"
            )));
        }
        Ok(Self { z, softening })
    }

    /// Potential value from the squared distance to the center.
    pub fn eval_r2(&self, r2: f64) -> f64 {
        -(f64::from(self.z) * ALPHA) / (r2 + self.softening * self.softening).sqrt()
    }

    /// Radial derivative dV/dr at distance r (positive: the force pulls in).
    pub fn derivative(&self, r: f64) -> f64 {
        let d2 = r * r + self.softening * self.softening;
        f64::from(self.z) * ALPHA * r / (d2 * d2.sqrt())
    }
}

fn validate_lambda(lambda: f64) -> Result<f64> {
    if lambda.is_finite() && lambda > 0.0 {
        Ok(lambda)
    } else {
        Err(Error::Domain(format!(
            "quiver amplitude must be positive, got {lambda}"
        )))
    }
}

/// k-th harmonic component of the oscillating potential at a point, by
/// Chebyshev-weighted quadrature over the drive path.
///
/// The bare Coulomb case needs the oscillation path to stay clear of the
/// center: a point with y = z = 0 and |x| <= lambda sits on the singularity
/// for some drive phase and is rejected. Softening moves the singularity off
/// the real path and lifts the restriction.
pub fn vk_numeric(
    k: u32,
    point: &SpacePoint,
    lambda: f64,
    pot: &SoftCoulomb,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let lambda = validate_lambda(lambda)?;
    if pot.softening == 0.0 && point.rho2() == 0.0 && point.x.abs() <= lambda {
        return Err(Error::Singular {
            abscissa: point.x / lambda,
            context: "oscillation path crosses the bare Coulomb center".into(),
        });
    }
    let rho2 = point.rho2();
    integrate_chebyshev_weight(
        |u| {
            let dx = point.x - lambda * u;
            let tk = chebyshev_t(k, u).expect("quadrature nodes lie in [-1, 1]");
            pot.eval_r2(dx * dx + rho2) * tk
        },
        spec,
    )
}

/// Components v_0 .. v_k_max at one point, each by [`vk_numeric`].
pub fn dressed_components(
    point: &SpacePoint,
    lambda: f64,
    pot: &SoftCoulomb,
    k_max: u32,
    spec: &QuadratureSpec,
) -> Result<Vec<f64>> {
    (0..=k_max)
        .map(|k| vk_numeric(k, point, lambda, pot, spec))
        .collect()
}

/// Rebuild V at drive phase p for the displacement a(t) = lambda cos(p):
/// v_0 + 2 sum_k (-1)^k v_k cos(k p).
///
/// The (-1)^k comes from T_k(-u): the components are defined against the
/// x - lambda u path, while this drive displaces by +lambda cos p.
pub fn reconstruct_cos_drive(components: &[f64], phase: f64) -> f64 {
    let mut acc = components.first().copied().unwrap_or(0.0);
    for (k, &vk) in components.iter().enumerate().skip(1) {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        acc += 2.0 * sign * vk * (k as f64 * phase).cos();
    }
    acc
}

/// Rebuild V at drive phase p for the displacement a(t) = lambda sin(p),
/// using the phase bracket i^k [e^{ikp} + (-1)^k e^{-ikp}] that appears when
/// the harmonics are written against a sine drive:
/// v_0 + sum_k Re(i^k [e^{ikp} + (-1)^k e^{-ikp}]) v_k.
pub fn reconstruct_sin_drive(components: &[f64], phase: f64) -> f64 {
    let mut acc = components.first().copied().unwrap_or(0.0);
    for (k, &vk) in components.iter().enumerate().skip(1) {
        let ik = Complex::i().powu(k as u32);
        let plus = Complex::from_polar(1.0, k as f64 * phase);
        let minus = plus.conj();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        acc += (ik * (plus + sign * minus)).re * vk;
    }
    acc
}

/// Closed small-x form of the odd Coulomb components near the center:
/// |v_{2n+1}(x)| = (2n+1) (Z alpha / lambda) (|x| / lambda) for |x| << lambda.
///
/// Returned with the sign of x; the harmonic's temporal phase relative to a
/// sine drive is the separate factor [`coulomb_dipole_phase`].
pub fn vk_coulomb_dipole(n: u32, x: f64, lambda: f64, z: u32) -> Result<f64> {
    let lambda = validate_lambda(lambda)?;
    if z == 0 {
        return Err(Error::Domain("nuclear charge must be at least 1".into()));
    }
    let k = f64::from(2 * n + 1);
    Ok(k * f64::from(z) * ALPHA / lambda * (x / lambda))
}

/// Temporal phase -i (-1)^n carried by the (2n+1)-th harmonic against a sine
/// drive, companion to [`vk_coulomb_dipole`].
pub fn coulomb_dipole_phase(n: u32) -> Complex {
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    Complex::new(0.0, -sign)
}

/// Wallis coefficient A_n = (2n-1)!!/(2n)!!, the Chebyshev-weighted moment of
/// u^{2n}. These weight the multipole series of the static dressed well.
pub fn a_coefficient(n: u32) -> f64 {
    let mut a = 1.0;
    for m in 1..=n {
        a *= (2.0 * f64::from(m) - 1.0) / (2.0 * f64::from(m));
    }
    a
}

const V0_SERIES_NEAR_FIELD_CAP: usize = 40;

/// Static dressed Coulomb well as a multipole series:
///
/// v_0(r) = -(Z alpha / r) [1 + sum_n A_n (lambda/r)^{2n} P_{2n}(x/r)].
///
/// The series converges for r > lambda. Inside that radius it is
/// asymptotic at best, so requests for more than 40 terms there are
/// rejected rather than summed into garbage.
pub fn v0_series(
    point: &SpacePoint,
    lambda: f64,
    z: u32,
    n_terms: usize,
) -> Result<f64> {
    let lambda = validate_lambda(lambda)?;
    if z == 0 {
        return Err(Error::Domain("nuclear charge must be at least 1".into()));
    }
    let r = point.r();
    if r == 0.0 {
        return Err(Error::Singular {
            abscissa: 0.0,
            context: "multipole series undefined at the center".into(),
        });
    }
    if r < lambda && n_terms > V0_SERIES_NEAR_FIELD_CAP {
        return Err(Error::Domain(format!(
            "series diverges for r < lambda (r/lambda = {:.3}); \
             at most {V0_SERIES_NEAR_FIELD_CAP} asymptotic terms allowed there",
            r / lambda
        )));
    }
    Ok(-(f64::from(z) * ALPHA) / r * (1.0 + deformation_sum(point, lambda, r, n_terms)))
}

/// Deformation part of the static well, delta(r) = v_0(r) - V(r):
///
/// -(Z alpha / r) sum_n A_n (lambda/r)^{2n} P_{2n}(x/r),
///
/// summed directly so no cancellation against the bare Coulomb term occurs.
/// Same convergence domain and term cap as [`v0_series`].
pub fn delta_lv(
    point: &SpacePoint,
    lambda: f64,
    z: u32,
    n_terms: usize,
) -> Result<f64> {
    let lambda = validate_lambda(lambda)?;
    if z == 0 {
        return Err(Error::Domain("nuclear charge must be at least 1".into()));
    }
    let r = point.r();
    if r == 0.0 {
        return Err(Error::Singular {
            abscissa: 0.0,
            context: "multipole series undefined at the center".into(),
        });
    }
    if r < lambda && n_terms > V0_SERIES_NEAR_FIELD_CAP {
        return Err(Error::Domain(format!(
            "series diverges for r < lambda (r/lambda = {:.3}); \
             at most {V0_SERIES_NEAR_FIELD_CAP} asymptotic terms allowed there",
            r / lambda
        )));
    }
    Ok(-(f64::from(z) * ALPHA) / r * deformation_sum(point, lambda, r, n_terms))
}

fn deformation_sum(point: &SpacePoint, lambda: f64, r: f64, n_terms: usize) -> f64 {
    let ratio2 = (lambda / r) * (lambda / r);
    let cos_axis = point.x / r;
    let mut power = 1.0;
    let mut acc = 0.0;
    for n in 1..=n_terms {
        power *= ratio2;
        acc += a_coefficient(n as u32) * power * legendre_p(2 * n as u32, cos_axis);
    }
    acc
}

/// First-order response of the odd components to displacement off the
/// center: the selection integral
///
/// D_k = int_{-1}^{1} V'(lambda |u|) sign(u) T_k(u) / (pi sqrt(1-u^2)) du,
///
/// with v_k(x) ~ -x D_k for small x on the drive axis. Even k vanish exactly
/// by parity (the pairwise node sum returns literal 0.0); odd k = 2n+1 are
/// nonzero with sign (-1)^n and a magnitude that grows like log(lambda/s) as
/// the softening s shrinks, which is how the bare-Coulomb dipole form builds
/// up. Requires softening > 0.
pub fn selection_integral(
    k: u32,
    lambda: f64,
    pot: &SoftCoulomb,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let lambda = validate_lambda(lambda)?;
    if pot.softening <= 0.0 {
        return Err(Error::Domain(
            "selection integral needs positive softening; \
             the bare integrand is non-integrable at u = 0"
                .into(),
        ));
    }
    integrate_chebyshev_weight(
        |u| {
            let tk = chebyshev_t(k, u).expect("quadrature nodes lie in [-1, 1]");
            pot.derivative(lambda * u.abs()) * u.signum() * tk
        },
        spec,
    )
}

/// Write a grid of component values as CSV: one row per (k, point).
///
/// Deterministic output: fixed column order, fixed `{:.12e}` float format.
pub fn write_components_csv<W: std::io::Write>(
    out: &mut W,
    points: &[SpacePoint],
    lambda: f64,
    pot: &SoftCoulomb,
    k_max: u32,
    spec: &QuadratureSpec,
) -> Result<()> {
    let io_err = |e: std::io::Error| Error::Config(format!("csv write failed: {e}"));
    writeln!(out, "k,x_inv_ev,y_inv_ev,z_inv_ev,v_k_ev").map_err(io_err)?;
    for point in points {
        let comps = dressed_components(point, lambda, pot, k_max, spec)?;
        for (k, vk) in comps.iter().enumerate() {
            writeln!(
                out,
                "{},{:.12e},{:.12e},{:.12e},{:.12e}",
                k, point.x, point.y, point.z, vk
            )
            .map_err(io_err)?;
        }
    }
    Ok(())
}
