//! Hydrogen-like bound states and their response to the dressed potential.
//!
//! States are quantized along z in the conventional way while the drive axis
//! is x, matching [`crate::dressed`]. That geometry matters: the deformation
//! operator carries P_{2n}(x/r), not P_{2n}(z/r), so its angular brackets
//! differ from the polar-axis ones by the P_{2n}(0) tilt factors.
//!
//! Closed radial wavefunctions are tabulated for n <= 3, which covers every
//! level the second-order amplitudes here need; other n are an unsupported
//! request, not an error in the input.

use crate::error::{Error, Result};
use crate::special::{gauss_legendre, integrate_radial, legendre_p, QuadratureSpec};
use crate::units::{bohr_radius, consts};
use crate::Complex;
use std::f64::consts::PI;

/// Bound hydrogen-like state |n l m> for nuclear charge z, quantized along z.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundState {
    pub n: u32,
    pub l: u32,
    pub m: i32,
    pub z: u32,
}

impl BoundState {
    pub fn new(n: u32, l: u32, m: i32, z: u32) -> Result<Self> {
        if z == 0 {
            return Err(Error::Domain("nuclear charge must be at least 1".into()));
        }
        if n == 0 {
            return Err(Error::Domain("principal quantum number starts at 1".into()));
        }
        if l >= n {
            return Err(Error::Domain(format!(
                "need l < n, got l = {l}, n = {n}"
            )));
        }
        if m.unsigned_abs() > l {
            return Err(Error::Domain(format!(
                "need |m| <= l, got m = {m}, l = {l}"
            )));
        }
        Ok(Self { n, l, m, z })
    }

    /// Bohr radius for this nuclear charge, 1/eV.
    pub fn bohr(&self) -> f64 {
        bohr_radius(self.z).expect("validated at construction")
    }
}

/// Level energy E_n = -Z^2 alpha^2 m / (2 n^2), eV.
pub fn level_energy(z: u32, n: u32) -> Result<f64> {
    if z == 0 || n == 0 {
        return Err(Error::Domain("need z >= 1 and n >= 1".into()));
    }
    let zf = f64::from(z);
    let nf = f64::from(n);
    Ok(-zf * zf * consts::ALPHA * consts::ALPHA * consts::ELECTRON_MASS
        / (2.0 * nf * nf))
}

/// Radial wavefunction R_{nl}(r), normalized as int R^2 r^2 dr = 1.
/// Tabulated for n <= 3.
pub fn radial_wavefunction(state: &BoundState, r: f64) -> Result<f64> {
    if !(r.is_finite() && r >= 0.0) {
        return Err(Error::Domain(format!("radius must be >= 0, got {r}")));
    }
    let a = state.bohr();
    let rho = r / a;
    let norm = a.powf(-1.5);
    let value = match (state.n, state.l) {
        (1, 0) => 2.0 * (-rho).exp(),
        (2, 0) => (2.0 - rho) * (-rho / 2.0).exp() / (2.0 * 2.0f64.sqrt()),
        (2, 1) => rho * (-rho / 2.0).exp() / (2.0 * 6.0f64.sqrt()),
        (3, 0) => {
            2.0 * (27.0 - 18.0 * rho + 2.0 * rho * rho) * (-rho / 3.0).exp()
                / (81.0 * 3.0f64.sqrt())
        }
        (3, 1) => {
            4.0 * (6.0 - rho) * rho * (-rho / 3.0).exp() / (81.0 * 6.0f64.sqrt())
        }
        (3, 2) => 4.0 * rho * rho * (-rho / 3.0).exp() / (81.0 * 30.0f64.sqrt()),
        _ => {
            return Err(Error::Unsupported(format!(
                "radial table covers n <= 3, requested n = {}",
                state.n
            )))
        }
    };
    Ok(norm * value)
}

/// Radial bracket int R_bra R_ket r^{2 + power} dr.
///
/// `power` is the exponent of the operator (e.g. -3 for r^-3 expectation
/// values); the r^2 measure is included here. Combinations whose integrand
/// is non-integrable at the origin are a divergent-term error.
pub fn radial_moment(
    bra: &BoundState,
    ket: &BoundState,
    power: i32,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if bra.z != ket.z {
        return Err(Error::Config(format!(
            "states belong to different nuclei: z = {} vs {}",
            bra.z, ket.z
        )));
    }
    let origin_exponent = (bra.l + ket.l + 2) as i32 + power;
    if origin_exponent < 0 {
        return Err(Error::DivergentTerm {
            order: power.unsigned_abs(),
            context: format!(
                "radial integrand behaves like r^{origin_exponent} at the origin"
            ),
        });
    }
    let a = bra.bohr();
    let scale = a * f64::from(bra.n * ket.n) / f64::from(bra.n + ket.n);
    let bra = *bra;
    let ket = *ket;
    integrate_radial(
        move |r| {
            let rb = radial_wavefunction(&bra, r).expect("validated inputs");
            let rk = radial_wavefunction(&ket, r).expect("validated inputs");
            rb * rk * r.powi(2 + power)
        },
        scale,
        spec,
    )
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

/// Associated Legendre P_l^m(u) for m >= 0, Condon-Shortley phase included.
fn assoc_legendre(l: u32, m: u32, u: f64) -> f64 {
    let somx2 = ((1.0 - u) * (1.0 + u)).max(0.0).sqrt();
    let mut pmm = 1.0;
    for k in 1..=m {
        pmm *= -f64::from(2 * k - 1) * somx2;
    }
    if l == m {
        return pmm;
    }
    let mut pm1 = pmm;
    let mut p = u * f64::from(2 * m + 1) * pmm;
    for ll in (m + 2)..=l {
        let next = (u * f64::from(2 * ll - 1) * p
            - f64::from(ll + m - 1) * pm1)
            / f64::from(ll - m);
        pm1 = p;
        p = next;
    }
    p
}

/// Spherical harmonic Y_{lm}(u = cos theta, phi), physics convention.
fn sph_harm(l: u32, m: i32, u: f64, phi: f64) -> Complex {
    let ma = m.unsigned_abs();
    debug_assert!(ma <= l);
    let norm = ((2.0 * f64::from(l) + 1.0) / (4.0 * PI) * factorial(l - ma)
        / factorial(l + ma))
    .sqrt();
    let plm = assoc_legendre(l, ma, u);
    let base = norm * plm;
    let phase = Complex::from_polar(1.0, f64::from(ma) * phi);
    if m >= 0 {
        base * phase
    } else {
        // Y_{l,-m} = (-1)^m conj(Y_{lm})
        let sign = if ma % 2 == 0 { 1.0 } else { -1.0 };
        sign * base * phase.conj()
    }
}

const ANGULAR_POLAR_NODES: usize = 32;
const ANGULAR_AZIMUTH_NODES: usize = 64;

/// Angular bracket <l' m'| f(u, phi) |l m> over the unit sphere, by
/// Gauss-Legendre x uniform-azimuth quadrature. Exact for the polynomial
/// angular weights used in this crate (degree well below the node counts).
fn angular_element(
    bra: (u32, i32),
    ket: (u32, i32),
    f: impl Fn(f64, f64) -> f64,
) -> f64 {
    let (nodes, weights) =
        gauss_legendre(ANGULAR_POLAR_NODES).expect("fixed node count is valid");
    let dphi = 2.0 * PI / ANGULAR_AZIMUTH_NODES as f64;
    let mut acc = Complex::new(0.0, 0.0);
    for (&u, &w) in nodes.iter().zip(&weights) {
        for j in 0..ANGULAR_AZIMUTH_NODES {
            let phi = dphi * j as f64;
            let yb = sph_harm(bra.0, bra.1, u, phi);
            let yk = sph_harm(ket.0, ket.1, u, phi);
            acc += yb.conj() * yk * f(u, phi) * w * dphi;
        }
    }
    debug_assert!(
        acc.im.abs() <= 1e-12 * (1.0 + acc.re.abs()),
        "angular bracket picked up an imaginary part: {acc}"
    );
    acc.re
}

/// One term of the deformation-shift series between two states:
/// the full contribution is `coefficient * (Z alpha / a) * (lambda / a)^order`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftTerm {
    /// Power of (lambda / a) this term carries; always even.
    pub order: u32,
    /// Dimensionless coefficient in units of (Z alpha / a) (lambda/a)^order.
    pub coefficient: f64,
}

/// Series terms of the matrix element <bra| delta(r) |ket> of the
/// deformation part of the static dressed well,
///
///   delta(r) = -(Z alpha / r) sum_n A_n (lambda/r)^{2n} P_{2n}(x/r),
///
/// as dimensionless coefficients of (Z alpha / a)(lambda / a)^{2n}. Terms
/// whose angular bracket vanishes are omitted; the series is finite because
/// the angular bracket dies beyond 2n > l + l'.
pub fn deformation_shift_terms(
    bra: &BoundState,
    ket: &BoundState,
    spec: &QuadratureSpec,
) -> Result<Vec<ShiftTerm>> {
    if bra.z != ket.z {
        return Err(Error::Config(format!(
            "states belong to different nuclei: z = {} vs {}",
            bra.z, ket.z
        )));
    }
    let a = bra.bohr();
    let mut terms = Vec::new();
    for j in 1..=((bra.l + ket.l) / 2) {
        let order = 2 * j;
        let ang = angular_element(
            (bra.l, bra.m),
            (ket.l, ket.m),
            |u, phi| {
                let x_over_r = (1.0 - u * u).max(0.0).sqrt() * phi.cos();
                legendre_p(order, x_over_r)
            },
        );
        if ang.abs() < 1e-13 {
            continue;
        }
        // Angular weight survives, so the radial part must be integrable;
        // the guard in radial_moment turns any violation into an error.
        let rad = radial_moment(bra, ket, -(order as i32 + 1), spec)?;
        let coefficient = -crate::dressed::a_coefficient(j)
            * ang
            * rad
            * a.powi(order as i32 + 1);
        terms.push(ShiftTerm { order, coefficient });
    }
    Ok(terms)
}

/// Matrix element <bra| delta(r) |ket> of the static deformation, eV, for a
/// concrete quiver amplitude lambda (1/eV).
pub fn delta_lv_matrix_element(
    bra: &BoundState,
    ket: &BoundState,
    lambda: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::Domain(format!(
            "quiver amplitude must be positive, got {lambda}"
        )));
    }
    let terms = deformation_shift_terms(bra, ket, spec)?;
    let a = bra.bohr();
    let unit = f64::from(bra.z) * consts::ALPHA / a;
    let ratio = lambda / a;
    Ok(terms
        .iter()
        .map(|t| t.coefficient * unit * ratio.powi(t.order as i32))
        .sum())
}

/// Dimensionless prefactor of the rigidity amplitude: the ratio of the
/// 3d-2s-style deformation coupling to the level splitting it mixes,
///
///   -(sqrt(150)/10800) rho^2 / (4/9 + rho^2/5760 - rho^4/136080),
///
/// with rho = lambda / a. Grows from zero at weak drive, passes through a
/// resonant pole near rho = 16.06 where the shifted levels cross, and falls
/// off like 1/rho^2 in the strong-drive limit: the wavefunction stays rigid
/// both far below and far above the resonance.
pub fn rigidity_prefactor(lambda_over_a: f64) -> Result<f64> {
    if !(lambda_over_a.is_finite() && lambda_over_a >= 0.0) {
        return Err(Error::Domain(format!(
            "lambda/a must be non-negative, got {lambda_over_a}"
        )));
    }
    let rho2 = lambda_over_a * lambda_over_a;
    let numerator = 150.0f64.sqrt() / 10_800.0 * rho2;
    let denominator = 4.0 / 9.0 + rho2 / 5_760.0 - rho2 * rho2 / 136_080.0;
    let scale = 4.0 / 9.0 + rho2 / 5_760.0 + rho2 * rho2 / 136_080.0;
    if denominator.abs() <= 1e-9 * scale {
        return Err(Error::Pole { ratio: lambda_over_a });
    }
    Ok(-numerator / denominator)
}

/// Time-dependent admixture amplitude of the excited deformation partner on
/// the ground state: prefactor times (e^{i (8/9) |E_1| t} - 1), where |E_1|
/// is the ground-level binding energy in eV and t is in 1/eV.
///
/// Zero at t = 0 and periodic: the state breathes around the rigid shape
/// instead of drifting away from it.
pub fn rigidity_amplitude(
    lambda_over_a: f64,
    e1_magnitude_ev: f64,
    t: f64,
) -> Result<Complex> {
    if !(e1_magnitude_ev.is_finite() && e1_magnitude_ev > 0.0) {
        return Err(Error::Domain(format!(
            "binding energy must be positive, got {e1_magnitude_ev}"
        )));
    }
    let pref = rigidity_prefactor(lambda_over_a)?;
    let phase = Complex::from_polar(1.0, 8.0 / 9.0 * e1_magnitude_ev * t);
    Ok(pref * (phase - Complex::new(1.0, 0.0)))
}

/// Free state of momentum p (eV), normalized as a plane wave e^{i p r}
/// (pair with the momentum-space density d^3 p / (2 pi)^3).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuumState {
    pub px: f64,
    pub py: f64,
    pub pz: f64,
}

impl ContinuumState {
    pub fn new(px: f64, py: f64, pz: f64) -> Self {
        Self { px, py, pz }
    }

    pub fn momentum(&self) -> f64 {
        (self.px * self.px + self.py * self.py + self.pz * self.pz).sqrt()
    }
}

/// Continuum dipole element <p| x |1s> for a 1s orbital of decay length a
/// (wavefunction e^{-r/a} / sqrt(pi a^3)), in closed form:
///
///   -32 i sqrt(pi) a^{7/2} p_x / (1 + (p a)^2)^3.
///
/// Only the momentum component along the drive axis couples; the element is
/// purely imaginary because the 1s state is real and x is odd.
pub fn planewave_dipole_1s(continuum: &ContinuumState, a: f64) -> Result<Complex> {
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::Domain(format!(
            "orbital decay length must be positive, got {a}"
        )));
    }
    let pa2 = (continuum.momentum() * a).powi(2);
    let magnitude =
        32.0 * PI.sqrt() * a.powf(3.5) * continuum.px / (1.0 + pa2).powi(3);
    Ok(Complex::new(0.0, -magnitude))
}

/// [`planewave_dipole_1s`] for a bound state's own decay length; only the
/// ground state has the closed form.
pub fn planewave_dipole_element(
    continuum: &ContinuumState,
    ground: &BoundState,
) -> Result<Complex> {
    if (ground.n, ground.l, ground.m) != (1, 0, 0) {
        return Err(Error::Unsupported(format!(
            "closed continuum dipole implemented for the 1s state, got n={} l={} m={}",
            ground.n, ground.l, ground.m
        )));
    }
    planewave_dipole_1s(continuum, ground.bohr())
}

/// Bound-bound dipole element <bra| x |ket>, 1/eV, by quadrature.
pub fn dipole_x_element(
    bra: &BoundState,
    ket: &BoundState,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if bra.z != ket.z {
        return Err(Error::Config(format!(
            "states belong to different nuclei: z = {} vs {}",
            bra.z, ket.z
        )));
    }
    let ang = angular_element((bra.l, bra.m), (ket.l, ket.m), |u, phi| {
        (1.0 - u * u).max(0.0).sqrt() * phi.cos()
    });
    if ang.abs() < 1e-13 {
        return Ok(0.0);
    }
    Ok(ang * radial_moment(bra, ket, 1, spec)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn spec() -> QuadratureSpec {
        QuadratureSpec { target_rel_tol: 1e-12, ..Default::default() }
    }

    fn st(n: u32, l: u32, m: i32) -> BoundState {
        BoundState::new(n, l, m, 1).unwrap()
    }

    #[test]
    fn state_validation() {
        assert!(BoundState::new(2, 2, 0, 1).is_err()); // l = n
        assert!(BoundState::new(2, 1, 2, 1).is_err()); // |m| > l
        assert!(BoundState::new(0, 0, 0, 1).is_err());
        assert!(BoundState::new(1, 0, 0, 0).is_err());
        assert!(BoundState::new(3, 2, -2, 4).is_ok());
        // Radial table stops at n = 3.
        let high = BoundState::new(4, 0, 0, 1).unwrap();
        assert!(matches!(
            radial_wavefunction(&high, 1.0),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn level_energies() {
        assert_relative_eq!(
            level_energy(1, 1).unwrap(),
            -13.6057,
            max_relative = 1e-4
        );
        assert_relative_eq!(
            level_energy(2, 1).unwrap(),
            4.0 * level_energy(1, 1).unwrap(),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            level_energy(1, 3).unwrap(),
            level_energy(1, 1).unwrap() / 9.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn radial_normalization_all_tabulated_states() {
        for (n, l) in [(1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)] {
            for z in [1u32, 2] {
                let s = BoundState::new(n, l, 0, z).unwrap();
                let norm = radial_moment(&s, &s, 0, &spec()).unwrap();
                assert_relative_eq!(norm, 1.0, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn radial_orthogonality_within_l() {
        for (a, b) in [((1, 0), (2, 0)), ((1, 0), (3, 0)), ((2, 0), (3, 0)), ((2, 1), (3, 1))] {
            let sa = st(a.0, a.1, 0);
            let sb = st(b.0, b.1, 0);
            let overlap = radial_moment(&sa, &sb, 0, &spec()).unwrap();
            assert_abs_diff_eq!(overlap, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn radial_reference_moments() {
        let a = st(1, 0, 0).bohr();
        let m = |sa: &BoundState, sb: &BoundState, p: i32| {
            radial_moment(sa, sb, p, &spec()).unwrap()
        };
        let s10 = st(1, 0, 0);
        let s21 = st(2, 1, 0);
        let s32 = st(3, 2, 0);
        assert_relative_eq!(m(&s10, &s10, 1), 1.5 * a, max_relative = 1e-11);
        assert_relative_eq!(m(&s10, &s10, -1), 1.0 / a, max_relative = 1e-11);
        assert_relative_eq!(
            m(&s21, &s21, -3),
            1.0 / (24.0 * a.powi(3)),
            max_relative = 1e-11
        );
        assert_relative_eq!(
            m(&s32, &s32, -3),
            1.0 / (405.0 * a.powi(3)),
            max_relative = 1e-11
        );
        assert_relative_eq!(
            m(&s32, &s32, -5),
            2.0 / (10_935.0 * a.powi(5)),
            max_relative = 1e-11
        );
        assert_relative_eq!(
            m(&s32, &s10, -3),
            1.0 / (18.0 * 30.0f64.sqrt() * a.powi(3)),
            max_relative = 1e-11
        );
    }

    #[test]
    fn radial_moments_scale_with_bohr_radius() {
        // <r^p> in units of a^p is z-independent.
        for p in [-3i32, -1, 1, 2] {
            let h = BoundState::new(2, 1, 0, 1).unwrap();
            let he = BoundState::new(2, 1, 0, 2).unwrap();
            let vh = radial_moment(&h, &h, p, &spec()).unwrap() / h.bohr().powi(p);
            let vhe =
                radial_moment(&he, &he, p, &spec()).unwrap() / he.bohr().powi(p);
            assert_relative_eq!(vh, vhe, max_relative = 1e-10);
        }
    }

    #[test]
    fn radial_divergence_guard() {
        let s10 = st(1, 0, 0);
        assert!(matches!(
            radial_moment(&s10, &s10, -3, &spec()),
            Err(Error::DivergentTerm { .. })
        ));
        let s21 = st(2, 1, 0);
        // l + l' = 2 makes r^-4 integrable but r^-5 not.
        assert!(radial_moment(&s21, &s21, -4, &spec()).is_ok());
        assert!(matches!(
            radial_moment(&s21, &s21, -5, &spec()),
            Err(Error::DivergentTerm { .. })
        ));
    }

    #[test]
    fn mixed_nuclei_are_rejected() {
        let h = BoundState::new(1, 0, 0, 1).unwrap();
        let he = BoundState::new(2, 1, 0, 2).unwrap();
        assert!(matches!(
            radial_moment(&h, &he, 0, &spec()),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            deformation_shift_terms(&h, &he, &spec()),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            dipole_x_element(&h, &he, &spec()),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn spherical_harmonics_orthonormal() {
        let states = [
            (0u32, 0i32),
            (1, -1),
            (1, 0),
            (1, 1),
            (2, -2),
            (2, 0),
            (2, 1),
            (2, 2),
        ];
        for &a in &states {
            for &b in &states {
                let overlap = angular_element(a, b, |_, _| 1.0);
                let expected = if a == b { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(overlap, expected, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn angular_brackets_of_the_drive_axis_multipoles() {
        // P_2 and P_4 of x/r between the states the shift series uses.
        // The drive axis is perpendicular to the quantization axis, so these
        // differ from the polar-axis brackets by the tilt factor P_2(0):
        // <P_2(x/r)>_{1,0} = P_2(0) <P_2(u)>_{1,0} = (-1/2)(2/5) = -1/5.
        let p2 = |u: f64, phi: f64| {
            legendre_p(2, (1.0 - u * u).max(0.0).sqrt() * phi.cos())
        };
        let p4 = |u: f64, phi: f64| {
            legendre_p(4, (1.0 - u * u).max(0.0).sqrt() * phi.cos())
        };
        assert_relative_eq!(
            angular_element((1, 0), (1, 0), p2),
            -0.2,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            angular_element((1, 1), (1, 1), p2),
            0.1,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            angular_element((1, -1), (1, -1), p2),
            0.1,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            angular_element((2, 0), (0, 0), p2),
            -5.0f64.sqrt() / 10.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            angular_element((2, 0), (2, 0), p2),
            -1.0 / 7.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            angular_element((2, 0), (2, 0), p4),
            3.0 / 28.0,
            max_relative = 1e-12
        );
        // Polar-axis sanity contrast.
        assert_relative_eq!(
            angular_element((1, 0), (1, 0), |u, _| legendre_p(2, u)),
            0.4,
            max_relative = 1e-12
        );
        // The drive-axis operator couples m' = m +- 2 as well: it is NOT
        // diagonal in the magnetic quantum number.
        assert_relative_eq!(
            angular_element((1, 1), (1, -1), p2),
            -0.3,
            max_relative = 1e-12
        );
        // Odd multipole orders vanish between same-parity states.
        assert_abs_diff_eq!(
            angular_element((1, 0), (1, 0), |u, phi| {
                legendre_p(3, (1.0 - u * u).max(0.0).sqrt() * phi.cos())
            }),
            0.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn shift_coefficients_for_the_reference_states() {
        // Dimensionless coefficients in units (Z alpha / a)(lambda/a)^order.
        let terms = |b: &BoundState, k: &BoundState| {
            deformation_shift_terms(b, k, &spec()).unwrap()
        };

        let t = terms(&st(2, 1, 0), &st(2, 1, 0));
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].order, 2);
        assert_relative_eq!(t[0].coefficient, 1.0 / 240.0, max_relative = 1e-10);

        for m in [-1i32, 1] {
            let t = terms(&st(2, 1, m), &st(2, 1, m));
            assert_eq!(t.len(), 1);
            assert_relative_eq!(
                t[0].coefficient,
                -1.0 / 480.0,
                max_relative = 1e-10
            );
        }

        let t = terms(&st(3, 2, 0), &st(1, 0, 0));
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].order, 2);
        assert_relative_eq!(
            t[0].coefficient,
            150.0f64.sqrt() / 10_800.0,
            max_relative = 1e-10
        );

        let t = terms(&st(3, 2, 0), &st(3, 2, 0));
        assert_eq!(t.len(), 2);
        assert_eq!((t[0].order, t[1].order), (2, 4));
        assert_relative_eq!(t[0].coefficient, 1.0 / 5_670.0, max_relative = 1e-10);
        assert_relative_eq!(
            t[1].coefficient,
            -1.0 / 136_080.0,
            max_relative = 1e-10
        );
    }

    #[test]
    fn ground_state_has_no_static_shift() {
        let g = st(1, 0, 0);
        let terms = deformation_shift_terms(&g, &g, &spec()).unwrap();
        assert!(terms.is_empty());
        assert_abs_diff_eq!(
            delta_lv_matrix_element(&g, &g, 1e-2 * g.bohr(), &spec()).unwrap(),
            0.0
        );
    }

    #[test]
    fn matrix_element_assembles_terms_and_is_symmetric() {
        let s = st(2, 1, 0);
        let a = s.bohr();
        let lambda = 50.0 * a;
        let direct = delta_lv_matrix_element(&s, &s, lambda, &spec()).unwrap();
        let expected = (1.0 / 240.0) * consts::ALPHA / a * 2500.0;
        assert_relative_eq!(direct, expected, max_relative = 1e-10);

        let b = st(3, 2, 0);
        let g = st(1, 0, 0);
        let fwd = delta_lv_matrix_element(&b, &g, lambda, &spec()).unwrap();
        let bwd = delta_lv_matrix_element(&g, &b, lambda, &spec()).unwrap();
        assert_relative_eq!(fwd, bwd, max_relative = 1e-10);

        let d = delta_lv_matrix_element(&b, &b, lambda, &spec()).unwrap();
        let expected = consts::ALPHA / a
            * (2500.0 / 5_670.0 - 2500.0f64.powi(2) / 136_080.0);
        assert_relative_eq!(d, expected, max_relative = 1e-10);
    }

    #[test]
    fn rigidity_prefactor_reference_point_and_scaling() {
        // At lambda/a = 50 the admixture prefactor is small: the ground
        // state barely deforms even at 50 Bohr radii of quiver.
        let p50 = rigidity_prefactor(50.0).unwrap();
        assert_relative_eq!(p50.abs(), 0.0629, max_relative = 2e-3);
        // Far above the resonance it falls off as (a/lambda)^2.
        let p1000 = rigidity_prefactor(1000.0).unwrap().abs();
        let p2000 = rigidity_prefactor(2000.0).unwrap().abs();
        assert_relative_eq!(p1000 / p2000, 4.0, max_relative = 0.01);
        // And it vanishes with the drive.
        assert_abs_diff_eq!(rigidity_prefactor(0.0).unwrap(), 0.0);
        let weak = rigidity_prefactor(0.1).unwrap();
        assert!(weak.abs() < 1e-4);
    }

    #[test]
    fn rigidity_pole_is_detected() {
        // The denominator changes sign once between 16 and 16.1; bisect to
        // the crossing and expect the pole error there.
        let den = |rho: f64| {
            let rho2 = rho * rho;
            4.0 / 9.0 + rho2 / 5_760.0 - rho2 * rho2 / 136_080.0
        };
        assert!(den(16.0) > 0.0 && den(16.1) < 0.0);
        let (mut lo, mut hi) = (16.0, 16.1);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if den(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let root = 0.5 * (lo + hi);
        assert!(matches!(
            rigidity_prefactor(root),
            Err(Error::Pole { ratio }) if (ratio - root).abs() < 1e-9
        ));
        // Just outside the detection band the value is huge but finite.
        assert!(rigidity_prefactor(root + 1e-3).unwrap().abs() > 10.0);
    }

    #[test]
    fn rigidity_amplitude_breathes() {
        let e1 = 13.6057;
        let zero = rigidity_amplitude(50.0, e1, 0.0).unwrap();
        assert_abs_diff_eq!(zero.norm(), 0.0);
        // Maximum excursion is twice the prefactor, at half the beat period.
        let t_half = PI / (8.0 / 9.0 * e1);
        let peak = rigidity_amplitude(50.0, e1, t_half).unwrap();
        let pref = rigidity_prefactor(50.0).unwrap().abs();
        assert_relative_eq!(peak.norm(), 2.0 * pref, max_relative = 1e-12);
        // Periodicity.
        let period = 2.0 * PI / (8.0 / 9.0 * e1);
        let back = rigidity_amplitude(50.0, e1, period).unwrap();
        assert_abs_diff_eq!(back.norm(), 0.0, epsilon = 1e-11);
    }

    /// Brute-force oracle for the continuum dipole: nested radial x angular
    /// quadrature of int d^3r e^{-i p.r} x psi_1s(r).
    fn planewave_dipole_oracle(p: &ContinuumState, z: u32) -> Complex {
        let ground = BoundState::new(1, 0, 0, z).unwrap();
        let a = ground.bohr();
        let (nodes, weights) = gauss_legendre(48).unwrap();
        let n_phi = 96usize;
        let dphi = 2.0 * PI / n_phi as f64;
        let angular = |r: f64| {
            let mut acc = Complex::new(0.0, 0.0);
            for (&u, &w) in nodes.iter().zip(&weights) {
                let s = (1.0 - u * u).max(0.0).sqrt();
                for j in 0..n_phi {
                    let phi = dphi * j as f64;
                    let (sin_phi, cos_phi) = phi.sin_cos();
                    let dot = p.px * s * cos_phi + p.py * s * sin_phi + p.pz * u;
                    let phase = Complex::from_polar(1.0, -r * dot);
                    acc += phase * s * cos_phi * w * dphi;
                }
            }
            acc
        };
        // The real part is zero by symmetry and integrates angular-quadrature
        // noise, where relative refinement cannot settle; keep the best
        // estimate the accuracy error carries.
        let radial = |part: fn(Complex) -> f64| {
            let result = integrate_radial(
                |r| {
                    let psi = radial_wavefunction(&ground, r).unwrap()
                        / (4.0 * PI).sqrt();
                    part(angular(r)) * r.powi(3) * psi
                },
                a,
                &QuadratureSpec {
                    node_count: 96,
                    target_rel_tol: 1e-9,
                    max_refinements: 4,
                },
            );
            match result {
                Ok(v) => v,
                Err(Error::Accuracy { value, .. }) => value,
                Err(e) => panic!("unexpected error: {e}"),
            }
        };
        Complex::new(radial(|c| c.re), radial(|c| c.im))
    }

    #[test]
    fn planewave_dipole_matches_brute_force() {
        let ground = BoundState::new(1, 0, 0, 1).unwrap();
        let a = ground.bohr();
        for p in [
            ContinuumState::new(0.8 / a, 0.0, 0.0),
            ContinuumState::new(0.5 / a, -0.9 / a, 0.4 / a),
        ] {
            let closed = planewave_dipole_element(&p, &ground).unwrap();
            let oracle = planewave_dipole_oracle(&p, 1);
            assert_relative_eq!(closed.im, oracle.im, max_relative = 1e-6);
            assert_abs_diff_eq!(
                oracle.re,
                0.0,
                epsilon = 1e-8 * closed.im.abs()
            );
        }
    }

    #[test]
    fn planewave_dipole_symmetries_and_scaling() {
        let ground = BoundState::new(1, 0, 0, 1).unwrap();
        let a = ground.bohr();
        // No momentum along the drive axis: no coupling.
        let perp = ContinuumState::new(0.0, 1.1 / a, -0.3 / a);
        assert_abs_diff_eq!(
            planewave_dipole_element(&perp, &ground).unwrap().norm(),
            0.0
        );
        // Doubling p while halving a keeps (pa) fixed: element scales as
        // p_x a^{7/2}, i.e. by 2^(-5/2).
        let p1 = ContinuumState::new(0.7 / a, 0.0, 0.2 / a);
        let e1 = planewave_dipole_element(&p1, &ground).unwrap();
        let ground2 = BoundState::new(1, 0, 0, 2).unwrap(); // a -> a/2
        let p2 = ContinuumState::new(1.4 / a, 0.0, 0.4 / a);
        let e2 = planewave_dipole_element(&p2, &ground2).unwrap();
        assert_relative_eq!(
            e2.im / e1.im,
            2.0f64.powf(-2.5),
            max_relative = 1e-12
        );
        // Excited reference states are out of scope for the closed form.
        let excited = BoundState::new(2, 0, 0, 1).unwrap();
        assert!(matches!(
            planewave_dipole_element(&p1, &excited),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn bound_dipole_elements() {
        let a = st(1, 0, 0).bohr();
        // m-diagonal x-dipole vanishes between m = 0 states.
        assert_abs_diff_eq!(
            dipole_x_element(&st(2, 1, 0), &st(1, 0, 0), &spec()).unwrap(),
            0.0
        );
        // The m = +-1 partners carry the coupling; the root-sum-square over
        // the 2p manifold is the aligned-axis dipole 128 sqrt(2)/243 a.
        let mut sum_sq = 0.0;
        for m in [-1i32, 0, 1] {
            let d = dipole_x_element(&st(2, 1, m), &st(1, 0, 0), &spec()).unwrap();
            sum_sq += d * d;
        }
        let aligned = 128.0 * 2.0f64.sqrt() / 243.0 * a;
        assert_relative_eq!(sum_sq.sqrt(), aligned, max_relative = 1e-10);
    }
}
