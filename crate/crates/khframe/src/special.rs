//! Special-function kernels and the quadratures the physics modules share.
//!
//! The polynomial/Bessel recurrences are generic over the float type; the
//! integrators are f64 because their refinement tolerances are tuned for
//! double precision.

use crate::error::{Error, Result};
use num_traits::{Float, FromPrimitive};
use std::f64::consts::{FRAC_PI_2, PI};

/// Chebyshev polynomial of the first kind, T_k(x), on [-1, 1].
///
/// Evaluated by the three-term recurrence, which commutes bitwise with
/// negation of the argument: `chebyshev_t(k, -x)` is exactly
/// `(-1)^k chebyshev_t(k, x)` in floating point. The pairwise node summation
/// in [`integrate_chebyshev_weight`] relies on that to cancel odd integrands
/// exactly. Arguments outside [-1, 1] (beyond a roundoff allowance) are a
/// domain error.
pub fn chebyshev_t<F: Float + FromPrimitive>(k: u32, x: F) -> Result<F> {
    let one = F::one();
    let slack = F::from_f64(1e-12).expect("constant fits any float");
    if x.abs() > one + slack {
        return Err(Error::Domain(format!(
            "chebyshev argument {:e} outside [-1, 1]",
            x.to_f64().unwrap_or(f64::NAN)
        )));
    }
    let x = if x > one {
        one
    } else if x < -one {
        -one
    } else {
        x
    };
    if k == 0 {
        return Ok(one);
    }
    let two = one + one;
    let mut prev = one;
    let mut cur = x;
    for _ in 1..k {
        let next = two * x * cur - prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Legendre polynomial P_n(x) by the Bonnet recurrence. Defined for all x.
pub fn legendre_p<F: Float + FromPrimitive>(n: u32, x: F) -> F {
    if n == 0 {
        return F::one();
    }
    let mut prev = F::one();
    let mut cur = x;
    for m in 1..n {
        let m_f = F::from_u32(m).expect("small integer fits any float");
        let a = (F::from_u32(2 * m + 1).unwrap() * x * cur
            - m_f * prev)
            / F::from_u32(m + 1).unwrap();
        prev = cur;
        cur = a;
    }
    cur
}

/// Bessel function of the first kind, J_n(x), for integer order.
///
/// Miller's backward recurrence normalized with J_0 + 2 sum J_{2k} = 1.
/// Absolute error below 1e-12 for |x| <= 50 and |n| <= 60 in f64.
pub fn bessel_j<F: Float + FromPrimitive>(n: i32, x: F) -> F {
    let negate_order = n < 0 && n % 2 != 0;
    let n = n.unsigned_abs();
    let negate_arg = x < F::zero() && n % 2 != 0;
    let x = x.abs();

    let value = bessel_j_nonneg(n, x);
    let value = if negate_order { -value } else { value };
    if negate_arg {
        -value
    } else {
        value
    }
}

fn bessel_j_nonneg<F: Float + FromPrimitive>(n: u32, x: F) -> F {
    if x == F::zero() {
        return if n == 0 { F::one() } else { F::zero() };
    }
    let xf = x.to_f64().unwrap_or(0.0);
    // Generous start index: contamination from the arbitrary seed decays
    // super-exponentially over the extra orders.
    let start = ((n as f64).max(xf).ceil() as u32 + 60) & !1;

    let two = F::one() + F::one();
    // Scale bounds from the float's own range so the same code works in f32.
    let rescale_limit = F::max_value().sqrt();
    let rescale = rescale_limit.recip();

    let mut above = F::zero(); // b_{k+1}
    let mut here = F::min_positive_value().sqrt(); // arbitrary seed b_k
    let mut norm = F::zero();
    let mut result = F::zero();

    let mut k = start;
    loop {
        // b_{k-1} = (2k/x) b_k - b_{k+1}
        let below = two * F::from_u32(k).unwrap() / x * here - above;
        above = here;
        here = below;
        k -= 1;

        if k % 2 == 0 && k > 0 {
            norm = norm + two * here;
        }
        if k == n {
            result = here;
        }
        if k == 0 {
            norm = norm + here;
            break;
        }
        if here.abs() > rescale_limit {
            above = above * rescale;
            here = here * rescale;
            norm = norm * rescale;
            result = result * rescale;
        }
    }
    result / norm
}

/// Controls for the adaptive quadratures: starting resolution, the relative
/// tolerance that stops refinement, and how many doublings to allow.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    /// Nodes at the first refinement level (at least 2; rounded up to even).
    pub node_count: usize,
    /// Relative change between successive levels that counts as converged.
    pub target_rel_tol: f64,
    /// Maximum number of resolution doublings after the first level.
    pub max_refinements: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { node_count: 64, target_rel_tol: 1e-10, max_refinements: 6 }
    }
}

impl QuadratureSpec {
    fn validate(&self) -> Result<()> {
        if self.node_count < 2 {
            return Err(Error::Config(format!(
                "node_count must be at least 2, got {}",
                self.node_count
            )));
        }
        if !(self.target_rel_tol.is_finite() && self.target_rel_tol > 0.0) {
            return Err(Error::Config(format!(
                "target_rel_tol must be positive, got {}",
                self.target_rel_tol
            )));
        }
        Ok(())
    }
}

/// Convergence between refinement levels: relative to the result, with a
/// floor at roundoff level of the summed magnitudes so integrals that vanish
/// by cancellation converge to their roundoff-level value instead of
/// chasing an unreachable relative tolerance.
fn converged(new: f64, old: f64, tol: f64, magnitude: f64) -> bool {
    let diff = (new - old).abs();
    diff <= tol * new.abs() || diff <= 1e-14 * magnitude
}

/// Chebyshev-weighted mean of f over [-1, 1]:
///
/// integral of f(u) / (pi sqrt(1 - u^2)) du,
///
/// i.e. the Gauss-Chebyshev rule divided by pi, so f == 1 integrates to 1 and
/// f = u^{2n} gives the Wallis ratio (2n-1)!!/(2n)!!. Nodes are summed in
/// +-u pairs, so integrands of definite parity cancel or reinforce exactly:
/// an odd f yields exactly 0.0 at every refinement level.
pub fn integrate_chebyshev_weight(
    f: impl Fn(f64) -> f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    spec.validate()?;
    let mut n = spec.node_count.next_multiple_of(2);

    let level = |n: usize| -> Result<(f64, f64)> {
        let mut sum = 0.0;
        let mut magnitude = 0.0;
        for i in 0..n / 2 {
            let theta = PI * (2 * i + 1) as f64 / (2 * n) as f64;
            let u = theta.cos();
            let fp = f(u);
            if !fp.is_finite() {
                return Err(Error::Singular {
                    abscissa: u,
                    context: "integrand not finite on [-1, 1]".into(),
                });
            }
            let fm = f(-u);
            if !fm.is_finite() {
                return Err(Error::Singular {
                    abscissa: -u,
                    context: "integrand not finite on [-1, 1]".into(),
                });
            }
            sum += fp + fm;
            magnitude += fp.abs() + fm.abs();
        }
        Ok((sum / n as f64, magnitude / n as f64))
    };

    let (mut estimate, _) = level(n)?;
    for _ in 0..spec.max_refinements {
        n *= 2;
        let (refined, magnitude) = level(n)?;
        if converged(refined, estimate, spec.target_rel_tol, magnitude) {
            return Ok(refined);
        }
        estimate = refined;
    }
    let achieved = {
        let (prev, _) = level(n / 2)?;
        ((estimate - prev) / estimate.abs().max(f64::MIN_POSITIVE)).abs()
    };
    Err(Error::Accuracy {
        target: spec.target_rel_tol,
        achieved,
        refinements: spec.max_refinements,
        value: estimate,
        context: "chebyshev-weighted integral did not converge".into(),
    })
}

/// Integral of f over (0, infinity) for integrands that decay at least
/// exponentially, by the exp-sinh double-exponential rule.
///
/// `scale` sets the abscissa map x = scale * exp(pi/2 sinh t); pick it near
/// the decay length of f. Polynomially decaying integrands do not converge
/// and come back as an accuracy error.
pub fn integrate_radial(
    f: impl Fn(f64) -> f64,
    scale: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    spec.validate()?;
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::Domain(format!(
            "radial scale must be positive, got {scale}"
        )));
    }
    // exp(pi/2 sinh 4.5) spans ~1e31 both ways: more dynamic range than any
    // finite f64 integrand needs, still far from overflow in the weight.
    const T_MAX: f64 = 4.5;

    let level = |h: f64| -> Result<(f64, f64)> {
        let steps = (T_MAX / h).floor() as i64;
        let mut sum = 0.0;
        let mut magnitude = 0.0;
        for i in -steps..=steps {
            let t = i as f64 * h;
            let x = scale * (FRAC_PI_2 * t.sinh()).exp();
            if x == 0.0 || !x.is_finite() {
                continue; // abscissa under/overflowed: contributes nothing
            }
            let fx = f(x);
            if !fx.is_finite() {
                return Err(Error::Singular {
                    abscissa: x,
                    context: "radial integrand not finite".into(),
                });
            }
            let term = fx * x * FRAC_PI_2 * t.cosh();
            if term.is_finite() {
                sum += term;
                magnitude += term.abs();
            }
        }
        Ok((sum * h, magnitude * h))
    };

    let mut h = 2.0 * T_MAX / spec.node_count.max(2) as f64;
    let (mut estimate, _) = level(h)?;
    for _ in 0..spec.max_refinements {
        h /= 2.0;
        let (refined, magnitude) = level(h)?;
        if converged(refined, estimate, spec.target_rel_tol, magnitude) {
            return Ok(refined);
        }
        estimate = refined;
    }
    let achieved = {
        let (prev, _) = level(h * 2.0)?;
        ((estimate - prev) / estimate.abs().max(f64::MIN_POSITIVE)).abs()
    };
    Err(Error::Accuracy {
        target: spec.target_rel_tol,
        achieved,
        refinements: spec.max_refinements,
        value: estimate,
        context: "radial integral did not converge".into(),
    })
}

/// Gauss-Legendre nodes and weights on [-1, 1], ascending nodes.
///
/// Newton iteration on P_n with the derivative from the standard identity;
/// exact for polynomials of degree below 2n.
pub fn gauss_legendre(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Err(Error::Domain("need at least one node".into()));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let p = legendre_p(n as u32, x);
            let pm1 = legendre_p(n as u32 - 1, x);
            dp = nf * (x * p - pm1) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        weights[i] = w;
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok((nodes, weights))
}
