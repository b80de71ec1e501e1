//! `selftest`: fast regression sweep over the bundled fixtures, printing one
//! line per check. Any failure exits with the tolerance code.

use khframe::dressed::{reconstruct_cos_drive, vk_numeric, SoftCoulomb, SpacePoint};
use khframe::harmonics::{amplitude_constant, cutoff_order};
use khframe::rates::{
    ati_rate_closed, channel_rate_closed, golden_rule_channel_hydrogenic,
    RateOptions,
};
use khframe::special::QuadratureSpec;
use khframe::twolevel::{evolve_recorded, State2, Stepper, TwoLevelParams};
use khframe::units::{keldysh_gamma, min_harmonic_order, AtomSpec, LaserParams};
use khframe::Error;
use std::f64::consts::PI;

use crate::AppError;

struct Check {
    name: &'static str,
    outcome: Result<String, String>,
}

fn rel(value: f64, reference: f64) -> f64 {
    (value / reference - 1.0).abs()
}

fn within(name: &'static str, value: f64, reference: f64, tol: f64) -> Check {
    let r = rel(value, reference);
    let detail = format!("{value:.4e} vs {reference:.4e} (rel {r:.2e}, tol {tol:.0e})");
    Check {
        name,
        outcome: if r <= tol { Ok(detail) } else { Err(detail) },
    }
}

fn equals_int(name: &'static str, value: u32, reference: u32) -> Check {
    let detail = format!("{value} (expected {reference})");
    Check {
        name,
        outcome: if value == reference { Ok(detail) } else { Err(detail) },
    }
}

pub fn run() -> Result<(), AppError> {
    let laser = LaserParams::from_intensity(1.177, 1.5e15).map_err(AppError::Lib)?;
    let he = AtomSpec::helium();
    let ne = AtomSpec::neon();
    let mut checks = Vec::new();

    checks.push(within("helium U_p", laser.ponderomotive, 155.0, 0.01));
    let gamma_he =
        keldysh_gamma(he.ionization, laser.ponderomotive).map_err(AppError::Lib)?;
    checks.push(within("helium keldysh gamma", gamma_he, 0.40, 0.02));
    checks.push(equals_int(
        "helium threshold n0",
        min_harmonic_order(he.ionization, laser.photon).map_err(AppError::Lib)?,
        10,
    ));
    checks.push(equals_int(
        "neon threshold n0",
        min_harmonic_order(ne.ionization, laser.photon).map_err(AppError::Lib)?,
        9,
    ));
    checks.push(equals_int(
        "helium cutoff order",
        cutoff_order(laser.photon, he.ionization, laser.ponderomotive)
            .map_err(AppError::Lib)?,
        417,
    ));

    let opts = RateOptions::default();
    let he_rate =
        ati_rate_closed(laser.photon, laser.ponderomotive, he.ionization, &opts)
            .map_err(AppError::Lib)?;
    checks.push(within("helium ionization rate", he_rate.total, 0.026, 0.30));
    let ne_rate =
        ati_rate_closed(laser.photon, laser.ponderomotive, ne.ionization, &opts)
            .map_err(AppError::Lib)?;
    checks.push(within("neon ionization rate", ne_rate.total, 0.02, 0.30));

    checks.push(within(
        "helium amplitude constant",
        amplitude_constant(he.z, laser.photon, he.ionization, laser.ponderomotive)
            .map_err(AppError::Lib)?,
        0.32e-8,
        0.05,
    ));
    checks.push(within(
        "neon amplitude constant",
        amplitude_constant(ne.z, laser.photon, ne.ionization, laser.ponderomotive)
            .map_err(AppError::Lib)?,
        0.12e-7,
        0.05,
    ));

    // Shell-quadrature oracle against the closed channel terms.
    let n0 = he_rate.n0;
    let mut worst = 0.0f64;
    for n in [n0, n0 + 4, n0 + 9] {
        let quad = golden_rule_channel_hydrogenic(n, he.ionization, &laser)
            .map_err(AppError::Lib)?;
        let closed =
            channel_rate_closed(n, laser.photon, laser.ponderomotive, he.ionization)
                .map_err(AppError::Lib)?;
        worst = worst.max(rel(quad, closed));
    }
    checks.push(Check {
        name: "golden-rule oracle",
        outcome: if worst <= 1e-2 {
            Ok(format!("max channel deviation {worst:.2e} (tol 1e-2)"))
        } else {
            Err(format!("max channel deviation {worst:.2e} (tol 1e-2)"))
        },
    });

    checks.push(frame_residual_check(laser.photon)?);
    checks.push(reconstruction_check(&laser)?);

    let mut failures = 0;
    for c in &checks {
        match &c.outcome {
            Ok(detail) => println!("[selftest] {:<28} ok      {detail}", c.name),
            Err(detail) => {
                failures += 1;
                println!("[selftest] {:<28} FAILED  {detail}", c.name);
            }
        }
    }
    println!("[selftest] {} checks, {failures} failed", checks.len());
    if failures > 0 {
        return Err(AppError::Tolerance(format!(
            "{failures} selftest check(s) failed"
        )));
    }
    Ok(())
}

/// Ten cycles at the first Bessel-zero modulation index: lab and dressed
/// frames must tell the same population story at cycle boundaries.
fn frame_residual_check(drive: f64) -> Result<Check, AppError> {
    let index = 2.404_825_557_695_773;
    let params = TwoLevelParams::new(0.1 * drive, index * drive / 2.0, drive)?;
    let cycles = 10usize;
    let per_cycle = 512usize;
    let h = 2.0 * PI / drive / per_cycle as f64;
    let start = State2::excited();
    let lab_field = |t: f64| params.lab_field(t);
    let dressed_field = |t: f64| params.dressed_field_exact(t);
    let lab = evolve_recorded(
        &lab_field,
        &start,
        0.0,
        h,
        cycles,
        per_cycle,
        Stepper::CommutatorFree4,
    )?;
    let dressed = evolve_recorded(
        &dressed_field,
        &start,
        0.0,
        h,
        cycles,
        per_cycle,
        Stepper::CommutatorFree4,
    )?;
    let residual = lab
        .inversion
        .iter()
        .zip(&dressed.inversion)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    let detail = format!("{residual:.2e} over {cycles} cycles (tol 1e-8)");
    Ok(Check {
        name: "two-level frame residual",
        outcome: if residual <= 1e-8 { Ok(detail) } else { Err(detail) },
    })
}

/// Rebuild the displaced potential from its harmonic components at one
/// off-axis point and compare with direct evaluation.
fn reconstruction_check(laser: &LaserParams) -> Result<Check, AppError> {
    let lambda = laser.quiver;
    let pot = SoftCoulomb::new(2, 0.01 * lambda)?;
    let point = SpacePoint::new(1.5 * lambda, 0.9 * lambda, -0.4 * lambda);
    let spec = QuadratureSpec::default();
    let comps: Vec<f64> = (0..=16)
        .map(|k| match vk_numeric(k, &point, lambda, &pot, &spec) {
            Ok(v) => Ok(v),
            // Components near roundoff can't converge in relative terms;
            // their best estimate is still far below the reconstruction
            // tolerance.
            Err(Error::Accuracy { value, .. }) => Ok(value),
            Err(e) => Err(AppError::Lib(e)),
        })
        .collect::<Result<_, _>>()?;
    let mut worst = 0.0f64;
    for j in 0..8 {
        let phase = 2.0 * PI * f64::from(j) / 8.0 + 0.05;
        let direct = pot
            .eval_r2((point.x + lambda * phase.cos()).powi(2) + point.rho2());
        let rebuilt = reconstruct_cos_drive(&comps, phase);
        worst = worst.max(rel(rebuilt, direct));
    }
    let detail = format!("max pointwise deviation {worst:.2e} (tol 1e-8)");
    Ok(Check {
        name: "component reconstruction",
        outcome: if worst <= 1e-8 { Ok(detail) } else { Err(detail) },
    })
}
