//! `rates`: above-threshold ionization channel sum, with an optional
//! quadrature cross-check of the leading channels.

use khframe::rates::{
    ati_rate_closed, channel_rate_closed, golden_rule_channel_hydrogenic,
    RateOptions, RateResult,
};
use khframe::units::consts;
use rayon::prelude::*;
use serde::Serialize;
use std::path::Path;

use crate::scenario::Scenario;
use crate::{out, AppError, VERSION};

/// Channels the oracle re-derives by shell quadrature.
const ORACLE_CHANNELS: usize = 10;
/// Acceptable closed-vs-quadrature relative deviation.
const ORACLE_TOL: f64 = 1e-2;

#[derive(Serialize)]
struct RatesReport {
    tool_version: &'static str,
    input: Scenario,
    total_rate_ev: f64,
    /// hbar / Gamma.
    lifetime_s: f64,
    threshold_channel_n0: u32,
    first_harmonic_order: u32,
    stored_channels: usize,
    tail_bound_ev: f64,
    tail_bound_relative: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_max_rel_deviation: Option<f64>,
}

pub fn compute(scn: &Scenario) -> Result<RateResult, AppError> {
    let atom = scn.atom()?;
    let laser = scn.laser()?;
    let defaults = RateOptions::default();
    let opts = RateOptions {
        tail_rel_tol: scn.run.tail_rel_tol.unwrap_or(defaults.tail_rel_tol),
        store_channels: scn.run.store_channels.unwrap_or(defaults.store_channels),
        max_channels: scn.run.max_channels.unwrap_or(defaults.max_channels),
    };
    ati_rate_closed(laser.photon, laser.ponderomotive, atom.ionization, &opts)
        .map_err(AppError::Lib)
}

pub fn run(scn: &Scenario, dir: &Path, oracle: bool) -> Result<(), AppError> {
    let atom = scn.atom()?;
    let laser = scn.laser()?;
    let result = compute(scn)?;
    out::ensure_dir(dir)?;

    let mut csv = out::Csv::create(
        dir,
        "channels.csv",
        "n,photon_order,electron_energy_ev,rate_ev",
    )?;
    for c in &result.channels {
        csv.row(&format!(
            "{},{},{},{}",
            c.n,
            c.order,
            out::num(c.electron_energy),
            out::num(c.rate)
        ))?;
    }
    let channels_path = csv.finish()?;

    let mut oracle_max = None;
    if oracle {
        let picks: Vec<_> =
            result.channels.iter().take(ORACLE_CHANNELS).collect();
        let rows: Vec<(u32, u32, f64, f64, f64)> = picks
            .par_iter()
            .map(|c| {
                let quad =
                    golden_rule_channel_hydrogenic(c.n, atom.ionization, &laser)?;
                let closed = channel_rate_closed(
                    c.n,
                    laser.photon,
                    laser.ponderomotive,
                    atom.ionization,
                )?;
                let dev = (quad / closed - 1.0).abs();
                Ok((c.n, c.order, closed, quad, dev))
            })
            .collect::<Result<_, khframe::Error>>()?;
        let mut csv = out::Csv::create(
            dir,
            "oracle.csv",
            "n,photon_order,closed_rate_ev,quadrature_rate_ev,rel_deviation",
        )?;
        let mut worst = 0.0f64;
        for (n, order, closed, quad, dev) in &rows {
            worst = worst.max(*dev);
            csv.row(&format!(
                "{},{},{},{},{}",
                n,
                order,
                out::num(*closed),
                out::num(*quad),
                out::num(*dev)
            ))?;
        }
        let path = csv.finish()?;
        eprintln!("wrote {}", path.display());
        println!(
            "oracle: {} channels re-derived by shell quadrature, max relative \
             deviation {worst:.3e}",
            rows.len()
        );
        if worst > ORACLE_TOL {
            return Err(AppError::Tolerance(format!(
                "oracle deviation {worst:.3e} exceeds {ORACLE_TOL:.0e}; see {}",
                dir.join("oracle.csv").display()
            )));
        }
        oracle_max = Some(worst);
    }

    let report = RatesReport {
        tool_version: VERSION,
        input: scn.clone(),
        total_rate_ev: result.total,
        lifetime_s: consts::HBAR_EV_S / result.total,
        threshold_channel_n0: result.n0,
        first_harmonic_order: 2 * result.n0 + 1,
        stored_channels: result.channels.len(),
        tail_bound_ev: result.tail_bound,
        tail_bound_relative: result.tail_bound / result.total,
        oracle_max_rel_deviation: oracle_max,
    };
    let json_path = out::write_json(dir, "rates.json", &report)?;

    println!("scenario              {}", scn.label());
    println!("total rate            {:.6e} eV", report.total_rate_ev);
    println!("lifetime              {:.4e} s", report.lifetime_s);
    println!(
        "threshold channel     n0 = {} (first order {})",
        report.threshold_channel_n0, report.first_harmonic_order
    );
    println!(
        "tail bound            {:.3e} eV ({:.3e} relative)",
        report.tail_bound_ev, report.tail_bound_relative
    );
    eprintln!("wrote {}", channels_path.display());
    eprintln!("wrote {}", json_path.display());
    Ok(())
}
