//! `spectrum`: harmonic line table, time-domain dipole signal, and its FFT.

use khframe::harmonics::{rabi_split_lines, spectrum, HarmonicSpectrum};
use khframe::signal::power_spectrum;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;
use std::path::Path;

use crate::scenario::Scenario;
use crate::{cmd_rates, out, AppError, VERSION};

const DEFAULT_PERIODS: u32 = 16;
const DEFAULT_SAMPLES_PER_PERIOD: usize = 2048;

#[derive(Serialize)]
struct SpectrumReport {
    tool_version: &'static str,
    input: Scenario,
    /// Common amplitude constant of the lines, eV.
    constant_ev: f64,
    keldysh_gamma: f64,
    line_count: usize,
    first_harmonic_order: u32,
    cutoff_order: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    damping_ev: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rabi_ev: Option<f64>,
    time_series_periods: u32,
    samples_per_period: usize,
}

pub fn run(
    scn: &Scenario,
    dir: &Path,
    no_damping: bool,
    rabi: Option<f64>,
) -> Result<(), AppError> {
    let atom = scn.atom()?;
    let laser = scn.laser()?;
    // Default envelope: decay at the total ionization rate.
    let damping = if no_damping { None } else { Some(cmd_rates::compute(scn)?.total) };
    let spec = spectrum(&atom, &laser, damping, scn.run.max_lines)?;
    out::ensure_dir(dir)?;

    let mut csv =
        out::Csv::create(dir, "lines.csv", "n,harmonic_order,frequency_ev,amplitude_ev")?;
    for l in &spec.lines {
        csv.row(&format!(
            "{},{},{},{}",
            l.n,
            l.order,
            out::num(l.frequency),
            out::num(l.amplitude)
        ))?;
    }
    let lines_path = csv.finish()?;
    eprintln!("wrote {}", lines_path.display());

    if let Some(r) = rabi {
        let split = rabi_split_lines(&spec, r)?;
        let mut csv =
            out::Csv::create(dir, "split_lines.csv", "frequency_ev,amplitude_ev")?;
        for l in &split {
            csv.row(&format!("{},{}", out::num(l.frequency), out::num(l.amplitude)))?;
        }
        let path = csv.finish()?;
        eprintln!("wrote {}", path.display());
    }

    let periods = scn.run.periods.unwrap_or(DEFAULT_PERIODS);
    let per_period =
        scn.run.samples_per_period.unwrap_or(DEFAULT_SAMPLES_PER_PERIOD);
    let (times, dt) = sample_times(&spec, periods, per_period);
    let signal = sample_signal(&spec, rabi, &times);

    let mut csv = out::Csv::create(dir, "timeseries.csv", "time_inv_ev,dipole_ev")?;
    for (t, x) in times.iter().zip(&signal) {
        csv.row(&format!("{},{}", out::num(*t), out::num(*x)))?;
    }
    let ts_path = csv.finish()?;
    eprintln!("wrote {}", ts_path.display());

    let power = power_spectrum(&signal, dt)?;
    let mut csv = out::Csv::create(dir, "fft.csv", "frequency_ev,power")?;
    for (f, p) in power.frequency.iter().zip(&power.power) {
        csv.row(&format!("{},{}", out::num(*f), out::num(*p)))?;
    }
    let fft_path = csv.finish()?;
    eprintln!("wrote {}", fft_path.display());

    let report = SpectrumReport {
        tool_version: VERSION,
        input: scn.clone(),
        constant_ev: spec.constant,
        keldysh_gamma: spec.gamma,
        line_count: spec.lines.len(),
        first_harmonic_order: spec.lines.first().map_or(0, |l| l.order),
        cutoff_order: spec.lines.last().map_or(0, |l| l.order),
        damping_ev: spec.damping,
        rabi_ev: rabi,
        time_series_periods: periods,
        samples_per_period: per_period,
    };
    let json_path = out::write_json(dir, "spectrum.json", &report)?;
    eprintln!("wrote {}", json_path.display());

    println!("scenario              {}", scn.label());
    println!("amplitude constant    {:.6e} eV", report.constant_ev);
    println!("keldysh gamma         {:.4}", report.keldysh_gamma);
    println!(
        "lines                 {} (orders {}..{})",
        report.line_count, report.first_harmonic_order, report.cutoff_order
    );
    match report.damping_ev {
        Some(g) => println!("damping               {g:.6e} eV (ionization rate)"),
        None => println!("damping               off"),
    }
    if let Some(r) = rabi {
        println!("rabi splitting        {r:.6e} eV (doublets at +-{:.3e})", r / 2.0);
    }
    Ok(())
}

fn sample_times(
    spec: &HarmonicSpectrum,
    periods: u32,
    per_period: usize,
) -> (Vec<f64>, f64) {
    let dt = 2.0 * PI / spec.drive / per_period as f64;
    let n = periods as usize * per_period;
    ((0..n).map(|i| i as f64 * dt).collect(), dt)
}

fn sample_signal(
    spec: &HarmonicSpectrum,
    rabi: Option<f64>,
    times: &[f64],
) -> Vec<f64> {
    // Chunked evaluation: elementwise, so the parallel order cannot change
    // the bytes written.
    times
        .par_chunks(4096)
        .flat_map_iter(|chunk| match rabi {
            Some(r) => spec.dipole_signal_modulated(r, chunk),
            None => spec.dipole_signal(chunk),
        })
        .collect()
}
