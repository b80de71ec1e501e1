//! Odd-harmonic emission spectra in the tunneling regime.
//!
//! Each open (2n+1)-photon channel radiates at its own odd multiple of the
//! drive frequency. The line strength depends on the dimensionless channel
//! energy x_n = ((2n+1) w - I_B) / (3 U_p): the amplitude rises from zero at
//! threshold, peaks, and decays like x^{-7/2}, with the emission window
//! closing at x = 1 (the familiar I_B + 3 U_p cutoff).

use crate::error::{Error, Result};
use crate::units::{consts, min_harmonic_order, AtomSpec, LaserParams};

fn check_positive(value: f64, what: &str) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::Domain(format!("{what} must be positive, got {value}")))
    }
}

/// Dimensionless channel energy x_n = ((2n+1) w - I_B) / (3 U_p).
///
/// Channels below the ionization threshold are a domain error; the threshold
/// itself gives exactly zero.
pub fn x_parameter(n: u32, omega: f64, ib: f64, up: f64) -> Result<f64> {
    let omega = check_positive(omega, "photon energy")?;
    let ib = check_positive(ib, "ionization energy")?;
    let up = check_positive(up, "ponderomotive energy")?;
    let x = (f64::from(2 * n + 1) * omega - ib) / (3.0 * up);
    if x < 0.0 {
        return Err(Error::Domain(format!(
            "harmonic order {} is below the ionization threshold",
            2 * n + 1
        )));
    }
    Ok(x)
}

/// Overall amplitude constant of the harmonic lines, eV:
///
///   C = (64 / 3^{9/2}) (Z alpha w / U_p^2) gamma^5,
///
/// with gamma = sqrt(I_B / U_p), the crate's Keldysh convention.
pub fn amplitude_constant(z: u32, omega: f64, ib: f64, up: f64) -> Result<f64> {
    if z == 0 {
        return Err(Error::Domain("nuclear charge must be at least 1".into()));
    }
    let omega = check_positive(omega, "photon energy")?;
    let ib = check_positive(ib, "ionization energy")?;
    let up = check_positive(up, "ponderomotive energy")?;
    let gamma = (ib / up).sqrt();
    Ok(64.0 / 3.0f64.powf(4.5) * f64::from(z) * consts::ALPHA * omega
        / (up * up)
        * gamma.powi(5))
}

/// Amplitude of the (2n+1)-th harmonic line, eV (dipole units):
///
///   -C x^{3/2} / (x + gamma^2 / 3)^5.
///
/// Negative by convention: the emitted field opposes the drive.
pub fn line_amplitude(n: u32, z: u32, omega: f64, ib: f64, up: f64) -> Result<f64> {
    let x = x_parameter(n, omega, ib, up)?;
    let c = amplitude_constant(z, omega, ib, up)?;
    let g = ib / up / 3.0;
    Ok(-c * x.powf(1.5) / (x + g).powi(5))
}

/// Small-gamma limit of [`line_amplitude`]: -C x^{-7/2}.
///
/// Valid deep in the tunneling regime where gamma^2/3 << x; the leading
/// relative deviation from the full form is 5 gamma^2 / (3 x). Exactly at
/// threshold (x = 0) the limit does not exist.
pub fn line_amplitude_small_gamma(
    n: u32,
    z: u32,
    omega: f64,
    ib: f64,
    up: f64,
) -> Result<f64> {
    let x = x_parameter(n, omega, ib, up)?;
    if x == 0.0 {
        return Err(Error::Domain(
            "threshold harmonic has no small-gamma limit (x = 0)".into(),
        ));
    }
    let c = amplitude_constant(z, omega, ib, up)?;
    Ok(-c * x.powf(-3.5))
}

/// Largest odd photon number inside the emission window, i.e. the biggest
/// odd N with N w <= I_B + 3 U_p. Errors when the window closes before the
/// first open channel.
pub fn cutoff_order(omega: f64, ib: f64, up: f64) -> Result<u32> {
    let omega = check_positive(omega, "photon energy")?;
    let ib = check_positive(ib, "ionization energy")?;
    let up = check_positive(up, "ponderomotive energy")?;
    let max_photons = ((ib + 3.0 * up) / omega).floor() as i64;
    let odd = if max_photons % 2 == 0 { max_photons - 1 } else { max_photons };
    let n0 = min_harmonic_order(ib, omega)?;
    let first_open = i64::from(2 * n0 + 1);
    if odd < first_open {
        return Err(Error::Domain(format!(
            "emission window closes at {odd} photons, below the first open \
             channel ({first_open} photons)"
        )));
    }
    Ok(odd as u32)
}

/// One emission line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicLine {
    /// Channel index n.
    pub n: u32,
    /// Odd photon number 2n+1.
    pub order: u32,
    /// Line frequency (2n+1) w, eV.
    pub frequency: f64,
    /// Dipole amplitude from [`line_amplitude`], eV.
    pub amplitude: f64,
}

/// Full odd-harmonic spectrum of one atom/laser combination.
#[derive(Debug, Clone)]
pub struct HarmonicSpectrum {
    pub lines: Vec<HarmonicLine>,
    /// The constant C the amplitudes share, eV.
    pub constant: f64,
    /// Keldysh parameter sqrt(I_B / U_p) of the configuration.
    pub gamma: f64,
    /// Amplitude decay rate applied to time signals, eV (typically the total
    /// ionization rate).
    pub damping: Option<f64>,
    /// Drive frequency, eV.
    pub drive: f64,
}

/// All emission lines from the first open channel to the cutoff, optionally
/// truncated to `max_lines`.
pub fn spectrum(
    atom: &AtomSpec,
    laser: &LaserParams,
    damping: Option<f64>,
    max_lines: Option<usize>,
) -> Result<HarmonicSpectrum> {
    if let Some(g) = damping {
        if !(g.is_finite() && g >= 0.0) {
            return Err(Error::Domain(format!(
                "damping rate must be non-negative, got {g}"
            )));
        }
    }
    let omega = laser.photon;
    let ib = atom.ionization;
    let up = laser.ponderomotive;
    let n0 = min_harmonic_order(ib, omega)?;
    let cutoff = cutoff_order(omega, ib, up)?;
    let n_max = (cutoff - 1) / 2;
    let mut lines = Vec::new();
    for n in n0..=n_max {
        if let Some(cap) = max_lines {
            if lines.len() >= cap {
                break;
            }
        }
        let order = 2 * n + 1;
        lines.push(HarmonicLine {
            n,
            order,
            frequency: f64::from(order) * omega,
            amplitude: line_amplitude(n, atom.z, omega, ib, up)?,
        });
    }
    Ok(HarmonicSpectrum {
        lines,
        constant: amplitude_constant(atom.z, omega, ib, up)?,
        gamma: (ib / up).sqrt(),
        damping,
        drive: omega,
    })
}

impl HarmonicSpectrum {
    /// Time-domain dipole signal sum_lines A sin(w_n t), with the common
    /// e^{-damping t} envelope when a damping rate is set.
    pub fn dipole_signal(&self, times: &[f64]) -> Vec<f64> {
        times
            .iter()
            .map(|&t| {
                let envelope = match self.damping {
                    Some(g) => (-g * t).exp(),
                    None => 1.0,
                };
                envelope
                    * self
                        .lines
                        .iter()
                        .map(|l| l.amplitude * (l.frequency * t).sin())
                        .sum::<f64>()
            })
            .collect()
    }

    /// Same signal with every line multiplied by cos(rabi t / 2): the
    /// time-domain form of Rabi splitting.
    pub fn dipole_signal_modulated(&self, rabi: f64, times: &[f64]) -> Vec<f64> {
        times
            .iter()
            .map(|&t| {
                let envelope = match self.damping {
                    Some(g) => (-g * t).exp(),
                    None => 1.0,
                };
                envelope
                    * (rabi * t / 2.0).cos()
                    * self
                        .lines
                        .iter()
                        .map(|l| l.amplitude * (l.frequency * t).sin())
                        .sum::<f64>()
            })
            .collect()
    }
}

/// One component of a Rabi-split doublet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitLine {
    pub frequency: f64,
    pub amplitude: f64,
}

/// Rabi splitting in the frequency domain: each line becomes a doublet at
/// w_n +- rabi/2 with half the amplitude, since
/// A sin(w t) cos(R t / 2) = (A/2)[sin((w + R/2) t) + sin((w - R/2) t)].
pub fn rabi_split_lines(
    spectrum: &HarmonicSpectrum,
    rabi: f64,
) -> Result<Vec<SplitLine>> {
    let rabi = check_positive(rabi, "Rabi frequency")?;
    let mut out = Vec::with_capacity(2 * spectrum.lines.len());
    for line in &spectrum.lines {
        let half = line.amplitude / 2.0;
        out.push(SplitLine { frequency: line.frequency - rabi / 2.0, amplitude: half });
        out.push(SplitLine { frequency: line.frequency + rabi / 2.0, amplitude: half });
    }
    Ok(out)
}
