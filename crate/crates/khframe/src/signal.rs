//! Power spectra of sampled signals: FFT, peak finding, linewidths.

use crate::error::{Error, Result};
use crate::Complex;
use rustfft::FftPlanner;

/// One-sided power spectrum of a real signal.
#[derive(Debug, Clone)]
pub struct PowerSpectrum {
    /// Angular frequencies, eV, ascending from zero to Nyquist.
    pub frequency: Vec<f64>,
    /// |X_j|^2 in the unnormalized FFT convention.
    pub power: Vec<f64>,
    /// Bin spacing 2 pi / (N dt), eV.
    pub resolution: f64,
}

/// FFT power spectrum of uniformly sampled real data with time step dt
/// (1/eV). Keeps bins 0..=N/2.
pub fn power_spectrum(samples: &[f64], dt: f64) -> Result<PowerSpectrum> {
    if samples.len() < 2 {
        return Err(Error::Domain(format!(
            "need at least 2 samples, got {}",
            samples.len()
        )));
    }
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::Domain(format!("time step must be positive, got {dt}")));
    }
    let n = samples.len();
    let mut buffer: Vec<Complex> =
        samples.iter().map(|&s| Complex::new(s, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buffer);
    let resolution = 2.0 * std::f64::consts::PI / (n as f64 * dt);
    let half = n / 2;
    let frequency = (0..=half).map(|j| j as f64 * resolution).collect();
    let power = buffer[..=half].iter().map(|x| x.norm_sqr()).collect();
    Ok(PowerSpectrum { frequency, power, resolution })
}

/// A local maximum of the power spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub index: usize,
    pub frequency: f64,
    pub power: f64,
}

/// Interior local maxima at or above `rel_floor` times the strongest bin,
/// strongest first.
pub fn find_peaks(spectrum: &PowerSpectrum, rel_floor: f64) -> Vec<Peak> {
    let p = &spectrum.power;
    let top = p.iter().cloned().fold(0.0f64, f64::max);
    let mut peaks: Vec<Peak> = (1..p.len().saturating_sub(1))
        .filter(|&i| p[i] > p[i - 1] && p[i] >= p[i + 1] && p[i] >= rel_floor * top)
        .map(|i| Peak { index: i, frequency: spectrum.frequency[i], power: p[i] })
        .collect();
    peaks.sort_by(|a, b| b.power.total_cmp(&a.power));
    peaks
}

/// Full width at half maximum around a peak, by linear interpolation of the
/// half-power crossings. `None` when a crossing runs off either end of the
/// spectrum (window too short or peak at the edge).
pub fn fwhm(spectrum: &PowerSpectrum, peak_index: usize) -> Option<f64> {
    let p = &spectrum.power;
    let f = &spectrum.frequency;
    if peak_index == 0 || peak_index + 1 >= p.len() {
        return None;
    }
    let half = p[peak_index] / 2.0;

    let mut right = None;
    for j in peak_index + 1..p.len() {
        if p[j] < half {
            let t = (half - p[j - 1]) / (p[j] - p[j - 1]);
            right = Some(f[j - 1] + t * (f[j] - f[j - 1]));
            break;
        }
    }
    let mut left = None;
    for j in (0..peak_index).rev() {
        if p[j] < half {
            let t = (half - p[j + 1]) / (p[j] - p[j + 1]);
            left = Some(f[j + 1] + t * (f[j] - f[j + 1]));
            break;
        }
    }
    Some(right? - left?)
}
