//! `params`: the derived-quantity report.

use khframe::harmonics::cutoff_order;
use khframe::units::{
    keldysh_gamma, keldysh_gamma_conventional, min_harmonic_order, AtomSpec,
    LaserParams,
};
use serde::Serialize;
use std::path::Path;

use crate::scenario::Scenario;
use crate::{out, AppError, VERSION};

#[derive(Serialize)]
pub struct ParamsReport {
    pub tool_version: &'static str,
    pub input: Scenario,
    pub atom: AtomSpec,
    pub laser: LaserParams,
    /// Quiver amplitude over the Bohr radius of the bare ion.
    pub quiver_over_bohr: f64,
    /// sqrt(I_B / U_p).
    pub keldysh_gamma: f64,
    /// sqrt(I_B / 2 U_p), the convention with the factor-two kinetic split.
    pub keldysh_gamma_conventional: f64,
    /// First channel index with (2 n0 + 1) photons above threshold.
    pub threshold_channel_n0: u32,
    pub first_harmonic_order: u32,
    pub cutoff_order: u32,
}

pub fn build(scn: &Scenario) -> Result<ParamsReport, AppError> {
    let atom = scn.atom()?;
    let laser = scn.laser()?;
    let n0 = min_harmonic_order(atom.ionization, laser.photon)?;
    Ok(ParamsReport {
        tool_version: VERSION,
        input: scn.clone(),
        quiver_over_bohr: laser.quiver / atom.bohr,
        keldysh_gamma: keldysh_gamma(atom.ionization, laser.ponderomotive)?,
        keldysh_gamma_conventional: keldysh_gamma_conventional(
            atom.ionization,
            laser.ponderomotive,
        )?,
        threshold_channel_n0: n0,
        first_harmonic_order: 2 * n0 + 1,
        cutoff_order: cutoff_order(laser.photon, atom.ionization, laser.ponderomotive)?,
        atom,
        laser,
    })
}

pub fn run(scn: &Scenario, dir: &Path, json_stdout: bool) -> Result<(), AppError> {
    let report = build(scn)?;
    out::ensure_dir(dir)?;
    let path = out::write_json(dir, "params.json", &report)?;

    if json_stdout {
        println!(
            "{}",
            serde_json::to_string_pretty(&report)
                .map_err(|e| AppError::Io(format!("serializing report: {e}")))?
        );
    } else {
        let l = &report.laser;
        println!("scenario              {}", scn.label());
        println!("photon                {:.6} eV", l.photon);
        match l.intensity_w_cm2 {
            Some(i) => println!("intensity             {i:.4e} W/cm^2"),
            None => println!("intensity             (given via U_p)"),
        }
        println!("ponderomotive U_p     {:.6} eV", l.ponderomotive);
        println!("peak field            {:.6e} eV^2", l.field);
        println!("quiver amplitude      {:.6e} /eV", l.quiver);
        println!("bohr radius           {:.6e} /eV", report.atom.bohr);
        println!("quiver / bohr         {:.4}", report.quiver_over_bohr);
        println!("keldysh gamma         {:.4}   sqrt(I_B/U_p)", report.keldysh_gamma);
        println!(
            "  conventional        {:.4}   sqrt(I_B/2U_p)",
            report.keldysh_gamma_conventional
        );
        println!(
            "threshold channel     n0 = {} (first harmonic {})",
            report.threshold_channel_n0, report.first_harmonic_order
        );
        println!("cutoff order          {}", report.cutoff_order);
    }
    eprintln!("wrote {}", path.display());
    Ok(())
}
