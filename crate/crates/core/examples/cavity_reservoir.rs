// Emitters next to a Lorentzian cavity mode tuned to the upper sideband.
//
// Builds the reservoir, reports the sideband asymmetry and the strong-field
// validity ratios, then solves for the steady state with collective
// coupling switched on.

use std::error::Error;
use std::f64::consts::PI;

use dressed_interference::{
    coefficients, dressed_frame, eta, steady_state, validity_check, visibilities, CouplingModel, DriveParams,
    Geometry, ReservoirProfile,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let drive = DriveParams::resonant(1.0e4)?;
    let frame = dressed_frame(&drive)?;
    let cavity = ReservoirProfile::lorentzian_cavity(1.0, 99.0, drive.carrier + 2.0e4, 5.0)?;
    let geometry = Geometry::pair(2.5 * PI)?;

    println!("omega_- = {:.1}, omega_+ = {:.1}", frame.omega_minus, frame.omega_plus);
    println!("eta = {:.4}", eta(&cavity, &frame)?);

    let report = validity_check(&frame, &cavity, CouplingModel::ScalarSinc, &geometry, 50.0)?;
    println!("strong field ok: {}, dipole-dipole warning: {}", report.strong_field_ok, report.dipole_dipole_warning);
    for (name, ratio) in &report.ratios {
        println!("  {name:<28} {ratio:.3e}");
    }

    let coeffs = coefficients(&frame, &cavity, CouplingModel::ScalarSinc, &geometry)?;
    let state = steady_state(&coeffs)?;
    let pops = state.populations()?;
    println!("steady state {state:?}");
    println!("visibilities {:?}", visibilities(&pops)?);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
