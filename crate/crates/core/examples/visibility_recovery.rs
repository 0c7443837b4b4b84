// Central-band fringe visibility as the reservoir suppresses one sideband.
//
// With equal sideband decay rates the dressed populations saturate and the
// central-band fringes vanish. Putting the carrier on a band edge makes the
// two sidebands decay at different rates, and the visibility climbs back
// towards one.
//
// ```bash
// cargo run --example visibility_recovery
// ```

use std::error::Error;
use std::f64::consts::PI;

use dressed_interference::scan::pipeline_visibility;
use dressed_interference::{
    dressed_frame, eta, eta_visibility_closed_form, CouplingModel, DriveParams, Geometry, ReservoirProfile,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let drive = DriveParams::resonant(100.0)?;
    let frame = dressed_frame(&drive)?;
    let geometry = Geometry::pair(20.0 * PI)?;

    // Edge on the carrier: gamma = 1 below, 0.05 above.
    let edge = ReservoirProfile::band_gap_step(1.0, 0.05, drive.carrier)?;
    println!("band-edge reservoir gives eta = {:.3}", eta(&edge, &frame)?);

    println!("{:>10} {:>12} {:>12}", "eta", "V_cb", "closed form");
    for eta_value in [1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0, 1e3] {
        let v = pipeline_visibility(&frame, CouplingModel::Off, &geometry, eta_value)?;
        let expected = eta_visibility_closed_form(eta_value)?;
        println!("{eta_value:>10.3e} {v:>12.8} {expected:>12.8}");
        assert!((v - expected).abs() < 1e-12);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
