// Coincident-detector correlation in the central band.
//
// With saturated populations the strong-field `g²(δ, δ)` oscillates as
// `1 + cos²δ`, twice per period of the weak-field curve.

use std::error::Error;
use std::f64::consts::TAU;

use dressed_interference::{g2_band, g2_weak_field, photon_statistics_class, visibilities, BandId, CollectivePopulations};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let pops = CollectivePopulations::uniform();
    let vis = visibilities(&pops)?;

    println!("{:>8} {:>10} {:>10} {:>22}", "delta", "strong", "weak", "weak-field statistics");
    for i in 0..=16 {
        let delta = TAU * i as f64 / 16.0;
        let strong = g2_band(BandId::Cb, &pops, &vis, delta, delta)?;
        let weak = g2_weak_field(0.9, delta)?;
        println!("{delta:>8.4} {strong:>10.6} {weak:>10.6} {:>22?}", photon_statistics_class(weak)?);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
