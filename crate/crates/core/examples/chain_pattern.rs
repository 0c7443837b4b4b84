// Angular central-band intensity for a pair and for a chain of eight
// emitters spaced by `k r = 20π`.
//
// ```bash
// cargo run --example chain_pattern
// ```

use std::error::Error;
use std::f64::consts::PI;

use dressed_interference::observables::array_factor;
use dressed_interference::oracle::brute_force_chain;
use dressed_interference::{chain_intensity, BlochState};

const K_R: f64 = 20.0 * PI;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let state = BlochState::new(0.0, 0.0, 0.9);
    println!("populations (ee, ss, aa, gg) = {:?}", state.populations()?.as_array());

    for n in [2usize, 8] {
        let norm = (n * n) as f64;
        let values: Vec<f64> =
            (0..=2000).map(|i| chain_intensity(n, state.z, K_R * (PI * i as f64 / 2000.0).cos()) / norm).collect();
        let peak = values.iter().cloned().fold(f64::MIN, f64::max);
        let trough = values.iter().cloned().fold(f64::MAX, f64::min);
        let delta = K_R * 0.27;
        println!(
            "N = {n}: peak {peak:.4}, trough {trough:.4}; at cos α = 0.27 closed form {:.9}, double sum {:.9}",
            chain_intensity(n, state.z, delta) / norm,
            brute_force_chain(n, state.z, delta)? / norm
        );
    }

    let samples: Vec<f64> = (1..2000).map(|i| array_factor(8, 2.0 * PI * i as f64 / 2000.0)).collect();
    let secondary = samples.windows(3).filter(|w| w[1] > w[0] && w[1] > w[2]).count();
    println!("secondary maxima between principal peaks, N = 8: {secondary}");
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
