// Relaxation of the collective state from both emitters in the ground state.
//
// The fixed-step integrator is compared with the exact matrix exponential
// along the way, and the late-time state with the direct steady-state solve.

use std::error::Error;

use dressed_interference::dynamics::{default_step, trajectory, BlochCoefficients, PerBand};
use dressed_interference::oracle::expm_propagate;
use dressed_interference::{dressed_frame, steady_state, BlochState, DriveParams};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let frame = dressed_frame(&DriveParams::new(100.0, 60.0, 1e8)?)?;
    let gamma = PerBand { lb: 1.0, cb: 0.7, rb: 0.2 };
    let chi = PerBand { lb: 0.3, cb: -0.1, rb: 0.05 };
    let coeffs = BlochCoefficients::from_rates(&frame, gamma, chi);

    let start = BlochState::new(0.0, 0.0, 1.0);
    let t_end = 20.0 / coeffs.xi_plus;
    let dt = default_step(&coeffs);
    let path = trajectory(&start, &coeffs, t_end, 11, dt)?;

    println!("{:>10} {:>12} {:>12} {:>12} {:>10}", "t", "x", "y", "z", "|rk4-expm|");
    for (t, state) in &path {
        let exact = expm_propagate(&start, &coeffs, *t)?;
        println!(
            "{t:>10.4} {:>12.8} {:>12.8} {:>12.8} {:>10.1e}",
            state.x,
            state.y,
            state.z,
            state.max_abs_diff(&exact)
        );
    }
    let fixed_point = steady_state(&coeffs)?;
    println!("steady state {fixed_point:?}");
    println!("distance at t_end {:.2e}", path.last().unwrap().1.max_abs_diff(&fixed_point));
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
