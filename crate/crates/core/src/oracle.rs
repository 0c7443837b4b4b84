//! Independent reference computations used to check the main code paths.
//! Nothing outside verification calls into this module.

use nalgebra::{Matrix4, Vector4};

use crate::dressed::BlochState;
use crate::dynamics::BlochCoefficients;
use crate::error::{Error, Result};

/// Exact propagation of the affine system through the exponential of the
/// augmented homogeneous generator `[[A, b], [0, 0]]`.
pub fn expm_propagate(state0: &BlochState, coeffs: &BlochCoefficients, t: f64) -> Result<BlochState> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::invalid("t", format!("must be non-negative, got {t}")));
    }
    let (a, b) = coeffs.system();
    let mut m = Matrix4::<f64>::zeros();
    for i in 0..3 {
        for j in 0..3 {
            m[(i, j)] = a[i][j] * t;
        }
        m[(i, 3)] = b[i] * t;
    }
    let v = m.exp() * Vector4::new(state0.x, state0.y, state0.z, 1.0);
    if v.iter().any(|c| !c.is_finite()) {
        return Err(Error::NumericalBlowup { t });
    }
    Ok(BlochState::new(v[0], v[1], v[2]))
}

/// Termwise double sum `Σ_{j,l} [j = l ? 1 : z cos((j − l)δ)]`.
pub fn brute_force_chain(n_atoms: usize, z: f64, delta: f64) -> Result<f64> {
    if n_atoms == 0 || n_atoms > 64 {
        return Err(Error::invalid("n_atoms", format!("brute force supports 1..=64, got {n_atoms}")));
    }
    let mut total = 0.0;
    for j in 0..n_atoms {
        for l in 0..n_atoms {
            total += if j == l { 1.0 } else { z * ((j as f64 - l as f64) * delta).cos() };
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FringeScan {
    pub i_max: f64,
    pub i_min: f64,
    pub arg_max: f64,
    pub arg_min: f64,
    pub visibility: f64,
}

pub const DEFAULT_SCAN_GRID: usize = 4096;

/// Vertex `(offset, value)` of the parabola through three equally spaced samples,
/// offset in units of the grid spacing.
fn parabola_vertex(left: f64, mid: f64, right: f64) -> (f64, f64) {
    let curvature = left - 2.0 * mid + right;
    if curvature == 0.0 {
        return (0.0, mid);
    }
    let offset = (0.5 * (left - right) / curvature).clamp(-1.0, 1.0);
    (offset, mid - 0.25 * (left - right) * offset)
}

/// Samples `curve` on a uniform grid over `α ∈ [0, π]`, refines every local
/// extremum with a three-point quadratic fit and reports the contrast
/// `(I_max − I_min)/(I_max + I_min)`.
pub fn fringe_scan(curve: impl Fn(f64) -> f64, grid: usize) -> Result<FringeScan> {
    if grid < 1024 {
        return Err(Error::invalid("grid", format!("need at least 1024 points, got {grid}")));
    }
    let h = std::f64::consts::PI / (grid - 1) as f64;
    let samples: Vec<f64> = (0..grid).map(|i| curve(i as f64 * h)).collect();
    if samples.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("curve", "non-finite sample"));
    }

    let (mut i_max, mut arg_max) = (samples[0], 0.0);
    let (mut i_min, mut arg_min) = (samples[0], 0.0);
    let last = grid - 1;
    if samples[last] > i_max {
        (i_max, arg_max) = (samples[last], std::f64::consts::PI);
    }
    if samples[last] < i_min {
        (i_min, arg_min) = (samples[last], std::f64::consts::PI);
    }
    for i in 1..last {
        let (l, m, r) = (samples[i - 1], samples[i], samples[i + 1]);
        let is_peak = m >= l && m >= r;
        let is_trough = m <= l && m <= r;
        if !(is_peak || is_trough) {
            continue;
        }
        let (offset, value) = parabola_vertex(l, m, r);
        let at = (i as f64 + offset) * h;
        if is_peak && value > i_max {
            (i_max, arg_max) = (value, at);
        }
        if is_trough && value < i_min {
            (i_min, arg_min) = (value, at);
        }
    }
    let i_min = i_min.max(0.0);
    let visibility = if i_max - i_min < 1e-12 * i_max.abs() { 0.0 } else { (i_max - i_min) / (i_max + i_min) };
    Ok(FringeScan { i_max, i_min, arg_max, arg_min, visibility })
}

/// Random inputs for the equivalence checks.
pub mod sampling {
    use std::f64::consts::FRAC_PI_2;

    use rand::Rng;

    use crate::dressed::{dressed_frame, CollectivePopulations, DressedFrame, DriveParams};
    use crate::dynamics::{BlochCoefficients, PerBand};

    pub fn log_uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
        (rng.gen_range(lo.ln()..hi.ln())).exp()
    }

    /// Resonant-strength drive with mixing angle drawn uniformly from `[margin, π/2 − margin]`.
    pub fn frame_with_random_theta(rng: &mut impl Rng, margin: f64) -> DressedFrame {
        let theta: f64 = rng.gen_range(margin..FRAC_PI_2 - margin);
        let detuning = 2.0 * 100.0 / (2.0 * theta).tan();
        dressed_frame(&DriveParams { rabi: 100.0, detuning, carrier: 1e8 }).expect("valid drive")
    }

    /// Rates log-uniform in `[1e-2, 1e2]`, collective couplings uniform in `[−1, 1]`.
    pub fn coefficients(rng: &mut impl Rng, frame: &DressedFrame, coupled: bool) -> BlochCoefficients {
        let gamma = PerBand {
            lb: log_uniform(rng, 1e-2, 1e2),
            cb: log_uniform(rng, 1e-2, 1e2),
            rb: log_uniform(rng, 1e-2, 1e2),
        };
        let chi = if coupled {
            PerBand { lb: rng.gen_range(-1.0..=1.0), cb: rng.gen_range(-1.0..=1.0), rb: rng.gen_range(-1.0..=1.0) }
        } else {
            PerBand { lb: 0.0, cb: 0.0, rb: 0.0 }
        };
        BlochCoefficients::from_rates(frame, gamma, chi)
    }

    /// Flat Dirichlet draw over the four collective states.
    pub fn populations(rng: &mut impl Rng) -> CollectivePopulations {
        let w: [f64; 4] = std::array::from_fn(|_| -(1.0 - rng.gen::<f64>()).ln());
        let s: f64 = w.iter().sum();
        CollectivePopulations { sigma_ee: w[0] / s, sigma_ss: w[1] / s, sigma_aa: w[2] / s, sigma_gg: w[3] / s }
    }
}
