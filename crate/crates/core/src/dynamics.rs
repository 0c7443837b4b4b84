//! Equations of motion for the reduced collective state `(x, y, z)`.
//!
//! In the strong-field secular limit the dressed two-atom correlators obey the
//! affine system `v̇ = A v + b` with
//!
//! ```text
//! ẋ = −2ξ⁺x + 4ζ⁻y + 4ξ⁻
//! ẏ = −ζ⁻x − 2(c⁰ + ξ⁺)y + 2ζ⁺z
//! ż = 2ξ⁻x + 4ζ⁺y − 4ξ⁺z
//! ```
//!
//! where `ξ^(±) = γ(ω₋) sin⁴θ ± γ(ω₊) cos⁴θ`,
//! `ζ^(±) = γ(ω₋)χ(ω₋) sin⁴θ ± γ(ω₊)χ(ω₊) cos⁴θ` and
//! `c⁰ = γ(ω_L)[1 − χ(ω_L)] sin²2θ`.

use std::f64::consts::TAU;

use crate::dressed::{BandId, BlochState, DressedFrame, Geometry};
use crate::error::{Error, Result};
use crate::reservoir::{collective_chi, CouplingModel, ReservoirProfile};

/// Default strong-field threshold on `Ω̃ / rate`.
pub const DEFAULT_VALIDITY_THRESHOLD: f64 = 50.0;

/// A value per spectral band.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerBand<T> {
    pub lb: T,
    pub cb: T,
    pub rb: T,
}

impl<T: Copy> PerBand<T> {
    pub fn get(&self, band: BandId) -> T {
        match band {
            BandId::Lb => self.lb,
            BandId::Cb => self.cb,
            BandId::Rb => self.rb,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochCoefficients {
    pub xi_plus: f64,
    pub xi_minus: f64,
    pub zeta_plus: f64,
    pub zeta_minus: f64,
    pub c0: f64,
}

impl BlochCoefficients {
    /// Builds the coefficients from band-resolved decay rates `γ(ω_n)` and
    /// collective couplings `χ_ab(ω_n)`.
    pub fn from_rates(frame: &DressedFrame, gamma: PerBand<f64>, chi: PerBand<f64>) -> Self {
        let (s4, c4) = (frame.sin_4(), frame.cos_4());
        let lower = gamma.lb * s4;
        let upper = gamma.rb * c4;
        BlochCoefficients {
            xi_plus: lower + upper,
            xi_minus: lower - upper,
            zeta_plus: lower * chi.lb + upper * chi.rb,
            zeta_minus: lower * chi.lb - upper * chi.rb,
            c0: gamma.cb * (1.0 - chi.cb) * frame.sin_sq_2theta(),
        }
    }

    /// Drift matrix `A` and inhomogeneity `b`.
    pub fn system(&self) -> ([[f64; 3]; 3], [f64; 3]) {
        let BlochCoefficients { xi_plus, xi_minus, zeta_plus, zeta_minus, c0 } = *self;
        let a = [
            [-2.0 * xi_plus, 4.0 * zeta_minus, 0.0],
            [-zeta_minus, -2.0 * (c0 + xi_plus), 2.0 * zeta_plus],
            [2.0 * xi_minus, 4.0 * zeta_plus, -4.0 * xi_plus],
        ];
        (a, [4.0 * xi_minus, 0.0, 0.0])
    }

    /// Infinity norm of the drift matrix, an upper bound on its spectral radius.
    pub fn drift_norm(&self) -> f64 {
        let (a, _) = self.system();
        a.iter().map(|row| row.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.xi_plus, self.xi_minus, self.zeta_plus, self.zeta_minus, self.c0];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("coefficients", "non-finite rate"));
        }
        if self.xi_plus <= 0.0 {
            return Err(Error::DegenerateSystem(format!(
                "xi_plus = {} (no sideband dissipation, steady state not unique)",
                self.xi_plus
            )));
        }
        Ok(())
    }

    fn derivative(&self, v: [f64; 3]) -> [f64; 3] {
        let BlochCoefficients { xi_plus, xi_minus, zeta_plus, zeta_minus, c0 } = *self;
        let [x, y, z] = v;
        [
            -2.0 * xi_plus * x + 4.0 * zeta_minus * y + 4.0 * xi_minus,
            -zeta_minus * x - 2.0 * (c0 + xi_plus) * y + 2.0 * zeta_plus * z,
            2.0 * xi_minus * x + 4.0 * zeta_plus * y - 4.0 * xi_plus * z,
        ]
    }
}

pub fn coefficients(
    frame: &DressedFrame,
    profile: &ReservoirProfile,
    coupling: CouplingModel,
    geometry: &Geometry,
) -> Result<BlochCoefficients> {
    let gamma = PerBand {
        lb: profile.gamma_at(frame.omega_minus)?,
        cb: profile.gamma_at(frame.carrier)?,
        rb: profile.gamma_at(frame.omega_plus)?,
    };
    let chi_at = |w| collective_chi(coupling, w, frame.carrier, geometry.k_r).chi;
    let chi = PerBand { lb: chi_at(frame.omega_minus), cb: chi_at(frame.carrier), rb: chi_at(frame.omega_plus) };
    Ok(BlochCoefficients::from_rates(frame, gamma, chi))
}

/// Default integration step: `10⁻³/ξ⁺`, shortened when the drift matrix is
/// stiff relative to `ξ⁺` so that `‖A‖ dt ≤ 0.02`.
pub fn default_step(coeffs: &BlochCoefficients) -> f64 {
    (1e-3 / coeffs.xi_plus).min(0.02 / coeffs.drift_norm())
}

fn rk4_step(coeffs: &BlochCoefficients, v: [f64; 3], h: f64) -> [f64; 3] {
    let add = |a: [f64; 3], b: [f64; 3], s: f64| [a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]];
    let k1 = coeffs.derivative(v);
    let k2 = coeffs.derivative(add(v, k1, 0.5 * h));
    let k3 = coeffs.derivative(add(v, k2, 0.5 * h));
    let k4 = coeffs.derivative(add(v, k3, h));
    let mut out = v;
    for i in 0..3 {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

/// Integrates from `state0` over a duration `t` with classical RK4. The step
/// is `t / ⌈t / dt⌉`, so the final time is hit exactly.
pub fn evolve(state0: &BlochState, coeffs: &BlochCoefficients, t: f64, dt: f64) -> Result<BlochState> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::invalid("t", format!("must be non-negative, got {t}")));
    }
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::invalid("dt", format!("must be positive, got {dt}")));
    }
    if t == 0.0 {
        return Ok(*state0);
    }
    let steps = (t / dt).ceil().max(1.0);
    if steps > 1e10 {
        return Err(Error::invalid("dt", format!("{steps} steps requested")));
    }
    let steps = steps as u64;
    let h = t / steps as f64;
    let mut v = state0.to_array();
    for n in 0..steps {
        v = rk4_step(coeffs, v, h);
        if v.iter().any(|c| !c.is_finite()) {
            return Err(Error::NumericalBlowup { t: (n + 1) as f64 * h });
        }
    }
    Ok(BlochState::from_array(v))
}

/// Samples the trajectory at `samples` evenly spaced times in `[0, t_end]`.
pub fn trajectory(
    state0: &BlochState,
    coeffs: &BlochCoefficients,
    t_end: f64,
    samples: usize,
    dt: f64,
) -> Result<Vec<(f64, BlochState)>> {
    if samples < 2 {
        return Err(Error::invalid("samples", "need at least 2"));
    }
    let interval = t_end / (samples - 1) as f64;
    let mut out = Vec::with_capacity(samples);
    let mut state = *state0;
    out.push((0.0, state));
    for i in 1..samples {
        state = evolve(&state, coeffs, interval, dt)?;
        out.push((i as f64 * interval, state));
    }
    Ok(out)
}

/// Stationary point of the equations of motion by a dense solve of
/// `A v = −b` with partial pivoting.
pub fn steady_state(coeffs: &BlochCoefficients) -> Result<BlochState> {
    coeffs.validate()?;
    let (mut a, b) = coeffs.system();
    let mut rhs = [-b[0], -b[1], -b[2]];
    let scale = coeffs.drift_norm();
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap_or(col);
        if a[pivot][col].abs() <= 1e-14 * scale {
            return Err(Error::DegenerateSystem("drift matrix is singular".into()));
        }
        a.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..3 {
            let f = a[row][col] / a[col][col];
            if f == 0.0 {
                continue;
            }
            let pivot_row = a[col];
            for (entry, p) in a[row].iter_mut().zip(pivot_row).skip(col) {
                *entry -= f * p;
            }
            rhs[row] -= f * rhs[col];
        }
    }
    let mut v = [0.0; 3];
    for row in (0..3).rev() {
        let tail: f64 = (row + 1..3).map(|k| a[row][k] * v[k]).sum();
        v[row] = (rhs[row] - tail) / a[row][row];
    }
    Ok(BlochState::from_array(v))
}

/// `‖A v + b‖∞`.
pub fn residual(coeffs: &BlochCoefficients, state: &BlochState) -> f64 {
    coeffs.derivative(state.to_array()).iter().fold(0.0, |m, r| m.max(r.abs()))
}

/// Closed-form stationary state for vanishing collective coupling (`ζ^(±) = 0`):
/// `x = 2ξ⁻/ξ⁺`, `y = 0`, `z = (ξ⁻/ξ⁺)²`.
pub fn large_distance_steady_state(coeffs: &BlochCoefficients) -> Result<BlochState> {
    coeffs.validate()?;
    let r = coeffs.xi_minus / coeffs.xi_plus;
    Ok(BlochState::new(2.0 * r, 0.0, r * r))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidityReport {
    pub strong_field_ok: bool,
    pub dipole_dipole_warning: bool,
    /// `Ω̃/γ(ω_n)` and, where the dispersive coupling is nonzero, `Ω̃/(γ(ω_n)|Ω_ab(ω_n)|)`.
    pub ratios: Vec<(String, f64)>,
}

pub fn validity_check(
    frame: &DressedFrame,
    profile: &ReservoirProfile,
    coupling: CouplingModel,
    geometry: &Geometry,
    threshold: f64,
) -> Result<ValidityReport> {
    let mut ratios = Vec::with_capacity(6);
    let mut largest: f64 = 0.0;
    for band in [BandId::Lb, BandId::Cb, BandId::Rb] {
        let w = frame.band_frequency(band);
        let gamma = profile.gamma_at(w)?;
        largest = largest.max(gamma);
        ratios.push((format!("omega_tilde/gamma_{band}"), frame.tilde_omega / gamma));
        let shift = collective_chi(coupling, w, frame.carrier, geometry.k_r).omega_shift.abs();
        let dispersive = gamma * shift;
        largest = largest.max(dispersive);
        if dispersive > 0.0 {
            ratios.push((format!("omega_tilde/(gamma*|Omega_ab|)_{band}"), frame.tilde_omega / dispersive));
        }
    }
    Ok(ValidityReport {
        strong_field_ok: frame.tilde_omega >= threshold * largest,
        dipole_dipole_warning: geometry.k_r < TAU,
        ratios,
    })
}
