//! Structured electromagnetic reservoir: the frequency-dependent decay rate
//! `γ(ω)` and the collective coupling `γ_ab(ω) = γ(ω)[χ_ab(ω) + iΩ_ab(ω)]`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::dressed::DressedFrame;
use crate::error::{Error, Result};

/// Mode-density model for the decay rate `γ(ω)`.
#[derive(Debug, Clone, PartialEq)]
pub enum ReservoirProfile {
    Flat { gamma0: f64 },
    /// Background rate plus a Lorentzian cavity resonance of height `coupling`.
    LorentzianCavity { gamma0: f64, coupling: f64, center: f64, width: f64 },
    /// Hard photonic band edge: `gamma_low` below `edge`, `gamma_high` at and above it.
    BandGapStep { gamma_low: f64, gamma_high: f64, edge: f64 },
    /// Linear interpolation through `(ω, γ)` samples, no extrapolation.
    Tabulated { omega: Vec<f64>, gamma: Vec<f64> },
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("must be positive and finite, got {v}")))
    }
}

impl ReservoirProfile {
    pub fn flat(gamma0: f64) -> Result<Self> {
        positive("gamma0", gamma0)?;
        Ok(ReservoirProfile::Flat { gamma0 })
    }

    pub fn lorentzian_cavity(gamma0: f64, coupling: f64, center: f64, width: f64) -> Result<Self> {
        positive("gamma0", gamma0)?;
        positive("width", width)?;
        if !(coupling.is_finite() && coupling >= 0.0) {
            return Err(Error::invalid("coupling", format!("must be non-negative, got {coupling}")));
        }
        if !center.is_finite() {
            return Err(Error::invalid("center", "must be finite"));
        }
        Ok(ReservoirProfile::LorentzianCavity { gamma0, coupling, center, width })
    }

    pub fn band_gap_step(gamma_low: f64, gamma_high: f64, edge: f64) -> Result<Self> {
        positive("gamma_low", gamma_low)?;
        positive("gamma_high", gamma_high)?;
        if !edge.is_finite() {
            return Err(Error::invalid("edge", "must be finite"));
        }
        Ok(ReservoirProfile::BandGapStep { gamma_low, gamma_high, edge })
    }

    pub fn tabulated(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::invalid("table", "need at least two samples"));
        }
        if points.windows(2).any(|w| w[1].0.partial_cmp(&w[0].0) != Some(Ordering::Greater)) {
            return Err(Error::invalid("table", "frequencies must be strictly increasing"));
        }
        for &(w, g) in &points {
            if !w.is_finite() {
                return Err(Error::invalid("table", "non-finite frequency"));
            }
            positive("table gamma", g)?;
        }
        let (omega, gamma) = points.into_iter().unzip();
        Ok(ReservoirProfile::Tabulated { omega, gamma })
    }

    /// Decay rate at `omega`.
    pub fn gamma_at(&self, omega: f64) -> Result<f64> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::invalid("omega", format!("must be positive, got {omega}")));
        }
        let rate = match self {
            ReservoirProfile::Flat { gamma0 } => *gamma0,
            ReservoirProfile::LorentzianCavity { gamma0, coupling, center, width } => {
                let d = omega - center;
                gamma0 + coupling * width * width / (d * d + width * width)
            }
            ReservoirProfile::BandGapStep { gamma_low, gamma_high, edge } => {
                if omega < *edge {
                    *gamma_low
                } else {
                    *gamma_high
                }
            }
            ReservoirProfile::Tabulated { omega: grid, gamma } => {
                let (lo, hi) = (grid[0], grid[grid.len() - 1]);
                if omega < lo || omega > hi {
                    return Err(Error::OutOfRange { omega, lo, hi });
                }
                let i = grid.partition_point(|&w| w <= omega).clamp(1, grid.len() - 1);
                let t = (omega - grid[i - 1]) / (grid[i] - grid[i - 1]);
                gamma[i - 1] + t * (gamma[i] - gamma[i - 1])
            }
        };
        Ok(rate)
    }
}

/// Sideband asymmetry `η = γ(ω₊) / γ(ω₋)`.
pub fn eta(profile: &ReservoirProfile, frame: &DressedFrame) -> Result<f64> {
    Ok(profile.gamma_at(frame.omega_plus)? / profile.gamma_at(frame.omega_minus)?)
}

/// Functional form used for the collective parameters `χ_ab`, `Ω_ab`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CouplingModel {
    /// Scalar-photon model `χ = sin u / u`, `Ω_ab = −cos u / u`.
    #[default]
    ScalarSinc,
    /// Independent emitters.
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollectiveCoupling {
    pub chi: f64,
    pub omega_shift: f64,
}

/// Collective parameters at frequency `omega` for separation phase `k_r = k_L r_ab`.
///
/// The argument is `u = (ω/ω_L) k_r`. The dispersive part diverges as
/// `u → 0` and is returned as `-inf` there.
pub fn collective_chi(model: CouplingModel, omega: f64, carrier: f64, k_r: f64) -> CollectiveCoupling {
    match model {
        CouplingModel::Off => CollectiveCoupling { chi: 0.0, omega_shift: 0.0 },
        CouplingModel::ScalarSinc => {
            let u = (omega / carrier) * k_r;
            let chi = if u.abs() < 1e-4 {
                let u2 = u * u;
                1.0 - u2 / 6.0 + u2 * u2 / 120.0
            } else {
                u.sin() / u
            };
            let omega_shift = if u == 0.0 { f64::NEG_INFINITY } else { -u.cos() / u };
            CollectiveCoupling { chi, omega_shift }
        }
    }
}
