//! Dressed-frame algebra, detection geometry and the reduced two-atom state.
//!
//! Frequencies and rates are expressed in units of a reference free-space
//! decay rate `γ₀`, with `c = 1`. Lengths only enter through the
//! dimensionless separation phase `k_L · r_ab`.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default laser carrier frequency, in units of `γ₀`.
pub const DEFAULT_CARRIER: f64 = 1e8;

/// Tolerance on collective populations leaving `[0, 1]`.
pub const POPULATION_TOL: f64 = 1e-9;

/// Laser drive: Rabi frequency `Ω`, detuning `Δ = ω₀ − ω_L` and carrier `ω_L`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriveParams {
    pub rabi: f64,
    #[serde(default)]
    pub detuning: f64,
    #[serde(default = "default_carrier")]
    pub carrier: f64,
}

fn default_carrier() -> f64 {
    DEFAULT_CARRIER
}

impl DriveParams {
    pub fn new(rabi: f64, detuning: f64, carrier: f64) -> Result<Self> {
        let drive = DriveParams { rabi, detuning, carrier };
        drive.validate()?;
        Ok(drive)
    }

    /// Resonant drive at the default carrier.
    pub fn resonant(rabi: f64) -> Result<Self> {
        Self::new(rabi, 0.0, DEFAULT_CARRIER)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rabi.is_finite() && self.rabi > 0.0) {
            return Err(Error::invalid("rabi", format!("must be positive and finite, got {}", self.rabi)));
        }
        if !self.detuning.is_finite() {
            return Err(Error::invalid("detuning", "must be finite"));
        }
        if !(self.carrier.is_finite() && self.carrier > 0.0) {
            return Err(Error::invalid("carrier", format!("must be positive and finite, got {}", self.carrier)));
        }
        Ok(())
    }
}

/// Spectral band of the strong-field triplet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BandId {
    /// Central band at `ω_L`.
    Cb,
    /// Left sideband at `ω₋`.
    Lb,
    /// Right sideband at `ω₊`.
    Rb,
}

impl BandId {
    pub const ALL: [BandId; 3] = [BandId::Cb, BandId::Lb, BandId::Rb];

    pub fn name(self) -> &'static str {
        match self {
            BandId::Cb => "CB",
            BandId::Lb => "LB",
            BandId::Rb => "RB",
        }
    }
}

impl fmt::Display for BandId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Derived dressed-state quantities of a drive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedFrame {
    /// Mixing angle in `(0, π/2)`, `cot 2θ = Δ / 2Ω`.
    pub theta: f64,
    /// `cos 2θ = (Δ/2) / Ω̃`.
    pub cos_2theta: f64,
    /// `sin 2θ = Ω / Ω̃`.
    pub sin_2theta: f64,
    /// Generalized Rabi frequency `Ω̃`.
    pub tilde_omega: f64,
    pub carrier: f64,
    pub omega_plus: f64,
    pub omega_minus: f64,
}

impl DressedFrame {
    /// `sin²θ`, evaluated from `cos 2θ` so that `sin²θ = cos²θ` holds exactly on resonance.
    pub fn sin_sq(&self) -> f64 {
        0.5 * (1.0 - self.cos_2theta)
    }

    pub fn cos_sq(&self) -> f64 {
        0.5 * (1.0 + self.cos_2theta)
    }

    pub fn sin_4(&self) -> f64 {
        self.sin_sq().powi(2)
    }

    pub fn cos_4(&self) -> f64 {
        self.cos_sq().powi(2)
    }

    /// `sin²2θ`, the central-band weight.
    pub fn sin_sq_2theta(&self) -> f64 {
        self.sin_2theta * self.sin_2theta
    }

    pub fn band_frequency(&self, band: BandId) -> f64 {
        match band {
            BandId::Cb => self.carrier,
            BandId::Lb => self.omega_minus,
            BandId::Rb => self.omega_plus,
        }
    }

    /// Relative sideband offset `2Ω̃/ω_L`; the sideband wavevectors differ
    /// appreciably from `k_L` once this is not small.
    pub fn sideband_dispersion(&self) -> f64 {
        2.0 * self.tilde_omega / self.carrier
    }

    pub fn is_dispersive(&self) -> bool {
        self.sideband_dispersion() > 0.1
    }
}

pub fn dressed_frame(drive: &DriveParams) -> Result<DressedFrame> {
    drive.validate()?;
    let half_detuning = 0.5 * drive.detuning;
    let tilde_omega = drive.rabi.hypot(half_detuning);
    // atan2 with a positive first argument lands in (0, π), so θ ∈ (0, π/2).
    let two_theta = if half_detuning == 0.0 { FRAC_PI_2 } else { drive.rabi.atan2(half_detuning) };
    Ok(DressedFrame {
        theta: 0.5 * two_theta,
        cos_2theta: half_detuning / tilde_omega,
        sin_2theta: drive.rabi / tilde_omega,
        tilde_omega,
        carrier: drive.carrier,
        omega_plus: drive.carrier + 2.0 * tilde_omega,
        omega_minus: drive.carrier - 2.0 * tilde_omega,
    })
}

/// Which of the two detectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Detector {
    First,
    Second,
}

/// Linear chain geometry with the laser perpendicular to the chain axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Geometry {
    /// `k_L · r_ab` in radians.
    pub k_r: f64,
    #[serde(default = "default_atoms")]
    pub n_atoms: usize,
    #[serde(default = "default_angle")]
    pub alpha_1: f64,
    #[serde(default = "default_angle")]
    pub alpha_2: f64,
}

fn default_atoms() -> usize {
    2
}

fn default_angle() -> f64 {
    FRAC_PI_2
}

impl Geometry {
    pub fn new(k_r: f64, n_atoms: usize, alpha_1: f64, alpha_2: f64) -> Result<Self> {
        let g = Geometry { k_r, n_atoms, alpha_1, alpha_2 };
        g.validate()?;
        Ok(g)
    }

    pub fn pair(k_r: f64) -> Result<Self> {
        Self::new(k_r, 2, FRAC_PI_2, FRAC_PI_2)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.k_r.is_finite() && self.k_r > 0.0) {
            return Err(Error::invalid("k_r", format!("must be positive, got {}", self.k_r)));
        }
        if self.n_atoms < 2 {
            return Err(Error::invalid("n_atoms", format!("need at least 2 emitters, got {}", self.n_atoms)));
        }
        for (name, a) in [("alpha_1", self.alpha_1), ("alpha_2", self.alpha_2)] {
            if !(0.0..=std::f64::consts::PI).contains(&a) {
                return Err(Error::invalid(name, format!("must lie in [0, π], got {a}")));
            }
        }
        Ok(())
    }

    pub fn alpha(&self, detector: Detector) -> f64 {
        match detector {
            Detector::First => self.alpha_1,
            Detector::Second => self.alpha_2,
        }
    }
}

/// Detection phase `δ = k_n r_ab cos α` at an arbitrary observation angle.
pub fn phase_at_angle(k_r: f64, band: BandId, frame: &DressedFrame, alpha: f64) -> f64 {
    k_r * (frame.band_frequency(band) / frame.carrier) * alpha.cos()
}

pub fn detection_phase(geometry: &Geometry, band: BandId, frame: &DressedFrame, detector: Detector) -> f64 {
    phase_at_angle(geometry.k_r, band, frame, geometry.alpha(detector))
}

/// Reduced collective state `x = 2(σ_ee − σ_gg)`, `y = σ_ss − σ_aa`,
/// `z = σ_ee + σ_gg − σ_ss − σ_aa`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlochState {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochState {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        BlochState { x, y, z }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_array(v: [f64; 3]) -> Self {
        BlochState { x: v[0], y: v[1], z: v[2] }
    }

    pub fn populations(&self) -> Result<CollectivePopulations> {
        populations_from_xyz(self)
    }

    pub fn max_abs_diff(&self, other: &BlochState) -> f64 {
        (self.x - other.x).abs().max((self.y - other.y).abs()).max((self.z - other.z).abs())
    }
}

/// Populations of `|Ψ_e⟩, |Ψ_s⟩, |Ψ_a⟩, |Ψ_g⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollectivePopulations {
    pub sigma_ee: f64,
    pub sigma_ss: f64,
    pub sigma_aa: f64,
    pub sigma_gg: f64,
}

impl CollectivePopulations {
    pub fn new(sigma_ee: f64, sigma_ss: f64, sigma_aa: f64, sigma_gg: f64) -> Result<Self> {
        let p = CollectivePopulations { sigma_ee, sigma_ss, sigma_aa, sigma_gg };
        p.check(1e-12)?;
        Ok(p)
    }

    pub fn uniform() -> Self {
        CollectivePopulations { sigma_ee: 0.25, sigma_ss: 0.25, sigma_aa: 0.25, sigma_gg: 0.25 }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.sigma_ee, self.sigma_ss, self.sigma_aa, self.sigma_gg]
    }

    pub fn to_bloch(&self) -> BlochState {
        BlochState {
            x: 2.0 * (self.sigma_ee - self.sigma_gg),
            y: self.sigma_ss - self.sigma_aa,
            z: self.sigma_ee + self.sigma_gg - self.sigma_ss - self.sigma_aa,
        }
    }

    fn check(&self, sum_tol: f64) -> Result<()> {
        for (name, p) in [("ee", self.sigma_ee), ("ss", self.sigma_ss), ("aa", self.sigma_aa), ("gg", self.sigma_gg)] {
            if !(-POPULATION_TOL..=1.0 + POPULATION_TOL).contains(&p) {
                return Err(Error::UnphysicalState(format!("sigma_{name} = {p} outside [0, 1]")));
            }
        }
        let sum: f64 = self.as_array().iter().sum();
        if (sum - 1.0).abs() > sum_tol {
            return Err(Error::UnphysicalState(format!("populations sum to {sum}")));
        }
        Ok(())
    }
}

pub fn populations_from_xyz(state: &BlochState) -> Result<CollectivePopulations> {
    let BlochState { x, y, z } = *state;
    let upper = 0.25 * (1.0 + z);
    let lower = 0.25 * (1.0 - z);
    let pops = CollectivePopulations {
        sigma_ee: upper + 0.25 * x,
        sigma_gg: upper - 0.25 * x,
        sigma_ss: lower + 0.5 * y,
        sigma_aa: lower - 0.5 * y,
    };
    // The sum is 1 by construction; only the range can fail.
    pops.check(f64::INFINITY)?;
    Ok(pops)
}
