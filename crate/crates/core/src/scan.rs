//! Scenario files, parameter sweeps and tabular output.
//!
//! A scenario is a JSON document; unknown keys are rejected. Frequencies and
//! rates are in units of `γ₀`. Reservoir features (cavity centre, band edge,
//! tabulated samples) are placed by their offset `ω − ω_L` from the carrier.

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dressed::{
    dressed_frame, phase_at_angle, BandId, BlochState, CollectivePopulations, DressedFrame, DriveParams, Geometry,
};
use crate::dynamics::{self, coefficients, default_step, steady_state, validity_check, DEFAULT_VALIDITY_THRESHOLD};
use crate::error::Error;
use crate::observables::{
    band_intensity_two_atom, chain_intensity, eta_visibility_closed_form, g2_band, g2_weak_field, visibilities,
};
use crate::oracle::{self, sampling};
use crate::reservoir::{eta, CouplingModel, ReservoirProfile};

pub const MAX_POINTS: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("config error: {0}")]
    Config(String),
    #[error("i/o error on {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Model(#[from] Error),
    #[error("verification failed: {0} check(s) out of tolerance")]
    Verification(usize),
}

impl SimError {
    /// Process exit code: 1 configuration, 2 numerical or physicality, 3 verification.
    pub fn exit_code(&self) -> i32 {
        match self {
            SimError::Config(_) | SimError::Io { .. } => 1,
            SimError::Model(Error::InvalidParameter { .. } | Error::OutOfRange { .. }) => 1,
            SimError::Model(_) => 2,
            SimError::Verification(_) => 3,
        }
    }
}

pub type SimResult<T> = std::result::Result<T, SimError>;

fn config(msg: impl Into<String>) -> SimError {
    SimError::Config(msg.into())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ReservoirSpec {
    Flat { gamma0: f64 },
    LorentzianCavity { gamma0: f64, coupling: f64, center_offset: f64, width: f64 },
    BandGapStep { gamma_low: f64, gamma_high: f64, edge_offset: f64 },
    /// `[offset, gamma]` pairs.
    Tabulated { points: Vec<[f64; 2]> },
}

impl Default for ReservoirSpec {
    fn default() -> Self {
        ReservoirSpec::Flat { gamma0: 1.0 }
    }
}

impl ReservoirSpec {
    pub fn build(&self, carrier: f64) -> crate::Result<ReservoirProfile> {
        match self {
            ReservoirSpec::Flat { gamma0 } => ReservoirProfile::flat(*gamma0),
            ReservoirSpec::LorentzianCavity { gamma0, coupling, center_offset, width } => {
                ReservoirProfile::lorentzian_cavity(*gamma0, *coupling, carrier + center_offset, *width)
            }
            ReservoirSpec::BandGapStep { gamma_low, gamma_high, edge_offset } => {
                ReservoirProfile::band_gap_step(*gamma_low, *gamma_high, carrier + edge_offset)
            }
            ReservoirSpec::Tabulated { points } => {
                ReservoirProfile::tabulated(points.iter().map(|[w, g]| (carrier + w, *g)).collect())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometrySpec {
    /// Separation phase `k_L r_ab` in radians.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_r: Option<f64>,
    /// Separation phase in units of π, an alternative to `k_r`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_r_over_pi: Option<f64>,
    #[serde(default = "two")]
    pub n_atoms: usize,
    #[serde(default = "right_angle")]
    pub alpha_1: f64,
    #[serde(default = "right_angle")]
    pub alpha_2: f64,
}

fn two() -> usize {
    2
}

fn right_angle() -> f64 {
    PI / 2.0
}

impl GeometrySpec {
    pub fn build(&self) -> SimResult<Geometry> {
        let k_r = match (self.k_r, self.k_r_over_pi) {
            (Some(k), None) => k,
            (None, Some(k)) => k * PI,
            _ => return Err(config("geometry: give exactly one of `k_r` or `k_r_over_pi`")),
        };
        Ok(Geometry::new(k_r, self.n_atoms, self.alpha_1, self.alpha_2)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Eta,
    Alpha,
    Delta,
    Time,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSpec {
    pub axis: Axis,
    pub min: f64,
    pub max: f64,
    pub points: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

impl ScanSpec {
    pub fn grid(&self) -> SimResult<Vec<f64>> {
        if !(2..=MAX_POINTS).contains(&self.points) {
            return Err(config(format!("scan.points must lie in [2, {MAX_POINTS}], got {}", self.points)));
        }
        if !(self.min.is_finite() && self.max.is_finite()) || self.max < self.min {
            return Err(config(format!("scan range [{}, {}] is not a finite increasing interval", self.min, self.max)));
        }
        let last = (self.points - 1) as f64;
        Ok(match self.spacing {
            Spacing::Linear => {
                (0..self.points).map(|i| self.min + (self.max - self.min) * i as f64 / last).collect()
            }
            Spacing::Log => {
                if self.min <= 0.0 {
                    return Err(config("log-spaced scan needs a positive lower bound"));
                }
                let (lo, hi) = (self.min.log10(), self.max.log10());
                (0..self.points).map(|i| 10f64.powf(lo + (hi - lo) * i as f64 / last)).collect()
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternSpec {
    #[serde(default = "central")]
    pub band: BandId,
    /// Chain lengths to tabulate; defaults to `geometry.n_atoms`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub chain_sizes: Vec<usize>,
    /// Prescribed central-band visibility instead of the steady state.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_cb: Option<f64>,
}

fn central() -> BandId {
    BandId::Cb
}

impl Default for PatternSpec {
    fn default() -> Self {
        PatternSpec { band: BandId::Cb, chain_sizes: Vec::new(), v_cb: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum G2Mode {
    /// Coincident detectors, `δ₁ = δ₂`.
    #[default]
    Diagonal,
    /// Full `δ₁ × δ₂` surface.
    Map,
    WeakField,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct G2Spec {
    #[serde(default)]
    pub mode: G2Mode,
    #[serde(default = "central")]
    pub band: BandId,
    #[serde(default = "weak_ratio")]
    pub weak_omega_over_gamma: f64,
}

fn weak_ratio() -> f64 {
    0.9
}

impl Default for G2Spec {
    fn default() -> Self {
        G2Spec { mode: G2Mode::Diagonal, band: BandId::Cb, weak_omega_over_gamma: weak_ratio() }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvolveSpec {
    #[serde(default)]
    pub initial: BlochState,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
    /// Whitespace-separated columns, blank line between map blocks.
    Gnuplot,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub drive: DriveParams,
    #[serde(default)]
    pub reservoir: ReservoirSpec,
    #[serde(default)]
    pub coupling: CouplingModel,
    pub geometry: GeometrySpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanSpec>,
    #[serde(default)]
    pub pattern: PatternSpec,
    #[serde(default)]
    pub g2: G2Spec,
    #[serde(default)]
    pub evolve: EvolveSpec,
    #[serde(default = "default_threshold")]
    pub validity_threshold: f64,
    #[serde(default)]
    pub output: OutputSpec,
}

fn default_threshold() -> f64 {
    DEFAULT_VALIDITY_THRESHOLD
}

/// Everything a scenario resolves to before a run.
#[derive(Debug, Clone)]
pub struct Model {
    pub frame: DressedFrame,
    pub profile: ReservoirProfile,
    pub coupling: CouplingModel,
    pub geometry: Geometry,
}

impl Scenario {
    pub fn from_json(text: &str) -> SimResult<Self> {
        let scenario: Scenario = serde_json::from_str(text).map_err(|e| config(e.to_string()))?;
        scenario.model()?;
        Ok(scenario)
    }

    pub fn load(path: &Path) -> SimResult<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|source| SimError::Io { path: path.to_path_buf(), source })?;
        Self::from_json(&text).map_err(|e| match e {
            SimError::Config(msg) => SimError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("scenario serializes")
    }

    pub fn model(&self) -> SimResult<Model> {
        let frame = dressed_frame(&self.drive)?;
        let profile = self.reservoir.build(self.drive.carrier)?;
        let geometry = self.geometry.build()?;
        if !(self.validity_threshold.is_finite() && self.validity_threshold > 0.0) {
            return Err(config("validity_threshold must be positive"));
        }
        Ok(Model { frame, profile, coupling: self.coupling, geometry })
    }

    fn axis_grid(&self, axis: Axis, default: ScanSpec) -> SimResult<Vec<f64>> {
        match &self.scan {
            Some(scan) if scan.axis != axis => {
                Err(config(format!(
                "scan axis `{}` does not fit this run (expected `{}`)",
                format!("{:?}", scan.axis).to_lowercase(),
                format!("{axis:?}").to_lowercase()
            )))
            }
            Some(scan) => scan.grid(),
            None => default.grid(),
        }
    }
}

impl Model {
    pub fn steady_state(&self) -> crate::Result<BlochState> {
        steady_state(&coefficients(&self.frame, &self.profile, self.coupling, &self.geometry)?)
    }
}

/// A table of numeric columns; `NaN` marks a missing value.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// Row indices after which a block ends (map output).
    pub block_ends: Vec<usize>,
}

impl ScanResult {
    fn new(columns: &[&str]) -> Self {
        ScanResult { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new(), block_ends: Vec::new() }
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    /// Writes the table with a `#`-prefixed header block.
    pub fn write(&self, out: &mut impl Write, header: &[String], format: OutputFormat) -> io::Result<()> {
        for line in header {
            writeln!(out, "# {line}")?;
        }
        let sep = match format {
            OutputFormat::Csv => ",",
            OutputFormat::Gnuplot => " ",
        };
        if format == OutputFormat::Gnuplot {
            write!(out, "# ")?;
        }
        writeln!(out, "{}", self.columns.join(sep))?;
        let mut line = String::new();
        for (i, row) in self.rows.iter().enumerate() {
            line.clear();
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    line.push_str(sep);
                }
                push_number(&mut line, *v);
            }
            writeln!(out, "{line}")?;
            if format == OutputFormat::Gnuplot && self.block_ends.contains(&i) {
                writeln!(out)?;
            }
        }
        Ok(())
    }
}

fn push_number(buf: &mut String, v: f64) {
    if v.is_nan() {
        buf.push_str("nan");
    } else if v.is_infinite() {
        buf.push_str(if v > 0.0 { "inf" } else { "-inf" });
    } else {
        let _ = write!(buf, "{v:?}");
    }
}

fn or_nan(v: crate::Result<f64>) -> f64 {
    v.unwrap_or(f64::NAN)
}

/// Point evaluation: coefficients, steady state, populations and visibilities.
pub fn run_steady(scenario: &Scenario) -> SimResult<ScanResult> {
    let m = scenario.model()?;
    let c = coefficients(&m.frame, &m.profile, m.coupling, &m.geometry)?;
    let s = steady_state(&c)?;
    let p = s.populations()?;
    let vis = visibilities(&p).ok();
    let mut table = ScanResult::new(&[
        "eta", "theta", "tilde_omega", "xi_plus", "xi_minus", "zeta_plus", "zeta_minus", "c0", "x", "y", "z",
        "sigma_ee", "sigma_ss", "sigma_aa", "sigma_gg", "v_cb", "v_lb", "v_rb", "residual",
    ]);
    table.rows.push(vec![
        eta(&m.profile, &m.frame)?,
        m.frame.theta,
        m.frame.tilde_omega,
        c.xi_plus,
        c.xi_minus,
        c.zeta_plus,
        c.zeta_minus,
        c.c0,
        s.x,
        s.y,
        s.z,
        p.sigma_ee,
        p.sigma_ss,
        p.sigma_aa,
        p.sigma_gg,
        vis.map_or(f64::NAN, |v| v.v_cb),
        vis.map_or(f64::NAN, |v| v.v_lb),
        vis.map_or(f64::NAN, |v| v.v_rb),
        dynamics::residual(&c, &s),
    ]);
    Ok(table)
}

/// Pipeline central-band visibility at a given sideband asymmetry: the
/// reservoir is a band edge at `ω_L` with `γ(ω₋) = 1`, `γ(ω₊) = η`.
pub fn pipeline_visibility(frame: &DressedFrame, coupling: CouplingModel, geometry: &Geometry, eta_value: f64) -> crate::Result<f64> {
    let profile = ReservoirProfile::band_gap_step(1.0, eta_value, frame.carrier)?;
    let c = coefficients(frame, &profile, coupling, geometry)?;
    let pops = steady_state(&c)?.populations()?;
    Ok(visibilities(&pops)?.v_cb)
}

/// Central-band visibility against `η = γ(ω₊)/γ(ω₋)` with the closed form alongside.
pub fn run_scan_eta(scenario: &Scenario) -> SimResult<ScanResult> {
    let m = scenario.model()?;
    let grid = scenario.axis_grid(Axis::Eta, ScanSpec { axis: Axis::Eta, min: 1e-3, max: 1e3, points: 200, spacing: Spacing::Log })?;
    if grid[0] <= 0.0 {
        return Err(config("eta scan needs a positive lower bound"));
    }
    let rows = grid
        .par_iter()
        .map(|&e| -> crate::Result<Vec<f64>> {
            let pipeline = pipeline_visibility(&m.frame, m.coupling, &m.geometry, e)?;
            let closed = eta_visibility_closed_form(e)?;
            Ok(vec![e, pipeline, closed, (pipeline - closed).abs()])
        })
        .collect::<crate::Result<Vec<_>>>()?;
    let mut table = ScanResult::new(&["eta", "v_cb_pipeline", "v_cb_closed_form", "abs_diff"]);
    table.rows = rows;
    Ok(table)
}

/// Angular intensity pattern `I/N²` in units of `Ψ_R(ω_n)/4`.
pub fn run_pattern(scenario: &Scenario) -> SimResult<ScanResult> {
    let m = scenario.model()?;
    let spec = &scenario.pattern;
    let sizes = if spec.chain_sizes.is_empty() { vec![m.geometry.n_atoms] } else { spec.chain_sizes.clone() };
    if let Some(&bad) = sizes.iter().find(|&&n| n < 2) {
        return Err(config(format!("pattern.chain_sizes: need at least 2 emitters, got {bad}")));
    }
    if spec.band != BandId::Cb && sizes.iter().any(|&n| n != 2) {
        return Err(config("sideband patterns are defined for emitter pairs only"));
    }
    let pops = match spec.v_cb {
        Some(_) if spec.band != BandId::Cb => return Err(config("pattern.v_cb applies to the central band only")),
        Some(v) if !(-1.0..=1.0).contains(&v) => return Err(config(format!("pattern.v_cb = {v} outside [-1, 1]"))),
        Some(v) => BlochState::new(0.0, 0.0, v).populations()?,
        None => m.steady_state()?.populations()?,
    };
    let z = pops.to_bloch().z;
    let grid = scenario.axis_grid(Axis::Alpha, ScanSpec { axis: Axis::Alpha, min: 0.0, max: PI, points: 2001, spacing: Spacing::Linear })?;
    if grid.iter().any(|a| !(0.0..=PI).contains(a)) {
        return Err(config("alpha scan must stay within [0, π]"));
    }

    let mut names = vec!["alpha".to_string()];
    names.extend(sizes.iter().map(|n| format!("intensity_n{n}")));
    let rows: Vec<Vec<f64>> = grid
        .par_iter()
        .map(|&alpha| {
            let mut row = vec![alpha];
            for &n in &sizes {
                row.push(pattern_value(&m, spec.band, &pops, z, n, alpha));
            }
            row
        })
        .collect();
    Ok(ScanResult { columns: names, rows, block_ends: Vec::new() })
}

fn pattern_value(m: &Model, band: BandId, pops: &CollectivePopulations, z: f64, n: usize, alpha: f64) -> f64 {
    let n2 = (n * n) as f64;
    if n == 2 {
        let geometry = Geometry { n_atoms: 2, ..m.geometry };
        4.0 * band_intensity_two_atom(band, pops, &m.frame, &geometry, alpha) / n2
    } else {
        let delta = phase_at_angle(m.geometry.k_r, BandId::Cb, &m.frame, alpha);
        m.frame.sin_sq_2theta() * chain_intensity(n, z, delta) / n2
    }
}

/// Second-order correlation tables; singular points are written as `nan`.
pub fn run_g2(scenario: &Scenario) -> SimResult<ScanResult> {
    let m = scenario.model()?;
    let spec = &scenario.g2;
    let grid = scenario.axis_grid(Axis::Delta, ScanSpec { axis: Axis::Delta, min: 0.0, max: TAU, points: 1001, spacing: Spacing::Linear })?;
    let strong = || -> SimResult<(CollectivePopulations, crate::VisibilitySet)> {
        let pops = m.steady_state()?.populations()?;
        let vis = visibilities(&pops)?;
        Ok((pops, vis))
    };
    match spec.mode {
        G2Mode::WeakField => {
            let mut table = ScanResult::new(&["delta", "g2_weak"]);
            table.rows = grid.iter().map(|&d| vec![d, or_nan(g2_weak_field(spec.weak_omega_over_gamma, d))]).collect();
            Ok(table)
        }
        G2Mode::Diagonal => {
            let (pops, vis) = strong()?;
            let mut table = ScanResult::new(&["delta", "g2_strong", "g2_weak"]);
            table.rows = grid
                .iter()
                .map(|&d| {
                    vec![d, or_nan(g2_band(spec.band, &pops, &vis, d, d)), or_nan(g2_weak_field(spec.weak_omega_over_gamma, d))]
                })
                .collect();
            Ok(table)
        }
        G2Mode::Map => {
            let (pops, vis) = strong()?;
            let mut table = ScanResult::new(&["delta1", "delta2", "g2"]);
            table.rows = grid
                .par_iter()
                .flat_map_iter(|&d1| {
                    grid.iter().map(move |&d2| vec![d1, d2, or_nan(g2_band(spec.band, &pops, &vis, d1, d2))])
                })
                .collect();
            table.block_ends = (1..=grid.len()).map(|i| i * grid.len() - 1).collect();
            Ok(table)
        }
    }
}

/// Time evolution of `(x, y, z)` from `evolve.initial`.
pub fn run_evolve(scenario: &Scenario) -> SimResult<ScanResult> {
    let m = scenario.model()?;
    let c = coefficients(&m.frame, &m.profile, m.coupling, &m.geometry)?;
    c.validate()?;
    scenario.evolve.initial.populations()?;
    let grid = scenario.axis_grid(Axis::Time, ScanSpec { axis: Axis::Time, min: 0.0, max: 10.0 / c.xi_plus, points: 201, spacing: Spacing::Linear })?;
    if grid[0] < 0.0 {
        return Err(config("time scan must start at t >= 0"));
    }
    let dt = scenario.evolve.dt.unwrap_or_else(|| default_step(&c));
    let mut table = ScanResult::new(&["t", "x", "y", "z"]);
    let mut state = scenario.evolve.initial;
    let mut now = 0.0;
    for &t in &grid {
        state = dynamics::evolve(&state, &c, t - now, dt)?;
        now = t;
        table.rows.push(vec![t, state.x, state.y, state.z]);
    }
    Ok(table)
}

/// Strong-field validity ratios as a one-row table.
pub fn run_validate(scenario: &Scenario) -> SimResult<ScanResult> {
    let m = scenario.model()?;
    let report = validity_check(&m.frame, &m.profile, m.coupling, &m.geometry, scenario.validity_threshold)?;
    let mut columns = vec![
        "strong_field_ok".to_string(),
        "dipole_dipole_warning".to_string(),
        "sideband_dispersion".to_string(),
        "eta".to_string(),
    ];
    let mut row = vec![
        f64::from(u8::from(report.strong_field_ok)),
        f64::from(u8::from(report.dipole_dipole_warning)),
        m.frame.sideband_dispersion(),
        eta(&m.profile, &m.frame)?,
    ];
    for (name, value) in report.ratios {
        columns.push(name);
        row.push(value);
    }
    Ok(ScanResult { columns, rows: vec![row], block_ends: Vec::new() })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub max_error: f64,
    pub tolerance: f64,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.max_error <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed()).count()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{status}  {:<40} max_err={:.3e}  tol={:.1e}", c.name, c.max_error, c.tolerance);
        }
        out
    }
}

fn worst(errors: impl Iterator<Item = crate::Result<f64>>) -> f64 {
    errors.fold(0.0, |m, e| match e {
        Ok(v) if v.is_finite() => m.max(v),
        _ => f64::INFINITY,
    })
}

/// Runs the oracle equivalence checks with a fixed seed.
pub fn run_verify() -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut checks = Vec::new();

    let sets: Vec<_> = (0..20)
        .map(|_| {
            let frame = sampling::frame_with_random_theta(&mut rng, 0.1);
            (sampling::coefficients(&mut rng, &frame, true), sampling::populations(&mut rng).to_bloch())
        })
        .collect();
    checks.push(CheckOutcome {
        name: "rk4 evolve vs matrix exponential",
        max_error: worst(sets.par_iter().map(|(c, v0)| {
            let t = 10.0 / c.xi_plus;
            let a = dynamics::evolve(v0, c, t, default_step(c))?;
            let b = oracle::expm_propagate(v0, c, t)?;
            Ok(a.max_abs_diff(&b))
        }).collect::<Vec<_>>().into_iter()),
        tolerance: 1e-8,
    });

    let uncoupled: Vec<_> = (0..200)
        .map(|_| {
            let frame = sampling::frame_with_random_theta(&mut rng, 0.05);
            sampling::coefficients(&mut rng, &frame, false)
        })
        .collect();
    checks.push(CheckOutcome {
        name: "steady state vs large-distance closed form",
        max_error: worst(uncoupled.iter().map(|c| {
            Ok(steady_state(c)?.max_abs_diff(&dynamics::large_distance_steady_state(c)?))
        })),
        tolerance: 1e-13,
    });

    checks.push(CheckOutcome {
        name: "chain closed form vs brute-force sum",
        max_error: worst((2..=32).flat_map(|n| {
            (0..16).map(move |k| {
                let z = -1.0 + k as f64 / 7.5;
                let d = 0.37 + 3.9 * k as f64;
                Ok((chain_intensity(n, z, d) - oracle::brute_force_chain(n, z, d)?).abs())
            })
        })),
        tolerance: 1e-10,
    });

    let frame = dressed_frame(&DriveParams { rabi: 100.0, detuning: 0.0, carrier: 1e8 }).expect("valid drive");
    let geometry = Geometry::pair(20.0 * PI).expect("valid geometry");
    let pops: Vec<_> = (0..20).map(|_| sampling::populations(&mut rng)).collect();
    checks.push(CheckOutcome {
        name: "scanned CB visibility vs populations",
        max_error: worst(pops.par_iter().map(|p| {
            let scan = oracle::fringe_scan(
                |a| band_intensity_two_atom(BandId::Cb, p, &frame, &geometry, a),
                oracle::DEFAULT_SCAN_GRID,
            )?;
            Ok((scan.visibility - visibilities(p)?.v_cb.abs()).abs())
        }).collect::<Vec<_>>().into_iter()),
        tolerance: 1e-6,
    });

    checks.push(CheckOutcome {
        name: "eta pipeline vs closed-form visibility",
        max_error: worst((0..50).map(|i| {
            let e = 10f64.powf(-3.0 + 6.0 * i as f64 / 49.0);
            Ok((pipeline_visibility(&frame, CouplingModel::Off, &geometry, e)? - eta_visibility_closed_form(e)?).abs())
        })),
        tolerance: 1e-12,
    });

    VerifyReport { checks }
}
