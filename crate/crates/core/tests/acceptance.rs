//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line under `cargo test`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use dressed_interference::dynamics::{default_step, evolve, residual, steady_state, BlochCoefficients, PerBand};
use dressed_interference::observables::{
    band_intensity_two_atom, chain_intensity, g2_band, g2_weak_field, visibilities,
};
use dressed_interference::oracle::{brute_force_chain, expm_propagate, fringe_scan, sampling, DEFAULT_SCAN_GRID};
use dressed_interference::scan::{self, Scenario};
use dressed_interference::{
    dressed_frame, BandId, BlochState, CollectivePopulations, CouplingModel, DressedFrame, DriveParams, Geometry,
};
use nalgebra::Matrix3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn preset(name: &str) -> Scenario {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name);
    Scenario::load(&path).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn resonant() -> DressedFrame {
    dressed_frame(&DriveParams::resonant(100.0).unwrap()).unwrap()
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn closed_form(eta: f64) -> f64 {
    ((1.0 - eta) / (1.0 + eta)).powi(2)
}

/// Visibility recovery against sideband asymmetry.
fn criterion_1() -> Outcome {
    let table = scan::run_scan_eta(&preset("fig2.json")).map_err(|e| e.to_string())?;
    let eta = table.column("eta").unwrap();
    let pipeline = table.column("v_cb_pipeline").unwrap();
    if eta.len() != 200 || (eta[0] - 1e-3).abs() > 1e-18 || (eta[199] - 1e3).abs() > 1e-9 {
        return Err(format!("unexpected eta grid: {} points", eta.len()));
    }
    let max_err = eta.iter().zip(&pipeline).map(|(e, v)| (v - closed_form(*e)).abs()).fold(0.0, f64::max);

    let frame = resonant();
    let geometry = Geometry::pair(20.0 * PI).unwrap();
    let at_one = scan::pipeline_visibility(&frame, CouplingModel::Off, &geometry, 1.0).map_err(|e| e.to_string())?;
    let (first, last) = (pipeline[0], pipeline[199]);
    let left_decreasing = pipeline.windows(2).take(99).all(|w| w[1] < w[0]);
    let right_increasing = pipeline.windows(2).skip(100).all(|w| w[1] > w[0]);
    check(
        max_err <= 1e-12 && at_one == 0.0 && first > 0.996 && last > 0.996 && left_decreasing && right_increasing,
        format!("max|Δ| = {max_err:.2e} (≤ 1e-12), V(1) = {at_one}, V(1e-3) = {first:.6}, V(1e3) = {last:.6}"),
    )
}

/// Two-atom and eight-atom central-band patterns.
fn criterion_2() -> Outcome {
    let scenario = preset("fig3.json");
    let table = scan::run_pattern(&scenario).map_err(|e| e.to_string())?;
    let alpha = table.column("alpha").unwrap();
    let n2 = table.column("intensity_n2").unwrap();
    let n8 = table.column("intensity_n8").unwrap();
    let frame = resonant();
    let geometry = Geometry::new(20.0 * PI, 2, FRAC_PI_2, FRAC_PI_2).unwrap();
    let pops = BlochState::new(0.0, 0.0, 0.9).populations().unwrap();
    let pair = |a: f64| band_intensity_two_atom(BandId::Cb, &pops, &frame, &geometry, a);

    // Bright fringes at cos α = n/10, dark fringes at cos α = (2n + 1)/20.
    let bright: Vec<f64> = (-10..=10).map(|n| (n as f64 / 10.0).acos()).collect();
    let dark: Vec<f64> = (-10..10).map(|n| ((2 * n + 1) as f64 / 20.0).acos()).collect();
    let pair_peak = bright.iter().map(|&a| pair(a)).fold(f64::MIN, f64::max);
    let pair_min = dark.iter().map(|&a| pair(a)).fold(f64::MAX, f64::min);
    let bright_err = bright.iter().map(|&a| (pair(a) - 0.95).abs()).fold(0.0, f64::max);
    let dark_err = dark.iter().map(|&a| (pair(a) - 0.05).abs()).fold(0.0, f64::max);
    let grid_in_range = n2.iter().all(|&v| (0.05 - 1e-12..=0.95 + 1e-12).contains(&v));
    let ok_pair = (pair_peak - 0.95).abs() <= 1e-12 && (pair_min - 0.05).abs() <= 1e-12 && bright_err <= 1e-12
        && dark_err <= 1e-12 && grid_in_range;

    let chain = |a: f64| chain_intensity(8, 0.9, 20.0 * PI * a.cos()) / 64.0;
    let principal_err = bright.iter().map(|&a| (chain(a) - 0.9125).abs()).fold(0.0, f64::max);
    let grid_max = n8.iter().cloned().fold(f64::MIN, f64::max);
    // Interior principal maxima of the grid land next to cos α = n/10, n = -9..9.
    let spacing = alpha[1] - alpha[0];
    let principal: Vec<f64> = (1..n8.len() - 1)
        .filter(|&i| n8[i] > 0.5 && n8[i] >= n8[i - 1] && n8[i] > n8[i + 1])
        .map(|i| alpha[i])
        .collect();
    let principal_located = principal.len() == 19
        && principal.iter().all(|a| bright.iter().any(|b| (a - b).abs() <= 2.0 * spacing));

    let mut secondary_counts = Vec::new();
    for pair_of in bright.windows(2) {
        let (lo, hi) = (pair_of[1], pair_of[0]);
        let samples: Vec<f64> = (1..4000).map(|i| chain(lo + (hi - lo) * i as f64 / 4000.0)).collect();
        let count = samples.windows(3).filter(|w| w[1] > w[0] && w[1] > w[2]).count();
        secondary_counts.push(count);
    }
    let secondary_ok = secondary_counts.iter().all(|&c| c == 6);

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut brute_err: f64 = 0.0;
    for &a in &alpha {
        let d = 20.0 * PI * a.cos();
        for n in [2usize, 8] {
            brute_err = brute_err.max((chain_intensity(n, 0.9, d) - brute_force_chain(n, 0.9, d).unwrap()).abs());
        }
    }
    for _ in 0..2000 {
        let n = rng.gen_range(1..=32);
        let z = rng.gen_range(-1.0..=1.0);
        let d = rng.gen_range(-70.0..70.0);
        brute_err = brute_err.max((chain_intensity(n, z, d) - brute_force_chain(n, z, d).unwrap()).abs());
    }

    check(
        ok_pair && principal_err <= 1e-12 && (grid_max - 0.9125).abs() <= 1e-12 && principal_located
            && secondary_ok && brute_err <= 1e-10,
        format!(
            "N=2 peak {pair_peak:.15} min {pair_min:.15}; N=8 peak err {principal_err:.1e}, \
             secondary maxima per gap {:?}, brute-force max|Δ| = {brute_err:.1e}",
            secondary_counts.iter().min().zip(secondary_counts.iter().max()).unwrap()
        ),
    )
}

fn count_periodic_maxima(values: &[f64]) -> usize {
    let n = values.len();
    (0..n).filter(|&i| values[i] > values[(i + n - 1) % n] && values[i] >= values[(i + 1) % n]).count()
}

/// Doubled spatial resolution of the coincident-detector correlation.
fn criterion_3() -> Outcome {
    let table = scan::run_g2(&preset("fig4.json")).map_err(|e| e.to_string())?;
    let strong_col = table.column("g2_strong").unwrap();
    let weak_col = table.column("g2_weak").unwrap();
    let delta = table.column("delta").unwrap();
    let shape_err = delta.iter().zip(&strong_col).map(|(d, g)| (g - (1.0 + d.cos().powi(2))).abs()).fold(0.0, f64::max);
    let bounded = strong_col.iter().all(|g| (1.0 - 1e-12..=2.0 + 1e-12).contains(g));

    let u = CollectivePopulations::uniform();
    let vis = visibilities(&u).unwrap();
    let strong = |d: f64| g2_band(BandId::Cb, &u, &vis, d, d).unwrap();
    let weak = |d: f64| g2_weak_field(0.9, d).unwrap();
    let grid: Vec<f64> = (0..4096).map(|i| TAU * i as f64 / 4096.0).collect();
    let period_err = grid.iter().map(|&d| (strong(d) - strong(d + PI)).abs()).fold(0.0, f64::max);
    let weak_2pi_err = grid.iter().map(|&d| (weak(d) - weak(d + TAU)).abs()).fold(0.0, f64::max);
    let weak_pi_gap = grid.iter().map(|&d| (weak(d) - weak(d + PI)).abs()).fold(0.0, f64::max);

    let weak_min = weak_col.iter().cloned().fold(f64::MAX, f64::min);
    let weak_max = weak_col.iter().cloned().fold(f64::MIN, f64::max);
    // Exact evaluation of [s/(s ± 1)]² with s = 1 + 2·0.9² = 2.62.
    let (expect_min, expect_max) = ((2.62f64 / 3.62).powi(2), (2.62f64 / 1.62).powi(2));
    let extrema_ok = (weak_min - expect_min).abs() <= 1e-4 && (weak_max - expect_max).abs() <= 1e-4;

    let strong_peaks = count_periodic_maxima(&grid.iter().map(|&d| strong(d)).collect::<Vec<_>>());
    let weak_peaks = count_periodic_maxima(&grid.iter().map(|&d| weak(d)).collect::<Vec<_>>());

    check(
        shape_err <= 1e-12 && bounded && period_err <= 1e-12 && weak_2pi_err <= 1e-12 && weak_pi_gap > 0.1
            && extrema_ok && strong_peaks == 2 && weak_peaks == 1,
        format!(
            "strong: |g−(1+cos²δ)| ≤ {shape_err:.1e}, π-period err {period_err:.1e}, {strong_peaks} maxima/2π; \
             weak: min {weak_min:.6} (exact {expect_min:.6}, stated 0.52374), max {weak_max:.6} \
             (exact {expect_max:.6}, stated 2.61530), π-shift gap {weak_pi_gap:.3}, {weak_peaks} maximum/2π"
        ),
    )
}

/// Direct steady-state solve against the large-distance closed form, and
/// residual/physicality with collective coupling.
fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut closed_err: f64 = 0.0;
    for _ in 0..1000 {
        let frame = sampling::frame_with_random_theta(&mut rng, 0.01);
        let eta = sampling::log_uniform(&mut rng, 1e-3, 1e3);
        let gamma = PerBand { lb: 1.0, cb: sampling::log_uniform(&mut rng, 1e-2, 1e2), rb: eta };
        let c = BlochCoefficients::from_rates(&frame, gamma, PerBand { lb: 0.0, cb: 0.0, rb: 0.0 });
        let s = steady_state(&c).map_err(|e| e.to_string())?;
        let ratio = c.xi_minus / c.xi_plus;
        closed_err = closed_err.max(s.max_abs_diff(&BlochState::new(2.0 * ratio, 0.0, ratio * ratio)));
    }

    let mut worst_residual: f64 = 0.0;
    let mut worst_excursion: f64 = 0.0;
    for _ in 0..1000 {
        let frame = sampling::frame_with_random_theta(&mut rng, 0.01);
        let c = sampling::coefficients(&mut rng, &frame, true);
        let s = steady_state(&c).map_err(|e| e.to_string())?;
        let b_norm = (4.0 * c.xi_minus).abs();
        worst_residual = worst_residual.max(residual(&c, &s) / b_norm.max(1.0));
        let pops = [
            0.25 * (1.0 + s.z) + 0.25 * s.x,
            0.25 * (1.0 - s.z) + 0.5 * s.y,
            0.25 * (1.0 - s.z) - 0.5 * s.y,
            0.25 * (1.0 + s.z) - 0.25 * s.x,
        ];
        for p in pops {
            worst_excursion = worst_excursion.max(-p).max(p - 1.0);
        }
    }
    check(
        closed_err <= 1e-13 && worst_residual <= 1e-12 && worst_excursion <= 1e-9,
        format!(
            "ζ=0 max|Δ| = {closed_err:.1e} (≤ 1e-13); coupled residual/max(1,‖b‖) = {worst_residual:.1e} \
             (≤ 1e-12); worst population excursion {worst_excursion:.1e} (≤ 1e-9)"
        ),
    )
}

fn slowest_decay(c: &BlochCoefficients) -> f64 {
    let (a, _) = c.system();
    let m = Matrix3::from_fn(|i, j| a[i][j]);
    m.complex_eigenvalues().iter().map(|l| -l.re).fold(f64::MAX, f64::min)
}

/// Fixed-step propagator against the matrix exponential and against the steady state.
fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut prop_err: f64 = 0.0;
    let mut conv_err: f64 = 0.0;
    let mut step_ok = true;
    for _ in 0..100 {
        let frame = sampling::frame_with_random_theta(&mut rng, 0.1);
        let c = sampling::coefficients(&mut rng, &frame, true);
        let v0 = sampling::populations(&mut rng).to_bloch();
        let dt = default_step(&c);
        step_ok &= dt <= 1e-3 / c.xi_plus;
        let t = 10.0 / c.xi_plus;
        let a = evolve(&v0, &c, t, dt).map_err(|e| e.to_string())?;
        let b = expm_propagate(&v0, &c, t).map_err(|e| e.to_string())?;
        prop_err = prop_err.max(a.max_abs_diff(&b));

        let t_long = 20.0 / slowest_decay(&c);
        let late = evolve(&v0, &c, t_long, dt).map_err(|e| e.to_string())?;
        conv_err = conv_err.max(late.max_abs_diff(&steady_state(&c).map_err(|e| e.to_string())?));
    }
    check(
        prop_err <= 1e-8 && conv_err <= 1e-6 && step_ok,
        format!("RK4 vs expm max|Δ| = {prop_err:.1e} (≤ 1e-8); long-time vs steady state {conv_err:.1e} (≤ 1e-6)"),
    )
}

/// Fully coherent central band when V_CB = 1.
fn criterion_6() -> Outcome {
    let mut worst: f64 = 0.0;
    for pops in [
        CollectivePopulations::new(1.0, 0.0, 0.0, 0.0).unwrap(),
        CollectivePopulations::new(0.0, 0.0, 0.0, 1.0).unwrap(),
        CollectivePopulations::new(0.3, 0.0, 0.0, 0.7).unwrap(),
    ] {
        let vis = visibilities(&pops).unwrap();
        if vis.v_cb != 1.0 {
            return Err(format!("V_CB = {} for {pops:?}", vis.v_cb));
        }
        for i in 0..100 {
            for j in 0..100 {
                let d1 = TAU * (i as f64 + 0.5) / 100.0;
                let d2 = TAU * (j as f64 + 0.5) / 100.0;
                let g = g2_band(BandId::Cb, &pops, &vis, d1, d2).map_err(|e| e.to_string())?;
                worst = worst.max((g - 1.0).abs());
            }
        }
    }
    check(worst <= 1e-12, format!("max|g² − 1| = {worst:.1e} on a 100×100 grid (≤ 1e-12)"))
}

/// Uniform populations reduce the correlations to their vacuum forms.
fn criterion_7() -> Outcome {
    let u = CollectivePopulations::uniform();
    let vis = visibilities(&u).unwrap();
    let mut worst: f64 = 0.0;
    for i in 0..64 {
        for j in 0..64 {
            let d1 = -PI + TAU * i as f64 / 63.0;
            let d2 = -PI + TAU * j as f64 / 63.0;
            let cb = g2_band(BandId::Cb, &u, &vis, d1, d2).map_err(|e| e.to_string())?;
            worst = worst.max((cb - (1.0 + d1.cos() * d2.cos())).abs());
            for band in [BandId::Lb, BandId::Rb] {
                let sb = g2_band(band, &u, &vis, d1, d2).map_err(|e| e.to_string())?;
                worst = worst.max((sb - 0.5 * (1.0 + (d1 - d2).cos())).abs());
            }
        }
    }
    let zero = vis.v_cb == 0.0 && vis.v_lb == 0.0 && vis.v_rb == 0.0;
    check(worst <= 1e-14 && zero, format!("max deviation {worst:.1e} (≤ 1e-14); visibilities {vis:?}"))
}

/// Scanned fringe contrast against the population formula.
fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let frame = resonant();
    let geometry = Geometry::pair(20.0 * PI).unwrap();
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let pops = sampling::populations(&mut rng);
        let scanned = fringe_scan(|a| band_intensity_two_atom(BandId::Cb, &pops, &frame, &geometry, a), DEFAULT_SCAN_GRID)
            .map_err(|e| e.to_string())?;
        let v = visibilities(&pops).map_err(|e| e.to_string())?.v_cb;
        worst = worst.max((scanned.visibility - v.abs()).abs());
    }
    check(worst <= 1e-6, format!("max|V_scan − |V_CB|| = {worst:.1e} over 100 population sets (≤ 1e-6)"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 visibility vs eta", criterion_1),
        ("2 chain interference patterns", criterion_2),
        ("3 two-photon resolution doubling", criterion_3),
        ("4 steady state vs closed form", criterion_4),
        ("5 propagator equivalence", criterion_5),
        ("6 coherence limit", criterion_6),
        ("7 uniform-population identities", criterion_7),
        ("8 scanned visibility", criterion_8),
    ];
    let start = Instant::now();
    let mut failures = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{:.2?}]", t.elapsed()),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {name}: {detail} [{:.2?}]", t.elapsed());
            }
        }
    }
    println!("acceptance: {} of 8 criteria passed in {:.2?}", 8 - failures, start.elapsed());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
