//! Band-resolved intensities, visibilities and intensity correlations.
//!
//! Two-atom cross correlators are evaluated with the collective-state
//! identities `⟨R_za R_zb⟩ = z`, `⟨R₁₂^a R₂₁^b⟩ = ⟨R₂₁^a R₁₂^b⟩ = (σ_ss − σ_aa)/2`,
//! `⟨R₁₂^j R₂₁^j⟩ = σ_gg + (σ_ss + σ_aa)/2` and
//! `⟨R₂₁^j R₁₂^j⟩ = σ_ee + (σ_ss + σ_aa)/2`.
//! Intensities are in units of the (unspecified) detection prefactor `Ψ_R(ω_n)`.

pub use crate::dressed::BandId;
use crate::dressed::{phase_at_angle, CollectivePopulations, DressedFrame, Geometry};
use crate::error::{Error, Result};

const DENOM_EPS: f64 = 1e-15;

/// Default classification tolerance around `g² = 1`.
pub const POISSON_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VisibilitySet {
    pub v_cb: f64,
    pub v_lb: f64,
    pub v_rb: f64,
}

impl VisibilitySet {
    pub fn get(&self, band: BandId) -> f64 {
        match band {
            BandId::Cb => self.v_cb,
            BandId::Lb => self.v_lb,
            BandId::Rb => self.v_rb,
        }
    }
}

/// Sideband weights: `(1 − σ_ee + σ_gg)` for LB, `(1 + σ_ee − σ_gg)` for RB.
fn sideband_weight(band: BandId, pops: &CollectivePopulations) -> f64 {
    match band {
        BandId::Lb => 1.0 - pops.sigma_ee + pops.sigma_gg,
        BandId::Rb => 1.0 + pops.sigma_ee - pops.sigma_gg,
        BandId::Cb => 1.0,
    }
}

/// Intensity of one band at observation angle `alpha` for an emitter pair.
pub fn band_intensity_two_atom(
    band: BandId,
    pops: &CollectivePopulations,
    frame: &DressedFrame,
    geometry: &Geometry,
    alpha: f64,
) -> f64 {
    let cos_delta = phase_at_angle(geometry.k_r, band, frame, alpha).cos();
    let cross = pops.sigma_ss - pops.sigma_aa;
    let mixed = 0.5 * (pops.sigma_ss + pops.sigma_aa);
    match band {
        BandId::Cb => {
            let z = pops.sigma_ee + pops.sigma_gg - pops.sigma_ss - pops.sigma_aa;
            0.25 * frame.sin_sq_2theta() * (2.0 + 2.0 * z * cos_delta)
        }
        BandId::Lb => frame.sin_4() * (2.0 * (pops.sigma_gg + mixed) + cross * cos_delta),
        BandId::Rb => frame.cos_4() * (2.0 * (pops.sigma_ee + mixed) + cross * cos_delta),
    }
}

fn sideband_visibility(band: BandId, pops: &CollectivePopulations) -> Result<f64> {
    let numerator = pops.sigma_ss - pops.sigma_aa;
    let denominator = sideband_weight(band, pops);
    if denominator.abs() <= DENOM_EPS {
        // The band is dark; with no cross term there is no fringe either.
        if numerator.abs() <= DENOM_EPS {
            return Ok(0.0);
        }
        return Err(Error::UndefinedVisibility { band: band.name() });
    }
    Ok(numerator / denominator)
}

pub fn visibilities(pops: &CollectivePopulations) -> Result<VisibilitySet> {
    Ok(VisibilitySet {
        v_cb: pops.sigma_ee + pops.sigma_gg - pops.sigma_ss - pops.sigma_aa,
        v_lb: sideband_visibility(BandId::Lb, pops)?,
        v_rb: sideband_visibility(BandId::Rb, pops)?,
    })
}

/// Central-band visibility `[(1 − η)/(1 + η)]²` on resonance with far-separated emitters.
pub fn eta_visibility_closed_form(eta: f64) -> Result<f64> {
    if !(eta.is_finite() && eta > 0.0) {
        return Err(Error::invalid("eta", format!("must be positive, got {eta}")));
    }
    Ok(((1.0 - eta) / (1.0 + eta)).powi(2))
}

/// Normalized intensity correlation between two detectors with phases
/// `delta1`, `delta2` evaluated at the band's own wavevector.
pub fn g2_band(
    band: BandId,
    pops: &CollectivePopulations,
    vis: &VisibilitySet,
    delta1: f64,
    delta2: f64,
) -> Result<f64> {
    let v = vis.get(band);
    let (c1, c2) = (delta1.cos(), delta2.cos());
    let denominator = (1.0 + v * c1) * (1.0 + v * c2);
    if denominator.abs() <= DENOM_EPS {
        return Err(Error::SingularCorrelation { band: band.name() });
    }
    match band {
        BandId::Cb => Ok(1.0 + (1.0 - v * v) * c1 * c2 / denominator),
        BandId::Lb | BandId::Rb => {
            let weight = sideband_weight(band, pops);
            if weight.abs() <= DENOM_EPS {
                return Err(Error::SingularCorrelation { band: band.name() });
            }
            let source = if band == BandId::Lb { pops.sigma_gg } else { pops.sigma_ee };
            let p = 2.0 * source / (weight * weight);
            Ok(p * (1.0 + (delta1 - delta2).cos()) / denominator)
        }
    }
}

/// Weak-field two-atom correlation for coincident detectors,
/// `[s/(s + cos δ)]²` with `s = 1 + 2(Ω/γ)²`.
pub fn g2_weak_field(omega_over_gamma: f64, delta: f64) -> Result<f64> {
    if !omega_over_gamma.is_finite() {
        return Err(Error::invalid("omega_over_gamma", "must be finite"));
    }
    let s = 1.0 + 2.0 * omega_over_gamma * omega_over_gamma;
    let denominator = s + delta.cos();
    if denominator.abs() <= DENOM_EPS {
        return Err(Error::SingularCorrelation { band: "weak-field" });
    }
    Ok((s / denominator).powi(2))
}

/// Array factor `sin²(Nx/2) / sin²(x/2)`, equal to `N²` at multiples of 2π.
pub fn array_factor(n_atoms: usize, x: f64) -> f64 {
    let n = n_atoms as f64;
    let r = x - std::f64::consts::TAU * (x / std::f64::consts::TAU).round();
    if r == 0.0 {
        return n * n;
    }
    let ratio = (0.5 * n * r).sin() / (0.5 * r).sin();
    ratio * ratio
}

/// Central-band intensity of an `N`-emitter chain, in units of
/// `sin²2θ · Ψ_R(ω_L) / 4`: `N(1 − z) + z F(δ)`.
pub fn chain_intensity(n_atoms: usize, z: f64, delta: f64) -> f64 {
    n_atoms as f64 * (1.0 - z) + z * array_factor(n_atoms, delta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhotonStatistics {
    SubPoissonian,
    Poissonian,
    SuperPoissonian,
}

pub fn photon_statistics_class(g2: f64) -> Result<PhotonStatistics> {
    if !(g2.is_finite() && g2 >= 0.0) {
        return Err(Error::invalid("g2", format!("must be non-negative, got {g2}")));
    }
    Ok(if g2 < 1.0 - POISSON_TOL {
        PhotonStatistics::SubPoissonian
    } else if g2 > 1.0 + POISSON_TOL {
        PhotonStatistics::SuperPoissonian
    } else {
        PhotonStatistics::Poissonian
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, PI};

    use proptest::prelude::*;

    use super::*;
    use crate::dressed::{dressed_frame, BlochState, DriveParams};

    fn resonant() -> DressedFrame {
        dressed_frame(&DriveParams::resonant(100.0).unwrap()).unwrap()
    }

    fn pops(ee: f64, ss: f64, aa: f64, gg: f64) -> CollectivePopulations {
        CollectivePopulations::new(ee, ss, aa, gg).unwrap()
    }

    #[test]
    fn uniform_cb_is_flat() {
        let f = resonant();
        let g = Geometry::pair(20.0 * PI).unwrap();
        let u = CollectivePopulations::uniform();
        for alpha in [0.0, 0.3, 1.0, FRAC_PI_2, 2.5] {
            assert_eq!(band_intensity_two_atom(BandId::Cb, &u, &f, &g, alpha), 0.5);
        }
    }

    #[test]
    fn cb_peak_at_right_angle() {
        let f = resonant();
        let g = Geometry::pair(20.0 * PI).unwrap();
        let p = BlochState::new(0.0, 0.0, 0.9).populations().unwrap();
        let i = band_intensity_two_atom(BandId::Cb, &p, &f, &g, FRAC_PI_2);
        assert!((i - 0.95).abs() < 1e-12);
    }

    #[test]
    fn lb_dark_when_fully_excited() {
        let f = resonant();
        let g = Geometry::pair(20.0 * PI).unwrap();
        let p = pops(1.0, 0.0, 0.0, 0.0);
        for alpha in [0.0, 0.7, FRAC_PI_2] {
            assert_eq!(band_intensity_two_atom(BandId::Lb, &p, &f, &g, alpha), 0.0);
        }
    }

    #[test]
    fn visibility_examples() {
        let u = visibilities(&CollectivePopulations::uniform()).unwrap();
        assert_eq!((u.v_cb, u.v_lb, u.v_rb), (0.0, 0.0, 0.0));
        let e = visibilities(&pops(1.0, 0.0, 0.0, 0.0)).unwrap();
        assert_eq!((e.v_cb, e.v_lb, e.v_rb), (1.0, 0.0, 0.0));
        let s = visibilities(&pops(0.0, 1.0, 0.0, 0.0)).unwrap();
        assert_eq!((s.v_cb, s.v_lb, s.v_rb), (-1.0, 1.0, 1.0));
    }

    #[test]
    fn undefined_visibility_reported() {
        // Outside tolerance-free physics, only reachable with unchecked populations.
        let p = CollectivePopulations { sigma_ee: 1.0, sigma_ss: 0.1, sigma_aa: 0.0, sigma_gg: 0.0 };
        assert!(matches!(visibilities(&p), Err(Error::UndefinedVisibility { band: "LB" })));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(eta_visibility_closed_form(1.0).unwrap(), 0.0);
        assert!((eta_visibility_closed_form(1e-9).unwrap() - 1.0).abs() < 1e-8);
        assert_eq!(eta_visibility_closed_form(3.0).unwrap(), 0.25);
        assert!(eta_visibility_closed_form(0.0).is_err());
        assert!(eta_visibility_closed_form(-2.0).is_err());
    }

    #[test]
    fn g2_examples() {
        let coherent = pops(1.0, 0.0, 0.0, 0.0);
        let vis = visibilities(&coherent).unwrap();
        for (d1, d2) in [(0.0, 0.0), (0.4, 2.0), (3.0, -1.0)] {
            assert_eq!(g2_band(BandId::Cb, &coherent, &vis, d1, d2).unwrap(), 1.0);
        }
        let u = CollectivePopulations::uniform();
        let vu = visibilities(&u).unwrap();
        assert_eq!(g2_band(BandId::Cb, &u, &vu, 0.0, 0.0).unwrap(), 2.0);
        let lb = g2_band(BandId::Lb, &u, &vu, 1.0, 0.3).unwrap();
        assert!((lb - 0.5 * (1.0 + 0.7f64.cos())).abs() < 1e-15);
    }

    #[test]
    fn g2_dark_fringe_is_singular() {
        let coherent = pops(1.0, 0.0, 0.0, 0.0);
        let vis = visibilities(&coherent).unwrap();
        assert!(matches!(g2_band(BandId::Cb, &coherent, &vis, PI, 0.0), Err(Error::SingularCorrelation { .. })));
        // LB carries no light when σ_ee = 1.
        assert!(g2_band(BandId::Lb, &coherent, &vis, 0.0, 0.0).is_err());
    }

    #[test]
    fn weak_field_examples() {
        let at_zero = g2_weak_field(0.9, 0.0).unwrap();
        let at_pi = g2_weak_field(0.9, PI).unwrap();
        assert!((at_zero - (2.62f64 / 3.62).powi(2)).abs() < 1e-14);
        assert!((at_zero - 0.523824).abs() < 1e-6);
        assert!((at_pi - (2.62f64 / 1.62).powi(2)).abs() < 1e-12);
        assert!((at_pi - 2.615607).abs() < 1e-6);
        assert!((g2_weak_field(1e6, 1.0).unwrap() - 1.0).abs() < 1e-11);
        assert!(matches!(g2_weak_field(0.0, PI), Err(Error::SingularCorrelation { .. })));
    }

    #[test]
    fn chain_examples() {
        for n in [2usize, 5, 8] {
            assert_eq!(chain_intensity(n, 1.0, 0.0), (n * n) as f64);
            assert!((chain_intensity(n, 1.0, 6.0 * PI) - (n * n) as f64).abs() < 1e-9);
            assert_eq!(chain_intensity(n, 0.0, 1.234), n as f64);
        }
        for (z, d) in [(0.3, 0.5), (-0.4, 2.0), (0.9, 40.0)] {
            assert!((chain_intensity(2, z, d) - (2.0 + 2.0 * z * f64::cos(d))).abs() < 1e-12);
        }
    }

    #[test]
    fn statistics_examples() {
        assert_eq!(photon_statistics_class(1.0).unwrap(), PhotonStatistics::Poissonian);
        assert_eq!(photon_statistics_class(2.0).unwrap(), PhotonStatistics::SuperPoissonian);
        assert_eq!(photon_statistics_class(0.5).unwrap(), PhotonStatistics::SubPoissonian);
        assert!(photon_statistics_class(-0.1).is_err());
    }

    fn random_pops() -> impl Strategy<Value = CollectivePopulations> {
        prop::array::uniform4(0.0f64..1.0).prop_filter("nonzero", |w| w.iter().sum::<f64>() > 1e-3).prop_map(|w| {
            let s: f64 = w.iter().sum();
            CollectivePopulations { sigma_ee: w[0] / s, sigma_ss: w[1] / s, sigma_aa: w[2] / s, sigma_gg: w[3] / s }
        })
    }

    proptest! {
        #[test]
        fn g2_nonnegative(p in random_pops(), d1 in -10.0f64..10.0, d2 in -10.0f64..10.0) {
            let vis = visibilities(&p).unwrap();
            for band in BandId::ALL {
                if let Ok(g) = g2_band(band, &p, &vis, d1, d2) {
                    prop_assert!(g >= -1e-12, "{band} g2 = {g}");
                }
            }
        }

        #[test]
        fn closed_form_inverse_symmetry(log_eta in -6.0f64..6.0) {
            let eta = 10f64.powf(log_eta);
            let a = eta_visibility_closed_form(eta).unwrap();
            let b = eta_visibility_closed_form(1.0 / eta).unwrap();
            prop_assert!((a - b).abs() <= 1e-14);
        }

        #[test]
        fn visibilities_bounded(p in random_pops()) {
            let v = visibilities(&p).unwrap();
            for band in BandId::ALL {
                prop_assert!(v.get(band).abs() <= 1.0 + 1e-12);
            }
        }
    }
}
