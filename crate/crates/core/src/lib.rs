//! Spatial interference in the resonance fluorescence of strongly driven
//! two-level emitters embedded in a frequency-structured reservoir.
//!
//! The crate is organised bottom-up:
//!
//! * [`dressed`]: drive, dressed frame, detection geometry and the reduced
//!   collective state `(x, y, z)`.
//! * [`reservoir`]: decay-rate profiles `γ(ω)` and collective couplings.
//! * [`dynamics`]: equations of motion, propagation, steady state and the
//!   strong-field validity check.
//! * [`observables`]: band intensities, visibilities, `g²`, chain patterns.
//! * [`oracle`]: independent reference computations for verification.
//! * [`scan`]: scenario files, parameter sweeps and CSV output used by the
//!   `sim` binary.

pub mod dressed;
pub mod dynamics;
pub mod error;
pub mod observables;
pub mod oracle;
pub mod reservoir;
pub mod scan;

pub use dressed::{
    detection_phase, dressed_frame, populations_from_xyz, BandId, BlochState, CollectivePopulations, Detector,
    DressedFrame, DriveParams, Geometry,
};
pub use dynamics::{coefficients, evolve, steady_state, validity_check, BlochCoefficients, ValidityReport};
pub use error::{Error, Result};
pub use observables::{
    band_intensity_two_atom, chain_intensity, eta_visibility_closed_form, g2_band, g2_weak_field,
    photon_statistics_class, visibilities, PhotonStatistics, VisibilitySet,
};
pub use reservoir::{collective_chi, eta, CouplingModel, ReservoirProfile};
