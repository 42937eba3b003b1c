//! Sensitivity engine for a quadrature-measurement quantum fiber-optic
//! gyroscope.
//!
//! The crate computes closed-form rotation sensitivities for three probe
//! families — photon-added coherent (non-Gaussian), coherent, and squeezed —
//! together with the budget-matched ratios between them, and carries an
//! independent truncated-number-basis route ([`fock`]) that every analytic
//! moment is checked against.

pub mod fock;
pub mod gyro;
pub mod laguerre;
pub mod probes;

pub use fock::{FockVector, OracleMoments, TruncationError, DEFAULT_DIM};
pub use gyro::{
    ratio_pacs_cs, ratio_pacs_ss, sensitivity_cs, sensitivity_general, sensitivity_pacs_imag,
    sensitivity_pacs_vacuum, sensitivity_ss, small_rotation_limit, ComparisonPoint,
    GaussianBaseline, GyroError, GyroSetting, OutputQuadrature, RatioValue, Sensitivity,
};
pub use probes::{
    coherent_moments, match_cs_amplitude, match_ss_params, ss_moments, BModeState, MomentSet,
    PacsProbe,
};
