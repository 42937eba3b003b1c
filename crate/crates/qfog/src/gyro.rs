//! Rotation-sensitivity formulas and budget-matched probe comparisons.
//!
//! Every result is the error-transfer variance of the angular-velocity
//! estimate, scaled by the square of the Sagnac scale factor (`T^2 var`);
//! the scale factor itself is presentation-layer. The general form for the
//! `X2` output quadrature is
//!
//! ```text
//! T^2 var = [4(V1a sin^2 phi + V2b cos^2 phi) + (1-gamma)/gamma]
//!           / (<X1a> cos phi + <X2b> sin phi)^2
//! ```
//!
//! and the probe-specialized closed forms below are algebraic reductions of
//! it. Zero denominators yield an explicit [`Sensitivity::Divergent`] so
//! parameter sweeps can cross singular points; `gamma = 0` is rejected as
//! [`GyroError::LossSingular`] instead, since with all light lost there is
//! no signal at any phase.

use thiserror::Error;

use crate::probes::{match_cs_amplitude, match_ss_params, MomentSet, PacsProbe};

/// Denominators smaller than this are treated as exact zeros. The bound sits
/// far below anything a parameter grid produces, so near-singular values are
/// reported as computed rather than clipped.
const DENOM_FLOOR: f64 = 1e-300;

/// Interferometer working point: Sagnac phase and loss transmissivity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GyroSetting {
    pub phi: f64,
    pub gamma: f64,
}

impl GyroSetting {
    pub fn new(phi: f64, gamma: f64) -> Self {
        assert!(phi.is_finite(), "Sagnac phase must be finite");
        assert!(
            (0.0..=1.0).contains(&gamma),
            "transmissivity must lie in [0, 1]"
        );
        Self { phi, gamma }
    }
}

/// Sagnac phase `T omega / 2` accumulated at angular velocity `omega` with
/// scale factor `scale_t`.
pub fn sagnac_phase(omega: f64, scale_t: f64) -> f64 {
    assert!(scale_t > 0.0, "scale factor must be positive");
    scale_t * omega / 2.0
}

/// A `T^2`-scaled sensitivity value, or an exact divergence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sensitivity {
    Finite(f64),
    Divergent,
}

impl Sensitivity {
    fn from_parts(numerator: f64, denominator: f64) -> Self {
        if denominator.abs() < DENOM_FLOOR {
            Sensitivity::Divergent
        } else {
            Sensitivity::Finite(numerator / denominator)
        }
    }

    /// The value with divergences mapped to `+inf`.
    pub fn value(&self) -> f64 {
        match *self {
            Sensitivity::Finite(v) => v,
            Sensitivity::Divergent => f64::INFINITY,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Sensitivity::Finite(_))
    }
}

/// Ratio of two sensitivities; keeps 0/0 distinct from overflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RatioValue {
    Finite(f64),
    Divergent,
    Indeterminate,
}

impl RatioValue {
    pub fn value(&self) -> f64 {
        match *self {
            RatioValue::Finite(v) => v,
            RatioValue::Divergent => f64::INFINITY,
            RatioValue::Indeterminate => f64::NAN,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, RatioValue::Finite(_))
    }
}

/// Gaussian baseline the PACS probe is compared against, with its matched
/// parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GaussianBaseline {
    Coherent { alpha_c: f64 },
    Squeezed { alpha_c: f64, r: f64 },
}

/// One point of a budget-matched probe comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonPoint {
    pub value: RatioValue,
    pub pacs: PacsProbe,
    pub y: f64,
    pub baseline: GaussianBaseline,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GyroError {
    /// Transmissivity zero: every photon is lost before detection.
    #[error("gamma = 0 leaves no transmitted signal")]
    LossSingular,
}

/// Which output quadrature of mode `b'` is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputQuadrature {
    X1,
    X2,
}

fn check_gamma(setting: &GyroSetting) -> Result<(), GyroError> {
    if setting.gamma == 0.0 {
        Err(GyroError::LossSingular)
    } else {
        Ok(())
    }
}

/// Error-transfer sensitivity from arbitrary input-mode moments.
pub fn sensitivity_general(
    a: &MomentSet,
    b: &MomentSet,
    setting: &GyroSetting,
    quadrature: OutputQuadrature,
) -> Result<Sensitivity, GyroError> {
    check_gamma(setting)?;
    let (sin, cos) = setting.phi.sin_cos();
    let loss = (1.0 - setting.gamma) / setting.gamma;
    let (numerator, signal) = match quadrature {
        OutputQuadrature::X1 => (
            4.0 * (a.var_x2 * sin * sin + b.var_x1 * cos * cos) + loss,
            a.mean_x2 * cos - b.mean_x1 * sin,
        ),
        OutputQuadrature::X2 => (
            4.0 * (a.var_x1 * sin * sin + b.var_x2 * cos * cos) + loss,
            a.mean_x1 * cos + b.mean_x2 * sin,
        ),
    };
    Ok(Sensitivity::from_parts(numerator, signal * signal))
}

/// PACS probe with the second mode left in vacuum.
pub fn sensitivity_pacs_vacuum(
    probe: &PacsProbe,
    setting: &GyroSetting,
) -> Result<Sensitivity, GyroError> {
    sensitivity_pacs_imag(probe, 0.0, setting)
}

/// PACS probe with an imaginary-axis coherent state `|i y>` on mode `b`.
pub fn sensitivity_pacs_imag(
    probe: &PacsProbe,
    y: f64,
    setting: &GyroSetting,
) -> Result<Sensitivity, GyroError> {
    check_gamma(setting)?;
    let (sin, cos) = setting.phi.sin_cos();
    let numerator = (4.0 * probe.var_x1() - 1.0) * sin * sin + 1.0 / setting.gamma;
    let signal = probe.mean_x1() * cos + y * sin;
    Ok(Sensitivity::from_parts(numerator, signal * signal))
}

/// Phase-independent sensitivity in the small-rotation regime,
/// `1 / (gamma <X1a>^2)`.
pub fn small_rotation_limit(probe: &PacsProbe, gamma: f64) -> Result<Sensitivity, GyroError> {
    check_gamma(&GyroSetting::new(0.0, gamma))?;
    let mean = probe.mean_x1();
    Ok(Sensitivity::from_parts(1.0 / gamma, mean * mean))
}

/// Coherent-probe baseline `|alpha_c> (x) |i y>`.
pub fn sensitivity_cs(
    alpha_c: f64,
    y: f64,
    setting: &GyroSetting,
) -> Result<Sensitivity, GyroError> {
    check_gamma(setting)?;
    let (sin, cos) = setting.phi.sin_cos();
    let signal = alpha_c * cos + y * sin;
    Ok(Sensitivity::from_parts(
        1.0 / setting.gamma,
        signal * signal,
    ))
}

/// Squeezed-probe baseline `|alpha_c> (x) |squeezed vacuum r>`.
pub fn sensitivity_ss(
    alpha_c: f64,
    r: f64,
    setting: &GyroSetting,
) -> Result<Sensitivity, GyroError> {
    check_gamma(setting)?;
    let cos = setting.phi.cos();
    let numerator = ((-2.0 * r).exp() - 1.0) * cos * cos + 1.0 / setting.gamma;
    let signal = alpha_c * cos;
    Ok(Sensitivity::from_parts(numerator, signal * signal))
}

/// PACS over coherent-baseline sensitivity ratio at equal input photon
/// number.
///
/// The closed form cancels the shared `1/gamma`:
///
/// ```text
/// R = [gamma (4 V1a - 1) sin^2 phi + 1] (alpha_c cos phi + y sin phi)^2
///     / (<X1a> cos phi + y sin phi)^2
/// ```
///
/// A vanishing baseline signal alone drives `R` to zero; a vanishing PACS
/// signal alone makes it divergent; both at once are indeterminate.
pub fn ratio_pacs_cs(
    probe: &PacsProbe,
    y: f64,
    setting: &GyroSetting,
) -> Result<ComparisonPoint, GyroError> {
    check_gamma(setting)?;
    let alpha_c = match_cs_amplitude(probe);
    let (sin, cos) = setting.phi.sin_cos();
    let bracket = setting.gamma * (4.0 * probe.var_x1() - 1.0) * sin * sin + 1.0;
    let pacs_signal = probe.mean_x1() * cos + y * sin;
    let cs_signal = alpha_c * cos + y * sin;
    let value = ratio_from_signals(bracket * cs_signal * cs_signal, pacs_signal * pacs_signal);
    Ok(ComparisonPoint {
        value,
        pacs: *probe,
        y,
        baseline: GaussianBaseline::Coherent { alpha_c },
    })
}

/// PACS over squeezed-baseline sensitivity ratio at equal input photon
/// number (`alpha_c^2` matched to the PACS mean photon number and
/// `sinh^2 r = y^2`).
pub fn ratio_pacs_ss(
    probe: &PacsProbe,
    y: f64,
    setting: &GyroSetting,
) -> Result<ComparisonPoint, GyroError> {
    check_gamma(setting)?;
    let (alpha_c, r) = match_ss_params(y, probe);
    let (sin, cos) = setting.phi.sin_cos();
    let bracket = setting.gamma * (4.0 * probe.var_x1() - 1.0) * sin * sin + 1.0;
    let ss_bracket = setting.gamma * ((-2.0 * r).exp() - 1.0) * cos * cos + 1.0;
    let pacs_signal = probe.mean_x1() * cos + y * sin;
    let ss_signal = alpha_c * cos;
    let value = ratio_from_signals(
        bracket * ss_signal * ss_signal,
        pacs_signal * pacs_signal * ss_bracket,
    );
    Ok(ComparisonPoint {
        value,
        pacs: *probe,
        y,
        baseline: GaussianBaseline::Squeezed { alpha_c, r },
    })
}

fn ratio_from_signals(numerator: f64, denominator: f64) -> RatioValue {
    let num_zero = numerator.abs() < DENOM_FLOOR;
    let den_zero = denominator.abs() < DENOM_FLOOR;
    match (num_zero, den_zero) {
        (true, true) => RatioValue::Indeterminate,
        (false, true) => RatioValue::Divergent,
        _ => RatioValue::Finite(numerator / denominator),
    }
}
