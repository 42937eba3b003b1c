//! Deterministic best-phase search for the probe-comparison ratios.
//!
//! The objective is smooth apart from isolated signal zeros, so the search
//! is a fixed coarse scan (at least 1000 points) followed by golden-section
//! refinement of the best grid cell down to an interval of 1e-8 rad. No
//! randomness anywhere; a given config always returns the same point.

use thiserror::Error;

use qfog::gyro::{ratio_pacs_cs, ratio_pacs_ss, GyroSetting, RatioValue};
use qfog::probes::PacsProbe;

use crate::config::{Mode, OptimizeConfig};

const COARSE_POINTS: usize = 2001;
const REFINE_WIDTH: f64 = 1e-8;
/// Spread below which the objective counts as flat over the bracket.
const FLAT_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizeResult {
    /// Phase of the smallest evaluated objective value.
    pub argmin_phi: f64,
    pub min_value: f64,
    /// Final refinement interval around the minimum.
    pub bracket: (f64, f64),
    /// Golden-section iterations performed.
    pub iterations: usize,
    /// Total objective evaluations (coarse scan + refinement).
    pub evaluations: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OptimizeError {
    #[error("no minimum: {0}")]
    NoMinimum(String),
}

/// Ratio as a plain objective value; divergent and indeterminate points are
/// treated as +inf so the search passes over them.
fn objective(config: &OptimizeConfig, phi: f64) -> f64 {
    let setting = GyroSetting::new(phi, config.fixed.gamma);
    let probe = PacsProbe::new(config.fixed.alpha, config.fixed.m);
    let ratio = match config.mode {
        Mode::RatioCs => ratio_pacs_cs(&probe, config.fixed.y, &setting),
        Mode::RatioSs => ratio_pacs_ss(&probe, config.fixed.y, &setting),
        _ => unreachable!("optimize config admits ratio modes only"),
    }
    .expect("transmissivity validated nonzero");
    match ratio.value {
        RatioValue::Finite(v) => v,
        RatioValue::Divergent | RatioValue::Indeterminate => f64::INFINITY,
    }
}

pub fn find_best_phase(config: &OptimizeConfig) -> Result<OptimizeResult, OptimizeError> {
    let (lo, hi) = config.bracket;
    let f = |phi: f64| objective(config, phi);

    let step = (hi - lo) / (COARSE_POINTS - 1) as f64;
    let mut evaluations = 0usize;
    let mut best_k = 0usize;
    let mut best = (lo, f64::INFINITY);
    let mut coarse_min = f64::INFINITY;
    let mut coarse_max = f64::NEG_INFINITY;
    for k in 0..COARSE_POINTS {
        let x = if k + 1 == COARSE_POINTS {
            hi
        } else {
            lo + k as f64 * step
        };
        let v = f(x);
        evaluations += 1;
        if v.is_finite() {
            coarse_min = coarse_min.min(v);
            coarse_max = coarse_max.max(v);
        }
        if v < best.1 {
            best = (x, v);
            best_k = k;
        }
    }

    if !coarse_min.is_finite() {
        return Err(OptimizeError::NoMinimum(
            "objective not finite anywhere in the bracket".to_string(),
        ));
    }
    if coarse_max - coarse_min <= FLAT_EPS * coarse_max.abs().max(1.0) {
        return Err(OptimizeError::NoMinimum(format!(
            "objective is flat over the bracket (spread {:.3e})",
            coarse_max - coarse_min
        )));
    }

    // refine inside the cells adjacent to the best coarse point
    let mut a = if best_k == 0 {
        lo
    } else {
        lo + (best_k - 1) as f64 * step
    };
    let mut b = if best_k + 1 >= COARSE_POINTS {
        hi
    } else {
        lo + (best_k + 1) as f64 * step
    };

    const INV_PHI: f64 = 0.618_033_988_749_894_8; // (sqrt(5) - 1) / 2
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    evaluations += 2;
    let mut iterations = 0usize;
    while b - a > REFINE_WIDTH {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
        evaluations += 1;
        iterations += 1;
        if f1 < best.1 {
            best = (x1, f1);
        }
        if f2 < best.1 {
            best = (x2, f2);
        }
    }

    // the reported interval always contains the reported argmin
    let bracket = (a.min(best.0), b.max(best.0));
    Ok(OptimizeResult {
        argmin_phi: best.0,
        min_value: best.1,
        bracket,
        iterations,
        evaluations,
    })
}
