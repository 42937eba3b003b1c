//! Analytic moments of the probe states and photon-budget matching.
//!
//! Three probe families feed the interferometer: the photon-added coherent
//! state (PACS) on mode `a`, a coherent state, and a squeezed vacuum on mode
//! `b`. All first and second quadrature moments here are closed forms in
//! Laguerre polynomials; the `fock` module provides the independent
//! brute-force route the tests compare against.
//!
//! Quadratures follow the convention `X1 = (f + f^dag)/2`,
//! `X2 = (f - f^dag)/(2i)`, so a coherent state has variance 1/4 in both.

use crate::laguerre::{assoc_laguerre, laguerre};

/// Photon-added coherent state `N_m a^{dag m} |alpha>` with real amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PacsProbe {
    /// Coherent amplitude (real by construction).
    pub alpha: f64,
    /// Number of photon additions; `m = 0` is a plain coherent state.
    pub m: u32,
}

/// State of the second input mode `b`.
///
/// The coherent option stores only the real `y` of the purely imaginary
/// amplitude `beta = i y`; the squeezed option fixes the squeezing phase to
/// pi, which squeezes `X2` and anti-squeezes `X1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BModeState {
    Vacuum,
    ImagCoherent { y: f64 },
    SqueezedVacuum { r: f64 },
}

/// First and second quadrature moments of a single mode, plus its mean
/// photon number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSet {
    pub mean_x1: f64,
    pub mean_x2: f64,
    pub var_x1: f64,
    pub var_x2: f64,
    pub mean_photons: f64,
}

impl PacsProbe {
    pub fn new(alpha: f64, m: u32) -> Self {
        assert!(alpha.is_finite(), "PACS amplitude must be finite");
        Self { alpha, m }
    }

    /// Normalization constant `N_m = [m! L_m(-alpha^2)]^(-1/2)`.
    pub fn norm_const(&self) -> f64 {
        let mut m_factorial = 1.0;
        for k in 1..=self.m {
            m_factorial *= f64::from(k);
        }
        (m_factorial * laguerre(self.m, -self.alpha * self.alpha)).powf(-0.5)
    }

    /// Mean of `X1`: `alpha L_m^1(-alpha^2) / L_m(-alpha^2)`.
    pub fn mean_x1(&self) -> f64 {
        let x = -self.alpha * self.alpha;
        self.alpha * assoc_laguerre(self.m, 1, x) / laguerre(self.m, x)
    }

    /// Variance of `X1`.
    ///
    /// The middle term uses the associated Laguerre polynomial of order 2,
    /// not the square of `L_m`; the Fock-basis route pins this reading down
    /// (at alpha = 2, m = 1 it gives 0.19 where the squared reading would
    /// give 7.39).
    pub fn var_x1(&self) -> f64 {
        let x = -self.alpha * self.alpha;
        let a2 = self.alpha * self.alpha;
        let lm = laguerre(self.m, x);
        let l1 = assoc_laguerre(self.m, 1, x);
        let second = (f64::from(self.m + 1) * laguerre(self.m + 1, x)
            + a2 * assoc_laguerre(self.m, 2, x))
            / (2.0 * lm);
        second - a2 * (l1 / lm) * (l1 / lm) - 0.25
    }

    /// Mean photon number `(m+1) L_{m+1}(-alpha^2) / L_m(-alpha^2) - 1`.
    pub fn mean_photons(&self) -> f64 {
        let x = -self.alpha * self.alpha;
        f64::from(self.m + 1) * laguerre(self.m + 1, x) / laguerre(self.m, x) - 1.0
    }

    /// All five single-mode moments.
    ///
    /// `<a>` and `<a^2>` of the PACS are real, so `<X2> = 0` and the `X2`
    /// variance follows from `<a^2> = alpha^2 L_m^2(-alpha^2)/L_m(-alpha^2)`.
    pub fn moments(&self) -> MomentSet {
        let x = -self.alpha * self.alpha;
        let a_sq = self.alpha * self.alpha * assoc_laguerre(self.m, 2, x) / laguerre(self.m, x);
        let n = self.mean_photons();
        MomentSet {
            mean_x1: self.mean_x1(),
            mean_x2: 0.0,
            var_x1: self.var_x1(),
            var_x2: (2.0 * n + 1.0 - 2.0 * a_sq) / 4.0,
            mean_photons: n,
        }
    }
}

impl BModeState {
    pub fn moments(&self) -> MomentSet {
        match *self {
            BModeState::Vacuum => MomentSet {
                mean_x1: 0.0,
                mean_x2: 0.0,
                var_x1: 0.25,
                var_x2: 0.25,
                mean_photons: 0.0,
            },
            // beta = i y displaces X2 only.
            BModeState::ImagCoherent { y } => MomentSet {
                mean_x1: 0.0,
                mean_x2: y,
                var_x1: 0.25,
                var_x2: 0.25,
                mean_photons: y * y,
            },
            // Squeezing phase pi: X2 squeezed, X1 anti-squeezed.
            BModeState::SqueezedVacuum { r } => MomentSet {
                mean_x1: 0.0,
                mean_x2: 0.0,
                var_x1: (2.0 * r).exp() / 4.0,
                var_x2: (-2.0 * r).exp() / 4.0,
                mean_photons: r.sinh() * r.sinh(),
            },
        }
    }
}

/// Moments of a coherent state `|alpha_c>` with real amplitude (mode `a` of
/// the Gaussian baselines).
pub fn coherent_moments(alpha_c: f64) -> MomentSet {
    MomentSet {
        mean_x1: alpha_c,
        mean_x2: 0.0,
        var_x1: 0.25,
        var_x2: 0.25,
        mean_photons: alpha_c * alpha_c,
    }
}

/// Moment pair `(a mode, b mode)` of the squeezed-state probe
/// `|alpha_c> (x) |squeezed vacuum r>`.
pub fn ss_moments(r: f64, alpha_c: f64) -> (MomentSet, MomentSet) {
    debug_assert!(r >= 0.0, "squeezing magnitude must be non-negative");
    (
        coherent_moments(alpha_c),
        BModeState::SqueezedVacuum { r }.moments(),
    )
}

/// Coherent amplitude that gives the baseline probe the same mean photon
/// number as the PACS.
pub fn match_cs_amplitude(probe: &PacsProbe) -> f64 {
    probe.mean_photons().sqrt()
}

/// Squeezed-probe parameters `(alpha_c, r)` with the photon budget of the
/// PACS probe: `alpha_c^2` matches the PACS mean photon number and
/// `sinh^2 r = y^2` matches the `b`-mode coherent displacement, i.e.
/// `e^r = y + sqrt(1 + y^2)`.
pub fn match_ss_params(y: f64, probe: &PacsProbe) -> (f64, f64) {
    debug_assert!(y >= 0.0, "displacement must be non-negative for matching");
    (match_cs_amplitude(probe), y.asinh())
}
