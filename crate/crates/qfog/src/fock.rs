//! Truncated number-basis states and brute-force moment evaluation.
//!
//! This is the verification route: probe states are built as amplitude
//! vectors over `|0> .. |dim-1>`, moments come from matrix-free ladder
//! recurrences, and the lossy interferometer acts on moments through the
//! Heisenberg-picture linear transform. Nothing here reuses the closed-form
//! Laguerre expressions, so agreement between the two routes is meaningful.

use num_complex::Complex64;
use thiserror::Error;

use crate::probes::MomentSet;

/// Default truncation dimension; comfortably holds `alpha <= 2`, `m <= 12`.
pub const DEFAULT_DIM: usize = 128;

/// Maximum probability allowed in the top basis state after normalization.
pub const TAIL_EPS: f64 = 1e-14;

/// Raised when a state does not fit the requested truncation.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("truncated basis too small: dim={dim}, top-state mass {tail_mass:.3e} > {limit:.0e}")]
pub struct TruncationError {
    pub dim: usize,
    pub tail_mass: f64,
    pub limit: f64,
}

/// Pure state in a truncated number basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    amps: Vec<Complex64>,
}

/// Moments measured on a [`FockVector`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleMoments {
    pub mean_x1: f64,
    pub mean_x2: f64,
    pub var_x1: f64,
    pub var_x2: f64,
    pub mean_photons: f64,
}

/// Mean and variance of both output-mode quadratures after the Sagnac
/// transform and symmetric loss.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutputQuadratures {
    pub mean_x1: f64,
    pub var_x1: f64,
    pub mean_x2: f64,
    pub var_x2: f64,
}

impl FockVector {
    /// Number state `|n>`.
    pub fn number(n: usize, dim: usize) -> Self {
        assert!(n < dim, "number state outside truncation");
        let mut amps = vec![Complex64::ZERO; dim];
        amps[n] = Complex64::ONE;
        Self { amps }
    }

    /// Coherent state `|alpha>` with real amplitude.
    pub fn coherent(alpha: f64, dim: usize) -> Result<Self, TruncationError> {
        Self::coherent_complex(Complex64::new(alpha, 0.0), dim)
    }

    /// Coherent state `|i y>` displaced along the imaginary axis.
    pub fn coherent_imag(y: f64, dim: usize) -> Result<Self, TruncationError> {
        Self::coherent_complex(Complex64::new(0.0, y), dim)
    }

    fn coherent_complex(alpha: Complex64, dim: usize) -> Result<Self, TruncationError> {
        assert!(dim >= 1, "dimension must be positive");
        let mut amps = vec![Complex64::ZERO; dim];
        amps[0] = Complex64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0);
        for n in 1..dim {
            amps[n] = amps[n - 1] * alpha / (n as f64).sqrt();
        }
        let state = Self { amps }.renormalized();
        state.check_tail()?;
        Ok(state)
    }

    /// Squeezed vacuum with squeezing phase pi (only even states occupied).
    pub fn squeezed_vacuum(r: f64, dim: usize) -> Result<Self, TruncationError> {
        assert!(r >= 0.0, "squeezing magnitude must be non-negative");
        let mut amps = vec![Complex64::ZERO; dim];
        let t = r.tanh();
        // c_{2n} = (tanh r)^n sqrt((2n)!) / (2^n n!) / sqrt(cosh r); with
        // phase pi the usual (-1)^n alternation cancels.
        let mut c = 1.0 / r.cosh().sqrt();
        amps[0] = Complex64::new(c, 0.0);
        let mut n = 1usize;
        while 2 * n < dim {
            let k = (2 * n) as f64;
            c *= t * ((k - 1.0) * k).sqrt() / k;
            amps[2 * n] = Complex64::new(c, 0.0);
            n += 1;
        }
        let state = Self { amps }.renormalized();
        state.check_tail()?;
        // odd top index leaves the even tail one slot below
        if dim >= 2 {
            let even_top = if (dim - 1).is_multiple_of(2) {
                dim - 1
            } else {
                dim - 2
            };
            let mass = state.amps[even_top].norm_sqr();
            if mass > TAIL_EPS {
                return Err(TruncationError {
                    dim,
                    tail_mass: mass,
                    limit: TAIL_EPS,
                });
            }
        }
        Ok(state)
    }

    /// Applies the creation operator `times` times and renormalizes.
    ///
    /// Returns the new state together with the squared norm of the raw
    /// (un-normalized) raised vector; for a normalized coherent input that
    /// norm equals `m! L_m(-alpha^2)`, tying the construction to the PACS
    /// normalization constant.
    pub fn apply_creation(&self, times: u32) -> Result<(Self, f64), TruncationError> {
        let dim = self.amps.len();
        let mut amps = self.amps.clone();
        for _ in 0..times {
            let lost = amps[dim - 1].norm_sqr();
            if lost > TAIL_EPS {
                return Err(TruncationError {
                    dim,
                    tail_mass: lost,
                    limit: TAIL_EPS,
                });
            }
            for n in (1..dim).rev() {
                amps[n] = amps[n - 1] * (n as f64).sqrt();
            }
            amps[0] = Complex64::ZERO;
        }
        let raw = Self { amps };
        let norm_sq = raw.norm_sq();
        let state = raw.renormalized();
        state.check_tail()?;
        Ok((state, norm_sq))
    }

    /// Coherent state raised `m` times: the PACS carrier. Also returns the
    /// pre-normalization squared norm (see [`FockVector::apply_creation`]).
    pub fn pacs(alpha: f64, m: u32, dim: usize) -> Result<(Self, f64), TruncationError> {
        Self::coherent(alpha, dim)?.apply_creation(m)
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitude(&self, n: usize) -> Complex64 {
        self.amps[n]
    }

    fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum()
    }

    fn renormalized(mut self) -> Self {
        let norm = self.norm_sq().sqrt();
        assert!(norm > 0.0, "cannot normalize the zero vector");
        for c in &mut self.amps {
            *c /= norm;
        }
        self
    }

    fn check_tail(&self) -> Result<(), TruncationError> {
        let mass = self.amps[self.amps.len() - 1].norm_sqr();
        if mass > TAIL_EPS {
            return Err(TruncationError {
                dim: self.amps.len(),
                tail_mass: mass,
                limit: TAIL_EPS,
            });
        }
        Ok(())
    }

    /// Quadrature and photon-number moments via amplitude-index recurrences:
    /// `<a> = sum_n sqrt(n+1) conj(c_n) c_{n+1}` and
    /// `<a^2> = sum_n sqrt((n+1)(n+2)) conj(c_n) c_{n+2}`.
    pub fn moments(&self) -> OracleMoments {
        let dim = self.amps.len();
        let mut mean_a = Complex64::ZERO;
        let mut mean_a2 = Complex64::ZERO;
        let mut mean_n = 0.0;
        for n in 0..dim {
            mean_n += n as f64 * self.amps[n].norm_sqr();
            if n + 1 < dim {
                mean_a += self.amps[n].conj() * self.amps[n + 1] * ((n + 1) as f64).sqrt();
            }
            if n + 2 < dim {
                mean_a2 +=
                    self.amps[n].conj() * self.amps[n + 2] * (((n + 1) * (n + 2)) as f64).sqrt();
            }
        }
        let mean_x1 = mean_a.re;
        let mean_x2 = mean_a.im;
        let x1_sq = (2.0 * mean_a2.re + 2.0 * mean_n + 1.0) / 4.0;
        let x2_sq = (2.0 * mean_n + 1.0 - 2.0 * mean_a2.re) / 4.0;
        OracleMoments {
            mean_x1,
            mean_x2,
            var_x1: x1_sq - mean_x1 * mean_x1,
            var_x2: x2_sq - mean_x2 * mean_x2,
            mean_photons: mean_n,
        }
    }
}

impl OracleMoments {
    /// Bridges into the analytic-moment currency used by the sensitivity
    /// formulas.
    pub fn as_moments(&self) -> MomentSet {
        MomentSet {
            mean_x1: self.mean_x1,
            mean_x2: self.mean_x2,
            var_x1: self.var_x1,
            var_x2: self.var_x2,
            mean_photons: self.mean_photons,
        }
    }
}

/// Moments of both output quadratures of mode `b'` for input-mode moments
/// `a`, `b`, Sagnac phase `phi` and transmissivity `gamma`.
///
/// The two loss ancillas enter in vacuum: zero means, variance 1/4, which
/// contributes the `(1-gamma)/4` floor.
pub fn output_quadrature_stats(
    a: &MomentSet,
    b: &MomentSet,
    phi: f64,
    gamma: f64,
) -> OutputQuadratures {
    assert!(
        (0.0..=1.0).contains(&gamma),
        "transmissivity outside [0, 1]"
    );
    let (sin, cos) = phi.sin_cos();
    let root_g = gamma.sqrt();
    OutputQuadratures {
        mean_x1: -root_g * (a.mean_x2 * sin + b.mean_x1 * cos),
        var_x1: gamma * (a.var_x2 * sin * sin + b.var_x1 * cos * cos) + (1.0 - gamma) / 4.0,
        mean_x2: root_g * (a.mean_x1 * sin - b.mean_x2 * cos),
        var_x2: gamma * (a.var_x1 * sin * sin + b.var_x2 * cos * cos) + (1.0 - gamma) / 4.0,
    }
}
