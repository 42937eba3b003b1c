//! Brute-force validation: the analytic moments and every specialized
//! sensitivity against the truncated-basis route and the general transfer
//! formula.

use std::fmt;

use qfog::fock::{output_quadrature_stats, FockVector, TruncationError};
use qfog::gyro::{
    sensitivity_cs, sensitivity_general, sensitivity_pacs_imag, sensitivity_pacs_vacuum,
    sensitivity_ss, GyroSetting, OutputQuadrature, Sensitivity,
};
use qfog::laguerre::laguerre;
use qfog::probes::{coherent_moments, match_cs_amplitude, match_ss_params, BModeState, PacsProbe};

use crate::config::ValidateConfig;

/// Outcome of one named check: the largest deviation seen, normalized so
/// that 1.0 sits exactly on the tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub comparisons: usize,
    pub worst_fraction_of_tol: f64,
    pub tolerance: &'static str,
    pub detail: String,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.worst_fraction_of_tol <= 1.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            writeln!(
                f,
                "{} {:<28} worst {:>10.3e} of allowance ({}) over {} comparisons{}",
                if check.passed() { "PASS" } else { "FAIL" },
                check.name,
                check.worst_fraction_of_tol,
                check.tolerance,
                check.comparisons,
                if check.detail.is_empty() {
                    String::new()
                } else {
                    format!("  [{}]", check.detail)
                }
            )?;
        }
        let passed = self.checks.iter().filter(|c| c.passed()).count();
        write!(
            f,
            "overall: {} ({passed}/{} checks)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks.len()
        )
    }
}

/// Accumulates |got - expected| against `rel * |expected| + abs`.
struct Worst {
    fraction: f64,
    comparisons: usize,
    detail: String,
}

impl Worst {
    fn new() -> Self {
        Self {
            fraction: 0.0,
            comparisons: 0,
            detail: String::new(),
        }
    }

    fn record(&mut self, got: f64, expected: f64, rel: f64, abs: f64, context: &dyn fmt::Display) {
        self.comparisons += 1;
        let allowance = rel * expected.abs() + abs;
        let fraction = (got - expected).abs() / allowance;
        if fraction > self.fraction {
            self.fraction = fraction;
            self.detail = format!("worst at {context}: got {got:.17e}, expected {expected:.17e}");
        }
    }
}

pub fn run_validation(config: &ValidateConfig) -> Result<ValidationReport, TruncationError> {
    let checks = vec![
        oracle_moments_check(config)?,
        creation_norm_check(config)?,
        specialization_check(config),
        lossless_bracket_check(),
        loss_affinity_check(),
    ];
    Ok(ValidationReport { checks })
}

/// Analytic PACS moments against the truncated-basis route.
fn oracle_moments_check(config: &ValidateConfig) -> Result<CheckResult, TruncationError> {
    let mut worst = Worst::new();
    for m in 0..=config.max_m {
        for &alpha in &config.alphas {
            let probe = PacsProbe::new(alpha, m);
            let analytic = probe.moments();
            let (state, _) = FockVector::pacs(alpha, m, config.dim)?;
            let oracle = state.moments();
            let ctx = format!("(alpha={alpha}, m={m})");
            worst.record(oracle.mean_x1, analytic.mean_x1, 1e-9, 1e-12, &ctx);
            worst.record(oracle.var_x1, analytic.var_x1, 1e-9, 1e-12, &ctx);
            worst.record(
                oracle.mean_photons,
                analytic.mean_photons,
                1e-9,
                1e-12,
                &ctx,
            );
            worst.record(oracle.mean_x2, analytic.mean_x2, 1e-9, 1e-12, &ctx);
            worst.record(oracle.var_x2, analytic.var_x2, 1e-9, 1e-12, &ctx);
        }
    }
    Ok(CheckResult {
        name: "oracle-pacs-moments",
        comparisons: worst.comparisons,
        worst_fraction_of_tol: worst.fraction,
        tolerance: "rel 1e-9, abs 1e-12",
        detail: worst.detail,
    })
}

/// Squared norm accumulated by repeated creation operators against
/// `m! L_m(-alpha^2)`.
fn creation_norm_check(config: &ValidateConfig) -> Result<CheckResult, TruncationError> {
    let mut worst = Worst::new();
    for m in 0..=config.max_m {
        for &alpha in &config.alphas {
            let (_, norm_sq) = FockVector::pacs(alpha, m, config.dim)?;
            let mut expected = laguerre(m, -alpha * alpha);
            for k in 1..=m {
                expected *= f64::from(k);
            }
            worst.record(
                norm_sq,
                expected,
                1e-10,
                0.0,
                &format!("(alpha={alpha}, m={m})"),
            );
        }
    }
    Ok(CheckResult {
        name: "creation-norm",
        comparisons: worst.comparisons,
        worst_fraction_of_tol: worst.fraction,
        tolerance: "rel 1e-10",
        detail: worst.detail,
    })
}

/// Every specialized sensitivity against the general transfer formula with
/// the matching input moments substituted.
fn specialization_check(config: &ValidateConfig) -> CheckResult {
    let mut worst = Worst::new();
    let mut divergence_mismatches = 0usize;
    let phis: Vec<f64> = (0..16)
        .map(|k| k as f64 * std::f64::consts::PI / 8.0)
        .collect();
    let gammas = [0.25, 0.5, 1.0];
    let ms: Vec<u32> = [0u32, 1, 5, 10]
        .into_iter()
        .filter(|m| *m <= config.max_m)
        .collect();
    let ys = [0.0, 1.0, 2.0];

    let mut compare = |name: &str,
                       specialized: Sensitivity,
                       general: Sensitivity,
                       worst: &mut Worst,
                       ctx: &dyn fmt::Display| {
        match (specialized, general) {
            (Sensitivity::Finite(s), Sensitivity::Finite(g)) => {
                worst.record(s, g, 1e-12, 0.0, &format!("{name} {ctx}"));
            }
            (Sensitivity::Divergent, Sensitivity::Divergent) => {}
            _ => divergence_mismatches += 1,
        }
    };

    for &phi in &phis {
        for &gamma in &gammas {
            let setting = GyroSetting::new(phi, gamma);
            for &m in &ms {
                for &alpha in &config.alphas {
                    let probe = PacsProbe::new(alpha, m);
                    let a = probe.moments();
                    let ctx = format!("(phi={phi}, gamma={gamma}, m={m}, alpha={alpha})");

                    let vac = BModeState::Vacuum.moments();
                    compare(
                        "pacs-vacuum",
                        sensitivity_pacs_vacuum(&probe, &setting).unwrap(),
                        sensitivity_general(&a, &vac, &setting, OutputQuadrature::X2).unwrap(),
                        &mut worst,
                        &ctx,
                    );

                    for &y in &ys {
                        let b = BModeState::ImagCoherent { y }.moments();
                        compare(
                            "pacs-imag",
                            sensitivity_pacs_imag(&probe, y, &setting).unwrap(),
                            sensitivity_general(&a, &b, &setting, OutputQuadrature::X2).unwrap(),
                            &mut worst,
                            &format!("{ctx} y={y}"),
                        );

                        let alpha_c = match_cs_amplitude(&probe);
                        compare(
                            "cs",
                            sensitivity_cs(alpha_c, y, &setting).unwrap(),
                            sensitivity_general(
                                &coherent_moments(alpha_c),
                                &b,
                                &setting,
                                OutputQuadrature::X2,
                            )
                            .unwrap(),
                            &mut worst,
                            &format!("{ctx} y={y}"),
                        );

                        let (alpha_c, r) = match_ss_params(y, &probe);
                        let sq = BModeState::SqueezedVacuum { r }.moments();
                        compare(
                            "ss",
                            sensitivity_ss(alpha_c, r, &setting).unwrap(),
                            sensitivity_general(
                                &coherent_moments(alpha_c),
                                &sq,
                                &setting,
                                OutputQuadrature::X2,
                            )
                            .unwrap(),
                            &mut worst,
                            &format!("{ctx} y={y}"),
                        );
                    }
                }
            }
        }
    }

    if divergence_mismatches > 0 {
        worst.fraction = f64::INFINITY;
        worst.detail = format!("{divergence_mismatches} divergence classification mismatches");
    }
    CheckResult {
        name: "specialization-consistency",
        comparisons: worst.comparisons,
        worst_fraction_of_tol: worst.fraction,
        tolerance: "rel 1e-12",
        detail: worst.detail,
    }
}

/// At unit transmissivity the output variance must equal the bare bracket of
/// input variances.
fn lossless_bracket_check() -> CheckResult {
    let mut worst = Worst::new();
    let a_states = [PacsProbe::new(1.0, 3).moments(), coherent_moments(2.0)];
    let b_states = [
        BModeState::Vacuum.moments(),
        BModeState::ImagCoherent { y: 1.5 }.moments(),
        BModeState::SqueezedVacuum { r: 0.7 }.moments(),
    ];
    for (i, a) in a_states.iter().enumerate() {
        for (j, b) in b_states.iter().enumerate() {
            for k in 0..12 {
                let phi = k as f64 * std::f64::consts::PI / 6.0;
                let out = output_quadrature_stats(a, b, phi, 1.0);
                let (sin, cos) = phi.sin_cos();
                let ctx = format!("(a#{i}, b#{j}, phi={phi})");
                worst.record(
                    out.var_x2,
                    a.var_x1 * sin * sin + b.var_x2 * cos * cos,
                    0.0,
                    1e-13,
                    &ctx,
                );
                worst.record(
                    out.var_x1,
                    a.var_x2 * sin * sin + b.var_x1 * cos * cos,
                    0.0,
                    1e-13,
                    &ctx,
                );
            }
        }
    }
    CheckResult {
        name: "lossless-bracket",
        comparisons: worst.comparisons,
        worst_fraction_of_tol: worst.fraction,
        tolerance: "abs 1e-13",
        detail: worst.detail,
    }
}

/// Output variance must be affine in the transmissivity: the midpoint of two
/// evaluations equals the evaluation at the midpoint.
fn loss_affinity_check() -> CheckResult {
    let mut worst = Worst::new();
    let a = PacsProbe::new(2.0, 1).moments();
    let b = BModeState::SqueezedVacuum { r: 0.9 }.moments();
    for k in 0..10 {
        let phi = 0.1 + k as f64 * 0.3;
        for (g0, g2) in [(0.1, 0.9), (0.2, 1.0), (0.5, 0.7)] {
            let g1 = 0.5 * (g0 + g2);
            let v0 = output_quadrature_stats(&a, &b, phi, g0).var_x2;
            let v1 = output_quadrature_stats(&a, &b, phi, g1).var_x2;
            let v2 = output_quadrature_stats(&a, &b, phi, g2).var_x2;
            worst.record(
                v1,
                0.5 * (v0 + v2),
                0.0,
                1e-13,
                &format!("(phi={phi}, gammas=({g0},{g1},{g2}))"),
            );
        }
    }
    CheckResult {
        name: "loss-affinity",
        comparisons: worst.comparisons,
        worst_fraction_of_tol: worst.fraction,
        tolerance: "abs 1e-13",
        detail: worst.detail,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::validate_config;

    #[test]
    fn default_suite_passes() {
        let config = validate_config(12, vec![0.0, 0.5, 1.0, 2.0], 128).unwrap();
        let report = run_validation(&config).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.checks.len(), 5);
    }

    #[test]
    fn undersized_basis_propagates_truncation() {
        let config = validate_config(0, vec![2.0], 8).unwrap();
        assert!(run_validation(&config).is_err());
    }

    #[test]
    fn coherent_only_suite_is_trivially_green() {
        let config = validate_config(0, vec![0.0, 1.0], 64).unwrap();
        let report = run_validation(&config).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn report_formatting_is_stable() {
        let config = validate_config(2, vec![1.0], 64).unwrap();
        let a = run_validation(&config).unwrap().to_string();
        let b = run_validation(&config).unwrap().to_string();
        assert_eq!(a, b);
        assert!(a.contains("oracle-pacs-moments"));
        assert!(a.ends_with("(5/5 checks)"));
    }
}
