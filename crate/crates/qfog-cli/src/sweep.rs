//! Grid evaluation and deterministic table rendering.
//!
//! One row per grid point, ascending in the swept variable. Grid points are
//! pure-function evaluations, so the optional rayon parallelism cannot
//! change any value or the row order; output bytes are identical for every
//! thread count. Numbers are printed with 17 significant digits, which
//! round-trips f64 exactly; the only non-numeric cells are `inf` (an exactly
//! zero signal denominator) and `indeterminate` (both compared signals
//! exactly zero).

use rayon::prelude::*;

use qfog::gyro::{
    ratio_pacs_cs, ratio_pacs_ss, sensitivity_cs, sensitivity_pacs_imag, sensitivity_ss,
    GyroSetting, RatioValue, Sensitivity,
};
use qfog::probes::PacsProbe;

use crate::config::{grid_value, FixedParams, Mode, OutputFormat, SweepConfig, SweepVar};

/// A single table cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Number(f64),
    Inf,
    Indeterminate,
}

impl Cell {
    fn from_sensitivity(s: Sensitivity) -> Self {
        match s {
            Sensitivity::Finite(v) => Cell::Number(v),
            Sensitivity::Divergent => Cell::Inf,
        }
    }

    fn from_ratio(r: RatioValue) -> Self {
        match r {
            RatioValue::Finite(v) => Cell::Number(v),
            RatioValue::Divergent => Cell::Inf,
            RatioValue::Indeterminate => Cell::Indeterminate,
        }
    }

    pub fn render(&self) -> String {
        match self {
            Cell::Number(v) => format_f64(*v),
            Cell::Inf => "inf".to_string(),
            Cell::Indeterminate => "indeterminate".to_string(),
        }
    }

    pub fn as_number(&self) -> Option<f64> {
        match self {
            Cell::Number(v) => Some(*v),
            _ => None,
        }
    }
}

/// 17 significant digits: exact f64 round-trip.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone)]
pub struct SweepTable {
    pub config: SweepConfig,
    pub rows: Vec<(f64, Cell)>,
}

/// Evaluates the configured sweep. Values depend only on the config, never
/// on thread scheduling.
pub fn run_sweep(config: &SweepConfig) -> SweepTable {
    let eval = |k: usize| {
        let v = grid_value(config.from, config.to, config.steps, k);
        (v, eval_point(config.mode, config.var, &config.fixed, v))
    };
    let rows: Vec<(f64, Cell)> = match config.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("worker pool")
            .install(|| (0..config.steps).into_par_iter().map(eval).collect()),
        None => (0..config.steps).into_par_iter().map(eval).collect(),
    };
    SweepTable {
        config: config.clone(),
        rows,
    }
}

fn eval_point(mode: Mode, var: SweepVar, fixed: &FixedParams, value: f64) -> Cell {
    let mut p = *fixed;
    match var {
        SweepVar::Phi => p.phi = value,
        SweepVar::Gamma => p.gamma = value,
        SweepVar::M => p.m = value.round() as u32,
        SweepVar::Alpha => p.alpha = value,
        SweepVar::Y => p.y = value,
    }
    let setting = GyroSetting::new(p.phi, p.gamma);
    // gamma = 0 is screened out by config validation
    match mode {
        Mode::PacsSensitivity => Cell::from_sensitivity(
            sensitivity_pacs_imag(&PacsProbe::new(p.alpha, p.m), p.y, &setting)
                .expect("transmissivity validated nonzero"),
        ),
        Mode::CsSensitivity => Cell::from_sensitivity(
            sensitivity_cs(p.alpha, p.y, &setting).expect("transmissivity validated nonzero"),
        ),
        Mode::SsSensitivity => Cell::from_sensitivity(
            sensitivity_ss(p.alpha, p.y.asinh(), &setting)
                .expect("transmissivity validated nonzero"),
        ),
        Mode::RatioCs => Cell::from_ratio(
            ratio_pacs_cs(&PacsProbe::new(p.alpha, p.m), p.y, &setting)
                .expect("transmissivity validated nonzero")
                .value,
        ),
        Mode::RatioSs => Cell::from_ratio(
            ratio_pacs_ss(&PacsProbe::new(p.alpha, p.m), p.y, &setting)
                .expect("transmissivity validated nonzero")
                .value,
        ),
    }
}

impl SweepTable {
    /// Column names: swept variable, result, then the fixed parameters that
    /// apply to this mode.
    pub fn header(&self) -> Vec<&'static str> {
        let mut columns = vec![self.config.var.name(), self.config.mode.result_column()];
        for fixed in ["m", "alpha", "y", "gamma", "phi"] {
            if fixed == self.config.var.name() {
                continue;
            }
            if fixed == "m" && !self.config.mode.uses_m() {
                continue;
            }
            columns.push(fixed);
        }
        columns
    }

    fn fixed_cell(&self, name: &str) -> String {
        let f = &self.config.fixed;
        match name {
            "m" => f.m.to_string(),
            "alpha" => format_f64(f.alpha),
            "y" => format_f64(f.y),
            "gamma" => format_f64(f.gamma),
            "phi" => format_f64(f.phi),
            other => unreachable!("unknown fixed column {other}"),
        }
    }

    fn sweep_cell(&self, value: f64) -> String {
        if self.config.var == SweepVar::M {
            format!("{}", value.round() as u32)
        } else {
            format_f64(value)
        }
    }

    /// Comma-separated table: header row, LF endings, no trailing separator.
    pub fn render_csv(&self) -> String {
        let header = self.header();
        let mut out = String::new();
        out.push_str(&header.join(","));
        out.push('\n');
        for (value, cell) in &self.rows {
            let mut fields = vec![self.sweep_cell(*value), cell.render()];
            for name in &header[2..] {
                fields.push(self.fixed_cell(name));
            }
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    /// JSON array of row objects with the same fields as the CSV columns.
    /// `inf` and `indeterminate` become strings; everything else is numeric.
    pub fn render_json(&self) -> String {
        let header = self.header();
        let mut out = String::from("[\n");
        for (i, (value, cell)) in self.rows.iter().enumerate() {
            let mut fields = vec![
                format!("\"{}\": {}", header[0], self.sweep_cell(*value)),
                match cell {
                    Cell::Number(v) => format!("\"{}\": {}", header[1], format_f64(*v)),
                    Cell::Inf => format!("\"{}\": \"inf\"", header[1]),
                    Cell::Indeterminate => format!("\"{}\": \"indeterminate\"", header[1]),
                },
            ];
            for name in &header[2..] {
                fields.push(format!("\"{name}\": {}", self.fixed_cell(name)));
            }
            out.push_str("  {");
            out.push_str(&fields.join(", "));
            out.push('}');
            if i + 1 < self.rows.len() {
                out.push(',');
            }
            out.push('\n');
        }
        out.push_str("]\n");
        out
    }

    pub fn render(&self) -> String {
        match self.config.format {
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Json => self.render_json(),
        }
    }
}
