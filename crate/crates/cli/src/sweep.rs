//! θ-sweeps over a state family, written as CSV.

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use udiscord::families::{build, check_theta, CustomState, Family, FamilySpec};
use udiscord::optimize::OptConfig;

use crate::format::fixed_sig;
use crate::quantity::Quantity;
use crate::CliError;

pub const X_COLUMN: &str = "two_theta_over_pi";

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub family: Family,
    pub custom: Option<CustomState>,
    pub quantities: Vec<Quantity>,
    pub theta_start: f64,
    pub theta_end: f64,
    pub steps: usize,
    pub opt: OptConfig,
}

impl SweepConfig {
    /// Full `[0, π/2]` grid for one quantity on its default family.
    pub fn figure(quantity: Quantity, steps: usize) -> Self {
        Self {
            family: quantity.default_family(),
            custom: None,
            quantities: vec![quantity],
            theta_start: 0.0,
            theta_end: FRAC_PI_2,
            steps,
            opt: OptConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let config = |m: String| Err(CliError::Config(m));
        if self.steps < 2 {
            return config(format!("--steps must be at least 2, got {}", self.steps));
        }
        if self.quantities.is_empty() {
            return config("at least one quantity is required".into());
        }
        for t in [self.theta_start, self.theta_end] {
            check_theta(t).map_err(|e| CliError::Config(e.to_string()))?;
        }
        if self.theta_start > self.theta_end {
            return config("--theta-start exceeds --theta-end".into());
        }
        let parties = match (self.family, &self.custom) {
            (Family::Custom, Some(c)) => c.dims.len(),
            (Family::Custom, None) => return config("custom family needs --state-file".into()),
            (Family::Ghz4, _) => 4,
            _ => 3,
        };
        for q in &self.quantities {
            if q.parties() != parties {
                return config(format!(
                    "quantity `{q}` needs a {}-party state but family `{}` has {parties}",
                    q.parties(),
                    self.family
                ));
            }
        }
        self.opt.validate().map_err(|e| CliError::Config(e.to_string()))
    }

    /// Grid point `i`; the last point is exactly `theta_end`.
    pub fn theta(&self, i: usize) -> f64 {
        if i + 1 == self.steps {
            self.theta_end
        } else {
            self.theta_start + (self.theta_end - self.theta_start) * i as f64 / (self.steps - 1) as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub theta: f64,
    pub values: Vec<f64>,
}

impl SweepRow {
    pub fn x(&self) -> f64 {
        2.0 * self.theta / PI
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub quantities: Vec<Quantity>,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(X_COLUMN);
        for q in &self.quantities {
            out.push(',');
            out.push_str(&q.to_string());
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(&fixed_sig(row.x()));
            for v in &row.values {
                out.push(',');
                out.push_str(&fixed_sig(*v));
            }
            out.push('\n');
        }
        out
    }

    /// Values of the `k`-th quantity in grid order.
    pub fn column(&self, k: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r.values[k]).collect()
    }
}

/// Evaluates every grid point independently, in parallel, and returns the
/// rows in grid order. Each point uses the same optimizer seed, so shared
/// grid points agree across step counts.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepTable, CliError> {
    cfg.validate()?;
    let rows = (0..cfg.steps)
        .into_par_iter()
        .map(|i| {
            let theta = cfg.theta(i);
            let spec = FamilySpec {
                family: cfg.family,
                theta,
                custom: cfg.custom.clone(),
            };
            let psi = build(&spec).map_err(|e| CliError::Config(e.to_string()))?.density();
            let values = cfg
                .quantities
                .iter()
                .map(|q| {
                    q.evaluate(&psi, &cfg.opt)
                        .map_err(|e| CliError::Numerical(format!("{q} at theta = {theta}: {e}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
                return Err(CliError::Numerical(format!(
                    "{} at theta = {theta} is not finite",
                    cfg.quantities[bad]
                )));
            }
            Ok(SweepRow { theta, values })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SweepTable {
        quantities: cfg.quantities.clone(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_hits_both_ends() {
        let cfg = SweepConfig::figure(Quantity::Fig2b, 101);
        assert_eq!(cfg.theta(0), 0.0);
        assert_eq!(cfg.theta(100), FRAC_PI_2);
        assert!((cfg.theta(50) - FRAC_PI_2 / 2.0).abs() < 1e-15);
    }

    #[test]
    fn validation_errors() {
        let mut cfg = SweepConfig::figure(Quantity::Fig1b, 1);
        assert!(matches!(cfg.validate(), Err(CliError::Config(_))));
        cfg.steps = 3;
        cfg.theta_end = 2.0;
        assert!(cfg.validate().is_err());
        cfg.theta_end = FRAC_PI_2;
        cfg.family = Family::Ghz4;
        assert!(cfg.validate().is_err());
        cfg.family = Family::Custom;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn fig1b_csv_layout() {
        let table = run_sweep(&SweepConfig::figure(Quantity::Fig1b, 3)).unwrap();
        assert_eq!(
            table.to_csv(),
            "two_theta_over_pi,fig1b\n0.00000000000,1.00000000000\n0.500000000000,0.00000000000\n1.00000000000,-1.00000000000\n"
        );
    }
}
