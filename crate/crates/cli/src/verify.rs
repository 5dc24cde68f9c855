//! Batches of Haar-random states checked against the identity suite.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use udiscord::optimize::{OptConfig, OutcomePolicy};
use udiscord::polygamy::{identity_report, quad_report, Identity, Residual};
use udiscord::rng::derive_seed;
use udiscord::{haar_random_pure, DensityMatrix, SubsystemLayout};

use crate::CliError;

/// POVM outcome counts used by a verification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PovmPolicy {
    Single(OutcomePolicy),
    /// Run projective (`K = d`) and squared (`K = d²`) searches; the squared
    /// run is graded and the differences are logged.
    Dual,
}

impl PovmPolicy {
    fn primary(self) -> OutcomePolicy {
        match self {
            PovmPolicy::Single(p) => p,
            PovmPolicy::Dual => OutcomePolicy::Squared,
        }
    }
}

impl FromStr for PovmPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "default" => Ok(PovmPolicy::Single(OutcomePolicy::Default)),
            "d" => Ok(PovmPolicy::Single(OutcomePolicy::Projective)),
            "d2" => Ok(PovmPolicy::Single(OutcomePolicy::Squared)),
            "dual" => Ok(PovmPolicy::Dual),
            _ => match s.parse::<usize>() {
                Ok(k) if k > 0 => Ok(PovmPolicy::Single(OutcomePolicy::Fixed(k))),
                _ => Err(format!(
                    "POVM policy must be default, d, d2, dual or a positive count, got `{s}`"
                )),
            },
        }
    }
}

pub fn parse_dims(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|f| match f.trim().parse::<usize>() {
            Ok(d) if d >= 2 => Ok(d),
            _ => Err(format!("bad dimension `{f}` in `{s}` (each must be an integer ≥ 2)")),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub states: usize,
    pub dims: Vec<usize>,
    pub seed: u64,
    pub tol_exact: f64,
    pub tol_opt: f64,
    pub policy: PovmPolicy,
    pub opt: OptConfig,
}

impl VerifyConfig {
    pub fn new(states: usize, dims: Vec<usize>, seed: u64) -> Self {
        Self {
            states,
            dims,
            seed,
            tol_exact: 1e-9,
            tol_opt: 1e-3,
            policy: PovmPolicy::Single(OutcomePolicy::Default),
            opt: OptConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.states == 0 {
            return Err(CliError::Config("--states must be positive".into()));
        }
        if !matches!(self.dims.len(), 3 | 4) {
            return Err(CliError::Config(format!(
                "--dims needs three or four parties, got {}",
                self.dims.len()
            )));
        }
        if self.dims.iter().any(|&d| d < 2) {
            return Err(CliError::Config("party dimensions must be at least 2".into()));
        }
        if [self.tol_exact, self.tol_opt].iter().any(|t| t.is_nan() || *t <= 0.0) {
            return Err(CliError::Config("tolerances must be positive".into()));
        }
        self.opt.validate().map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn tolerance(&self, identity: Identity) -> f64 {
        if identity.is_exact() {
            self.tol_exact
        } else {
            self.tol_opt
        }
    }
}

/// Residuals for one random state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateResult {
    pub seed: u64,
    pub residuals: Vec<Residual>,
    /// Residuals from the projective run under [`PovmPolicy::Dual`].
    pub projective: Option<Vec<Residual>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOutcome {
    pub states: Vec<StateResult>,
    pub report: String,
    pub violations: usize,
}

fn residuals_for(psi: &DensityMatrix, opt: &OptConfig) -> udiscord::Result<Vec<Residual>> {
    if psi.layout().len() == 3 {
        Ok(identity_report(psi, opt)?.residuals)
    } else {
        Ok(quad_report(psi, opt)?.residuals)
    }
}

/// State `i` is drawn with seed `derive_seed(seed, i)`, which also seeds its
/// optimizer runs.
pub fn state_seed(cfg: &VerifyConfig, i: usize) -> u64 {
    derive_seed(cfg.seed, i as u64)
}

pub fn run_verify(cfg: &VerifyConfig) -> Result<VerifyOutcome, CliError> {
    cfg.validate()?;
    let layout = SubsystemLayout::lettered(&cfg.dims).map_err(|e| CliError::Config(e.to_string()))?;
    let states = (0..cfg.states)
        .into_par_iter()
        .map(|i| {
            let seed = state_seed(cfg, i);
            let psi = haar_random_pure(&layout, seed).density();
            let opt = cfg.opt.with_seed(seed);
            let numerical = |e: udiscord::Error| CliError::Numerical(format!("state {seed}: {e}"));
            let residuals = residuals_for(&psi, &opt.with_outcomes(cfg.policy.primary())).map_err(numerical)?;
            let projective = match cfg.policy {
                PovmPolicy::Dual => {
                    Some(residuals_for(&psi, &opt.with_outcomes(OutcomePolicy::Projective)).map_err(numerical)?)
                }
                PovmPolicy::Single(_) => None,
            };
            Ok(StateResult {
                seed,
                residuals,
                projective,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(summarize(cfg, states))
}

fn summarize(cfg: &VerifyConfig, states: Vec<StateResult>) -> VerifyOutcome {
    let mut report = String::new();
    let mut max: BTreeMap<Identity, f64> = BTreeMap::new();
    let mut k_gap: BTreeMap<Identity, f64> = BTreeMap::new();
    let mut violations = 0usize;
    for state in &states {
        for r in &state.residuals {
            let _ = writeln!(report, "{}\t{}\t{:.6e}", state.seed, r.identity, r.value);
            let m = max.entry(r.identity).or_insert(0.0);
            *m = m.max(r.value);
            if r.value.is_nan() || r.value > cfg.tolerance(r.identity) {
                violations += 1;
            }
        }
        if let Some(proj) = &state.projective {
            for (a, b) in state.residuals.iter().zip(proj) {
                let g = k_gap.entry(a.identity).or_insert(0.0);
                *g = g.max((a.value - b.value).abs());
            }
        }
    }
    let _ = writeln!(report, "# states\t{}", states.len());
    for (identity, value) in &max {
        let tol = cfg.tolerance(*identity);
        let verdict = if *value <= tol { "ok" } else { "FAIL" };
        let _ = writeln!(report, "# max\t{identity}\t{value:.6e}\ttol={tol:e}\t{verdict}");
    }
    for (identity, gap) in &k_gap {
        let _ = writeln!(report, "# k_discrepancy\t{identity}\t{gap:.6e}");
    }
    let _ = writeln!(report, "# violations\t{violations}");
    VerifyOutcome {
        states,
        report,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn policy_parsing() {
        assert_eq!("dual".parse::<PovmPolicy>().unwrap(), PovmPolicy::Dual);
        assert_eq!(
            "d".parse::<PovmPolicy>().unwrap(),
            PovmPolicy::Single(OutcomePolicy::Projective)
        );
        assert_eq!(
            "3".parse::<PovmPolicy>().unwrap(),
            PovmPolicy::Single(OutcomePolicy::Fixed(3))
        );
        assert!("0".parse::<PovmPolicy>().is_err());
        assert!("d3".parse::<PovmPolicy>().is_err());
    }

    #[test]
    fn dims_parsing() {
        assert_eq!(parse_dims("2,2,2").unwrap(), vec![2, 2, 2]);
        assert_eq!(parse_dims("2, 3,2").unwrap(), vec![2, 3, 2]);
        assert!(parse_dims("2,,2").is_err());
        assert!(parse_dims("2,1,2").is_err());
    }

    #[test]
    fn zero_states_is_a_config_error() {
        let cfg = VerifyConfig::new(0, vec![2, 2, 2], 7);
        assert!(matches!(run_verify(&cfg), Err(CliError::Config(_))));
        let cfg = VerifyConfig::new(2, vec![2, 2], 7);
        assert!(matches!(run_verify(&cfg), Err(CliError::Config(_))));
    }

    #[test]
    fn small_batch_passes() {
        let mut cfg = VerifyConfig::new(2, vec![2, 2, 2], 7);
        cfg.opt.restarts = 8;
        cfg.policy = PovmPolicy::Dual;
        let out = run_verify(&cfg).unwrap();
        assert_eq!(out.violations, 0, "{}", out.report);
        assert_eq!(out.states.len(), 2);
        assert!(out.report.contains("# k_discrepancy\tkoashi_winter\t"));
        let lines = out.report.lines().filter(|l| !l.starts_with('#')).count();
        assert_eq!(lines, 2 * Identity::TRIPARTITE.len());
    }
}
