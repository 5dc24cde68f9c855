//! Deterministic multi-start Nelder–Mead over POVM parameters.
//!
//! Restart 0 always starts at the zero vector (computational basis); restart
//! `r > 0` draws uniform angles from the ChaCha stream `r` of the configured
//! seed. Restarts run in parallel and are reduced by (best value, lowest
//! restart index), so the result does not depend on the thread count.

use rand::Rng;
use rayon::prelude::*;

use crate::entropy::Bits;
use crate::error::{Error, Result};
use crate::measurement::{coisometry_into, povm_param_count, GainObjective};
use crate::rng;
use crate::tensor::{DensityMatrix, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

impl Sense {
    /// True when `a` is strictly better than `b`.
    fn better(self, a: f64, b: f64) -> bool {
        match self {
            Sense::Maximize => a > b,
            Sense::Minimize => a < b,
        }
    }
}

/// How many POVM outcomes K to use on a space of dimension `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutcomePolicy {
    /// `K = d` for measurements on a party, `K = d²` on a purifying ancilla.
    #[default]
    Default,
    /// `K = d` everywhere.
    Projective,
    /// `K = d²` everywhere.
    Squared,
    /// A fixed count, raised to `d` where it would be too small.
    Fixed(usize),
}

impl OutcomePolicy {
    pub fn for_party(self, d: usize) -> usize {
        match self {
            OutcomePolicy::Default | OutcomePolicy::Projective => d,
            OutcomePolicy::Squared => d * d,
            OutcomePolicy::Fixed(k) => k.max(d),
        }
    }

    pub fn for_purifier(self, rank: usize) -> usize {
        match self {
            OutcomePolicy::Projective => rank,
            OutcomePolicy::Default | OutcomePolicy::Squared => rank * rank,
            OutcomePolicy::Fixed(k) => k.max(rank),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptConfig {
    pub restarts: usize,
    pub seed: u64,
    /// Nelder–Mead iterations per restart.
    pub max_iterations: usize,
    /// Objective spread across the simplex at which a restart stops.
    pub tolerance: f64,
    pub outcomes: OutcomePolicy,
}

impl Default for OptConfig {
    fn default() -> Self {
        Self {
            restarts: 32,
            seed: 0,
            max_iterations: 500,
            tolerance: 1e-10,
            outcomes: OutcomePolicy::Default,
        }
    }
}

impl OptConfig {
    pub fn with_outcomes(&self, outcomes: OutcomePolicy) -> Self {
        Self {
            outcomes,
            ..self.clone()
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidState("at least one restart is required".into()));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(Error::InvalidState(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidState("max iterations must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptResult {
    pub value: Bits,
    pub params: Vec<f64>,
    pub outcomes: usize,
    /// Index of the restart that produced `value`.
    pub best_restart: usize,
    pub restarts_converged: usize,
    /// Distance between the best and second-best restart optima
    /// (`None` with a single restart).
    pub gap: Option<f64>,
    pub evaluations: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct LocalSearch {
    pub x: Vec<f64>,
    pub fx: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// Initial simplex edge (radians).
const INITIAL_STEP: f64 = 0.4;

/// Adaptive Nelder–Mead minimizer (dimension-dependent coefficients).
///
/// Stops when the spread of objective values over the simplex falls below
/// `tol`, then rebuilds a smaller simplex around the best vertex; the search
/// ends once a rebuilt simplex yields no improvement above `tol` or the
/// iteration budget is spent.
pub(crate) fn nelder_mead<F>(mut f: F, x0: &[f64], max_iter: usize, tol: f64) -> LocalSearch
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    let mut evaluations = 0usize;
    let mut eval = |x: &[f64], count: &mut usize| {
        *count += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    if n == 0 {
        let fx = eval(x0, &mut evaluations);
        return LocalSearch {
            x: Vec::new(),
            fx,
            evaluations,
            converged: true,
        };
    }
    let nf = n as f64;
    let (alpha, gamma, rho, sigma) = (1.0, 1.0 + 2.0 / nf, 0.75 - 0.5 / nf, 1.0 - 1.0 / nf);

    let build = |center: &[f64], step: f64, count: &mut usize, eval: &mut dyn FnMut(&[f64], &mut usize) -> f64| {
        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
        let fc = eval(center, count);
        simplex.push((center.to_vec(), fc));
        for i in 0..n {
            let mut x = center.to_vec();
            x[i] += step;
            let fx = eval(&x, count);
            simplex.push((x, fx));
        }
        simplex
    };

    let mut step = INITIAL_STEP;
    let mut simplex = build(x0, step, &mut evaluations, &mut eval);
    let mut anchor = simplex[0].1;
    let mut converged = false;
    let mut centroid = vec![0.0; n];
    let mut trial = vec![0.0; n];
    let mut trial2 = vec![0.0; n];

    for _ in 0..max_iter {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[n].1 - simplex[0].1;
        if spread <= tol {
            let best = simplex[0].1;
            if anchor - best <= tol && step < INITIAL_STEP {
                converged = true;
                break;
            }
            // rebuild around the best vertex and keep going
            anchor = best;
            step = (step * 0.25).max(1e-4);
            let center = simplex[0].0.clone();
            simplex = build(&center, step, &mut evaluations, &mut eval);
            continue;
        }

        centroid.iter_mut().for_each(|c| *c = 0.0);
        for (x, _) in &simplex[..n] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / nf;
            }
        }
        let worst = simplex[n].0.clone();
        let (f_best, f_second_worst, f_worst) = (simplex[0].1, simplex[n - 1].1, simplex[n].1);

        for i in 0..n {
            trial[i] = centroid[i] + alpha * (centroid[i] - worst[i]);
        }
        let f_reflect = eval(&trial, &mut evaluations);

        if f_reflect < f_best {
            for i in 0..n {
                trial2[i] = centroid[i] + gamma * (trial[i] - centroid[i]);
            }
            let f_expand = eval(&trial2, &mut evaluations);
            simplex[n] = if f_expand < f_reflect {
                (trial2.clone(), f_expand)
            } else {
                (trial.clone(), f_reflect)
            };
        } else if f_reflect < f_second_worst {
            simplex[n] = (trial.clone(), f_reflect);
        } else {
            let outside = f_reflect < f_worst;
            for i in 0..n {
                trial2[i] = if outside {
                    centroid[i] + rho * (trial[i] - centroid[i])
                } else {
                    centroid[i] - rho * (centroid[i] - worst[i])
                };
            }
            let f_contract = eval(&trial2, &mut evaluations);
            if f_contract < f_reflect.min(f_worst) {
                simplex[n] = (trial2.clone(), f_contract);
            } else {
                let best = simplex[0].0.clone();
                for (x, fx) in simplex.iter_mut().skip(1) {
                    for (xi, bi) in x.iter_mut().zip(&best) {
                        *xi = bi + sigma * (*xi - bi);
                    }
                    *fx = eval(x, &mut evaluations);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, fx) = simplex.swap_remove(0);
    LocalSearch {
        x,
        fx,
        evaluations,
        converged,
    }
}

/// Starting point of restart `index`.
pub(crate) fn start_point(dim: usize, seed: u64, index: usize) -> Vec<f64> {
    if index == 0 {
        return vec![0.0; dim];
    }
    let mut rng = rng::stream(seed, index as u64);
    (0..dim)
        .map(|_| rng.random_range(-std::f64::consts::PI..std::f64::consts::PI))
        .collect()
}

/// Multi-start optimization of `objective` over `dim` real parameters.
pub fn multistart<F>(dim: usize, objective: F, sense: Sense, cfg: &OptConfig) -> Result<OptResult>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    cfg.validate()?;
    let sign = match sense {
        Sense::Maximize => -1.0,
        Sense::Minimize => 1.0,
    };
    let runs: Vec<LocalSearch> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let x0 = start_point(dim, cfg.seed, r);
            let mut local = nelder_mead(|x| sign * objective(x), &x0, cfg.max_iterations, cfg.tolerance);
            local.fx *= sign;
            local
        })
        .collect();

    let mut best = 0;
    for (i, run) in runs.iter().enumerate().skip(1) {
        if sense.better(run.fx, runs[best].fx) {
            best = i;
        }
    }
    let gap = runs
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != best)
        .map(|(_, r)| (runs[best].fx - r.fx).abs())
        .min_by(f64::total_cmp);
    Ok(OptResult {
        value: runs[best].fx,
        params: runs[best].x.clone(),
        outcomes: 0,
        best_restart: best,
        restarts_converged: runs.iter().filter(|r| r.converged).count(),
        gap,
        evaluations: runs.iter().map(|r| r.evaluations).sum(),
    })
}

/// Extremizes the localizable entropy gain `S(ρ_rest) − Σ p_k S(ρ_k)` over
/// rank-1 POVMs on `side`.
pub fn optimize_measurement(rho: &DensityMatrix, side: &str, sense: Sense, cfg: &OptConfig) -> Result<OptResult> {
    let objective = GainObjective::new(rho, side)?;
    let d = objective.d_side();
    let outcomes = cfg.outcomes.for_party(d);
    let f = |params: &[f64]| {
        let mut rows = vec![C64::new(0.0, 0.0); outcomes * d];
        let mut sigma = vec![C64::new(0.0, 0.0); objective.rest_dim() * objective.rest_dim()];
        coisometry_into(params, d, outcomes, &mut rows);
        objective.gain_from_rows(&rows, &mut sigma)
    };
    let mut result = multistart(povm_param_count(outcomes), f, sense, cfg)?;
    result.outcomes = outcomes;
    Ok(result)
}
