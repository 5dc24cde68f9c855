//! Rank-1 POVMs on a single party and the conditional states they steer.
//!
//! A K-outcome rank-1 POVM on dimension `d` is a set of vectors `|m_k>` with
//! `Σ_k |m_k><m_k| = I`. Stacking them as rows gives a K×d co-isometry, which
//! is the first `d` columns of a K×K unitary (Naimark dilation). The unitary
//! is parameterized by K(K−1)/2 complex Givens rotations plus K column
//! phases, K² real angles in total, so every point of parameter space is a
//! valid POVM.

use nalgebra::{DMatrix, DVector};

use crate::entropy::{normalized_entropy_2x2, spectral_entropy, von_neumann_entropy, Bits};
use crate::error::{Error, Result};
use crate::tensor::{eig_hermitian, DensityMatrix, C64};

/// Outcomes with probability at or below this are degenerate.
pub const DEGENERATE_PROBABILITY: f64 = 1e-12;
/// Completeness tolerance `‖Σ M_k − I‖_max`.
pub const COMPLETENESS_TOL: f64 = 1e-9;

/// Rank-1 POVM `{|m_k><m_k|}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    dim: usize,
    vectors: Vec<DVector<C64>>,
}

impl Povm {
    /// Checks completeness of the given (unnormalized) vectors.
    pub fn from_vectors(dim: usize, vectors: Vec<DVector<C64>>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
        let povm = Self { dim, vectors };
        let residual = povm.completeness_residual();
        if residual.is_nan() || residual > COMPLETENESS_TOL {
            return Err(Error::InvalidState(format!(
                "POVM elements sum to identity only within {residual:e}"
            )));
        }
        Ok(povm)
    }

    /// Projective measurement in the computational basis.
    pub fn computational(dim: usize) -> Self {
        let vectors = (0..dim)
            .map(|k| {
                let mut v = DVector::zeros(dim);
                v[k] = C64::new(1.0, 0.0);
                v
            })
            .collect();
        Self { dim, vectors }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn outcomes(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[DVector<C64>] {
        &self.vectors
    }

    /// The operators `|m_k><m_k|`.
    pub fn elements(&self) -> Vec<DMatrix<C64>> {
        self.vectors.iter().map(|v| v * v.adjoint()).collect()
    }

    /// `max |Σ_k M_k − I|` entrywise.
    pub fn completeness_residual(&self) -> f64 {
        let mut sum = DMatrix::<C64>::identity(self.dim, self.dim).scale(-1.0);
        for e in self.elements() {
            sum += e;
        }
        sum.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Number of real parameters for a K-outcome POVM.
pub fn povm_param_count(outcomes: usize) -> usize {
    outcomes * outcomes
}

/// Writes the K×d co-isometry rows `conj(m_k)` for `params` into `rows`
/// (row-major, length K·d). `rows[k*d + b] = conj(<b|m_k>)`.
pub(crate) fn coisometry_into(params: &[f64], dim: usize, outcomes: usize, rows: &mut [C64]) {
    let k = outcomes;
    rows.iter_mut().for_each(|z| *z = C64::new(0.0, 0.0));
    let phases = &params[k * (k - 1)..];
    for b in 0..dim {
        rows[b * dim + b] = C64::from_polar(1.0, phases[b]);
    }
    // U = G_1 G_2 ... G_n diag(phases); apply right-to-left to the first d columns
    let mut p = k * (k - 1) / 2;
    for i in (0..k).rev() {
        for j in (i + 1..k).rev() {
            p -= 1;
            let (theta, phi) = (params[2 * p], params[2 * p + 1]);
            let (s, c) = theta.sin_cos();
            let e = C64::from_polar(1.0, phi);
            for b in 0..dim {
                let ri = rows[i * dim + b];
                let rj = rows[j * dim + b];
                rows[i * dim + b] = ri * c + e * rj * s;
                rows[j * dim + b] = rj * c - e.conj() * ri * s;
            }
        }
    }
}

/// Maps K² real angles to a K-outcome rank-1 POVM on dimension `dim`.
///
/// The zero vector gives the computational basis (padded with zero
/// operators when `K > d`).
pub fn povm_from_params(params: &[f64], dim: usize, outcomes: usize) -> Result<Povm> {
    if outcomes < dim {
        return Err(Error::TooFewOutcomes { outcomes, dim });
    }
    let expected = povm_param_count(outcomes);
    if params.len() != expected {
        return Err(Error::ParameterCount {
            expected,
            found: params.len(),
        });
    }
    let mut rows = vec![C64::new(0.0, 0.0); outcomes * dim];
    coisometry_into(params, dim, outcomes, &mut rows);
    let vectors = rows
        .chunks(dim)
        .map(|r| DVector::from_iterator(dim, r.iter().map(|z| z.conj())))
        .collect();
    Ok(Povm { dim, vectors })
}

/// One measurement outcome: its probability and the normalized state of the
/// unmeasured parties (`None` when the outcome is degenerate).
#[derive(Debug, Clone)]
pub struct MeasurementOutcome {
    pub probability: f64,
    pub state: Option<DensityMatrix>,
}

impl MeasurementOutcome {
    pub fn is_degenerate(&self) -> bool {
        self.state.is_none()
    }
}

/// Applies `povm` to party `side` and returns `(p_k, ρ_k)` for the rest.
pub fn measure_side(rho: &DensityMatrix, povm: &Povm, side: &str) -> Result<Vec<MeasurementOutcome>> {
    let layout = rho.layout();
    let side_pos = layout.position(side)?;
    let d_side = layout.dims()[side_pos];
    if povm.dim() != d_side {
        return Err(Error::DimensionMismatch {
            expected: d_side,
            found: povm.dim(),
        });
    }
    let rest: Vec<&str> = layout
        .labels()
        .iter()
        .filter(|l| l.as_str() != side)
        .map(String::as_str)
        .collect();
    if rest.is_empty() {
        return Err(Error::PartyCount { expected: 2, found: 1 });
    }
    let rest_layout = rho.partial_trace(&rest)?.layout().clone();
    let (kept, traced) = split(rho, side_pos);
    let dr = rest_layout.total_dim();
    let d = rho.dim();
    let m = rho.matrix();
    let mut outcomes = Vec::with_capacity(povm.outcomes());
    for v in povm.vectors() {
        let mut sigma = DMatrix::<C64>::zeros(dr, dr);
        for i in 0..d {
            let left = v[traced[i]].conj();
            for j in 0..d {
                sigma[(kept[i], kept[j])] += left * v[traced[j]] * m[(i, j)];
            }
        }
        let p = sigma.trace().re;
        let state =
            (p > DEGENERATE_PROBABILITY).then(|| DensityMatrix::from_parts(sigma.unscale(p), rest_layout.clone()));
        outcomes.push(MeasurementOutcome {
            probability: p.max(0.0),
            state,
        });
    }
    Ok(outcomes)
}

/// Index of every basis state inside the unmeasured parties and its digit
/// on the measured one.
fn split(rho: &DensityMatrix, side_pos: usize) -> (Vec<usize>, Vec<usize>) {
    let dims = rho.layout().dims();
    let d = rho.dim();
    let after: usize = dims[side_pos + 1..].iter().product();
    let ds = dims[side_pos];
    (0..d)
        .map(|i| {
            let low = i % after;
            let digit = (i / after) % ds;
            let high = i / (after * ds);
            (high * after + low, digit)
        })
        .unzip()
}

/// `S(ρ_rest) − Σ_k p_k S(ρ_k)` for measuring `side` with `povm`.
pub fn localizable_entropy_gain(rho: &DensityMatrix, povm: &Povm, side: &str) -> Result<Bits> {
    let outcomes = measure_side(rho, povm, side)?;
    let rest: Vec<&str> = rho
        .layout()
        .labels()
        .iter()
        .filter(|l| l.as_str() != side)
        .map(String::as_str)
        .collect();
    let s_rest = von_neumann_entropy(&rho.partial_trace(&rest)?);
    let average: f64 = outcomes
        .iter()
        .filter_map(|o| o.state.as_ref().map(|s| o.probability * von_neumann_entropy(s)))
        .sum();
    Ok(s_rest - average)
}

/// Allocation-light evaluator of the localizable entropy gain as a function
/// of POVM parameters, for repeated calls from the optimizer.
#[derive(Debug, Clone)]
pub(crate) struct GainObjective {
    d_side: usize,
    d_rest: usize,
    /// `blocks[b*d_side + b']` is the d_rest×d_rest block `<·,b|ρ|·,b'>`, row-major.
    blocks: Vec<Vec<C64>>,
    rest_entropy: f64,
}

impl GainObjective {
    pub(crate) fn new(rho: &DensityMatrix, side: &str) -> Result<Self> {
        let layout = rho.layout();
        let side_pos = layout.position(side)?;
        if layout.len() < 2 {
            return Err(Error::PartyCount {
                expected: 2,
                found: layout.len(),
            });
        }
        let d_side = layout.dims()[side_pos];
        let d = rho.dim();
        let d_rest = d / d_side;
        let (kept, traced) = split(rho, side_pos);
        let mut blocks = vec![vec![C64::new(0.0, 0.0); d_rest * d_rest]; d_side * d_side];
        let m = rho.matrix();
        for i in 0..d {
            for j in 0..d {
                blocks[traced[i] * d_side + traced[j]][kept[i] * d_rest + kept[j]] = m[(i, j)];
            }
        }
        let mut rest = DMatrix::<C64>::zeros(d_rest, d_rest);
        for b in 0..d_side {
            for (idx, z) in blocks[b * d_side + b].iter().enumerate() {
                rest[(idx / d_rest, idx % d_rest)] += z;
            }
        }
        let rest_entropy = spectral_entropy(&eig_hermitian(&rest)?.values);
        Ok(Self {
            d_side,
            d_rest,
            blocks,
            rest_entropy,
        })
    }

    pub(crate) fn d_side(&self) -> usize {
        self.d_side
    }

    pub(crate) fn rest_dim(&self) -> usize {
        self.d_rest
    }

    /// Gain for the POVM with co-isometry rows `rows` (`conj(m_k)`).
    pub(crate) fn gain_from_rows(&self, rows: &[C64], sigma: &mut [C64]) -> f64 {
        let ds = self.d_side;
        let dr = self.d_rest;
        let mut average = 0.0;
        for row in rows.chunks(ds) {
            sigma.iter_mut().for_each(|z| *z = C64::new(0.0, 0.0));
            for b in 0..ds {
                // conj(m_b) = row[b]
                for bp in 0..ds {
                    let w = row[b] * row[bp].conj();
                    if w.norm_sqr() == 0.0 {
                        continue;
                    }
                    for (s, z) in sigma.iter_mut().zip(&self.blocks[b * ds + bp]) {
                        *s += w * z;
                    }
                }
            }
            let p: f64 = (0..dr).map(|i| sigma[i * dr + i].re).sum();
            if p <= DEGENERATE_PROBABILITY {
                continue;
            }
            let s = if dr == 2 {
                normalized_entropy_2x2(sigma[0].re, sigma[3].re, sigma[1])
            } else {
                let m = DMatrix::from_row_slice(dr, dr, sigma).unscale(p);
                // numerically Hermitian by construction
                let m = (&m + m.adjoint()).unscale(2.0);
                spectral_entropy(&eig_hermitian(&m).map(|e| e.values).unwrap_or_default())
            };
            average += p * s;
        }
        self.rest_entropy - average
    }

    #[cfg(test)]
    pub(crate) fn gain(&self, params: &[f64], outcomes: usize) -> f64 {
        let mut rows = vec![C64::new(0.0, 0.0); outcomes * self.d_side];
        let mut sigma = vec![C64::new(0.0, 0.0); self.d_rest * self.d_rest];
        coisometry_into(params, self.d_side, outcomes, &mut rows);
        self.gain_from_rows(&rows, &mut sigma)
    }
}
