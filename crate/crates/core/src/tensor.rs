//! Dense states on labeled tensor-product spaces.
//!
//! Basis indices follow Kronecker order: the first party in a layout is the
//! most significant digit, so `|abc>` on three qubits sits at `4a + 2b + c`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::rng;

pub type C64 = Complex64;

/// Tolerance on the Euclidean norm of a state vector.
pub const NORM_TOL: f64 = 1e-10;
/// Tolerance on Hermiticity and unit trace of a density matrix.
pub const DENSITY_TOL: f64 = 1e-10;
/// Most negative eigenvalue accepted in a density matrix.
pub const MIN_EIGENVALUE: f64 = -1e-9;
/// Hermiticity tolerance accepted by [`eig_hermitian`].
pub const EIG_HERMITIAN_TOL: f64 = 1e-8;
/// Eigenvalues at or below this are dropped when purifying.
pub const RANK_CUTOFF: f64 = 1e-12;

/// Ordered party labels with their local dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubsystemLayout {
    labels: Vec<String>,
    dims: Vec<usize>,
}

impl SubsystemLayout {
    pub fn new<S, L, D>(labels: L, dims: D) -> Result<Self>
    where
        S: Into<String>,
        L: IntoIterator<Item = S>,
        D: IntoIterator<Item = usize>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let dims: Vec<usize> = dims.into_iter().collect();
        if labels.len() != dims.len() {
            return Err(Error::InvalidLayout(format!(
                "{} labels but {} dimensions",
                labels.len(),
                dims.len()
            )));
        }
        if labels.is_empty() {
            return Err(Error::EmptyPartySet);
        }
        if let Some(&d) = dims.iter().find(|&&d| d == 0) {
            return Err(Error::InvalidLayout(format!("local dimension {d}")));
        }
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() {
                return Err(Error::InvalidLayout("empty label".into()));
            }
            if labels[..i].contains(label) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Self { labels, dims })
    }

    /// Qubit layout with the given labels.
    pub fn qubits(labels: &[&str]) -> Result<Self> {
        Self::new(labels.iter().copied(), labels.iter().map(|_| 2))
    }

    /// Single-letter labels `A`, `B`, ... for the given dimensions.
    pub fn lettered(dims: &[usize]) -> Result<Self> {
        if dims.len() > 26 {
            return Err(Error::InvalidLayout("more than 26 parties".into()));
        }
        let labels = (0..dims.len()).map(|i| char::from(b'A' + i as u8).to_string());
        Self::new(labels, dims.iter().copied())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.labels.iter().any(|l| l == label)
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn dim_of(&self, label: &str) -> Result<usize> {
        Ok(self.dims[self.position(label)?])
    }

    /// Concatenation `self ⊗ other`.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        Self::new(
            self.labels.iter().chain(&other.labels).cloned(),
            self.dims.iter().chain(&other.dims).copied(),
        )
    }

    /// Sorted positions of `labels`, rejecting unknown, repeated or empty sets.
    pub(crate) fn positions(&self, labels: &[&str]) -> Result<Vec<usize>> {
        if labels.is_empty() {
            return Err(Error::EmptyPartySet);
        }
        let mut pos = Vec::with_capacity(labels.len());
        for label in labels {
            let p = self.position(label)?;
            if pos.contains(&p) {
                return Err(Error::DuplicateLabel(label.to_string()));
            }
            pos.push(p);
        }
        pos.sort_unstable();
        Ok(pos)
    }

    fn select(&self, positions: &[usize]) -> Self {
        Self {
            labels: positions.iter().map(|&p| self.labels[p].clone()).collect(),
            dims: positions.iter().map(|&p| self.dims[p]).collect(),
        }
    }

    /// A label not present in the layout, used for purifying ancillas.
    pub(crate) fn fresh_label(&self, stem: &str) -> String {
        let mut label = stem.to_string();
        while self.contains(&label) {
            label.push('\'');
        }
        label
    }

    /// For every basis index, its index inside the kept parties and inside
    /// the complement.
    fn split_indices(&self, keep: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let total = self.total_dim();
        let mut kept = vec![0usize; total];
        let mut traced = vec![0usize; total];
        for (i, (k, t)) in kept.iter_mut().zip(traced.iter_mut()).enumerate() {
            let mut rest = i;
            let (mut ks, mut ts) = (1usize, 1usize);
            for p in (0..self.len()).rev() {
                let d = self.dims[p];
                let digit = rest % d;
                rest /= d;
                if keep.contains(&p) {
                    *k += digit * ks;
                    ks *= d;
                } else {
                    *t += digit * ts;
                    ts *= d;
                }
            }
        }
        (kept, traced)
    }
}

/// Normalized pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: DVector<C64>,
    layout: SubsystemLayout,
}

impl StateVector {
    /// Wraps amplitudes that must already have unit norm.
    pub fn new(amplitudes: DVector<C64>, layout: SubsystemLayout) -> Result<Self> {
        check_dim(layout.total_dim(), amplitudes.len())?;
        let norm = amplitudes.norm();
        if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!("norm {norm} is not 1")));
        }
        Ok(Self { amplitudes, layout })
    }

    /// Normalizes `amplitudes` before wrapping.
    pub fn normalized(amplitudes: DVector<C64>, layout: SubsystemLayout) -> Result<Self> {
        check_dim(layout.total_dim(), amplitudes.len())?;
        let norm = amplitudes.norm();
        if !norm.is_finite() || norm < 1e-300 {
            return Err(Error::InvalidState("zero or non-finite amplitude vector".into()));
        }
        Ok(Self {
            amplitudes: amplitudes.unscale(norm),
            layout,
        })
    }

    /// Computational basis state `|index>`.
    pub fn basis(layout: SubsystemLayout, index: usize) -> Result<Self> {
        let dim = layout.total_dim();
        if index >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: index,
            });
        }
        let mut amplitudes = DVector::zeros(dim);
        amplitudes[index] = C64::new(1.0, 0.0);
        Ok(Self { amplitudes, layout })
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn layout(&self) -> &SubsystemLayout {
        &self.layout
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let layout = self.layout.concat(&other.layout)?;
        Ok(Self {
            amplitudes: self.amplitudes.kronecker(&other.amplitudes),
            layout,
        })
    }

    /// `|ψ><ψ|`.
    pub fn density(&self) -> DensityMatrix {
        DensityMatrix {
            entries: &self.amplitudes * self.amplitudes.adjoint(),
            layout: self.layout.clone(),
        }
    }

    /// Reduced state on `keep`, computed from the amplitude matrix without
    /// forming the full outer product.
    pub fn reduced(&self, keep: &[&str]) -> Result<DensityMatrix> {
        let pos = self.layout.positions(keep)?;
        let sub = self.layout.select(&pos);
        let dk = sub.total_dim();
        let dt = self.layout.total_dim() / dk;
        let (kept, traced) = self.layout.split_indices(&pos);
        let mut psi = DMatrix::<C64>::zeros(dk, dt);
        for (i, a) in self.amplitudes.iter().enumerate() {
            psi[(kept[i], traced[i])] = *a;
        }
        Ok(DensityMatrix {
            entries: &psi * psi.adjoint(),
            layout: sub,
        })
    }
}

/// Hermitian, positive semidefinite, unit-trace operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: DMatrix<C64>,
    layout: SubsystemLayout,
}

impl DensityMatrix {
    /// Validates Hermiticity, trace and positivity.
    pub fn new(entries: DMatrix<C64>, layout: SubsystemLayout) -> Result<Self> {
        let dim = layout.total_dim();
        if entries.nrows() != dim || entries.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: entries.nrows().max(entries.ncols()),
            });
        }
        let deviation = hermitian_deviation(&entries);
        if deviation.is_nan() || deviation > DENSITY_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = entries.trace();
        if (trace.re - 1.0).abs() > DENSITY_TOL || trace.im.abs() > DENSITY_TOL {
            return Err(Error::InvalidState(format!("trace {trace} is not 1")));
        }
        let min = eig_hermitian(&entries)?.values.last().copied().unwrap_or(0.0);
        if min < MIN_EIGENVALUE {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(Self { entries, layout })
    }

    /// Maximally mixed state `I/D`.
    pub fn maximally_mixed(layout: SubsystemLayout) -> Self {
        let d = layout.total_dim();
        Self {
            entries: DMatrix::identity(d, d).unscale(d as f64),
            layout,
        }
    }

    /// Trusted constructor for results of trace-preserving maps.
    pub(crate) fn from_parts(entries: DMatrix<C64>, layout: SubsystemLayout) -> Self {
        Self { entries, layout }
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn layout(&self) -> &SubsystemLayout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let layout = self.layout.concat(&other.layout)?;
        Ok(Self {
            entries: self.entries.kronecker(&other.entries),
            layout,
        })
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Spectrum in descending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        // Hermitian by construction; the check cannot fail.
        eig_hermitian(&self.entries)
            .map(|e| e.values)
            .expect("density matrices are Hermitian")
    }

    /// Number of eigenvalues above [`RANK_CUTOFF`].
    pub fn rank(&self) -> usize {
        self.eigenvalues().iter().filter(|&&l| l > RANK_CUTOFF).count()
    }

    /// Reduced state on `keep`; kept parties stay in their original order.
    pub fn partial_trace(&self, keep: &[&str]) -> Result<Self> {
        let pos = self.layout.positions(keep)?;
        if pos.len() == self.layout.len() {
            return Ok(self.clone());
        }
        let sub = self.layout.select(&pos);
        let dk = sub.total_dim();
        let (kept, traced) = self.layout.split_indices(&pos);
        let d = self.dim();
        let mut out = DMatrix::<C64>::zeros(dk, dk);
        for i in 0..d {
            for j in 0..d {
                if traced[i] == traced[j] {
                    out[(kept[i], kept[j])] += self.entries[(i, j)];
                }
            }
        }
        Ok(Self {
            entries: out,
            layout: sub,
        })
    }

    /// Same operator with its parties relabeled in order.
    pub fn relabeled(&self, labels: &[&str]) -> Result<Self> {
        let layout = SubsystemLayout::new(labels.iter().copied(), self.layout.dims.iter().copied())?;
        Ok(Self {
            entries: self.entries.clone(),
            layout,
        })
    }

    /// Operator with its parties permuted into `order`.
    pub fn reordered(&self, order: &[&str]) -> Result<Self> {
        let pos: Vec<usize> = order.iter().map(|l| self.layout.position(l)).collect::<Result<_>>()?;
        if pos.len() != self.layout.len() {
            return Err(Error::PartyCount {
                expected: self.layout.len(),
                found: pos.len(),
            });
        }
        let mut seen = pos.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != pos.len() {
            return Err(Error::InvalidLayout("repeated label in permutation".into()));
        }
        let layout = self.layout.select(&pos);
        let d = self.dim();
        let old_dims = &self.layout.dims;
        let new_dims = &layout.dims;
        // new index -> old index
        let map: Vec<usize> = (0..d)
            .map(|n| {
                let mut rest = n;
                let mut digits = vec![0usize; pos.len()];
                for q in (0..pos.len()).rev() {
                    digits[pos[q]] = rest % new_dims[q];
                    rest /= new_dims[q];
                }
                digits
                    .iter()
                    .zip(old_dims)
                    .fold(0, |acc, (&digit, &dim)| acc * dim + digit)
            })
            .collect();
        let entries = DMatrix::from_fn(d, d, |i, j| self.entries[(map[i], map[j])]);
        Ok(Self { entries, layout })
    }
}

/// Kronecker product with concatenated layouts.
pub trait TensorProduct: Sized {
    fn tensor_with(&self, other: &Self) -> Result<Self>;
}

impl TensorProduct for StateVector {
    fn tensor_with(&self, other: &Self) -> Result<Self> {
        self.tensor(other)
    }
}

impl TensorProduct for DensityMatrix {
    fn tensor_with(&self, other: &Self) -> Result<Self> {
        self.tensor(other)
    }
}

pub fn tensor<T: TensorProduct>(x: &T, y: &T) -> Result<T> {
    x.tensor_with(y)
}

pub fn density(psi: &StateVector) -> DensityMatrix {
    psi.density()
}

/// Spectral decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Eigenvalues in descending order.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, matching `values`.
    pub vectors: DMatrix<C64>,
}

impl HermitianEigen {
    pub fn reconstruct(&self) -> DMatrix<C64> {
        let mut scaled = self.vectors.clone();
        for (j, &l) in self.values.iter().enumerate() {
            scaled.column_mut(j).scale_mut(l);
        }
        scaled * self.vectors.adjoint()
    }
}

pub fn hermitian_deviation(m: &DMatrix<C64>) -> f64 {
    if m.nrows() != m.ncols() {
        return f64::INFINITY;
    }
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let dev = (m[(i, j)] - m[(j, i)].conj()).norm();
            worst = if dev.is_nan() { f64::NAN } else { worst.max(dev) };
        }
    }
    worst
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
pub fn eig_hermitian(m: &DMatrix<C64>) -> Result<HermitianEigen> {
    let deviation = hermitian_deviation(m);
    if deviation.is_nan() || deviation > EIG_HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let sym = (m + m.adjoint()).unscale(2.0);
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(m.nrows(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(HermitianEigen { values, vectors })
}

/// Purification `Σ √λ_i |e_i>|i>` with an ancilla of dimension rank(ρ).
///
/// The ancilla is appended as the last party under a label not already in
/// use (`R`, or `R'`, `R''`, ...).
pub fn purify(rho: &DensityMatrix) -> StateVector {
    let eig = eig_hermitian(rho.matrix()).expect("density matrices are Hermitian");
    let rank = eig.values.iter().filter(|&&l| l > RANK_CUTOFF).count().max(1);
    let d = rho.dim();
    let mut amplitudes = DVector::<C64>::zeros(d * rank);
    for (i, &l) in eig.values.iter().take(rank).enumerate() {
        let w = l.max(0.0).sqrt();
        for s in 0..d {
            amplitudes[s * rank + i] = eig.vectors[(s, i)] * w;
        }
    }
    let ancilla = rho.layout.fresh_label("R");
    let layout = rho
        .layout
        .concat(&SubsystemLayout::new([ancilla], [rank]).expect("fresh label"))
        .expect("fresh label");
    let norm = amplitudes.norm();
    StateVector {
        amplitudes: amplitudes.unscale(norm),
        layout,
    }
}

/// Haar-random pure state from i.i.d. complex Gaussians.
pub fn haar_random_pure(layout: &SubsystemLayout, seed: u64) -> StateVector {
    let mut rng = rng::stream(seed, 0);
    let d = layout.total_dim();
    let amplitudes = DVector::from_fn(d, |_, _| {
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        C64::new(re, im)
    });
    StateVector::normalized(amplitudes, layout.clone()).expect("gaussian vector is nonzero")
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
