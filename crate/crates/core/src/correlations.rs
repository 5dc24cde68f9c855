//! Bipartite correlation measures.
//!
//! The measurement-based quantities (classical correlation, discord,
//! unlocalizable entanglement, one-way unlocalizable discord) optimize the
//! localizable entropy gain over rank-1 POVMs on the measured party.
//! Entanglement of formation and of assistance are reached through the
//! decompositions that rank-1 measurements on a purifying ancilla induce.
//! For two qubits the Wootters closed forms serve as independent checks.

use nalgebra::{DMatrix, DVector};

use crate::entropy::{binary_entropy, mutual_information, normalized_entropy_2x2, spectral_entropy, Bits};
use crate::error::{Error, Result};
use crate::measurement::{coisometry_into, povm_param_count, Povm, DEGENERATE_PROBABILITY};
use crate::optimize::{multistart, optimize_measurement, OptConfig, OptResult, Sense};
use crate::tensor::{eig_hermitian, purify, DensityMatrix, StateVector, C64};

/// Labels of a two-party state, `(unmeasured, measured)`.
fn bipartite<'a>(rho: &'a DensityMatrix, measured: &str) -> Result<(&'a str, &'a str)> {
    let labels = rho.layout().labels();
    if labels.len() != 2 {
        return Err(Error::PartyCount {
            expected: 2,
            found: labels.len(),
        });
    }
    let pos = rho.layout().position(measured)?;
    Ok((labels[1 - pos].as_str(), labels[pos].as_str()))
}

fn mutual(rho: &DensityMatrix, measured: &str) -> Result<Bits> {
    let (other, side) = bipartite(rho, measured)?;
    mutual_information(rho, &[other], &[side])
}

/// `J(ρ)`: largest entropy reduction of the unmeasured party.
pub fn classical_correlation_j(rho: &DensityMatrix, measured: &str, cfg: &OptConfig) -> Result<Bits> {
    Ok(classical_correlation_detail(rho, measured, cfg)?.value)
}

pub fn classical_correlation_detail(rho: &DensityMatrix, measured: &str, cfg: &OptConfig) -> Result<OptResult> {
    bipartite(rho, measured)?;
    optimize_measurement(rho, measured, Sense::Maximize, cfg)
}

/// `D = I − J`.
pub fn quantum_discord_d(rho: &DensityMatrix, measured: &str, cfg: &OptConfig) -> Result<Bits> {
    Ok(mutual(rho, measured)? - classical_correlation_j(rho, measured, cfg)?)
}

/// `E_u`: smallest entropy reduction of the unmeasured party.
pub fn unlocalizable_entanglement_eu(rho: &DensityMatrix, measured: &str, cfg: &OptConfig) -> Result<Bits> {
    Ok(unlocalizable_entanglement_detail(rho, measured, cfg)?.value)
}

pub fn unlocalizable_entanglement_detail(rho: &DensityMatrix, measured: &str, cfg: &OptConfig) -> Result<OptResult> {
    bipartite(rho, measured)?;
    optimize_measurement(rho, measured, Sense::Minimize, cfg)
}

/// `δ_u = I − E_u`.
pub fn one_way_discord_delta(rho: &DensityMatrix, measured: &str, cfg: &OptConfig) -> Result<Bits> {
    Ok(mutual(rho, measured)? - unlocalizable_entanglement_eu(rho, measured, cfg)?)
}

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.layout().dims() != [2, 2] {
        return Err(Error::NotTwoQubit(rho.layout().dims().to_vec()));
    }
    Ok(())
}

/// Square roots of the eigenvalues of `ρ ρ̃`, descending, where
/// `ρ̃ = (σy⊗σy) ρ* (σy⊗σy)`.
///
/// Computed as the spectrum of the Hermitian `√ρ ρ̃ √ρ`, which shares the
/// eigenvalues of `ρ ρ̃`.
pub fn spin_flip_spectrum(rho: &DensityMatrix) -> Result<[f64; 4]> {
    require_two_qubits(rho)?;
    let m = rho.matrix();
    // σy⊗σy = antidiag(-1, 1, 1, -1)
    let sign = [-1.0, 1.0, 1.0, -1.0];
    let flipped = DMatrix::from_fn(4, 4, |i, j| m[(3 - i, 3 - j)].conj() * (sign[i] * sign[j]));
    let eig = eig_hermitian(m)?;
    let mut sqrt_rho = DMatrix::<C64>::zeros(4, 4);
    for (k, &l) in eig.values.iter().enumerate() {
        let v = eig.vectors.column(k);
        sqrt_rho += (v * v.adjoint()).scale(l.max(0.0).sqrt());
    }
    let r = &sqrt_rho * flipped * &sqrt_rho;
    let r = (&r + r.adjoint()).unscale(2.0);
    let values = eig_hermitian(&r)?.values;
    let mut out = [0.0; 4];
    for (o, v) in out.iter_mut().zip(values) {
        *o = v.max(0.0).sqrt();
    }
    Ok(out)
}

/// Wootters concurrence `max(0, λ1 − λ2 − λ3 − λ4)`.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    let l = spin_flip_spectrum(rho)?;
    Ok((l[0] - l[1] - l[2] - l[3]).clamp(0.0, 1.0))
}

/// Two-qubit entanglement of formation `h((1 + √(1 − C²)) / 2)`.
pub fn eof_wootters(rho: &DensityMatrix) -> Result<Bits> {
    let c = concurrence(rho)?;
    binary_entropy((1.0 + (1.0 - c * c).max(0.0).sqrt()) / 2.0)
}

/// Concurrence of assistance `Σ λ_i`.
pub fn concurrence_of_assistance(rho: &DensityMatrix) -> Result<f64> {
    Ok(spin_flip_spectrum(rho)?.iter().sum::<f64>().min(1.0))
}

/// Pure-state ensemble `{p_x, |φ_x>}` realizing a mixed state.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub weights: Vec<f64>,
    pub components: Vec<StateVector>,
}

impl Decomposition {
    /// `Σ p_x |φ_x><φ_x|`.
    pub fn mixture(&self) -> DMatrix<C64> {
        let d = self.components[0].amplitudes().len();
        let mut m = DMatrix::zeros(d, d);
        for (p, phi) in self.weights.iter().zip(&self.components) {
            let a = phi.amplitudes();
            m += (a * a.adjoint()).scale(*p);
        }
        m
    }

    /// Max entrywise deviation of the mixture from `rho`.
    pub fn residual(&self, rho: &DensityMatrix) -> f64 {
        (self.mixture() - rho.matrix())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// `Σ p_x S(Tr_rest |φ_x><φ_x|)` with entropies on the first party.
    pub fn average_entanglement(&self) -> Result<Bits> {
        let mut total = 0.0;
        for (p, phi) in self.weights.iter().zip(&self.components) {
            let first = phi.layout().labels()[0].clone();
            total += p * spectral_entropy(&phi.reduced(&[&first])?.eigenvalues());
        }
        Ok(total)
    }
}

/// Ensemble steered by measuring the purifier of `rho` with `purifier_povm`.
///
/// The POVM acts on the rank-dimensional ancilla of [`purify`]. Outcomes with
/// probability at or below the degenerate threshold carry no component.
pub fn decomposition_from_measurement(rho: &DensityMatrix, purifier_povm: &Povm) -> Result<Decomposition> {
    let psi = purify(rho);
    let r = *psi.layout().dims().last().expect("purification has an ancilla");
    if purifier_povm.dim() != r {
        return Err(Error::DimensionMismatch {
            expected: r,
            found: purifier_povm.dim(),
        });
    }
    let d = rho.dim();
    let amps = psi.amplitudes();
    let mut weights = Vec::new();
    let mut components = Vec::new();
    for m in purifier_povm.vectors() {
        // (I ⊗ <m|) |ψ>
        let phi = DVector::from_fn(d, |s, _| (0..r).map(|a| m[a].conj() * amps[s * r + a]).sum::<C64>());
        let p = phi.norm_squared();
        if p > DEGENERATE_PROBABILITY {
            weights.push(p);
            components.push(StateVector::normalized(phi, rho.layout().clone())?);
        }
    }
    Ok(Decomposition { weights, components })
}

/// Evaluates ensemble averages over purifier POVM parameters without
/// building intermediate states.
struct EnsembleObjective {
    d_first: usize,
    d_rest: usize,
    rank: usize,
    /// `slices[a]` is the d_first×d_rest amplitude matrix for ancilla index a, row-major.
    slices: Vec<Vec<C64>>,
}

impl EnsembleObjective {
    fn new(rho: &DensityMatrix) -> Result<Self> {
        let labels = rho.layout().labels();
        if labels.len() != 2 {
            return Err(Error::PartyCount {
                expected: 2,
                found: labels.len(),
            });
        }
        let psi = purify(rho);
        let dims = psi.layout().dims();
        let (d_first, d_rest, rank) = (dims[0], dims[1], dims[2]);
        let amps = psi.amplitudes();
        let slices = (0..rank)
            .map(|a| (0..d_first * d_rest).map(|s| amps[s * rank + a]).collect())
            .collect();
        Ok(Self {
            d_first,
            d_rest,
            rank,
            slices,
        })
    }

    fn component(&self, row: &[C64], phi: &mut [C64]) {
        phi.iter_mut().for_each(|z| *z = C64::new(0.0, 0.0));
        for (w, slice) in row.iter().zip(&self.slices) {
            // row[a] = conj(m_a)
            for (z, s) in phi.iter_mut().zip(slice) {
                *z += w * s;
            }
        }
    }

    /// `Σ_k p_k S(ρ_k^first)` for the POVM with K outcomes.
    fn average_entropy(&self, params: &[f64], outcomes: usize) -> f64 {
        let (dx, dy) = (self.d_first, self.d_rest);
        let mut rows = vec![C64::new(0.0, 0.0); outcomes * self.rank];
        let mut phi = vec![C64::new(0.0, 0.0); dx * dy];
        coisometry_into(params, self.rank, outcomes, &mut rows);
        let mut total = 0.0;
        for row in rows.chunks(self.rank) {
            self.component(row, &mut phi);
            let p: f64 = phi.iter().map(|z| z.norm_sqr()).sum();
            if p <= DEGENERATE_PROBABILITY {
                continue;
            }
            let s = if dx == 2 {
                let (r0, r1) = phi.split_at(dy);
                let a: f64 = r0.iter().map(|z| z.norm_sqr()).sum();
                let d: f64 = r1.iter().map(|z| z.norm_sqr()).sum();
                let b: C64 = r0.iter().zip(r1).map(|(x, y)| x * y.conj()).sum();
                normalized_entropy_2x2(a, d, b)
            } else if dy == 2 {
                let a: f64 = (0..dx).map(|i| phi[i * 2].norm_sqr()).sum();
                let d: f64 = (0..dx).map(|i| phi[i * 2 + 1].norm_sqr()).sum();
                let b: C64 = (0..dx).map(|i| phi[i * 2] * phi[i * 2 + 1].conj()).sum();
                normalized_entropy_2x2(a, d, b)
            } else {
                let m = DMatrix::from_row_slice(dx, dy, &phi);
                let sigma = (&m * m.adjoint()).unscale(p);
                spectral_entropy(&eig_hermitian(&sigma).map(|e| e.values).unwrap_or_default())
            };
            total += p * s;
        }
        total
    }

    /// `Σ_k p_k C(φ_k)` for two-qubit components, `C = 2|ad − bc|`.
    fn average_concurrence(&self, params: &[f64], outcomes: usize) -> f64 {
        let mut rows = vec![C64::new(0.0, 0.0); outcomes * self.rank];
        let mut phi = vec![C64::new(0.0, 0.0); 4];
        coisometry_into(params, self.rank, outcomes, &mut rows);
        rows.chunks(self.rank)
            .map(|row| {
                self.component(row, &mut phi);
                2.0 * (phi[0] * phi[3] - phi[1] * phi[2]).norm()
            })
            .sum()
    }
}

fn purifier_outcomes(objective: &EnsembleObjective, cfg: &OptConfig) -> Result<usize> {
    Ok(cfg.outcomes.for_purifier(objective.rank))
}

fn ensemble_search<F>(rho: &DensityMatrix, cfg: &OptConfig, sense: Sense, f: F) -> Result<OptResult>
where
    F: Fn(&EnsembleObjective, &[f64], usize) -> f64 + Sync,
{
    let objective = EnsembleObjective::new(rho)?;
    let k = purifier_outcomes(&objective, cfg)?;
    let mut result = multistart(povm_param_count(k), |p| f(&objective, p, k), sense, cfg)?;
    result.outcomes = k;
    Ok(result)
}

/// Entanglement of assistance: the largest average entanglement over
/// pure-state decompositions, searched through purifier measurements with
/// `K = rank²` outcomes under the default policy.
pub fn eoa_numeric(rho: &DensityMatrix, cfg: &OptConfig) -> Result<Bits> {
    Ok(eoa_detail(rho, cfg)?.value)
}

pub fn eoa_detail(rho: &DensityMatrix, cfg: &OptConfig) -> Result<OptResult> {
    ensemble_search(rho, cfg, Sense::Maximize, |o, p, k| o.average_entropy(p, k))
}

/// Entanglement of formation by brute-force minimization over purifier
/// measurements. Oracle for [`eof_wootters`].
pub fn eof_numeric_oracle(rho: &DensityMatrix, cfg: &OptConfig) -> Result<Bits> {
    Ok(ensemble_search(rho, cfg, Sense::Minimize, |o, p, k| o.average_entropy(p, k))?.value)
}

/// Largest average component concurrence over decompositions of a
/// two-qubit state. Numeric counterpart of [`concurrence_of_assistance`].
pub fn max_average_concurrence(rho: &DensityMatrix, cfg: &OptConfig) -> Result<f64> {
    require_two_qubits(rho)?;
    Ok(ensemble_search(rho, cfg, Sense::Maximize, |o, p, k| o.average_concurrence(p, k))?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measurement::povm_from_params;
    use crate::tensor::{haar_random_pure, SubsystemLayout};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn ghz3(theta: f64) -> StateVector {
        let mut a = DVector::zeros(8);
        a[0] = C64::new(theta.cos(), 0.0);
        a[7] = C64::new(theta.sin(), 0.0);
        StateVector::new(a, SubsystemLayout::qubits(&["A", "B", "C"]).unwrap()).unwrap()
    }

    fn two_qubit(amps: [f64; 4]) -> DensityMatrix {
        StateVector::normalized(
            DVector::from_iterator(4, amps.iter().map(|&a| C64::new(a, 0.0))),
            SubsystemLayout::qubits(&["A", "B"]).unwrap(),
        )
        .unwrap()
        .density()
    }

    fn phi_plus() -> DensityMatrix {
        two_qubit([FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2])
    }

    fn product() -> DensityMatrix {
        let a = haar_random_pure(&SubsystemLayout::qubits(&["A"]).unwrap(), 1).density();
        let b = DensityMatrix::maximally_mixed(SubsystemLayout::qubits(&["B"]).unwrap());
        a.tensor(&b).unwrap()
    }

    fn h(p: f64) -> f64 {
        if p <= 0.0 || p >= 1.0 {
            0.0
        } else {
            -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
        }
    }

    fn cfg() -> OptConfig {
        OptConfig::default()
    }

    #[test]
    fn measurement_quantities_on_ghz() {
        for t in [0.2, PI / 4.0, 1.1] {
            let ab = ghz3(t).reduced(&["A", "B"]).unwrap();
            let hh = h(t.cos().powi(2));
            assert_abs_diff_eq!(classical_correlation_j(&ab, "B", &cfg()).unwrap(), hh, epsilon = 1e-4);
            assert_abs_diff_eq!(quantum_discord_d(&ab, "B", &cfg()).unwrap(), 0.0, epsilon = 1e-4);
            assert_abs_diff_eq!(
                unlocalizable_entanglement_eu(&ab, "B", &cfg()).unwrap(),
                0.0,
                epsilon = 1e-4
            );
        }
        let ab = ghz3(PI / 4.0).reduced(&["A", "B"]).unwrap();
        assert_abs_diff_eq!(one_way_discord_delta(&ab, "B", &cfg()).unwrap(), 1.0, epsilon = 1e-4);
    }

    #[test]
    fn measurement_quantities_on_bell_state() {
        let phi = phi_plus();
        assert_abs_diff_eq!(classical_correlation_j(&phi, "B", &cfg()).unwrap(), 1.0, epsilon = 1e-4);
        assert_abs_diff_eq!(quantum_discord_d(&phi, "B", &cfg()).unwrap(), 1.0, epsilon = 1e-4);
        assert_abs_diff_eq!(
            unlocalizable_entanglement_eu(&phi, "B", &cfg()).unwrap(),
            1.0,
            epsilon = 1e-4
        );
        assert_abs_diff_eq!(one_way_discord_delta(&phi, "B", &cfg()).unwrap(), 1.0, epsilon = 1e-4);
    }

    #[test]
    fn measurement_quantities_on_product_state() {
        let p = product();
        for side in ["A", "B"] {
            assert_abs_diff_eq!(classical_correlation_j(&p, side, &cfg()).unwrap(), 0.0, epsilon = 1e-6);
            assert_abs_diff_eq!(quantum_discord_d(&p, side, &cfg()).unwrap(), 0.0, epsilon = 1e-6);
            assert_abs_diff_eq!(
                unlocalizable_entanglement_eu(&p, side, &cfg()).unwrap(),
                0.0,
                epsilon = 1e-6
            );
            assert_abs_diff_eq!(one_way_discord_delta(&p, side, &cfg()).unwrap(), 0.0, epsilon = 1e-6);
        }
    }

    #[test]
    fn measured_party_must_be_one_of_two() {
        let abc = ghz3(0.3).density();
        assert!(matches!(
            classical_correlation_j(&abc, "B", &cfg()),
            Err(Error::PartyCount { expected: 2, found: 3 })
        ));
        let ab = ghz3(0.3).reduced(&["A", "B"]).unwrap();
        assert!(matches!(
            unlocalizable_entanglement_eu(&ab, "C", &cfg()),
            Err(Error::UnknownLabel(_))
        ));
    }

    #[test]
    fn concurrence_examples() {
        assert_abs_diff_eq!(concurrence(&phi_plus()).unwrap(), 1.0, epsilon = 1e-7);
        for t in [0.1, 0.5, PI / 4.0, 1.3] {
            let diag = ghz3(t).reduced(&["A", "B"]).unwrap();
            assert_abs_diff_eq!(concurrence(&diag).unwrap(), 0.0, epsilon = 1e-7);
            let pure = two_qubit([t.cos(), 0.0, 0.0, t.sin()]);
            assert_abs_diff_eq!(concurrence(&pure).unwrap(), (2.0 * t).sin(), epsilon = 1e-7);
        }
        assert!(matches!(concurrence(&ghz3(0.1).density()), Err(Error::NotTwoQubit(_))));
    }

    #[test]
    fn eof_examples() {
        assert_abs_diff_eq!(eof_wootters(&product()).unwrap(), 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(eof_wootters(&phi_plus()).unwrap(), 1.0, epsilon = 1e-9);
        for t in [0.3, PI / 4.0, 1.0] {
            let ac = ghz3(t).reduced(&["A", "C"]).unwrap();
            assert_abs_diff_eq!(eof_wootters(&ac).unwrap(), 0.0, epsilon = 1e-9);
        }
        // pure state: EOF = entanglement entropy
        let t: f64 = 0.4;
        let pure = two_qubit([t.cos(), 0.0, 0.0, t.sin()]);
        assert_abs_diff_eq!(eof_wootters(&pure).unwrap(), h(t.cos().powi(2)), epsilon = 1e-7);
    }

    #[test]
    fn concurrence_of_assistance_examples() {
        assert_abs_diff_eq!(concurrence_of_assistance(&phi_plus()).unwrap(), 1.0, epsilon = 1e-7);
        for t in [0.2, 0.6, PI / 4.0] {
            let ac = ghz3(t).reduced(&["A", "C"]).unwrap();
            assert_abs_diff_eq!(concurrence_of_assistance(&ac).unwrap(), (2.0 * t).sin(), epsilon = 1e-7);
        }
        let pure_product = two_qubit([0.6, 0.8, 0.0, 0.0]);
        assert_abs_diff_eq!(concurrence_of_assistance(&pure_product).unwrap(), 0.0, epsilon = 1e-7);
    }

    #[test]
    fn eoa_examples() {
        assert_abs_diff_eq!(eoa_numeric(&phi_plus(), &cfg()).unwrap(), 1.0, epsilon = 1e-9);
        let ac = ghz3(PI / 4.0).reduced(&["A", "C"]).unwrap();
        assert_abs_diff_eq!(eoa_numeric(&ac, &cfg()).unwrap(), 1.0, epsilon = 1e-3);
        assert_abs_diff_eq!(eoa_numeric(&product(), &cfg()).unwrap(), 0.0, epsilon = 1e-9);
    }

    #[test]
    fn eof_oracle_examples() {
        assert_abs_diff_eq!(eof_numeric_oracle(&phi_plus(), &cfg()).unwrap(), 1.0, epsilon = 1e-9);
        let diag = ghz3(PI / 4.0).reduced(&["A", "B"]).unwrap();
        assert_abs_diff_eq!(eof_numeric_oracle(&diag, &cfg()).unwrap(), 0.0, epsilon = 1e-3);
        let layout = SubsystemLayout::qubits(&["A", "B", "C"]).unwrap();
        for seed in 0..3 {
            let ac = haar_random_pure(&layout, seed).reduced(&["A", "C"]).unwrap();
            let numeric = eof_numeric_oracle(&ac, &cfg()).unwrap();
            assert_abs_diff_eq!(numeric, eof_wootters(&ac).unwrap(), epsilon = 1e-3);
        }
    }

    #[test]
    fn decomposition_of_pure_state_has_one_component() {
        let povm = povm_from_params(&[0.7], 1, 1).unwrap();
        let d = decomposition_from_measurement(&phi_plus(), &povm).unwrap();
        assert_eq!(d.components.len(), 1);
        assert_abs_diff_eq!(d.weights[0], 1.0, epsilon = 1e-12);
        assert!(d.residual(&phi_plus()) < 1e-12);
    }

    #[test]
    fn decomposition_of_maximally_mixed_qubit() {
        let rho = DensityMatrix::maximally_mixed(SubsystemLayout::qubits(&["A"]).unwrap());
        let d = decomposition_from_measurement(&rho, &Povm::computational(2)).unwrap();
        assert_eq!(d.components.len(), 2);
        assert_abs_diff_eq!(d.weights[0], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(d.weights[1], 0.5, epsilon = 1e-12);
        let overlap = d.components[0].amplitudes().dotc(d.components[1].amplitudes()).norm();
        assert_abs_diff_eq!(overlap, 0.0, epsilon = 1e-12);
        assert!(d.residual(&rho) < 1e-12);
    }

    #[test]
    fn decomposition_of_ghz_marginal_in_x_basis_is_bell_like() {
        let ac = ghz3(PI / 4.0).reduced(&["A", "C"]).unwrap();
        let x = povm_from_params(&[PI / 4.0, 0.0, 0.0, 0.0], 2, 2).unwrap();
        let d = decomposition_from_measurement(&ac, &x).unwrap();
        assert_eq!(d.components.len(), 2);
        for (p, phi) in d.weights.iter().zip(&d.components) {
            assert_abs_diff_eq!(*p, 0.5, epsilon = 1e-12);
            let s = spectral_entropy(&phi.reduced(&["A"]).unwrap().eigenvalues());
            assert_abs_diff_eq!(s, 1.0, epsilon = 1e-12);
        }
        assert!(d.residual(&ac) < 1e-12);
        assert_abs_diff_eq!(d.average_entanglement().unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn decomposition_rejects_wrong_ancilla_dimension() {
        let ac = ghz3(PI / 4.0).reduced(&["A", "C"]).unwrap();
        assert!(decomposition_from_measurement(&ac, &Povm::computational(3)).is_err());
    }

    #[test]
    fn ensemble_objective_matches_decomposition() {
        let layout = SubsystemLayout::new(["A", "B", "C"], [2, 2, 2]).unwrap();
        let mut rng = crate::rng::stream(4, 0);
        for seed in 0..5 {
            let ac = haar_random_pure(&layout, seed).reduced(&["A", "C"]).unwrap();
            let obj = EnsembleObjective::new(&ac).unwrap();
            let params: Vec<f64> = (0..16).map(|_| rand::Rng::random_range(&mut rng, -3.0..3.0)).collect();
            let povm = povm_from_params(&params, obj.rank, 4).unwrap();
            let d = decomposition_from_measurement(&ac, &povm).unwrap();
            assert!(d.residual(&ac) < 1e-8);
            assert_abs_diff_eq!(
                obj.average_entropy(&params, 4),
                d.average_entanglement().unwrap(),
                epsilon = 1e-11
            );
            let c: f64 = d
                .weights
                .iter()
                .zip(&d.components)
                .map(|(p, phi)| p * concurrence(&phi.density()).unwrap())
                .sum();
            assert_abs_diff_eq!(obj.average_concurrence(&params, 4), c, epsilon = 1e-6);
        }
    }
}
