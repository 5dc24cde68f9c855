//! Entropic quantities, all in bits.

use crate::error::{Error, Result};
use crate::tensor::{DensityMatrix, C64};

/// Information measured in bits (base-2 logarithms).
pub type Bits = f64;

/// Eigenvalues at or below this contribute nothing (`0 log 0 = 0`).
pub const EIGENVALUE_FLOOR: f64 = 1e-12;

/// `-Σ λ log2 λ` over the given spectrum.
pub fn spectral_entropy(values: &[f64]) -> Bits {
    values
        .iter()
        .filter(|&&l| l > EIGENVALUE_FLOOR)
        .map(|&l| -l * l.log2())
        .sum()
}

pub fn von_neumann_entropy(rho: &DensityMatrix) -> Bits {
    spectral_entropy(&rho.eigenvalues())
}

/// Entropy of `σ / Tr σ` for a 2×2 positive operator `[[a, b], [b*, d]]`
/// given by its diagonal and upper off-diagonal entry.
///
/// Closed-form spectrum; used inside the measurement optimizer's inner loop.
pub(crate) fn normalized_entropy_2x2(a: f64, d: f64, b: C64) -> Bits {
    let t = a + d;
    if t <= 0.0 {
        return 0.0;
    }
    let half_gap = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    let hi = (0.5 * t + half_gap) / t;
    let lo = ((0.5 * t - half_gap) / t).max(0.0);
    spectral_entropy(&[hi, lo])
}

pub fn binary_entropy(p: f64) -> Result<Bits> {
    if !(-1e-12..=1.0 + 1e-12).contains(&p) {
        return Err(Error::ProbabilityOutOfRange(p));
    }
    let p = p.clamp(0.0, 1.0);
    Ok(spectral_entropy(&[p, 1.0 - p]))
}

fn marginal_entropy(rho: &DensityMatrix, parties: &[&str]) -> Result<Bits> {
    Ok(von_neumann_entropy(&rho.partial_trace(parties)?))
}

/// `S(target | given) = S(target ∪ given) − S(given)`.
pub fn conditional_entropy(rho: &DensityMatrix, target: &str, given: &[&str]) -> Result<Bits> {
    if given.contains(&target) {
        return Err(Error::DuplicateLabel(target.to_string()));
    }
    rho.layout().position(target)?;
    let mut joint: Vec<&str> = given.to_vec();
    joint.push(target);
    Ok(marginal_entropy(rho, &joint)? - marginal_entropy(rho, given)?)
}

/// `I(X:Y) = S(X) + S(Y) − S(XY)` where `X ∪ Y` is the whole state.
pub fn mutual_information(rho: &DensityMatrix, part_a: &[&str], part_b: &[&str]) -> Result<Bits> {
    if let Some(shared) = part_a.iter().find(|l| part_b.contains(l)) {
        return Err(Error::DuplicateLabel(shared.to_string()));
    }
    let all: Vec<&str> = part_a.iter().chain(part_b).copied().collect();
    let pos = rho.layout().positions(&all)?;
    if pos.len() != rho.layout().len() {
        return Err(Error::PartyCount {
            expected: rho.layout().len(),
            found: pos.len(),
        });
    }
    Ok(marginal_entropy(rho, part_a)? + marginal_entropy(rho, part_b)? - von_neumann_entropy(rho))
}

/// Interaction information `I(A:BC) − I(A:B) − I(A:C)` of a three-party state.
///
/// Evaluated through the symmetric form
/// `−S_A − S_B − S_C + S_AB + S_AC + S_BC − S_ABC`.
pub fn interaction_information(rho: &DensityMatrix) -> Result<Bits> {
    let labels = rho.layout().labels();
    if labels.len() != 3 {
        return Err(Error::PartyCount {
            expected: 3,
            found: labels.len(),
        });
    }
    let (a, b, c) = (labels[0].as_str(), labels[1].as_str(), labels[2].as_str());
    let s = |parties: &[&str]| marginal_entropy(rho, parties);
    Ok(-s(&[a])? - s(&[b])? - s(&[c])? + s(&[a, b])? + s(&[a, c])? + s(&[b, c])? - von_neumann_entropy(rho))
}
