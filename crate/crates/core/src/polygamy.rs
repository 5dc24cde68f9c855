//! Polygamy deficits of one-way unlocalizable discord and the residual suite
//! for the identities that tie them to entanglement of formation and of
//! assistance.
//!
//! Party roles follow layout order: the first label plays `A`, the second
//! `B`, and so on. The one-way discord of `A` against the rest of a pure
//! state equals `S(A)` and is never optimized.

use crate::correlations::{
    classical_correlation_j, eoa_numeric, eof_numeric_oracle, eof_wootters, unlocalizable_entanglement_eu,
};
use crate::entropy::{conditional_entropy, interaction_information, mutual_information, von_neumann_entropy, Bits};
use crate::error::{Error, Result};
use crate::optimize::OptConfig;
use crate::rng::derive_seed;
use crate::tensor::DensityMatrix;

/// Smallest purity accepted as a pure input.
pub const PURITY_FLOOR: f64 = 1.0 - 1e-9;

fn require_pure(psi: &DensityMatrix, parties: usize) -> Result<Vec<String>> {
    let labels = psi.layout().labels();
    if labels.len() != parties {
        return Err(Error::PartyCount {
            expected: parties,
            found: labels.len(),
        });
    }
    let purity = psi.purity();
    if purity < PURITY_FLOOR {
        return Err(Error::NotPure { purity });
    }
    Ok(labels.to_vec())
}

/// Mutual information and `E_u` of a two-party marginal, measuring `measured`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneWay {
    pub mutual: Bits,
    pub unlocalizable: Bits,
}

impl OneWay {
    fn compute(psi: &DensityMatrix, other: &str, measured: &str, cfg: &OptConfig) -> Result<Self> {
        let pair = psi.partial_trace(&[other, measured])?;
        Ok(Self {
            mutual: mutual_information(&pair, &[other], &[measured])?,
            unlocalizable: unlocalizable_entanglement_eu(&pair, measured, cfg)?,
        })
    }

    /// One-way unlocalizable discord `δ_u = I − E_u`.
    pub fn delta(&self) -> Bits {
        self.mutual - self.unlocalizable
    }
}

/// Optimizer settings for the `k`-th search of a computation.
fn nth(cfg: &OptConfig, k: u64) -> OptConfig {
    cfg.with_seed(derive_seed(cfg.seed, k))
}

fn pair_eoa(psi: &DensityMatrix, x: &str, y: &str, cfg: &OptConfig) -> Result<Bits> {
    eoa_numeric(&psi.partial_trace(&[x, y])?, cfg)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeftDeficit {
    /// `S(A) − δ_u(AB) − δ_u(AC)`, measuring `B` and `C`.
    pub definition: Bits,
    /// `E_u(AB) − E_a(AB)`.
    pub unlocalizable_form: Bits,
}

impl LeftDeficit {
    pub fn residual(&self) -> f64 {
        (self.definition - self.unlocalizable_form).abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RightDeficit {
    /// `S(A) − δ_u(BA) − δ_u(CA)`, measuring `A` in both pairs.
    pub definition: Bits,
    /// `I(BC) − 2 E_a(BC)`.
    pub mutual_form: Bits,
    /// `E_u(BA) − δ_u(BA)`.
    pub unlocalizable_form: Bits,
}

impl RightDeficit {
    /// Largest disagreement among the three forms.
    pub fn residual(&self) -> f64 {
        let v = [self.definition, self.mutual_form, self.unlocalizable_form];
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        hi - lo
    }
}

/// Deficit with the pair partners measured.
pub fn deficit_left_tri(psi: &DensityMatrix, cfg: &OptConfig) -> Result<LeftDeficit> {
    let l = require_pure(psi, 3)?;
    let (a, b, c) = (l[0].as_str(), l[1].as_str(), l[2].as_str());
    let s_a = von_neumann_entropy(&psi.partial_trace(&[a])?);
    let ab = OneWay::compute(psi, a, b, &nth(cfg, 1))?;
    let ac = OneWay::compute(psi, a, c, &nth(cfg, 4))?;
    Ok(LeftDeficit {
        definition: s_a - ab.delta() - ac.delta(),
        unlocalizable_form: ab.unlocalizable - pair_eoa(psi, a, b, &nth(cfg, 8))?,
    })
}

/// Deficit with `A` measured in every pair.
pub fn deficit_right_tri(psi: &DensityMatrix, cfg: &OptConfig) -> Result<RightDeficit> {
    let l = require_pure(psi, 3)?;
    let (a, b, c) = (l[0].as_str(), l[1].as_str(), l[2].as_str());
    let s_a = von_neumann_entropy(&psi.partial_trace(&[a])?);
    let ba = OneWay::compute(psi, b, a, &nth(cfg, 5))?;
    let ca = OneWay::compute(psi, c, a, &nth(cfg, 6))?;
    let bc = psi.partial_trace(&[b, c])?;
    Ok(RightDeficit {
        definition: s_a - ba.delta() - ca.delta(),
        mutual_form: mutual_information(&bc, &[b], &[c])? - 2.0 * eoa_numeric(&bc, &nth(cfg, 10))?,
        unlocalizable_form: ba.unlocalizable - ba.delta(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Measure the partner in each pair.
    Left,
    /// Measure `A` in each pair.
    Right,
}

/// Four-party deficit `S(A) − Σ_X δ_u` over `X ∈ {B, C, D}`.
pub fn deficit_quad(psi: &DensityMatrix, direction: Direction, cfg: &OptConfig) -> Result<Bits> {
    Ok(quad_pairs(psi, direction, cfg)?.0)
}

fn quad_pairs(psi: &DensityMatrix, direction: Direction, cfg: &OptConfig) -> Result<(Bits, [OneWay; 3])> {
    let l = require_pure(psi, 4)?;
    let a = l[0].as_str();
    let s_a = von_neumann_entropy(&psi.partial_trace(&[a])?);
    let mut pairs = [OneWay {
        mutual: 0.0,
        unlocalizable: 0.0,
    }; 3];
    for (k, (slot, x)) in pairs.iter_mut().zip(&l[1..]).enumerate() {
        let run = nth(cfg, k as u64 + if direction == Direction::Left { 0 } else { 3 });
        *slot = match direction {
            Direction::Left => OneWay::compute(psi, a, x, &run)?,
            Direction::Right => OneWay::compute(psi, x, a, &run)?,
        };
    }
    Ok((s_a - pairs.iter().map(OneWay::delta).sum::<f64>(), pairs))
}

/// `½ I(ρ_ABC)` of the first three parties of a four-party pure state.
pub fn quad_upper_bound(psi: &DensityMatrix) -> Result<Bits> {
    let l = require_pure(psi, 4)?;
    let abc = psi.partial_trace(&[l[0].as_str(), l[1].as_str(), l[2].as_str()])?;
    Ok(0.5 * interaction_information(&abc)?)
}

/// Named checks collected in a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    KoashiWinter,
    BuscemiGourKim,
    AssistanceFormationGap,
    ConditionalEntropyOneWay,
    ConditionalEntropyDiscord,
    OneWayAssistance,
    LeftDeficitPairs,
    LeftDeficitForms,
    RightDeficitPairs,
    RightDeficitMutual,
    RightDeficitEntropic,
    RightDeficitUnlocalizable,
    LeftPolygamy,
    RightPolygamy,
    QuadLeftBound,
    QuadRightBound,
    QuadBoundAlgebra,
}

impl Identity {
    pub const TRIPARTITE: [Identity; 14] = [
        Identity::KoashiWinter,
        Identity::BuscemiGourKim,
        Identity::AssistanceFormationGap,
        Identity::ConditionalEntropyOneWay,
        Identity::ConditionalEntropyDiscord,
        Identity::OneWayAssistance,
        Identity::LeftDeficitPairs,
        Identity::LeftDeficitForms,
        Identity::RightDeficitPairs,
        Identity::RightDeficitMutual,
        Identity::RightDeficitEntropic,
        Identity::RightDeficitUnlocalizable,
        Identity::LeftPolygamy,
        Identity::RightPolygamy,
    ];

    pub const QUADRIPARTITE: [Identity; 3] = [
        Identity::QuadLeftBound,
        Identity::QuadRightBound,
        Identity::QuadBoundAlgebra,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::KoashiWinter => "koashi_winter",
            Identity::BuscemiGourKim => "buscemi_gour_kim",
            Identity::AssistanceFormationGap => "assistance_formation_gap",
            Identity::ConditionalEntropyOneWay => "conditional_entropy_one_way",
            Identity::ConditionalEntropyDiscord => "conditional_entropy_discord",
            Identity::OneWayAssistance => "one_way_assistance",
            Identity::LeftDeficitPairs => "left_deficit_pairs",
            Identity::LeftDeficitForms => "left_deficit_forms",
            Identity::RightDeficitPairs => "right_deficit_pairs",
            Identity::RightDeficitMutual => "right_deficit_mutual",
            Identity::RightDeficitEntropic => "right_deficit_entropic",
            Identity::RightDeficitUnlocalizable => "right_deficit_unlocalizable",
            Identity::LeftPolygamy => "left_polygamy",
            Identity::RightPolygamy => "right_polygamy",
            Identity::QuadLeftBound => "quad_left_bound",
            Identity::QuadRightBound => "quad_right_bound",
            Identity::QuadBoundAlgebra => "quad_bound_algebra",
        }
    }

    /// True for checks that involve no optimization and so are held to the
    /// exact tolerance.
    pub fn is_exact(self) -> bool {
        matches!(self, Identity::QuadBoundAlgebra)
    }
}

impl std::fmt::Display for Identity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One check: an absolute difference of two sides, or for the polygamy and
/// bound checks the amount by which the inequality fails (0 when it holds).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub identity: Identity,
    pub value: f64,
}

/// Everything computed for one tripartite pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationReport {
    pub labels: [String; 3],
    pub s_a: Bits,
    pub s_b: Bits,
    pub s_c: Bits,
    pub s_b_given_c: Bits,
    pub s_a_given_b: Bits,
    pub s_b_given_a: Bits,
    pub s_c_given_a: Bits,
    pub mutual_ab: Bits,
    pub mutual_ac: Bits,
    pub mutual_bc: Bits,
    pub interaction: Bits,
    /// `J` and `E_u` of `ρ_AB` measuring `B`.
    pub j_ab: Bits,
    pub eu_ab: Bits,
    /// `J` and `E_u` of `ρ_CB` measuring `B`.
    pub j_cb: Bits,
    pub eu_cb: Bits,
    /// `E_u` of `ρ_AC` measuring `C`.
    pub eu_ac: Bits,
    /// `E_u` of `ρ_BA` and `ρ_CA` measuring `A`.
    pub eu_ba: Bits,
    pub eu_ca: Bits,
    pub ef_ac: Bits,
    pub ea_ab: Bits,
    pub ea_ac: Bits,
    pub ea_bc: Bits,
    pub left: LeftDeficit,
    pub right: RightDeficit,
    pub residuals: Vec<Residual>,
}

impl CorrelationReport {
    pub fn discord_ab(&self) -> Bits {
        self.mutual_ab - self.j_ab
    }
    pub fn discord_cb(&self) -> Bits {
        self.mutual_bc - self.j_cb
    }
    pub fn delta_ab(&self) -> Bits {
        self.mutual_ab - self.eu_ab
    }
    pub fn delta_cb(&self) -> Bits {
        self.mutual_bc - self.eu_cb
    }
    pub fn delta_ac(&self) -> Bits {
        self.mutual_ac - self.eu_ac
    }
    pub fn delta_ba(&self) -> Bits {
        self.mutual_ab - self.eu_ba
    }
    pub fn delta_ca(&self) -> Bits {
        self.mutual_ac - self.eu_ca
    }

    pub fn residual(&self, identity: Identity) -> Option<f64> {
        self.residuals.iter().find(|r| r.identity == identity).map(|r| r.value)
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.value).fold(0.0, f64::max)
    }
}

/// Computes every tripartite quantity once and checks each identity with
/// its two sides taken from separate computations.
///
/// `E_f(ρ_AC)` uses the Wootters formula when `A` and `C` are qubits and the
/// numeric search otherwise.
pub fn identity_report(psi: &DensityMatrix, cfg: &OptConfig) -> Result<CorrelationReport> {
    let l = require_pure(psi, 3)?;
    let (a, b, c) = (l[0].as_str(), l[1].as_str(), l[2].as_str());
    let marginal = |parties: &[&str]| psi.partial_trace(parties);
    let entropy = |p: &str| -> Result<Bits> { Ok(von_neumann_entropy(&marginal(&[p])?)) };
    let (s_a, s_b, s_c) = (entropy(a)?, entropy(b)?, entropy(c)?);

    let rho_ab = marginal(&[a, b])?;
    let rho_ac = marginal(&[a, c])?;
    let rho_cb = marginal(&[c, b])?;
    let rho_bc = marginal(&[b, c])?;

    let mutual_ab = mutual_information(&rho_ab, &[a], &[b])?;
    let mutual_ac = mutual_information(&rho_ac, &[a], &[c])?;
    let mutual_bc = mutual_information(&rho_bc, &[b], &[c])?;

    // each search gets its own seed so that the two sides of an identity
    // converge independently
    let run = |k: u64| nth(cfg, k);
    let j_ab = classical_correlation_j(&rho_ab, b, &run(0))?;
    let eu_ab = unlocalizable_entanglement_eu(&rho_ab, b, &run(1))?;
    let j_cb = classical_correlation_j(&rho_cb, b, &run(2))?;
    let eu_cb = unlocalizable_entanglement_eu(&rho_cb, b, &run(3))?;
    let eu_ac = unlocalizable_entanglement_eu(&rho_ac, c, &run(4))?;
    let eu_ba = unlocalizable_entanglement_eu(&rho_ab, a, &run(5))?;
    let eu_ca = unlocalizable_entanglement_eu(&rho_ac, a, &run(6))?;

    let ef_ac = if rho_ac.layout().dims() == [2, 2] {
        eof_wootters(&rho_ac)?
    } else {
        eof_numeric_oracle(&rho_ac, &run(7))?
    };
    let ea_ab = eoa_numeric(&rho_ab, &run(8))?;
    let ea_ac = eoa_numeric(&rho_ac, &run(9))?;
    let ea_bc = eoa_numeric(&rho_bc, &run(10))?;

    let s_b_given_c = conditional_entropy(psi, b, &[c])?;
    let s_a_given_b = conditional_entropy(psi, a, &[b])?;
    let s_b_given_a = conditional_entropy(psi, b, &[a])?;
    let s_c_given_a = conditional_entropy(psi, c, &[a])?;

    let mut report = CorrelationReport {
        labels: [a.to_string(), b.to_string(), c.to_string()],
        s_a,
        s_b,
        s_c,
        s_b_given_c,
        s_a_given_b,
        s_b_given_a,
        s_c_given_a,
        mutual_ab,
        mutual_ac,
        mutual_bc,
        interaction: interaction_information(psi)?,
        j_ab,
        eu_ab,
        j_cb,
        eu_cb,
        eu_ac,
        eu_ba,
        eu_ca,
        ef_ac,
        ea_ab,
        ea_ac,
        ea_bc,
        left: LeftDeficit {
            definition: s_a - (mutual_ab - eu_ab) - (mutual_ac - eu_ac),
            unlocalizable_form: eu_ab - ea_ab,
        },
        right: RightDeficit {
            definition: s_a - (mutual_ab - eu_ba) - (mutual_ac - eu_ca),
            mutual_form: mutual_bc - 2.0 * ea_bc,
            unlocalizable_form: eu_ba - (mutual_ab - eu_ba),
        },
        residuals: Vec::new(),
    };
    let r = &report;
    let right_entropic = s_a + s_b_given_a + s_c_given_a - 2.0 * ea_bc;
    let residuals = vec![
        (Identity::KoashiWinter, (j_ab + ef_ac - s_a).abs()),
        (Identity::BuscemiGourKim, (eu_ab + ea_ac - s_a).abs()),
        (
            Identity::AssistanceFormationGap,
            ((r.delta_ab() - r.discord_ab()) - (ea_ac - ef_ac)).abs(),
        ),
        (
            Identity::ConditionalEntropyOneWay,
            (r.delta_ab() - r.delta_cb() - s_b_given_c).abs(),
        ),
        (
            Identity::ConditionalEntropyDiscord,
            (r.discord_ab() - r.discord_cb() - s_b_given_c).abs(),
        ),
        (Identity::OneWayAssistance, (r.delta_ab() - ea_ac + s_a_given_b).abs()),
        (Identity::LeftDeficitPairs, ((eu_ab - ea_ab) - (eu_ac - ea_ac)).abs()),
        (Identity::LeftDeficitForms, r.left.residual()),
        (
            Identity::RightDeficitPairs,
            ((eu_ba - r.delta_ba()) - (eu_ca - r.delta_ca())).abs(),
        ),
        (
            Identity::RightDeficitMutual,
            (r.right.definition - r.right.mutual_form).abs(),
        ),
        (
            Identity::RightDeficitEntropic,
            (r.right.definition - right_entropic).abs(),
        ),
        (
            Identity::RightDeficitUnlocalizable,
            (r.right.definition - r.right.unlocalizable_form).abs(),
        ),
        (Identity::LeftPolygamy, r.left.definition.max(0.0)),
        (Identity::RightPolygamy, r.right.definition.max(0.0)),
    ];
    report.residuals = residuals
        .into_iter()
        .map(|(identity, value)| Residual { identity, value })
        .collect();
    Ok(report)
}

/// Four-party deficits against the interaction-information bound.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadReport {
    pub s_a: Bits,
    pub left: Bits,
    pub right: Bits,
    /// `½ I(ρ_ABC)`.
    pub bound: Bits,
    pub residuals: Vec<Residual>,
}

pub fn quad_report(psi: &DensityMatrix, cfg: &OptConfig) -> Result<QuadReport> {
    let l = require_pure(psi, 4)?;
    let s_a = von_neumann_entropy(&psi.partial_trace(&[l[0].as_str()])?);
    let (left, left_pairs) = quad_pairs(psi, Direction::Left, cfg)?;
    let (right, _) = quad_pairs(psi, Direction::Right, cfg)?;
    let bound = quad_upper_bound(psi)?;
    // S(A) − ½ Σ_X I(A:X) equals ½ I(ρ_ABC) for any four-party pure state
    let half_mutual: f64 = left_pairs.iter().map(|p| 0.5 * p.mutual).sum();
    let residuals = vec![
        Residual {
            identity: Identity::QuadLeftBound,
            value: (left - bound).max(0.0),
        },
        Residual {
            identity: Identity::QuadRightBound,
            value: (right - bound).max(0.0),
        },
        Residual {
            identity: Identity::QuadBoundAlgebra,
            value: (s_a - half_mutual - bound).abs(),
        },
    ];
    Ok(QuadReport {
        s_a,
        left,
        right,
        bound,
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{haar_random_pure, StateVector, SubsystemLayout, C64};
    use approx::assert_abs_diff_eq;
    use nalgebra::DVector;
    use std::f64::consts::PI;

    fn ghz(n: usize, theta: f64) -> DensityMatrix {
        let labels: Vec<String> = (0..n).map(|i| char::from(b'A' + i as u8).to_string()).collect();
        let mut a = DVector::zeros(1 << n);
        a[0] = C64::new(theta.cos(), 0.0);
        a[(1 << n) - 1] = C64::new(theta.sin(), 0.0);
        StateVector::new(a, SubsystemLayout::new(labels, vec![2; n]).unwrap())
            .unwrap()
            .density()
    }

    fn h(p: f64) -> f64 {
        if p <= 0.0 || p >= 1.0 {
            0.0
        } else {
            -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
        }
    }

    fn fast() -> OptConfig {
        OptConfig {
            restarts: 8,
            ..OptConfig::default()
        }
    }

    #[test]
    fn ghz3_deficits_reach_minus_one() {
        let psi = ghz(3, PI / 4.0);
        let left = deficit_left_tri(&psi, &fast()).unwrap();
        assert_abs_diff_eq!(left.definition, -1.0, epsilon = 1e-3);
        assert_abs_diff_eq!(left.unlocalizable_form, -1.0, epsilon = 1e-3);
        let right = deficit_right_tri(&psi, &fast()).unwrap();
        assert_abs_diff_eq!(right.definition, -1.0, epsilon = 1e-3);
        assert_abs_diff_eq!(right.mutual_form, -1.0, epsilon = 1e-3);
        assert_abs_diff_eq!(right.unlocalizable_form, -1.0, epsilon = 1e-3);
    }

    #[test]
    fn product_states_have_zero_deficits() {
        let psi = ghz(3, 0.0);
        assert_abs_diff_eq!(deficit_left_tri(&psi, &fast()).unwrap().definition, 0.0, epsilon = 1e-6);
        let right = deficit_right_tri(&psi, &fast()).unwrap();
        assert_abs_diff_eq!(right.definition, 0.0, epsilon = 1e-6);
        assert_abs_diff_eq!(right.mutual_form, 0.0, epsilon = 1e-6);
        let quad = ghz(4, 0.0);
        assert_abs_diff_eq!(
            deficit_quad(&quad, Direction::Left, &fast()).unwrap(),
            0.0,
            epsilon = 1e-6
        );
        assert_abs_diff_eq!(
            deficit_quad(&quad, Direction::Right, &fast()).unwrap(),
            0.0,
            epsilon = 1e-6
        );
        assert_abs_diff_eq!(quad_upper_bound(&quad).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn ghz4_bound_is_half_binary_entropy() {
        for k in 0..=8 {
            let theta = PI / 2.0 * k as f64 / 8.0;
            let want = -0.5 * h(theta.cos().powi(2));
            assert_abs_diff_eq!(quad_upper_bound(&ghz(4, theta)).unwrap(), want, epsilon = 1e-12);
        }
        let psi = ghz(4, PI / 4.0);
        let report = quad_report(&psi, &fast()).unwrap();
        assert_abs_diff_eq!(report.bound, -0.5, epsilon = 1e-12);
        assert!(report.left <= -0.5 + 1e-3, "left {}", report.left);
        assert!(report.right <= -0.5 + 1e-3, "right {}", report.right);
        assert!(report.residuals.iter().all(|r| r.value <= 1e-3));
    }

    #[test]
    fn ghz3_report_values() {
        let theta: f64 = 0.3;
        let hv = h(theta.cos().powi(2));
        let report = identity_report(&ghz(3, theta), &fast()).unwrap();
        assert_abs_diff_eq!(report.j_ab, hv, epsilon = 1e-6);
        assert_abs_diff_eq!(report.eu_ab, 0.0, epsilon = 1e-6);
        assert_abs_diff_eq!(report.ea_ac, hv, epsilon = 1e-6);
        assert_abs_diff_eq!(report.ef_ac, 0.0, epsilon = 1e-6);
        assert_abs_diff_eq!(report.delta_ab() - report.discord_ab(), hv, epsilon = 1e-6);
        assert_abs_diff_eq!(report.right.mutual_form, -hv, epsilon = 1e-6);
        assert!(report.max_residual() <= 1e-6, "{:?}", report.residuals);
    }

    #[test]
    fn random_states_satisfy_every_identity() {
        let layout = SubsystemLayout::qubits(&["A", "B", "C"]).unwrap();
        for seed in 0..3 {
            let psi = haar_random_pure(&layout, seed).density();
            let report = identity_report(&psi, &fast()).unwrap();
            assert_eq!(report.residuals.len(), Identity::TRIPARTITE.len());
            for r in &report.residuals {
                assert!(r.value <= 1e-3, "seed {seed} {}: {}", r.identity, r.value);
            }
            assert!(report.left.definition <= 1e-3);
            assert!(report.right.definition <= 1e-3);
        }
    }

    #[test]
    fn mixed_and_wrong_arity_inputs_are_rejected() {
        let mixed = DensityMatrix::maximally_mixed(SubsystemLayout::qubits(&["A", "B", "C"]).unwrap());
        assert!(matches!(deficit_left_tri(&mixed, &fast()), Err(Error::NotPure { .. })));
        assert!(matches!(identity_report(&mixed, &fast()), Err(Error::NotPure { .. })));
        assert!(matches!(
            quad_upper_bound(&ghz(3, 0.2)),
            Err(Error::PartyCount { expected: 4, found: 3 })
        ));
        assert!(matches!(
            deficit_right_tri(&ghz(4, 0.2), &fast()),
            Err(Error::PartyCount { expected: 3, found: 4 })
        ));
    }

    #[test]
    fn identity_names_are_unique() {
        let mut names: Vec<&str> = Identity::TRIPARTITE
            .iter()
            .chain(&Identity::QUADRIPARTITE)
            .map(|i| i.name())
            .collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), 17);
    }
}
