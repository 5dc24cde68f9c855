//! Scalar quantities a sweep can tabulate.

use std::fmt;
use std::str::FromStr;

use udiscord::correlations::{
    classical_correlation_j, eoa_numeric, eof_numeric_oracle, eof_wootters, one_way_discord_delta, quantum_discord_d,
    unlocalizable_entanglement_eu,
};
use udiscord::entropy::{conditional_entropy, interaction_information, mutual_information, von_neumann_entropy, Bits};
use udiscord::families::Family;
use udiscord::optimize::OptConfig;
use udiscord::polygamy::{deficit_left_tri, deficit_quad, deficit_right_tri, quad_upper_bound, Direction};
use udiscord::{DensityMatrix, Result};

/// Pair-correlation kinds. The second party of the pair is the measured one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    J,
    D,
    Eu,
    Delta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    /// `(δ_u − D)(ρ_AB)`, measuring `B`.
    Fig1a,
    /// `S(B|C)`.
    Fig1b,
    /// `I(ρ_BC) − 2 E_a(ρ_BC)`.
    Fig2a,
    /// `½ I(ρ_ABC)` of a four-party state.
    Fig2b,
    Entropy(usize),
    ConditionalBGivenC,
    ConditionalAGivenB,
    Mutual(usize, usize),
    Interaction,
    Pair(PairKind, usize, usize),
    EofAc,
    Eoa(usize, usize),
    /// `(E_a − E_f)(ρ_AC)`.
    AssistanceGapAc,
    LeftDeficit,
    RightDeficit,
    QuadLeft,
    QuadRight,
}

const LETTERS: [char; 4] = ['a', 'b', 'c', 'd'];

fn party(c: char) -> Option<usize> {
    LETTERS.iter().position(|&l| l == c)
}

fn pair_of(s: &str) -> Option<(usize, usize)> {
    let mut it = s.chars();
    let (x, y) = (party(it.next()?)?, party(it.next()?)?);
    (it.next().is_none() && x != y && x < 3 && y < 3).then_some((x, y))
}

impl Quantity {
    /// Every accepted key, for help text.
    pub fn catalog() -> Vec<String> {
        let mut out: Vec<String> = [
            "fig1a",
            "fig1b",
            "fig2a",
            "fig2b",
            "s_a",
            "s_b",
            "s_c",
            "s_b_given_c",
            "s_a_given_b",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        out.extend(["mutual_ab", "mutual_ac", "mutual_bc", "interaction"].map(String::from));
        for kind in ["j", "d", "eu", "delta"] {
            out.push(format!("{kind}_<xy>"));
        }
        out.extend(
            [
                "ef_ac",
                "ea_<xy>",
                "ea_minus_ef_ac",
                "left_deficit",
                "right_deficit",
                "quad_left",
                "quad_right",
                "quad_bound",
            ]
            .map(String::from),
        );
        out
    }

    /// Number of parties the quantity is defined on.
    pub fn parties(self) -> usize {
        match self {
            Quantity::Fig2b | Quantity::QuadLeft | Quantity::QuadRight => 4,
            _ => 3,
        }
    }

    /// Family used when none is given on the command line.
    pub fn default_family(self) -> Family {
        match self {
            Quantity::Fig1b => Family::Bellmix,
            q if q.parties() == 4 => Family::Ghz4,
            _ => Family::Ghz3,
        }
    }

    pub fn evaluate(self, psi: &DensityMatrix, cfg: &OptConfig) -> Result<Bits> {
        let labels: Vec<&str> = psi.layout().labels().iter().map(String::as_str).collect();
        let l = |i: usize| labels[i];
        let pair = |x: usize, y: usize| psi.partial_trace(&[l(x), l(y)]);
        match self {
            Quantity::Fig1a => {
                let ab = pair(0, 1)?;
                Ok(one_way_discord_delta(&ab, l(1), cfg)? - quantum_discord_d(&ab, l(1), cfg)?)
            }
            Quantity::Fig1b | Quantity::ConditionalBGivenC => conditional_entropy(psi, l(1), &[l(2)]),
            Quantity::ConditionalAGivenB => conditional_entropy(psi, l(0), &[l(1)]),
            Quantity::Fig2a => {
                let bc = pair(1, 2)?;
                Ok(mutual_information(&bc, &[l(1)], &[l(2)])? - 2.0 * eoa_numeric(&bc, cfg)?)
            }
            Quantity::Fig2b => quad_upper_bound(psi),
            Quantity::Entropy(i) => Ok(von_neumann_entropy(&psi.partial_trace(&[l(i)])?)),
            Quantity::Mutual(x, y) => mutual_information(&pair(x, y)?, &[l(x)], &[l(y)]),
            Quantity::Interaction => interaction_information(psi),
            Quantity::Pair(kind, x, y) => {
                let rho = pair(x, y)?;
                match kind {
                    PairKind::J => classical_correlation_j(&rho, l(y), cfg),
                    PairKind::D => quantum_discord_d(&rho, l(y), cfg),
                    PairKind::Eu => unlocalizable_entanglement_eu(&rho, l(y), cfg),
                    PairKind::Delta => one_way_discord_delta(&rho, l(y), cfg),
                }
            }
            Quantity::EofAc => eof(&pair(0, 2)?, cfg),
            Quantity::Eoa(x, y) => eoa_numeric(&pair(x, y)?, cfg),
            Quantity::AssistanceGapAc => {
                let ac = pair(0, 2)?;
                Ok(eoa_numeric(&ac, cfg)? - eof(&ac, cfg)?)
            }
            Quantity::LeftDeficit => Ok(deficit_left_tri(psi, cfg)?.definition),
            Quantity::RightDeficit => Ok(deficit_right_tri(psi, cfg)?.definition),
            Quantity::QuadLeft => deficit_quad(psi, Direction::Left, cfg),
            Quantity::QuadRight => deficit_quad(psi, Direction::Right, cfg),
        }
    }
}

fn eof(rho: &DensityMatrix, cfg: &OptConfig) -> Result<Bits> {
    if rho.layout().dims() == [2, 2] {
        eof_wootters(rho)
    } else {
        eof_numeric_oracle(rho, cfg)
    }
}

impl FromStr for Quantity {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let key = s.trim().to_ascii_lowercase();
        let fixed = match key.as_str() {
            "fig1a" => Some(Quantity::Fig1a),
            "fig1b" => Some(Quantity::Fig1b),
            "fig2a" => Some(Quantity::Fig2a),
            "fig2b" | "quad_bound" => Some(Quantity::Fig2b),
            "s_a" => Some(Quantity::Entropy(0)),
            "s_b" => Some(Quantity::Entropy(1)),
            "s_c" => Some(Quantity::Entropy(2)),
            "s_b_given_c" => Some(Quantity::ConditionalBGivenC),
            "s_a_given_b" => Some(Quantity::ConditionalAGivenB),
            "interaction" => Some(Quantity::Interaction),
            "ef_ac" => Some(Quantity::EofAc),
            "ea_minus_ef_ac" => Some(Quantity::AssistanceGapAc),
            "left_deficit" => Some(Quantity::LeftDeficit),
            "right_deficit" => Some(Quantity::RightDeficit),
            "quad_left" => Some(Quantity::QuadLeft),
            "quad_right" => Some(Quantity::QuadRight),
            _ => None,
        };
        if let Some(q) = fixed {
            return Ok(q);
        }
        let unknown = || {
            format!(
                "unknown quantity `{s}`; expected one of {}",
                Quantity::catalog().join(", ")
            )
        };
        let (stem, tail) = key.rsplit_once('_').ok_or_else(unknown)?;
        let (x, y) = pair_of(tail).ok_or_else(unknown)?;
        let kind = match stem {
            "mutual" => return Ok(Quantity::Mutual(x.min(y), x.max(y))),
            "ea" => return Ok(Quantity::Eoa(x.min(y), x.max(y))),
            "j" => PairKind::J,
            "d" => PairKind::D,
            "eu" => PairKind::Eu,
            "delta" => PairKind::Delta,
            _ => return Err(unknown()),
        };
        Ok(Quantity::Pair(kind, x, y))
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = |i: usize| LETTERS[i];
        match *self {
            Quantity::Fig1a => write!(f, "fig1a"),
            Quantity::Fig1b => write!(f, "fig1b"),
            Quantity::Fig2a => write!(f, "fig2a"),
            Quantity::Fig2b => write!(f, "fig2b"),
            Quantity::Entropy(i) => write!(f, "s_{}", p(i)),
            Quantity::ConditionalBGivenC => write!(f, "s_b_given_c"),
            Quantity::ConditionalAGivenB => write!(f, "s_a_given_b"),
            Quantity::Mutual(x, y) => write!(f, "mutual_{}{}", p(x), p(y)),
            Quantity::Interaction => write!(f, "interaction"),
            Quantity::Pair(kind, x, y) => {
                let stem = match kind {
                    PairKind::J => "j",
                    PairKind::D => "d",
                    PairKind::Eu => "eu",
                    PairKind::Delta => "delta",
                };
                write!(f, "{stem}_{}{}", p(x), p(y))
            }
            Quantity::EofAc => write!(f, "ef_ac"),
            Quantity::Eoa(x, y) => write!(f, "ea_{}{}", p(x), p(y)),
            Quantity::AssistanceGapAc => write!(f, "ea_minus_ef_ac"),
            Quantity::LeftDeficit => write!(f, "left_deficit"),
            Quantity::RightDeficit => write!(f, "right_deficit"),
            Quantity::QuadLeft => write!(f, "quad_left"),
            Quantity::QuadRight => write!(f, "quad_right"),
        }
    }
}
