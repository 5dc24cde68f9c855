//! Parameterized state families and a plain-text format for custom states.
//!
//! Bell states: `|Φ+⟩ = (|00⟩ + |11⟩)/√2`, `|Ψ+⟩ = (|01⟩ + |10⟩)/√2`.
//!
//! Custom format: a header line of party dimensions (`2 2 2` or `2,2,2`),
//! then one amplitude per line as `re im`. Blank lines and lines starting
//! with `#` are skipped. Parties are labelled `A`, `B`, `C`, ...

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};
use std::fmt;
use std::str::FromStr;

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::tensor::{StateVector, SubsystemLayout, C64};

/// Allowed deviation of a custom state's norm from 1.
pub const CUSTOM_NORM_TOL: f64 = 1e-8;

/// Slack on θ so that grid endpoints computed in floating point are accepted.
const THETA_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `cosθ|000⟩ + sinθ|111⟩`
    Ghz3,
    /// `cosθ|0000⟩ + sinθ|1111⟩`
    Ghz4,
    /// `cosθ|Φ+⟩_AB|0⟩_C + sinθ|0⟩_A|Ψ+⟩_BC`
    Bellmix,
    Custom,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Ghz3 => "ghz3",
            Family::Ghz4 => "ghz4",
            Family::Bellmix => "bellmix",
            Family::Custom => "custom",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ghz3" => Ok(Family::Ghz3),
            "ghz4" => Ok(Family::Ghz4),
            "bellmix" => Ok(Family::Bellmix),
            "custom" => Ok(Family::Custom),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Amplitudes and party dimensions read from the custom text format.
#[derive(Debug, Clone, PartialEq)]
pub struct CustomState {
    pub dims: Vec<usize>,
    pub amplitudes: Vec<C64>,
}

impl FromStr for CustomState {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut dims: Option<Vec<usize>> = None;
        let mut amplitudes = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |message: String| Error::Parse { line: line_no, message };
            let fields: Vec<&str> = line
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|f| !f.is_empty())
                .collect();
            if dims.is_none() {
                let d = fields
                    .iter()
                    .map(|f| {
                        f.parse::<usize>()
                            .map_err(|e| parse_err(format!("bad dimension `{f}`: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if d.is_empty() || d.contains(&0) {
                    return Err(parse_err("dimensions must be positive".into()));
                }
                dims = Some(d);
                continue;
            }
            if fields.len() != 2 {
                return Err(parse_err(format!("expected `re im`, found {} fields", fields.len())));
            }
            let num = |f: &str| {
                f.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| parse_err(format!("bad number `{f}`")))
            };
            amplitudes.push(C64::new(num(fields[0])?, num(fields[1])?));
        }
        let dims = dims.ok_or(Error::Parse {
            line: 0,
            message: "missing dimension header".into(),
        })?;
        let total: usize = dims.iter().product();
        if amplitudes.len() != total {
            return Err(Error::DimensionMismatch {
                expected: total,
                found: amplitudes.len(),
            });
        }
        Ok(Self { dims, amplitudes })
    }
}

impl fmt::Display for CustomState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.dims.iter().map(usize::to_string).collect();
        writeln!(f, "{}", dims.join(" "))?;
        for a in &self.amplitudes {
            writeln!(f, "{:e} {:e}", a.re, a.im)?;
        }
        Ok(())
    }
}

impl CustomState {
    pub fn to_state(&self) -> Result<StateVector> {
        let layout = SubsystemLayout::lettered(&self.dims)?;
        let norm: f64 = self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > CUSTOM_NORM_TOL {
            return Err(Error::InvalidState(format!("custom amplitudes have norm {norm}")));
        }
        StateVector::normalized(DVector::from_vec(self.amplitudes.clone()), layout)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    pub family: Family,
    /// Radians in `[0, π/2]`; ignored for custom states.
    pub theta: f64,
    pub custom: Option<CustomState>,
}

impl FamilySpec {
    pub fn new(family: Family, theta: f64) -> Self {
        Self {
            family,
            theta,
            custom: None,
        }
    }

    pub fn custom(state: CustomState) -> Self {
        Self {
            family: Family::Custom,
            theta: 0.0,
            custom: Some(state),
        }
    }
}

pub fn check_theta(theta: f64) -> Result<f64> {
    if !(-THETA_SLACK..=FRAC_PI_2 + THETA_SLACK).contains(&theta) {
        return Err(Error::ThetaOutOfRange(theta));
    }
    Ok(theta.clamp(0.0, FRAC_PI_2))
}

fn from_entries(n: usize, entries: &[(usize, f64)]) -> Result<StateVector> {
    let labels: Vec<String> = (0..n).map(|i| char::from(b'A' + i as u8).to_string()).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let mut amps = DVector::zeros(1 << n);
    for &(i, v) in entries {
        amps[i] += C64::new(v, 0.0);
    }
    StateVector::normalized(amps, SubsystemLayout::qubits(&refs)?)
}

pub fn build(spec: &FamilySpec) -> Result<StateVector> {
    if spec.family == Family::Custom {
        return spec
            .custom
            .as_ref()
            .ok_or_else(|| Error::InvalidState("custom family needs amplitudes".into()))?
            .to_state();
    }
    let theta = check_theta(spec.theta)?;
    let (c, s) = (theta.cos(), theta.sin());
    match spec.family {
        Family::Ghz3 => from_entries(3, &[(0b000, c), (0b111, s)]),
        Family::Ghz4 => from_entries(4, &[(0b0000, c), (0b1111, s)]),
        Family::Bellmix => {
            let (c, s) = (c * FRAC_1_SQRT_2, s * FRAC_1_SQRT_2);
            from_entries(3, &[(0b000, c), (0b110, c), (0b001, s), (0b010, s)])
        }
        Family::Custom => unreachable!(),
    }
}
