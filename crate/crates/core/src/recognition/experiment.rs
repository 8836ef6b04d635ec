//! JSON experiment files for multi-step recognition runs.
//!
//! ```json
//! {"n": 2, "basis": "fourier", "rho": [[1, 0], [0, 0]],
//!  "gamma": [[0.5, 0], [0, 0.5]], "policy": "sample", "seed": 7, "steps": 5}
//! ```
//!
//! `basis` is `"fourier"` (default), `"standard"` or `{"custom": matrix}` with
//! row `k` holding `b_k`. `policy` is `"sample"` (default), `"argmax"` or
//! `{"fixed": [i, j]}`. `rho` is a single matrix, repeated `steps` times
//! (default 1), or a list of matrices, optionally wrapped as
//! `{"sequence": [...]}`. A bare list that also reads as one `n × n` matrix
//! with complex entries is taken as a matrix; use the wrapped form to force a
//! sequence.

use serde::Deserialize;
use serde_json::Value;

use super::{recognize_sequence, BellSystem, Policy, RecognitionState, SignalBasis};
use crate::error::{Error, Result};
use crate::hilbert::json::matrix_from_value;
use crate::hilbert::{DensityOperator, Operator};

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisSpec {
    #[default]
    Fourier,
    Standard,
    Custom(#[serde(with = "crate::hilbert::json::matrix")] Operator),
}

impl BasisSpec {
    pub fn build(&self, n: usize) -> Result<SignalBasis> {
        let basis = match self {
            BasisSpec::Fourier => SignalBasis::fourier(n)?,
            BasisSpec::Standard => SignalBasis::standard(n)?,
            BasisSpec::Custom(m) => SignalBasis::custom(m)?,
        };
        if basis.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: basis.dim(),
            });
        }
        Ok(basis)
    }
}

#[derive(Debug, Clone)]
pub enum SignalSpec {
    Single(Operator),
    Sequence(Vec<Operator>),
}

impl SignalSpec {
    fn from_value(v: &Value, n: usize) -> Result<Self> {
        if let Some(obj) = v.as_object() {
            let seq = match (obj.len(), obj.get("sequence")) {
                (1, Some(seq)) => seq,
                _ => return Err(Error::Parse("rho object must be {\"sequence\": [...]}".into())),
            };
            return Self::sequence(seq);
        }
        match matrix_from_value(v) {
            Ok(m) if m.nrows() == n && m.ncols() == n => Ok(SignalSpec::Single(m)),
            single => Self::sequence(v).or_else(|e| match single {
                Ok(m) => Err(Error::DimensionMismatch {
                    expected: n,
                    found: m.nrows(),
                }),
                Err(_) => Err(e),
            }),
        }
    }

    fn sequence(v: &Value) -> Result<Self> {
        let items = v
            .as_array()
            .ok_or_else(|| Error::Parse("rho sequence must be an array".into()))?;
        items
            .iter()
            .map(matrix_from_value)
            .collect::<Result<Vec<_>>>()
            .map(SignalSpec::Sequence)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExperiment {
    n: usize,
    #[serde(default)]
    basis: BasisSpec,
    rho: Value,
    #[serde(with = "crate::hilbert::json::matrix")]
    gamma: Operator,
    #[serde(default = "default_policy")]
    policy: Policy,
    #[serde(default)]
    seed: u64,
    steps: Option<usize>,
}

fn default_policy() -> Policy {
    Policy::Sample
}

#[derive(Debug, Clone)]
pub struct Experiment {
    pub n: usize,
    pub basis: BasisSpec,
    pub signals: SignalSpec,
    pub gamma: Operator,
    pub policy: Policy,
    pub seed: u64,
    pub steps: Option<usize>,
}

impl Experiment {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawExperiment =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if raw.n == 0 {
            return Err(Error::Parse("n must be positive".into()));
        }
        Ok(Self {
            n: raw.n,
            signals: SignalSpec::from_value(&raw.rho, raw.n)?,
            basis: raw.basis,
            gamma: raw.gamma,
            policy: raw.policy,
            seed: raw.seed,
            steps: raw.steps,
        })
    }

    fn density(&self, m: &Operator) -> Result<DensityOperator> {
        if m.nrows() != self.n || m.ncols() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: if m.nrows() != self.n { m.nrows() } else { m.ncols() },
            });
        }
        DensityOperator::new(m.clone())
    }

    /// Signal states in the order they are presented.
    pub fn signal_states(&self) -> Result<Vec<DensityOperator>> {
        match &self.signals {
            SignalSpec::Single(m) => {
                let rho = self.density(m)?;
                Ok(vec![rho; self.steps.unwrap_or(1)])
            }
            SignalSpec::Sequence(ms) => {
                let steps = self.steps.unwrap_or(ms.len());
                if steps > ms.len() {
                    return Err(Error::InvalidParameter(format!(
                        "steps = {steps} exceeds the {} signals given",
                        ms.len()
                    )));
                }
                ms[..steps].iter().map(|m| self.density(m)).collect()
            }
        }
    }

    pub fn run(&self) -> Result<RecognitionState> {
        let bell = BellSystem::new(self.basis.build(self.n)?)?;
        let gamma = self.density(&self.gamma)?;
        let signals = self.signal_states()?;
        recognize_sequence(&gamma, &signals, &bell, self.policy, self.seed)
    }
}
