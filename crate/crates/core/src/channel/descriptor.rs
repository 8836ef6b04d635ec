use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hilbert::{json, Operator};

use super::{Channel, StochasticMatrix, TraceClassWeight};

/// JSON form of a channel, tagged by `kind`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ChannelDescriptor {
    Ktau {
        #[serde(with = "json::matrix")]
        matrix: Operator,
    },
    KtauHat {
        #[serde(with = "json::matrix")]
        matrix: Operator,
    },
    Unitary {
        #[serde(with = "json::matrix")]
        matrix: Operator,
    },
    Kraus {
        #[serde(with = "json::matrix_list")]
        kraus_ops: Vec<Operator>,
    },
    Stochastic {
        #[serde(rename = "P")]
        p: Vec<Vec<f64>>,
    },
    /// Identity channel on `C^n`.
    Identity { n: usize },
    /// `ρ ↦ I/n`.
    Depolarizing { n: usize },
}

impl ChannelDescriptor {
    pub fn build(&self) -> Result<Channel> {
        Ok(match self {
            Self::Ktau { matrix } => Channel::KTau(TraceClassWeight::new(matrix.clone())?),
            Self::KtauHat { matrix } => Channel::KTauHat(TraceClassWeight::new(matrix.clone())?),
            Self::Unitary { matrix } => Channel::unitary(matrix.clone())?,
            Self::Kraus { kraus_ops } => Channel::kraus(kraus_ops.clone())?,
            Self::Stochastic { p } => Channel::stochastic(StochasticMatrix::from_rows(p)?),
            Self::Identity { n } => Channel::identity(*n),
            Self::Depolarizing { n } => Channel::completely_depolarizing(*n),
        })
    }
}
