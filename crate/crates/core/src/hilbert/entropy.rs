use serde::{Deserialize, Serialize};

use super::density::{hermitian_eigen, DensityOperator};
use crate::error::{Error, Result};

/// Eigenvalues at or below this are treated as outside the support.
const SUPPORT_TOL: f64 = 1e-13;
/// Weight of `ρ` outside `supp σ` that makes `S(ρ‖σ)` infinite.
const LEAK_TOL: f64 = 1e-10;
const ROUNDING_TOL: f64 = 1e-12;

/// Logarithm base used when reporting entropies. All computations are in
/// nats; conversion happens at the reporting boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogBase {
    #[default]
    #[serde(alias = "e", alias = "ln")]
    Natural,
    #[serde(alias = "2", alias = "bits")]
    Two,
}

impl LogBase {
    /// Converts a value in nats into this base.
    pub fn from_nats(self, nats: f64) -> f64 {
        match self {
            LogBase::Natural => nats,
            LogBase::Two => nats / std::f64::consts::LN_2,
        }
    }
}

/// `-Σ p ln p` with `0 ln 0 = 0`.
pub fn shannon_entropy(p: &[f64]) -> f64 {
    -p.iter().filter(|&&x| x > 0.0).map(|&x| x * x.ln()).sum::<f64>()
}

/// `S(ρ) = -Tr ρ ln ρ` in nats.
pub fn von_neumann_entropy(rho: &DensityOperator) -> f64 {
    shannon_entropy(rho.eigenvalues()).max(0.0)
}

/// `S(ρ‖σ) = Tr ρ (ln ρ - ln σ)` in nats; `+∞` when `supp ρ ⊄ supp σ`.
pub fn relative_entropy(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: sigma.dim(),
        });
    }
    let (mu, vectors) = hermitian_eigen(sigma.matrix());
    let mut cross = 0.0;
    for (j, &m) in mu.iter().enumerate() {
        let v = vectors.column(j);
        let w = (v.adjoint() * rho.matrix() * v)[(0, 0)].re;
        if m <= SUPPORT_TOL {
            if w > LEAK_TOL {
                return Ok(f64::INFINITY);
            }
            continue;
        }
        cross += w * m.ln();
    }
    let value = -von_neumann_entropy(rho) - cross;
    // rounding noise only; a genuinely negative value is left visible
    Ok(if value < 0.0 && value > -ROUNDING_TOL { 0.0 } else { value })
}
