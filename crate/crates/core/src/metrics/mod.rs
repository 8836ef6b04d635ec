//! Complexity `C`, transmitted complexity `T` and the quantum entropic chaos
//! degree `D` of a state change `ρ ↦ Λρ`.
//!
//! `C` is the von Neumann entropy. `T` is the Ohya mutual entropy
//! `sup Σ_k p_k S(ΛE_k ‖ Λρ)` and `D` is `inf Σ_k p_k S(ΛE_k)`, both over
//! Schatten decompositions `ρ = Σ_k p_k E_k`. For a non-degenerate spectrum
//! the decomposition is unique and both values are exact. Otherwise the
//! extremum is searched over Haar-random rotations inside each degenerate
//! eigenspace, which yields an upper bound for `D` and a lower bound for `T`.

mod axioms;
mod value;

pub use axioms::{axiom_suite, AxiomCheck, AxiomReport};
pub use value::{
    compare_channels, compare_signals, conjecture_batch, conjecture_experiment,
    random_conjecture_instance, value_of_information, Comparison, ConjectureInstance,
    ConjectureBatchSpec, ConjectureInstanceSpec, ConjectureRow, ConjectureSummary, Preference,
    ValueQuery,
};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::Channel;
use crate::error::{Error, Result};
use crate::hilbert::{
    random::random_unitary, relative_entropy, von_neumann_entropy, DensityOperator, LogBase,
    SchattenDecomposition, StateVector,
};

/// Controls the decomposition search behind `D` and `T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexityConfig {
    pub log_base: LogBase,
    /// Number of random decompositions tried when the spectrum is degenerate.
    pub restarts: usize,
    pub seed: u64,
    /// Eigenvalue gap below which eigenvalues count as equal.
    pub degeneracy_tol: f64,
}

impl Default for ComplexityConfig {
    fn default() -> Self {
        Self {
            log_base: LogBase::Natural,
            restarts: 1000,
            seed: 0,
            degeneracy_tol: 1e-9,
        }
    }
}

impl ComplexityConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidParameter("restarts must be at least 1".into()));
        }
        if !(self.degeneracy_tol > 0.0) {
            return Err(Error::InvalidParameter("degeneracy tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// `C(ρ) = S(ρ)` in nats.
pub fn complexity(rho: &DensityOperator) -> f64 {
    von_neumann_entropy(rho)
}

/// The two sums evaluated on one Schatten decomposition, in nats.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecompositionValue {
    /// `Σ_k p_k S(ΛE_k)`
    pub chaos_sum: f64,
    /// `Σ_k p_k S(ΛE_k ‖ Λρ)`
    pub mutual_sum: f64,
}

/// Summary of the decomposition search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchStats {
    /// Decompositions evaluated, the eigenbasis itself included.
    pub evaluated: usize,
    /// Smallest `Σ p_k S(ΛE_k)` seen.
    pub best: f64,
    /// Largest `Σ p_k S(ΛE_k)` seen.
    pub worst: f64,
}

/// Result of a quantum chaos degree evaluation. Entropic values are in the
/// configured log base.
#[derive(Debug, Clone, Serialize)]
pub struct ChaosDegreeReport {
    #[serde(rename = "D")]
    pub chaos_degree: f64,
    #[serde(rename = "T")]
    pub transmitted: f64,
    #[serde(rename = "S_out")]
    pub output_entropy: f64,
    pub degenerate: bool,
    /// Random restarts performed (zero when the decomposition is unique).
    pub restarts: usize,
    pub seed: u64,
    pub log_base: LogBase,
    pub search: SearchStats,
    /// Weights of the decomposition attaining `D`.
    pub weights: Vec<f64>,
    #[serde(skip)]
    pub vectors: Vec<StateVector>,
}

fn require_linear_tp(channel: &Channel, dim: usize) -> Result<()> {
    if !channel.is_linear() {
        return Err(Error::NonlinearChannel);
    }
    if !channel.is_trace_preserving() {
        return Err(Error::NotTracePreserving);
    }
    if channel.input_dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: channel.input_dim(),
            found: dim,
        });
    }
    Ok(())
}

/// Rotates each degenerate eigenspace by an independent Haar unitary.
fn rotated(decomp: &SchattenDecomposition, seed: u64) -> Vec<StateVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vectors = decomp.vectors.clone();
    for block in decomp.degenerate_blocks() {
        let d = block.len();
        let v = random_unitary(d, &mut rng);
        for (c, target) in block.clone().enumerate() {
            let mut acc = StateVector::zeros(decomp.vectors[0].len());
            for (r, source) in block.clone().enumerate() {
                acc += &decomp.vectors[source] * v[(r, c)];
            }
            vectors[target] = acc;
        }
    }
    vectors
}

fn evaluate(
    weights: &[f64],
    vectors: &[StateVector],
    channel: &Channel,
    image: &DensityOperator,
) -> Result<DecompositionValue> {
    let mut chaos_sum = 0.0;
    let mut mutual_sum = 0.0;
    for (p, v) in weights.iter().zip(vectors) {
        if *p <= 0.0 {
            continue;
        }
        let out = channel.apply(&DensityOperator::pure(v)?)?;
        chaos_sum += p * von_neumann_entropy(&out);
        mutual_sum += p * relative_entropy(&out, image)?;
    }
    Ok(DecompositionValue {
        chaos_sum,
        mutual_sum,
    })
}

struct Search {
    decomp: SchattenDecomposition,
    image: DensityOperator,
    /// `(restart index, vectors, value)`; index `None` is the eigenbasis.
    values: Vec<(Option<u64>, DecompositionValue)>,
    degenerate: bool,
}

fn search(rho: &DensityOperator, channel: &Channel, cfg: &ComplexityConfig) -> Result<Search> {
    cfg.validate()?;
    require_linear_tp(channel, rho.dim())?;
    let decomp = rho.spectral_decompose_with_tol(cfg.degeneracy_tol);
    let image = channel.apply(rho)?;
    let degenerate = decomp.is_degenerate();
    let mut values = vec![(None, evaluate(&decomp.weights, &decomp.vectors, channel, &image)?)];
    if degenerate {
        let restarts: Result<Vec<_>> = (0..cfg.restarts as u64)
            .into_par_iter()
            .map(|r| {
                let seed = cfg.seed.wrapping_add(r);
                let vectors = rotated(&decomp, seed);
                evaluate(&decomp.weights, &vectors, channel, &image).map(|v| (Some(r), v))
            })
            .collect();
        values.extend(restarts?);
    }
    Ok(Search {
        decomp,
        image,
        values,
        degenerate,
    })
}

/// Every decomposition value evaluated by the search, eigenbasis first.
pub fn decomposition_values(
    rho: &DensityOperator,
    channel: &Channel,
    cfg: &ComplexityConfig,
) -> Result<Vec<DecompositionValue>> {
    Ok(search(rho, channel, cfg)?
        .values
        .into_iter()
        .map(|(_, v)| v)
        .collect())
}

/// Transmitted complexity `T(ρ; Λ)` in nats; a lower bound on the supremum
/// when the spectrum of `ρ` is degenerate.
pub fn transmitted_complexity(
    rho: &DensityOperator,
    channel: &Channel,
    cfg: &ComplexityConfig,
) -> Result<f64> {
    let s = search(rho, channel, cfg)?;
    Ok(s.values
        .iter()
        .map(|(_, v)| v.mutual_sum)
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Quantum entropic chaos degree `D(ρ; Λ)` with the matching `T` and
/// `S(Λρ)`.
pub fn chaos_degree_quantum(
    rho: &DensityOperator,
    channel: &Channel,
    cfg: &ComplexityConfig,
) -> Result<ChaosDegreeReport> {
    let s = search(rho, channel, cfg)?;
    // lexicographic (value, index) minimum keeps the argmin schedule-independent
    let (best_idx, best) = s
        .values
        .iter()
        .min_by(|a, b| {
            a.1.chaos_sum
                .total_cmp(&b.1.chaos_sum)
                .then_with(|| a.0.cmp(&b.0))
        })
        .map(|(i, v)| (*i, *v))
        .expect("at least the eigenbasis is evaluated");
    let worst = s
        .values
        .iter()
        .map(|(_, v)| v.chaos_sum)
        .fold(f64::NEG_INFINITY, f64::max);
    let transmitted = s
        .values
        .iter()
        .map(|(_, v)| v.mutual_sum)
        .fold(f64::NEG_INFINITY, f64::max);
    let vectors = match best_idx {
        None => s.decomp.vectors.clone(),
        Some(r) => rotated(&s.decomp, cfg.seed.wrapping_add(r)),
    };
    let base = cfg.log_base;
    Ok(ChaosDegreeReport {
        chaos_degree: base.from_nats(best.chaos_sum.max(0.0)),
        transmitted: base.from_nats(transmitted.max(0.0)),
        output_entropy: base.from_nats(von_neumann_entropy(&s.image)),
        degenerate: s.degenerate,
        restarts: if s.degenerate { cfg.restarts } else { 0 },
        seed: cfg.seed,
        log_base: base,
        search: SearchStats {
            evaluated: s.values.len(),
            best: base.from_nats(best.chaos_sum),
            worst: base.from_nats(worst),
        },
        weights: s.decomp.weights.clone(),
        vectors,
    })
}

/// Behaviour of a dynamics judged from chaos degrees over a parameter window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DynamicsLabel {
    Stable,
    WeakStable,
    Chaotic,
}

impl DynamicsLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            DynamicsLabel::Stable => "stable",
            DynamicsLabel::WeakStable => "weak_stable",
            DynamicsLabel::Chaotic => "chaotic",
        }
    }
}

impl std::fmt::Display for DynamicsLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `D = 0` everywhere is stable, a positive constant is weak stable,
/// anything else chaotic.
pub fn classify_dynamics(values: &[f64], eps_zero: f64, eps_const: f64) -> Result<DynamicsLabel> {
    if values.is_empty() {
        return Err(Error::InvalidParameter("empty chaos degree window".into()));
    }
    if values.iter().all(|d| d.abs() <= eps_zero) {
        return Ok(DynamicsLabel::Stable);
    }
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    if max - min <= eps_const && mean > eps_zero {
        return Ok(DynamicsLabel::WeakStable);
    }
    Ok(DynamicsLabel::Chaotic)
}
