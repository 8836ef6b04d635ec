//! Recognition channels on `H₁ ⊗ H₂ ⊗ H₃ = L2(G)⊗L2(G)⊗L2(G)`.
//!
//! A signal `ρ` on the processing space `H₁` meets the memory `γ`, stored as
//! the entangled state `e(γ) = JγJ*` on `H₂ ⊗ H₃`. Measuring `F_{i,j}` on
//! `H₁ ⊗ H₂` and keeping `H₃` yields the updated memory `Λ_{i,j}(ρ ⊗ γ)`,
//! computed here in three equivalent forms.

mod experiment;

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::channel::{k_h_apply, k_tau_hat_apply, TraceClassWeight, EPS_PROB};
use crate::error::{Error, Result};
use crate::hilbert::{
    basis_vector, diag_embedding, ket_bra, mult_operator, ones, shift_unitary,
    tensor, tensor_vec, von_neumann_entropy, DensityOperator, Operator, StateVector, C64,
};

pub use experiment::{BasisSpec, Experiment, SignalSpec};

/// Tolerance on the Gram matrix of a signal basis.
pub const GRAM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisKind {
    Fourier,
    Standard,
    Custom,
}

/// Orthonormal elementary signals `(b_k)` in `L2(G)`.
#[derive(Debug, Clone)]
pub struct SignalBasis {
    kind: BasisKind,
    vectors: Vec<StateVector>,
    uniform_modulus: bool,
}

impl SignalBasis {
    /// `b_k(m) = n^{-1/2} exp(2πi km / n)`.
    pub fn fourier(n: usize) -> Result<Self> {
        check_dim(n)?;
        let scale = 1.0 / (n as f64).sqrt();
        let vectors = (0..n)
            .map(|k| {
                StateVector::from_fn(n, |m, _| {
                    C64::from_polar(scale, 2.0 * PI * ((k * m) % n) as f64 / n as f64)
                })
            })
            .collect();
        Self::build(BasisKind::Fourier, vectors)
    }

    pub fn standard(n: usize) -> Result<Self> {
        check_dim(n)?;
        Self::build(BasisKind::Standard, (0..n).map(|k| basis_vector(n, k)).collect())
    }

    /// Row `k` of `rows` is `b_k`.
    pub fn custom(rows: &Operator) -> Result<Self> {
        if !rows.is_square() {
            return Err(Error::DimensionMismatch {
                expected: rows.nrows(),
                found: rows.ncols(),
            });
        }
        check_dim(rows.nrows())?;
        let vectors = (0..rows.nrows()).map(|k| rows.row(k).transpose()).collect();
        Self::build(BasisKind::Custom, vectors)
    }

    fn build(kind: BasisKind, vectors: Vec<StateVector>) -> Result<Self> {
        let n = vectors.len();
        let mut defect: f64 = 0.0;
        for k in 0..n {
            for l in 0..n {
                let g = vectors[k].dotc(&vectors[l]);
                let target = if k == l { 1.0 } else { 0.0 };
                defect = defect.max((g - C64::new(target, 0.0)).norm());
            }
        }
        if defect > GRAM_TOL {
            return Err(Error::InvalidParameter(format!(
                "signal basis is not orthonormal (Gram defect {defect:.3e})"
            )));
        }
        let modulus = 1.0 / (n as f64).sqrt();
        let uniform_modulus = vectors
            .iter()
            .all(|b| b.iter().all(|z| (z.norm() - modulus).abs() <= GRAM_TOL));
        Ok(Self {
            kind,
            vectors,
            uniform_modulus,
        })
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vector(&self, k: usize) -> &StateVector {
        &self.vectors[k]
    }

    pub fn vectors(&self) -> &[StateVector] {
        &self.vectors
    }

    /// `|b_k(m)|` is the same for all `k`, `m`.
    pub fn uniform_modulus(&self) -> bool {
        self.uniform_modulus
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    Ok(())
}

/// `ξ_{k,l} = (B_k ⊗ U_l) J𝟏` and `F_{k,l} = |ξ_{k,l}⟩⟨ξ_{k,l}|`, where
/// `B_k` multiplies by `b_k`.
#[derive(Debug, Clone)]
pub struct BellSystem {
    basis: SignalBasis,
    xi: Vec<StateVector>,
}

impl BellSystem {
    pub fn new(basis: SignalBasis) -> Result<Self> {
        let n = basis.dim();
        let j1 = diag_embedding(n) * ones(n);
        let mut xi = Vec::with_capacity(n * n);
        for k in 0..n {
            let bk = mult_operator(basis.vector(k));
            for l in 0..n {
                xi.push(tensor(&bk, &shift_unitary(l, n)?) * &j1);
            }
        }
        Ok(Self { basis, xi })
    }

    pub fn basis(&self) -> &SignalBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    fn check_outcome(&self, i: usize, j: usize) -> Result<()> {
        let n = self.dim();
        if i >= n || j >= n {
            return Err(Error::InvalidParameter(format!(
                "outcome ({i}, {j}) outside 0..{n}"
            )));
        }
        Ok(())
    }

    pub fn xi(&self, k: usize, l: usize) -> &StateVector {
        &self.xi[k * self.dim() + l]
    }

    pub fn projection(&self, k: usize, l: usize) -> Operator {
        let v = self.xi(k, l);
        ket_bra(v, v)
    }

    /// `G_{i,j} = J*(U_j B_i* ⊗ 𝟏)`, an `n × n²` matrix.
    pub fn g_operator(&self, i: usize, j: usize) -> Result<Operator> {
        self.check_outcome(i, j)?;
        let n = self.dim();
        let ub = shift_unitary(j, n)? * mult_operator(self.basis.vector(i)).adjoint();
        Ok(diag_embedding(n).adjoint() * tensor(&ub, &Operator::identity(n, n)))
    }
}

fn check_states(bell: &BellSystem, rho: &DensityOperator, gamma: &DensityOperator) -> Result<()> {
    let n = bell.dim();
    for d in [rho.dim(), gamma.dim()] {
        if d != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: d,
            });
        }
    }
    Ok(())
}

/// `e(γ) = JγJ*` on `H₂ ⊗ H₃`.
pub fn entangle(gamma: &DensityOperator) -> Result<DensityOperator> {
    let j = diag_embedding(gamma.dim());
    DensityOperator::new(&j * gamma.matrix() * j.adjoint())
}

/// `(F_{i,j} ⊗ 𝟏)(ρ ⊗ e(γ))(F_{i,j} ⊗ 𝟏)` on `H₁ ⊗ H₂ ⊗ H₃`, unnormalized.
/// This is an `n³ × n³` matrix; the channel functions below never form it.
pub fn measured_joint_state(
    i: usize,
    j: usize,
    rho: &DensityOperator,
    gamma: &DensityOperator,
    bell: &BellSystem,
) -> Result<Operator> {
    bell.check_outcome(i, j)?;
    check_states(bell, rho, gamma)?;
    let n = bell.dim();
    let f = tensor(&bell.projection(i, j), &Operator::identity(n, n));
    let joint = tensor(rho.matrix(), entangle(gamma)?.matrix());
    Ok(&f * joint * &f)
}

/// `Tr_{H₁⊗H₂}` of [`measured_joint_state`], evaluated as `W*(ρ ⊗ e(γ))W`
/// with `W = |ξ_{i,j}⟩ ⊗ 𝟏`, since `F_{i,j} ⊗ 𝟏 = WW*` and `W*W = 𝟏`.
fn reduced_measured_state(
    i: usize,
    j: usize,
    rho: &DensityOperator,
    gamma: &DensityOperator,
    bell: &BellSystem,
) -> Result<Operator> {
    bell.check_outcome(i, j)?;
    check_states(bell, rho, gamma)?;
    let n = bell.dim();
    let xi = Operator::from_column_slice(n * n, 1, bell.xi(i, j).as_slice());
    let w = tensor(&xi, &Operator::identity(n, n));
    let joint = tensor(rho.matrix(), entangle(gamma)?.matrix());
    Ok(w.adjoint() * (joint * &w))
}

/// Probability of outcome `(i, j)`: the full trace of the measured state.
pub fn outcome_probability(
    i: usize,
    j: usize,
    rho: &DensityOperator,
    gamma: &DensityOperator,
    bell: &BellSystem,
) -> Result<f64> {
    Ok(reduced_measured_state(i, j, rho, gamma, bell)?.trace().re.max(0.0))
}

/// All `n²` outcome probabilities in row-major `(i, j)` order, evaluated as
/// `Tr G_{i,j}(ρ ⊗ γ)G_{i,j}*`.
pub fn outcome_distribution(
    rho: &DensityOperator,
    gamma: &DensityOperator,
    bell: &BellSystem,
) -> Result<Vec<f64>> {
    check_states(bell, rho, gamma)?;
    let n = bell.dim();
    let joint = tensor(rho.matrix(), gamma.matrix());
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let g = bell.g_operator(i, j)?;
            out.push((&g * &joint * g.adjoint()).trace().re.max(0.0));
        }
    }
    Ok(out)
}

fn require_probability(i: usize, j: usize, probability: f64) -> Result<()> {
    if !(probability > EPS_PROB) {
        return Err(Error::ZeroProbabilityOutcome { i, j, probability });
    }
    Ok(())
}

/// `Λ_{i,j}(ρ ⊗ γ)`: partial trace over `H₁ ⊗ H₂` of the measured state,
/// normalized by its full trace.
pub fn lambda_direct(
    i: usize,
    j: usize,
    rho: &DensityOperator,
    gamma: &DensityOperator,
    bell: &BellSystem,
) -> Result<DensityOperator> {
    let reduced = reduced_measured_state(i, j, rho, gamma, bell)?;
    require_probability(i, j, reduced.trace().re)?;
    DensityOperator::from_positive(reduced)
}

/// Spectral form from explicit representations `ρ = Σ α_k |g_k⟩⟨g_k|`,
/// `γ = Σ β_l |h_l⟩⟨h_l|`.
pub fn lambda_spectral_from(
    i: usize,
    j: usize,
    rho: (&[f64], &[StateVector]),
    gamma: (&[f64], &[StateVector]),
    bell: &BellSystem,
) -> Result<DensityOperator> {
    let n = bell.dim();
    let g = bell.g_operator(i, j)?;
    let mut acc = Operator::zeros(n, n);
    let mut norm = 0.0;
    for (&alpha, gk) in rho.0.iter().zip(rho.1) {
        for (&beta, hl) in gamma.0.iter().zip(gamma.1) {
            let w = alpha * beta;
            if w == 0.0 {
                continue;
            }
            let v = &g * tensor_vec(gk, hl);
            norm += w * v.norm_squared();
            acc += ket_bra(&v, &v).scale(w);
        }
    }
    require_probability(i, j, norm)?;
    DensityOperator::from_positive(acc)
}

fn spectrum(d: &DensityOperator) -> (Vec<f64>, Vec<StateVector>) {
    let vecs = d.eigenvectors();
    (
        d.eigenvalues().to_vec(),
        (0..d.dim()).map(|k| vecs.column(k).into_owned()).collect(),
    )
}

/// `Σ α_k β_l |G_{i,j} g_k⊗h_l⟩⟨G_{i,j} g_k⊗h_l|`, normalized, using the
/// cached spectral decompositions of `ρ` and `γ`.
pub fn lambda_spectral(
    i: usize,
    j: usize,
    rho: &DensityOperator,
    gamma: &DensityOperator,
    bell: &BellSystem,
) -> Result<DensityOperator> {
    check_states(bell, rho, gamma)?;
    let (a, g) = spectrum(rho);
    let (b, h) = spectrum(gamma);
    lambda_spectral_from(i, j, (&a, &g), (&b, &h), bell)
}

/// `K̂_γ ∘ K^j ∘ K̂_{|b̄_i⟩⟨b̄_i|}(ρ)` with `K^j` conjugation by `U_j`.
pub fn lambda_composed(
    i: usize,
    j: usize,
    rho: &DensityOperator,
    gamma: &DensityOperator,
    bell: &BellSystem,
) -> Result<DensityOperator> {
    bell.check_outcome(i, j)?;
    check_states(bell, rho, gamma)?;
    let n = bell.dim();
    let b_bar = bell.basis().vector(i).map(|z| z.conj());
    let filtered = k_h_apply(&b_bar, rho.matrix())?;
    let tr = filtered.trace().re;
    if !(tr > EPS_PROB) {
        return Err(Error::OutsideDomain(format!(
            "rho is outside the domain of K_hat for |conj b_{i}><conj b_{i}| (trace {tr:.3e})"
        )));
    }
    let u = shift_unitary(j, n)?;
    let shifted = DensityOperator::from_positive(&u * filtered * u.adjoint())?;
    let tau = TraceClassWeight::new(gamma.matrix().clone())?;
    k_tau_hat_apply(&tau, &shifted).map_err(|e| match e {
        Error::OutsideDomain(msg) => Error::OutsideDomain(format!(
            "U_{j} K(rho) U_{j}* is outside the domain of K_hat for gamma: {msg}"
        )),
        other => other,
    })
}

/// How the outcome of each recognition step is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Policy {
    /// Draw from the outcome distribution with the experiment's seed.
    Sample,
    /// Most probable outcome; ties go to the first in row-major order.
    Argmax,
    Fixed(usize, usize),
}

#[derive(Debug, Clone, Serialize)]
pub struct HistoryRecord {
    pub t: usize,
    pub i: usize,
    pub j: usize,
    pub probability: f64,
    #[serde(with = "crate::hilbert::json::matrix")]
    pub gamma: Operator,
    pub entropy_of_gamma: f64,
}

#[derive(Debug, Clone)]
pub struct RecognitionState {
    pub gamma: DensityOperator,
    pub history: Vec<HistoryRecord>,
}

/// Inverse-CDF draw over `probs` with `u ∈ [0, 1)`; never returns an index
/// whose probability is at most [`EPS_PROB`].
fn inverse_cdf(probs: &[f64], u: f64) -> Option<usize> {
    let total: f64 = probs.iter().sum();
    let target = u * total;
    let mut acc = 0.0;
    let mut last = None;
    for (k, &p) in probs.iter().enumerate() {
        if p <= EPS_PROB {
            continue;
        }
        acc += p;
        last = Some(k);
        if target < acc {
            return last;
        }
    }
    last
}

/// Iterates `γ_{t+1} = Λ_{i_t, j_t}(ρ_t ⊗ γ_t)`.
pub fn recognize_sequence(
    initial: &DensityOperator,
    signals: &[DensityOperator],
    bell: &BellSystem,
    policy: Policy,
    seed: u64,
) -> Result<RecognitionState> {
    let n = bell.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gamma = initial.clone();
    let mut history = Vec::with_capacity(signals.len());
    for (t, rho) in signals.iter().enumerate() {
        let (i, j, probability) = match policy {
            Policy::Fixed(i, j) => {
                bell.check_outcome(i, j)?;
                (i, j, outcome_probability(i, j, rho, &gamma, bell)?)
            }
            Policy::Argmax | Policy::Sample => {
                let probs = outcome_distribution(rho, &gamma, bell)?;
                let k = if policy == Policy::Argmax {
                    let mut best = 0;
                    for (k, &p) in probs.iter().enumerate() {
                        if p > probs[best] {
                            best = k;
                        }
                    }
                    best
                } else {
                    let u: f64 = rng.random();
                    inverse_cdf(&probs, u).ok_or(Error::ZeroProbabilityOutcome {
                        i: 0,
                        j: 0,
                        probability: 0.0,
                    })?
                };
                (k / n, k % n, probs[k])
            }
        };
        gamma = lambda_direct(i, j, rho, &gamma, bell)?;
        history.push(HistoryRecord {
            t,
            i,
            j,
            probability,
            gamma: gamma.matrix().clone(),
            entropy_of_gamma: von_neumann_entropy(&gamma),
        });
    }
    Ok(RecognitionState { gamma, history })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{max_abs_diff, random};
    use rand_chacha::ChaCha8Rng;

    fn e0(n: usize) -> DensityOperator {
        DensityOperator::pure(&basis_vector(n, 0)).unwrap()
    }

    fn fourier(n: usize) -> BellSystem {
        BellSystem::new(SignalBasis::fourier(n).unwrap()).unwrap()
    }

    #[test]
    fn bases() {
        for n in 1..=8 {
            let f = SignalBasis::fourier(n).unwrap();
            assert!(f.uniform_modulus());
            let s = SignalBasis::standard(n).unwrap();
            assert_eq!(s.uniform_modulus(), n == 1);
        }
        let bad = Operator::from_element(2, 2, C64::new(1.0, 0.0));
        assert!(SignalBasis::custom(&bad).is_err());
    }

    #[test]
    fn xi_is_orthonormal_and_complete() {
        for n in 1..=8 {
            for basis in [SignalBasis::fourier(n).unwrap(), SignalBasis::standard(n).unwrap()] {
                let bell = BellSystem::new(basis).unwrap();
                let mut sum = Operator::zeros(n * n, n * n);
                for k in 0..n * n {
                    for l in 0..n * n {
                        let g = bell.xi[k].dotc(&bell.xi[l]);
                        let t = if k == l { 1.0 } else { 0.0 };
                        assert!((g - C64::new(t, 0.0)).norm() <= 1e-12);
                    }
                    sum += ket_bra(&bell.xi[k], &bell.xi[k]);
                }
                assert!(max_abs_diff(&sum, &Operator::identity(n * n, n * n)) <= 1e-12);
            }
        }
    }

    #[test]
    fn xi_entries() {
        // ξ_{k,l}(a, b) = b_k(a) δ_{a, b⊕l}
        let n = 3;
        let bell = fourier(n);
        for k in 0..n {
            for l in 0..n {
                let v = bell.xi(k, l);
                for a in 0..n {
                    for b in 0..n {
                        let expect = if a == (b + l) % n {
                            bell.basis().vector(k)[a]
                        } else {
                            C64::new(0.0, 0.0)
                        };
                        assert!((v[a * n + b] - expect).norm() < 1e-15);
                    }
                }
            }
        }
    }

    #[test]
    fn entangled_maximally_mixed_qubit() {
        let e = entangle(&DensityOperator::maximally_mixed(2).unwrap()).unwrap();
        let mut expect = Operator::zeros(4, 4);
        expect[(0, 0)] = C64::new(0.5, 0.0);
        expect[(3, 3)] = C64::new(0.5, 0.0);
        assert!(max_abs_diff(e.matrix(), &expect) < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pure = random::random_pure(3, &mut rng);
        assert!(entangle(&pure).unwrap().is_pure());
        assert!(!e.is_pure());
    }

    #[test]
    fn uniform_outcomes_for_maximally_mixed_inputs() {
        let bell = fourier(2);
        let half = DensityOperator::maximally_mixed(2).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let p = outcome_probability(i, j, &half, &half, &bell).unwrap();
                assert!((p - 0.25).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn hand_computed_qubit_updates() {
        let bell = fourier(2);
        let half = DensityOperator::maximally_mixed(2).unwrap();
        for (j, expect) in [(0usize, [1.0, 0.0]), (1, [0.0, 1.0])] {
            let target = DensityOperator::diagonal(&expect).unwrap();
            for i in 0..2 {
                let d = lambda_direct(i, j, &e0(2), &half, &bell).unwrap();
                assert!(max_abs_diff(d.matrix(), target.matrix()) < 1e-12);
                let c = lambda_composed(i, j, &e0(2), &half, &bell).unwrap();
                assert!(max_abs_diff(c.matrix(), target.matrix()) < 1e-12);
            }
        }
    }

    #[test]
    fn three_forms_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [2, 3, 5] {
            let bell = fourier(n);
            for _ in 0..10 {
                let rho = random::random_density(n, &mut rng);
                let gamma = random::random_density(n, &mut rng);
                let probs = outcome_distribution(&rho, &gamma, &bell).unwrap();
                assert!((probs.iter().sum::<f64>() - 1.0).abs() < 1e-12);
                for i in 0..n {
                    for j in 0..n {
                        let p = outcome_probability(i, j, &rho, &gamma, &bell).unwrap();
                        assert!((p - probs[i * n + j]).abs() < 1e-12);
                        let d = lambda_direct(i, j, &rho, &gamma, &bell).unwrap();
                        let s = lambda_spectral(i, j, &rho, &gamma, &bell).unwrap();
                        let c = lambda_composed(i, j, &rho, &gamma, &bell).unwrap();
                        assert!(max_abs_diff(d.matrix(), s.matrix()) <= 1e-10);
                        assert!(max_abs_diff(d.matrix(), c.matrix()) <= 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn direct_form_matches_literal_partial_trace() {
        use crate::hilbert::partial_trace;
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in [2, 3] {
            let bell = fourier(n);
            let rho = random::random_density(n, &mut rng);
            let gamma = random::random_density(n, &mut rng);
            for i in 0..n {
                for j in 0..n {
                    let x = measured_joint_state(i, j, &rho, &gamma, &bell).unwrap();
                    let p = x.trace().re;
                    let lit = partial_trace(&x, &[n, n, n], &[0, 1]).unwrap().unscale(p);
                    let d = lambda_direct(i, j, &rho, &gamma, &bell).unwrap();
                    assert!(max_abs_diff(d.matrix(), &lit) < 1e-12);
                    let q = outcome_probability(i, j, &rho, &gamma, &bell).unwrap();
                    assert!((p - q).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn g_operator_norm_formula() {
        let n = 3;
        let bell = fourier(n);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let phi = random::random_unit_vector(n * n, &mut rng);
        for i in 0..n {
            for j in 0..n {
                let direct = (bell.g_operator(i, j).unwrap() * &phi).norm_squared();
                let formula: f64 = (0..n)
                    .map(|m| {
                        let mj = (m + j) % n;
                        bell.basis().vector(i)[mj].norm_sqr() * phi[mj * n + m].norm_sqr()
                    })
                    .sum();
                assert!((direct - formula).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn composed_reports_failed_precondition() {
        let bell = BellSystem::new(SignalBasis::standard(2).unwrap()).unwrap();
        let rho = e0(2);
        // K for |e_1><e_1| annihilates |e_0><e_0|
        let err = lambda_composed(1, 0, &rho, &e0(2), &bell).unwrap_err();
        assert!(matches!(&err, Error::OutsideDomain(m) if m.contains("conj b_1")));
        // the shifted state |e_1><e_1| is killed by gamma = |e_0><e_0|
        let err = lambda_composed(0, 1, &rho, &e0(2), &bell).unwrap_err();
        assert!(matches!(&err, Error::OutsideDomain(m) if m.contains("gamma")));
        let err = lambda_direct(0, 1, &rho, &e0(2), &bell).unwrap_err();
        assert!(matches!(err, Error::ZeroProbabilityOutcome { i: 0, j: 1, .. }));
    }

    #[test]
    fn repeated_signal_stores_pure_memory() {
        let bell = fourier(2);
        let signals = vec![e0(2); 6];
        let half = DensityOperator::maximally_mixed(2).unwrap();
        let state = recognize_sequence(&half, &signals, &bell, Policy::Sample, 11).unwrap();
        assert_eq!(state.history.len(), 6);
        for rec in &state.history {
            assert!(rec.entropy_of_gamma.abs() < 1e-12);
        }
        // once pure, the memory is a fixed point of every admissible outcome
        let first = state.history[0].gamma.clone();
        for rec in &state.history {
            assert!(max_abs_diff(&rec.gamma, &first) < 1e-12);
        }
        let empty = recognize_sequence(&half, &[], &bell, Policy::Argmax, 0).unwrap();
        assert!(empty.history.is_empty());
        assert!(max_abs_diff(empty.gamma.matrix(), half.matrix()) == 0.0);
    }

    #[test]
    fn inverse_cdf_skips_null_outcomes() {
        assert_eq!(inverse_cdf(&[0.0, 0.5, 0.0, 0.5], 0.0), Some(1));
        assert_eq!(inverse_cdf(&[0.0, 0.5, 0.0, 0.5], 0.6), Some(3));
        assert_eq!(inverse_cdf(&[0.0, 0.5, 0.0, 0.5], 0.999_999), Some(3));
        assert_eq!(inverse_cdf(&[0.0, 0.0], 0.3), None);
    }
}
