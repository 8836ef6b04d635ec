//! Channels on finite `L2(G)`: Kraus maps, the Schur-multiplier family
//! `K_τ` and its normalized form `K̂_τ`, unitary channels, classical
//! stochastic channels, and the two-branch dilation `t_h`.

mod descriptor;
mod dilation;

pub use descriptor::ChannelDescriptor;
pub use dilation::{Branch, Dilation};

use nalgebra::DMatrix;
use rand::Rng;

use crate::error::{Error, Result};
use crate::hilbert::{
    self, basis_vector, ket_bra, max_abs_diff, unitarity_defect, DensityOperator, Operator,
    StateVector, C64, HERMITIAN_TOL, PSD_TOL,
};
use crate::hilbert::hermitian_eigen;

/// Traces at or below this put a state outside the domain of a normalized
/// channel.
pub const EPS_PROB: f64 = 1e-12;
/// Tolerance for unitarity and Kraus completeness checks.
pub const UNITARY_TOL: f64 = 1e-10;
/// Minimum Choi eigenvalue accepted as completely positive.
pub const CHOI_TOL: f64 = 1e-9;

/// A positive semidefinite operator `τ` parameterizing `K_τ`. The trace is
/// unconstrained and the null operator is allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceClassWeight {
    matrix: Operator,
}

impl TraceClassWeight {
    pub fn new(matrix: Operator) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        let scale = matrix.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
        let defect = hilbert::hermiticity_defect(&matrix);
        if defect > HERMITIAN_TOL * scale {
            return Err(Error::NotSelfAdjoint(defect));
        }
        let matrix = (&matrix + matrix.adjoint()).scale(0.5);
        let min = hermitian_eigen(&matrix).0.last().copied().unwrap_or(0.0);
        if min < -PSD_TOL * scale {
            return Err(Error::NotPositive(min));
        }
        Ok(Self { matrix })
    }

    /// The null operator `𝟎`.
    pub fn null(n: usize) -> Self {
        Self {
            matrix: Operator::zeros(n, n),
        }
    }

    /// `|h⟩⟨h|`
    pub fn rank_one(h: &StateVector) -> Self {
        Self {
            matrix: ket_bra(h, h),
        }
    }

    /// `τ = Σ_k w_k |h_k⟩⟨h_k|` for nonnegative weights.
    pub fn from_representation(weights: &[f64], vectors: &[StateVector]) -> Result<Self> {
        if weights.len() != vectors.len() || vectors.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: weights.len(),
                found: vectors.len(),
            });
        }
        if let Some(w) = weights.iter().find(|w| !(**w >= 0.0)) {
            return Err(Error::NotPositive(*w));
        }
        let n = vectors[0].len();
        let mut m = Operator::zeros(n, n);
        for (w, h) in weights.iter().zip(vectors) {
            if h.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: h.len(),
                });
            }
            m += ket_bra(h, h).scale(*w);
        }
        Ok(Self { matrix: m })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &Operator {
        &self.matrix
    }

    pub fn is_null(&self) -> bool {
        self.matrix.iter().all(|z| *z == C64::new(0.0, 0.0))
    }
}

/// `K_τ(ρ) = Σ_k γ_k O_{h_k} ρ O_{h_k}*` for any representation
/// `τ = Σ_k γ_k |h_k⟩⟨h_k|`. In `G`-coordinates this collapses to the
/// entrywise product `K_τ(ρ)_{ab} = τ_{ab} ρ_{ab}`, which is what is computed.
pub fn k_tau_apply(tau: &TraceClassWeight, rho: &Operator) -> Result<Operator> {
    if rho.shape() != tau.matrix.shape() {
        return Err(Error::DimensionMismatch {
            expected: tau.dim(),
            found: rho.nrows(),
        });
    }
    Ok(tau.matrix.component_mul(rho))
}

/// `K̂_τ(ρ) = K_τ(ρ) / Tr K_τ(ρ)`, defined when `Tr K_τ(ρ) > EPS_PROB`.
pub fn k_tau_hat_apply(tau: &TraceClassWeight, rho: &DensityOperator) -> Result<DensityOperator> {
    let out = k_tau_apply(tau, rho.matrix())?;
    let tr = out.trace().re;
    if !(tr > EPS_PROB) {
        return Err(Error::OutsideDomain(format!(
            "Tr K_tau(rho) = {tr:.3e} is not positive"
        )));
    }
    DensityOperator::from_positive(out)
}

/// `K^h(ρ) = O_h ρ O_h*`, unnormalized.
pub fn k_h_apply(h: &StateVector, rho: &Operator) -> Result<Operator> {
    k_tau_apply(&TraceClassWeight::rank_one(h), rho)
}

/// `K̂^h(ρ)`, the normalized form of [`k_h_apply`].
pub fn k_h_hat_apply(h: &StateVector, rho: &DensityOperator) -> Result<DensityOperator> {
    k_tau_hat_apply(&TraceClassWeight::rank_one(h), rho)
}

/// `U ρ U*` for unitary `U`.
pub fn unitary_channel(u: &Operator, rho: &DensityOperator) -> Result<DensityOperator> {
    let defect = unitarity_defect(u);
    if defect > UNITARY_TOL {
        return Err(Error::NotUnitary(defect));
    }
    rho.conjugate_by(u)
}

/// Row-stochastic matrix `P`, `P[i][j] = p(j | i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticMatrix {
    p: DMatrix<f64>,
}

impl StochasticMatrix {
    pub const ROW_TOL: f64 = 1e-9;

    pub fn new(p: DMatrix<f64>) -> Result<Self> {
        if p.nrows() == 0 || p.ncols() == 0 {
            return Err(Error::NonStochastic("empty matrix".into()));
        }
        for (i, row) in p.row_iter().enumerate() {
            if let Some(x) = row.iter().find(|x| !(**x >= 0.0)) {
                return Err(Error::NonStochastic(format!("row {i} has entry {x}")));
            }
            let s = row.sum();
            if (s - 1.0).abs() > Self::ROW_TOL {
                return Err(Error::NonStochastic(format!("row {i} sums to {s}")));
            }
        }
        Ok(Self { p })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::NonStochastic("ragged rows".into()));
        }
        Self::new(DMatrix::from_fn(rows.len(), ncols, |i, j| rows[i][j]))
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.p
    }

    /// Distribution push-forward `pᵀ P`.
    pub fn push_forward(&self, p: &[f64]) -> Result<Vec<f64>> {
        if p.len() != self.p.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.p.nrows(),
                found: p.len(),
            });
        }
        Ok((0..self.p.ncols())
            .map(|j| (0..self.p.nrows()).map(|i| p[i] * self.p[(i, j)]).sum())
            .collect())
    }
}

/// Tag of a [`Channel`] variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelKind {
    Kraus,
    KTau,
    KTauHat,
    Unitary,
    Stochastic,
}

/// A state-to-state map. Every variant except [`Channel::KTauHat`] is linear.
#[derive(Debug, Clone)]
pub enum Channel {
    /// `ρ ↦ Σ_k A_k ρ A_k*` with `Σ_k A_k* A_k ≤ I`.
    Kraus(Vec<Operator>),
    /// The mixture `K_τ` (linear, trace-preserving only when `diag τ = 𝟏`).
    KTau(TraceClassWeight),
    /// The normalized, in general nonlinear `K̂_τ`.
    KTauHat(TraceClassWeight),
    /// `ρ ↦ U ρ U*`
    Unitary(Operator),
    /// Measure in the standard basis, then prepare `Σ_j P_ij |j⟩⟨j|`. On
    /// diagonal states this is the classical push-forward `pᵀ P`.
    Stochastic(StochasticMatrix),
}

impl Channel {
    pub fn kraus(ops: Vec<Operator>) -> Result<Self> {
        let first = ops
            .first()
            .ok_or_else(|| Error::InvalidParameter("empty Kraus family".into()))?;
        let shape = first.shape();
        if let Some(bad) = ops.iter().find(|a| a.shape() != shape) {
            return Err(Error::DimensionMismatch {
                expected: shape.0,
                found: bad.nrows(),
            });
        }
        let completeness = kraus_completeness(&ops);
        let max = nalgebra::linalg::SymmetricEigen::new(completeness)
            .eigenvalues
            .max();
        if max > 1.0 + UNITARY_TOL {
            return Err(Error::InvalidParameter(format!(
                "Kraus operators exceed identity (largest eigenvalue of sum A*A is {max})"
            )));
        }
        Ok(Channel::Kraus(ops))
    }

    pub fn unitary(u: Operator) -> Result<Self> {
        let defect = unitarity_defect(&u);
        if defect > UNITARY_TOL {
            return Err(Error::NotUnitary(defect));
        }
        Ok(Channel::Unitary(u))
    }

    pub fn identity(n: usize) -> Self {
        Channel::Unitary(Operator::identity(n, n))
    }

    /// `K^j(ρ) = U_j ρ U_j*`
    pub fn shift(j: usize, n: usize) -> Result<Self> {
        Ok(Channel::Unitary(hilbert::shift_unitary(j, n)?))
    }

    /// `ρ ↦ Tr(ρ) I/n`, written with the `n²` Kraus operators `|k⟩⟨l|/√n`.
    pub fn completely_depolarizing(n: usize) -> Self {
        let s = 1.0 / (n as f64).sqrt();
        let ops = (0..n)
            .flat_map(|k| (0..n).map(move |l| (k, l)))
            .map(|(k, l)| ket_bra(&basis_vector(n, k), &basis_vector(n, l)).scale(s))
            .collect();
        Channel::Kraus(ops)
    }

    /// Qubit bit flip `ρ ↦ (1-p) ρ + p X ρ X`.
    pub fn bit_flip(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!("flip probability {p}")));
        }
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        let id = Operator::identity(2, 2).scale((1.0 - p).sqrt());
        let x = Operator::from_row_slice(2, 2, &[zero, one, one, zero]).scale(p.sqrt());
        Self::kraus(vec![id, x])
    }

    pub fn stochastic(p: StochasticMatrix) -> Self {
        Channel::Stochastic(p)
    }

    /// Haar-random CPTP map on `C^n` with `k` Kraus operators, taken as the
    /// blocks of a random isometry `C^n → C^{kn}`.
    pub fn random_kraus<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Self {
        let u = hilbert::random::random_unitary(n * k, rng);
        let ops = (0..k)
            .map(|b| u.view((b * n, 0), (n, n)).into_owned())
            .collect();
        Channel::Kraus(ops)
    }

    pub fn kind(&self) -> ChannelKind {
        match self {
            Channel::Kraus(_) => ChannelKind::Kraus,
            Channel::KTau(_) => ChannelKind::KTau,
            Channel::KTauHat(_) => ChannelKind::KTauHat,
            Channel::Unitary(_) => ChannelKind::Unitary,
            Channel::Stochastic(_) => ChannelKind::Stochastic,
        }
    }

    pub fn is_linear(&self) -> bool {
        !matches!(self, Channel::KTauHat(_))
    }

    pub fn is_trace_preserving(&self) -> bool {
        match self {
            Channel::Kraus(ops) => {
                let n = ops[0].ncols();
                max_abs_diff(&kraus_completeness(ops), &Operator::identity(n, n)) <= UNITARY_TOL
            }
            Channel::KTau(tau) => tau
                .matrix()
                .diagonal()
                .iter()
                .all(|d| (d - C64::new(1.0, 0.0)).norm() <= UNITARY_TOL),
            Channel::KTauHat(_) => false,
            Channel::Unitary(_) | Channel::Stochastic(_) => true,
        }
    }

    /// Whether [`Channel::apply`] always yields a unit-trace state.
    pub fn yields_states(&self) -> bool {
        matches!(self, Channel::KTauHat(_)) || self.is_trace_preserving()
    }

    pub fn input_dim(&self) -> usize {
        match self {
            Channel::Kraus(ops) => ops[0].ncols(),
            Channel::KTau(t) | Channel::KTauHat(t) => t.dim(),
            Channel::Unitary(u) => u.ncols(),
            Channel::Stochastic(p) => p.matrix().nrows(),
        }
    }

    pub fn output_dim(&self) -> usize {
        match self {
            Channel::Kraus(ops) => ops[0].nrows(),
            Channel::KTau(t) | Channel::KTauHat(t) => t.dim(),
            Channel::Unitary(u) => u.nrows(),
            Channel::Stochastic(p) => p.matrix().ncols(),
        }
    }

    /// The linear action on an arbitrary operator of the input space.
    pub fn apply_linear(&self, x: &Operator) -> Result<Operator> {
        let n = self.input_dim();
        if x.nrows() != n || x.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: x.nrows(),
            });
        }
        match self {
            Channel::Kraus(ops) => {
                let m = self.output_dim();
                let mut out = Operator::zeros(m, m);
                for a in ops {
                    out += a * x * a.adjoint();
                }
                Ok(out)
            }
            Channel::KTau(tau) => k_tau_apply(tau, x),
            Channel::KTauHat(_) => Err(Error::NonlinearChannel),
            Channel::Unitary(u) => Ok(u * x * u.adjoint()),
            Channel::Stochastic(p) => {
                let p = p.matrix();
                let mut out = Operator::zeros(p.ncols(), p.ncols());
                for j in 0..p.ncols() {
                    out[(j, j)] = (0..p.nrows()).map(|i| x[(i, i)] * p[(i, j)]).sum();
                }
                Ok(out)
            }
        }
    }

    /// Applies the channel to a state. Only defined for trace-preserving or
    /// normalized channels.
    pub fn apply(&self, rho: &DensityOperator) -> Result<DensityOperator> {
        match self {
            Channel::KTauHat(tau) => k_tau_hat_apply(tau, rho),
            _ if !self.is_trace_preserving() => Err(Error::NotTracePreserving),
            _ => DensityOperator::new(self.apply_linear(rho.matrix())?),
        }
    }

    /// Choi matrix `Σ_{a,b} |a⟩⟨b| ⊗ Λ(|a⟩⟨b|)`.
    pub fn choi_matrix(&self) -> Result<Operator> {
        if !self.is_linear() {
            return Err(Error::NonlinearChannel);
        }
        choi_matrix_of(self.input_dim(), |x| self.apply_linear(x))
    }

    pub fn choi_check(&self) -> Result<ChoiReport> {
        ChoiReport::from_choi(&self.choi_matrix()?)
    }
}

fn kraus_completeness(ops: &[Operator]) -> Operator {
    let n = ops[0].ncols();
    let mut sum = Operator::zeros(n, n);
    for a in ops {
        sum += a.adjoint() * a;
    }
    sum
}

/// Choi matrix of an arbitrary linear map on `n × n` matrices.
pub fn choi_matrix_of<F>(n: usize, map: F) -> Result<Operator>
where
    F: Fn(&Operator) -> Result<Operator>,
{
    let mut blocks = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let unit = ket_bra(&basis_vector(n, a), &basis_vector(n, b));
            blocks.push(map(&unit)?);
        }
    }
    let m = blocks[0].nrows();
    let mut choi = Operator::zeros(n * m, n * m);
    for a in 0..n {
        for b in 0..n {
            choi.view_mut((a * m, b * m), (m, m))
                .copy_from(&blocks[a * n + b]);
        }
    }
    Ok(choi)
}

/// Outcome of a complete-positivity check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChoiReport {
    pub completely_positive: bool,
    pub min_eigenvalue: f64,
}

impl ChoiReport {
    pub fn from_choi(choi: &Operator) -> Result<Self> {
        let defect = hilbert::hermiticity_defect(choi);
        if defect > UNITARY_TOL {
            // a Hermiticity-violating map is not even positive
            return Ok(Self {
                completely_positive: false,
                min_eigenvalue: f64::NEG_INFINITY,
            });
        }
        let herm = (choi + choi.adjoint()).scale(0.5);
        let min = nalgebra::linalg::SymmetricEigen::new(herm).eigenvalues.min();
        Ok(Self {
            completely_positive: min >= -CHOI_TOL,
            min_eigenvalue: min,
        })
    }
}
