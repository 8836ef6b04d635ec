use std::ops::Range;

use nalgebra::linalg::SymmetricEigen;

use super::{hermiticity_defect, ket_bra, Operator, StateVector, C64};
use crate::error::{Error, Result};

/// Eigenvalues in `[-PSD_TOL, 0)` are clamped to zero; anything more negative
/// is rejected.
pub const PSD_TOL: f64 = 1e-10;
/// Accepted deviation of the trace from one.
pub const TRACE_TOL: f64 = 1e-8;
/// Accepted entrywise deviation from self-adjointness.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalue gap below which two eigenvalues are treated as equal.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// A positive unit-trace operator with its spectral decomposition cached.
///
/// Eigenvalues are stored in descending order; column `k` of the eigenvector
/// matrix belongs to eigenvalue `k`.
#[derive(Debug, Clone)]
pub struct DensityOperator {
    matrix: Operator,
    eigenvalues: Vec<f64>,
    eigenvectors: Operator,
}

/// Eigendecomposition of a self-adjoint matrix, eigenvalues descending.
pub(crate) fn hermitian_eigen(m: &Operator) -> (Vec<f64>, Operator) {
    let n = m.nrows();
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = Operator::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

fn hermitize(m: &Operator) -> Operator {
    (m + m.adjoint()).scale(0.5)
}

impl DensityOperator {
    /// Validates `matrix` as a density operator.
    pub fn new(matrix: Operator) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        let defect = hermiticity_defect(&matrix);
        if !(defect <= HERMITIAN_TOL) {
            return Err(Error::NotSelfAdjoint(defect));
        }
        let tr = matrix.trace().re;
        if !((tr - 1.0).abs() <= TRACE_TOL) {
            return Err(Error::NotUnitTrace(tr));
        }
        Self::from_hermitian(hermitize(&matrix))
    }

    /// Normalizes a positive operator by its trace.
    pub fn from_positive(matrix: Operator) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        let defect = hermiticity_defect(&matrix);
        let scale = matrix.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
        if !(defect <= HERMITIAN_TOL * scale) {
            return Err(Error::NotSelfAdjoint(defect));
        }
        let tr = matrix.trace().re;
        if !(tr > 0.0) {
            return Err(Error::NotUnitTrace(tr));
        }
        Self::from_hermitian(hermitize(&matrix).unscale(tr))
    }

    fn from_hermitian(matrix: Operator) -> Result<Self> {
        let (mut eigenvalues, eigenvectors) = hermitian_eigen(&matrix);
        let min = eigenvalues.last().copied().unwrap_or(0.0);
        if min < -PSD_TOL {
            return Err(Error::NotPositive(min));
        }
        let clamped = eigenvalues.iter().any(|&v| v < 0.0);
        for v in eigenvalues.iter_mut() {
            *v = v.max(0.0);
        }
        let sum: f64 = eigenvalues.iter().sum();
        for v in eigenvalues.iter_mut() {
            *v /= sum;
        }
        let matrix = if clamped {
            let n = matrix.nrows();
            let mut rebuilt = Operator::zeros(n, n);
            for (k, &p) in eigenvalues.iter().enumerate() {
                if p > 0.0 {
                    let v = eigenvectors.column(k).into_owned();
                    rebuilt += ket_bra(&v, &v).scale(p);
                }
            }
            hermitize(&rebuilt)
        } else {
            matrix.unscale(sum)
        };
        Ok(Self {
            matrix,
            eigenvalues,
            eigenvectors,
        })
    }

    /// Pure state `|f⟩⟨f| / ‖f‖²`.
    pub fn pure(f: &StateVector) -> Result<Self> {
        let norm = f.norm();
        if !(norm > 0.0) {
            return Err(Error::InvalidParameter("zero vector has no pure state".into()));
        }
        let v = f.unscale(norm);
        Self::from_hermitian(ket_bra(&v, &v))
    }

    /// `I / n`.
    pub fn maximally_mixed(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("dimension must be positive".into()));
        }
        Self::new(Operator::identity(n, n).unscale(n as f64))
    }

    /// Diagonal state from a probability vector.
    pub fn diagonal(p: &[f64]) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::InvalidParameter("empty probability vector".into()));
        }
        let d = StateVector::from_iterator(p.len(), p.iter().map(|&x| C64::new(x, 0.0)));
        Self::new(Operator::from_diagonal(&d))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &Operator {
        &self.matrix
    }

    pub fn into_matrix(self) -> Operator {
        self.matrix
    }

    /// Eigenvalues, descending, clamped to be nonnegative.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Orthonormal eigenvectors as columns, matching [`Self::eigenvalues`].
    pub fn eigenvectors(&self) -> &Operator {
        &self.eigenvectors
    }

    /// Faithful means full support.
    pub fn is_faithful(&self) -> bool {
        self.eigenvalues.last().is_some_and(|&v| v > DEGENERACY_TOL)
    }

    pub fn is_pure(&self) -> bool {
        (self.eigenvalues[0] - 1.0).abs() <= DEGENERACY_TOL
    }

    /// `ρ ⊗ σ`
    pub fn tensor(&self, other: &DensityOperator) -> Result<Self> {
        Self::new(self.matrix.kronecker(&other.matrix))
    }

    /// `U ρ U*` for a unitary `U`.
    pub fn conjugate_by(&self, u: &Operator) -> Result<Self> {
        if u.ncols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: u.ncols(),
            });
        }
        Self::new(u * &self.matrix * u.adjoint())
    }

    /// Schatten decomposition `ρ = Σ_k p_k E_k` with `E_k = |v_k⟩⟨v_k|`.
    pub fn spectral_decompose(&self) -> SchattenDecomposition {
        self.spectral_decompose_with_tol(DEGENERACY_TOL)
    }

    /// As [`Self::spectral_decompose`], grouping eigenvalues closer than
    /// `tol` into one eigenspace.
    pub fn spectral_decompose_with_tol(&self, tol: f64) -> SchattenDecomposition {
        let n = self.dim();
        let vectors = (0..n)
            .map(|k| self.eigenvectors.column(k).into_owned())
            .collect();
        let mut blocks = Vec::new();
        let mut start = 0;
        for k in 1..=n {
            if k == n || self.eigenvalues[k - 1] - self.eigenvalues[k] > tol {
                blocks.push(start..k);
                start = k;
            }
        }
        SchattenDecomposition {
            weights: self.eigenvalues.clone(),
            vectors,
            blocks,
            tol,
        }
    }
}

/// Weighted rank-one orthogonal resolution of a state.
#[derive(Debug, Clone)]
pub struct SchattenDecomposition {
    pub weights: Vec<f64>,
    pub vectors: Vec<StateVector>,
    /// Ranges of indices sharing one eigenvalue.
    pub blocks: Vec<Range<usize>>,
    /// Gap used to group eigenvalues into `blocks`.
    pub tol: f64,
}

impl SchattenDecomposition {
    /// Whether some eigenspace with positive weight has dimension above one,
    /// i.e. whether the decomposition is not unique. Degeneracy among zero
    /// eigenvalues does not change `Σ_k p_k E_k` and is not reported.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate_blocks().next().is_some()
    }

    /// Multi-dimensional eigenspaces carrying positive weight.
    pub fn degenerate_blocks(&self) -> impl Iterator<Item = &Range<usize>> {
        self.blocks
            .iter()
            .filter(|b| b.len() > 1 && self.weights[b.start] > self.tol)
    }

    pub fn projection(&self, k: usize) -> Operator {
        ket_bra(&self.vectors[k], &self.vectors[k])
    }

    pub fn projections(&self) -> Vec<Operator> {
        (0..self.vectors.len()).map(|k| self.projection(k)).collect()
    }

    /// `Σ_k p_k E_k`
    pub fn reconstruct(&self) -> Operator {
        let n = self.vectors.first().map_or(0, |v| v.len());
        let mut out = Operator::zeros(n, n);
        for (k, &p) in self.weights.iter().enumerate() {
            out += self.projection(k).scale(p);
        }
        out
    }
}
