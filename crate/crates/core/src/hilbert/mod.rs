//! Finite-dimensional Hilbert space `L2(G)` over the cyclic index group `G`
//! with counting measure.
//!
//! Vectors are complex functions on `G = {0, .., n-1}`, operators are dense
//! complex matrices. Composite spaces `L2(G^k)` use row-major (lexicographic)
//! ordering of the multi-index, so `(f ⊗ g)(k, l)` sits at `k * n + l`.

mod density;
mod entropy;
pub mod json;
pub mod random;

pub(crate) use density::hermitian_eigen;
pub use density::{
    DensityOperator, SchattenDecomposition, DEGENERACY_TOL, HERMITIAN_TOL, PSD_TOL, TRACE_TOL,
};
pub use entropy::{relative_entropy, shannon_entropy, von_neumann_entropy, LogBase};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
/// A complex function on `G`, i.e. an element of `L2(G)`.
pub type StateVector = DVector<C64>;
/// A (possibly rectangular) linear map between finite `L2` spaces.
pub type Operator = DMatrix<C64>;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// The cyclic group `{0, .., n-1}` with addition mod `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexGroup {
    n: usize,
}

impl IndexGroup {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("group order must be at least 1".into()));
        }
        Ok(Self { n })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `k ⊕ l`
    pub fn add(&self, k: usize, l: usize) -> usize {
        (k % self.n + l % self.n) % self.n
    }

    /// `k ⊖ l`, the inverse of `⊕` in its second argument.
    pub fn sub(&self, k: usize, l: usize) -> usize {
        (k % self.n + self.n - l % self.n) % self.n
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// `⟨f, g⟩ = Σ_k conj(f(k)) g(k)`, conjugate-linear in the first slot.
pub fn inner_product(f: &StateVector, g: &StateVector) -> Result<C64> {
    check_dim(f.len(), g.len())?;
    Ok(f.dotc(g))
}

/// Multiplication operator `O_g`, `(O_g f)(k) = g(k) f(k)`.
pub fn mult_operator(g: &StateVector) -> Operator {
    Operator::from_diagonal(g)
}

/// Constant-one function `𝟏` on `G`.
pub fn ones(n: usize) -> StateVector {
    StateVector::from_element(n, ONE)
}

/// Standard basis vector `e_k`.
pub fn basis_vector(n: usize, k: usize) -> StateVector {
    let mut v = StateVector::zeros(n);
    v[k] = ONE;
    v
}

/// Shift `U_k` with `(U_k f)(m) = f(k ⊕ m)`.
pub fn shift_unitary(k: usize, n: usize) -> Result<Operator> {
    if n == 0 || k >= n {
        return Err(Error::InvalidParameter(format!(
            "shift index {k} outside group of order {n}"
        )));
    }
    let group = IndexGroup::new(n)?;
    let mut u = Operator::zeros(n, n);
    for m in 0..n {
        u[(m, group.add(k, m))] = ONE;
    }
    Ok(u)
}

/// Diagonal embedding `J: L2(G) → L2(G²)`, `(Jf)(k, l) = f(k) δ_{k,l}`.
///
/// The adjoint `J*` is `diag_embedding(n).adjoint()`, `(J*Φ)(k) = Φ(k, k)`.
pub fn diag_embedding(n: usize) -> Operator {
    let mut j = Operator::zeros(n * n, n);
    for k in 0..n {
        j[(k * n + k, k)] = ONE;
    }
    j
}

/// Kronecker product `A ⊗ B`.
pub fn tensor(a: &Operator, b: &Operator) -> Operator {
    a.kronecker(b)
}

/// Tensor product of vectors, `(f ⊗ g)(k, l) = f(k) g(l)`.
pub fn tensor_vec(f: &StateVector, g: &StateVector) -> StateVector {
    f.kronecker(g)
}

/// Rank-one operator `|f⟩⟨g|`.
pub fn ket_bra(f: &StateVector, g: &StateVector) -> Operator {
    f * g.adjoint()
}

pub fn trace(a: &Operator) -> C64 {
    a.trace()
}

/// Largest entrywise deviation `max |A - A*|`.
pub fn hermiticity_defect(a: &Operator) -> f64 {
    if !a.is_square() {
        return f64::INFINITY;
    }
    max_abs_diff(a, &a.adjoint())
}

/// `max |A - I|` after forming `U U*`; returns infinity for non-square input.
pub fn unitarity_defect(u: &Operator) -> f64 {
    if !u.is_square() {
        return f64::INFINITY;
    }
    let n = u.nrows();
    let a = max_abs_diff(&(u * u.adjoint()), &Operator::identity(n, n));
    let b = max_abs_diff(&(u.adjoint() * u), &Operator::identity(n, n));
    a.max(b)
}

/// Entrywise max-norm of `A - B`. Infinite when shapes differ.
pub fn max_abs_diff(a: &Operator, b: &Operator) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Partial trace of `x` acting on `⊗_k C^{dims[k]}` over the subsystems in
/// `traced`. Remaining subsystems keep their order.
pub fn partial_trace(x: &Operator, dims: &[usize], traced: &[usize]) -> Result<Operator> {
    let total: usize = dims.iter().product();
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::InvalidParameter("subsystem dimensions must be positive".into()));
    }
    if x.nrows() != total || x.ncols() != total {
        return Err(Error::DimensionMismatch {
            expected: total,
            found: x.nrows().max(x.ncols()),
        });
    }
    if let Some(&bad) = traced.iter().find(|&&s| s >= dims.len()) {
        return Err(Error::InvalidParameter(format!(
            "subsystem {bad} does not exist in a {}-fold product",
            dims.len()
        )));
    }
    let is_traced: Vec<bool> = (0..dims.len()).map(|s| traced.contains(&s)).collect();
    let kept_dims: Vec<usize> = (0..dims.len())
        .filter(|&s| !is_traced[s])
        .map(|s| dims[s])
        .collect();
    let traced_dims: Vec<usize> = (0..dims.len())
        .filter(|&s| is_traced[s])
        .map(|s| dims[s])
        .collect();
    let kept_total: usize = kept_dims.iter().product();
    let traced_total: usize = traced_dims.iter().product();

    // strides of each subsystem in the full row-major index
    let mut strides = vec![1usize; dims.len()];
    for s in (0..dims.len().saturating_sub(1)).rev() {
        strides[s] = strides[s + 1] * dims[s + 1];
    }
    let kept_strides: Vec<usize> = (0..dims.len())
        .filter(|&s| !is_traced[s])
        .map(|s| strides[s])
        .collect();
    let traced_strides: Vec<usize> = (0..dims.len())
        .filter(|&s| is_traced[s])
        .map(|s| strides[s])
        .collect();

    let offsets = |idx: usize, sub_dims: &[usize], sub_strides: &[usize]| -> usize {
        let mut rem = idx;
        let mut off = 0;
        for s in (0..sub_dims.len()).rev() {
            off += (rem % sub_dims[s]) * sub_strides[s];
            rem /= sub_dims[s];
        }
        off
    };
    let kept_offsets: Vec<usize> = (0..kept_total)
        .map(|i| offsets(i, &kept_dims, &kept_strides))
        .collect();
    let traced_offsets: Vec<usize> = (0..traced_total)
        .map(|i| offsets(i, &traced_dims, &traced_strides))
        .collect();

    let mut out = Operator::zeros(kept_total, kept_total);
    for (r, &ro) in kept_offsets.iter().enumerate() {
        for (c, &co) in kept_offsets.iter().enumerate() {
            let mut acc = ZERO;
            for &t in &traced_offsets {
                acc += x[(ro + t, co + t)];
            }
            out[(r, c)] = acc;
        }
    }
    Ok(out)
}
