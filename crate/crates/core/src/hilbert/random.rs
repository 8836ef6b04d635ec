//! Random states, unitaries and operators for property checks and
//! Monte Carlo experiments.

use rand::Rng;
use rand_distr::StandardNormal;

use super::{DensityOperator, Operator, StateVector, C64};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im)
}

/// Complex Ginibre matrix with standard normal entries.
pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Operator {
    Operator::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Haar-random unitary via phase-corrected QR of a Ginibre matrix.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Operator {
    let qr = ginibre(n, n, rng).qr();
    let r = qr.r();
    let mut q = qr.q();
    for k in 0..n {
        let d = r[(k, k)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for row in 0..n {
            q[(row, k)] *= phase;
        }
    }
    q
}

/// Uniformly random unit vector.
pub fn random_unit_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> StateVector {
    let v = StateVector::from_fn(n, |_, _| gaussian(rng));
    let norm = v.norm();
    v.unscale(norm)
}

pub fn random_pure<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DensityOperator {
    DensityOperator::pure(&random_unit_vector(n, rng)).expect("nonzero vector")
}

/// Hilbert-Schmidt random density operator, `G G* / Tr(G G*)`. Full rank
/// with probability one.
pub fn random_density<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DensityOperator {
    let g = ginibre(n, n, rng);
    DensityOperator::from_positive(&g * g.adjoint()).expect("Ginibre product is positive")
}

/// Random positive semidefinite matrix of rank `rank` with unnormalized trace.
pub fn random_psd<R: Rng + ?Sized>(n: usize, rank: usize, rng: &mut R) -> Operator {
    let g = ginibre(n, rank, rng);
    let m = &g * g.adjoint();
    (&m + m.adjoint()).scale(0.5)
}

/// Random self-adjoint matrix.
pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Operator {
    let g = ginibre(n, n, rng);
    (&g + g.adjoint()).scale(0.5)
}
