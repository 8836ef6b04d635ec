use crate::error::{Error, Result};
use crate::hilbert::{mult_operator, DensityOperator, Operator, StateVector, C64};

use super::{Channel, EPS_PROB};

/// Which orthogonal summand of `L2({1,2} × G)` a measurement selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `L2({1} × G)`, leading to `K̂^h`.
    First,
    /// `L2({2} × G)`, leading to `K̂^{√(1-|h|²)}`.
    Second,
}

/// The isometry `t_h: L2(G) → L2({1,2} × G)` for a function with
/// `‖h‖ > 0` and `|h(k)| ≤ 1`,
///
/// `(t_h f)(1, k) = h(k) f(k)`, `(t_h f)(2, k) = √(1 - |h(k)|²) f(k)`.
///
/// Row `l * n + k` of the assembled matrix holds the component `(l + 1, k)`.
#[derive(Debug, Clone)]
pub struct Dilation {
    h: StateVector,
    complement: StateVector,
    isometry: Operator,
}

impl Dilation {
    const MODULUS_TOL: f64 = 1e-12;

    pub fn new(h: StateVector) -> Result<Self> {
        if !(h.norm() > 0.0) {
            return Err(Error::InvalidDilation("h must have positive norm".into()));
        }
        if let Some((k, z)) = h
            .iter()
            .enumerate()
            .find(|(_, z)| !(z.norm() <= 1.0 + Self::MODULUS_TOL))
        {
            return Err(Error::InvalidDilation(format!(
                "|h({k})| = {} exceeds 1",
                z.norm()
            )));
        }
        let n = h.len();
        let complement = StateVector::from_iterator(
            n,
            h.iter()
                .map(|z| C64::new((1.0 - z.norm_sqr()).max(0.0).sqrt(), 0.0)),
        );
        let mut isometry = Operator::zeros(2 * n, n);
        for k in 0..n {
            isometry[(k, k)] = h[k];
            isometry[(n + k, k)] = complement[k];
        }
        Ok(Self {
            h,
            complement,
            isometry,
        })
    }

    pub fn dim(&self) -> usize {
        self.h.len()
    }

    /// The assembled `2n × n` matrix of `t_h`.
    pub fn isometry(&self) -> &Operator {
        &self.isometry
    }

    /// `√(1 - |h|²)`
    pub fn complement(&self) -> &StateVector {
        &self.complement
    }

    /// `E_h(B) = t_h* B t_h`, completely positive and unital.
    pub fn unital_map(&self, b: &Operator) -> Result<Operator> {
        let m = 2 * self.dim();
        if b.nrows() != m || b.ncols() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: b.nrows(),
            });
        }
        Ok(self.isometry.adjoint() * b * &self.isometry)
    }

    /// The dual linear channel `ρ ↦ t_h ρ t_h*` into states on `L2({1,2} × G)`.
    pub fn dual_channel(&self) -> Channel {
        Channel::Kraus(vec![self.isometry.clone()])
    }

    /// Unnormalized branch channels `(K^h, K^{√(1-|h|²)})`.
    pub fn branch_channels(&self) -> (Channel, Channel) {
        (
            Channel::Kraus(vec![mult_operator(&self.h)]),
            Channel::Kraus(vec![mult_operator(&self.complement)]),
        )
    }

    /// Measures `t_h ρ t_h*` on one summand and returns the branch
    /// probability with the conditional state on `L2(G)`.
    pub fn measure(&self, rho: &DensityOperator, branch: Branch) -> Result<(f64, DensityOperator)> {
        let n = self.dim();
        if rho.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rho.dim(),
            });
        }
        let lifted = &self.isometry * rho.matrix() * self.isometry.adjoint();
        let offset = match branch {
            Branch::First => 0,
            Branch::Second => n,
        };
        let block = lifted.view((offset, offset), (n, n)).into_owned();
        let p = block.trace().re;
        if !(p > EPS_PROB) {
            return Err(Error::OutsideDomain(format!(
                "branch {branch:?} has probability {p:.3e}"
            )));
        }
        Ok((p, DensityOperator::from_positive(block)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::k_h_hat_apply;
    use crate::hilbert::{max_abs_diff, ones, random};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn admissible_h<R: Rng>(n: usize, rng: &mut R) -> StateVector {
        StateVector::from_fn(n, |_, _| {
            C64::from_polar(rng.random::<f64>(), rng.random::<f64>() * std::f64::consts::TAU)
        })
    }

    #[test]
    fn constant_one_keeps_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rho = random::random_density(3, &mut rng);
        let d = Dilation::new(ones(3)).unwrap();
        let (p, out) = d.measure(&rho, Branch::First).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
        assert!(max_abs_diff(out.matrix(), rho.matrix()) < 1e-12);
        assert!(matches!(
            d.measure(&rho, Branch::Second),
            Err(Error::OutsideDomain(_))
        ));
    }

    #[test]
    fn isometry_and_unitality() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for trial in 0..50 {
            let n = 2 + trial % 5;
            let d = Dilation::new(admissible_h(n, &mut rng)).unwrap();
            let t = d.isometry();
            assert!(max_abs_diff(&(t.adjoint() * t), &Operator::identity(n, n)) < 1e-12);
            let e = d.unital_map(&Operator::identity(2 * n, 2 * n)).unwrap();
            assert!(max_abs_diff(&e, &Operator::identity(n, n)) < 1e-12);
            let f = random::random_unit_vector(n, &mut rng).scale(3.0);
            assert!(((t * &f).norm_squared() - f.norm_squared()).abs() < 1e-10);
        }
    }

    #[test]
    fn branch_probabilities_sum_to_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let n = 3;
            let h = admissible_h(n, &mut rng);
            let d = Dilation::new(h.clone()).unwrap();
            let rho = random::random_density(n, &mut rng);
            let (k1, k2) = d.branch_channels();
            let p1 = k1.apply_linear(rho.matrix()).unwrap().trace().re;
            let p2 = k2.apply_linear(rho.matrix()).unwrap().trace().re;
            assert!((p1 + p2 - 1.0).abs() < 1e-12);
            let (q1, s1) = d.measure(&rho, Branch::First).unwrap();
            let (q2, s2) = d.measure(&rho, Branch::Second).unwrap();
            assert!((q1 - p1).abs() < 1e-12 && (q2 - p2).abs() < 1e-12);
            let expect1 = k_h_hat_apply(&h, &rho).unwrap();
            let expect2 = k_h_hat_apply(d.complement(), &rho).unwrap();
            assert!(max_abs_diff(s1.matrix(), expect1.matrix()) < 1e-10);
            assert!(max_abs_diff(s2.matrix(), expect2.matrix()) < 1e-10);
            assert!(d.dual_channel().is_trace_preserving());
        }
    }

    #[test]
    fn rejects_invalid_h() {
        let too_big = StateVector::from_vec(vec![C64::new(1.2, 0.0), C64::new(0.0, 0.0)]);
        assert!(matches!(Dilation::new(too_big), Err(Error::InvalidDilation(_))));
        assert!(Dilation::new(StateVector::zeros(3)).is_err());
    }
}
