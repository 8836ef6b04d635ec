//! Randomized check of the complexity axioms for `C = S` and `T` = Ohya
//! mutual entropy.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{complexity, decomposition_values, transmitted_complexity, ComplexityConfig};
use crate::channel::Channel;
use crate::error::{Error, Result};
use crate::hilbert::{random, DensityOperator};

/// Tolerance for the exact identities (ii), (iii) and (v).
pub const EXACT_TOL: f64 = 1e-10;
/// Tolerance for the inequalities (i) and (iv).
pub const BOUND_TOL: f64 = 1e-8;
/// Restarts per degenerate trial when sampling decompositions for (iv).
const SAMPLED_RESTARTS: usize = 16;

#[derive(Debug, Clone, Serialize)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub statement: &'static str,
    pub passed: bool,
    pub worst_deviation: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    pub axioms: Vec<AxiomCheck>,
    pub all_passed: bool,
    /// `|T(UρU*; Λ) - T(ρ; Λ)|` with the channel held fixed. Logged only:
    /// mutual entropy is not invariant unless the channel transforms too.
    pub t_fixed_channel_deviation: f64,
    /// `|T(UρU*; Λ(U*·U)) - T(ρ; Λ)|`, the covariant version, over the
    /// non-degenerate trials.
    pub t_covariant_deviation: f64,
    /// Number of decomposition values checked against (iv).
    pub sampled_decompositions: usize,
}

/// A random state whose two largest eigenvalues coincide, so that many
/// Schatten decompositions exist.
fn random_degenerate_density<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DensityOperator {
    let mut p: Vec<f64> = (0..n).map(|_| rng.random::<f64>() + 0.05).collect();
    p[1] = p[0];
    let s: f64 = p.iter().sum();
    p.iter_mut().for_each(|x| *x /= s);
    let u = random::random_unitary(n, rng);
    DensityOperator::diagonal(&p)
        .and_then(|d| d.conjugate_by(&u))
        .expect("valid probability vector")
}

pub fn axiom_suite(dim: usize, trials: usize, seed: u64) -> Result<AxiomReport> {
    if !(2..=8).contains(&dim) {
        return Err(Error::InvalidParameter(format!(
            "axiom suite dimension {dim} outside 2..=8"
        )));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = ComplexityConfig {
        restarts: SAMPLED_RESTARTS,
        seed,
        ..ComplexityConfig::default()
    };
    let mut dev = [0.0f64; 5];
    let mut t_fixed: f64 = 0.0;
    let mut t_cov: f64 = 0.0;
    let mut sampled = 0;

    for trial in 0..trials {
        let rho = if trial % 2 == 0 {
            random::random_density(dim, &mut rng)
        } else {
            random_degenerate_density(dim, &mut rng)
        };
        let sigma = random::random_density(dim, &mut rng);
        let u = random::random_unitary(dim, &mut rng);
        let kraus_rank = rng.random_range(1..=dim);
        let channel = Channel::random_kraus(dim, kraus_rank, &mut rng);
        let trial_cfg = ComplexityConfig {
            seed: cfg.seed.wrapping_add(trial as u64 * SAMPLED_RESTARTS as u64),
            ..cfg
        };

        let c = complexity(&rho);
        let t = transmitted_complexity(&rho, &channel, &trial_cfg)?;
        // (i)
        dev[0] = dev[0].max((-c).max(0.0)).max((-t).max(0.0));
        // (ii)
        let rotated = rho.conjugate_by(&u)?;
        dev[1] = dev[1].max((complexity(&rotated) - c).abs());
        // (iii)
        let joint = complexity(&rho.tensor(&sigma)?);
        dev[2] = dev[2].max((joint - c - complexity(&sigma)).abs());
        // (iv), every sampled decomposition
        for v in decomposition_values(&rho, &channel, &trial_cfg)? {
            dev[3] = dev[3].max((v.mutual_sum - c).max(0.0));
            sampled += 1;
        }
        // (v)
        let t_id = transmitted_complexity(&rho, &Channel::identity(dim), &trial_cfg)?;
        dev[4] = dev[4].max((t_id - c).abs());

        t_fixed = t_fixed.max((transmitted_complexity(&rotated, &channel, &trial_cfg)? - t).abs());
        // the search bound is basis dependent, so compare exact values only
        if let (0, Channel::Kraus(ops)) = (trial % 2, &channel) {
            let covariant = Channel::Kraus(ops.iter().map(|a| a * u.adjoint()).collect());
            t_cov = t_cov.max((transmitted_complexity(&rotated, &covariant, &trial_cfg)? - t).abs());
        }
    }

    let specs: [(&str, &str, f64); 5] = [
        ("i", "C(rho) >= 0 and T(rho; L) >= 0", BOUND_TOL),
        ("ii", "C(U rho U*) = C(rho)", EXACT_TOL),
        ("iii", "C(rho (x) sigma) = C(rho) + C(sigma)", EXACT_TOL),
        ("iv", "T(rho; L) <= C(rho) on every sampled decomposition", BOUND_TOL),
        ("v", "T(rho; id) = C(rho)", EXACT_TOL),
    ];
    let axioms: Vec<AxiomCheck> = specs
        .iter()
        .zip(dev)
        .map(|(&(axiom, statement, tolerance), worst)| AxiomCheck {
            axiom,
            statement,
            passed: worst <= tolerance,
            worst_deviation: worst,
            tolerance,
        })
        .collect();
    Ok(AxiomReport {
        dim,
        trials,
        seed,
        all_passed: axioms.iter().all(|a| a.passed),
        axioms,
        t_fixed_channel_deviation: t_fixed,
        t_covariant_deviation: t_cov,
        sampled_decompositions: sampled,
    })
}
