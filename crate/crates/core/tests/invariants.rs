use infodyn_core::channel::{k_tau_apply, Channel, TraceClassWeight};
use infodyn_core::hilbert::{
    max_abs_diff, partial_trace, random, relative_entropy, tensor, von_neumann_entropy,
    DensityOperator, IndexGroup, Operator, StateVector, C64,
};
use infodyn_core::metrics::{chaos_degree_quantum, ComplexityConfig};
use infodyn_core::recognition::{
    lambda_direct, lambda_spectral_from, outcome_distribution, BellSystem, SignalBasis,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn group_laws(n in 1usize..20, k in 0usize..20, l in 0usize..20) {
        let g = IndexGroup::new(n).unwrap();
        let (k, l) = (k % n, l % n);
        prop_assert_eq!(g.add(k, 0), k);
        prop_assert_eq!(g.sub(g.add(k, l), l), k);
        prop_assert_eq!(g.add(k, l), g.add(l, k));
    }

    #[test]
    fn partial_trace_of_product(seed: u64, a in 1usize..4, b in 1usize..4) {
        let mut r = rng(seed);
        let x = random::random_density(a, &mut r);
        let y = random::random_density(b, &mut r);
        let xy = tensor(x.matrix(), y.matrix());
        prop_assert!(max_abs_diff(&partial_trace(&xy, &[a, b], &[1]).unwrap(), x.matrix()) < 1e-12);
        prop_assert!(max_abs_diff(&partial_trace(&xy, &[a, b], &[0]).unwrap(), y.matrix()) < 1e-12);
    }

    #[test]
    fn kraus_channels_map_states_to_states(seed: u64, n in 1usize..5, k in 1usize..5) {
        let mut r = rng(seed);
        let ch = Channel::random_kraus(n, k, &mut r);
        let rho = random::random_density(n, &mut r);
        let out = ch.apply(&rho).unwrap();
        prop_assert!((out.matrix().trace().re - 1.0).abs() < 1e-10);
        prop_assert!(*out.eigenvalues().last().unwrap() >= 0.0);
        prop_assert!(ch.choi_check().unwrap().completely_positive);
    }

    #[test]
    fn klein_inequality(seed: u64, n in 1usize..5) {
        let mut r = rng(seed);
        let rho = random::random_density(n, &mut r);
        let sigma = random::random_density(n, &mut r);
        prop_assert!(relative_entropy(&rho, &sigma).unwrap() >= -1e-12);
        prop_assert!(relative_entropy(&rho, &rho).unwrap().abs() < 1e-9);
    }

    #[test]
    fn chaos_degree_bounds(seed: u64, n in 2usize..5, k in 1usize..4) {
        let mut r = rng(seed);
        let rho = random::random_density(n, &mut r);
        let ch = Channel::random_kraus(n, k, &mut r);
        let cfg = ComplexityConfig { restarts: 8, ..ComplexityConfig::default() };
        let rep = chaos_degree_quantum(&rho, &ch, &cfg).unwrap();
        prop_assert!(rep.chaos_degree >= -1e-12);
        prop_assert!(rep.transmitted >= -1e-12);
        prop_assert!(rep.chaos_degree <= rep.output_entropy + 1e-10);
        prop_assert!((rep.chaos_degree + rep.transmitted - rep.output_entropy).abs() < 1e-8);
    }

    #[test]
    fn outcome_probabilities_sum_to_one(seed: u64, n in 1usize..6, fourier: bool) {
        let mut r = rng(seed);
        let basis = if fourier { SignalBasis::fourier(n) } else { SignalBasis::standard(n) };
        let bell = BellSystem::new(basis.unwrap()).unwrap();
        let rho = random::random_density(n, &mut r);
        let gamma = random::random_density(n, &mut r);
        let p = outcome_distribution(&rho, &gamma, &bell).unwrap();
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        prop_assert!(p.iter().all(|&x| x >= 0.0));
    }
}

/// A rank-2 degenerate weight written in two different orthonormal frames
/// of its eigenspace.
fn degenerate_weight_two_ways(seed: u64) -> (TraceClassWeight, TraceClassWeight, Operator) {
    let n = 3;
    let mut r = rng(seed);
    let u = random::random_unitary(n, &mut r);
    let frame = |c: usize| -> StateVector { u.column(c).into_owned() };
    let first = [frame(0), frame(1), frame(2)];
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mixed = [
        (&first[0] + &first[1]).scale(s),
        (&first[0] - &first[1]).scale(s),
        frame(2),
    ];
    let w = [0.4, 0.4, 0.2];
    let t1 = TraceClassWeight::from_representation(&w, &first).unwrap();
    let t2 = TraceClassWeight::from_representation(&w, &mixed).unwrap();
    let expected = u.clone() * Operator::from_diagonal(&nalgebra::DVector::from_row_slice(&[
        C64::new(0.4, 0.0),
        C64::new(0.4, 0.0),
        C64::new(0.2, 0.0),
    ])) * u.adjoint();
    (t1, t2, expected)
}

#[test]
fn k_tau_is_representation_independent() {
    for seed in 0..20 {
        let (t1, t2, tau) = degenerate_weight_two_ways(seed);
        assert!(max_abs_diff(t1.matrix(), &tau) < 1e-12);
        let rho = random::random_density(3, &mut rng(seed + 100));
        let a = k_tau_apply(&t1, rho.matrix()).unwrap();
        let b = k_tau_apply(&t2, rho.matrix()).unwrap();
        let schur = Operator::from_fn(3, 3, |i, j| tau[(i, j)] * rho.matrix()[(i, j)]);
        assert!(max_abs_diff(&a, &b) <= 1e-12);
        assert!(max_abs_diff(&a, &schur) <= 1e-12);
    }
}

#[test]
fn recognition_ignores_choice_of_degenerate_spectral_frame() {
    let n = 3;
    let bell = BellSystem::new(SignalBasis::fourier(n).unwrap()).unwrap();
    let mut r = rng(9);
    let rho = random::random_density(n, &mut r);
    let u = random::random_unitary(n, &mut r);
    let w = [0.4, 0.4, 0.2];
    let gamma = DensityOperator::diagonal(&w).unwrap().conjugate_by(&u).unwrap();
    let frame_a: Vec<StateVector> = (0..n).map(|c| u.column(c).into_owned()).collect();
    let rot = random::random_unitary(2, &mut r);
    let frame_b: Vec<StateVector> = vec![
        &frame_a[0] * rot[(0, 0)] + &frame_a[1] * rot[(1, 0)],
        &frame_a[0] * rot[(0, 1)] + &frame_a[1] * rot[(1, 1)],
        frame_a[2].clone(),
    ];
    let rho_w = rho.eigenvalues().to_vec();
    let rho_v: Vec<StateVector> = (0..n).map(|c| rho.eigenvectors().column(c).into_owned()).collect();
    for i in 0..n {
        for j in 0..n {
            let direct = lambda_direct(i, j, &rho, &gamma, &bell).unwrap();
            let a = lambda_spectral_from(i, j, (&rho_w, &rho_v), (&w, &frame_a), &bell).unwrap();
            let b = lambda_spectral_from(i, j, (&rho_w, &rho_v), (&w, &frame_b), &bell).unwrap();
            assert!(max_abs_diff(a.matrix(), b.matrix()) < 1e-12);
            assert!(max_abs_diff(a.matrix(), direct.matrix()) < 1e-10);
        }
    }
    assert!(von_neumann_entropy(&gamma) > 0.0);
}
