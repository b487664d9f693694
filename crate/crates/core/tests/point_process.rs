use dpp_core::linalg::Matrix;
use dpp_core::point_process::{
    brute_force_correlations, enumerate_samples, Config, GroundSet, LEnsemble, PfLEnsemble,
};
use dpp_core::random::{rational_matrix, rational_skew, rng};
use dpp_core::{Scalar, Q};
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn probabilities_sum_to_one(seed in any::<u64>(), n in 1usize..6) {
        let mut r = rng(seed);
        let l = rational_matrix(&mut r, n, n);
        let window = Config(r.gen_range(0..1u64 << n));
        let Ok(ens) = LEnsemble::with_window(GroundSet::range(n), l, window) else { return Ok(()) };
        prop_assert_eq!(ens.prob_table().unwrap().total(), Q::one());
    }

    #[test]
    fn kernel_minors_are_superset_sums(seed in any::<u64>(), n in 1usize..6) {
        let mut r = rng(seed);
        let l = rational_matrix(&mut r, n, n);
        let window = Config(r.gen_range(0..1u64 << n));
        let Ok(ens) = LEnsemble::with_window(GroundSet::range(n), l, window) else { return Ok(()) };
        let rho = brute_force_correlations(&ens.prob_table().unwrap()).unwrap();
        prop_assert_eq!(ens.kernel().unwrap().all_correlations().unwrap(), rho);
    }

    #[test]
    fn unconditioned_kernel_agrees(seed in any::<u64>(), n in 1usize..5) {
        let l = rational_matrix(&mut rng(seed), n, n);
        let Ok(ens) = LEnsemble::new(GroundSet::range(n), l) else { return Ok(()) };
        prop_assert_eq!(ens.kernel().unwrap().k, ens.kernel_unconditioned().unwrap().k);
    }

    #[test]
    fn pfaffian_minors_are_superset_sums(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let l = rational_skew(&mut r, 2 * n);
        let window = Config(r.gen_range(0..1u64 << n));
        let Ok(ens) = PfLEnsemble::with_window(GroundSet::range(n), l, window) else { return Ok(()) };
        let table = ens.prob_table().unwrap();
        prop_assert_eq!(table.total(), Q::one());
        let rho = brute_force_correlations(&table).unwrap();
        prop_assert_eq!(ens.kernel().unwrap().all_correlations().unwrap(), rho);
    }
}

#[test]
fn sample_frequencies_follow_probabilities() {
    let l = Matrix::diagonal(&[Q::from_i64(1), Q::from_ratio(1, 3), Q::from_i64(3)]);
    let ens = LEnsemble::new(GroundSet::range(3), l).unwrap();
    let table = ens.prob_table().unwrap();
    let draws = enumerate_samples(&table, 11, 20_000).unwrap();
    for m in 0..8u64 {
        let freq = draws.iter().filter(|c| c.0 == m).count() as f64 / draws.len() as f64;
        let p = table.get(Config(m)).to_complex().re;
        assert!((freq - p).abs() < 0.02, "mask {m:b}: {freq} vs {p}");
    }
    assert_eq!(draws, enumerate_samples(&table, 11, 20_000).unwrap());
}
