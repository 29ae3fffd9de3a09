use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

use rht_core::exactlin::{sparse_to_dense, RatMatrix};
use rht_core::{int, SparseVec};

fn config() -> Config {
    Config { cases: 128, rng_seed: RngSeed::Fixed(0xe1a), failure_persistence: None, ..Config::default() }
}

fn matrix() -> impl Strategy<Value = RatMatrix> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r)
            .prop_map(|rows| RatMatrix::from_rows(&rows.iter().map(|row| row.iter().map(|&x| int(x)).collect()).collect::<Vec<_>>()))
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn rank_nullity(m in matrix()) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).is_empty());
        }
        prop_assert_eq!(RatMatrix::from_columns(m.cols(), &kernel).rank(), kernel.len());
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn solve_finds_preimages(m in matrix(), x in proptest::collection::vec(-3i64..=3, 5)) {
        let x: SparseVec = x.iter().take(m.cols()).enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, int(c))).collect();
        let b = m.mul_vec(&x);
        let y = m.solve(&b).unwrap().expect("b is in the image");
        prop_assert_eq!(sparse_to_dense(&m.mul_vec(&y), m.rows()), sparse_to_dense(&b, m.rows()));
    }
}
