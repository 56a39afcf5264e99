mod common;

use leibniz_core::linalg::{nullspace, rat, rref, Mat, RowReducer};
use leibniz_core::Rat;
use num_traits::Zero;
use proptest::prelude::*;

fn small_matrix() -> impl Strategy<Value = Mat> {
    (1usize..7, 1usize..8).prop_flat_map(|(r, c)| {
        // Mostly zeros so that ranks vary.
        proptest::collection::vec(prop_oneof![4 => Just(0i64), 3 => -4i64..5], r * c).prop_map(
            move |xs| {
                let rows: Vec<Vec<Rat>> = xs.chunks(c).map(|ch| ch.iter().map(|&x| rat(x)).collect()).collect();
                Mat::from_rows(c, rows).unwrap()
            },
        )
    })
}

fn rows_of(m: &Mat) -> Vec<Vec<Rat>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

proptest! {
    #[test]
    fn dense_and_sparse_agree(m in small_matrix()) {
        let dense = rref(&m);
        let mut red = RowReducer::new(m.cols());
        for r in 0..m.rows() {
            red.insert_dense(m.row(r));
        }
        let sparse = red.echelon();
        prop_assert_eq!(&dense.pivot_cols, &sparse.pivot_cols);
        for r in 0..dense.rank {
            prop_assert_eq!(dense.rref.row(r), sparse.rref.row(r));
        }
        prop_assert_eq!(nullspace(&m), red.nullspace());
    }

    #[test]
    fn rank_nullity(m in small_matrix()) {
        let e = rref(&m);
        prop_assert_eq!(e.rank + nullspace(&m).len(), m.cols());
        prop_assert_eq!(e.rank, common::rank(&rows_of(&m)));
    }

    #[test]
    fn rref_is_idempotent(m in small_matrix()) {
        let once = rref(&m);
        let twice = rref(&once.rref);
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in small_matrix()) {
        let ker = nullspace(&m);
        for v in &ker {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        // Independent oracle kernel has the same span.
        let oracle = common::kernel(rows_of(&m), m.cols());
        prop_assert_eq!(oracle.len(), ker.len());
        if !ker.is_empty() {
            prop_assert!(common::same_span(&oracle, &ker));
        }
    }
}
