use flagcoh::linalg::{IntegerMatrix, Prime, PrimeFieldMatrix, RankConfig};
use num_traits::Zero;
use proptest::prelude::*;

/// Division-free elimination: rows are combined as `piv * r - lead * pivot_row`,
/// so no inverses are ever taken.
fn oracle_rank(rows: &[Vec<i64>], p: i64) -> usize {
    let mut m: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(p)).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, pr);
        let piv = m[rank][c];
        for r in 0..m.len() {
            if r == rank || m[r][c] == 0 {
                continue;
            }
            let lead = m[r][c];
            for k in 0..cols {
                m[r][k] = (piv * m[r][k] - lead * m[rank][k]).rem_euclid(p);
            }
        }
        rank += 1;
    }
    rank
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-20i64..=20, c), r)
    })
}

fn prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(2u64), Just(3), Just(5), Just(7)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn rank_matches_division_free_oracle(rows in small_matrix(), q in prime()) {
        let p = Prime::new(q).unwrap();
        let m = PrimeFieldMatrix::from_rows(p, &rows).unwrap();
        let expect = oracle_rank(&rows, q as i64);
        prop_assert_eq!(m.rank(), expect);
        prop_assert_eq!(m.rank_with(RankConfig { sparse_threshold: 0 }), expect);
    }

    #[test]
    fn rank_of_transpose(rows in small_matrix(), q in prime()) {
        let m = PrimeFieldMatrix::from_rows(Prime::new(q).unwrap(), &rows).unwrap();
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn smith_predicts_rank(rows in small_matrix(), q in prime()) {
        let p = Prime::new(q).unwrap();
        let inv = IntegerMatrix::from_rows(&rows).unwrap().smith_invariants().unwrap();
        for w in inv.windows(2) {
            if !w[1].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
        let predicted = inv
            .iter()
            .filter(|x| !(*x % q).is_zero())
            .count();
        prop_assert_eq!(PrimeFieldMatrix::from_rows(p, &rows).unwrap().rank(), predicted);
    }

    #[test]
    fn rref_keeps_row_space(rows in small_matrix(), q in prime(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let m = PrimeFieldMatrix::from_rows(Prime::new(q).unwrap(), &rows).unwrap();
        let mut order: Vec<usize> = (0..m.cols()).collect();
        order.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let (r, pivots) = m.rref_with_order(&order).unwrap();
        prop_assert_eq!(pivots.len(), m.rank());
        prop_assert_eq!(r.rank(), m.rank());
        prop_assert_eq!(r.vstack(&m).unwrap().rank(), m.rank());
        // each pivot column is a unit vector
        for (i, &c) in pivots.iter().enumerate() {
            for row in 0..r.rows() {
                prop_assert_eq!(r.get(row, c), u32::from(row == i));
            }
        }
    }
}

#[test]
fn middle_differential_over_small_primes() {
    let rows = vec![vec![-3, 2, 0], vec![-3, 0, 3], vec![0, -2, 3]];
    for (q, r) in [(2, 2), (3, 1), (5, 2), (7, 2)] {
        let m = PrimeFieldMatrix::from_rows(Prime::new(q).unwrap(), &rows).unwrap();
        assert_eq!(m.rank(), r);
        assert_eq!(oracle_rank(&rows, q as i64), r);
    }
}

#[test]
fn sparse_path_on_wide_matrix() {
    let p = Prime::new(3).unwrap();
    // 3 x 600, third row dependent
    let mut rows = vec![vec![0i64; 600]; 3];
    for c in 0..600 {
        rows[0][c] = (c % 3) as i64;
        rows[1][c] = ((c * 7) % 5) as i64;
        rows[2][c] = rows[0][c] + 2 * rows[1][c];
    }
    let m = PrimeFieldMatrix::from_rows(p, &rows).unwrap();
    assert_eq!(m.rank(), 2);
    assert_eq!(m.rank_with(RankConfig { sparse_threshold: 10_000 }), 2);
}
