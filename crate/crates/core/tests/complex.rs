use flagcoh::combinatorics::WeightSequence;
use flagcoh::complex::{
    homology, lucas_reduce, poincare_formula_all_ones, ses_dimension_check, ChainComplex,
    Coefficients,
};
use flagcoh::{Exec, Prime};
use proptest::prelude::*;

fn weights() -> impl Strategy<Value = Vec<i64>> {
    (1usize..=8).prop_flat_map(|d| proptest::collection::vec(0i64..=6, d + 1))
}

fn small_prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(2u64), Just(3), Just(5)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn differentials_compose_to_zero(w in weights(), q in small_prime()) {
        let w = WeightSequence::new(w).unwrap();
        let c = ChainComplex::build(&w, Coefficients::Field(Prime::new(q).unwrap())).unwrap();
        prop_assert!(c.is_complex());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn integral_differentials_compose_to_zero(w in (1usize..=6).prop_flat_map(|d| proptest::collection::vec(0i64..=6, d + 1)), w0 in -12i64..0) {
        let mut w = w;
        w[0] = w0;
        let c = ChainComplex::build(&WeightSequence::new(w).unwrap(), Coefficients::Integers).unwrap();
        prop_assert!(c.is_complex());
    }

    #[test]
    fn exact_above_total_weight(w in weights()) {
        let total: i64 = w.iter().sum();
        let q = (total + 1..).find(|&x| flagcoh::linalg::is_prime(x as u64)).unwrap();
        let h = homology(&WeightSequence::new(w).unwrap(), Prime::new(q as u64).unwrap(), Exec::Sequential).unwrap();
        prop_assert!(h.is_zero());
    }

    #[test]
    fn lucas_reduction_keeps_poincare_polynomial(w in weights(), q in small_prime(), extra in 0i64..40) {
        let p = Prime::new(q).unwrap();
        let mut w = w;
        w[0] += extra;
        let w = WeightSequence::new(w).unwrap();
        let reduced = lucas_reduce(&w, p).unwrap();
        prop_assert_eq!(
            homology(&w, p, Exec::Sequential).unwrap(),
            homology(&reduced, p, Exec::Sequential).unwrap()
        );
    }

    #[test]
    fn short_exact_sequence_consequences(w in weights(), q in small_prime(), split in 0usize..8) {
        let w = WeightSequence::new(w).unwrap();
        let i = split % w.len_edges();
        let r = ses_dimension_check(&w, i, Prime::new(q).unwrap(), Exec::Sequential).unwrap();
        prop_assert!(r.holds(), "{:?}", r);
    }
}

#[test]
fn euler_characteristic_vanishes() {
    for d in 1..=12 {
        let c = ChainComplex::build(&WeightSequence::all_ones(d), Coefficients::Field(Prime::new(2).unwrap())).unwrap();
        let chi: i64 = (0..=d).map(|k| if k % 2 == 0 { c.dim(k) as i64 } else { -(c.dim(k) as i64) }).sum();
        assert_eq!(chi, 0);
    }
}

#[test]
fn all_ones_formula_small_lengths() {
    for d in 0..=9 {
        for q in [2u64, 3, 5, 7] {
            let p = Prime::new(q).unwrap();
            assert_eq!(
                homology(&WeightSequence::all_ones(d), p, Exec::Parallel).unwrap(),
                poincare_formula_all_ones(d, p),
                "d={d} p={q}"
            );
        }
    }
}

#[test]
fn sequential_and_parallel_agree() {
    let w = WeightSequence::parse("3,1,2,1,1,2,1,1,1").unwrap();
    for q in [2u64, 3, 5] {
        let p = Prime::new(q).unwrap();
        assert_eq!(homology(&w, p, Exec::Sequential).unwrap(), homology(&w, p, Exec::Parallel).unwrap());
    }
}
