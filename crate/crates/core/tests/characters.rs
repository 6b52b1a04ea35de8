use flagcoh::character::{elementary, h, h_trunc, nim_poly, schur2, schur2_trunc, LaurentPolynomial};
use flagcoh::combinatorics::nim_sum;
use num_bigint::BigInt;
use proptest::prelude::*;

fn poly(n: usize) -> impl Strategy<Value = LaurentPolynomial> {
    proptest::collection::vec((proptest::collection::vec(-3i32..=3, n), -4i64..=4), 0..6).prop_map(
        move |terms| {
            let mut f = LaurentPolynomial::zero(n);
            for (e, c) in terms {
                f.add_term(e, BigInt::from(c));
            }
            f
        },
    )
}

proptest! {
    #[test]
    fn frobenius_is_multiplicative((f, g) in (poly(3), poly(3)), q in 1u32..5) {
        let lhs = (&f * &g).frobenius(q).unwrap();
        let rhs = &f.frobenius(q).unwrap() * &g.frobenius(q).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn frobenius_is_additive((f, g) in (poly(2), poly(2)), q in 1u32..5) {
        prop_assert_eq!((&f + &g).frobenius(q).unwrap(), &f.frobenius(q).unwrap() + &g.frobenius(q).unwrap());
    }
}

#[test]
fn constructors_are_symmetric() {
    for n in 1..=4 {
        for d in -1..=6 {
            assert!(h(d, n).is_symmetric());
            assert!(elementary(d, n).is_symmetric());
            for q in [2, 3, 4] {
                assert!(h_trunc(d, q, n).is_symmetric());
            }
            for b in -1..=3 {
                assert!(schur2(d, b, n).is_symmetric());
                assert!(schur2_trunc(d, b, 3, n).is_symmetric());
            }
        }
        for m in 0..=4 {
            assert!(nim_poly(m, n).is_symmetric());
        }
    }
}

#[test]
fn nim_in_two_variables_is_diagonal() {
    for m in 0..=12u64 {
        let brute: Vec<(u64, u64)> = (0..=2 * m)
            .map(|i| (i, 2 * m - i))
            .filter(|&(i, j)| nim_sum(&[i, j]) == 0)
            .collect();
        assert_eq!(brute, vec![(m, m)]);
        assert_eq!(nim_poly(m, 2), LaurentPolynomial::monomial(vec![m as i32, m as i32], 1));
    }
}

#[test]
fn dimensions_by_stars_and_bars() {
    for n in 1..=5usize {
        for d in 0..=6i64 {
            let expect = flagcoh::combinatorics::binomial((n as i64 + d - 1) as u64, d as u64);
            assert_eq!(h(d, n).dim_eval(), expect);
        }
    }
}

#[test]
fn divided_square_twisted_by_determinant() {
    // weights of D^2(k^2) shifted by -(1,1)
    let d2 = h(2, 2);
    let w = d2.shift(&[-1, -1]).unwrap();
    let expect = LaurentPolynomial::from_terms(
        2,
        [
            (vec![1, -1], BigInt::from(1)),
            (vec![0, 0], BigInt::from(1)),
            (vec![-1, 1], BigInt::from(1)),
        ],
    )
    .unwrap();
    assert_eq!(w, expect);
    assert!(w.is_symmetric());
    assert_eq!(w.dim_eval(), BigInt::from(3));
}
