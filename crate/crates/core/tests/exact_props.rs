mod common;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use residuum::exact::{det, is_primitive, primitive, unimodular_complement, IntMatrix};

fn bigs(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=6).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-9i64..=9, n), n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn det_matches_leibniz(m in matrix()) {
        let d = det(&IntMatrix::from_i64(&m).unwrap()).unwrap();
        prop_assert_eq!(d, BigInt::from(common::leibniz_det(&m)));
    }

    #[test]
    fn det_is_alternating(m in matrix(), i in 0usize..6, j in 0usize..6) {
        let n = m.len();
        let (i, j) = (i % n, j % n);
        prop_assume!(i != j);
        let a = IntMatrix::from_i64(&m).unwrap();
        let mut b = a.clone();
        b.swap_rows(i, j);
        prop_assert_eq!(det(&a).unwrap(), -det(&b).unwrap());
    }

    #[test]
    fn primitive_ignores_positive_scaling(v in prop::collection::vec(-50i64..=50, 1..5), k in 1i64..20) {
        prop_assume!(v.iter().any(|&x| x != 0));
        let p = primitive(&bigs(&v)).unwrap();
        let scaled: Vec<i64> = v.iter().map(|x| x * k).collect();
        prop_assert_eq!(&primitive(&bigs(&scaled)).unwrap(), &p);
        prop_assert!(is_primitive(&p));
        // first nonzero sign kept, and v is an integer multiple of p
        let first = v.iter().find(|&&x| x != 0).unwrap();
        let pf = p.iter().find(|x| !x.is_zero()).unwrap();
        prop_assert_eq!(first.signum(), if pf.is_positive() { 1 } else { -1 });
        let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        for (x, y) in v.iter().zip(&p) {
            prop_assert_eq!(BigInt::from(*x), y * BigInt::from(g));
        }
    }

    #[test]
    fn unimodular_complement_has_unit_determinant(a in -300i64..=300, b in -300i64..=300) {
        prop_assume!(a != 0 || b != 0);
        let rho = primitive(&bigs(&[a, b])).unwrap();
        let eta = unimodular_complement(&rho).unwrap();
        let d = &rho[0] * &eta[1] - &rho[1] * &eta[0];
        prop_assert_eq!(d.abs(), BigInt::from(1));
        prop_assert!(!eta[0].is_negative());
    }
}

#[test]
fn non_square_is_an_error() {
    let m = IntMatrix::from_i64(&[vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
    assert!(det(&m).is_err());
    assert!(primitive(&bigs(&[0, 0])).is_err());
    assert!(unimodular_complement(&bigs(&[2, 4])).is_err());
}

#[test]
fn spec_values() {
    let d = |rows: &[Vec<i64>]| det(&IntMatrix::from_i64(rows).unwrap()).unwrap();
    assert_eq!(d(&[vec![5, 0], vec![0, 3]]), BigInt::from(15));
    assert_eq!(d(&[vec![5, 0], vec![2, 2]]), BigInt::from(10));
    assert_eq!(primitive(&bigs(&[2, 8])).unwrap(), bigs(&[1, 4]));
    assert_eq!(primitive(&bigs(&[-6, -9])).unwrap(), bigs(&[-2, -3]));
    assert_eq!(unimodular_complement(&bigs(&[1, 1])).unwrap().to_vec(), bigs(&[0, 1]));
    assert_eq!(unimodular_complement(&bigs(&[3, 5])).unwrap().to_vec(), bigs(&[1, 2]));
    assert_eq!(unimodular_complement(&bigs(&[1, 0])).unwrap().to_vec(), bigs(&[0, 1]));
}

#[test]
fn leibniz_oracle_sanity() {
    assert_eq!(common::leibniz_det(&[vec![5, 0], vec![2, 2]]), 10);
    assert_eq!(common::leibniz_det(&[vec![0, 1], vec![1, 0]]), -1);
    assert_eq!(common::leibniz_det(&[vec![7]]), 7);
}
