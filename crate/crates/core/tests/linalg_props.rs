use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use suq2_core::field::FieldElem;
use suq2_core::linalg::{det, inverse, kernel, rank, solve, Mat};

fn int_mat(rows: usize, cols: usize, sparse: bool) -> impl Strategy<Value = Mat<BigRational>> {
    let entry = if sparse { prop_oneof![3 => Just(0i64), 2 => -3i64..=3].boxed() } else { (-4i64..=4).boxed() };
    prop::collection::vec(entry, rows * cols)
        .prop_map(move |v| Mat::from_vec(rows, cols, v.into_iter().map(|x| BigRational::from_integer(x.into())).collect()))
}

/// Integer entries a + b·q + c·s.
fn sym_mat(n: usize) -> impl Strategy<Value = Mat<FieldElem>> {
    prop::collection::vec((prop_oneof![2 => Just(0i64), 1 => -2i64..=2], -1i64..=1, -1i64..=1), n * n).prop_map(move |v| {
        Mat::from_vec(
            n,
            n,
            v.into_iter()
                .map(|(a, b, c)| {
                    if a == 0 {
                        FieldElem::zero()
                    } else {
                        FieldElem::from_i64(a)
                            .add_ref(&FieldElem::q().scale_int(b))
                            .add_ref(&FieldElem::s().scale_int(c))
                    }
                })
                .collect(),
        )
    })
}

fn cofactor_det<T: suq2_core::linalg::Ring>(m: &Mat<T>) -> T {
    let n = m.rows();
    if n == 0 {
        return T::one();
    }
    let mut acc = T::zero();
    for j in 0..n {
        if m.get(0, j).is_zero() {
            continue;
        }
        let rows: Vec<usize> = (1..n).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let term = m.get(0, j).clone() * cofactor_det(&m.submatrix(&rows, &cols));
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

fn to_field(m: &Mat<BigRational>) -> Mat<FieldElem> {
    m.map(FieldElem::from_rational)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn det_is_multiplicative(a in int_mat(4, 4, false), b in int_mat(4, 4, false)) {
        prop_assert_eq!(det(&a.mul(&b).unwrap()), det(&a) * det(&b));
    }

    #[test]
    fn det_matches_cofactor_expansion_on_sparse_matrices(a in int_mat(6, 6, true)) {
        prop_assert_eq!(det(&a), cofactor_det(&a));
        prop_assert_eq!(det(&to_field(&a)), FieldElem::from_rational(&cofactor_det(&a)));
    }

    #[test]
    fn symbolic_det_matches_cofactor_expansion(a in sym_mat(4)) {
        prop_assert_eq!(det(&a), cofactor_det(&a));
    }

    #[test]
    fn kernel_vectors_are_annihilated(a in int_mat(5, 7, true)) {
        let ker = kernel(&a);
        prop_assert_eq!(rank(&a) + ker.len(), 7);
        for v in &ker {
            prop_assert!(a.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
        let fa = to_field(&a);
        let fker = kernel(&fa);
        prop_assert_eq!(fker.len(), ker.len());
        prop_assert_eq!(rank(&fa), rank(&a));
        for v in &fker {
            prop_assert!(fa.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn symbolic_kernel_is_annihilated(a in sym_mat(4)) {
        let ker = kernel(&a);
        prop_assert_eq!(rank(&a) + ker.len(), 4);
        prop_assert_eq!(ker.is_empty(), !det(&a).is_zero());
        for v in &ker {
            prop_assert!(a.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_round_trips(a in int_mat(5, 5, true), x in prop::collection::vec(-5i64..=5, 5)) {
        prop_assume!(!det(&a).is_zero());
        let x: Vec<BigRational> = x.into_iter().map(|v| BigRational::from_integer(v.into())).collect();
        let b = a.mul_vec(&x).unwrap();
        prop_assert_eq!(solve(&a, &b).unwrap(), x.clone());
        let fx: Vec<FieldElem> = x.iter().map(FieldElem::from_rational).collect();
        let fb = to_field(&a).mul_vec(&fx).unwrap();
        prop_assert_eq!(solve(&to_field(&a), &fb).unwrap(), fx);
        let inv = inverse(&a).unwrap();
        prop_assert_eq!(a.mul(&inv).unwrap(), Mat::identity(5));
    }

    #[test]
    fn singular_systems_are_rejected(a in int_mat(4, 4, true)) {
        prop_assume!(det(&a).is_zero());
        prop_assert!(inverse(&a).is_err());
    }
}
