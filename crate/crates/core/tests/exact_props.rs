use hypertoric_core::exact::{cokernel_torsion_elements, integer_kernel, snf, solve_rational, IntMatrix, ModZVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, c), r)
            .prop_map(|rows| IntMatrix::from_rows(&rows).unwrap())
    })
}

fn square(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim).prop_flat_map(move |n| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, n), n)
            .prop_map(|rows| IntMatrix::from_rows(&rows).unwrap())
    })
}

proptest! {
    #[test]
    fn snf_factorizes(m in matrix(4, 12)) {
        let s = snf(&m);
        prop_assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert!(s.u.det().unwrap().abs().is_one());
        prop_assert!(s.v.det().unwrap().abs().is_one());
        prop_assert_eq!(s.rank(), m.rank());
        let f = s.invariant_factors();
        prop_assert!(f.iter().all(|x| x.is_positive()));
        for w in f.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn kernel_vectors_are_killed(m in matrix(4, 6)) {
        let k = integer_kernel(&m);
        prop_assert_eq!(k.len(), m.cols() - m.rank());
        for v in k {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solve_recovers_solution(m in square(3, 9), x in prop::collection::vec(-20i64..=20, 3)) {
        prop_assume!(!m.det().unwrap().is_zero());
        let x: Vec<BigRational> = x[..m.cols()].iter().map(|&v| BigRational::from_integer(v.into())).collect();
        let b = m.mul_rational_vec(&x).unwrap();
        prop_assert_eq!(solve_rational(&m, &b).unwrap(), Some(x));
    }

    #[test]
    fn cokernel_order_is_det(m in square(3, 5)) {
        let det = m.det().unwrap().abs();
        prop_assume!(!det.is_zero());
        let elements = cokernel_torsion_elements(&m).unwrap();
        prop_assert_eq!(BigInt::from(elements.len()), det);
        for e in &elements {
            // Every element pairs integrally with every column.
            for j in 0..m.cols() {
                prop_assert!(e.pair(&m.column(j)).is_integer());
            }
        }
    }

    #[test]
    fn modz_group_laws(a in prop::collection::vec((-30i64..30, 1i64..12), 2), b in prop::collection::vec((-30i64..30, 1i64..12), 2)) {
        let v = |p: &[(i64, i64)]| ModZVector::new(p.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect());
        let (x, y) = (v(&a), v(&b));
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert!(x.add(&x.neg()).is_zero());
        let order = x.order();
        let scaled = ModZVector::new(x.entries().iter().map(|e| e * BigRational::from_integer(order.clone())).collect());
        prop_assert!(scaled.is_zero());
    }
}
