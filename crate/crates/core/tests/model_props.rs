mod common;

use common::random_instance;
use hypertoric_core::inertia::{double_inertia, inertia_components, inertia_elements, TorsionElement};
use hypertoric_core::model::{lambda_coeffs, minimize_sets};
use hypertoric_core::orbifold::obstruction;
use hypertoric_core::verifiers::{hypertoric_normal_models, sre_condition_iii};
use hypertoric_core::StackModel;
use num_rational::BigRational;
use proptest::prelude::*;

fn coord_key(m: &StackModel, i: usize) -> (usize, char) {
    let c = &m.coords()[i];
    (c.column, c.label.chars().next().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn lambda_solves_basis_system(seed in 0u64..10_000) {
        let (a, t) = random_instance(seed);
        for basis in a.column_bases() {
            let lambda = lambda_coeffs(a.matrix(), &basis, &t).unwrap();
            let sub = a.matrix().select_columns(&basis);
            let theta: Vec<BigRational> = t.0.iter().cloned().map(BigRational::from_integer).collect();
            prop_assert_eq!(sub.mul_rational_vec(&lambda).unwrap(), theta);
            prop_assert!(lambda.iter().all(|l| l != &BigRational::from_integer(0.into())));
        }
    }

    /// Rebuilding an inertia component from `A_g` and `θ` gives the parent's
    /// unstable sets cut down to the surviving coordinates.
    #[test]
    fn component_restriction_matches_intersection(seed in 0u64..10_000) {
        let (a, t) = random_instance(seed);
        let m = StackModel::lawrence(a, t).unwrap();
        for c in inertia_components(&m).unwrap() {
            let kept: Vec<usize> = (0..m.num_coords())
                .filter(|&i| c.fixed_columns.contains(&m.coords()[i].column))
                .collect();
            let cut: Vec<Vec<usize>> = m
                .unstable_sets()
                .iter()
                .map(|s| s.iter().copied().filter(|i| kept.contains(i)).collect())
                .collect();
            let mut expected: Vec<Vec<(usize, char)>> = minimize_sets(cut)
                .iter()
                .map(|s| s.iter().map(|&i| coord_key(&m, i)).collect())
                .collect();
            let sub = &c.model;
            let mut got: Vec<Vec<(usize, char)>> = sub
                .unstable_sets()
                .iter()
                .map(|s| {
                    s.iter()
                        .map(|&i| {
                            let (col, kind) = coord_key(sub, i);
                            (c.fixed_columns[col], kind)
                        })
                        .collect()
                })
                .collect();
            for v in expected.iter_mut().chain(got.iter_mut()) {
                v.sort();
            }
            expected.sort();
            got.sort();
            prop_assert_eq!(got, expected);
        }
    }

    #[test]
    fn obstruction_is_symmetric_bundle(seed in 0u64..10_000) {
        let (a, t) = random_instance(seed);
        let m = StackModel::hypertoric(a, t).unwrap();
        let e = TorsionElement::identity(m.d());
        for g in inertia_elements(&m).unwrap() {
            prop_assert!(obstruction(&m, &e, &g).unwrap().is_zero());
        }
        for dc in double_inertia(&m).unwrap() {
            let r = obstruction(&m, &dc.g1, &dc.g2).unwrap();
            prop_assert!(r.is_bundle());
            prop_assert_eq!(r, obstruction(&m, &dc.g2, &dc.g1).unwrap());
        }
    }

    #[test]
    fn hypertoric_normal_data_is_trivial(seed in 0u64..10_000) {
        let (a, t) = random_instance(seed);
        let m = StackModel::hypertoric(a, t).unwrap();
        prop_assert!(hypertoric_normal_models(&m).unwrap().iter().all(sre_condition_iii));
    }

    #[test]
    fn ages_of_inverse_pair_sum_to_moved_coordinates(seed in 0u64..10_000) {
        let (a, t) = random_instance(seed);
        let m = StackModel::lawrence(a, t).unwrap();
        let comps = inertia_components(&m).unwrap();
        for c in &comps {
            let inv = c.g.inverse();
            let ci = comps.iter().find(|x| x.g == inv).unwrap();
            let moved = m.coords().iter().filter(|x| !c.fixed_columns.contains(&x.column)).count();
            prop_assert_eq!(&c.age + &ci.age, BigRational::from_integer(moved.into()));
        }
    }
}
