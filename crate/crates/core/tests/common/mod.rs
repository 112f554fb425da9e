#![allow(dead_code)]

use hypertoric_core::model::check_generic;
use hypertoric_core::{Character, IntMatrix, StackModel, WeightMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn wm(rows: &[Vec<i64>]) -> WeightMatrix {
    WeightMatrix::from_rows(rows).unwrap()
}

pub fn theta(v: &[i64]) -> Character {
    Character::from_ints(v)
}

/// `[𝔸³/μ₃]` with weights `(0, 1, 2)` presented as a `𝔾_m` quotient.
pub fn bmu3() -> StackModel {
    StackModel::direct(wm(&[vec![0, 1, 2, 3]]), vec![vec![3]]).unwrap()
}

pub fn projective_space(n: usize) -> StackModel {
    StackModel::direct(wm(&[vec![1; n + 1]]), vec![(0..=n).collect()]).unwrap()
}

/// A random rank-`d` weight matrix with `d ≤ 2`, `d ≤ n ≤ 4`, entries in
/// `[-3, 3]`, and a generic `θ`.
pub fn random_instance(seed: u64) -> (WeightMatrix, Character) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let d = rng.gen_range(1..=2usize);
        let n = rng.gen_range(d.max(2)..=4usize);
        let rows: Vec<Vec<i64>> = (0..d)
            .map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect())
            .collect();
        let m = IntMatrix::from_rows(&rows).unwrap();
        if m.rank() != d {
            continue;
        }
        for _ in 0..20 {
            let t: Vec<i64> = (0..d).map(|_| rng.gen_range(-5..=5)).collect();
            if t.iter().all(|&x| x == 0) {
                continue;
            }
            let t = Character::from_ints(&t);
            if check_generic(&m, &t).unwrap().is_generic() {
                return (WeightMatrix::new(m).unwrap(), t);
            }
        }
    }
}
