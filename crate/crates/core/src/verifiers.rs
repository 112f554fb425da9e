//! The strong-regular-embedding condition on local models and the explicit
//! local charts `U_σ ≅ (μ⁻¹(0) ∩ U_σ) × 𝔸^d`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{solve_rational, RationalVector};
use crate::inertia::{inertia_elements, TorsionElement};
use crate::model::{lawrence_double, moment_eval, Character, Coord, SigmaSet, StackModel, WeightMatrix};

/// A diagonal local model: a finite abelian group given by generators and
/// the characters through which it acts on a normal fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalModelSRE {
    pub generators: Vec<TorsionElement>,
    pub normal_weights: Vec<Vec<BigInt>>,
}

impl LocalModelSRE {
    /// `μ_r` generated by `k/r`, acting on the fiber with the given weights.
    pub fn cyclic(r: i64, k: i64, weights: &[i64]) -> Self {
        Self {
            generators: vec![TorsionElement::from_rationals(vec![BigRational::new(
                k.into(),
                r.into(),
            )])],
            normal_weights: weights.iter().map(|&w| vec![BigInt::from(w)]).collect(),
        }
    }
}

/// True iff every generator acts trivially on every normal weight.
pub fn sre_condition_iii(model: &LocalModelSRE) -> bool {
    model
        .generators
        .iter()
        .all(|g| model.normal_weights.iter().all(|w| g.fixes(w)))
}

/// One local model per inertia element of the hypertoric stack. The normal
/// weights are the torus weights of the moment-map equations, read off from
/// the monomials `x_j y_j`.
pub fn hypertoric_normal_models(model: &StackModel) -> Result<Vec<LocalModelSRE>> {
    let doubled = lawrence_double(&model.base);
    let n = model.n();
    let weights: Vec<Vec<BigInt>> = (0..model.d())
        .map(|i| {
            let j = (0..n).find(|&j| !model.base.matrix().get(i, j).is_zero()).unwrap_or(0);
            doubled
                .column(j)
                .iter()
                .zip(doubled.column(n + j))
                .map(|(x, y)| x + y)
                .collect()
        })
        .collect();
    Ok(inertia_elements(model)?
        .into_iter()
        .map(|g| LocalModelSRE {
            generators: vec![g],
            normal_weights: weights.clone(),
        })
        .collect())
}

/// The chart attached to `σ(C, θ)`. Coordinates of the basis columns are
/// reordered so that the `i`-th one has nonzero weight in row `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartInstance {
    pub sigma: SigmaSet,
    /// Basis columns in pivot order: `A[i][pivot_order[i]] ≠ 0`.
    pub pivot_order: Vec<usize>,
    pub pivots: Vec<BigInt>,
    pub base_point_dim: usize,
    pub fiber_dim: usize,
    a: WeightMatrix,
}

/// Lexicographically smallest assignment of basis columns to rows with
/// nonzero entries.
fn pivot_permutation(a: &WeightMatrix, basis: &[usize]) -> Option<Vec<usize>> {
    fn extend(a: &WeightMatrix, basis: &[usize], used: &mut Vec<bool>, out: &mut Vec<usize>) -> bool {
        let i = out.len();
        if i == basis.len() {
            return true;
        }
        for (k, &c) in basis.iter().enumerate() {
            if !used[k] && !a.matrix().get(i, c).is_zero() {
                used[k] = true;
                out.push(c);
                if extend(a, basis, used, out) {
                    return true;
                }
                out.pop();
                used[k] = false;
            }
        }
        false
    }
    let mut out = Vec::with_capacity(basis.len());
    extend(a, basis, &mut vec![false; basis.len()], &mut out).then_some(out)
}

pub fn chart_instance(a: &WeightMatrix, sigma: &SigmaSet) -> Result<ChartInstance> {
    let pivot_order = pivot_permutation(a, &sigma.basis).ok_or_else(|| Error::NotABasis(sigma.basis.clone()))?;
    let pivots = pivot_order
        .iter()
        .enumerate()
        .map(|(i, &c)| a.matrix().get(i, c).clone())
        .collect();
    Ok(ChartInstance {
        sigma: sigma.clone(),
        pivot_order,
        pivots,
        base_point_dim: 2 * a.n() - a.d(),
        fiber_dim: a.d(),
        a: a.clone(),
    })
}

impl ChartInstance {
    fn n(&self) -> usize {
        self.a.n()
    }

    /// For each basis column: (index of the σ-coordinate, index of its partner).
    fn coordinate_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        self.sigma
            .coords
            .iter()
            .map(|&c| {
                let partner = match c {
                    Coord::X(j) => Coord::Y(j),
                    Coord::Y(j) => Coord::X(j),
                };
                (c.doubled_index(n), partner.doubled_index(n))
            })
            .collect()
    }

    fn check_point(&self, p: &[BigRational]) -> Result<()> {
        if p.len() != 2 * self.n() {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, expected {}",
                p.len(),
                2 * self.n()
            )));
        }
        for (s, _) in self.coordinate_pairs() {
            if p[s].is_zero() {
                let label = Coord::from_doubled_index(s, self.n());
                return Err(Error::NotInChart(format!("{label} vanishes")));
            }
        }
        Ok(())
    }

    /// Shifts each partner coordinate by `ΔP_c / σ_c` with `A_C ΔP = target`,
    /// which moves `μ` by exactly `target`.
    fn shift(&self, p: &[BigRational], target: &[BigRational], sign: i32) -> Result<RationalVector> {
        let basis = &self.sigma.basis;
        let delta = solve_rational(&self.a.matrix().select_columns(basis), target)?.ok_or(Error::SingularMatrix)?;
        let mut q = p.to_vec();
        for ((s, partner), dp) in self.coordinate_pairs().into_iter().zip(&delta) {
            let step = dp / &p[s];
            if sign > 0 {
                q[partner] += step;
            } else {
                q[partner] -= step;
            }
        }
        Ok(q)
    }

    fn moment_target(&self, z: &[BigRational]) -> Result<RationalVector> {
        if z.len() != self.fiber_dim {
            return Err(Error::DimensionMismatch(format!(
                "fiber coordinate has length {}, expected {}",
                z.len(),
                self.fiber_dim
            )));
        }
        Ok(z.iter()
            .zip(&self.pivots)
            .map(|(zi, a)| zi * BigRational::from_integer(a.clone()))
            .collect())
    }
}

/// `(p, z) ↦ q` with `μ_i(q) = a_ii z_i` in pivot order.
pub fn chart_forward(chart: &ChartInstance, p: &[BigRational], z: &[BigRational]) -> Result<RationalVector> {
    chart.check_point(p)?;
    if moment_eval(chart.a.matrix(), p)?.iter().any(|m| !m.is_zero()) {
        return Err(Error::NotOnMomentZero);
    }
    let target = chart.moment_target(z)?;
    chart.shift(p, &target, 1)
}

/// `q ↦ (p, z)` with `p ∈ μ⁻¹(0)` and `z_i = μ_i(q) / a_ii`.
pub fn chart_inverse(chart: &ChartInstance, q: &[BigRational]) -> Result<(RationalVector, RationalVector)> {
    chart.check_point(q)?;
    let mu = moment_eval(chart.a.matrix(), q)?;
    let z: RationalVector = mu
        .iter()
        .zip(&chart.pivots)
        .map(|(m, a)| m / BigRational::from_integer(a.clone()))
        .collect();
    let base = chart.shift(q, &mu, -1)?;
    Ok((base, z))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChartReport {
    pub charts: Vec<ChartInstance>,
    pub roundtrips: usize,
    pub rejected_samples: usize,
    pub failures: Vec<String>,
}

impl ChartReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn sample_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=5).into())
}

fn sample_point(rng: &mut ChaCha8Rng, chart: &ChartInstance, len: usize, rejected: &mut usize) -> RationalVector {
    loop {
        let q: RationalVector = (0..len).map(|_| sample_rational(rng)).collect();
        if chart.check_point(&q).is_ok() {
            return q;
        }
        *rejected += 1;
    }
}

fn check_chart(chart: &ChartInstance, samples: usize, seed: u64) -> Result<(usize, usize, Vec<String>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut roundtrips, mut rejected, mut failures) = (0, 0, Vec::new());
    let len = 2 * chart.n();
    for s in 0..samples {
        let q = sample_point(&mut rng, chart, len, &mut rejected);
        let (base, z) = chart_inverse(chart, &q)?;
        if moment_eval(chart.a.matrix(), &base)?.iter().any(|m| !m.is_zero()) {
            failures.push(format!("chart {}: sample {s} base point off μ = 0", chart.sigma));
            continue;
        }
        if chart_forward(chart, &base, &z)? != q {
            failures.push(format!("chart {}: sample {s} forward ∘ inverse ≠ id", chart.sigma));
            continue;
        }
        let z2: RationalVector = (0..chart.fiber_dim).map(|_| sample_rational(&mut rng)).collect();
        let q2 = chart_forward(chart, &base, &z2)?;
        if chart_inverse(chart, &q2)? != (base, z2) {
            failures.push(format!("chart {}: sample {s} inverse ∘ forward ≠ id", chart.sigma));
            continue;
        }
        roundtrips += 1;
    }
    Ok((roundtrips, rejected, failures))
}

/// Exact roundtrips on `samples` seeded rational points for every chart.
pub fn verify_charts(a: &WeightMatrix, theta: &Character, samples: usize, seed: u64) -> Result<ChartReport> {
    let model = StackModel::hypertoric(a.clone(), theta.clone())?;
    let charts = model
        .arrangement
        .sigma_sets
        .iter()
        .map(|s| chart_instance(a, s))
        .collect::<Result<Vec<_>>>()?;
    let results = charts
        .par_iter()
        .enumerate()
        .map(|(k, c)| check_chart(c, samples, seed.wrapping_add(k as u64)))
        .collect::<Result<Vec<_>>>()?;
    let mut report = ChartReport {
        charts,
        ..Default::default()
    };
    for (r, j, f) in results {
        report.roundtrips += r;
        report.rejected_samples += j;
        report.failures.extend(f);
    }
    Ok(report)
}

/// Convenience: `true` when `q` lies on `μ = 0`.
pub fn on_moment_zero(a: &WeightMatrix, q: &[BigRational]) -> Result<bool> {
    Ok(moment_eval(a.matrix(), q)?.iter().all(Zero::is_zero))
}
