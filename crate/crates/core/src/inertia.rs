//! Finite-order torus elements with stable fixed points, the inertia
//! components they index, fixed columns, ages and double inertia.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{cokernel_torsion_elements, frac, IntMatrix, ModZVector};
use crate::model::{column_bases, StackModel};

/// `g = exp(2πi v)` for `v ∈ (ℚ/ℤ)^d` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorsionElement {
    v: ModZVector,
    order: BigInt,
}

impl TorsionElement {
    pub fn new(v: ModZVector) -> Self {
        let order = v.order();
        Self { v, order }
    }

    pub fn from_rationals(v: Vec<BigRational>) -> Self {
        Self::new(ModZVector::new(v))
    }

    pub fn identity(d: usize) -> Self {
        Self::new(ModZVector::zero(d))
    }

    pub fn v(&self) -> &ModZVector {
        &self.v
    }

    pub fn d(&self) -> usize {
        self.v.len()
    }

    pub fn order(&self) -> &BigInt {
        &self.order
    }

    pub fn is_identity(&self) -> bool {
        self.v.is_zero()
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.v.neg())
    }

    /// Group law: `g₁g₂` is `v₁ + v₂` mod ℤ.
    pub fn compose(&self, other: &TorsionElement) -> Self {
        Self::new(self.v.add(&other.v))
    }

    /// `⟨w, v⟩`, unreduced.
    pub fn pair(&self, w: &[BigInt]) -> BigRational {
        self.v.pair(w)
    }

    pub fn fixes(&self, w: &[BigInt]) -> bool {
        self.pair(w).is_integer()
    }
}

impl fmt::Display for TorsionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

#[derive(Clone, Debug)]
pub struct InertiaComponent {
    pub g: TorsionElement,
    /// `F(g)`: columns `j` of `A` with `⟨a_j, v⟩ ∈ ℤ`.
    pub fixed_columns: Vec<usize>,
    /// The model on `A_g`.
    pub model: StackModel,
    pub age: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleInertiaComponent {
    pub g1: TorsionElement,
    pub g2: TorsionElement,
    pub common_fixed: Vec<usize>,
    pub target: TorsionElement,
}

/// `{g : g^{a_j} = 1 for j ∈ C}`, of order `|det A_C|`.
pub fn stabilizer_elements(a: &IntMatrix, basis: &[usize]) -> Result<Vec<TorsionElement>> {
    if basis.len() != a.rows() || basis.iter().any(|&j| j >= a.cols()) {
        return Err(Error::NotABasis(basis.to_vec()));
    }
    let sub = a.select_columns(basis);
    if sub.det()?.is_zero() {
        return Err(Error::NotABasis(basis.to_vec()));
    }
    Ok(cokernel_torsion_elements(&sub)?
        .into_iter()
        .map(TorsionElement::new)
        .collect())
}

pub fn fixed_columns(a: &IntMatrix, g: &TorsionElement) -> Vec<usize> {
    (0..a.cols()).filter(|&j| g.fixes(&a.column(j))).collect()
}

/// Elements of the stabilizer groups of the column bases whose fixed
/// coordinate subspace meets the stable locus, sorted and deduplicated.
pub fn inertia_elements(model: &StackModel) -> Result<Vec<TorsionElement>> {
    let a = model.base.matrix();
    let mut out = Vec::new();
    for basis in column_bases(a)? {
        for g in stabilizer_elements(a, &basis)? {
            if model.columns_meet_stable_locus(&fixed_columns(a, &g)) {
                out.push(g);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn check_dimension(model: &StackModel, g: &TorsionElement) -> Result<()> {
    if g.d() != model.d() {
        return Err(Error::DimensionMismatch(format!(
            "torsion element has length {}, torus has rank {}",
            g.d(),
            model.d()
        )));
    }
    Ok(())
}

/// `Σ frac(⟨w, v⟩)` over the ambient coordinate characters. Trivial
/// directions (Lie algebra, moment map) contribute nothing.
pub fn age(model: &StackModel, g: &TorsionElement) -> Result<BigRational> {
    check_dimension(model, g)?;
    if !model.columns_meet_stable_locus(&fixed_columns(model.base.matrix(), g)) {
        return Err(Error::NotInInertia(g.to_string()));
    }
    Ok(model
        .coords()
        .iter()
        .fold(BigRational::zero(), |acc, c| acc + frac(&g.pair(&c.character))))
}

pub fn inertia_component(model: &StackModel, g: &TorsionElement) -> Result<InertiaComponent> {
    let age = age(model, g)?;
    let fixed = fixed_columns(model.base.matrix(), g);
    Ok(InertiaComponent {
        g: g.clone(),
        model: model.restrict_to_columns(&fixed)?,
        fixed_columns: fixed,
        age,
    })
}

/// All inertia components, sorted by canonical `v` (identity first).
pub fn inertia_components(model: &StackModel) -> Result<Vec<InertiaComponent>> {
    inertia_elements(model)?
        .par_iter()
        .map(|g| inertia_component(model, g))
        .collect()
}

pub fn common_fixed(a: &IntMatrix, g1: &TorsionElement, g2: &TorsionElement) -> Vec<usize> {
    (0..a.cols())
        .filter(|&j| {
            let w = a.column(j);
            g1.fixes(&w) && g2.fixes(&w)
        })
        .collect()
}

/// Ordered pairs of inertia elements whose common fixed subspace meets the
/// stable locus.
pub fn double_inertia(model: &StackModel) -> Result<Vec<DoubleInertiaComponent>> {
    let elements = inertia_elements(model)?;
    let a = model.base.matrix();
    let mut out = Vec::new();
    for g1 in &elements {
        for g2 in &elements {
            let common = common_fixed(a, g1, g2);
            if model.columns_meet_stable_locus(&common) {
                out.push(DoubleInertiaComponent {
                    g1: g1.clone(),
                    g2: g2.clone(),
                    common_fixed: common,
                    target: g1.compose(g2),
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::model::{Character, WeightMatrix};

    fn g(v: &[(i64, i64)]) -> TorsionElement {
        TorsionElement::from_rationals(v.iter().map(|&(p, q)| rat(p, q)).collect())
    }

    fn tp12() -> StackModel {
        StackModel::lawrence(
            WeightMatrix::from_rows(&[vec![1, 2]]).unwrap(),
            Character::from_ints(&[1]),
        )
        .unwrap()
    }

    fn bmu3() -> StackModel {
        StackModel::direct(WeightMatrix::from_rows(&[vec![0, 1, 2, 3]]).unwrap(), vec![vec![3]]).unwrap()
    }

    #[test]
    fn stabilizer_examples() {
        let a = IntMatrix::from_rows(&[vec![1, 2]]).unwrap();
        assert_eq!(stabilizer_elements(&a, &[1]).unwrap(), vec![g(&[(0, 1)]), g(&[(1, 2)])]);
        let id = stabilizer_elements(&IntMatrix::identity(2), &[0, 1]).unwrap();
        assert_eq!(id, vec![TorsionElement::identity(2)]);
        let a = IntMatrix::from_rows(&[vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(
            stabilizer_elements(&a, &[3]).unwrap(),
            vec![g(&[(0, 1)]), g(&[(1, 3)]), g(&[(2, 3)])]
        );
        assert!(matches!(stabilizer_elements(&a, &[0]), Err(Error::NotABasis(_))));
    }

    #[test]
    fn inertia_examples() {
        assert_eq!(inertia_elements(&tp12()).unwrap(), vec![g(&[(0, 1)]), g(&[(1, 2)])]);
        let id = StackModel::lawrence(
            WeightMatrix::new(IntMatrix::identity(2)).unwrap(),
            Character::from_ints(&[1, 1]),
        )
        .unwrap();
        assert_eq!(inertia_elements(&id).unwrap(), vec![TorsionElement::identity(2)]);
        assert_eq!(
            inertia_elements(&bmu3()).unwrap(),
            vec![g(&[(0, 1)]), g(&[(1, 3)]), g(&[(2, 3)])]
        );
    }

    #[test]
    fn fixed_column_examples() {
        let a = IntMatrix::from_rows(&[vec![1, 2]]).unwrap();
        assert_eq!(fixed_columns(&a, &g(&[(1, 2)])), vec![1]);
        assert_eq!(fixed_columns(&a, &TorsionElement::identity(1)), vec![0, 1]);
        let a = IntMatrix::from_rows(&[vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(fixed_columns(&a, &g(&[(1, 3)])), vec![0, 3]);
    }

    #[test]
    fn age_examples() {
        assert_eq!(age(&tp12(), &TorsionElement::identity(1)).unwrap(), rat(0, 1));
        assert_eq!(age(&tp12(), &g(&[(1, 2)])).unwrap(), rat(1, 1));
        assert_eq!(age(&bmu3(), &g(&[(1, 3)])).unwrap(), rat(1, 1));
        assert_eq!(age(&bmu3(), &g(&[(2, 3)])).unwrap(), rat(1, 1));
        assert!(matches!(age(&tp12(), &g(&[(1, 3)])), Err(Error::NotInInertia(_))));
    }

    #[test]
    fn double_inertia_examples() {
        let dbl = double_inertia(&tp12()).unwrap();
        assert_eq!(dbl.len(), 4);
        let half = g(&[(1, 2)]);
        let hh = dbl.iter().find(|c| c.g1 == half && c.g2 == half).unwrap();
        assert_eq!(hh.common_fixed, vec![1]);
        assert!(hh.target.is_identity());
        assert_eq!(double_inertia(&bmu3()).unwrap().len(), 9);
        let triv = StackModel::lawrence(
            WeightMatrix::new(IntMatrix::identity(2)).unwrap(),
            Character::from_ints(&[1, 1]),
        )
        .unwrap();
        assert_eq!(double_inertia(&triv).unwrap().len(), 1);
    }

    #[test]
    fn components_carry_submodels() {
        let comps = inertia_components(&bmu3()).unwrap();
        assert_eq!(comps.len(), 3);
        assert!(comps[0].g.is_identity());
        assert_eq!(comps[1].fixed_columns, vec![0, 3]);
        assert_eq!(comps[1].model.n(), 2);
        assert_eq!(comps[1].model.unstable_sets(), &[vec![1]]);
    }
}
