//! Integral graded rings `ℤ[t₁,…,t_d]/(relations)` evaluated one degree at a
//! time by Smith normal form, up to a truncation bound.
//!
//! The degree-`k` piece is the free module on degree-`k` monomials modulo the
//! span of `relation × monomial` products of total degree `k`. Every question
//! asked of a ring (group structure, class equality, bijectivity of a ring
//! map) reduces to integer linear algebra on these finite pieces.

pub mod poly;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{integer_kernel, snf, IntMatrix, SnfResult};
use crate::model::StackModel;
pub use poly::{monomials_of_degree, Monomial, Poly};

/// A finitely generated abelian group `ℤ^r ⊕ ℤ/n₁ ⊕ … ⊕ ℤ/n_k` with
/// `n₁ | n₂ | …` and every `nᵢ > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|n| format!("Z/{n}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// One graded piece: monomial basis, relation generators as columns, and
/// the Smith form `U·R·V = D` used for canonical coordinates.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub degree: usize,
    pub basis: Vec<Monomial>,
    pub relation_matrix: IntMatrix,
    snf: SnfResult,
    u_inverse: IntMatrix,
}

impl GradedPiece {
    fn build(nvars: usize, relations: &[Poly], degree: usize) -> Result<Self> {
        let basis = monomials_of_degree(nvars, degree);
        let mut columns = Vec::new();
        for r in relations {
            let Some(e) = r.homogeneous_degree() else {
                continue;
            };
            if e > degree {
                continue;
            }
            for m in monomials_of_degree(nvars, degree - e) {
                let shifted = &Poly::monomial(nvars, m, BigInt::one()) * r;
                columns.push(coefficient_vector(&basis, &shifted));
            }
        }
        let relation_matrix = IntMatrix::from_columns(basis.len(), &columns)?;
        let snf = snf(&relation_matrix);
        let u_inverse = snf.u.unimodular_inverse()?;
        Ok(Self {
            degree,
            basis,
            relation_matrix,
            snf,
            u_inverse,
        })
    }

    /// All diagonal entries of the Smith form, including units.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.snf.invariant_factors()
    }

    pub fn group(&self) -> AbelianGroup {
        let factors = self.invariant_factors();
        AbelianGroup {
            free_rank: self.basis.len() - factors.len(),
            torsion: factors.into_iter().filter(|f| !f.is_one()).collect(),
        }
    }

    /// Coordinates of a coefficient vector: torsion coordinates reduced into
    /// `[0, nᵢ)` first, then the free coordinates.
    pub fn coordinates(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        let y = self.snf.u.mul_vec(x)?;
        let factors = self.invariant_factors();
        let mut out = Vec::new();
        for (i, yi) in y.into_iter().enumerate() {
            match factors.get(i) {
                Some(f) if f.is_one() => {}
                Some(f) => out.push(yi.mod_floor(f)),
                None => out.push(yi),
            }
        }
        Ok(out)
    }

    /// Canonical coefficient vector for the given coordinates.
    pub fn lift(&self, coords: &[BigInt]) -> Result<Vec<BigInt>> {
        let factors = self.invariant_factors();
        let mut it = coords.iter();
        let mut y = Vec::with_capacity(self.basis.len());
        for i in 0..self.basis.len() {
            match factors.get(i) {
                Some(f) if f.is_one() => y.push(BigInt::zero()),
                _ => y.push(
                    it.next()
                        .cloned()
                        .ok_or_else(|| Error::DimensionMismatch("too few coordinates".into()))?,
                ),
            }
        }
        self.u_inverse.mul_vec(&y)
    }

    pub fn poly_from_vector(&self, nvars: usize, x: &[BigInt]) -> Poly {
        Poly::from_terms(nvars, self.basis.iter().cloned().zip(x.iter().cloned()))
    }
}

fn coefficient_vector(basis: &[Monomial], p: &Poly) -> Vec<BigInt> {
    basis.iter().map(|m| p.coefficient(m)).collect()
}

/// `ℤ[t₁,…,t_d]` modulo homogeneous relations, computed up to degree `D`.
pub struct GradedRingPresentation {
    num_vars: usize,
    relations: Vec<Poly>,
    truncation: usize,
    pieces: RwLock<BTreeMap<usize, Arc<GradedPiece>>>,
}

impl Clone for GradedRingPresentation {
    fn clone(&self) -> Self {
        Self {
            num_vars: self.num_vars,
            relations: self.relations.clone(),
            truncation: self.truncation,
            pieces: RwLock::new(self.pieces.read().expect("cache lock").clone()),
        }
    }
}

impl fmt::Debug for GradedRingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedRingPresentation")
            .field("num_vars", &self.num_vars)
            .field("relations", &self.relations)
            .field("truncation", &self.truncation)
            .finish()
    }
}

impl PartialEq for GradedRingPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.num_vars == other.num_vars && self.relations == other.relations && self.truncation == other.truncation
    }
}

impl GradedRingPresentation {
    /// Zero relations are dropped; every other relation must be homogeneous.
    pub fn new(num_vars: usize, relations: Vec<Poly>, truncation: usize) -> Result<Self> {
        let mut kept = Vec::new();
        for r in relations {
            if r.nvars() != num_vars {
                return Err(Error::DimensionMismatch(format!(
                    "relation in {} variables for a ring in {num_vars}",
                    r.nvars()
                )));
            }
            if r.is_zero() {
                continue;
            }
            if !r.is_homogeneous() {
                return Err(Error::Inhomogeneous(r.to_string()));
            }
            kept.push(r);
        }
        Ok(Self {
            num_vars,
            relations: kept,
            truncation,
            pieces: RwLock::new(BTreeMap::new()),
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn with_truncation(&self, truncation: usize) -> Self {
        Self {
            num_vars: self.num_vars,
            relations: self.relations.clone(),
            truncation,
            pieces: RwLock::new(BTreeMap::new()),
        }
    }

    pub fn graded_group(&self, k: usize) -> Result<Arc<GradedPiece>> {
        if k > self.truncation {
            return Err(Error::DegreeExceeded {
                degree: k,
                bound: self.truncation,
            });
        }
        if let Some(p) = self.pieces.read().expect("cache lock").get(&k) {
            return Ok(Arc::clone(p));
        }
        let piece = Arc::new(GradedPiece::build(self.num_vars, &self.relations, k)?);
        let mut cache = self.pieces.write().expect("cache lock");
        Ok(Arc::clone(cache.entry(k).or_insert(piece)))
    }

    fn check_degree(&self, p: &Poly, degree: usize) -> Result<()> {
        if p.nvars() != self.num_vars {
            return Err(Error::DimensionMismatch(format!(
                "polynomial in {} variables for a ring in {}",
                p.nvars(),
                self.num_vars
            )));
        }
        match p.homogeneous_degree() {
            _ if p.is_zero() => Ok(()),
            Some(e) if e == degree => Ok(()),
            Some(e) => Err(Error::Inhomogeneous(format!("{p} has degree {e}, expected {degree}"))),
            None => Err(Error::Inhomogeneous(p.to_string())),
        }
    }

    /// Canonical coordinates of a degree-`degree` polynomial.
    pub fn reduce_poly(&self, p: &Poly, degree: usize) -> Result<Vec<BigInt>> {
        self.check_degree(p, degree)?;
        let piece = self.graded_group(degree)?;
        piece.coordinates(&coefficient_vector(&piece.basis, p))
    }

    pub fn reduce(&self, class: &GradedClass) -> Result<Vec<BigInt>> {
        self.reduce_poly(&class.poly, class.degree)
    }

    pub fn is_zero(&self, p: &Poly, degree: usize) -> Result<bool> {
        Ok(self.reduce_poly(p, degree)?.iter().all(Zero::is_zero))
    }

    /// The canonical representative of `p` in its graded piece.
    pub fn normal_form(&self, p: &Poly, degree: usize) -> Result<Poly> {
        let coords = self.reduce_poly(p, degree)?;
        let piece = self.graded_group(degree)?;
        Ok(piece.poly_from_vector(self.num_vars, &piece.lift(&coords)?))
    }

    /// Abelian group invariants for every degree `0..=D`.
    pub fn graded_groups(&self) -> Result<Vec<AbelianGroup>> {
        (0..=self.truncation)
            .map(|k| Ok(self.graded_group(k)?.group()))
            .collect()
    }
}

/// One relation `∏_{c ∈ S} ⟨w_c, t⟩` per minimal unstable set `S`.
pub fn presentation(model: &StackModel, truncation: usize) -> Result<GradedRingPresentation> {
    let d = model.d();
    let coords = model.coords();
    let relations = model
        .unstable_sets()
        .iter()
        .map(|s| {
            s.iter()
                .fold(Poly::one(d), |acc, &c| &acc * &Poly::linear_form(&coords[c].character))
        })
        .collect();
    GradedRingPresentation::new(d, relations, truncation)
}

/// A homogeneous class on one inertia component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedClass {
    pub component: usize,
    pub poly: Poly,
    pub degree: usize,
}

impl GradedClass {
    pub fn new(component: usize, poly: Poly) -> Result<Self> {
        let degree = poly
            .homogeneous_degree()
            .ok_or_else(|| Error::Inhomogeneous(poly.to_string()))?;
        Ok(Self {
            component,
            poly,
            degree,
        })
    }

    pub fn zero(component: usize, nvars: usize, degree: usize) -> Self {
        Self {
            component,
            poly: Poly::zero(nvars),
            degree,
        }
    }

    /// The fundamental class `1` of a component.
    pub fn unit(component: usize, nvars: usize) -> Self {
        Self {
            component,
            poly: Poly::one(nvars),
            degree: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoReport {
    pub is_iso: bool,
    pub failing_degree: Option<usize>,
    pub reason: Option<String>,
}

impl IsoReport {
    fn ok() -> Self {
        Self {
            is_iso: true,
            failing_degree: None,
            reason: None,
        }
    }

    fn fail(k: usize, reason: &str) -> Self {
        Self {
            is_iso: false,
            failing_degree: Some(k),
            reason: Some(reason.to_string()),
        }
    }
}

/// Checks that `tᵢ ↦ images[i]` induces a bijection on every graded piece of
/// degree `≤ D`.
pub fn ring_map_is_iso(
    src: &GradedRingPresentation,
    dst: &GradedRingPresentation,
    images: &[Poly],
    truncation: usize,
) -> Result<IsoReport> {
    if images.len() != src.num_vars() {
        return Err(Error::DimensionMismatch(format!(
            "{} images for {} variables",
            images.len(),
            src.num_vars()
        )));
    }
    for img in images {
        if img.nvars() != dst.num_vars() {
            return Err(Error::DimensionMismatch("image lives in the wrong ring".into()));
        }
        if !img.is_zero() && img.homogeneous_degree() != Some(1) {
            return Err(Error::Inhomogeneous(format!("image {img} is not linear")));
        }
    }
    let src = src.with_truncation(truncation.max(src.truncation()));
    let dst = dst.with_truncation(truncation.max(dst.truncation()));
    for k in 0..=truncation {
        let ps = src.graded_group(k)?;
        let pd = dst.graded_group(k)?;
        let image_columns: Vec<Vec<BigInt>> = ps
            .basis
            .iter()
            .map(|m| {
                let mono = Poly::monomial(src.num_vars(), m.clone(), BigInt::one());
                coefficient_vector(&pd.basis, &mono.substitute(images, dst.num_vars()))
            })
            .collect();
        let f = IntMatrix::from_columns(pd.basis.len(), &image_columns)?;

        let mapped_relations = f.mul(&ps.relation_matrix)?;
        for j in 0..mapped_relations.cols() {
            if pd
                .coordinates(&mapped_relations.column(j))?
                .iter()
                .any(|c| !c.is_zero())
            {
                return Ok(IsoReport::fail(k, "map does not preserve relations"));
            }
        }

        let joined = f.hconcat(&pd.relation_matrix)?;
        let joined_snf = snf(&joined);
        let factors = joined_snf.invariant_factors();
        if factors.len() < pd.basis.len() || factors.iter().any(|x| !x.is_one()) {
            return Ok(IsoReport::fail(k, "not surjective"));
        }
        for kernel_vec in integer_kernel(&joined) {
            let x = &kernel_vec[..ps.basis.len()];
            if ps.coordinates(x)?.iter().any(|c| !c.is_zero()) {
                return Ok(IsoReport::fail(k, "not injective"));
            }
        }
    }
    Ok(IsoReport::ok())
}

/// A closed embedding of components sharing the variables `t`, with normal
/// bundle Euler class `normal_euler` of rank `codim`.
pub struct Embedding<'a> {
    pub sub: &'a GradedRingPresentation,
    pub ambient: &'a GradedRingPresentation,
    pub normal_euler: Poly,
    pub codim: usize,
}

impl Embedding<'_> {
    /// Every sub-relation times `e(N)` must vanish in the ambient ring, in
    /// every degree up to the ambient truncation.
    pub fn check_well_defined(&self) -> Result<()> {
        for r in self.sub.relations() {
            let degree = r.homogeneous_degree().expect("relations are homogeneous") + self.codim;
            if degree > self.ambient.truncation() {
                continue;
            }
            let pushed = r * &self.normal_euler;
            if !self.ambient.is_zero(&pushed, degree)? {
                return Err(Error::GysinIllDefined(format!(
                    "relation {r} pushes to {pushed}, nonzero in the ambient ring"
                )));
            }
        }
        Ok(())
    }
}

/// `ι_*(α) = α̃ · e(N)` for any polynomial lift `α̃`.
pub fn gysin_push(class: &GradedClass, embedding: &Embedding<'_>, target: usize) -> Result<GradedClass> {
    embedding.check_well_defined()?;
    let degree = class.degree + embedding.codim;
    if degree > embedding.ambient.truncation() {
        return Err(Error::DegreeExceeded {
            degree,
            bound: embedding.ambient.truncation(),
        });
    }
    Ok(GradedClass {
        component: target,
        poly: &class.poly * &embedding.normal_euler,
        degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Character, WeightMatrix};

    fn lin(c: i64) -> Poly {
        Poly::linear_form(&[BigInt::from(c)])
    }

    fn zt_mod(rel: Poly, d: usize) -> GradedRingPresentation {
        GradedRingPresentation::new(1, vec![rel], d).unwrap()
    }

    fn t_pow(k: u32, c: i64) -> Poly {
        Poly::monomial(1, vec![k], BigInt::from(c))
    }

    #[test]
    fn bmu3_presentation() {
        let m = StackModel::direct(WeightMatrix::from_rows(&[vec![0, 1, 2, 3]]).unwrap(), vec![vec![3]]).unwrap();
        let p = presentation(&m, 4).unwrap();
        assert_eq!(p.relations(), &[lin(3)]);
        let groups: Vec<String> = p.graded_groups().unwrap().iter().map(ToString::to_string).collect();
        assert_eq!(groups, vec!["Z", "Z/3", "Z/3", "Z/3", "Z/3"]);
    }

    #[test]
    fn projective_plane_presentation() {
        let m = StackModel::lawrence(
            WeightMatrix::from_rows(&[vec![1, 1, 1]]).unwrap(),
            Character::from_ints(&[1]),
        )
        .unwrap();
        let p = presentation(&m, 4).unwrap();
        assert_eq!(p.relations(), &[t_pow(3, 1)]);
    }

    #[test]
    fn tp12_presentation() {
        let m = StackModel::lawrence(
            WeightMatrix::from_rows(&[vec![1, 2]]).unwrap(),
            Character::from_ints(&[1]),
        )
        .unwrap();
        let p = presentation(&m, 4).unwrap();
        assert_eq!(p.relations(), &[t_pow(2, 2)]);
        assert_eq!(p.graded_group(2).unwrap().group().to_string(), "Z/2");
        assert_eq!(p.graded_group(1).unwrap().group().to_string(), "Z");
    }

    #[test]
    fn graded_group_bounds() {
        let p = zt_mod(lin(3), 2);
        assert_eq!(p.graded_group(0).unwrap().group().to_string(), "Z");
        assert_eq!(p.graded_group(1).unwrap().group().to_string(), "Z/3");
        assert_eq!(
            p.graded_group(3).unwrap_err(),
            Error::DegreeExceeded { degree: 3, bound: 2 }
        );
    }

    #[test]
    fn reduce_examples() {
        let p = zt_mod(lin(3), 3);
        assert_eq!(p.reduce_poly(&lin(4), 1).unwrap(), p.reduce_poly(&lin(1), 1).unwrap());
        assert_eq!(p.reduce_poly(&Poly::zero(1), 2).unwrap(), vec![BigInt::zero()]);
        let q = zt_mod(t_pow(2, 2), 3);
        assert_eq!(
            q.reduce_poly(&t_pow(2, -1), 2).unwrap(),
            q.reduce_poly(&t_pow(2, 1), 2).unwrap()
        );
        assert_eq!(q.normal_form(&t_pow(2, -1), 2).unwrap(), t_pow(2, 1));
        assert!(matches!(
            p.reduce_poly(&(&lin(1) + &t_pow(2, 1)), 1),
            Err(Error::Inhomogeneous(_))
        ));
    }

    #[test]
    fn iso_examples() {
        let q = zt_mod(t_pow(2, 2), 5);
        let r = ring_map_is_iso(&q, &q, &[lin(1)], 5).unwrap();
        assert!(r.is_iso);

        let b = zt_mod(lin(3), 5);
        let z = GradedRingPresentation::new(0, vec![], 5).unwrap();
        let r = ring_map_is_iso(&b, &z, &[Poly::zero(0)], 5).unwrap();
        assert!(!r.is_iso);
        assert_eq!(r.failing_degree, Some(1));
        assert_eq!(r.reason.as_deref(), Some("not injective"));

        let r = ring_map_is_iso(&b, &b, &[lin(2)], 5).unwrap();
        assert!(r.is_iso);
    }

    #[test]
    fn iso_detects_non_surjective_and_bad_images() {
        let free = GradedRingPresentation::new(1, vec![], 3).unwrap();
        let r = ring_map_is_iso(&free, &free, &[lin(2)], 3).unwrap();
        assert_eq!(r.failing_degree, Some(1));
        assert_eq!(r.reason.as_deref(), Some("not surjective"));
        assert!(matches!(
            ring_map_is_iso(&free, &free, &[t_pow(2, 1)], 3),
            Err(Error::Inhomogeneous(_))
        ));
    }

    #[test]
    fn iso_detects_relation_violation() {
        let free = GradedRingPresentation::new(1, vec![], 3).unwrap();
        let b = zt_mod(lin(3), 3);
        let r = ring_map_is_iso(&b, &free, &[lin(1)], 3).unwrap();
        assert_eq!(r.reason.as_deref(), Some("map does not preserve relations"));
    }

    #[test]
    fn gysin_identity_and_normal_factor() {
        let b = zt_mod(lin(3), 4);
        let id = Embedding {
            sub: &b,
            ambient: &b,
            normal_euler: Poly::one(1),
            codim: 0,
        };
        let alpha = GradedClass::new(1, lin(1)).unwrap();
        assert_eq!(gysin_push(&alpha, &id, 1).unwrap().poly, lin(1));

        let emb = Embedding {
            sub: &b,
            ambient: &b,
            normal_euler: &lin(1) * &lin(2),
            codim: 2,
        };
        let pushed = gysin_push(&GradedClass::unit(1, 1), &emb, 0).unwrap();
        assert_eq!(pushed.poly, t_pow(2, 2));
        assert_eq!(pushed.degree, 2);
    }

    #[test]
    fn gysin_rejects_ill_defined_push() {
        // ℤ[t]/(3t) pushed into the free ring ℤ[t] by e(N) = t is not well defined.
        let b = zt_mod(lin(3), 4);
        let free = GradedRingPresentation::new(1, vec![], 4).unwrap();
        let emb = Embedding {
            sub: &b,
            ambient: &free,
            normal_euler: lin(1),
            codim: 1,
        };
        assert!(matches!(
            gysin_push(&GradedClass::unit(0, 1), &emb, 0),
            Err(Error::GysinIllDefined(_))
        ));
    }
}
