//! Logarithmic traces, obstruction bundles, Euler classes and the orbifold
//! product `α ⋆ β = μ_*(e₁*α · e₂*β · eu(ℛ))` on the inertia components of a
//! model, together with the Lawrence/hypertoric comparison checks.

mod character;

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

pub use character::CharacterClass;

use crate::chow::{presentation, ring_map_is_iso, Embedding, GradedClass, GradedRingPresentation, Poly};
use crate::error::{Error, Result};
use crate::exact::frac;
use crate::inertia::{common_fixed, double_inertia, inertia_components, InertiaComponent, TorsionElement};
use crate::model::{Character, StackModel, WeightMatrix};

/// `L(g)(V) = Σ_k (k/r) V_k`: each character `w` weighted by `frac(⟨w, v⟩)`.
pub fn log_trace(g: &TorsionElement, v: &CharacterClass) -> CharacterClass {
    let mut out = CharacterClass::zero(v.d());
    for (w, m) in v.nontrivial() {
        let f = frac(&g.pair(w));
        if !f.is_zero() {
            out.add_character(w, &(f * m));
        }
    }
    out
}

/// The obstruction class on the `(g₁, g₂)` double-inertia component:
/// `L(g₁)(𝕋) + L(g₂)(𝕋) + L((g₁g₂)⁻¹)(𝕋) − 𝕋 + 𝕋^{g₁,g₂}`.
pub fn obstruction(model: &StackModel, g1: &TorsionElement, g2: &TorsionElement) -> Result<CharacterClass> {
    let common = common_fixed(model.base.matrix(), g1, g2);
    if !model.columns_meet_stable_locus(&common) {
        return Err(Error::NotInInertia(format!(
            "({g1}, {g2}) is not a double-inertia component"
        )));
    }
    let tangent = &model.tangent_class;
    let inverse_product = g1.compose(g2).inverse();
    let invariant = tangent.filter(|w| g1.fixes(w) && g2.fixes(w));
    let r = log_trace(g1, tangent)
        .plus(&log_trace(g2, tangent))
        .plus(&log_trace(&inverse_product, tangent))
        .minus(tangent)
        .plus(&invariant);
    if !r.is_bundle() {
        return Err(Error::NotABundle(format!("ℛ({g1}, {g2}) = {r}")));
    }
    Ok(r)
}

/// Top Chern class `∏ ⟨w, t⟩^{m_w}`; a trivial summand makes it zero.
pub fn euler_poly(bundle: &CharacterClass) -> Result<Poly> {
    if !bundle.is_bundle() {
        return Err(Error::NotABundle(bundle.to_string()));
    }
    let d = bundle.d();
    if !bundle.trivial_multiplicity().is_zero() {
        return Ok(Poly::zero(d));
    }
    let mut out = Poly::one(d);
    for (w, m) in bundle.nontrivial() {
        let e: u32 = m
            .to_integer()
            .try_into()
            .map_err(|_| Error::InvalidInput(format!("multiplicity {m} too large")))?;
        out = &out * &Poly::linear_form(w).pow(e);
    }
    Ok(out)
}

/// Structure data for one nonempty double-inertia component.
#[derive(Clone, Debug)]
pub struct PairData {
    pub g1: usize,
    pub g2: usize,
    pub target: usize,
    pub common_fixed: Vec<usize>,
    pub obstruction: CharacterClass,
    pub obstruction_euler: Poly,
    /// Euler class of the normal bundle of the common fixed locus inside
    /// the target component.
    pub normal_euler: Poly,
    pub codim: usize,
}

impl PairData {
    pub fn obstruction_rank(&self) -> usize {
        usize::try_from(self.obstruction.rank().to_integer()).expect("bundle rank")
    }
}

/// The inertia components of a model with their Chow presentations and all
/// double-inertia structure data, truncated at degree `D`.
pub struct OrbifoldChow {
    pub model: StackModel,
    pub truncation: usize,
    pub components: Vec<InertiaComponent>,
    pub presentations: Vec<GradedRingPresentation>,
    pairs: BTreeMap<(usize, usize), PairData>,
}

impl OrbifoldChow {
    pub fn new(model: &StackModel, truncation: usize) -> Result<Self> {
        let components = inertia_components(model)?;
        let presentations = components
            .iter()
            .map(|c| presentation(&c.model, truncation))
            .collect::<Result<Vec<_>>>()?;
        let index: HashMap<TorsionElement, usize> =
            components.iter().enumerate().map(|(i, c)| (c.g.clone(), i)).collect();

        let doubles = double_inertia(model)?;
        let mut sub_presentations: HashMap<Vec<usize>, GradedRingPresentation> = HashMap::new();
        for dc in &doubles {
            if !sub_presentations.contains_key(&dc.common_fixed) {
                let sub = model.restrict_to_columns(&dc.common_fixed)?;
                sub_presentations.insert(dc.common_fixed.clone(), presentation(&sub, truncation)?);
            }
        }

        let pairs = doubles
            .par_iter()
            .map(|dc| {
                let g1 = index[&dc.g1];
                let g2 = index[&dc.g2];
                let target = *index
                    .get(&dc.target)
                    .ok_or_else(|| Error::NotInInertia(format!("product {} lands outside the inertia", dc.target)))?;
                let obstruction = obstruction(model, &dc.g1, &dc.g2)?;
                let obstruction_euler = euler_poly(&obstruction)?;
                let target_fixed = &components[target].fixed_columns;
                let normal: Vec<&[BigInt]> = model
                    .coords()
                    .iter()
                    .filter(|c| target_fixed.contains(&c.column) && !dc.common_fixed.contains(&c.column))
                    .map(|c| c.character.as_slice())
                    .collect();
                let normal_euler = euler_poly(&CharacterClass::from_characters(model.d(), normal.iter().copied()))?;
                let embedding = Embedding {
                    sub: &sub_presentations[&dc.common_fixed],
                    ambient: &presentations[target],
                    normal_euler: normal_euler.clone(),
                    codim: normal.len(),
                };
                embedding.check_well_defined()?;
                Ok((
                    (g1, g2),
                    PairData {
                        g1,
                        g2,
                        target,
                        common_fixed: dc.common_fixed.clone(),
                        obstruction,
                        obstruction_euler,
                        normal_euler,
                        codim: normal.len(),
                    },
                ))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;

        Ok(Self {
            model: model.clone(),
            truncation,
            components,
            presentations,
            pairs,
        })
    }

    pub fn nvars(&self) -> usize {
        self.model.d()
    }

    pub fn component_index(&self, g: &TorsionElement) -> Option<usize> {
        self.components.iter().position(|c| &c.g == g)
    }

    pub fn identity_index(&self) -> usize {
        self.components
            .iter()
            .position(|c| c.g.is_identity())
            .expect("identity component is always present")
    }

    pub fn generator(&self, component: usize) -> GradedClass {
        GradedClass::unit(component, self.nvars())
    }

    pub fn pair(&self, g1: usize, g2: usize) -> Option<&PairData> {
        self.pairs.get(&(g1, g2))
    }

    pub fn pairs(&self) -> impl Iterator<Item = &PairData> {
        self.pairs.values()
    }

    /// `α ⋆ β`, or `None` when the double-inertia component of the pair is
    /// empty (the product is zero).
    pub fn star(&self, alpha: &GradedClass, beta: &GradedClass) -> Result<Option<GradedClass>> {
        let Some(pair) = self.pair(alpha.component, beta.component) else {
            return Ok(None);
        };
        let degree = alpha.degree + beta.degree + pair.obstruction_rank() + pair.codim;
        if degree > self.truncation {
            return Err(Error::DegreeExceeded {
                degree,
                bound: self.truncation,
            });
        }
        let poly = &(&(&alpha.poly * &beta.poly) * &pair.obstruction_euler) * &pair.normal_euler;
        Ok(Some(GradedClass {
            component: pair.target,
            poly,
            degree,
        }))
    }

    pub fn is_zero(&self, class: &Option<GradedClass>) -> Result<bool> {
        match class {
            None => Ok(true),
            Some(c) => self.presentations[c.component].is_zero(&c.poly, c.degree),
        }
    }

    /// Equality of two (possibly empty) products.
    pub fn classes_equal(&self, a: &Option<GradedClass>, b: &Option<GradedClass>) -> Result<bool> {
        match (a, b) {
            (Some(x), Some(y)) => {
                if x.component != y.component || x.degree != y.degree {
                    return Ok(self.is_zero(a)? && self.is_zero(b)?);
                }
                self.presentations[x.component].is_zero(&(&x.poly - &y.poly), x.degree)
            }
            _ => Ok(self.is_zero(a)? && self.is_zero(b)?),
        }
    }

    pub fn table(&self) -> Result<OrbifoldTable> {
        let products = self
            .pairs
            .values()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|p| {
                let raw = &p.obstruction_euler * &p.normal_euler;
                let degree = p.obstruction_rank() + p.codim;
                let pres = &self.presentations[p.target];
                let coordinates = pres.reduce_poly(&raw, degree)?;
                let canonical = pres.normal_form(&raw, degree)?;
                Ok(ProductEntry {
                    g1: p.g1,
                    g2: p.g2,
                    target: p.target,
                    obstruction: p.obstruction.clone(),
                    obstruction_euler: p.obstruction_euler.clone(),
                    normal_euler: p.normal_euler.clone(),
                    raw,
                    canonical,
                    degree,
                    coordinates,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OrbifoldTable {
            components: self.components.clone(),
            relations: self.presentations.iter().map(|p| p.relations().to_vec()).collect(),
            products,
        })
    }
}

/// One generator product `l_{g₁} ⋆ l_{g₂} = poly · l_{g₁g₂}`.
#[derive(Clone, Debug)]
pub struct ProductEntry {
    pub g1: usize,
    pub g2: usize,
    pub target: usize,
    pub obstruction: CharacterClass,
    pub obstruction_euler: Poly,
    pub normal_euler: Poly,
    /// `eu(ℛ) · e(N)` before reduction.
    pub raw: Poly,
    /// Canonical representative in the target presentation.
    pub canonical: Poly,
    pub degree: usize,
    pub coordinates: Vec<BigInt>,
}

#[derive(Clone, Debug)]
pub struct OrbifoldTable {
    pub components: Vec<InertiaComponent>,
    /// Chow relations of each component, in component order.
    pub relations: Vec<Vec<Poly>>,
    pub products: Vec<ProductEntry>,
}

impl OrbifoldTable {
    pub fn product(&self, g1: usize, g2: usize) -> Option<&ProductEntry> {
        self.products.iter().find(|p| p.g1 == g1 && p.g2 == g2)
    }

    pub fn component_index(&self, g: &TorsionElement) -> Option<usize> {
        self.components.iter().position(|c| &c.g == g)
    }
}

pub fn orbifold_table(model: &StackModel, truncation: usize) -> Result<OrbifoldTable> {
    OrbifoldChow::new(model, truncation)?.table()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LawsReport {
    pub unit_checks: usize,
    pub commutativity_checks: usize,
    pub associativity_checks: usize,
    pub age_checks: usize,
    /// Pairs and triples whose product degree exceeds the truncation.
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl LawsReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn degree_skippable<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(x) => Ok(Some(x)),
        Err(Error::DegreeExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Unit law, commutativity, associativity and age additivity of `⋆` on the
/// generator classes (and, for the unit law, on `tᵢ · l_g`).
pub fn check_star_laws(chow: &OrbifoldChow) -> Result<LawsReport> {
    let mut report = LawsReport::default();
    let n = chow.components.len();
    let e = chow.identity_index();
    let unit = chow.generator(e);
    let d = chow.nvars();

    for i in 0..n {
        let mut classes = vec![chow.generator(i)];
        if chow.truncation >= 1 {
            classes.extend((0..d).map(|k| GradedClass {
                component: i,
                poly: Poly::var(d, k),
                degree: 1,
            }));
        }
        for alpha in classes {
            let left = chow.star(&unit, &alpha)?;
            let right = chow.star(&alpha, &unit)?;
            let expected = Some(alpha.clone());
            report.unit_checks += 1;
            if !chow.classes_equal(&left, &expected)? || !chow.classes_equal(&right, &expected)? {
                report
                    .failures
                    .push(format!("unit law fails on {} · l_{}", alpha.poly, chow.components[i].g));
            }
        }
    }

    let gens: Vec<GradedClass> = (0..n).map(|i| chow.generator(i)).collect();
    for i in 0..n {
        for j in 0..n {
            let (Some(ab), Some(ba)) = (
                degree_skippable(chow.star(&gens[i], &gens[j]))?,
                degree_skippable(chow.star(&gens[j], &gens[i]))?,
            ) else {
                report.skipped += 1;
                continue;
            };
            report.commutativity_checks += 1;
            if !chow.classes_equal(&ab, &ba)? {
                report.failures.push(format!(
                    "l_{} ⋆ l_{} ≠ l_{} ⋆ l_{}",
                    chow.components[i].g, chow.components[j].g, chow.components[j].g, chow.components[i].g
                ));
            }
            if let Some(p) = &ab {
                if !chow.is_zero(&ab)? {
                    report.age_checks += 1;
                    let lhs = BigRational::from_integer(p.degree.into()) + &chow.components[p.component].age;
                    let rhs = &chow.components[i].age + &chow.components[j].age;
                    if lhs != rhs {
                        report.failures.push(format!(
                            "age grading: l_{} ⋆ l_{} has orbifold degree {lhs}, expected {rhs}",
                            chow.components[i].g, chow.components[j].g
                        ));
                    }
                }
            }
        }
    }

    let triples: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
        .collect();
    let outcomes = triples
        .par_iter()
        .map(|&(i, j, k)| -> Result<Option<Option<String>>> {
            let left = match degree_skippable(chow.star(&gens[i], &gens[j]))? {
                None => return Ok(None),
                Some(None) => None,
                Some(Some(ab)) => match degree_skippable(chow.star(&ab, &gens[k]))? {
                    None => return Ok(None),
                    Some(x) => x,
                },
            };
            let right = match degree_skippable(chow.star(&gens[j], &gens[k]))? {
                None => return Ok(None),
                Some(None) => None,
                Some(Some(bc)) => match degree_skippable(chow.star(&gens[i], &bc))? {
                    None => return Ok(None),
                    Some(x) => x,
                },
            };
            if chow.classes_equal(&left, &right)? {
                Ok(Some(None))
            } else {
                Ok(Some(Some(format!(
                    "associativity fails on (l_{}, l_{}, l_{})",
                    chow.components[i].g, chow.components[j].g, chow.components[k].g
                ))))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    for o in outcomes {
        match o {
            None => report.skipped += 1,
            Some(failure) => {
                report.associativity_checks += 1;
                report.failures.extend(failure);
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub components: usize,
    pub checks: usize,
    /// Generator products above the truncation on both sides.
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that the obstruction class of the hypertoric stack equals the
/// restriction of the Lawrence obstruction class on every double-inertia
/// component, as exact character multisets.
pub fn verify_obstruction_pullback(a: &WeightMatrix, theta: &Character) -> Result<VerificationReport> {
    let lawrence = StackModel::lawrence(a.clone(), theta.clone())?;
    let hyper = StackModel::hypertoric(a.clone(), theta.clone())?;
    let mut report = VerificationReport::default();
    let dx = double_inertia(&lawrence)?;
    let dy = double_inertia(&hyper)?;
    report.components = dy.len();
    if dx != dy {
        report
            .failures
            .push("double-inertia components differ between the two stacks".into());
        return Ok(report);
    }
    for dc in &dy {
        report.checks += 1;
        let ry = match obstruction(&hyper, &dc.g1, &dc.g2) {
            Ok(r) => r,
            Err(e) => {
                report.failures.push(format!("hypertoric ({}, {}): {e}", dc.g1, dc.g2));
                continue;
            }
        };
        let rx = match obstruction(&lawrence, &dc.g1, &dc.g2) {
            Ok(r) => r,
            Err(e) => {
                report.failures.push(format!("Lawrence ({}, {}): {e}", dc.g1, dc.g2));
                continue;
            }
        };
        if rx != ry {
            report
                .failures
                .push(format!("({}, {}): ℛ_Y = {ry} but ι*ℛ_X = {rx}", dc.g1, dc.g2));
        }
    }
    Ok(report)
}

/// Builds the orbifold Chow data of the Lawrence and hypertoric stacks
/// independently and checks that pullback identifies them: componentwise
/// ring isomorphisms up to `D`, identical structure polynomials, identical
/// ages.
pub fn verify_orbifold_iso(a: &WeightMatrix, theta: &Character, truncation: usize) -> Result<VerificationReport> {
    let x = OrbifoldChow::new(&StackModel::lawrence(a.clone(), theta.clone())?, truncation)?;
    let y = OrbifoldChow::new(&StackModel::hypertoric(a.clone(), theta.clone())?, truncation)?;
    let mut report = VerificationReport {
        components: x.components.len(),
        ..Default::default()
    };

    let key = |c: &InertiaComponent| (c.g.clone(), c.fixed_columns.clone());
    let ykeys: HashMap<_, usize> = y.components.iter().enumerate().map(|(i, c)| (key(c), i)).collect();
    let mut matching = Vec::with_capacity(x.components.len());
    for cx in &x.components {
        match ykeys.get(&key(cx)) {
            Some(&j) => matching.push(j),
            None => {
                report
                    .failures
                    .push(format!("component {} has no hypertoric counterpart", cx.g));
                return Ok(report);
            }
        }
    }
    if y.components.len() != x.components.len() {
        report.failures.push("component counts differ".into());
        return Ok(report);
    }

    let d = a.d();
    let identity: Vec<Poly> = (0..d).map(|i| Poly::var(d, i)).collect();
    for (i, &j) in matching.iter().enumerate() {
        report.checks += 1;
        let iso = ring_map_is_iso(&x.presentations[i], &y.presentations[j], &identity, truncation)?;
        if !iso.is_iso {
            report.failures.push(format!(
                "component {}: pullback not an isomorphism in degree {:?} ({})",
                x.components[i].g,
                iso.failing_degree,
                iso.reason.unwrap_or_default()
            ));
        }
        report.checks += 1;
        if x.components[i].age != y.components[j].age {
            report.failures.push(format!(
                "component {}: age {} vs {}",
                x.components[i].g, x.components[i].age, y.components[j].age
            ));
        }
    }

    for i1 in 0..x.components.len() {
        for i2 in 0..x.components.len() {
            let (j1, j2) = (matching[i1], matching[i2]);
            let label = format!("l_{} ⋆ l_{}", x.components[i1].g, x.components[i2].g);
            let (px, py) = match (
                degree_skippable(x.star(&x.generator(i1), &x.generator(i2)))?,
                degree_skippable(y.star(&y.generator(j1), &y.generator(j2)))?,
            ) {
                (Some(px), Some(py)) => (px, py),
                (None, None) => {
                    report.skipped += 1;
                    continue;
                }
                _ => {
                    report
                        .failures
                        .push(format!("{label}: degree above D on one side only"));
                    continue;
                }
            };
            report.checks += 1;
            match (&px, &py) {
                (Some(cx), Some(cy)) => {
                    if matching[cx.component] != cy.component {
                        report
                            .failures
                            .push(format!("{label}: products land on different components"));
                    } else if cx.degree != cy.degree
                        || !y.presentations[cy.component].is_zero(&(&cx.poly - &cy.poly), cy.degree)?
                    {
                        report
                            .failures
                            .push(format!("{label}: structure polynomials {} vs {}", cx.poly, cy.poly));
                    }
                }
                (None, None) => {}
                _ => {
                    if !(x.is_zero(&px)? && y.is_zero(&py)?) {
                        report.failures.push(format!("{label}: zero on one side only"));
                    }
                }
            }
        }
    }
    Ok(report)
}
