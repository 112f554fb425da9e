//! GIT input data `(A, θ)`: column bases, λ-coefficients, σ-sets, the
//! stable-locus arrangement, Lawrence doubling and the moment map.
//!
//! Column and coordinate indices are zero-based throughout the library.
//! In doubled models the coordinate `x_j` has index `j` and `y_j` has index
//! `n + j`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int_to_rat, solve_rational, IntMatrix, RationalVector};
use crate::orbifold::CharacterClass;

/// A coordinate of `V × V*`, tagged with its alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coord {
    X(usize),
    Y(usize),
}

impl Coord {
    pub fn column(self) -> usize {
        match self {
            Coord::X(j) | Coord::Y(j) => j,
        }
    }

    pub fn doubled_index(self, n: usize) -> usize {
        match self {
            Coord::X(j) => j,
            Coord::Y(j) => n + j,
        }
    }

    pub fn from_doubled_index(i: usize, n: usize) -> Coord {
        if i < n {
            Coord::X(i)
        } else {
            Coord::Y(i - n)
        }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::X(j) => write!(f, "x{}", j + 1),
            Coord::Y(j) => write!(f, "y{}", j + 1),
        }
    }
}

/// The `d×n` matrix of torus weights, of full row rank `d ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMatrix {
    matrix: IntMatrix,
}

impl WeightMatrix {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() == 0 {
            return Err(Error::InvalidInput("weight matrix has no rows".into()));
        }
        let rank = matrix.rank();
        if rank < matrix.rows() {
            return Err(Error::RankDeficient {
                rank,
                expected: matrix.rows(),
            });
        }
        Ok(Self { matrix })
    }

    pub fn from_rows<T: Clone + Into<BigInt>>(rows: &[Vec<T>]) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows)?)
    }

    pub fn d(&self) -> usize {
        self.matrix.rows()
    }

    pub fn n(&self) -> usize {
        self.matrix.cols()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.matrix.column(j)
    }

    /// `A_F`: the columns in `cols`, renumbered in order.
    pub fn select_columns(&self, cols: &[usize]) -> Result<WeightMatrix> {
        WeightMatrix::new(self.matrix.select_columns(cols))
    }

    pub fn column_bases(&self) -> Vec<Vec<usize>> {
        column_bases(&self.matrix).unwrap_or_default()
    }
}

/// A character `θ ∈ ℤ^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character(pub Vec<BigInt>);

impl Character {
    pub fn from_ints(values: &[i64]) -> Self {
        Self(values.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn as_rational(&self) -> RationalVector {
        self.0.iter().map(int_to_rat).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

/// `σ(C, θ)`: for each column of the basis, `x` when `λ > 0`, `y` when `λ < 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SigmaSet {
    pub basis: Vec<usize>,
    pub coords: Vec<Coord>,
}

impl SigmaSet {
    pub fn doubled_indices(&self, n: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.coords.iter().map(|c| c.doubled_index(n)).collect();
        v.sort_unstable();
        v
    }
}

impl fmt::Display for SigmaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.coords.iter().map(Coord::to_string).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericReport {
    /// First offending `(basis, column)` in lexicographic basis order.
    pub witness: Option<(Vec<usize>, usize)>,
}

impl GenericReport {
    pub fn is_generic(&self) -> bool {
        self.witness.is_none()
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// All size-`d` column subsets with nonzero determinant, lexicographically.
pub fn column_bases(a: &IntMatrix) -> Result<Vec<Vec<usize>>> {
    let d = a.rows();
    let rank = a.rank();
    if rank < d {
        return Err(Error::RankDeficient { rank, expected: d });
    }
    let mut out = Vec::new();
    for c in combinations(a.cols(), d) {
        if !a.select_columns(&c).det()?.is_zero() {
            out.push(c);
        }
    }
    Ok(out)
}

/// The unique `λ` with `Σ λ_k a_{c_k} = θ`.
pub fn lambda_coeffs(a: &IntMatrix, basis: &[usize], theta: &Character) -> Result<RationalVector> {
    if theta.0.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "character has length {}, torus has rank {}",
            theta.0.len(),
            a.rows()
        )));
    }
    if basis.len() != a.rows() || basis.iter().any(|&j| j >= a.cols()) {
        return Err(Error::NotABasis(basis.to_vec()));
    }
    let sub = a.select_columns(basis);
    if sub.det()?.is_zero() {
        return Err(Error::NotABasis(basis.to_vec()));
    }
    solve_rational(&sub, &theta.as_rational())?.ok_or_else(|| Error::NotABasis(basis.to_vec()))
}

pub fn sigma_set(a: &IntMatrix, basis: &[usize], theta: &Character) -> Result<SigmaSet> {
    let lambda = lambda_coeffs(a, basis, theta)?;
    let mut coords = Vec::with_capacity(basis.len());
    for (&col, l) in basis.iter().zip(&lambda) {
        if l.is_zero() {
            return Err(Error::NonGeneric {
                basis: basis.to_vec(),
                column: col,
            });
        }
        coords.push(if l.is_positive() { Coord::X(col) } else { Coord::Y(col) });
    }
    Ok(SigmaSet {
        basis: basis.to_vec(),
        coords,
    })
}

/// Bases are scanned in reverse lexicographic order and the last vanishing
/// coefficient is reported, so the witness names the highest-index column
/// on which `θ` degenerates.
pub fn check_generic(a: &IntMatrix, theta: &Character) -> Result<GenericReport> {
    for basis in column_bases(a)?.into_iter().rev() {
        let lambda = lambda_coeffs(a, &basis, theta)?;
        if let Some(k) = lambda.iter().rposition(Zero::is_zero) {
            let column = basis[k];
            return Ok(GenericReport {
                witness: Some((basis, column)),
            });
        }
    }
    Ok(GenericReport { witness: None })
}

/// Inclusion-minimal sets meeting every member of `sets`, found by exhaustive
/// search over subsets of their union ordered by size, then lexicographically.
pub fn minimal_hitting_sets(sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    if sets.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    let mut universe: Vec<usize> = sets.iter().flatten().copied().collect();
    universe.sort_unstable();
    universe.dedup();
    let mut found: Vec<Vec<usize>> = Vec::new();
    for k in 0..=universe.len() {
        for pick in combinations(universe.len(), k) {
            let cand: Vec<usize> = pick.iter().map(|&i| universe[i]).collect();
            if found.iter().any(|f| f.iter().all(|x| cand.contains(x))) {
                continue;
            }
            if sets.iter().all(|s| s.iter().any(|x| cand.contains(x))) {
                found.push(cand);
            }
        }
    }
    found
}

/// Removes duplicates and non-minimal members; result sorted by size then
/// lexicographically.
pub fn minimize_sets(sets: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let mut sets: Vec<Vec<usize>> = sets
        .into_iter()
        .map(|mut s| {
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sets.dedup();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for s in sets {
        if !out.iter().any(|o| o.iter().all(|x| s.contains(x))) {
            out.push(s);
        }
    }
    out
}

/// Minimal coordinate sets `S` (doubled indexing over `n` columns) whose
/// vanishing lies in the unstable locus.
pub fn minimal_unstable_sets(sigmas: &[SigmaSet], n: usize) -> Vec<Vec<usize>> {
    let sets: Vec<Vec<usize>> = sigmas.iter().map(|s| s.doubled_indices(n)).collect();
    minimal_hitting_sets(&sets)
}

/// `A± = (a₁ … a_n −a₁ … −a_n)`.
pub fn lawrence_double(a: &WeightMatrix) -> WeightMatrix {
    let m = a.matrix();
    let neg: Vec<Vec<BigInt>> = m
        .to_rows()
        .into_iter()
        .map(|r| r.iter().map(|x| -x).collect())
        .collect();
    let neg = IntMatrix::from_rows(&neg).expect("same shape");
    let doubled = m.hconcat(&neg).expect("same row count");
    WeightMatrix { matrix: doubled }
}

/// `μ_i = Σ_j a_ij x_j y_j` at `p = (x₁…x_n, y₁…y_n)`.
pub fn moment_eval(a: &IntMatrix, p: &[BigRational]) -> Result<RationalVector> {
    let n = a.cols();
    if p.len() != 2 * n {
        return Err(Error::DimensionMismatch(format!(
            "point has {} coordinates, expected {}",
            p.len(),
            2 * n
        )));
    }
    let products: RationalVector = (0..n).map(|j| &p[j] * &p[n + j]).collect();
    a.mul_rational_vec(&products)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AmbientCoord {
    pub label: String,
    /// Column of the base weight matrix this coordinate belongs to.
    pub column: usize,
    pub character: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableArrangement {
    pub sigma_sets: Vec<SigmaSet>,
    /// Minimal unstable coordinate sets, as indices into `ambient_coords`.
    pub unstable_minimal: Vec<Vec<usize>>,
    pub ambient_coords: Vec<AmbientCoord>,
}

impl StableArrangement {
    /// Whether the coordinate subspace where exactly the `kept` coordinates
    /// may be nonzero meets the stable locus.
    pub fn meets_stable_locus(&self, kept: &[bool]) -> bool {
        self.unstable_minimal.iter().all(|s| s.iter().any(|&c| kept[c]))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Lawrence,
    Hypertoric,
    #[serde(rename = "direct")]
    DirectToric,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Lawrence => "lawrence",
            ModelKind::Hypertoric => "hypertoric",
            ModelKind::DirectToric => "direct",
        })
    }
}

/// A Lawrence toric stack `[(V×V*)^s/T]`, the hypertoric stack inside it, or
/// a toric quotient with a user-supplied unstable arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackModel {
    pub kind: ModelKind,
    /// `A`, before doubling.
    pub base: WeightMatrix,
    pub theta: Option<Character>,
    /// `A±` for Lawrence/Hypertoric, `A` for DirectToric.
    pub weights: WeightMatrix,
    pub arrangement: StableArrangement,
    pub tangent_class: CharacterClass,
    pub moment_rank: usize,
}

impl StackModel {
    pub fn lawrence(base: WeightMatrix, theta: Character) -> Result<Self> {
        Self::from_git(ModelKind::Lawrence, base, theta)
    }

    pub fn hypertoric(base: WeightMatrix, theta: Character) -> Result<Self> {
        Self::from_git(ModelKind::Hypertoric, base, theta)
    }

    fn from_git(kind: ModelKind, base: WeightMatrix, theta: Character) -> Result<Self> {
        let a = base.matrix();
        let n = base.n();
        let d = base.d();
        if theta.0.len() != d {
            return Err(Error::DimensionMismatch(format!(
                "character has length {}, torus has rank {d}",
                theta.0.len()
            )));
        }
        if theta.is_zero() {
            return Err(Error::InvalidInput("θ must be nonzero".into()));
        }
        if let Some((basis, column)) = check_generic(a, &theta)?.witness {
            return Err(Error::NonGeneric { basis, column });
        }
        let sigma_sets = column_bases(a)?
            .iter()
            .map(|c| sigma_set(a, c, &theta))
            .collect::<Result<Vec<_>>>()?;
        let unstable_minimal = minimal_unstable_sets(&sigma_sets, n);
        let weights = lawrence_double(&base);
        let ambient_coords = (0..2 * n)
            .map(|i| {
                let c = Coord::from_doubled_index(i, n);
                AmbientCoord {
                    label: c.to_string(),
                    column: c.column(),
                    character: weights.column(i),
                }
            })
            .collect();
        let arrangement = StableArrangement {
            sigma_sets,
            unstable_minimal,
            ambient_coords,
        };
        let moment_rank = if kind == ModelKind::Hypertoric { d } else { 0 };
        let tangent_class = tangent_class_of(&arrangement, d, d + moment_rank);
        Ok(Self {
            kind,
            base,
            theta: Some(theta),
            weights,
            arrangement,
            tangent_class,
            moment_rank,
        })
    }

    /// `[(𝔸^n ∖ ⋃ V(S)) / T]` for the given minimal unstable coordinate sets.
    pub fn direct(base: WeightMatrix, unstable: Vec<Vec<usize>>) -> Result<Self> {
        let n = base.n();
        let d = base.d();
        if let Some(bad) = unstable.iter().flatten().find(|&&c| c >= n) {
            return Err(Error::InvalidInput(format!(
                "unstable set refers to coordinate {} but the model has {n}",
                bad + 1
            )));
        }
        if unstable.iter().any(Vec::is_empty) {
            return Err(Error::InvalidInput("empty unstable set leaves no stable points".into()));
        }
        let ambient_coords = (0..n)
            .map(|j| AmbientCoord {
                label: format!("x{}", j + 1),
                column: j,
                character: base.column(j),
            })
            .collect();
        let arrangement = StableArrangement {
            sigma_sets: Vec::new(),
            unstable_minimal: minimize_sets(unstable),
            ambient_coords,
        };
        let tangent_class = tangent_class_of(&arrangement, d, d);
        Ok(Self {
            kind: ModelKind::DirectToric,
            weights: base.clone(),
            base,
            theta: None,
            arrangement,
            tangent_class,
            moment_rank: 0,
        })
    }

    pub fn d(&self) -> usize {
        self.base.d()
    }

    /// Number of columns of the base matrix `A`.
    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn num_coords(&self) -> usize {
        self.arrangement.ambient_coords.len()
    }

    pub fn coords(&self) -> &[AmbientCoord] {
        &self.arrangement.ambient_coords
    }

    pub fn unstable_sets(&self) -> &[Vec<usize>] {
        &self.arrangement.unstable_minimal
    }

    /// `2 ·` (number of ambient coordinates).
    pub fn default_truncation(&self) -> usize {
        2 * self.num_coords()
    }

    /// Mask of ambient coordinates whose column lies in `columns`.
    pub fn coordinate_mask(&self, columns: &[usize]) -> Vec<bool> {
        let mut keep = vec![false; self.n()];
        for &c in columns {
            keep[c] = true;
        }
        self.coords().iter().map(|c| keep[c.column]).collect()
    }

    /// Whether the coordinate subspace spanned by the coordinates of
    /// `columns` meets the stable locus.
    pub fn columns_meet_stable_locus(&self, columns: &[usize]) -> bool {
        self.arrangement.meets_stable_locus(&self.coordinate_mask(columns))
    }

    /// The model on `A_F`: the columns outside `columns` deleted, same `θ`
    /// (or, for direct models, the unstable sets intersected with the kept
    /// coordinates). `columns` must be sorted.
    pub fn restrict_to_columns(&self, columns: &[usize]) -> Result<StackModel> {
        let base = self.base.select_columns(columns)?;
        match self.kind {
            ModelKind::Lawrence | ModelKind::Hypertoric => {
                let theta = self.theta.clone().expect("GIT models carry θ");
                Self::from_git(self.kind, base, theta)
            }
            ModelKind::DirectToric => {
                let renumber = |c: usize| columns.iter().position(|&k| k == c);
                let unstable = self
                    .unstable_sets()
                    .iter()
                    .map(|s| s.iter().filter_map(|&c| renumber(c)).collect())
                    .collect();
                Self::direct(base, unstable)
            }
        }
    }
}

/// Every ambient coordinate character, minus `trivial_deficit` copies of the
/// trivial character (the Lie algebra of `T`, plus the moment-map directions
/// for hypertoric models).
fn tangent_class_of(arrangement: &StableArrangement, d: usize, trivial_deficit: usize) -> CharacterClass {
    let mut t = CharacterClass::zero(d);
    for c in &arrangement.ambient_coords {
        t.add_character(&c.character, &BigRational::from_integer(1.into()));
    }
    t.add_trivial(&-BigInt::from(trivial_deficit));
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn wm(rows: &[Vec<i64>]) -> WeightMatrix {
        WeightMatrix::from_rows(rows).unwrap()
    }

    fn a12() -> WeightMatrix {
        wm(&[vec![1, 2]])
    }

    fn a3() -> WeightMatrix {
        wm(&[vec![1, 0, 1], vec![0, 1, 1]])
    }

    #[test]
    fn column_bases_examples() {
        assert_eq!(a12().column_bases(), vec![vec![0], vec![1]]);
        assert_eq!(
            WeightMatrix::new(IntMatrix::identity(2)).unwrap().column_bases(),
            vec![vec![0, 1]]
        );
        assert_eq!(a3().column_bases(), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn rank_deficiency_is_rejected() {
        assert_eq!(
            WeightMatrix::from_rows(&[vec![0, 0]]),
            Err(Error::RankDeficient { rank: 0, expected: 1 })
        );
        assert!(column_bases(&IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]).unwrap()).is_err());
    }

    #[test]
    fn lambda_examples() {
        let l = lambda_coeffs(a12().matrix(), &[1], &Character::from_ints(&[1])).unwrap();
        assert_eq!(l, vec![rat(1, 2)]);
        let theta = Character::from_ints(&[3, -5]);
        let l = lambda_coeffs(&IntMatrix::identity(2), &[0, 1], &theta).unwrap();
        assert_eq!(l, vec![rat(3, 1), rat(-5, 1)]);
        let l = lambda_coeffs(a3().matrix(), &[1, 2], &Character::from_ints(&[1, 0])).unwrap();
        assert_eq!(l, vec![rat(-1, 1), rat(1, 1)]);
    }

    #[test]
    fn lambda_rejects_non_basis() {
        let a = IntMatrix::from_rows(&[vec![1, 2, 0], vec![2, 4, 1]]).unwrap();
        assert_eq!(
            lambda_coeffs(&a, &[0, 1], &Character::from_ints(&[1, 0])),
            Err(Error::NotABasis(vec![0, 1]))
        );
    }

    #[test]
    fn sigma_examples() {
        let one = Character::from_ints(&[1]);
        assert_eq!(sigma_set(a12().matrix(), &[0], &one).unwrap().coords, vec![Coord::X(0)]);
        assert_eq!(sigma_set(a12().matrix(), &[1], &one).unwrap().coords, vec![Coord::X(1)]);
        let s = sigma_set(a3().matrix(), &[1, 2], &Character::from_ints(&[1, 0])).unwrap();
        assert_eq!(s.coords, vec![Coord::Y(1), Coord::X(2)]);
        assert_eq!(s.to_string(), "{y2,x3}");
    }

    #[test]
    fn sigma_rejects_zero_lambda() {
        let err = sigma_set(a3().matrix(), &[0, 2], &Character::from_ints(&[1, 0])).unwrap_err();
        assert_eq!(
            err,
            Error::NonGeneric {
                basis: vec![0, 2],
                column: 2
            }
        );
    }

    #[test]
    fn genericity_examples() {
        assert!(check_generic(a12().matrix(), &Character::from_ints(&[1]))
            .unwrap()
            .is_generic());
        let r = check_generic(a3().matrix(), &Character::from_ints(&[1, 0])).unwrap();
        assert_eq!(r.witness, Some((vec![0, 2], 2)));
        assert!(check_generic(&IntMatrix::identity(2), &Character::from_ints(&[1, 1]))
            .unwrap()
            .is_generic());
    }

    #[test]
    fn hitting_set_examples() {
        assert_eq!(minimal_hitting_sets(&[vec![0], vec![1]]), vec![vec![0, 1]]);
        assert_eq!(minimal_hitting_sets(&[vec![0], vec![1], vec![2]]), vec![vec![0, 1, 2]]);
        assert_eq!(
            minimal_hitting_sets(&[vec![0, 1], vec![1, 2]]),
            vec![vec![1], vec![0, 2]]
        );
        assert!(minimal_hitting_sets(&[vec![]]).is_empty());
    }

    #[test]
    fn lawrence_examples() {
        assert_eq!(lawrence_double(&a12()), wm(&[vec![1, 2, -1, -2]]));
        assert_eq!(lawrence_double(&wm(&[vec![1]])), wm(&[vec![1, -1]]));
        assert_eq!(
            lawrence_double(&WeightMatrix::new(IntMatrix::identity(2)).unwrap()),
            wm(&[vec![1, 0, -1, 0], vec![0, 1, 0, -1]])
        );
    }

    #[test]
    fn moment_examples() {
        let a = a12();
        let p = |v: &[i64]| v.iter().map(|&x| rat(x, 1)).collect::<Vec<_>>();
        assert_eq!(moment_eval(a.matrix(), &p(&[1, 1, -2, 1])).unwrap(), vec![rat(0, 1)]);
        assert_eq!(moment_eval(a.matrix(), &p(&[0, 0, 0, 0])).unwrap(), vec![rat(0, 1)]);
        assert_eq!(moment_eval(a.matrix(), &p(&[2, 3, 1, 1])).unwrap(), vec![rat(8, 1)]);
        assert!(moment_eval(a.matrix(), &p(&[1, 2, 3])).is_err());
    }

    #[test]
    fn lawrence_model_of_a12() {
        let m = StackModel::lawrence(a12(), Character::from_ints(&[1])).unwrap();
        assert_eq!(m.num_coords(), 4);
        assert_eq!(m.unstable_sets(), &[vec![0, 1]]);
        assert_eq!(m.arrangement.ambient_coords[3].label, "y2");
        assert_eq!(m.tangent_class.trivial_multiplicity(), &BigInt::from(-1));
        let h = StackModel::hypertoric(a12(), Character::from_ints(&[1])).unwrap();
        assert_eq!(h.tangent_class.trivial_multiplicity(), &BigInt::from(-2));
        assert_eq!(h.moment_rank, 1);
    }

    #[test]
    fn non_generic_model_is_rejected() {
        let err = StackModel::lawrence(a3(), Character::from_ints(&[1, 0])).unwrap_err();
        assert_eq!(err.to_string(), "non-generic: basis {1,3}, λ₃ = 0");
    }

    #[test]
    fn direct_restriction_intersects_unstable_sets() {
        let m = StackModel::direct(wm(&[vec![0, 1, 2, 3]]), vec![vec![3]]).unwrap();
        let sub = m.restrict_to_columns(&[0, 3]).unwrap();
        assert_eq!(sub.unstable_sets(), &[vec![1]]);
        assert!(m.columns_meet_stable_locus(&[0, 3]));
        assert!(!m.columns_meet_stable_locus(&[0, 2]));
    }
}
