//! Exact integer matrices, Smith normal form, rational linear solves and
//! enumeration of finite cokernels `{v ∈ (ℚ/ℤ)^d : Mᵀv ∈ ℤ^d}`.
//!
//! Everything here is arbitrary precision; there are no fixed-width
//! shortcuts anywhere in the module.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational vector. `BigRational` keeps every entry in lowest terms
/// with a positive denominator.
pub type RationalVector = Vec<BigRational>;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_to_rat(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

/// Formats a rational as `"p/q"`, or `"p"` when integral.
pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("not a rational number: {s:?}")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(parse_int(p)?, q))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

/// Dense integer matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of anything convertible to `BigInt`.
    /// Every row must have the same length.
    pub fn from_rows<T: Clone + Into<BigInt>>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let entries = rows.iter().flat_map(|r| r.iter().cloned().map(Into::into)).collect();
        Self::new(rows.len(), cols, entries)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column {j} has length {}, expected {rows}",
                    c.len()
                )));
            }
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn diagonal<T: Clone + Into<BigInt>>(diag: &[T]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in diag.iter().enumerate() {
            m.set(i, i, x.clone().into());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.entries[idx] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn mul_rational_vec(&self, x: &[BigRational]) -> Result<RationalVector> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(BigRational::zero(), |acc, (a, b)| acc + b * a)
            })
            .collect())
    }

    /// Submatrix keeping the listed columns, in the listed order.
    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        let mut out = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        let mut out = Self::zeros(rows.len(), self.cols);
        for (ii, &i) in rows.iter().enumerate() {
            for j in 0..self.cols {
                out.set(ii, j, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn hconcat(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot join {} rows with {} rows",
                self.rows, other.rows
            )));
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += factor * row[src]`
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = self.get(src, j) * factor;
            self.entries[dst * self.cols + j] += delta;
        }
    }

    /// `col[dst] += factor * col[src]`
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = self.get(i, src) * factor;
            self.entries[i * self.cols + dst] += delta;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.entries[idx] = -&self.entries[idx];
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        Ok(sign * a.get(n - 1, n - 1))
    }

    /// Rank over ℚ.
    pub fn rank(&self) -> usize {
        rational_row_echelon(&self.to_rational_rows()).1.len()
    }

    fn to_rational_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(int_to_rat).collect())
            .collect()
    }

    /// Inverse of a unimodular matrix, as an integer matrix.
    pub fn unimodular_inverse(&self) -> Result<IntMatrix> {
        let n = self.rows;
        if n != self.cols {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let mut columns = Vec::with_capacity(n);
        for j in 0..n {
            let e: RationalVector = (0..n)
                .map(|i| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect();
            let x = solve_rational(self, &e)?.ok_or(Error::SingularMatrix)?;
            let col = x
                .into_iter()
                .map(|q| {
                    if q.is_integer() {
                        Ok(q.to_integer())
                    } else {
                        Err(Error::InvalidInput("matrix is not unimodular".into()))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            columns.push(col);
        }
        IntMatrix::from_columns(n, &columns)
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        self.get(i, j)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// `U·M·V = D` with `U`, `V` unimodular and `D` diagonal with
/// `d₁ | d₂ | …`, all `dᵢ ≥ 0`.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form. Pivots on the entry of smallest absolute value;
/// divisibility is enforced by folding an offending row into the pivot row.
pub fn snf(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = smallest_nonzero(&a, t) else {
                return finish(u, a, v);
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = a.get(i, t) / &pivot;
                let neg = -q;
                a.add_row_multiple(i, t, &neg);
                u.add_row_multiple(i, t, &neg);
                clean &= a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let q = a.get(t, j) / &pivot;
                let neg = -q;
                a.add_col_multiple(j, t, &neg);
                v.add_col_multiple(j, t, &neg);
                clean &= a.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let offending = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(u, a, v)
}

fn finish(u: IntMatrix, d: IntMatrix, v: IntMatrix) -> SnfResult {
    SnfResult { u, d, v }
}

fn smallest_nonzero(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                best = Some((i, j, ax));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Basis of the integer kernel `{x ∈ ℤ^cols : M·x = 0}`, as columns.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let s = snf(m);
    let r = s.rank();
    (r..m.cols()).map(|j| s.v.column(j)).collect()
}

/// Reduced row echelon form over ℚ; returns the reduced rows and pivot columns.
fn rational_row_echelon(rows: &[Vec<BigRational>]) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut a = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    (a, pivots)
}

/// Exact solution of `M·x = b`, or `None` when the system is inconsistent.
/// Free variables are set to zero.
pub fn solve_rational(m: &IntMatrix, b: &[BigRational]) -> Result<Option<RationalVector>> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            m.rows()
        )));
    }
    let augmented: Vec<Vec<BigRational>> = (0..m.rows())
        .map(|i| {
            let mut row: Vec<BigRational> = m.row(i).iter().map(int_to_rat).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let (reduced, pivots) = rational_row_echelon(&augmented);
    if pivots.last() == Some(&m.cols()) {
        return Ok(None);
    }
    let mut x = vec![BigRational::zero(); m.cols()];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = reduced[r][m.cols()].clone();
    }
    Ok(Some(x))
}

/// An element of `(ℚ/ℤ)^d` in canonical form: every entry in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModZVector(Vec<BigRational>);

impl ModZVector {
    pub fn new(entries: Vec<BigRational>) -> Self {
        Self(entries.iter().map(frac).collect())
    }

    pub fn zero(d: usize) -> Self {
        Self(vec![BigRational::zero(); d])
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &ModZVector) -> ModZVector {
        ModZVector::new(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> ModZVector {
        ModZVector::new(self.0.iter().map(|a| -a).collect())
    }

    /// Least `r ≥ 1` with `r·v ∈ ℤ^d`.
    pub fn order(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    /// `⟨w, v⟩` as an exact rational (not reduced mod ℤ).
    pub fn pair(&self, w: &[BigInt]) -> BigRational {
        self.0
            .iter()
            .zip(w)
            .fold(BigRational::zero(), |acc, (x, a)| acc + x * a)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }
}

impl fmt::Display for ModZVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

/// All `v ∈ (ℚ/ℤ)^d` with `Mᵀ·v ∈ ℤ^d`, for square nonsingular `M`,
/// sorted in canonical order. There are exactly `|det M|` of them.
pub fn cokernel_torsion_elements(m: &IntMatrix) -> Result<Vec<ModZVector>> {
    if m.rows() != m.cols() {
        return Err(Error::DimensionMismatch(format!(
            "cokernel enumeration needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if m.det()?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let d = m.rows();
    // U·Mᵀ·V = D, so Mᵀv ∈ ℤ^d iff w = V⁻¹v has wᵢ ∈ (1/dᵢ)ℤ.
    let s = snf(&m.transpose());
    let factors = s.invariant_factors();
    let mut out = Vec::new();
    let mut counter = vec![BigInt::zero(); d];
    loop {
        let w: RationalVector = counter
            .iter()
            .zip(&factors)
            .map(|(k, di)| BigRational::new(k.clone(), di.clone()))
            .collect();
        out.push(ModZVector::new(s.v.mul_rational_vec(&w)?));

        let mut i = 0;
        loop {
            if i == d {
                out.sort();
                out.dedup();
                return Ok(out);
            }
            counter[i] += 1;
            if counter[i] < factors[i] {
                break;
            }
            counter[i] = BigInt::zero();
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn check_snf(a: &IntMatrix) -> SnfResult {
        let s = snf(a);
        let prod = s.u.mul(a).unwrap().mul(&s.v).unwrap();
        assert_eq!(prod, s.d);
        assert_eq!(s.u.det().unwrap().abs(), BigInt::one());
        assert_eq!(s.v.det().unwrap().abs(), BigInt::one());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn snf_of_diag_2_3() {
        let s = check_snf(&m(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.d, m(&[vec![1, 0], vec![0, 6]]));
    }

    #[test]
    fn snf_of_one() {
        let s = check_snf(&m(&[vec![1]]));
        assert_eq!(s.d, m(&[vec![1]]));
        assert_eq!(s.u, m(&[vec![1]]));
        assert_eq!(s.v, m(&[vec![1]]));
    }

    #[test]
    fn snf_of_row_4_6() {
        let s = check_snf(&m(&[vec![4, 6]]));
        assert_eq!(s.d, m(&[vec![2, 0]]));
    }

    #[test]
    fn snf_handles_empty_and_zero() {
        check_snf(&IntMatrix::zeros(0, 3));
        check_snf(&IntMatrix::zeros(3, 0));
        let s = check_snf(&IntMatrix::zeros(2, 2));
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn det_matches_hand_values() {
        assert_eq!(m(&[vec![1, 2], vec![3, 4]]).det().unwrap(), BigInt::from(-2));
        assert_eq!(
            m(&[vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]]).det().unwrap(),
            BigInt::from(-2)
        );
        assert!(m(&[vec![1, 1], vec![1, 1]]).det().unwrap().is_zero());
    }

    #[test]
    fn solve_identity() {
        let x = solve_rational(&IntMatrix::identity(2), &[rat(1, 1), rat(0, 1)])
            .unwrap()
            .unwrap();
        assert_eq!(x, vec![rat(1, 1), rat(0, 1)]);
    }

    #[test]
    fn solve_half() {
        let x = solve_rational(&m(&[vec![2]]), &[rat(1, 1)]).unwrap().unwrap();
        assert_eq!(x, vec![rat(1, 2)]);
    }

    #[test]
    fn solve_inconsistent() {
        let x = solve_rational(&m(&[vec![1, 1], vec![1, 1]]), &[rat(1, 1), rat(0, 1)]).unwrap();
        assert!(x.is_none());
    }

    #[test]
    fn solve_dimension_mismatch() {
        assert!(matches!(
            solve_rational(&IntMatrix::identity(2), &[rat(1, 1)]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn cokernel_examples() {
        let c2 = cokernel_torsion_elements(&m(&[vec![2]])).unwrap();
        assert_eq!(
            c2,
            vec![ModZVector::new(vec![rat(0, 1)]), ModZVector::new(vec![rat(1, 2)])]
        );
        let c3 = cokernel_torsion_elements(&m(&[vec![3]])).unwrap();
        let expect: Vec<_> = (0..3).map(|k| ModZVector::new(vec![rat(k, 3)])).collect();
        assert_eq!(c3, expect);
        let id = cokernel_torsion_elements(&IntMatrix::identity(2)).unwrap();
        assert_eq!(id, vec![ModZVector::zero(2)]);
    }

    #[test]
    fn cokernel_rejects_singular() {
        assert!(matches!(
            cokernel_torsion_elements(&m(&[vec![1, 2], vec![2, 4]])),
            Err(Error::SingularMatrix)
        ));
    }

    #[test]
    fn cokernel_uses_transpose() {
        // Columns (2,0) and (1,1): v with 2v₁ ∈ ℤ and v₁+v₂ ∈ ℤ.
        let a = m(&[vec![2, 1], vec![0, 1]]);
        let els = cokernel_torsion_elements(&a).unwrap();
        assert_eq!(els.len(), 2);
        assert!(els.contains(&ModZVector::new(vec![rat(1, 2), rat(1, 2)])));
    }

    #[test]
    fn unimodular_inverse_roundtrip() {
        let u = m(&[vec![2, 1], vec![1, 1]]);
        let inv = u.unimodular_inverse().unwrap();
        assert_eq!(u.mul(&inv).unwrap(), IntMatrix::identity(2));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("4").unwrap(), rat(4, 1));
        assert!(parse_rational("1/0").is_err());
        assert_eq!(format_rational(&rat(2, 4)), "1/2");
        assert_eq!(format_rational(&rat(-4, 2)), "-2");
    }

    #[test]
    fn frac_is_in_unit_interval() {
        assert_eq!(frac(&rat(-1, 3)), rat(2, 3));
        assert_eq!(frac(&rat(7, 3)), rat(1, 3));
        assert_eq!(frac(&rat(-2, 1)), rat(0, 1));
    }
}
