//! Integer polynomials in `t₁, …, t_d`, sparse, with graded-lex display.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

pub fn monomial_degree(m: &[u32]) -> usize {
    m.iter().map(|&e| e as usize).sum()
}

/// Graded lexicographic order with `t₁ > t₂ > … > t_d`, largest first.
pub fn grlex_desc(a: &[u32], b: &[u32]) -> Ordering {
    monomial_degree(b).cmp(&monomial_degree(a)).then_with(|| b.cmp(a))
}

/// All monomials of total degree `k` in `nvars` variables, in descending
/// lexicographic order (`t₁^k` first).
pub fn monomials_of_degree(nvars: usize, k: usize) -> Vec<Monomial> {
    fn rec(nvars: usize, k: usize, prefix: &mut Monomial, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == nvars {
            prefix.push(k as u32);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=k).rev() {
            prefix.push(e as u32);
            rec(nvars, k - e, prefix, out);
            prefix.pop();
        }
    }
    if nvars == 0 {
        return if k == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(nvars, k, &mut Vec::with_capacity(nvars), &mut out);
    out
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn monomial(nvars: usize, exponents: Monomial, c: BigInt) -> Self {
        assert_eq!(exponents.len(), nvars, "exponent vector length");
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exponents, c);
        }
        p
    }

    /// The variable `t_{i+1}`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, BigInt::one())
    }

    /// The linear form `⟨w, t⟩ = Σ wᵢ tᵢ`.
    pub fn linear_form(w: &[BigInt]) -> Self {
        let n = w.len();
        let mut p = Self::zero(n);
        for (i, c) in w.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; n];
                e[i] = 1;
                p.terms.insert(e, c.clone());
            }
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &[u32]) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    /// Degree if every term has the same total degree; `None` for zero or
    /// inhomogeneous polynomials.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|m| monomial_degree(m));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| monomial_degree(m)).max()
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        Poly::from_terms(self.nvars, self.terms.iter().map(|(m, x)| (m.clone(), x * c)))
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(self.nvars), |acc, _| &acc * self)
    }

    /// Substitutes `tᵢ ↦ images[i]`; the result lives in the images' ring.
    pub fn substitute(&self, images: &[Poly], target_nvars: usize) -> Poly {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let mut out = Poly::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target_nvars, c.clone());
            for (img, &e) in images.iter().zip(m) {
                if e > 0 {
                    term = &term * &img.pow(e);
                }
            }
            out = &out + &term;
        }
        out
    }

    /// Terms sorted largest-first in graded-lex order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex_desc(a.0, b.0));
        v
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("t{}", i + 1)
                    } else {
                        format!("t{}^{}", i + 1, e)
                    }
                })
                .collect();
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), -c)))
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                *acc.entry(m).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Poly {
            nvars: self.nvars,
            terms: acc,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(i: usize) -> Poly {
        Poly::var(2, i)
    }

    #[test]
    fn display_uses_grlex() {
        let p = &(&t(1) * &t(1)) + &(&t(0) * &t(1)).scale(&BigInt::from(-3));
        let p = &p + &(&t(0) * &t(0)).scale(&BigInt::from(2));
        assert_eq!(p.to_string(), "2*t1^2 - 3*t1*t2 + t2^2");
        assert_eq!(Poly::zero(1).to_string(), "0");
        assert_eq!(Poly::linear_form(&[BigInt::from(3)]).to_string(), "3*t1");
        assert_eq!((-&Poly::one(1)).to_string(), "-1");
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = &t(0) - &t(0);
        assert!(p.is_zero());
        assert_eq!(p.homogeneous_degree(), None);
        assert!(p.is_homogeneous());
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_of_degree(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomials_of_degree(3, 1).len(), 3);
        assert_eq!(monomials_of_degree(0, 0), vec![Vec::<u32>::new()]);
        assert!(monomials_of_degree(0, 2).is_empty());
        assert_eq!(monomials_of_degree(1, 4), vec![vec![4]]);
    }

    #[test]
    fn substitution() {
        // t1 ↦ 2 t1 in 3 t1^2
        let p = Poly::monomial(1, vec![2], BigInt::from(3));
        let img = Poly::linear_form(&[BigInt::from(2)]);
        let q = p.substitute(&[img], 1);
        assert_eq!(q, Poly::monomial(1, vec![2], BigInt::from(12)));
    }

    #[test]
    fn homogeneity() {
        let p = &t(0) + &(&t(0) * &t(1));
        assert!(!p.is_homogeneous());
        assert_eq!(p.total_degree(), Some(2));
    }
}
