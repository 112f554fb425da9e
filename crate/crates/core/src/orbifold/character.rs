use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::exact::format_rational;

/// A formal combination `Σ m_w χ_w` of torus characters `w ∈ ℤ^d`.
///
/// Nontrivial characters carry rational multiplicities (logarithmic traces
/// produce fractions); the trivial character carries an integer.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CharacterClass {
    d: usize,
    terms: BTreeMap<Vec<BigInt>, BigRational>,
    trivial: BigInt,
}

impl CharacterClass {
    pub fn zero(d: usize) -> Self {
        Self {
            d,
            terms: BTreeMap::new(),
            trivial: BigInt::zero(),
        }
    }

    pub fn from_characters<'a>(d: usize, chars: impl IntoIterator<Item = &'a [BigInt]>) -> Self {
        let mut c = Self::zero(d);
        let one = BigRational::from_integer(1.into());
        for w in chars {
            c.add_character(w, &one);
        }
        c
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Adds `m · χ_w`. A zero `w` goes to the trivial slot and needs an
    /// integral `m`.
    pub fn add_character(&mut self, w: &[BigInt], m: &BigRational) {
        assert_eq!(w.len(), self.d, "character length");
        if m.is_zero() {
            return;
        }
        if w.iter().all(Zero::is_zero) {
            assert!(m.is_integer(), "trivial multiplicity must be integral");
            self.trivial += m.to_integer();
            return;
        }
        let e = self.terms.entry(w.to_vec()).or_insert_with(BigRational::zero);
        *e += m;
        if e.is_zero() {
            self.terms.remove(w);
        }
    }

    pub fn add_trivial(&mut self, k: &BigInt) {
        self.trivial += k;
    }

    pub fn multiplicity(&self, w: &[BigInt]) -> BigRational {
        if w.iter().all(Zero::is_zero) {
            return BigRational::from_integer(self.trivial.clone());
        }
        self.terms.get(w).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn trivial_multiplicity(&self) -> &BigInt {
        &self.trivial
    }

    /// Nontrivial characters with their multiplicities, in sorted order.
    pub fn nontrivial(&self) -> impl Iterator<Item = (&Vec<BigInt>, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.trivial.is_zero()
    }

    /// Every multiplicity a nonnegative integer.
    pub fn is_bundle(&self) -> bool {
        !self.trivial.is_negative() && self.terms.values().all(|m| m.is_integer() && !m.is_negative())
    }

    pub fn rank(&self) -> BigRational {
        self.terms
            .values()
            .fold(BigRational::from_integer(self.trivial.clone()), |acc, m| acc + m)
    }

    pub fn plus(&self, other: &CharacterClass) -> CharacterClass {
        let mut out = self.clone();
        for (w, m) in &other.terms {
            out.add_character(w, m);
        }
        out.trivial += &other.trivial;
        out
    }

    pub fn minus(&self, other: &CharacterClass) -> CharacterClass {
        let mut out = self.clone();
        for (w, m) in &other.terms {
            out.add_character(w, &-m);
        }
        out.trivial -= &other.trivial;
        out
    }

    /// Keeps only the terms whose character satisfies `keep` (the trivial
    /// character is always kept).
    pub fn filter(&self, mut keep: impl FnMut(&[BigInt]) -> bool) -> CharacterClass {
        CharacterClass {
            d: self.d,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, m)| (w.clone(), m.clone()))
                .collect(),
            trivial: self.trivial.clone(),
        }
    }
}

impl fmt::Display for CharacterClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.trivial.is_zero() {
            parts.push(format!("{}", self.trivial));
        }
        for (w, m) in &self.terms {
            let w: Vec<String> = w.iter().map(ToString::to_string).collect();
            let chi = format!("chi({})", w.join(","));
            if m == &BigRational::from_integer(1.into()) {
                parts.push(chi);
            } else {
                parts.push(format!("{}*{chi}", format_rational(m)));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for CharacterClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CharacterClass({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn w(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn arithmetic_and_bundle_check() {
        let mut a = CharacterClass::zero(1);
        a.add_character(&w(&[2]), &rat(1, 1));
        a.add_character(&w(&[0]), &rat(1, 1));
        assert!(a.is_bundle());
        assert_eq!(a.rank(), rat(2, 1));
        let b = a.minus(&a);
        assert!(b.is_zero());
        let mut c = CharacterClass::zero(1);
        c.add_character(&w(&[1]), &rat(1, 3));
        assert!(!c.is_bundle());
        assert_eq!(c.to_string(), "1/3*chi(1)");
        assert_eq!(a.to_string(), "1 + chi(2)");
    }
}
