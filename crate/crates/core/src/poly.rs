//! Monomials in generator symbols and sparse polynomials over them.
//!
//! Commutative monomials and PBW-ordered noncommutative monomials share one
//! representation: a non-decreasing sequence of [`Gen`]. The marker type
//! parameter of [`Poly`] keeps the two algebras apart.

use std::cmp::Ordering;
use std::fmt;
use std::marker::PhantomData;

use rustc_hash::FxHashMap;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use smallvec::SmallVec;

use crate::hpoly::HPoly;
use crate::rational::Rational;
use crate::word::{Gen, Word};

/// Sorted multiset of generators; the empty monomial is `1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub(crate) SmallVec<[Gen; 4]>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(SmallVec::new())
    }

    pub fn single(g: Gen) -> Monomial {
        Monomial(smallvec::smallvec![g])
    }

    /// Sorts the input.
    pub fn from_gens(gens: impl IntoIterator<Item = Gen>) -> Monomial {
        let mut v: SmallVec<[Gen; 4]> = gens.into_iter().collect();
        v.sort_unstable();
        Monomial(v)
    }

    pub fn gens(&self) -> &[Gen] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of R symbols (the polynomial order K).
    pub fn order(&self) -> usize {
        self.0.iter().filter(|g| !g.is_e()).count()
    }

    pub fn e_count(&self) -> usize {
        self.0.iter().filter(|g| g.is_e()).count()
    }

    pub fn has_e(&self) -> bool {
        self.0.iter().any(|g| g.is_e())
    }

    /// `Σ grade − 1`; the empty monomial has degree −1.
    pub fn degree(&self) -> i32 {
        self.0.iter().map(|g| g.grade()).sum::<i32>() - 1
    }

    /// `Σ rank` with `e` counted as 1 (excluding powers of `h`).
    pub fn weight(&self) -> usize {
        self.0.iter().map(|g| g.weight()).sum()
    }

    /// Commutative product (sorted merge).
    pub fn mul_comm(&self, other: &Monomial) -> Monomial {
        let mut v: SmallVec<[Gen; 4]> = SmallVec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            if self.0[i] <= other.0[j] {
                v.push(self.0[i]);
                i += 1;
            } else {
                v.push(other.0[j]);
                j += 1;
            }
        }
        v.extend_from_slice(&self.0[i..]);
        v.extend_from_slice(&other.0[j..]);
        Monomial(v)
    }

    /// Removes the generator at position `i`.
    pub fn without(&self, i: usize) -> Monomial {
        let mut v = self.0.clone();
        v.remove(i);
        Monomial(v)
    }

    pub fn words(&self) -> impl Iterator<Item = Word> + '_ {
        self.0.iter().filter_map(|g| g.word())
    }
}

impl Ord for Monomial {
    /// Graded order: length first, then lexicographic on generators.
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        f.write_str(&parts.join("*"))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for g in &self.0 {
            seq.serialize_element(g)?;
        }
        seq.end()
    }
}

/// Marker for the symmetric algebras S(ℜ) and S(ℝ^D ⊕ ℜ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Commutative;

/// Marker for PBW-normal elements of U(ℜ̂) and U(ℭ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Pbw;

/// Sparse map from monomial to `h`-polynomial coefficient.
pub struct Poly<K> {
    pub(crate) terms: FxHashMap<Monomial, HPoly>,
    _kind: PhantomData<K>,
}

pub type CommPoly = Poly<Commutative>;
pub type NcPoly = Poly<Pbw>;

impl<K> Clone for Poly<K> {
    fn clone(&self) -> Self {
        Poly { terms: self.terms.clone(), _kind: PhantomData }
    }
}

impl<K> Default for Poly<K> {
    fn default() -> Self {
        Poly { terms: FxHashMap::default(), _kind: PhantomData }
    }
}

impl<K> PartialEq for Poly<K> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<K> Eq for Poly<K> {}

impl<K> Poly<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: HPoly) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(), &c);
        p
    }

    pub fn gen(g: Gen) -> Self {
        Self::monomial(Monomial::single(g), HPoly::one())
    }

    pub fn monomial(m: Monomial, c: HPoly) -> Self {
        let mut p = Self::zero();
        p.add_term(m, &c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> HPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: &HPoly) {
        self.add_term_scaled(m, c, 0, &Rational::ONE);
    }

    /// `self += r · h^k · c · m`.
    pub fn add_term_scaled(&mut self, m: Monomial, c: &HPoly, k: usize, r: &Rational) {
        if c.is_zero() || r.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                e.get_mut().add_scaled(c, k, r);
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                let mut p = HPoly::zero();
                p.add_scaled(c, k, r);
                e.insert(p);
            }
        }
    }

    /// `self += r · h^k · other`.
    pub fn add_scaled(&mut self, other: &Self, k: usize, r: &Rational) {
        for (m, c) in &other.terms {
            self.add_term_scaled(m.clone(), c, k, r);
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut p = Self::zero();
        p.add_scaled(self, 0, r);
        p
    }

    pub fn shift_h(&self, k: usize) -> Self {
        let mut p = Self::zero();
        p.add_scaled(self, k, &Rational::ONE);
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut p = self.clone();
        p.add_scaled(other, 0, &-Rational::ONE);
        p
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        p.add_scaled(other, 0, &Rational::ONE);
        p
    }

    /// Terms sorted by monomial.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &HPoly)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_unstable_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &HPoly)> {
        self.terms.iter()
    }

    /// Largest monomial degree present.
    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn has_e(&self) -> bool {
        self.terms.keys().any(|m| m.has_e())
    }

    /// Distinct total weights `weight(m) + 2k` over all `h^k · m` terms.
    pub fn weights(&self) -> Vec<usize> {
        let mut v: Vec<usize> =
            self.terms.iter().flat_map(|(m, c)| c.terms().map(move |(k, _)| m.weight() + 2 * k)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Keeps the terms whose monomial satisfies `f`.
    pub fn filter(&self, f: impl Fn(&Monomial) -> bool) -> Self {
        let mut p = Self::zero();
        for (m, c) in &self.terms {
            if f(m) {
                p.terms.insert(m.clone(), c.clone());
            }
        }
        p
    }

    /// Reinterprets the same symbol data in another algebra.
    pub fn cast<L>(&self) -> Poly<L> {
        Poly { terms: self.terms.clone(), _kind: PhantomData }
    }

    /// Iterates the flattened `(h^k · m, c)` coordinates.
    pub fn coordinates(&self) -> impl Iterator<Item = ((Monomial, usize), Rational)> + '_ {
        self.terms.iter().flat_map(|(m, c)| c.terms().map(move |(k, x)| ((m.clone(), k), x.clone())))
    }

    pub fn from_coordinates(coords: impl IntoIterator<Item = ((Monomial, usize), Rational)>) -> Self {
        let mut p = Self::zero();
        for ((m, k), x) in coords {
            p.add_term_scaled(m, &HPoly::one(), k, &x);
        }
        p
    }
}

impl<K> fmt::Display for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.sorted_terms().into_iter().map(|(m, c)| format!("({c}){m}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<K> fmt::Debug for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<K> Serialize for Poly<K> {
    /// A sorted list of `[monomial, h-coefficients]` pairs.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self.sorted_terms();
        let mut seq = s.serialize_seq(Some(terms.len()))?;
        for t in terms {
            seq.serialize_element(&t)?;
        }
        seq.end()
    }
}

impl CommPoly {
    pub fn mul(&self, other: &CommPoly) -> CommPoly {
        let mut p = CommPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                p.add_term(a.mul_comm(b), &(x * y));
            }
        }
        p
    }
}
