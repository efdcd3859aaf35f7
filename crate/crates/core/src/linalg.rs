//! Exact sparse linear algebra over ℚ.
//!
//! Elimination produces the reduced row echelon form, which is unique, so
//! kernel bases and solutions do not depend on row order or scheduling.

use std::collections::BTreeMap;
use std::hash::Hash;

use rustc_hash::FxHashMap;

use crate::rational::Rational;

pub type SparseVec = Vec<(u32, Rational)>;

/// Bijection between matrix coordinates and symbols.
#[derive(Clone, Debug)]
pub struct Dictionary<K> {
    keys: Vec<K>,
    index: FxHashMap<K, u32>,
}

impl<K: Clone + Eq + Hash> Default for Dictionary<K> {
    fn default() -> Self {
        Dictionary { keys: Vec::new(), index: FxHashMap::default() }
    }
}

impl<K: Clone + Eq + Hash> Dictionary<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_keys(keys: Vec<K>) -> Self {
        let index = keys.iter().enumerate().map(|(i, k)| (k.clone(), i as u32)).collect();
        Dictionary { keys, index }
    }

    /// Index of `k`, inserting it if absent.
    pub fn intern(&mut self, k: K) -> u32 {
        if let Some(&i) = self.index.get(&k) {
            return i;
        }
        let i = self.keys.len() as u32;
        self.keys.push(k.clone());
        self.index.insert(k, i);
        i
    }

    pub fn get(&self, k: &K) -> Option<u32> {
        self.index.get(k).copied()
    }

    pub fn key(&self, i: u32) -> &K {
        &self.keys[i as usize]
    }

    pub fn keys(&self) -> &[K] {
        &self.keys
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }
}

/// Row-sparse matrix with no stored zeros.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseMatrix {
    ncols: usize,
    rows: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn new(ncols: usize) -> SparseMatrix {
        SparseMatrix { ncols, rows: Vec::new() }
    }

    /// Builds from column vectors given as `(row, value)` lists.
    pub fn from_columns(nrows: usize, cols: &[SparseVec]) -> SparseMatrix {
        let mut rows: Vec<SparseVec> = vec![Vec::new(); nrows];
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col {
                if !x.is_zero() {
                    rows[*i as usize].push((j as u32, x.clone()));
                }
            }
        }
        SparseMatrix { ncols: cols.len(), rows: rows.into_iter().filter(|r| !r.is_empty()).collect() }
    }

    /// Appends a row; entries may come in any order and repeat.
    pub fn push_row(&mut self, entries: impl IntoIterator<Item = (u32, Rational)>) {
        let mut m: BTreeMap<u32, Rational> = BTreeMap::new();
        for (j, x) in entries {
            assert!((j as usize) < self.ncols, "column {j} out of range");
            *m.entry(j).or_default() += x;
        }
        let row: SparseVec = m.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        if !row.is_empty() {
            self.rows.push(row);
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// `M · v` for a sparse vector `v`.
    pub fn apply(&self, v: &SparseVec) -> Vec<Rational> {
        let dense: FxHashMap<u32, &Rational> = v.iter().map(|(j, x)| (*j, x)).collect();
        self.rows
            .iter()
            .map(|row| {
                let mut s = Rational::ZERO;
                for (j, x) in row {
                    if let Some(y) = dense.get(j) {
                        s.add_mul(x, y);
                    }
                }
                s
            })
            .collect()
    }

    pub fn rref(&self) -> Rref {
        let mut e = Echelon::new(self.ncols);
        for r in &self.rows {
            e.insert(r);
        }
        e.into_rref()
    }

    /// Reduced row echelon form inserting rows in reverse order.
    pub fn rref_reversed(&self) -> Rref {
        let mut e = Echelon::new(self.ncols);
        for r in self.rows.iter().rev() {
            e.insert(r);
        }
        e.into_rref()
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Kernel basis: one vector per free column, with coefficient 1 there.
    pub fn nullspace(&self) -> Vec<SparseVec> {
        self.rref().nullspace()
    }
}

/// Incremental row echelonization with a dense scratch row.
pub struct Echelon {
    ncols: usize,
    pivot_row: Vec<Option<u32>>,
    rows: Vec<SparseVec>,
    scratch: Vec<Rational>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Echelon {
        Echelon { ncols, pivot_row: vec![None; ncols], rows: Vec::new(), scratch: vec![Rational::ZERO; ncols] }
    }

    /// Reduces `row` against the current pivots, returning the remainder
    /// (zero at every pivot column).
    pub fn reduce(&mut self, row: &SparseVec) -> SparseVec {
        let Some(start) = row.iter().map(|e| e.0).min() else {
            return Vec::new();
        };
        let mut hi = 0;
        for (j, x) in row {
            self.scratch[*j as usize] += x;
            hi = hi.max(*j as usize);
        }
        let mut out = Vec::new();
        let mut j = start as usize;
        while j <= hi {
            if !self.scratch[j].is_zero() {
                let c = std::mem::take(&mut self.scratch[j]);
                if let Some(p) = self.pivot_row[j] {
                    for (k, y) in &self.rows[p as usize][1..] {
                        self.scratch[*k as usize].add_mul(y, &-&c);
                        hi = hi.max(*k as usize);
                    }
                } else {
                    out.push((j as u32, c));
                }
            }
            j += 1;
        }
        out
    }

    /// Inserts a row; returns its pivot column if it was independent.
    pub fn insert(&mut self, row: &SparseVec) -> Option<u32> {
        let mut r = self.reduce(row);
        if r.is_empty() {
            return None;
        }
        let inv = r[0].1.recip();
        for (_, x) in r.iter_mut() {
            *x *= &inv;
        }
        let p = r[0].0;
        self.pivot_row[p as usize] = Some(self.rows.len() as u32);
        self.rows.push(r);
        Some(p)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn into_rref(self) -> Rref {
        let mut pivots: Vec<(u32, SparseVec)> = self.rows.into_iter().map(|r| (r[0].0, r)).collect();
        pivots.sort_unstable_by_key(|p| p.0);
        // Back-substitute from the last pivot upward.
        let mut done: FxHashMap<u32, usize> = FxHashMap::default();
        for i in (0..pivots.len()).rev() {
            let row = std::mem::take(&mut pivots[i].1);
            let needs = row[1..].iter().any(|(j, _)| done.contains_key(j));
            let row = if needs {
                let mut acc: BTreeMap<u32, Rational> = row.into_iter().collect();
                let cols: Vec<u32> = acc.keys().copied().filter(|j| done.contains_key(j)).collect();
                for j in cols {
                    let c = acc.remove(&j).unwrap();
                    for (k, y) in &pivots[done[&j]].1[1..] {
                        acc.entry(*k).or_default().add_mul(y, &-&c);
                    }
                }
                acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
            } else {
                row
            };
            pivots[i].1 = row;
            done.insert(pivots[i].0, i);
        }
        Rref { ncols: self.ncols, rows: pivots.into_iter().map(|p| p.1).collect() }
    }
}

/// Reduced row echelon form; rows sorted by pivot column, pivots equal to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Rref {
    ncols: usize,
    rows: Vec<SparseVec>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<u32> {
        self.rows.iter().map(|r| r[0].0).collect()
    }

    pub fn free_columns(&self) -> Vec<u32> {
        let piv: rustc_hash::FxHashSet<u32> = self.pivots().into_iter().collect();
        (0..self.ncols as u32).filter(|j| !piv.contains(j)).collect()
    }

    /// `v_f = e_f − Σ_p R[p, f] e_p` for every free column `f`, in column order.
    pub fn nullspace(&self) -> Vec<SparseVec> {
        let mut by_free: FxHashMap<u32, SparseVec> = FxHashMap::default();
        for row in &self.rows {
            let p = row[0].0;
            for (f, x) in &row[1..] {
                by_free.entry(*f).or_default().push((p, -x));
            }
        }
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = by_free.remove(&f).unwrap_or_default();
                v.push((f, Rational::ONE));
                v.sort_unstable_by_key(|e| e.0);
                v
            })
            .collect()
    }
}

/// Solves `A x = b` for `A` given by columns. Free variables are set to zero.
pub fn solve(nrows: usize, cols: &[SparseVec], b: &SparseVec) -> Option<Vec<Rational>> {
    let n = cols.len();
    let mut all = cols.to_vec();
    all.push(b.clone());
    let rref = SparseMatrix::from_columns(nrows, &all).rref();
    let mut x = vec![Rational::ZERO; n];
    for row in rref.rows() {
        let p = row[0].0 as usize;
        if p == n {
            return None;
        }
        if let Some((_, v)) = row.iter().find(|e| e.0 as usize == n) {
            x[p] = v.clone();
        }
    }
    Some(x)
}

/// Kernel of the linear map sending basis vector `j < n` to `image(j)`.
///
/// Images are computed in parallel; row symbols are interned in column order,
/// so the matrix (and hence the kernel basis) is schedule independent.
pub fn kernel_of_map<K, F>(n: usize, image: F) -> Vec<SparseVec>
where
    K: Clone + Eq + Hash + Send,
    F: Fn(usize) -> Vec<(K, Rational)> + Sync,
{
    use rayon::prelude::*;
    let images: Vec<Vec<(K, Rational)>> = (0..n).into_par_iter().map(&image).collect();
    let mut dict: Dictionary<K> = Dictionary::new();
    let cols: Vec<SparseVec> =
        images.into_iter().map(|img| img.into_iter().map(|(k, x)| (dict.intern(k), x)).collect()).collect();
    SparseMatrix::from_columns(dict.len(), &cols).nullspace()
}

/// Span of vectors over ordered keys, kept in echelon form.
#[derive(Clone, Debug)]
pub struct EchelonSpan<K: Ord + Clone> {
    pivots: BTreeMap<K, Vec<(K, Rational)>>,
}

impl<K: Ord + Clone> Default for EchelonSpan<K> {
    fn default() -> Self {
        EchelonSpan { pivots: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> EchelonSpan<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// Remainder of `v` after reduction by the stored pivots.
    pub fn reduce(&self, v: impl IntoIterator<Item = (K, Rational)>) -> Vec<(K, Rational)> {
        let mut acc: BTreeMap<K, Rational> = BTreeMap::new();
        for (k, x) in v {
            *acc.entry(k).or_default() += x;
        }
        let mut out = Vec::new();
        while let Some((k, c)) = acc.pop_first() {
            if c.is_zero() {
                continue;
            }
            match self.pivots.get(&k) {
                Some(row) => {
                    for (j, y) in &row[1..] {
                        acc.entry(j.clone()).or_default().add_mul(y, &-&c);
                    }
                }
                None => out.push((k, c)),
            }
        }
        out
    }

    pub fn contains(&self, v: impl IntoIterator<Item = (K, Rational)>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: impl IntoIterator<Item = (K, Rational)>) -> bool {
        let mut r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let inv = r[0].1.recip();
        for (_, x) in r.iter_mut() {
            *x *= &inv;
        }
        self.pivots.insert(r[0].0.clone(), r);
        true
    }

    /// Stored echelon vectors, ordered by leading key.
    pub fn vectors(&self) -> impl Iterator<Item = &[(K, Rational)]> {
        self.pivots.values().map(|v| v.as_slice())
    }
}
