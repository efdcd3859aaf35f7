//! Canonical basis of the rank-N quotient `⊗^N ℝ^D / V_N`, where `V_N` is
//! spanned by the proper shuffle sums `u ⧢ v`.
//!
//! Shuffle sums never mix letter multiplicities, so the relation space splits
//! into independent content blocks. Within a block the words are processed in
//! increasing order; the pivot of every relation is its largest word. For a
//! non-Lyndon word `w = l₁ l₂ … l_k` (Chen-Fox-Lyndon factorization) the
//! relation `l₁ ⧢ (l₂ … l_k)` has largest word `w`, so the surviving
//! non-pivot words are exactly the Lyndon words. Afterwards every shuffle sum of
//! the block is reduced; a nonzero residue would become a new pivot, so the
//! result is the echelon form of the full relation span either way.

use std::collections::BTreeMap;

use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::hpoly::HPoly;
use crate::rational::Rational;
use crate::word::{contents, multiset_permutations, necklace_count, shuffle_each, Word, MAX_DIM, MAX_RANK};

/// Reduction of a non-basis word: `w ≡ Σ c_b · b` over basis words `b`.
pub type Row = Box<[(Word, Rational)]>;

/// Echelon data of one content block.
#[derive(Clone, Debug)]
pub struct BlockBasis {
    pub content: Vec<u8>,
    pub basis: Vec<Word>,
    pub rows: Vec<(Word, Row)>,
    /// Shuffle sums reduced during verification.
    pub relations_checked: usize,
    /// Pivots found only during verification (zero when the Lyndon
    /// triangularity holds, which it always should).
    pub late_pivots: usize,
}

struct Builder {
    words: Vec<Word>,
    index: FxHashMap<Word, u32>,
    is_basis: Vec<bool>,
    rows: Vec<Vec<(u32, Rational)>>,
    acc: Vec<Rational>,
    touched: Vec<u32>,
    counts: Vec<i64>,
    count_touched: Vec<u32>,
}

impl Builder {
    fn new(words: Vec<Word>) -> Builder {
        let n = words.len();
        let index = words.iter().enumerate().map(|(i, &w)| (w, i as u32)).collect();
        Builder {
            words,
            index,
            is_basis: vec![false; n],
            rows: vec![Vec::new(); n],
            acc: vec![Rational::ZERO; n],
            touched: Vec::new(),
            counts: vec![0; n],
            count_touched: Vec::new(),
        }
    }

    fn add_count(&mut self, w: Word) {
        let i = self.index[&w] as usize;
        if self.counts[i] == 0 {
            self.count_touched.push(i as u32);
        }
        self.counts[i] += 1;
    }

    fn acc_add(&mut self, i: u32, c: &Rational) {
        let slot = &mut self.acc[i as usize];
        if slot.is_zero() {
            self.touched.push(i);
        }
        *slot += c;
    }

    /// Adds `c · reduce(word i)` to the accumulator.
    fn acc_reduced(&mut self, i: u32, c: &Rational) {
        if self.is_basis[i as usize] {
            self.acc_add(i, c);
        } else {
            let row = std::mem::take(&mut self.rows[i as usize]);
            for (j, x) in &row {
                let slot = &mut self.acc[*j as usize];
                if slot.is_zero() {
                    self.touched.push(*j);
                }
                slot.add_mul(x, c);
            }
            self.rows[i as usize] = row;
        }
    }

    /// Drains the accumulator into a sorted sparse vector.
    fn drain_acc(&mut self) -> Vec<(u32, Rational)> {
        self.touched.sort_unstable();
        self.touched.dedup();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            let c = std::mem::take(&mut self.acc[i as usize]);
            if !c.is_zero() {
                out.push((i, c));
            }
        }
        self.touched.clear();
        out
    }

    /// Counts the words of `u ⧢ v` into `counts`, returning touched indices.
    fn shuffle_counts(&mut self, u: Word, v: Word) -> Vec<(u32, i64)> {
        let mut buf = Vec::new();
        shuffle_each(u, v, |w| buf.push(w));
        for w in buf {
            self.add_count(w);
        }
        let mut out: Vec<(u32, i64)> = self
            .count_touched
            .drain(..)
            .map(|i| (i, std::mem::take(&mut self.counts[i as usize])))
            .collect();
        out.sort_unstable_by_key(|p| p.0);
        out
    }

    /// Installs `relation` (a vector in basis coordinates) as a new pivot row.
    fn add_pivot(&mut self, relation: Vec<(u32, Rational)>) {
        let (p, cp) = relation.last().cloned().expect("nonzero relation");
        let inv = -cp.recip();
        let row: Vec<(u32, Rational)> = relation[..relation.len() - 1].iter().map(|(j, x)| (*j, x * &inv)).collect();
        self.is_basis[p as usize] = false;
        for k in 0..self.rows.len() {
            if self.is_basis[k] {
                continue;
            }
            if let Ok(pos) = self.rows[k].binary_search_by_key(&p, |e| e.0) {
                let c = self.rows[k][pos].1.clone();
                let old = std::mem::take(&mut self.rows[k]);
                for (j, x) in old {
                    if j != p {
                        self.acc_add(j, &x);
                    }
                }
                for (j, x) in &row {
                    let slot = &mut self.acc[*j as usize];
                    if slot.is_zero() {
                        self.touched.push(*j);
                    }
                    slot.add_mul(x, &c);
                }
                self.rows[k] = self.drain_acc();
            }
        }
        self.rows[p as usize] = row;
    }
}

impl BlockBasis {
    /// Echelonizes all proper shuffle sums with the given letter multiplicities.
    pub fn build(content: &[u8]) -> BlockBasis {
        let words = multiset_permutations(content);
        let n = words.first().map_or(0, |w| w.len());
        let mut b = Builder::new(words);

        for i in 0..b.words.len() {
            let w = b.words[i];
            let factors = w.lyndon_factorization();
            if factors.len() == 1 {
                b.is_basis[i] = true;
                continue;
            }
            let rest = factors[1..].iter().fold(Word::EMPTY, |a, &f| a.concat(f));
            let counts = b.shuffle_counts(factors[0], rest);
            let &(top, ctop) = counts.last().unwrap();
            if top as usize != i {
                // Triangularity failed; leave w free and let verification pivot.
                b.is_basis[i] = true;
                continue;
            }
            for &(j, c) in &counts[..counts.len() - 1] {
                b.acc_reduced(j, &Rational::from(c));
            }
            let inv = -Rational::from(ctop).recip();
            let mut row = b.drain_acc();
            for (_, x) in row.iter_mut() {
                *x *= &inv;
            }
            b.rows[i] = row;
        }

        let mut checked = 0;
        let mut late = 0;
        for i in 0..b.words.len() {
            let w = b.words[i];
            for k in 1..n {
                let (u, v) = (w.prefix(k), w.suffix_from(k));
                if 2 * k > n || (2 * k == n && u > v) {
                    continue;
                }
                checked += 1;
                let counts = b.shuffle_counts(u, v);
                for (j, c) in counts {
                    b.acc_reduced(j, &Rational::from(c));
                }
                let residue = b.drain_acc();
                if !residue.is_empty() {
                    late += 1;
                    b.add_pivot(residue);
                }
            }
        }

        let basis: Vec<Word> = (0..b.words.len()).filter(|&i| b.is_basis[i]).map(|i| b.words[i]).collect();
        let rows = (0..b.words.len())
            .filter(|&i| !b.is_basis[i])
            .map(|i| {
                let row: Row = b.rows[i].iter().map(|(j, x)| (b.words[*j as usize], x.clone())).collect();
                (b.words[i], row)
            })
            .collect();
        BlockBasis { content: content.to_vec(), basis, rows, relations_checked: checked, late_pivots: late }
    }
}

/// Dimension of the rank-`n` quotient computed block by block without
/// retaining reduction tables.
pub fn quotient_dimension(n: usize, dim: usize) -> usize {
    contents(n, dim).par_iter().map(|c| BlockBasis::build(c).basis.len()).sum()
}

/// Canonical basis and reduction table for one `(D, N)`.
#[derive(Debug)]
pub struct ShuffleBasis {
    rank: usize,
    dim: usize,
    basis: Vec<Word>,
    basis_set: FxHashSet<Word>,
    rows: FxHashMap<Word, Row>,
}

impl ShuffleBasis {
    pub fn build(rank: usize, dim: usize) -> Result<ShuffleBasis> {
        check_args(rank, dim)?;
        let blocks: Vec<BlockBasis> = contents(rank, dim).par_iter().map(|c| BlockBasis::build(c)).collect();
        let mut basis = Vec::new();
        let mut rows = Vec::new();
        for b in blocks {
            basis.extend(b.basis);
            rows.extend(b.rows);
        }
        Ok(ShuffleBasis::from_parts(rank, dim, basis, rows))
    }

    pub(crate) fn from_parts(rank: usize, dim: usize, mut basis: Vec<Word>, rows: Vec<(Word, Row)>) -> ShuffleBasis {
        basis.sort_unstable();
        let basis_set = basis.iter().copied().collect();
        ShuffleBasis { rank, dim, basis, basis_set, rows: rows.into_iter().collect() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Basis words in increasing order.
    pub fn basis_words(&self) -> &[Word] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_basis(&self, w: Word) -> bool {
        self.basis_set.contains(&w)
    }

    /// Reduction row of a non-basis word.
    pub fn row(&self, w: Word) -> Option<&[(Word, Rational)]> {
        self.rows.get(&w).map(|r| &**r)
    }

    /// Non-basis words with their rows, in increasing word order.
    pub fn rows_sorted(&self) -> Vec<(Word, &[(Word, Rational)])> {
        let mut v: Vec<_> = self.rows.iter().map(|(w, r)| (*w, &**r)).collect();
        v.sort_unstable_by_key(|p| p.0);
        v
    }

    pub fn expected_len(&self) -> u64 {
        necklace_count(self.rank, self.dim)
    }

    /// Calls `f(b, c)` for every term of the reduction of `w`.
    #[inline]
    pub fn for_each_reduced(&self, w: Word, mut f: impl FnMut(Word, &Rational)) {
        debug_assert_eq!(w.len(), self.rank);
        if let Some(row) = self.rows.get(&w) {
            for (b, c) in row.iter() {
                f(*b, c);
            }
        } else {
            debug_assert!(self.basis_set.contains(&w), "word {w:?} outside the table");
            f(w, &Rational::ONE);
        }
    }

    /// Adds `c · reduce(w)` into a coefficient map.
    pub fn reduce_into(&self, w: Word, c: &Rational, acc: &mut FxHashMap<Word, Rational>) {
        self.for_each_reduced(w, |b, x| {
            let slot = acc.entry(b).or_default();
            slot.add_mul(x, c);
        });
    }

    /// Projects a raw combination of rank-N words onto the basis.
    pub fn canonicalize<'a>(&self, raw: impl IntoIterator<Item = (Word, &'a HPoly)>) -> Result<BTreeMap<Word, HPoly>> {
        let mut acc: BTreeMap<Word, HPoly> = BTreeMap::new();
        for (w, p) in raw {
            if w.len() != self.rank {
                return Err(Error::MixedRanks { expected: self.rank, found: w.len() });
            }
            if let Some(&l) = w.to_vec().iter().find(|&&l| l as usize >= self.dim) {
                return Err(Error::LetterOutOfRange { letter: l as usize, dim: self.dim });
            }
            self.for_each_reduced(w, |b, x| acc.entry(b).or_default().add_scaled(p, 0, x));
        }
        acc.retain(|_, p| !p.is_zero());
        Ok(acc)
    }

    /// Scalar-coefficient variant of [`canonicalize`](Self::canonicalize).
    pub fn canonicalize_scalar(&self, raw: impl IntoIterator<Item = (Word, Rational)>) -> Vec<(Word, Rational)> {
        let mut acc = FxHashMap::default();
        for (w, c) in raw {
            self.reduce_into(w, &c, &mut acc);
        }
        let mut v: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_unstable_by_key(|p| p.0);
        v
    }
}

pub(crate) fn check_args(rank: usize, dim: usize) -> Result<()> {
    if !(2..=MAX_DIM).contains(&dim) {
        return Err(Error::InvalidDimension(dim));
    }
    if rank == 0 || rank > MAX_RANK {
        return Err(Error::RankOutOfRange(rank));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{all_words, shuffle};

    fn w(s: &str) -> Word {
        Word::from_digits(s).unwrap()
    }

    #[test]
    fn small_dimensions() {
        for (n, d) in [(1, 4), (2, 4), (3, 4), (4, 3), (5, 2)] {
            let b = ShuffleBasis::build(n, d).unwrap();
            assert_eq!(b.len() as u64, necklace_count(n, d), "n={n} d={d}");
            assert!(b.basis_words().iter().all(|x| x.is_lyndon()));
        }
    }

    #[test]
    fn rank_two_antisymmetry() {
        let b = ShuffleBasis::build(2, 4).unwrap();
        assert_eq!(b.canonicalize_scalar([(w("10"), Rational::ONE)]), vec![(w("01"), -Rational::ONE)]);
        assert!(b.canonicalize_scalar([(w("11"), Rational::ONE)]).is_empty());
    }

    #[test]
    fn shuffle_sums_vanish_and_projection_is_idempotent() {
        let b = ShuffleBasis::build(4, 3).unwrap();
        for x in all_words(4, 3) {
            for k in 1..4 {
                let raw = shuffle(x.prefix(k), x.suffix_from(k)).into_iter().map(|y| (y, Rational::ONE));
                assert!(b.canonicalize_scalar(raw).is_empty());
            }
            let once = b.canonicalize_scalar([(x, Rational::ONE)]);
            assert_eq!(b.canonicalize_scalar(once.clone()), once);
        }
    }

    #[test]
    fn no_late_pivots() {
        for c in contents(6, 3) {
            assert_eq!(BlockBasis::build(&c).late_pivots, 0);
        }
    }

    #[test]
    fn rejects_mixed_ranks() {
        let b = ShuffleBasis::build(2, 4).unwrap();
        let one = HPoly::one();
        assert!(matches!(b.canonicalize([(w("012"), &one)]), Err(Error::MixedRanks { .. })));
    }
}
