//! Index words, shuffles, Lyndon factorization and generator symbols.
//!
//! A [`Word`] is packed into a `u64`: the top nibble holds the length and the
//! letters follow as nibbles from bit 56 downward. Integer order on the packed
//! value is therefore degree-lexicographic order on words.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Longest representable word.
pub const MAX_RANK: usize = 15;
/// Largest supported ambient dimension (one nibble per letter).
pub const MAX_DIM: usize = 16;

const LEN_SHIFT: u32 = 60;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(u64);

impl Word {
    pub const EMPTY: Word = Word(0);

    #[inline]
    pub fn len(self) -> usize {
        (self.0 >> LEN_SHIFT) as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn raw(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn letter(self, i: usize) -> u8 {
        debug_assert!(i < self.len());
        ((self.0 >> (56 - 4 * i as u32)) & 0xF) as u8
    }

    pub fn first(self) -> u8 {
        self.letter(0)
    }

    pub fn last(self) -> u8 {
        self.letter(self.len() - 1)
    }

    /// Builds a word from letters. Panics if too long or a letter exceeds a nibble.
    pub fn from_letters(letters: &[u8]) -> Word {
        assert!(letters.len() <= MAX_RANK, "word longer than {MAX_RANK}");
        let mut w = (letters.len() as u64) << LEN_SHIFT;
        for (i, &l) in letters.iter().enumerate() {
            assert!((l as usize) < MAX_DIM, "letter {l} out of range");
            w |= (l as u64) << (56 - 4 * i as u32);
        }
        Word(w)
    }

    /// Checked construction against an ambient dimension.
    pub fn try_new(letters: &[u8], dim: usize) -> Result<Word, Error> {
        if letters.is_empty() || letters.len() > MAX_RANK {
            return Err(Error::RankOutOfRange(letters.len()));
        }
        if let Some(&l) = letters.iter().find(|&&l| l as usize >= dim) {
            return Err(Error::LetterOutOfRange { letter: l as usize, dim });
        }
        Ok(Word::from_letters(letters))
    }

    pub fn single(l: u8) -> Word {
        Word::from_letters(&[l])
    }

    pub fn letters(self) -> impl DoubleEndedIterator<Item = u8> + ExactSizeIterator {
        (0..self.len()).map(move |i| self.letter(i))
    }

    pub fn to_vec(self) -> Vec<u8> {
        self.letters().collect()
    }

    #[inline]
    fn payload(self) -> u64 {
        self.0 & ((1u64 << LEN_SHIFT) - 1)
    }

    /// Concatenation `self · other`.
    #[inline]
    pub fn concat(self, other: Word) -> Word {
        let (a, b) = (self.len(), other.len());
        debug_assert!(a + b <= MAX_RANK);
        Word((((a + b) as u64) << LEN_SHIFT) | self.payload() | (other.payload() >> (4 * a as u32)))
    }

    pub fn push(self, l: u8) -> Word {
        self.concat(Word::single(l))
    }

    /// Letters `[start, end)`.
    #[inline]
    pub fn slice(self, start: usize, end: usize) -> Word {
        debug_assert!(start <= end && end <= self.len());
        let n = end - start;
        if n == 0 {
            return Word::EMPTY;
        }
        let p = (self.payload() << (4 * start as u32)) & ((1u64 << LEN_SHIFT) - 1);
        let mask = if n == MAX_RANK { (1u64 << LEN_SHIFT) - 1 } else { !((1u64 << (LEN_SHIFT - 4 * n as u32)) - 1) & ((1u64 << LEN_SHIFT) - 1) };
        Word(((n as u64) << LEN_SHIFT) | (p & mask))
    }

    pub fn prefix(self, n: usize) -> Word {
        self.slice(0, n)
    }

    pub fn suffix_from(self, start: usize) -> Word {
        self.slice(start, self.len())
    }

    pub fn reversed(self) -> Word {
        let v: Vec<u8> = self.letters().rev().collect();
        Word::from_letters(&v)
    }

    /// Cyclic rotation moving the first `k` letters to the end.
    pub fn rotate(self, k: usize) -> Word {
        let n = self.len();
        if n == 0 {
            return self;
        }
        let k = k % n;
        self.suffix_from(k).concat(self.prefix(k))
    }

    /// Letter multiplicities, indexed by letter.
    pub fn content(self) -> [u8; MAX_DIM] {
        let mut c = [0u8; MAX_DIM];
        for l in self.letters() {
            c[l as usize] += 1;
        }
        c
    }

    pub fn is_lyndon(self) -> bool {
        let n = self.len();
        n > 0 && (1..n).all(|k| self.rotate(k) > self)
    }

    /// Chen-Fox-Lyndon factorization into non-increasing Lyndon words (Duval).
    pub fn lyndon_factorization(self) -> Vec<Word> {
        let s = self.to_vec();
        let n = s.len();
        let mut out = Vec::new();
        let mut i = 0;
        while i < n {
            let (mut j, mut k) = (i + 1, i);
            while j < n && s[k] <= s[j] {
                k = if s[k] < s[j] { i } else { k + 1 };
                j += 1;
            }
            while i <= k {
                out.push(Word::from_letters(&s[i..i + j - k]));
                i += j - k;
            }
        }
        out
    }

    /// Digit-string form, e.g. `"0123"`.
    pub fn to_digits(self) -> String {
        self.letters().map(|l| char::from_digit(l as u32, 16).unwrap()).collect()
    }

    pub fn from_digits(s: &str) -> Result<Word, Error> {
        let letters: Option<Vec<u8>> = s.chars().map(|c| c.to_digit(16).map(|d| d as u8)).collect();
        match letters {
            Some(v) if !v.is_empty() && v.len() <= MAX_RANK => Ok(Word::from_letters(&v)),
            _ => Err(Error::Parse(format!("invalid word {s:?}"))),
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{}", self.to_digits())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_digits())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_digits())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Word::from_digits(&s).map_err(serde::de::Error::custom)
    }
}

/// All interleavings of `u` and `v`, with multiplicity.
pub fn shuffle(u: Word, v: Word) -> Vec<Word> {
    let mut out = Vec::with_capacity(binomial(u.len() + v.len(), u.len()) as usize);
    shuffle_each(u, v, |w| out.push(w));
    out
}

/// Calls `f` once per interleaving of `u` and `v`.
pub fn shuffle_each(u: Word, v: Word, mut f: impl FnMut(Word)) {
    fn rec(u: Word, v: Word, acc: Word, f: &mut impl FnMut(Word)) {
        if u.is_empty() {
            f(acc.concat(v));
            return;
        }
        if v.is_empty() {
            f(acc.concat(u));
            return;
        }
        rec(u.suffix_from(1), v, acc.push(u.first()), f);
        rec(u, v.suffix_from(1), acc.push(v.first()), f);
    }
    rec(u, v, Word::EMPTY, &mut f);
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

fn mobius(n: usize) -> i64 {
    let (mut n, mut m, mut p) = (n, 1i64, 2);
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            m = -m;
        }
        p += 1;
    }
    if n > 1 {
        m = -m;
    }
    m
}

/// Number of aperiodic necklaces: `(1/N) Σ_{d|N} μ(d) D^{N/d}`.
pub fn necklace_count(n: usize, dim: usize) -> u64 {
    assert!(n >= 1);
    let s: i128 = (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| mobius(d) as i128 * (dim as i128).pow((n / d) as u32))
        .sum();
    (s / n as i128) as u64
}

/// All words of length `n` over `dim` letters, increasing.
pub fn all_words(n: usize, dim: usize) -> Vec<Word> {
    let total = dim.pow(n as u32);
    (0..total)
        .map(|mut i| {
            let mut v = vec![0u8; n];
            for slot in v.iter_mut().rev() {
                *slot = (i % dim) as u8;
                i /= dim;
            }
            Word::from_letters(&v)
        })
        .collect()
}

/// All letter-multiplicity vectors of total `n` over `dim` letters, in
/// lexicographic order of their smallest word.
pub fn contents(n: usize, dim: usize) -> Vec<Vec<u8>> {
    fn rec(n: usize, i: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if i + 1 == cur.len() {
            cur[i] = n as u8;
            out.push(cur.clone());
            return;
        }
        for k in (0..=n).rev() {
            cur[i] = k as u8;
            rec(n - k, i + 1, cur, out);
        }
    }
    let mut out = Vec::new();
    rec(n, 0, &mut vec![0; dim], &mut out);
    out
}

/// All words with the given letter multiplicities, increasing.
pub fn multiset_permutations(content: &[u8]) -> Vec<Word> {
    fn rec(left: &mut [u8], remaining: usize, acc: Word, out: &mut Vec<Word>) {
        if remaining == 0 {
            out.push(acc);
            return;
        }
        for l in 0..left.len() {
            if left[l] > 0 {
                left[l] -= 1;
                rec(left, remaining - 1, acc.push(l as u8), out);
                left[l] += 1;
            }
        }
    }
    let mut left = content.to_vec();
    let n = content.iter().map(|&c| c as usize).sum();
    let mut out = Vec::new();
    rec(&mut left, n, Word::EMPTY, &mut out);
    out
}

/// A generator of U(ℭ): either a translation `e_μ` or a monodromy variable `R_w`.
///
/// Packed so that integer order is the PBW order: every `E` precedes every `R`,
/// and `R` symbols are ordered by rank, then lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen(u64);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    E(u8),
    R(Word),
}

impl Gen {
    pub fn e(mu: u8) -> Gen {
        Gen(mu as u64)
    }

    pub fn r(w: Word) -> Gen {
        debug_assert!(!w.is_empty());
        Gen(w.raw())
    }

    #[inline]
    pub fn kind(self) -> GenKind {
        if self.0 >> LEN_SHIFT == 0 {
            GenKind::E(self.0 as u8)
        } else {
            GenKind::R(Word(self.0))
        }
    }

    #[inline]
    pub fn is_e(self) -> bool {
        self.0 >> LEN_SHIFT == 0
    }

    pub fn word(self) -> Option<Word> {
        match self.kind() {
            GenKind::R(w) => Some(w),
            GenKind::E(_) => None,
        }
    }

    /// Tensor rank; `e` counts as rank 1.
    pub fn rank(self) -> usize {
        match self.kind() {
            GenKind::E(_) => 1,
            GenKind::R(w) => w.len(),
        }
    }

    /// Filtration grade: `rank − 1` for `R`, zero for `e`.
    pub fn grade(self) -> i32 {
        match self.kind() {
            GenKind::E(_) => 0,
            GenKind::R(w) => w.len() as i32 - 1,
        }
    }

    /// Contribution to the weight grading.
    pub fn weight(self) -> usize {
        self.rank()
    }

    /// Central generators: the momenta `P_μ = R_μ`.
    pub fn is_central(self) -> bool {
        !self.is_e() && Word(self.0).len() == 1
    }
}

impl fmt::Debug for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            GenKind::E(m) => write!(f, "e{m}"),
            GenKind::R(w) => write!(f, "R{}", w.to_digits()),
        }
    }
}

impl Serialize for Gen {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl std::str::FromStr for Gen {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(rest) = s.strip_prefix('e') {
            let m: u8 = rest.parse().map_err(|_| Error::Parse(format!("invalid generator {s:?}")))?;
            return Ok(Gen::e(m));
        }
        if let Some(rest) = s.strip_prefix('R') {
            return Ok(Gen::r(Word::from_digits(rest)?));
        }
        Err(Error::Parse(format!("invalid generator {s:?}")))
    }
}
