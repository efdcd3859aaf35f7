//! Shared context: dimension, metric, lazily built bases and memoized
//! structure constants.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, OnceLock};

use parking_lot::RwLock;
use rustc_hash::FxHashMap;

use crate::basis::{check_args, ShuffleBasis};
use crate::cache;
use crate::error::{Error, Result};
use crate::metric::Metric;
use crate::rational::Rational;
use crate::word::{shuffle_each, Gen, GenKind, Word, MAX_RANK};

/// Sparse linear combination of generators, sorted by generator.
pub type GenCombo = Arc<[(Gen, Rational)]>;

pub struct Algebra {
    metric: Metric,
    cache_dir: Option<PathBuf>,
    bases: Vec<OnceLock<Arc<ShuffleBasis>>>,
    brackets: RwLock<FxHashMap<(Word, Word), GenCombo>>,
    cache_rebuilds: AtomicUsize,
    sector_budget: usize,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Algebra").field("metric", &self.metric).field("cache_dir", &self.cache_dir).finish()
    }
}

impl Algebra {
    pub fn new(metric: Metric) -> Algebra {
        Algebra {
            metric,
            cache_dir: None,
            bases: (0..=MAX_RANK).map(|_| OnceLock::new()).collect(),
            brackets: RwLock::new(FxHashMap::default()),
            cache_rebuilds: AtomicUsize::new(0),
            sector_budget: crate::sector::DEFAULT_BUDGET,
        }
    }

    /// Default Lorentzian signature `diag(+, −, …, −)`.
    pub fn minkowski(dim: usize) -> Result<Algebra> {
        Ok(Algebra::new(Metric::minkowski(dim)?))
    }

    pub fn with_cache_dir(mut self, dir: impl AsRef<Path>) -> Algebra {
        self.cache_dir = Some(dir.as_ref().to_path_buf());
        self
    }

    /// Cap on the number of monomials enumerated in one weight sector.
    pub fn with_sector_budget(mut self, budget: usize) -> Algebra {
        self.sector_budget = budget;
        self
    }

    pub fn sector_budget(&self) -> usize {
        self.sector_budget
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn cache_dir(&self) -> Option<&Path> {
        self.cache_dir.as_deref()
    }

    /// Number of cache files found corrupt and rebuilt.
    pub fn cache_rebuilds(&self) -> usize {
        self.cache_rebuilds.load(Ordering::Relaxed)
    }

    /// Canonical basis of rank `n`, built on first use.
    pub fn basis(&self, n: usize) -> Result<Arc<ShuffleBasis>> {
        check_args(n, self.dim())?;
        Ok(self.bases[n].get_or_init(|| Arc::new(self.load_or_build(n))).clone())
    }

    fn load_or_build(&self, n: usize) -> ShuffleBasis {
        let dim = self.dim();
        if let Some(dir) = &self.cache_dir {
            match cache::load(dir, dim, n) {
                Ok(Some(b)) => return b,
                Ok(None) => {}
                Err(_) => {
                    self.cache_rebuilds.fetch_add(1, Ordering::Relaxed);
                }
            }
        }
        let b = ShuffleBasis::build(n, dim).expect("arguments checked");
        if let Some(dir) = &self.cache_dir {
            // A read-only cache location only costs a rebuild next time.
            let _ = cache::store(dir, &b);
        }
        b
    }

    pub fn check_word(&self, w: Word) -> Result<()> {
        if w.is_empty() || w.len() > MAX_RANK {
            return Err(Error::RankOutOfRange(w.len()));
        }
        if let Some(l) = w.letters().find(|&l| l as usize >= self.dim()) {
            return Err(Error::LetterOutOfRange { letter: l as usize, dim: self.dim() });
        }
        Ok(())
    }

    /// `c · reduce(w)` accumulated into `acc`.
    pub fn reduce_into(&self, w: Word, c: &Rational, acc: &mut FxHashMap<Word, Rational>) {
        self.basis(w.len()).expect("valid word").reduce_into(w, c, acc);
    }

    /// Canonical form of a single raw word, sorted.
    pub fn reduce_word(&self, w: Word) -> Vec<(Word, Rational)> {
        self.basis(w.len()).expect("valid word").canonicalize_scalar([(w, Rational::ONE)])
    }

    /// Reduces a raw combination of words (any ranks) to sorted canonical form.
    pub fn reduce_raw(&self, raw: FxHashMap<Word, Rational>) -> Vec<(Word, Rational)> {
        let mut acc = FxHashMap::default();
        for (w, c) in raw {
            if !c.is_zero() {
                self.reduce_into(w, &c, &mut acc);
            }
        }
        sorted_nonzero(acc)
    }

    /// Raw (uncanonicalized) bracket of two words of ranks `N, M ≥ 2`,
    /// without the factor 2.
    pub fn bracket_raw(&self, mu: Word, nu: Word) -> FxHashMap<Word, Rational> {
        if mu.len() < 2 || nu.len() < 2 {
            return FxHashMap::default();
        }
        self.contraction_raw(mu, nu)
    }

    /// The double contraction sum of the bracket formula for arbitrary ranks:
    /// `Σ_{n,m} (−1)^{N−n+m} η_{μ_n ν_m} (μ₁…μ_{n−1} ⧢ μ_N…μ_{n+1})·(ν_{m−1}…ν₁ ⧢ ν_{m+1}…ν_M)`.
    /// Rank-zero output is dropped.
    pub(crate) fn contraction_raw(&self, mu: Word, nu: Word) -> FxHashMap<Word, Rational> {
        let (n, m) = (mu.len(), nu.len());
        let mut out: FxHashMap<Word, i64> = FxHashMap::default();
        if n + m <= 2 {
            return FxHashMap::default();
        }
        let mut rights = Vec::new();
        for i in 0..n {
            for j in 0..m {
                let eta = self.metric.eta(mu.letter(i), nu.letter(j));
                if eta == 0 {
                    continue;
                }
                // 1-based n = i+1, m = j+1
                let s = if (n - i - 1 + j + 1) % 2 == 0 { eta } else { -eta };
                rights.clear();
                shuffle_each(nu.prefix(j).reversed(), nu.suffix_from(j + 1), |w| rights.push(w));
                shuffle_each(mu.prefix(i), mu.suffix_from(i + 1).reversed(), |l| {
                    for &r in &rights {
                        *out.entry(l.concat(r)).or_default() += s;
                    }
                });
            }
        }
        out.into_iter().filter(|(_, c)| *c != 0).map(|(w, c)| (w, Rational::from(c))).collect()
    }

    /// Canonical Poisson bracket `{R_μ, R_ν}` of two words; zero if either
    /// has rank one.
    pub fn bracket_words_uncached(&self, mu: Word, nu: Word) -> Vec<(Word, Rational)> {
        let raw = self.bracket_raw(mu, nu);
        let two = Rational::from(2);
        let mut acc = FxHashMap::default();
        for (w, c) in raw {
            self.reduce_into(w, &(&c * &two), &mut acc);
        }
        sorted_nonzero(acc)
    }

    /// Memoized `{R_μ, R_ν}` for basis words, as a generator combination.
    pub fn bracket_words(&self, mu: Word, nu: Word) -> GenCombo {
        if mu == nu || mu.len() < 2 || nu.len() < 2 {
            return Arc::from(Vec::new());
        }
        let (key, flip) = if mu < nu { ((mu, nu), false) } else { ((nu, mu), true) };
        let cached = self.brackets.read().get(&key).cloned();
        let base = match cached {
            Some(v) => v,
            None => {
                let v: GenCombo = self
                    .bracket_words_uncached(key.0, key.1)
                    .into_iter()
                    .map(|(w, c)| (Gen::r(w), c))
                    .collect();
                self.brackets.write().entry(key).or_insert(v).clone()
            }
        };
        if flip {
            base.iter().map(|(g, c)| (*g, -c)).collect()
        } else {
            base
        }
    }

    /// Bracket of two generators of ℭ divided by `h`: `[x, y] = h · Σ c g`.
    pub fn gen_bracket(&self, x: Gen, y: Gen) -> GenCombo {
        match (x.kind(), y.kind()) {
            (GenKind::E(_), GenKind::E(_)) => Arc::from(Vec::new()),
            (GenKind::R(a), GenKind::R(b)) => self.bracket_words(a, b),
            (GenKind::R(w), GenKind::E(k)) => self.rank2_action(w, k),
            (GenKind::E(k), GenKind::R(w)) => self.rank2_action(w, k).iter().map(|(g, c)| (*g, -c)).collect(),
        }
    }

    /// `[R_w, e_κ] / h`: nonzero only for rank 2, where it equals
    /// `−2(η_{νκ} e_μ − η_{μκ} e_ν)` for `w = μν`.
    pub fn rank2_action(&self, w: Word, k: u8) -> GenCombo {
        if w.len() != 2 {
            return Arc::from(Vec::new());
        }
        let (mu, nu) = (w.letter(0), w.letter(1));
        let mut acc: FxHashMap<Gen, Rational> = FxHashMap::default();
        let a = self.metric.eta(nu, k);
        if a != 0 {
            *acc.entry(Gen::e(mu)).or_default() += Rational::from(-2 * a);
        }
        let b = self.metric.eta(mu, k);
        if b != 0 {
            *acc.entry(Gen::e(nu)).or_default() += Rational::from(2 * b);
        }
        let mut v: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_unstable_by_key(|p| p.0);
        Arc::from(v)
    }
}

pub(crate) fn sorted_nonzero<K: Ord + Copy>(acc: FxHashMap<K, Rational>) -> Vec<(K, Rational)> {
    let mut v: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    v.sort_unstable_by_key(|p| p.0);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::from_digits(s).unwrap()
    }

    #[test]
    fn rank2_action_sign() {
        let alg = Algebra::minkowski(4).unwrap();
        // [R_01, e_1] = -2h(η_11 e_0 - η_01 e_1) = +2h e_0
        let v = alg.gen_bracket(Gen::r(w("01")), Gen::e(1));
        assert_eq!(&*v, &[(Gen::e(0), Rational::from(2))]);
        assert!(alg.gen_bracket(Gen::r(w("012")), Gen::e(1)).is_empty());
        assert!(alg.gen_bracket(Gen::e(0), Gen::e(1)).is_empty());
    }

    #[test]
    fn bracket_cache_is_antisymmetric() {
        let alg = Algebra::minkowski(3).unwrap();
        let (a, b) = (w("01"), w("012"));
        let ab = alg.bracket_words(a, b);
        let ba = alg.bracket_words(b, a);
        assert_eq!(ab.len(), ba.len());
        for (x, y) in ab.iter().zip(ba.iter()) {
            assert_eq!(x.0, y.0);
            assert_eq!(x.1, -&y.1);
        }
    }
}
