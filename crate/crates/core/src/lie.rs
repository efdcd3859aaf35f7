//! The Lie algebra ℜ̂ of monodromy variables and its extension
//! ℭ = ℝ^D ⊕ ℜ̂ by translations.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::algebra::{sorted_nonzero, Algebra};
use crate::error::{Error, Result};
use crate::hpoly::HPoly;
use crate::rational::Rational;
use crate::report::SectorReport;
use crate::word::{Gen, GenKind, Word};

/// Element of ℜ̂: canonical basis words with `h`-polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Default, Serialize)]
pub struct TensorElement {
    terms: BTreeMap<Word, HPoly>,
}

impl TensorElement {
    pub fn zero() -> TensorElement {
        TensorElement::default()
    }

    /// Canonicalizes a raw combination of words (ranks may differ).
    pub fn from_raw<'a>(alg: &Algebra, raw: impl IntoIterator<Item = (Word, &'a HPoly)>) -> Result<TensorElement> {
        let mut by_rank: BTreeMap<usize, Vec<(Word, &HPoly)>> = BTreeMap::new();
        for (w, p) in raw {
            alg.check_word(w)?;
            by_rank.entry(w.len()).or_default().push((w, p));
        }
        let mut terms = BTreeMap::new();
        for (n, items) in by_rank {
            terms.extend(alg.basis(n)?.canonicalize(items)?);
        }
        Ok(TensorElement { terms })
    }

    /// `R_w` for a raw word, canonicalized.
    pub fn word(alg: &Algebra, w: Word) -> Result<TensorElement> {
        let one = HPoly::one();
        TensorElement::from_raw(alg, [(w, &one)])
    }

    pub(crate) fn from_scalar_terms(terms: impl IntoIterator<Item = (Word, Rational)>) -> TensorElement {
        TensorElement {
            terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).map(|(w, c)| (w, HPoly::constant(c))).collect(),
        }
    }

    pub fn terms(&self) -> &BTreeMap<Word, HPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: Word) -> HPoly {
        self.terms.get(&w).cloned().unwrap_or_default()
    }

    pub fn add_scaled(&mut self, other: &TensorElement, k: usize, c: &Rational) {
        for (w, p) in &other.terms {
            let slot = self.terms.entry(*w).or_default();
            slot.add_scaled(p, k, c);
            if slot.is_zero() {
                self.terms.remove(w);
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> TensorElement {
        let mut r = TensorElement::zero();
        r.add_scaled(self, 0, c);
        r
    }

    /// Ranks present.
    pub fn ranks(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.keys().map(|w| w.len()).collect();
        v.dedup();
        v
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, p)| format!("({p})R{w}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Poisson bracket on ℜ (no factor of `h`).
pub fn classical_bracket(alg: &Algebra, a: &TensorElement, b: &TensorElement) -> TensorElement {
    let mut acc: BTreeMap<Word, HPoly> = BTreeMap::new();
    for (x, p) in &a.terms {
        for (y, q) in &b.terms {
            let pq = p * q;
            for (g, c) in alg.bracket_words(*x, *y).iter() {
                acc.entry(g.word().expect("R output")).or_default().add_scaled(&pq, 0, c);
            }
        }
    }
    acc.retain(|_, p| !p.is_zero());
    TensorElement { terms: acc }
}

/// Element of ℭ = ℝ^D ⊕ ℜ̂.
#[derive(Clone, PartialEq, Eq, Default, Debug, Serialize)]
pub struct CElement {
    pub e_part: BTreeMap<u8, HPoly>,
    pub r_part: TensorElement,
}

impl CElement {
    pub fn e(mu: u8) -> CElement {
        CElement { e_part: [(mu, HPoly::one())].into_iter().collect(), r_part: TensorElement::zero() }
    }

    pub fn r(t: TensorElement) -> CElement {
        CElement { e_part: BTreeMap::new(), r_part: t }
    }

    pub fn is_zero(&self) -> bool {
        self.e_part.is_empty() && self.r_part.is_zero()
    }

    fn gens(&self) -> Vec<(Gen, &HPoly)> {
        let mut v: Vec<(Gen, &HPoly)> = self.e_part.iter().map(|(m, p)| (Gen::e(*m), p)).collect();
        v.extend(self.r_part.terms.iter().map(|(w, p)| (Gen::r(*w), p)));
        v
    }
}

/// Lie bracket of ℭ, with `[R_I, R_J] = h {R_I, R_J}`.
pub fn c_bracket(alg: &Algebra, a: &CElement, b: &CElement) -> CElement {
    let mut e: BTreeMap<u8, HPoly> = BTreeMap::new();
    let mut r: BTreeMap<Word, HPoly> = BTreeMap::new();
    for (x, p) in a.gens() {
        for (y, q) in b.gens() {
            let pq = p * q;
            for (g, c) in alg.gen_bracket(x, y).iter() {
                let slot = match g.kind() {
                    GenKind::E(m) => e.entry(m).or_default(),
                    GenKind::R(w) => r.entry(w).or_default(),
                };
                slot.add_scaled(&pq, 1, c);
            }
        }
    }
    e.retain(|_, p| !p.is_zero());
    r.retain(|_, p| !p.is_zero());
    CElement { e_part: e, r_part: TensorElement { terms: r } }
}

/// The bracket formula applied formally when one argument has rank 1.
/// This is not a Lie bracket; it exists to exhibit the Jacobi failure.
pub fn naive_bracket_words(alg: &Algebra, mu: Word, nu: Word) -> Vec<(Word, Rational)> {
    if mu.len() >= 2 && nu.len() >= 2 {
        return alg.bracket_words(mu, nu).iter().map(|(g, c)| (g.word().unwrap(), c.clone())).collect();
    }
    let two = Rational::from(2);
    let mut acc = FxHashMap::default();
    for (w, c) in alg.contraction_raw(mu, nu) {
        alg.reduce_into(w, &(&c * &two), &mut acc);
    }
    sorted_nonzero(acc)
}

/// [`naive_bracket_words`] extended bilinearly; `b` must have rank 1.
pub fn naive_rank1_bracket(alg: &Algebra, a: &TensorElement, b: &TensorElement) -> Result<TensorElement> {
    if let Some(w) = b.terms.keys().find(|w| w.len() != 1) {
        return Err(Error::MixedRanks { expected: 1, found: w.len() });
    }
    let mut acc: BTreeMap<Word, HPoly> = BTreeMap::new();
    for (x, p) in &a.terms {
        for (y, q) in &b.terms {
            let pq = p * q;
            for (w, c) in naive_bracket_words(alg, *x, *y) {
                acc.entry(w).or_default().add_scaled(&pq, 0, &c);
            }
        }
    }
    acc.retain(|_, p| !p.is_zero());
    Ok(TensorElement { terms: acc })
}

type Vector = FxHashMap<Gen, Rational>;

fn bracket_vec_gen(bracket: &impl Fn(Gen, Gen) -> Vec<(Gen, Rational)>, v: &Vector, z: Gen, out: &mut Vector) {
    for (g, c) in v {
        for (x, d) in bracket(*g, z) {
            out.entry(x).or_default().add_mul(c, &d);
        }
    }
}

/// Cyclic sum `[[x,y],z] + [[y,z],x] + [[z,x],y]` for a bracket on generators.
fn jacobiator(bracket: &impl Fn(Gen, Gen) -> Vec<(Gen, Rational)>, x: Gen, y: Gen, z: Gen) -> Vec<(Gen, Rational)> {
    let mut out = Vector::default();
    for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
        let inner: Vector = bracket(a, b).into_iter().collect();
        bracket_vec_gen(bracket, &inner, c, &mut out);
    }
    sorted_nonzero(out)
}

fn format_combo(v: &[(Gen, Rational)]) -> String {
    v.iter().map(|(g, c)| format!("({c}){g}")).collect::<Vec<_>>().join(" + ")
}

/// Generators of ℭ of rank at most `max_rank` (e counted as rank 1).
pub fn c_generators(alg: &Algebra, max_rank: usize, with_e: bool) -> Result<Vec<Gen>> {
    let mut gens: Vec<Gen> = Vec::new();
    if with_e {
        gens.extend((0..alg.dim() as u8).map(Gen::e));
    }
    for n in 1..=max_rank {
        gens.extend(alg.basis(n)?.basis_words().iter().map(|&w| Gen::r(w)));
    }
    Ok(gens)
}

fn triples(gens: &[Gen], max_total: usize, filter: impl Fn(Gen, Gen, Gen) -> bool + Sync) -> Vec<(Gen, Gen, Gen)> {
    let mut out = Vec::new();
    for i in 0..gens.len() {
        for j in i..gens.len() {
            if gens[i].rank() + gens[j].rank() + 1 > max_total {
                continue;
            }
            for k in j..gens.len() {
                let (x, y, z) = (gens[i], gens[j], gens[k]);
                if x.rank() + y.rank() + z.rank() <= max_total && filter(x, y, z) {
                    out.push((x, y, z));
                }
            }
        }
    }
    out
}

/// Jacobi identity of ℭ on all generator triples with rank sum at most
/// `max_total_rank`.
pub fn verify_jacobi(alg: &Algebra, max_total_rank: usize) -> Result<SectorReport> {
    if max_total_rank < 3 {
        return Err(Error::RankTooSmall { rank: max_total_rank, min: 3 });
    }
    let gens = c_generators(alg, max_total_rank - 2, true)?;
    let all = triples(&gens, max_total_rank, |_, _, _| true);
    let bracket = |a: Gen, b: Gen| alg.gen_bracket(a, b).to_vec();
    let first_bad = all
        .par_iter()
        .map(|&(x, y, z)| {
            let j = jacobiator(&bracket, x, y, z);
            (!j.is_empty()).then(|| format!("[{x},{y},{z}] -> h^2({})", format_combo(&j)))
        })
        .find_first(|r| r.is_some())
        .flatten();
    let mut rep = SectorReport::new("jacobi", format!("D={} rank_sum<={max_total_rank}", alg.dim()));
    rep.cases = all.len() as u64;
    if let Some(c) = first_bad {
        rep.fail(c);
    }
    Ok(rep)
}

/// Searches triples of ℜ generators (at least one of rank 1) for a Jacobi
/// violation of the naive rank-1 extension. The report passes when a witness
/// is found.
pub fn naive_jacobi_witness(alg: &Algebra, max_total_rank: usize) -> Result<SectorReport> {
    if max_total_rank < 3 {
        return Err(Error::RankTooSmall { rank: max_total_rank, min: 3 });
    }
    let gens = c_generators(alg, max_total_rank - 2, false)?;
    let all = triples(&gens, max_total_rank, |x, y, z| x.rank() == 1 || y.rank() == 1 || z.rank() == 1);
    let bracket = |a: Gen, b: Gen| {
        naive_bracket_words(alg, a.word().unwrap(), b.word().unwrap()).into_iter().map(|(w, c)| (Gen::r(w), c)).collect()
    };
    let hit = all.iter().enumerate().find_map(|(i, &(x, y, z))| {
        let j = jacobiator(&bracket, x, y, z);
        (!j.is_empty()).then(|| (i, x, y, z, j))
    });
    let mut rep = SectorReport::new("naive-rank1-jacobi-control", format!("D={} rank_sum<={max_total_rank}", alg.dim()));
    match hit {
        Some((i, x, y, z, j)) => {
            rep.cases = i as u64 + 1;
            rep.set_detail("witness", format!("({x}, {y}, {z})"));
            rep.set_detail("witness_ranks", [x.rank(), y.rank(), z.rank()]);
            rep.set_detail("jacobiator", format_combo(&j));
        }
        None => {
            rep.cases = all.len() as u64;
            rep.fail("no Jacobi-violating triple found for the naive extension");
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::from_digits(s).unwrap()
    }

    fn t(alg: &Algebra, s: &str) -> TensorElement {
        TensorElement::word(alg, w(s)).unwrap()
    }

    #[test]
    fn canonicalization_examples() {
        let alg = Algebra::minkowski(4).unwrap();
        assert_eq!(t(&alg, "10"), t(&alg, "01").scale(&-Rational::ONE));
        assert!(t(&alg, "11").is_zero());
    }

    #[test]
    fn rank_two_bracket_formula() {
        let alg = Algebra::minkowski(4).unwrap();
        let eta = |a: u8, b: u8| Rational::from(alg.metric().eta(a, b));
        let letters = 0..4u8;
        for a in letters.clone() {
            for b in letters.clone() {
                for c in letters.clone() {
                    for d in letters.clone() {
                        let x = TensorElement::word(&alg, Word::from_letters(&[a, b])).unwrap();
                        let y = TensorElement::word(&alg, Word::from_letters(&[c, d])).unwrap();
                        let got = classical_bracket(&alg, &x, &y);
                        let mut want = TensorElement::zero();
                        for (e, (p, q)) in [(eta(a, c), (b, d)), (-eta(a, d), (b, c)), (-eta(b, c), (a, d)), (eta(b, d), (a, c))] {
                            let r = TensorElement::word(&alg, Word::from_letters(&[p, q])).unwrap();
                            want.add_scaled(&r, 0, &(&e * &Rational::from(2)));
                        }
                        assert_eq!(got, want, "{a}{b} {c}{d}");
                    }
                }
            }
        }
    }

    #[test]
    fn momenta_are_central() {
        let alg = Algebra::minkowski(4).unwrap();
        assert!(classical_bracket(&alg, &t(&alg, "2"), &t(&alg, "0123")).is_zero());
        assert!(classical_bracket(&alg, &t(&alg, "012"), &t(&alg, "1")).is_zero());
    }

    #[test]
    fn c_bracket_examples() {
        let alg = Algebra::minkowski(4).unwrap();
        assert!(c_bracket(&alg, &CElement::e(0), &CElement::e(1)).is_zero());
        assert!(c_bracket(&alg, &CElement::r(t(&alg, "012")), &CElement::e(1)).is_zero());
        let got = c_bracket(&alg, &CElement::r(t(&alg, "01")), &CElement::e(1));
        assert_eq!(got.e_part.get(&0), Some(&HPoly::monomial(1, Rational::from(2))));
        assert_eq!(got.e_part.len(), 1);
        assert!(got.r_part.is_zero());
    }

    #[test]
    fn naive_bracket_shape() {
        let alg = Algebra::minkowski(4).unwrap();
        let out = naive_rank1_bracket(&alg, &t(&alg, "0120"), &t(&alg, "0")).unwrap();
        assert!(!out.is_zero());
        assert!(out.terms().keys().all(|x| x.len() == 3));
        assert!(naive_rank1_bracket(&alg, &t(&alg, "01"), &t(&alg, "01")).is_err());
    }

    #[test]
    fn jacobi_small() {
        let alg = Algebra::minkowski(3).unwrap();
        assert!(verify_jacobi(&alg, 5).unwrap().passed());
    }
}
