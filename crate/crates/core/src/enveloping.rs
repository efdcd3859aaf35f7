//! Enveloping algebras U(ℜ̂) ⊂ U(ℭ) in PBW normal form, the derivation δ,
//! the quantum invariants Ẑ⁽¹⁾, Ẑ⁽²⁾ and the projections Π.

use std::collections::BTreeMap;
use std::sync::Arc;

use parking_lot::RwLock;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::hpoly::HPoly;
use crate::poisson::{partial, poisson_bracket};
use crate::poly::{CommPoly, Monomial, NcPoly};
use crate::rational::Rational;
use crate::report::SectorReport;
use crate::sector::{enumerate_sector, SectorSpec};
use crate::word::{all_words, shuffle_each, Gen, GenKind, Word};

type Terms = Arc<[(Monomial, HPoly)]>;

/// Order in which [`pbw_normal_form`] resolves out-of-order neighbours.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwapSchedule {
    Leftmost,
    Rightmost,
}

/// Multiplication and δ in U(ℭ), with memoized structure data.
pub struct Enveloping<'a> {
    alg: &'a Algebra,
    products: RwLock<FxHashMap<(Monomial, Gen), Terms>>,
    deltas: RwLock<FxHashMap<Gen, Arc<NcPoly>>>,
}

impl<'a> Enveloping<'a> {
    pub fn new(alg: &'a Algebra) -> Enveloping<'a> {
        Enveloping { alg, products: RwLock::new(FxHashMap::default()), deltas: RwLock::new(FxHashMap::default()) }
    }

    pub fn algebra(&self) -> &'a Algebra {
        self.alg
    }

    /// Whether two generators commute, without forming the bracket when the
    /// answer is structural.
    fn commutes(&self, x: Gen, y: Gen) -> bool {
        if x == y || x.is_central() || y.is_central() {
            return true;
        }
        match (x.is_e(), y.is_e()) {
            (true, true) => true,
            (true, false) => y.rank() != 2,
            (false, true) => x.rank() != 2,
            (false, false) => self.alg.gen_bracket(x, y).is_empty(),
        }
    }

    /// Normal form of `m · g` for a PBW monomial `m`.
    pub fn mono_times_gen(&self, m: &Monomial, g: Gen) -> Terms {
        let gens = m.gens();
        let i = gens.partition_point(|y| *y <= g);
        let mut lead = m.0.clone();
        lead.insert(i, g);
        if gens[i..].iter().all(|&y| self.commutes(y, g)) {
            return Arc::from(vec![(Monomial(lead), HPoly::one())]);
        }
        let key = (m.clone(), g);
        if let Some(t) = self.products.read().get(&key) {
            return t.clone();
        }
        // y₁…y_r g = y₁…y_i g y_{i+1}…y_r + Σ_{j>i} y₁…y_{j−1} [y_j, g] y_{j+1}…y_r
        let mut acc: FxHashMap<Monomial, HPoly> = FxHashMap::default();
        acc.insert(Monomial(lead), HPoly::one());
        for j in i..gens.len() {
            let y = gens[j];
            if self.commutes(y, g) {
                continue;
            }
            let prefix = Monomial(gens[..j].into());
            for (z, c) in self.alg.gen_bracket(y, g).iter() {
                let mut cur: Vec<(Monomial, HPoly)> = self.mono_times_gen(&prefix, *z).to_vec();
                for &y2 in &gens[j + 1..] {
                    cur = self.times_gen(&cur, y2);
                }
                for (mm, p) in cur {
                    acc.entry(mm).or_default().add_scaled(&p, 1, c);
                }
            }
        }
        let t: Terms = acc.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        self.products.write().insert(key, t.clone());
        t
    }

    fn times_gen(&self, terms: &[(Monomial, HPoly)], g: Gen) -> Vec<(Monomial, HPoly)> {
        if terms.len() == 1 {
            let (m, p) = &terms[0];
            return self.mono_times_gen(m, g).iter().map(|(mm, q)| (mm.clone(), p * q)).collect();
        }
        let mut acc: FxHashMap<Monomial, HPoly> = FxHashMap::default();
        for (m, p) in terms {
            for (mm, q) in self.mono_times_gen(m, g).iter() {
                acc.entry(mm.clone()).or_default().add_scaled(&(p * q), 0, &Rational::ONE);
            }
        }
        acc.into_iter().filter(|(_, p)| !p.is_zero()).collect()
    }

    /// Normal form of the product of two PBW monomials.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Vec<(Monomial, HPoly)> {
        let mut cur = vec![(a.clone(), HPoly::one())];
        for &g in b.gens() {
            cur = self.times_gen(&cur, g);
        }
        cur
    }

    pub fn mul(&self, a: &NcPoly, b: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (x, p) in a.terms() {
            for (y, q) in b.terms() {
                let pq = p * q;
                for (m, c) in self.mul_monomials(x, y) {
                    out.add_term(m, &(&c * &pq));
                }
            }
        }
        out
    }

    /// `ab − ba`.
    pub fn commutator(&self, a: &NcPoly, b: &NcPoly) -> NcPoly {
        self.mul(a, b).sub(&self.mul(b, a))
    }

    /// δ of a raw word, with the subwords canonicalized.
    pub fn delta_raw_word(&self, w: Word) -> NcPoly {
        let n = w.len();
        let mut out = NcPoly::zero();
        if n < 2 {
            return out;
        }
        let half = Rational::new(1, 2);
        for (e, rest, sign) in [(w.first(), w.suffix_from(1), Rational::ONE), (w.last(), w.prefix(n - 1), -Rational::ONE)] {
            for (v, c) in self.alg.reduce_word(rest) {
                let sc = &c * &sign;
                // ½[e, R]₊ = e R + ½[R, e] in PBW order
                let (eg, rg) = (Gen::e(e), Gen::r(v));
                out.add_term_scaled(Monomial(smallvec::smallvec![eg, rg]), &HPoly::one(), 0, &sc);
                for (z, d) in self.alg.gen_bracket(rg, eg).iter() {
                    out.add_term_scaled(Monomial::single(*z), &HPoly::one(), 1, &(&sc * &(d * &half)));
                }
            }
        }
        out
    }

    /// δ on a single generator of ℜ̂.
    pub fn delta_gen(&self, g: Gen) -> Result<Arc<NcPoly>> {
        let w = match g.kind() {
            GenKind::E(_) => return Err(Error::EGeneratorPresent),
            GenKind::R(w) => w,
        };
        if let Some(d) = self.deltas.read().get(&g) {
            return Ok(d.clone());
        }
        let d = Arc::new(self.delta_raw_word(w));
        self.deltas.write().insert(g, d.clone());
        Ok(d)
    }

    /// The derivation δ : U(ℜ̂) → U(ℭ).
    pub fn delta(&self, a: &NcPoly) -> Result<NcPoly> {
        if a.has_e() {
            return Err(Error::EGeneratorPresent);
        }
        let mut out = NcPoly::zero();
        for (m, p) in a.terms() {
            let gens = m.gens();
            for i in 0..gens.len() {
                let d = self.delta_gen(gens[i])?;
                if d.is_zero() {
                    continue;
                }
                let prefix = Monomial(gens[..i].into());
                for (t, q) in d.terms() {
                    let mut cur = self.mul_monomials(&prefix, t);
                    for &y in &gens[i + 1..] {
                        cur = self.times_gen(&cur, y);
                    }
                    let pq = p * q;
                    for (mm, c) in cur {
                        out.add_term(mm, &(&c * &pq));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Canonical `R_w` as an element of U(ℜ̂).
    pub fn word_poly(&self, w: Word) -> NcPoly {
        let mut p = NcPoly::zero();
        for (v, c) in self.alg.reduce_word(w) {
            p.add_term(Monomial::single(Gen::r(v)), &HPoly::constant(c));
        }
        p
    }

    /// `Ẑ⁽¹⁾_w = 𝔷_N R_w`.
    pub fn quantum_z1(&self, w: Word) -> Result<NcPoly> {
        self.alg.check_word(w)?;
        let mut out = NcPoly::zero();
        for r in 0..w.len() {
            out.add_scaled(&self.word_poly(w.rotate(r)), 0, &Rational::ONE);
        }
        Ok(out)
    }

    /// `Ẑ⁽²⁾_w = ½ 𝔷_N Σ_{1≤a<N} R_{w≤a} R_{w>a}`.
    pub fn quantum_z2(&self, w: Word) -> Result<NcPoly> {
        self.alg.check_word(w)?;
        let n = w.len();
        if n < 3 {
            return Err(Error::RankTooSmall { rank: n, min: 3 });
        }
        let mut out = NcPoly::zero();
        for r in 0..n {
            let v = w.rotate(r);
            for a in 1..n {
                let p = self.mul(&self.word_poly(v.prefix(a)), &self.word_poly(v.suffix_from(a)));
                out.add_scaled(&p, 0, &Rational::ONE);
            }
        }
        Ok(out.scale(&Rational::new(1, 2)))
    }
}

/// Independent normal ordering by adjacent swaps `xy = yx + [x,y]`.
pub fn pbw_normal_form(alg: &Algebra, raw: &[Gen], coeff: &HPoly, schedule: SwapSchedule) -> NcPoly {
    let mut out = NcPoly::zero();
    let mut work: Vec<(Vec<Gen>, HPoly)> = vec![(raw.to_vec(), coeff.clone())];
    while let Some((seq, c)) = work.pop() {
        let descent = match schedule {
            SwapSchedule::Leftmost => (1..seq.len()).find(|&i| seq[i - 1] > seq[i]),
            SwapSchedule::Rightmost => (1..seq.len()).rev().find(|&i| seq[i - 1] > seq[i]),
        };
        let Some(i) = descent else {
            out.add_term(Monomial(seq.into_iter().collect()), &c);
            continue;
        };
        let (x, y) = (seq[i - 1], seq[i]);
        for (z, d) in alg.gen_bracket(x, y).iter() {
            let mut s = seq[..i - 1].to_vec();
            s.push(*z);
            s.extend_from_slice(&seq[i + 1..]);
            work.push((s, c.shift(1).scale(d)));
        }
        let mut s = seq;
        s.swap(i - 1, i);
        work.push((s, c));
    }
    out
}

/// `Π^{(l)}`: the degree-`l` part read as a commutative polynomial.
pub fn project_pi(a: &NcPoly, l: i32) -> Result<CommPoly> {
    if let Some(d) = a.max_degree().filter(|&d| d > l) {
        return Err(Error::DegreeExceeded { found: d, max: l });
    }
    Ok(a.filter(|m| m.degree() == l).cast())
}

fn rank_words(alg: &Algebra, n: usize) -> Vec<Word> {
    all_words(n, alg.dim())
}

/// δ annihilates every shuffle sum `u ⧢ v` of rank at most `max_rank`.
pub fn verify_delta_well_defined(env: &Enveloping, max_rank: usize) -> Result<SectorReport> {
    let alg = env.alg;
    let mut rep = SectorReport::new("delta-welldef", format!("D={} rank<={max_rank}", alg.dim()));
    for n in 2..=max_rank {
        alg.basis(n)?;
        let raw: FxHashMap<Word, NcPoly> =
            rank_words(alg, n).into_par_iter().map(|w| (w, env.delta_raw_word(w))).collect();
        let mut pairs = Vec::new();
        for k in 1..=n / 2 {
            for u in rank_words(alg, k) {
                for v in rank_words(alg, n - k) {
                    if 2 * k == n && u > v {
                        continue;
                    }
                    pairs.push((u, v));
                }
            }
        }
        rep.cases += pairs.len() as u64;
        let bad = pairs
            .par_iter()
            .map(|&(u, v)| {
                let mut s = NcPoly::zero();
                shuffle_each(u, v, |w| s.add_scaled(&raw[&w], 0, &Rational::ONE));
                (!s.is_zero()).then(|| format!("delta({u} sh {v}) = {s}"))
            })
            .find_first(|r| r.is_some())
            .flatten();
        if let Some(c) = bad {
            rep.fail(c);
            break;
        }
    }
    Ok(rep)
}

/// `δ[A,B] = [δA,B] + [A,δB]` on generator pairs of ℜ̂ with rank sum at most
/// `max_rank_sum`.
pub fn verify_derivation_property(env: &Enveloping, max_rank_sum: usize) -> Result<SectorReport> {
    let alg = env.alg;
    let mut gens = Vec::new();
    for n in 1..max_rank_sum {
        gens.extend(alg.basis(n)?.basis_words().iter().map(|&w| Gen::r(w)));
    }
    let mut pairs = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            if a.rank() + b.rank() <= max_rank_sum {
                pairs.push((a, b));
            }
        }
    }
    let check = |a: Gen, b: Gen| -> Result<Option<String>> {
        let (pa, pb) = (NcPoly::gen(a), NcPoly::gen(b));
        let lhs = env.delta(&env.commutator(&pa, &pb))?;
        let mut rhs = env.commutator(&*env.delta_gen(a)?, &pb);
        rhs.add_scaled(&env.commutator(&pa, &*env.delta_gen(b)?), 0, &Rational::ONE);
        let r = lhs.sub(&rhs);
        Ok((!r.is_zero()).then(|| format!("({a}, {b}): residual {r}")))
    };
    let bad = pairs.par_iter().map(|&(a, b)| check(a, b)).find_first(|r| !matches!(r, Ok(None)));
    let mut rep = SectorReport::new("delta-leibniz", format!("D={} rank_sum<={max_rank_sum}", alg.dim()));
    rep.cases = pairs.len() as u64;
    if let Some(r) = bad {
        rep.fail(r?.unwrap());
    }
    Ok(rep)
}

/// Least rotation of `w`; Ẑ⁽¹⁾ and Ẑ⁽²⁾ only depend on it.
fn is_necklace_rep(w: Word) -> bool {
    (1..w.len()).all(|r| w.rotate(r) >= w)
}

/// `δ Ẑ⁽¹⁾_w = δ Ẑ⁽²⁾_w = 0` for all words of ranks `3..=max_rank`.
pub fn verify_z_invariants(env: &Enveloping, max_rank: usize) -> Result<SectorReport> {
    let alg = env.alg;
    let mut rep = SectorReport::new("z2", format!("D={} rank 3..={max_rank}", alg.dim()));
    let mut per_rank = BTreeMap::new();
    for n in 3..=max_rank {
        alg.basis(n)?;
        let reps: Vec<Word> = rank_words(alg, n).into_iter().filter(|&w| is_necklace_rep(w)).collect();
        per_rank.insert(n, reps.len());
        rep.cases += reps.len() as u64;
        let bad = reps
            .par_iter()
            .map(|&w| -> Result<Option<String>> {
                let d1 = env.delta(&env.quantum_z1(w)?)?;
                if !d1.is_zero() {
                    return Ok(Some(format!("delta Z1_{w} = {d1}")));
                }
                let d2 = env.delta(&env.quantum_z2(w)?)?;
                Ok((!d2.is_zero()).then(|| format!("delta Z2_{w} = {d2}")))
            })
            .find_first(|r| !matches!(r, Ok(None)));
        if let Some(r) = bad {
            rep.fail(r?.unwrap());
            break;
        }
    }
    rep.set_detail("necklaces_per_rank", per_rank);
    Ok(rep)
}

fn random_coeff(rng: &mut ChaCha8Rng) -> Rational {
    const C: [(i64, i64); 6] = [(1, 1), (-1, 1), (2, 1), (-3, 1), (1, 2), (-2, 3)];
    let (p, q) = C[rng.gen_range(0..C.len())];
    Rational::new(p, q)
}

/// A random homogeneous element of U(ℜ̂) of the given weight.
pub fn random_homogeneous(
    alg: &Algebra,
    weight: usize,
    rng: &mut ChaCha8Rng,
    max_terms: usize,
) -> Result<(NcPoly, i32)> {
    let monos = enumerate_sector(alg, &SectorSpec::new(alg.dim(), weight).with_budget(alg.sector_budget()))?;
    let mut degrees: Vec<i32> = monos.iter().map(|m| m.0.degree()).collect();
    degrees.dedup();
    let l = *degrees.choose(rng).expect("nonempty sector");
    let pool: Vec<_> = monos.iter().filter(|m| m.0.degree() == l).collect();
    let mut p = NcPoly::zero();
    for _ in 0..rng.gen_range(1..=max_terms) {
        let (m, k) = pool.choose(rng).unwrap();
        p.add_term_scaled((*m).clone(), &HPoly::one(), *k, &random_coeff(rng));
    }
    Ok((p, l))
}

/// The three intertwining rules of Π with product, commutator and δ on
/// `pairs` random homogeneous pairs.
pub fn verify_pi_intertwining(
    env: &Enveloping,
    pairs: usize,
    max_weight: usize,
    max_pair_weight: usize,
    seed: u64,
) -> Result<SectorReport> {
    let alg = env.alg;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut jobs = Vec::new();
    for _ in 0..pairs {
        let wa = rng.gen_range(1..=max_weight.min(max_pair_weight - 1));
        let wb = rng.gen_range(1..=max_weight.min(max_pair_weight - wa));
        let a = random_homogeneous(alg, wa, &mut rng, 3)?;
        let b = random_homogeneous(alg, wb, &mut rng, 3)?;
        jobs.push((a, b));
    }
    let check = |((a, la), (b, lb)): &((NcPoly, i32), (NcPoly, i32))| -> Result<Option<String>> {
        let (pa, pb) = (project_pi(a, *la)?, project_pi(b, *lb)?);
        if project_pi(&env.mul(a, b), la + lb + 1)? != pa.mul(&pb) {
            return Ok(Some(format!("product rule fails for a = {a}, b = {b}")));
        }
        if project_pi(&env.commutator(a, b), la + lb)? != poisson_bracket(alg, &pa, &pb)?.shift_h(1) {
            return Ok(Some(format!("commutator rule fails for a = {a}, b = {b}")));
        }
        if project_pi(&env.delta(a)?, la - 1)? != partial(alg, &pa)? {
            return Ok(Some(format!("delta rule fails for a = {a}")));
        }
        Ok(None)
    };
    let bad = jobs.par_iter().map(check).find_first(|r| !matches!(r, Ok(None)));
    let mut rep = SectorReport::new(
        "pi-intertwine",
        format!("D={} weight<={max_weight} pair_weight<={max_pair_weight}", alg.dim()),
    );
    rep.cases = pairs as u64;
    rep.set_detail("seed", seed);
    if let Some(r) = bad {
        rep.fail(r?.unwrap());
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::from_digits(s).unwrap()
    }

    fn r(s: &str) -> Gen {
        Gen::r(w(s))
    }

    #[test]
    fn swap_with_translation() {
        let alg = Algebra::minkowski(4).unwrap();
        let env = Enveloping::new(&alg);
        // R_{12} e_1 = e_1 R_{12} + [R_{12}, e_1], with [R_{12}, e_1] = −2h(η_{21} e_1 − η_{11} e_2) = −2h e_2
        let p = env.mul(&NcPoly::gen(r("12")), &NcPoly::gen(Gen::e(1)));
        let mut expect = NcPoly::zero();
        expect.add_term(Monomial::from_gens([Gen::e(1), r("12")]), &HPoly::one());
        expect.add_term(Monomial::single(Gen::e(2)), &HPoly::monomial(1, Rational::from(-2)));
        assert_eq!(p, expect);
    }

    #[test]
    fn momenta_are_central() {
        let alg = Algebra::minkowski(4).unwrap();
        let env = Enveloping::new(&alg);
        let x = env.mul(&NcPoly::gen(r("013")), &NcPoly::gen(r("12")));
        assert!(env.commutator(&NcPoly::gen(r("2")), &x).is_zero());
    }

    #[test]
    fn commutator_of_rank_two() {
        let alg = Algebra::minkowski(4).unwrap();
        let env = Enveloping::new(&alg);
        let c = env.commutator(&NcPoly::gen(r("01")), &NcPoly::gen(r("12")));
        let mut expect = NcPoly::zero();
        for (g, k) in alg.gen_bracket(r("01"), r("12")).iter() {
            expect.add_term(Monomial::single(*g), &HPoly::monomial(1, k.clone()));
        }
        assert_eq!(c, expect);
        assert!(!c.is_zero());
    }

    #[test]
    fn delta_examples() {
        let alg = Algebra::minkowski(4).unwrap();
        let env = Enveloping::new(&alg);
        assert!(env.delta(&NcPoly::gen(r("3"))).unwrap().is_zero());
        let d = env.delta(&NcPoly::gen(r("01"))).unwrap();
        let mut expect = NcPoly::zero();
        expect.add_term(Monomial::from_gens([Gen::e(0), r("1")]), &HPoly::one());
        expect.add_term(Monomial::from_gens([Gen::e(1), r("0")]), &HPoly::constant(-Rational::ONE));
        assert_eq!(d, expect);
        let z = env.quantum_z1(w("012")).unwrap();
        assert!(env.delta(&z).unwrap().is_zero());
        assert!(matches!(env.delta(&NcPoly::gen(Gen::e(0))), Err(Error::EGeneratorPresent)));
    }

    #[test]
    fn anticommutator_reading_at_rank_two() {
        // ½[e_μ, P_ν]₊ and e_μ P_ν agree since momenta are central.
        let alg = Algebra::minkowski(3).unwrap();
        let env = Enveloping::new(&alg);
        let (e, p) = (NcPoly::gen(Gen::e(2)), NcPoly::gen(r("1")));
        let anti = env.mul(&e, &p).add(&env.mul(&p, &e)).scale(&Rational::new(1, 2));
        assert_eq!(anti, env.mul(&e, &p));
    }

    #[test]
    fn z2_needs_rank_three() {
        let alg = Algebra::minkowski(4).unwrap();
        let env = Enveloping::new(&alg);
        assert!(matches!(env.quantum_z2(w("01")), Err(Error::RankTooSmall { .. })));
        let z = env.quantum_z2(w("0123")).unwrap();
        assert!(env.delta(&z).unwrap().is_zero());
        assert!(project_pi(&z, 1).is_ok());
        assert!(matches!(project_pi(&z, 0), Err(Error::DegreeExceeded { .. })));
    }

    #[test]
    fn schedules_agree_with_product() {
        let alg = Algebra::minkowski(4).unwrap();
        let env = Enveloping::new(&alg);
        let seq = [r("0123"), r("12"), Gen::e(2), r("013"), r("01")];
        let c = HPoly::one();
        let left = pbw_normal_form(&alg, &seq, &c, SwapSchedule::Leftmost);
        let right = pbw_normal_form(&alg, &seq, &c, SwapSchedule::Rightmost);
        assert_eq!(left, right);
        let mut prod = NcPoly::constant(HPoly::one());
        for g in seq {
            prod = env.mul(&prod, &NcPoly::gen(g));
        }
        assert_eq!(prod, left);
    }

    #[test]
    fn small_sweeps_pass() {
        let alg = Algebra::minkowski(3).unwrap();
        let env = Enveloping::new(&alg);
        assert!(verify_delta_well_defined(&env, 4).unwrap().passed());
        assert!(verify_derivation_property(&env, 5).unwrap().passed());
        assert!(verify_z_invariants(&env, 4).unwrap().passed());
        assert!(verify_pi_intertwining(&env, 20, 4, 6, 7).unwrap().passed());
    }
}
