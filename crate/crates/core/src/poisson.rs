//! The Poisson algebras S(ℜ) and S(ℝ^D ⊕ ℜ), the derivation ∂ and the
//! classical invariants.

use std::collections::BTreeMap;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::hpoly::HPoly;
use crate::linalg::kernel_of_map;
use crate::poly::{CommPoly, Monomial};
use crate::rational::{factorial, Rational};
use crate::sector::{enumerate_sector, KernelBasis, SectorSpec};
use crate::word::{Gen, Word};

fn reject_e(a: &CommPoly) -> Result<()> {
    if a.has_e() {
        return Err(Error::EGeneratorPresent);
    }
    Ok(())
}

/// `{m₁, m₂}` for two monomials, by the Leibniz rule in both slots.
fn bracket_monomials(alg: &Algebra, a: &Monomial, b: &Monomial, c: &HPoly, out: &mut CommPoly) {
    for (i, &x) in a.gens().iter().enumerate() {
        if x.rank() < 2 {
            continue;
        }
        for (j, &y) in b.gens().iter().enumerate() {
            if y.rank() < 2 {
                continue;
            }
            let combo = alg.gen_bracket(x, y);
            if combo.is_empty() {
                continue;
            }
            let rest = a.without(i).mul_comm(&b.without(j));
            for (g, k) in combo.iter() {
                out.add_term_scaled(rest.mul_comm(&Monomial::single(*g)), c, 0, k);
            }
        }
    }
}

/// Poisson bracket on S(ℜ).
pub fn poisson_bracket(alg: &Algebra, a: &CommPoly, b: &CommPoly) -> Result<CommPoly> {
    reject_e(a)?;
    reject_e(b)?;
    let mut out = CommPoly::zero();
    for (x, p) in a.terms() {
        for (y, q) in b.terms() {
            bracket_monomials(alg, x, y, &(p * q), &mut out);
        }
    }
    Ok(out)
}

/// `∂R_w = e_{w₁} R_{w₂…} − e_{w_N} R_{…w_{N−1}}` for a raw word, canonicalized.
pub fn partial_word(alg: &Algebra, w: Word) -> Vec<(Monomial, Rational)> {
    let n = w.len();
    if n < 2 {
        return Vec::new();
    }
    let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
    for (e, rest, sign) in [(w.first(), w.suffix_from(1), Rational::ONE), (w.last(), w.prefix(n - 1), -Rational::ONE)] {
        for (v, c) in alg.reduce_word(rest) {
            *acc.entry(Monomial::from_gens([Gen::e(e), Gen::r(v)])).or_default() += &c * &sign;
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn partial_monomial(alg: &Algebra, m: &Monomial, c: &HPoly, out: &mut CommPoly) {
    for (i, g) in m.gens().iter().enumerate() {
        let Some(w) = g.word() else { continue };
        let rest = m.without(i);
        for (d, k) in partial_word(alg, w) {
            out.add_term_scaled(rest.mul_comm(&d), c, 0, &k);
        }
    }
}

/// The derivation ∂ : S(ℜ) → S(ℝ^D ⊕ ℜ).
pub fn partial(alg: &Algebra, a: &CommPoly) -> Result<CommPoly> {
    reject_e(a)?;
    let mut out = CommPoly::zero();
    for (m, c) in a.terms() {
        partial_monomial(alg, m, c, &mut out);
    }
    Ok(out)
}

/// Product of the canonical tensors of consecutive blocks of `w`, cut at `cuts`.
fn block_product(alg: &Algebra, w: Word, cuts: &[usize]) -> CommPoly {
    let mut acc = CommPoly::constant(HPoly::one());
    let mut start = 0;
    for &end in cuts.iter().chain(std::iter::once(&w.len())) {
        let mut f = CommPoly::zero();
        for (v, c) in alg.reduce_word(w.slice(start, end)) {
            f.add_term(Monomial::single(Gen::r(v)), &HPoly::constant(c));
        }
        acc = acc.mul(&f);
        start = end;
    }
    acc
}

/// Strictly increasing cut positions `0 < c₁ < … < c_{k−1} < n`.
pub(crate) fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(from: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for c in from..n {
            if n - c < left {
                break;
            }
            cur.push(c);
            go(c + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k >= 1 && k <= n {
        go(1, n, k - 1, &mut Vec::new(), &mut out);
    }
    out
}

pub(crate) fn check_order(alg: &Algebra, w: Word, k: usize) -> Result<()> {
    alg.check_word(w)?;
    if k == 0 || k > w.len() {
        return Err(Error::RankTooSmall { rank: w.len(), min: k.max(1) });
    }
    Ok(())
}

/// `Z^{(K)}_w = (1/K!) 𝔷_N Σ_{compositions} R_{block₁}⋯R_{block_K}`.
pub fn classical_invariant_part(alg: &Algebra, w: Word, k: usize) -> Result<CommPoly> {
    check_order(alg, w, k)?;
    let n = w.len();
    let cuts = compositions(n, k);
    let mut out = CommPoly::zero();
    for r in 0..n {
        let v = w.rotate(r);
        for c in &cuts {
            out.add_scaled(&block_product(alg, v, c), 0, &Rational::ONE);
        }
    }
    Ok(out.scale(&factorial(k).recip()))
}

/// `Z_w = Σ_K Z^{(K)}_w`.
pub fn classical_invariant(alg: &Algebra, w: Word) -> Result<CommPoly> {
    let mut out = CommPoly::zero();
    for k in 1..=w.len() {
        out.add_scaled(&classical_invariant_part(alg, w, k)?, 0, &Rational::ONE);
    }
    Ok(out)
}

/// Basis of Ker ∂ on the e-free, h-free sector of total rank `weight`,
/// assembled from the (weight, order) blocks on which ∂ acts.
pub fn classical_kernel(alg: &Algebra, weight: usize) -> Result<KernelBasis<CommPoly>> {
    classical_kernel_with_budget(alg, weight, alg.sector_budget())
}

pub fn classical_kernel_with_budget(alg: &Algebra, weight: usize, budget: usize) -> Result<KernelBasis<CommPoly>> {
    if weight == 0 {
        return Err(Error::RankOutOfRange(0));
    }
    let mut elements = Vec::new();
    let mut degrees = Vec::new();
    let mut per_degree = BTreeMap::new();
    for k in 1..=weight {
        let spec = SectorSpec::classical(alg.dim(), weight, k).with_budget(budget);
        let monos = enumerate_sector(alg, &spec)?;
        let kernel = kernel_of_map(monos.len(), |j| {
            let mut img = CommPoly::zero();
            partial_monomial(alg, &monos[j].0, &HPoly::one(), &mut img);
            img.coordinates().map(|((m, _), x)| (m, x)).collect()
        });
        let l = weight as i32 - k as i32 - 1;
        if !kernel.is_empty() {
            per_degree.insert(l, kernel.len());
        }
        for v in kernel {
            degrees.push(l);
            elements.push(CommPoly::from_coordinates(v.into_iter().map(|(j, x)| ((monos[j as usize].0.clone(), 0), x))));
        }
    }
    Ok(KernelBasis { sector: format!("D={} w={weight} classical", alg.dim()), weight, elements, degrees, per_degree })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::from_digits(s).unwrap()
    }

    fn r(s: &str) -> CommPoly {
        CommPoly::gen(Gen::r(w(s)))
    }

    #[test]
    fn partial_of_rank_two() {
        let alg = Algebra::minkowski(4).unwrap();
        let d = partial(&alg, &r("01")).unwrap();
        let mut expect = CommPoly::zero();
        expect.add_term(Monomial::from_gens([Gen::e(0), Gen::r(w("1"))]), &HPoly::one());
        expect.add_term(Monomial::from_gens([Gen::e(1), Gen::r(w("0"))]), &HPoly::constant(-Rational::ONE));
        assert_eq!(d, expect);
        assert!(partial(&alg, &r("2")).unwrap().is_zero());
    }

    #[test]
    fn invariant_examples() {
        let alg = Algebra::minkowski(4).unwrap();
        assert_eq!(classical_invariant(&alg, w("2")).unwrap(), r("2"));
        assert_eq!(classical_invariant(&alg, w("13")).unwrap(), r("1").mul(&r("3")));
        assert!(classical_invariant_part(&alg, w("13"), 1).unwrap().is_zero());
        for k in 1..=3 {
            let z = classical_invariant_part(&alg, w("012"), k).unwrap();
            assert!(partial(&alg, &z).unwrap().is_zero(), "K={k}");
        }
    }

    #[test]
    fn small_kernels() {
        let alg = Algebra::minkowski(4).unwrap();
        let k1 = classical_kernel(&alg, 1).unwrap();
        assert_eq!(k1.dim(), 4);
        let k2 = classical_kernel(&alg, 2).unwrap();
        assert_eq!(k2.dim(), 10);
        assert_eq!(k2.per_degree, [(-1, 10)].into_iter().collect());
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(5, 1), vec![Vec::<usize>::new()]);
        assert_eq!(compositions(5, 2).len(), 4);
        assert_eq!(compositions(5, 3).len(), 6);
        assert_eq!(compositions(5, 5), vec![vec![1, 2, 3, 4]]);
        assert!(compositions(3, 4).is_empty());
    }

    #[test]
    fn rejects_translations() {
        let alg = Algebra::minkowski(2).unwrap();
        let e = CommPoly::gen(Gen::e(0));
        assert!(matches!(partial(&alg, &e), Err(Error::EGeneratorPresent)));
        assert!(poisson_bracket(&alg, &e, &r("01")).is_err());
    }
}
