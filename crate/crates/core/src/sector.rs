//! Finite weight sectors of the symmetric and enveloping algebras.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::poly::Monomial;
use crate::word::Gen;

/// Default cap on the number of monomials in one sector.
pub const DEFAULT_BUDGET: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectorSpec {
    pub dim: usize,
    /// `Σ rank + 2·(power of h)`.
    pub weight: usize,
    /// Exact number of R symbols, if constrained.
    pub order: Option<usize>,
    pub max_order: Option<usize>,
    /// Exact number of `e` symbols; `Some(0)` means e-free.
    pub e_count: Option<usize>,
    pub max_h: Option<usize>,
    /// Admit the pure scalar `h^{w/2}`.
    pub include_scalars: bool,
    pub budget: usize,
}

impl SectorSpec {
    /// e-free sector with all powers of `h`, scalars excluded.
    pub fn new(dim: usize, weight: usize) -> SectorSpec {
        SectorSpec {
            dim,
            weight,
            order: None,
            max_order: None,
            e_count: Some(0),
            max_h: None,
            include_scalars: false,
            budget: DEFAULT_BUDGET,
        }
    }

    /// Commutative classical sector: no `h`, fixed order.
    pub fn classical(dim: usize, weight: usize, order: usize) -> SectorSpec {
        SectorSpec { order: Some(order), max_h: Some(0), ..SectorSpec::new(dim, weight) }
    }

    pub fn with_budget(mut self, budget: usize) -> SectorSpec {
        self.budget = budget;
        self
    }

    pub fn key(&self) -> String {
        let mut s = format!("D={} w={}", self.dim, self.weight);
        if let Some(k) = self.order {
            s += &format!(" K={k}");
        }
        if self.max_h == Some(0) {
            s += " h^0";
        }
        s
    }
}

/// Basis of the kernel of a derivation on one sector.
#[derive(Clone, Debug, Serialize)]
pub struct KernelBasis<P> {
    pub sector: String,
    pub weight: usize,
    pub elements: Vec<P>,
    /// Top degree of each element.
    pub degrees: Vec<i32>,
    /// Number of kernel elements per (top) degree.
    pub per_degree: BTreeMap<i32, usize>,
}

impl<P> KernelBasis<P> {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }
}

/// A monomial `h^k · m` in a sector.
pub type SectorMonomial = (Monomial, usize);

/// All monomials of the sector, ordered by degree, then power of `h`, then
/// monomial.
pub fn enumerate_sector(alg: &Algebra, spec: &SectorSpec) -> Result<Vec<SectorMonomial>> {
    if spec.dim != alg.dim() {
        return Err(Error::InvalidDimension(spec.dim));
    }
    let mut pool: Vec<Gen> = Vec::new();
    if spec.e_count != Some(0) {
        pool.extend((0..spec.dim as u8).map(Gen::e));
    }
    for n in 1..=spec.weight {
        pool.extend(alg.basis(n)?.basis_words().iter().map(|&w| Gen::r(w)));
    }
    let max_h = spec.max_h.unwrap_or(usize::MAX).min(spec.weight / 2);
    let mut out = Vec::new();
    for k in 0..=max_h {
        let w = spec.weight - 2 * k;
        if w == 0 && !spec.include_scalars {
            continue;
        }
        let mut cur = Vec::new();
        collect(&pool, 0, w, spec, &mut cur, k, &mut out)?;
    }
    out.sort_by(|a, b| (a.0.degree(), a.1, &a.0).cmp(&(b.0.degree(), b.1, &b.0)));
    Ok(out)
}

fn collect(
    pool: &[Gen],
    start: usize,
    left: usize,
    spec: &SectorSpec,
    cur: &mut Vec<Gen>,
    k: usize,
    out: &mut Vec<SectorMonomial>,
) -> Result<()> {
    let order = cur.iter().filter(|g| !g.is_e()).count();
    let es = cur.len() - order;
    if left == 0 {
        let ok = spec.order.map_or(true, |o| o == order) && spec.e_count.map_or(true, |e| e == es);
        if ok {
            if out.len() >= spec.budget {
                return Err(Error::ResourceLimit(format!("sector {} exceeds {} monomials", spec.key(), spec.budget)));
            }
            out.push((Monomial(cur.iter().copied().collect()), k));
        }
        return Ok(());
    }
    for i in start..pool.len() {
        let g = pool[i];
        if g.weight() > left {
            break;
        }
        if !g.is_e() && (spec.order.is_some_and(|o| order >= o) || spec.max_order.is_some_and(|o| order >= o)) {
            continue;
        }
        if g.is_e() && spec.e_count.is_some_and(|e| es >= e) {
            continue;
        }
        cur.push(g);
        collect(pool, i, left - g.weight(), spec, cur, k, out)?;
        cur.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sector_counts() {
        let alg = Algebra::minkowski(4).unwrap();
        let w1 = enumerate_sector(&alg, &SectorSpec::new(4, 1)).unwrap();
        assert_eq!(w1.len(), 4);
        assert_eq!(enumerate_sector(&alg, &SectorSpec::new(4, 2)).unwrap().len(), 16);
        assert_eq!(enumerate_sector(&alg, &SectorSpec::new(4, 3)).unwrap().len(), 68);
        let with_scalar = SectorSpec { include_scalars: true, ..SectorSpec::new(4, 2) };
        assert_eq!(enumerate_sector(&alg, &with_scalar).unwrap().len(), 17);
    }

    #[test]
    fn budget_is_enforced() {
        let alg = Algebra::minkowski(4).unwrap();
        let spec = SectorSpec::new(4, 4).with_budget(10);
        assert!(matches!(enumerate_sector(&alg, &spec), Err(Error::ResourceLimit(_))));
    }
}
