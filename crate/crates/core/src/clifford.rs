//! Clifford sector: the expansion of log Φ with Clifford parameters, the
//! 𝕡/𝕣 series, their brackets, the charges B⁽ⁿ⁾ and δ log Φ.
//!
//! Multivectors are indexed by bitmasks `A ⊆ {0,…,D−1}`; the blade `A` stands
//! for the ordered product `Γ^{a₁}⋯Γ^{a_k}` with `a₁ < … < a_k`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::enveloping::Enveloping;
use crate::error::{Error, Result};
use crate::hpoly::HPoly;
use crate::lie::TensorElement;
use crate::metric::Metric;
use crate::poly::{Monomial, NcPoly};
use crate::rational::Rational;
use crate::report::SectorReport;
use crate::word::{all_words, Gen, Word};

pub type Blade = u16;

/// `Γ^A Γ^B = sign · Γ^{A △ B}`, with repeated indices contracted by η.
pub fn blade_mul(metric: &Metric, a: Blade, b: Blade) -> (i64, Blade) {
    let mut swaps = 0;
    let mut bits = b;
    while bits != 0 {
        let k = bits.trailing_zeros();
        swaps += (a >> (k + 1)).count_ones();
        bits &= bits - 1;
    }
    let mut sign = if swaps % 2 == 0 { 1 } else { -1 };
    let mut common = a & b;
    while common != 0 {
        let k = common.trailing_zeros() as u8;
        sign *= metric.diag(k);
        common &= common - 1;
    }
    (sign, a ^ b)
}

pub fn grade(a: Blade) -> usize {
    a.count_ones() as usize
}

/// Multivector with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CliffordElement(pub BTreeMap<Blade, Rational>);

impl CliffordElement {
    pub fn scalar(c: Rational) -> CliffordElement {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(0, c);
        }
        CliffordElement(m)
    }

    /// `Γ^μ`.
    pub fn gamma(mu: u8) -> CliffordElement {
        CliffordElement([(1 << mu, Rational::ONE)].into_iter().collect())
    }

    /// `Γ_μ = η_{μμ} Γ^μ`.
    pub fn gamma_lower(metric: &Metric, mu: u8) -> CliffordElement {
        CliffordElement([(1 << mu, Rational::from(metric.diag(mu)))].into_iter().collect())
    }

    pub fn mul(&self, metric: &Metric, other: &CliffordElement) -> CliffordElement {
        let mut out: BTreeMap<Blade, Rational> = BTreeMap::new();
        for (a, x) in &self.0 {
            for (b, y) in &other.0 {
                let (s, c) = blade_mul(metric, *a, *b);
                out.entry(c).or_default().add_mul(&(x * y), &Rational::from(s));
            }
        }
        out.retain(|_, c| !c.is_zero());
        CliffordElement(out)
    }

    pub fn sub(&self, other: &CliffordElement) -> CliffordElement {
        let mut out = self.0.clone();
        for (a, y) in &other.0 {
            *out.entry(*a).or_default() -= y;
        }
        out.retain(|_, c| !c.is_zero());
        CliffordElement(out)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

/// Element of Cl ⊗ Cl.
type Tensor2 = BTreeMap<(Blade, Blade), Rational>;

fn t2_mul(metric: &Metric, x: &Tensor2, y: &Tensor2) -> Tensor2 {
    let mut out = Tensor2::new();
    for ((a1, a2), p) in x {
        for ((b1, b2), q) in y {
            let (s1, c1) = blade_mul(metric, *a1, *b1);
            let (s2, c2) = blade_mul(metric, *a2, *b2);
            out.entry((c1, c2)).or_default().add_mul(&(p * q), &Rational::from(s1 * s2));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn t2_commutator(metric: &Metric, x: &Tensor2, y: &Tensor2) -> Tensor2 {
    let mut out = t2_mul(metric, x, y);
    for (k, c) in t2_mul(metric, y, x) {
        *out.entry(k).or_default() -= &c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `[[Γ_α,Γ_β] ⊗ [Γ^α,Γ^β], Γ^μ ⊗ 1] = 8 [Γ_α ⊗ Γ^α, 1 ⊗ Γ^μ]` for every μ.
pub fn verify_tensor_identity(metric: &Metric) -> SectorReport {
    let d = metric.dim() as u8;
    let comm = |x: &CliffordElement, y: &CliffordElement| x.mul(metric, y).sub(&y.mul(metric, x));
    let mut t = Tensor2::new();
    let mut casimir = Tensor2::new();
    for a in 0..d {
        let la = CliffordElement::gamma_lower(metric, a);
        for (x, p) in &la.0 {
            *casimir.entry((*x, 1 << a)).or_default() += p;
        }
        for b in 0..d {
            let left = comm(&la, &CliffordElement::gamma_lower(metric, b));
            let right = comm(&CliffordElement::gamma(a), &CliffordElement::gamma(b));
            for (x, p) in &left.0 {
                for (y, q) in &right.0 {
                    *t.entry((*x, *y)).or_default() += p * q;
                }
            }
        }
    }
    t.retain(|_, c| !c.is_zero());
    let mut rep = SectorReport::new("clifford-tensor-identity", format!("D={}", metric.dim()));
    for mu in 0..d {
        let g_left: Tensor2 = [((1 << mu, 0), Rational::ONE)].into_iter().collect();
        let g_right: Tensor2 = [((0, 1 << mu), Rational::ONE)].into_iter().collect();
        let lhs = t2_commutator(metric, &t, &g_left);
        let mut rhs = t2_commutator(metric, &casimir, &g_right);
        rhs.values_mut().for_each(|c| *c *= Rational::from(8));
        rep.cases += 1;
        if lhs != rhs {
            rep.fail(format!("mu={mu}: lhs {lhs:?} rhs {rhs:?}"));
        }
    }
    rep
}

/// Orders `1..=max_order` of `log Φ_{λΓ} = Σ_N λ^N Σ_{|w|=N} R_w Γ^{w₁}⋯Γ^{w_N}`,
/// each as a map from blade to canonical tensor coefficient.
#[derive(Clone, Debug)]
pub struct LogPhi {
    pub max_order: usize,
    orders: Vec<BTreeMap<Blade, TensorElement>>,
}

impl LogPhi {
    pub fn order(&self, n: usize) -> &BTreeMap<Blade, TensorElement> {
        &self.orders[n]
    }

    /// Components of grade other than 1 or 2, which must all vanish.
    pub fn grade_violations(&self) -> Vec<(usize, Blade)> {
        let mut v = Vec::new();
        for n in 1..=self.max_order {
            for (a, t) in &self.orders[n] {
                if !(1..=2).contains(&grade(*a)) && !t.is_zero() {
                    v.push((n, *a));
                }
            }
        }
        v
    }
}

pub fn log_phi_expand(alg: &Algebra, max_order: usize) -> Result<LogPhi> {
    let metric = alg.metric();
    let mut orders = vec![BTreeMap::new()];
    for n in 1..=max_order {
        let basis = alg.basis(n)?;
        let words = all_words(n, alg.dim());
        let chunks: Vec<FxHashMap<Blade, FxHashMap<Word, Rational>>> = words
            .par_chunks(4096)
            .map(|ws| {
                let mut acc: FxHashMap<Blade, FxHashMap<Word, Rational>> = FxHashMap::default();
                for &w in ws {
                    let (mut sign, mut blade) = (1i64, 0 as Blade);
                    for l in w.letters() {
                        let (s, b) = blade_mul(metric, blade, 1 << l);
                        sign *= s;
                        blade = b;
                    }
                    basis.reduce_into(w, &Rational::from(sign), acc.entry(blade).or_default());
                }
                acc
            })
            .collect();
        let mut merged: BTreeMap<Blade, FxHashMap<Word, Rational>> = BTreeMap::new();
        for c in chunks {
            for (b, m) in c {
                let e = merged.entry(b).or_default();
                for (w, x) in m {
                    *e.entry(w).or_default() += x;
                }
            }
        }
        let order: BTreeMap<Blade, TensorElement> = merged
            .into_iter()
            .map(|(b, m)| (b, TensorElement::from_scalar_terms(m)))
            .filter(|(_, t)| !t.is_zero())
            .collect();
        orders.push(order);
    }
    Ok(LogPhi { max_order, orders })
}

/// `log Φ = 𝕡_μ(λ) Γ^μ + 𝕣_{μν}(λ) ½[Γ^μ, Γ^ν]`, coefficients as elements of U(ℜ̂).
#[derive(Clone, Debug)]
pub struct PrSeries {
    pub dim: usize,
    pub max_order: usize,
    p: Vec<Vec<NcPoly>>,
    r: Vec<BTreeMap<(u8, u8), NcPoly>>,
}

pub fn to_nc(t: &TensorElement) -> NcPoly {
    let mut p = NcPoly::zero();
    for (w, c) in t.terms() {
        p.add_term(Monomial::single(Gen::r(*w)), c);
    }
    p
}

impl PrSeries {
    /// `𝕡⁽ⁿ⁾_μ`.
    pub fn p(&self, n: usize, mu: u8) -> NcPoly {
        self.p.get(n).map(|v| v[mu as usize].clone()).unwrap_or_default()
    }

    /// `𝕣⁽ⁿ⁾_{μν}`, antisymmetric.
    pub fn r(&self, n: usize, mu: u8, nu: u8) -> NcPoly {
        let Some(m) = self.r.get(n) else { return NcPoly::zero() };
        if mu < nu {
            m.get(&(mu, nu)).cloned().unwrap_or_default()
        } else if nu < mu {
            m.get(&(nu, mu)).map(|x| x.scale(&-Rational::ONE)).unwrap_or_default()
        } else {
            NcPoly::zero()
        }
    }
}

/// Reads off 𝕡 and 𝕣 and checks that 𝕡 only has odd and 𝕣 only even orders.
pub fn extract_pr(ls: &LogPhi, dim: usize) -> Result<PrSeries> {
    if let Some((n, a)) = ls.grade_violations().first() {
        return Err(Error::NoSolution(format!("order {n} has a grade {} component", grade(*a))));
    }
    let half = Rational::new(1, 2);
    let mut p = vec![vec![NcPoly::zero(); dim]];
    let mut r = vec![BTreeMap::new()];
    for n in 1..=ls.max_order {
        let mut pn = vec![NcPoly::zero(); dim];
        let mut rn = BTreeMap::new();
        for (a, t) in ls.order(n) {
            match grade(*a) {
                1 => pn[a.trailing_zeros() as usize] = to_nc(t),
                _ => {
                    let mu = a.trailing_zeros() as u8;
                    let nu = (15 - a.leading_zeros()) as u8;
                    rn.insert((mu, nu), to_nc(t).scale(&half));
                }
            }
        }
        let parity_ok = if n % 2 == 1 { rn.is_empty() } else { pn.iter().all(|x| x.is_zero()) };
        if !parity_ok {
            return Err(Error::NoSolution(format!("order {n} violates the parity pattern")));
        }
        p.push(pn);
        r.push(rn);
    }
    Ok(PrSeries { dim, max_order: ls.max_order, p, r })
}

/// Grade pattern, parity and antisymmetry of log Φ up to `max_order`.
pub fn verify_grades(ls: &LogPhi) -> SectorReport {
    let mut rep = SectorReport::new("clifford-grades", format!("order<={}", ls.max_order));
    rep.cases = (1..=ls.max_order).map(|n| ls.order(n).len() as u64).sum();
    if let Some((n, a)) = ls.grade_violations().first() {
        rep.fail(format!("order {n}: nonzero component on blade {a:#b} of grade {}", grade(*a)));
        return rep;
    }
    for n in 1..=ls.max_order {
        let bad = ls.order(n).keys().find(|a| grade(**a) != if n % 2 == 1 { 1 } else { 2 });
        if let Some(a) = bad {
            rep.fail(format!("order {n}: parity violated on blade {a:#b}"));
            break;
        }
    }
    rep
}

/// Truncated bivariate series `Σ c_{ab} λ^a κ^b`.
type Bivariate = BTreeMap<(usize, usize), NcPoly>;

/// Expands `λ^{pa} κ^{pb} (g(λ) − g(κ)) / (λ² − κ²)` with
/// `g(λ) = λ^{−shift} f(λ)`, through `(g_{2m} terms) Σ_{i+j=m−1} λ^{2i} κ^{2j}`.
/// Returns the odd coefficients of `g`, whose presence would leave a
/// remainder in the division.
fn kernel_expand(
    f: impl Fn(usize) -> NcPoly,
    shift: usize,
    pa: usize,
    pb: usize,
    cutoff: usize,
    out: &mut Bivariate,
    scale: &HPoly,
) -> Vec<usize> {
    let mut remainder = Vec::new();
    for k in 0..=cutoff {
        let g = f(k + shift);
        if g.is_zero() {
            continue;
        }
        if k % 2 == 1 {
            remainder.push(k + shift);
            continue;
        }
        let m = k / 2;
        for i in 0..m {
            let j = m - 1 - i;
            let (a, b) = (2 * i + pa, 2 * j + pb);
            if a + b > cutoff {
                continue;
            }
            let e = out.entry((a, b)).or_default();
            for (mono, c) in g.terms() {
                e.add_term(mono.clone(), &(c * scale));
            }
        }
    }
    remainder
}

#[derive(Clone, Debug, Default, Serialize)]
struct PrStats {
    coefficients: u64,
    nonzero_lhs: u64,
}

/// The three bracket relations among 𝕡 and 𝕣, coefficient by coefficient in
/// `λ^a κ^b` for `a + b ≤ cutoff`.
pub fn verify_pr_brackets(env: &Enveloping, s: &PrSeries, cutoff: usize) -> Result<SectorReport> {
    if s.max_order + 1 < cutoff {
        return Err(Error::DegreeExceeded { found: cutoff as i32, max: s.max_order as i32 + 1 });
    }
    let alg = env.algebra();
    let eta = |a: u8, b: u8| alg.metric().eta(a, b);
    let d = s.dim as u8;
    let h = |c: i64| HPoly::monomial(1, Rational::from(c));
    let mut rep = SectorReport::new("pr-brackets", format!("D={} order<={cutoff}", s.dim));
    let mut remainders: Vec<String> = Vec::new();

    type Job<'a> = (String, Box<dyn Fn(usize, usize) -> NcPoly + Sync + 'a>, Bivariate);
    let mut jobs: Vec<Job> = Vec::new();

    for mu in 0..d {
        for nu in 0..d {
            let mut rhs = Bivariate::new();
            let rem = kernel_expand(|n| s.r(n, mu, nu), 2, 3, 3, cutoff, &mut rhs, &h(-8));
            remainders.extend(rem.iter().map(|n| format!("r{n}_{mu}{nu}")));
            jobs.push((
                format!("[p_{mu}, p_{nu}]"),
                Box::new(move |a, b| env.commutator(&s.p(a, mu), &s.p(b, nu))),
                rhs,
            ));
        }
    }
    for tau in 0..d {
        for mu in 0..d {
            for nu in mu + 1..d {
                let mut rhs = Bivariate::new();
                for (e, x, sign) in [(eta(tau, mu), nu, -2), (eta(tau, nu), mu, 2)] {
                    if e != 0 {
                        let rem = kernel_expand(|n| s.p(n, x), 1, 3, 2, cutoff, &mut rhs, &h(sign * e));
                        remainders.extend(rem.iter().map(|n| format!("p{n}_{x}")));
                    }
                }
                jobs.push((
                    format!("[p_{tau}, r_{mu}{nu}]"),
                    Box::new(move |a, b| env.commutator(&s.p(a, tau), &s.r(b, mu, nu))),
                    rhs,
                ));
            }
        }
    }
    for sg in 0..d {
        for tau in sg + 1..d {
            for mu in 0..d {
                for nu in mu + 1..d {
                    let mut rhs = Bivariate::new();
                    let terms = [
                        (eta(tau, mu), sg, nu, -2),
                        (eta(tau, nu), sg, mu, 2),
                        (eta(sg, mu), tau, nu, 2),
                        (eta(sg, nu), tau, mu, -2),
                    ];
                    for (e, x, y, sign) in terms {
                        if e != 0 {
                            let rem = kernel_expand(|n| s.r(n, x, y), 0, 2, 2, cutoff, &mut rhs, &h(sign * e));
                            remainders.extend(rem.iter().map(|n| format!("r{n}_{x}{y}")));
                        }
                    }
                    jobs.push((
                        format!("[r_{sg}{tau}, r_{mu}{nu}]"),
                        Box::new(move |a, b| env.commutator(&s.r(a, sg, tau), &s.r(b, mu, nu))),
                        rhs,
                    ));
                }
            }
        }
    }

    let mut grid = Vec::new();
    for (ji, _) in jobs.iter().enumerate() {
        for a in 1..cutoff {
            for b in 1..=cutoff - a {
                grid.push((ji, a, b));
            }
        }
    }
    let results: Vec<(bool, Option<String>, Option<Rational>)> = grid
        .par_iter()
        .map(|&(ji, a, b)| {
            let (name, lhs_fn, rhs) = &jobs[ji];
            let lhs = lhs_fn(a, b);
            let rhs = rhs.get(&(a, b)).cloned().unwrap_or_default();
            if lhs == rhs {
                return (!lhs.is_zero(), None, None);
            }
            (true, Some(format!("{name} at lambda^{a} kappa^{b}: lhs {lhs} rhs {rhs}")), proportionality(&lhs, &rhs))
        })
        .collect();
    let mut stats = PrStats { coefficients: grid.len() as u64, ..Default::default() };
    let mut ratios: Vec<Rational> = Vec::new();
    for (nonzero, bad, ratio) in results {
        stats.nonzero_lhs += nonzero as u64;
        if let Some(b) = bad {
            rep.fail(b);
            ratios.extend(ratio);
        }
    }
    if !remainders.is_empty() {
        rep.fail(format!("kernel division leaves a remainder: {}", remainders.join(", ")));
    }
    if cutoff >= 6 {
        let mut nontrivial = 0;
        for mu in 0..d {
            for nu in 0..d {
                let lhs = env.commutator(&s.p(3, mu), &s.p(3, nu));
                let mut rhs = NcPoly::zero();
                for (m, c) in s.r(4, mu, nu).terms() {
                    rhs.add_term(m.clone(), &(c * &h(-8)));
                }
                if lhs != rhs {
                    rep.fail(format!("[p3_{mu}, p3_{nu}] = {lhs}, expected -8h r4_{mu}{nu} = {rhs}"));
                }
                nontrivial += !lhs.is_zero() as usize;
            }
        }
        if nontrivial == 0 {
            rep.fail("[p3, p3] vanishes identically");
        }
        rep.set_detail("p3_p3_nonzero_pairs", nontrivial);
    }
    ratios.sort();
    ratios.dedup();
    if ratios.is_empty() && rep.passed() {
        rep.set_detail("r_normalization", "1");
    } else if !ratios.is_empty() {
        rep.set_detail("r_rescaling_candidates", ratios.iter().map(|r| r.to_string()).collect::<Vec<_>>());
    }
    rep.cases = stats.coefficients;
    rep.set_detail("nonzero_coefficients", stats.nonzero_lhs);
    Ok(rep)
}

/// `c` with `lhs = c · rhs`, if any.
fn proportionality(lhs: &NcPoly, rhs: &NcPoly) -> Option<Rational> {
    let (l, r): (BTreeMap<_, _>, BTreeMap<_, _>) = (lhs.coordinates().collect(), rhs.coordinates().collect());
    if l.len() != r.len() || l.is_empty() {
        return None;
    }
    let (k, x) = l.iter().next()?;
    let c = x / r.get(k)?;
    l.iter().all(|(k, x)| r.get(k).is_some_and(|y| &(y * &c) == x)).then_some(c)
}

/// `B⁽ⁿ⁾ = Σ_{a+b=n} (𝕡⁽ᵃ⁾_μ 𝕡⁽ᵇ⁾μ − 2 𝕣⁽ᵃ⁾_{μν} 𝕣⁽ᵇ⁾μν)`.
pub fn b_series(env: &Enveloping, s: &PrSeries, n: usize) -> Result<NcPoly> {
    if n > s.max_order + 1 {
        return Err(Error::DegreeExceeded { found: n as i32, max: s.max_order as i32 + 1 });
    }
    let metric = env.algebra().metric();
    let d = s.dim as u8;
    let mut out = NcPoly::zero();
    for a in 1..n {
        let b = n - a;
        for mu in 0..d {
            let up = Rational::from(metric.diag(mu));
            out.add_scaled(&env.mul(&s.p(a, mu), &s.p(b, mu)), 0, &up);
            for nu in 0..d {
                if mu == nu {
                    continue;
                }
                let c = Rational::from(-2 * metric.diag(mu) * metric.diag(nu));
                out.add_scaled(&env.mul(&s.r(a, mu, nu), &s.r(b, mu, nu)), 0, &c);
            }
        }
    }
    Ok(out)
}

/// `[B⁽ⁿ⁾, B⁽ᵐ⁾] = 0` for even `n ≤ m` with `n + m ≤ cutoff`.
pub fn verify_b_commutativity(env: &Enveloping, s: &PrSeries, cutoff: usize) -> Result<SectorReport> {
    let mut rep = SectorReport::new("b-commute", format!("D={} n+m<={cutoff}", s.dim));
    let orders: Vec<usize> = (2..cutoff).step_by(2).collect();
    let bs: BTreeMap<usize, NcPoly> = orders.iter().map(|&n| Ok((n, b_series(env, s, n)?))).collect::<Result<_>>()?;
    let mut pairs = Vec::new();
    for &n in &orders {
        for &m in &orders {
            if n <= m && n + m <= cutoff {
                pairs.push((n, m));
            }
        }
    }
    let results: Vec<Option<String>> = pairs
        .par_iter()
        .map(|&(n, m)| {
            let c = env.commutator(&bs[&n], &bs[&m]);
            (!c.is_zero()).then(|| format!("[B{n}, B{m}] = {c}"))
        })
        .collect();
    rep.cases = pairs.len() as u64;
    for r in results.into_iter().flatten() {
        rep.fail(r);
    }
    rep.set_detail("pairs", pairs.iter().map(|(n, m)| format!("({n},{m})")).collect::<Vec<_>>());
    rep.set_detail("terms", bs.iter().map(|(n, b)| (format!("B{n}"), b.len())).collect::<BTreeMap<_, _>>());
    Ok(rep)
}

type CliffordPoly = BTreeMap<Blade, NcPoly>;

fn add_to(out: &mut CliffordPoly, blade: Blade, p: &NcPoly, c: &Rational) {
    let e = out.entry(blade).or_default();
    e.add_scaled(p, 0, c);
    if e.is_zero() {
        out.remove(&blade);
    }
}

/// `δ L_N = Σ_{μ,B} (e_μ X_B ⊗ Γ^μ Γ^B − X_B e_μ ⊗ Γ^B Γ^μ)` for
/// `L_{N−1} = Σ_B X_B Γ^B`, order by order up to `cutoff`.
pub fn verify_delta_logphi(env: &Enveloping, ls: &LogPhi, cutoff: usize) -> Result<SectorReport> {
    if cutoff > ls.max_order {
        return Err(Error::DegreeExceeded { found: cutoff as i32, max: ls.max_order as i32 });
    }
    let metric = env.algebra().metric();
    let d = env.algebra().dim() as u8;
    let mut rep = SectorReport::new("delta-logphi", format!("D={d} order<={cutoff}"));
    for n in 1..=cutoff {
        let mut lhs = CliffordPoly::new();
        for (a, t) in ls.order(n) {
            add_to(&mut lhs, *a, &env.delta(&to_nc(t))?, &Rational::ONE);
        }
        let mut rhs = CliffordPoly::new();
        if n >= 2 {
            for (b, t) in ls.order(n - 1) {
                let x = to_nc(t);
                for mu in 0..d {
                    let e = NcPoly::gen(Gen::e(mu));
                    let (s1, c1) = blade_mul(metric, 1 << mu, *b);
                    add_to(&mut rhs, c1, &env.mul(&e, &x), &Rational::from(s1));
                    let (s2, c2) = blade_mul(metric, *b, 1 << mu);
                    add_to(&mut rhs, c2, &env.mul(&x, &e), &Rational::from(-s2));
                }
            }
        }
        rep.cases += 1;
        if lhs != rhs {
            let blade = lhs.keys().chain(rhs.keys()).find(|k| lhs.get(k) != rhs.get(k)).copied().unwrap_or(0);
            rep.fail(format!(
                "order {n}, blade {blade:#b}: delta side {} vs commutator side {}",
                lhs.get(&blade).cloned().unwrap_or_default(),
                rhs.get(&blade).cloned().unwrap_or_default()
            ));
            break;
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clifford_relations() {
        let m = Metric::minkowski(4).unwrap();
        for mu in 0..4u8 {
            let g = CliffordElement::gamma(mu);
            assert_eq!(g.mul(&m, &g), CliffordElement::scalar(Rational::from(m.diag(mu))));
        }
        let (g0, g1) = (CliffordElement::gamma(0), CliffordElement::gamma(1));
        let anti = g0.mul(&m, &g1);
        let mut sum = anti.0.clone();
        for (k, v) in g1.mul(&m, &g0).0 {
            *sum.entry(k).or_default() += v;
        }
        sum.retain(|_, c| !c.is_zero());
        assert!(sum.is_empty());
        assert!(verify_tensor_identity(&m).passed());
    }

    #[test]
    fn low_orders() {
        let alg = Algebra::minkowski(4).unwrap();
        let ls = log_phi_expand(&alg, 4).unwrap();
        assert!(verify_grades(&ls).passed());
        let s = extract_pr(&ls, 4).unwrap();
        let w = |t: &str| Word::from_digits(t).unwrap();
        assert_eq!(s.p(1, 2), NcPoly::gen(Gen::r(w("2"))));
        assert_eq!(s.r(2, 0, 1), NcPoly::gen(Gen::r(w("01"))));
        assert_eq!(s.r(2, 1, 0), NcPoly::gen(Gen::r(w("01"))).scale(&-Rational::ONE));
        assert!(s.p(2, 0).is_zero() && s.r(3, 0, 1).is_zero());
        assert!(!ls.order(2).contains_key(&0));
    }

    #[test]
    fn relations_to_order_six() {
        let alg = Algebra::minkowski(3).unwrap();
        let env = Enveloping::new(&alg);
        let ls = log_phi_expand(&alg, 5).unwrap();
        let s = extract_pr(&ls, 3).unwrap();
        let rep = verify_pr_brackets(&env, &s, 6).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert!(verify_b_commutativity(&env, &s, 6).unwrap().passed());
        assert!(verify_delta_logphi(&env, &ls, 5).unwrap().passed());
    }
}
