//! Derived values recomputed by methods that share no code with the library:
//! dense rank of the shuffle relations, Lyndon counts by rotation, and an
//! explicit Dirac-matrix representation of the Clifford algebra.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use monodromy_core::clifford::{extract_pr, log_phi_expand, to_nc, verify_tensor_identity};
use monodromy_core::enveloping::Enveloping;
use monodromy_core::lie::classical_bracket;
use monodromy_core::word::{all_words, shuffle};
use monodromy_core::{Algebra, HPoly, Metric, Rational, TensorElement, Word};

fn dense_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for i in 0..rows.len() {
            if i != rank && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for k in c..ncols {
                    let x = &rows[rank][k] * &f;
                    rows[i][k] -= x;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `D^N − rank(span of proper shuffle sums)` by dense elimination.
fn quotient_dim_dense(n: usize, d: usize) -> usize {
    let words = all_words(n, d);
    let index: BTreeMap<Word, usize> = words.iter().enumerate().map(|(i, w)| (*w, i)).collect();
    let mut rows = Vec::new();
    for k in 1..=n / 2 {
        for u in all_words(k, d) {
            for v in all_words(n - k, d) {
                let mut row = vec![BigRational::zero(); words.len()];
                for w in shuffle(u, v) {
                    row[index[&w]] += BigRational::one();
                }
                rows.push(row);
            }
        }
    }
    words.len() - dense_rank(rows)
}

/// Words strictly smaller than all their proper rotations.
fn lyndon_count(n: usize, d: usize) -> usize {
    all_words(n, d).into_iter().filter(|w| (1..n).all(|r| w.rotate(r) > *w)).count()
}

#[test]
fn quotient_dimensions_three_ways() {
    for (d, nmax) in [(2, 6), (3, 5), (4, 4)] {
        let alg = Algebra::minkowski(d).unwrap();
        for n in 1..=nmax {
            let dense = quotient_dim_dense(n, d);
            assert_eq!(alg.basis(n).unwrap().len(), dense, "D={d} N={n}");
            assert_eq!(lyndon_count(n, d), dense, "D={d} N={n}");
        }
    }
    let alg = Algebra::minkowski(4).unwrap();
    let expect = [4, 6, 20, 60, 204, 670, 2340, 8160];
    for (n, e) in (1..=8).zip(expect) {
        assert_eq!(lyndon_count(n, 4), e);
        assert_eq!(alg.basis(n).unwrap().len(), e);
    }
}

type C = (i64, i64);
type Mat = Vec<Vec<C>>;

fn cmul(a: C, b: C) -> C {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = vec![vec![(0, 0); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == (0, 0) {
                continue;
            }
            for j in 0..n {
                let p = cmul(a[i][k], b[k][j]);
                out[i][j].0 += p.0;
                out[i][j].1 += p.1;
            }
        }
    }
    out
}

fn mat_lin(a: &Mat, x: i64, b: &Mat, y: i64) -> Mat {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(p, q)| (x * p.0 + y * q.0, x * p.1 + y * q.1)).collect())
        .collect()
}

fn kron(a: &Mat, b: &Mat) -> Mat {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![(0, 0); n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = cmul(a[i][j], b[k][l]);
                }
            }
        }
    }
    out
}

fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| if i == j { (1, 0) } else { (0, 0) }).collect()).collect()
}

/// Dirac representation with `Γ⁰² = 1`, `Γᵏ² = −1`.
fn dirac() -> Vec<Mat> {
    let z = (0, 0);
    let sigma: [[[C; 2]; 2]; 3] = [[[z, (1, 0)], [(1, 0), z]], [[z, (0, -1)], [(0, 1), z]], [[(1, 0), z], [z, (-1, 0)]]];
    let mut g0 = identity(4);
    g0[2][2] = (-1, 0);
    g0[3][3] = (-1, 0);
    let mut out = vec![g0];
    for s in sigma {
        let mut g = vec![vec![z; 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                g[i][j + 2] = s[i][j];
                g[i + 2][j] = (-s[i][j].0, -s[i][j].1);
            }
        }
        out.push(g);
    }
    out
}

fn trace(a: &Mat) -> C {
    a.iter().enumerate().fold((0, 0), |t, (i, r)| (t.0 + r[i].0, t.1 + r[i].1))
}

#[test]
fn tensor_identity_in_the_dirac_representation() {
    let g = dirac();
    let eta = [1, -1, -1, -1];
    let one = identity(4);
    for mu in 0..4 {
        for nu in 0..4 {
            let ac = mat_lin(&mat_mul(&g[mu], &g[nu]), 1, &mat_mul(&g[nu], &g[mu]), 1);
            let expect = if mu == nu { mat_lin(&one, 2 * eta[mu], &one, 0) } else { mat_lin(&one, 0, &one, 0) };
            assert_eq!(ac, expect);
        }
    }
    let comm = |a: &Mat, b: &Mat| mat_lin(&mat_mul(a, b), 1, &mat_mul(b, a), -1);
    let zero16 = mat_lin(&identity(16), 0, &identity(16), 0);
    let mut t = zero16.clone();
    let mut cas = zero16.clone();
    for a in 0..4 {
        cas = mat_lin(&cas, 1, &kron(&g[a], &g[a]), eta[a]);
        for b in 0..4 {
            let lower = comm(&g[a], &g[b]);
            t = mat_lin(&t, 1, &kron(&lower, &lower), eta[a] * eta[b]);
        }
    }
    for mu in 0..4 {
        let lhs = comm(&t, &kron(&g[mu], &one));
        let rhs = comm(&cas, &kron(&one, &g[mu]));
        assert_eq!(lhs, mat_lin(&rhs, 8, &zero16, 0), "mu={mu}");
    }
    assert!(verify_tensor_identity(&Metric::minkowski(4).unwrap()).passed());
}

/// `𝕡⁽ⁿ⁾_μ` and `𝕣⁽ⁿ⁾_{μν}` read off by traces against Dirac matrices.
fn pr_by_traces(alg: &Algebra, n: usize) -> (Vec<TensorElement>, BTreeMap<(usize, usize), TensorElement>) {
    let g = dirac();
    let eta = [1i64, -1, -1, -1];
    let mut p_raw: Vec<Vec<(Word, HPoly)>> = vec![Vec::new(); 4];
    let mut r_raw: BTreeMap<(usize, usize), Vec<(Word, HPoly)>> = BTreeMap::new();
    for w in all_words(n, 4) {
        let m = w.letters().fold(identity(4), |acc, l| mat_mul(&acc, &g[l as usize]));
        for mu in 0..4 {
            let (re, im) = trace(&mat_mul(&m, &g[mu]));
            assert_eq!(im, 0);
            if re != 0 {
                p_raw[mu].push((w, HPoly::constant(Rational::new(re, 4 * eta[mu]))));
            }
            for nu in mu + 1..4 {
                let (re, im) = trace(&mat_mul(&m, &mat_mul(&g[nu], &g[mu])));
                assert_eq!(im, 0);
                if re != 0 {
                    let c = Rational::new(re, 8 * eta[mu] * eta[nu]);
                    r_raw.entry((mu, nu)).or_default().push((w, HPoly::constant(c)));
                }
            }
        }
    }
    let canon = |v: &Vec<(Word, HPoly)>| TensorElement::from_raw(alg, v.iter().map(|(w, c)| (*w, c))).unwrap();
    let p = p_raw.iter().map(canon).collect();
    let r = r_raw.iter().map(|(k, v)| (*k, canon(v))).collect();
    (p, r)
}

#[test]
fn p3_bracket_gives_minus_eight_r4() {
    let alg = Algebra::minkowski(4).unwrap();
    let (p3, _) = pr_by_traces(&alg, 3);
    let (_, r4) = pr_by_traces(&alg, 4);
    let mut nonzero = 0;
    for mu in 0..4 {
        for nu in mu + 1..4 {
            let lhs = classical_bracket(&alg, &p3[mu], &p3[nu]);
            let rhs = r4.get(&(mu, nu)).cloned().unwrap_or_default().scale(&Rational::from(-8));
            assert_eq!(lhs, rhs, "mu={mu} nu={nu}");
            nonzero += !lhs.is_zero() as usize;
        }
    }
    assert_eq!(nonzero, 6);

    // The library's blade bookkeeping reproduces the trace extraction.
    let s = extract_pr(&log_phi_expand(&alg, 4).unwrap(), 4).unwrap();
    for mu in 0..4u8 {
        assert_eq!(s.p(3, mu), to_nc(&p3[mu as usize]));
        for nu in mu + 1..4 {
            assert_eq!(s.r(4, mu, nu), to_nc(&r4[&(mu as usize, nu as usize)]));
        }
    }
}

#[test]
fn lowest_b_charges() {
    let alg = Algebra::minkowski(4).unwrap();
    let env = Enveloping::new(&alg);
    let s = extract_pr(&log_phi_expand(&alg, 4).unwrap(), 4).unwrap();
    let b2 = monodromy_core::clifford::b_series(&env, &s, 2).unwrap();
    let mut expect = monodromy_core::NcPoly::zero();
    for mu in 0..4u8 {
        let p = monodromy_core::NcPoly::gen(monodromy_core::Gen::r(Word::single(mu)));
        expect.add_scaled(&env.mul(&p, &p), 0, &Rational::from(alg.metric().diag(mu)));
    }
    assert_eq!(b2, expect);
    assert!(monodromy_core::clifford::b_series(&env, &s, 3).unwrap().is_zero());
    assert!(monodromy_core::clifford::b_series(&env, &s, 5).unwrap().is_zero());
}
