//! Independent reference computations shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;

use gradlie::format;
use gradlie::groups::GroupElement;
use gradlie::liealg::GradedLieAlgebra;
use gradlie::linear::Q;
use gradlie::pbw::SuElement;
use num_traits::Zero;
use rand::Rng;

pub type Poly = BTreeMap<Vec<usize>, Q>;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn load(name: &str) -> GradedLieAlgebra {
    format::parse_algebra(&fixture(name))
        .unwrap_or_else(|e| panic!("{name}: {e}"))
        .algebra
}

/// Every nonempty algebra fixture.
pub const ALGEBRAS: &[&str] = &[
    "sl2.alg",
    "c2c2_abelian.alg",
    "c2c2_vars.alg",
    "heisenberg_trivial.alg",
    "heisenberg_z2.alg",
    "free3_abelian.alg",
    "trivial2.alg",
    "s3_pair.alg",
];

pub fn add(p: &mut Poly, w: Vec<usize>, c: &Q) {
    let e = p.entry(w.clone()).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        p.remove(&w);
    }
}

pub fn from_su(x: &SuElement) -> Poly {
    x.iter()
        .map(|(m, c)| (m.indices().to_vec(), c.clone()))
        .collect()
}

/// Pairwise commutation of the letter degrees, checked one pair at a time.
pub fn letters_commute(alg: &GradedLieAlgebra, w: &[usize]) -> bool {
    let g = alg.group();
    for a in 0..w.len() {
        for b in a + 1..w.len() {
            let (x, y) = (alg.degree(w[a]), alg.degree(w[b]));
            let xy = g.mul(x, y).unwrap();
            let yx = g.mul(y, x).unwrap();
            if xy != yx {
                return false;
            }
        }
    }
    true
}

/// Structure constants as a dense table `c[i][j][k]` read straight off the
/// bracket, with antisymmetry filled in.
pub fn dense_constants(alg: &GradedLieAlgebra) -> Vec<Vec<Vec<Q>>> {
    let n = alg.dim();
    let mut c = vec![vec![vec![Q::zero(); n]; n]; n];
    for ((i, j), v) in alg.structure_constants() {
        for (&k, x) in v.iter() {
            c[*i][*j][k] = x.clone();
            c[*j][*i][k] = -x.clone();
        }
    }
    c
}

fn descents(w: &[usize]) -> Vec<usize> {
    (0..w.len().saturating_sub(1))
        .filter(|&p| w[p] > w[p + 1])
        .collect()
}

/// One rewrite `u a b v -> u b a v + u [a, b] v` at position `p`.
fn rewrite(c: &[Vec<Vec<Q>>], w: &[usize], p: usize) -> Vec<(Vec<usize>, Q)> {
    let (a, b) = (w[p], w[p + 1]);
    let mut swapped = w.to_vec();
    swapped.swap(p, p + 1);
    let mut out = vec![(swapped, Q::from_integer(1.into()))];
    for (k, x) in c[a][b].iter().enumerate() {
        if !x.is_zero() {
            let mut nw = w[..p].to_vec();
            nw.push(k);
            nw.extend_from_slice(&w[p + 2..]);
            out.push((nw, x.clone()));
        }
    }
    out
}

/// Straightening with every descent tried at every word; reports the word
/// if two choices disagree. Memoized per word.
pub struct ConfluenceOracle<'a> {
    alg: &'a GradedLieAlgebra,
    c: Vec<Vec<Vec<Q>>>,
    memo: HashMap<Vec<usize>, Poly>,
    pub words_checked: usize,
}

impl<'a> ConfluenceOracle<'a> {
    pub fn new(alg: &'a GradedLieAlgebra) -> Self {
        Self {
            alg,
            c: dense_constants(alg),
            memo: HashMap::new(),
            words_checked: 0,
        }
    }

    pub fn sigma(&mut self, w: &[usize]) -> Result<Poly, String> {
        if let Some(p) = self.memo.get(w) {
            return Ok(p.clone());
        }
        self.words_checked += 1;
        let result = if !letters_commute(self.alg, w) {
            Poly::new()
        } else {
            let ds = descents(w);
            if ds.is_empty() {
                Poly::from([(w.to_vec(), Q::from_integer(1.into()))])
            } else {
                let mut first: Option<Poly> = None;
                for p in ds {
                    let mut acc = Poly::new();
                    for (nw, x) in rewrite(&self.c, w, p) {
                        for (m, y) in self.sigma(&nw)? {
                            add(&mut acc, m, &(&x * &y));
                        }
                    }
                    match &first {
                        None => first = Some(acc),
                        Some(f) if *f != acc => {
                            return Err(format!("word {w:?}: descent at {p} disagrees"));
                        }
                        Some(_) => {}
                    }
                }
                first.expect("at least one descent")
            }
        };
        self.memo.insert(w.to_vec(), result.clone());
        Ok(result)
    }
}

/// Straightening that picks a random descent at every step.
pub fn sigma_random(
    alg: &GradedLieAlgebra,
    c: &[Vec<Vec<Q>>],
    w: &[usize],
    rng: &mut impl Rng,
) -> Poly {
    let mut out = Poly::new();
    let mut work: Vec<(Vec<usize>, Q)> = vec![(w.to_vec(), Q::from_integer(1.into()))];
    while let Some((w, x)) = work.pop() {
        if !letters_commute(alg, &w) {
            continue;
        }
        let ds = descents(&w);
        if ds.is_empty() {
            add(&mut out, w, &x);
            continue;
        }
        let p = ds[rng.random_range(0..ds.len())];
        for (nw, y) in rewrite(c, &w, p) {
            work.push((nw, &x * &y));
        }
    }
    out
}

/// All words of length `len` over `n` letters.
pub fn words(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..n).map(move |i| {
                    let mut v = w.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    out
}

/// Exact rank of rational vectors indexed by arbitrary keys, by plain
/// Gaussian elimination on a dense copy.
pub fn dense_rank<K: Ord + Clone>(vs: &[BTreeMap<K, Q>]) -> usize {
    let keys: Vec<K> = {
        let mut k: Vec<K> = vs.iter().flat_map(|v| v.keys().cloned()).collect();
        k.sort();
        k.dedup();
        k
    };
    let mut m: Vec<Vec<Q>> = vs
        .iter()
        .map(|v| {
            keys.iter()
                .map(|k| v.get(k).cloned().unwrap_or_else(Q::zero))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..keys.len() {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = &m[r][col] / &m[rank][col];
                for c in col..keys.len() {
                    let d = &f * &m[rank][c];
                    m[r][c] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Classical Witt numbers: Lie words of each length on `k` letters.
pub fn witt_numbers(k: i64, max_len: usize) -> Vec<i64> {
    let mobius = |mut n: usize| {
        let mut sign = 1;
        let mut p = 2;
        while p * p <= n {
            if n.is_multiple_of(p) {
                n /= p;
                if n.is_multiple_of(p) {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if n > 1 {
            sign = -sign;
        }
        sign
    };
    (1..=max_len)
        .map(|n| {
            let s: i64 = (1..=n)
                .filter(|d| n % d == 0)
                .map(|d| mobius(d) * k.pow((n / d) as u32))
                .sum();
            s / n as i64
        })
        .collect()
}

/// Distinct degrees of the indexed letters, compared pairwise with
/// explicit products.
pub fn degree_set_commutes(
    alg_degrees: &[GroupElement],
    group: &gradlie::groups::GroupSpec,
    idx: &[usize],
) -> bool {
    for &a in idx {
        for &b in idx {
            let ab = group.mul(&alg_degrees[a], &alg_degrees[b]).unwrap();
            let ba = group.mul(&alg_degrees[b], &alg_degrees[a]).unwrap();
            if ab != ba {
                return false;
            }
        }
    }
    true
}
