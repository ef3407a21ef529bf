//! Exact rational scalars, sparse linear combinations, and dense
//! elimination over the rationals.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact arbitrary-precision rational scalar.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"`, `"-p"` or `"p/q"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Q::new(num, den))
}

/// Renders a rational as `p` or `p/q` with the sign on the numerator.
pub fn fmt_rational(c: &Q) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// A finite linear combination `Σ c_k · k` with nonzero coefficients.
///
/// Keys are kept in a `BTreeMap`, so iteration order is the key order and
/// equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Q>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(key: K, coeff: Q) -> Self {
        let mut out = Self::zero();
        out.add_term(key, coeff);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> Q {
        self.terms.get(key).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&K, &Q)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, key: K, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    /// `self += scale · other`
    pub fn add_scaled(&mut self, other: &Self, scale: &Q) {
        if scale.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * scale);
        }
    }

    pub fn scaled(&self, scale: &Q) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, scale);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Q::one());
        out
    }

    pub fn pop_last(&mut self) -> Option<(K, Q)> {
        self.terms.pop_last()
    }

    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Option<K2>) -> LinComb<K2> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            if let Some(k2) = f(k) {
                out.add_term(k2, c.clone());
            }
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, Q)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Q)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(k, c)| (k, fmt_rational(c))))
            .finish()
    }
}

/// Dense rational matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Self {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// `[self, other] = self·other − other·self`
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    /// Entries read row by row, as a flat vector.
    pub fn flatten(&self) -> &[Q] {
        &self.data
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    if self[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &self[(r, j)] * &f;
                    self[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : self · x = 0}`.
    pub fn null_space(&self) -> Vec<Vec<Q>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Exact determinant by Gaussian elimination over Q.
    pub fn determinant(&self) -> Q {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut det = Q::one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                return Q::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det *= &pivot;
            for i in c + 1..m.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] / &pivot;
                for j in c..m.cols {
                    let v = &m[(c, j)] * &f;
                    m[(i, j)] -= v;
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

/// Rank of a family of sparse vectors, keyed by arbitrary ordered keys.
pub fn rank_of<K: Ord + Clone>(vectors: &[LinComb<K>]) -> usize {
    let mut keys: Vec<&K> = vectors.iter().flat_map(|v| v.keys()).collect();
    keys.sort();
    keys.dedup();
    if keys.is_empty() {
        return 0;
    }
    let index: BTreeMap<&K, usize> = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut m = Matrix::zeros(vectors.len(), keys.len());
    for (r, v) in vectors.iter().enumerate() {
        for (k, c) in v.iter() {
            m[(r, index[k])] = c.clone();
        }
    }
    m.rank()
}

/// Incrementally maintained echelon basis of a subspace spanned by sparse
/// vectors. Used for independence filtering and span-membership tests.
#[derive(Clone, Debug)]
pub struct EchelonBasis<K: Ord + Clone> {
    // each row is normalized so that its pivot (first key) has coefficient 1
    rows: Vec<LinComb<K>>,
}

impl<K: Ord + Clone> Default for EchelonBasis<K> {
    fn default() -> Self {
        Self { rows: Vec::new() }
    }
}

impl<K: Ord + Clone> EchelonBasis<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after eliminating against the current rows.
    pub fn reduce(&self, v: &LinComb<K>) -> LinComb<K> {
        let mut r = v.clone();
        for row in &self.rows {
            let (pivot, _) = row.iter().next().expect("echelon rows are nonzero");
            let c = r.coeff(pivot);
            if !c.is_zero() {
                r.add_scaled(row, &-c);
            }
        }
        r
    }

    pub fn contains(&self, v: &LinComb<K>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the basis; returns `false` if it was already in the span.
    pub fn insert(&mut self, v: &LinComb<K>) -> bool {
        let r = self.reduce(v);
        let Some((pivot, lead)) = r.iter().next() else {
            return false;
        };
        let pivot = pivot.clone();
        let r = r.scaled(&lead.recip());
        for row in &mut self.rows {
            let c = row.coeff(&pivot);
            if !c.is_zero() {
                row.add_scaled(&r, &-c);
            }
        }
        // keep rows sorted by pivot so `reduce` eliminates in a consistent order
        let pos = self
            .rows
            .iter()
            .position(|row| row.keys().next().is_some_and(|k| *k > pivot))
            .unwrap_or(self.rows.len());
        self.rows.insert(pos, r);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parse_and_format() {
        assert_eq!(parse_rational("3/6"), Some(q_frac(1, 2)));
        assert_eq!(parse_rational(" -4 "), Some(q(-4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(fmt_rational(&q_frac(-2, 4)), "-1/2");
        assert_eq!(fmt_rational(&q(7)), "7");
    }

    #[test]
    fn lincomb_cancels_to_zero() {
        let mut v = LinComb::term(1usize, q(2));
        v.add_term(1, q(-2));
        assert!(v.is_zero());
        v.add_term(3, q(0));
        assert!(v.is_zero());
    }

    #[test]
    fn rank_and_null_space() {
        let m = Matrix::from_rows(
            vec![
                vec![q(1), q(2), q(3)],
                vec![q(2), q(4), q(6)],
                vec![q(0), q(1), q(1)],
            ],
            3,
        );
        assert_eq!(m.rank(), 2);
        let ns = m.null_space();
        assert_eq!(ns.len(), 1);
        let x = Matrix::from_rows(ns.to_vec(), 3);
        // m · xᵀ = 0
        for v in &ns {
            for r in 0..3 {
                let s: Q = (0..3).map(|c| &m[(r, c)] * &v[c]).sum();
                assert!(s.is_zero());
            }
        }
        assert_eq!(x.rows(), 1);
    }

    #[test]
    fn determinant_of_unimodular() {
        let m = Matrix::from_rows(vec![vec![q(2), q(1)], vec![q(1), q(1)]], 2);
        assert_eq!(m.determinant(), q(1));
        let s = Matrix::from_rows(vec![vec![q(0), q(1)], vec![q(1), q(0)]], 2);
        assert_eq!(s.determinant(), q(-1));
    }

    #[test]
    fn echelon_membership() {
        let mut b = EchelonBasis::new();
        let v1: LinComb<usize> = [(0, q(1)), (1, q(1))].into_iter().collect();
        let v2: LinComb<usize> = [(1, q(1)), (2, q(1))].into_iter().collect();
        assert!(b.insert(&v1));
        assert!(b.insert(&v2));
        let sum = v1.add(&v2);
        assert!(b.contains(&sum));
        assert!(!b.insert(&sum));
        assert!(!b.contains(&LinComb::term(2, q(1))));
        assert_eq!(b.rank(), 2);
    }
}
