//! Smith normal form over the integers with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linear::{Matrix, Q};

/// Dense integer matrix, row-major.
pub type IntMatrix = Vec<Vec<BigInt>>;

/// `D = U · M · V` with `U`, `V` unimodular and `D` diagonal with
/// nonnegative entries forming a divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.len().min(self.d.first().map_or(0, Vec::len));
        (0..k).map(|i| self.d[i][i].clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn int_mul(a: &IntMatrix, b: &IntMatrix, inner: usize, cols: usize) -> IntMatrix {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn determinant(a: &IntMatrix) -> BigInt {
    let n = a.len();
    let rows = a
        .iter()
        .map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect())
        .collect();
    Matrix::from_rows(rows, n).determinant().to_integer()
}

struct Work {
    m: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    rows: usize,
    cols: usize,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap(a, b);
        self.u.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in &mut self.m {
            r.swap(a, b);
        }
        for r in &mut self.v {
            r.swap(a, b);
        }
    }

    /// row[dst] += f · row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let x = &self.m[src][j] * f;
            self.m[dst][j] += x;
        }
        for j in 0..self.rows {
            let x = &self.u[src][j] * f;
            self.u[dst][j] += x;
        }
    }

    /// col[dst] += f · col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let x = &self.m[i][src] * f;
            self.m[i][dst] += x;
        }
        for i in 0..self.cols {
            let x = &self.v[i][src] * f;
            self.v[i][dst] += x;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for x in &mut self.m[r] {
            *x = -x.clone();
        }
        for x in &mut self.u[r] {
            *x = -x.clone();
        }
    }

    fn smallest_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.m[i][j];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < self.m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

/// Computes the Smith normal form of an `rows × cols` integer matrix.
pub fn smith_normal_form(m: &IntMatrix, rows: usize, cols: usize) -> SmithForm {
    let mut w = Work {
        m: m.clone(),
        u: identity(rows),
        v: identity(cols),
        rows,
        cols,
    };
    for t in 0..rows.min(cols) {
        while let Some((pi, pj)) = w.smallest_nonzero(t) {
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let pivot = w.m[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let (q, r) = w.m[i][t].div_mod_floor(&pivot);
                if !q.is_zero() {
                    w.add_row(i, t, &-q);
                }
                clean &= r.is_zero();
            }
            for j in t + 1..cols {
                let (q, r) = w.m[t][j].div_mod_floor(&pivot);
                if !q.is_zero() {
                    w.add_col(j, t, &-q);
                }
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            // row and column t are cleared; enforce divisibility of the rest
            let bad =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !w.m[i][j].is_multiple_of(&pivot)));
            match bad {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.m[t][t].is_negative() {
            w.negate_row(t);
        }
    }
    SmithForm {
        d: w.m,
        u: w.u,
        v: w.v,
    }
}

/// Re-derives every defining property of a Smith form; returns a
/// description of the first failure.
pub fn verify(m: &IntMatrix, rows: usize, cols: usize, s: &SmithForm) -> Result<(), String> {
    let um = int_mul(&s.u, m, rows, cols);
    let umv = int_mul(&um, &s.v, cols, cols);
    if umv != s.d {
        return Err("U·M·V differs from D".into());
    }
    let det_u = determinant(&s.u);
    let det_v = determinant(&s.v);
    if det_u.abs() != BigInt::one() {
        return Err(format!("det U = {det_u}"));
    }
    if det_v.abs() != BigInt::one() {
        return Err(format!("det V = {det_v}"));
    }
    for i in 0..rows {
        for j in 0..cols {
            if i != j && !s.d[i][j].is_zero() {
                return Err(format!("D has off-diagonal entry at ({i}, {j})"));
            }
        }
    }
    let diag = s.diagonal();
    if diag.iter().any(Signed::is_negative) {
        return Err("negative diagonal entry".into());
    }
    for w in diag.windows(2) {
        let ok = if w[0].is_zero() {
            w[1].is_zero()
        } else {
            w[1].is_multiple_of(&w[0])
        };
        if !ok {
            return Err(format!("divisibility chain broken: {} then {}", w[0], w[1]));
        }
    }
    Ok(())
}
