//! Group-graded Lie algebras given by structure constants on a homogeneous
//! basis.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::{GroupElement, GroupError, GroupSpec};
use crate::linear::{EchelonBasis, LinComb, Matrix, Q};

/// Element of the Lie algebra in basis coordinates.
pub type LieVector = LinComb<usize>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("basis index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("bracket entry ({0}, {1}) must satisfy i < j")]
    UnorderedPair(usize, usize),
    #[error("bracket ({0}, {1}) given more than once")]
    DuplicatePair(usize, usize),
    #[error("invalid basis name {0:?}")]
    BadName(String),
    #[error("matrix {0} is {1}x{2}, expected a square matrix of the algebra dimension")]
    MatrixShape(String, usize, usize),
    #[error("matrix {0} has no declared degree")]
    MissingDegree(String),
    #[error("matrix {name} is not homogeneous of its declared degree: entry ({row}, {col})")]
    NotHomogeneous {
        name: String,
        row: usize,
        col: usize,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A Lie algebra over Q with a basis of homogeneous elements and a grading
/// by an arbitrary group.
///
/// Brackets are stored only for pairs `i < j`; `[e_j, e_i]` is read as
/// `−[e_i, e_j]` and `[e_i, e_i] = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLieAlgebra {
    group: GroupSpec,
    names: Vec<String>,
    degrees: Vec<GroupElement>,
    brackets: BTreeMap<(usize, usize), LieVector>,
    // (i, j, k) entries that were supplied with a zero coefficient
    zero_entries: Vec<(usize, usize, usize)>,
}

/// One raw structure-constant entry: `[e_i, e_j]` has coefficient `coeff` on `e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<(usize, Q)>,
}

impl GradedLieAlgebra {
    pub fn new(
        group: GroupSpec,
        names: Vec<String>,
        degrees: Vec<GroupElement>,
        entries: Vec<BracketEntry>,
    ) -> Result<Self, LieError> {
        let n = degrees.len();
        if names.len() != n {
            return Err(LieError::BadName(format!(
                "{} names for {n} basis elements",
                names.len()
            )));
        }
        for (k, name) in names.iter().enumerate() {
            if name.is_empty() || name.contains(char::is_whitespace) || names[..k].contains(name) {
                return Err(LieError::BadName(name.clone()));
            }
        }
        for d in &degrees {
            group.check(d)?;
        }
        let mut brackets = BTreeMap::new();
        let mut seen = std::collections::BTreeSet::new();
        let mut zero_entries = Vec::new();
        for BracketEntry { i, j, terms } in entries {
            if i >= n {
                return Err(LieError::IndexOutOfRange(i));
            }
            if j >= n {
                return Err(LieError::IndexOutOfRange(j));
            }
            if i >= j {
                return Err(LieError::UnorderedPair(i, j));
            }
            if !seen.insert((i, j)) {
                return Err(LieError::DuplicatePair(i, j));
            }
            let mut v = LieVector::zero();
            for (k, c) in terms {
                if k >= n {
                    return Err(LieError::IndexOutOfRange(k));
                }
                if c.is_zero() {
                    zero_entries.push((i, j, k));
                }
                v.add_term(k, c);
            }
            if !v.is_zero() {
                brackets.insert((i, j), v);
            }
        }
        Ok(Self {
            group,
            names,
            degrees,
            brackets,
            zero_entries,
        })
    }

    /// Abelian algebra (all brackets zero) with the given degrees.
    pub fn abelian(
        group: GroupSpec,
        names: Vec<String>,
        degrees: Vec<GroupElement>,
    ) -> Result<Self, LieError> {
        Self::new(group, names, degrees, Vec::new())
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> &GroupElement {
        &self.degrees[i]
    }

    /// Stored structure constants, keyed by `(i, j)` with `i < j`.
    pub fn structure_constants(&self) -> &BTreeMap<(usize, usize), LieVector> {
        &self.brackets
    }

    /// Same algebra with a new degree assignment (possibly in another group).
    pub fn regraded(&self, group: GroupSpec, degrees: Vec<GroupElement>) -> Result<Self, LieError> {
        let entries = self
            .brackets
            .iter()
            .map(|(&(i, j), v)| BracketEntry {
                i,
                j,
                terms: v.iter().map(|(&k, c)| (k, c.clone())).collect(),
            })
            .collect();
        Self::new(group, self.names.clone(), degrees, entries)
    }

    /// `[e_i, e_j]` in basis coordinates.
    pub fn bracket_basis(&self, i: usize, j: usize) -> LieVector {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => LieVector::zero(),
            Less => self.brackets.get(&(i, j)).cloned().unwrap_or_default(),
            Greater => self
                .brackets
                .get(&(j, i))
                .map(|v| v.scaled(&-Q::from_integer(1.into())))
                .unwrap_or_default(),
        }
    }

    fn check_vector(&self, x: &LieVector) -> Result<(), LieError> {
        match x.keys().find(|&&k| k >= self.dim()) {
            Some(&k) => Err(LieError::IndexOutOfRange(k)),
            None => Ok(()),
        }
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &LieVector, y: &LieVector) -> Result<LieVector, LieError> {
        self.check_vector(x)?;
        self.check_vector(y)?;
        let mut out = LieVector::zero();
        for (&i, a) in x.iter() {
            for (&j, b) in y.iter() {
                out.add_scaled(&self.bracket_basis(i, j), &(a * b));
            }
        }
        Ok(out)
    }

    pub fn basis_vector(&self, i: usize) -> LieVector {
        LieVector::term(i, Q::from_integer(1.into()))
    }

    /// Degree of `x` if it is nonzero and homogeneous.
    pub fn homogeneous_degree(&self, x: &LieVector) -> Option<GroupElement> {
        let mut degs = x.keys().map(|&k| &self.degrees[k]);
        let first = degs.next()?;
        degs.all(|d| d == first).then(|| first.clone())
    }

    /// Homogeneous components: distinct degrees (in normal-form order) with
    /// the basis indices of that degree.
    pub fn components(&self) -> Vec<(GroupElement, Vec<usize>)> {
        let mut map: BTreeMap<&GroupElement, Vec<usize>> = BTreeMap::new();
        for (i, d) in self.degrees.iter().enumerate() {
            map.entry(d).or_default().push(i);
        }
        map.into_iter().map(|(d, v)| (d.clone(), v)).collect()
    }

    /// Checks grading compatibility, the Jacobi identity on every basis
    /// triple, and coefficient normalization.
    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();

        let mut grading = CheckResult::pass("grading");
        'outer: for (&(i, j), v) in &self.brackets {
            let expected = match self.group.mul(&self.degrees[i], &self.degrees[j]) {
                Ok(d) => d,
                Err(e) => {
                    grading = CheckResult::fail("grading", vec![i, j], e.to_string());
                    break;
                }
            };
            // [e_j, e_i] = −[e_i, e_j] must also be homogeneous of degree deg e_j · deg e_i
            match self.group.commute(&self.degrees[i], &self.degrees[j]) {
                Ok(true) => {}
                Ok(false) => {
                    grading = CheckResult::fail(
                        "grading",
                        vec![i, j],
                        format!(
                            "[{}, {}] is nonzero but the degrees {} and {} do not commute",
                            self.names[i],
                            self.names[j],
                            self.group.format_element(&self.degrees[i]),
                            self.group.format_element(&self.degrees[j])
                        ),
                    );
                    break;
                }
                Err(e) => {
                    grading = CheckResult::fail("grading", vec![i, j], e.to_string());
                    break;
                }
            }
            for (&k, _) in v.iter() {
                if self.degrees[k] != expected {
                    grading = CheckResult::fail(
                        "grading",
                        vec![i, j, k],
                        format!(
                            "[{}, {}] has a component on {} of degree {}, expected degree {}",
                            self.names[i],
                            self.names[j],
                            self.names[k],
                            self.group.format_element(&self.degrees[k]),
                            self.group.format_element(&expected)
                        ),
                    );
                    break 'outer;
                }
            }
        }
        checks.push(grading);

        let mut jacobi = CheckResult::pass("jacobi");
        let n = self.dim();
        'jac: for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let s = self.jacobiator(i, j, k);
                    if !s.is_zero() {
                        jacobi = CheckResult::fail(
                            "jacobi",
                            vec![i, j, k],
                            format!(
                                "Jacobi identity fails on ({}, {}, {})",
                                self.names[i], self.names[j], self.names[k]
                            ),
                        );
                        break 'jac;
                    }
                }
            }
        }
        checks.push(jacobi);

        let normalization = match self.zero_entries.first() {
            None => CheckResult::pass("normalization"),
            Some(&(i, j, k)) => CheckResult::fail(
                "normalization",
                vec![i, j, k],
                format!(
                    "explicit zero coefficient on {} in [{}, {}]",
                    self.names[k], self.names[i], self.names[j]
                ),
            ),
        };
        checks.push(normalization);

        ValidationReport { checks }
    }

    /// `[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]`
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> LieVector {
        let e = |t| self.basis_vector(t);
        let term = |a: usize, b: usize, c: usize| {
            self.bracket(&e(a), &self.bracket_basis(b, c))
                .expect("basis indices are in range")
        };
        let mut s = term(i, j, k);
        s.add_scaled(&term(j, k, i), &Q::from_integer(1.into()));
        s.add_scaled(&term(k, i, j), &Q::from_integer(1.into()));
        s
    }

    /// Homogeneous basis of the center, computed componentwise.
    pub fn center(&self) -> Vec<LieVector> {
        let n = self.dim();
        let mut out = Vec::new();
        for (_, idx) in self.components() {
            // rows: one equation per (j, k): Σ_{i∈idx} c_i · α_{ij}^{(k)} = 0
            let mut rows = Vec::new();
            for j in 0..n {
                let images: Vec<LieVector> =
                    idx.iter().map(|&i| self.bracket_basis(i, j)).collect();
                for k in 0..n {
                    let row: Vec<Q> = images.iter().map(|v| v.coeff(&k)).collect();
                    if row.iter().any(|c| !c.is_zero()) {
                        rows.push(row);
                    }
                }
            }
            let m = Matrix::from_rows(rows, idx.len());
            for v in m.null_space() {
                out.push(idx.iter().zip(v).map(|(&i, c)| (i, c)).collect());
            }
        }
        out
    }

    /// Matrix of `ad x` (column `c` holds the coordinates of `[x, e_c]`).
    pub fn adjoint(&self, x: &LieVector) -> Result<Matrix, LieError> {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for c in 0..n {
            let col = self.bracket(x, &self.basis_vector(c))?;
            for (&r, v) in col.iter() {
                m[(r, c)] = v.clone();
            }
        }
        Ok(m)
    }

    /// `{ad e_i}` with degree `deg e_i`, reduced to a linearly independent set.
    pub fn inner_derivations(&self) -> Vec<EndoMatrix> {
        let mut basis = EchelonBasis::new();
        let mut out = Vec::new();
        for i in 0..self.dim() {
            let m = self
                .adjoint(&self.basis_vector(i))
                .expect("basis index in range");
            if basis.insert(&matrix_vector(&m)) {
                out.push(EndoMatrix {
                    name: format!("ad {}", self.names[i]),
                    matrix: m,
                    degree: Some(self.degrees[i].clone()),
                });
            }
        }
        out
    }

    /// Checks the declared degree of an endomorphism against its entries.
    pub fn check_endo(&self, m: &EndoMatrix) -> Result<(), LieError> {
        let n = self.dim();
        if m.matrix.rows() != n || m.matrix.cols() != n {
            return Err(LieError::MatrixShape(
                m.name.clone(),
                m.matrix.rows(),
                m.matrix.cols(),
            ));
        }
        let Some(d) = &m.degree else {
            return Err(LieError::MissingDegree(m.name.clone()));
        };
        for r in 0..n {
            for c in 0..n {
                if !m.matrix[(r, c)].is_zero()
                    && self.degrees[r] != self.group.mul(d, &self.degrees[c])?
                {
                    return Err(LieError::NotHomogeneous {
                        name: m.name.clone(),
                        row: r,
                        col: c,
                    });
                }
            }
        }
        Ok(())
    }

    /// Decides whether the span of the given homogeneous endomorphisms is a
    /// graded Lie algebra under the commutator.
    ///
    /// Every pair is checked: a nonzero commutator of two elements with
    /// non-commuting degrees is an obstruction, and any nonzero commutator
    /// must lie in the span of the listed matrices of the product degree.
    pub fn is_graded_lie_subspace(&self, mats: &[EndoMatrix]) -> Result<SpanCheck, LieError> {
        for m in mats {
            self.check_endo(m)?;
        }
        let degree = |m: &EndoMatrix| m.degree.clone().expect("checked above");
        let mut by_degree: BTreeMap<GroupElement, EchelonBasis<(usize, usize)>> = BTreeMap::new();
        for m in mats {
            by_degree
                .entry(degree(m))
                .or_default()
                .insert(&matrix_vector(&m.matrix));
        }
        for a in 0..mats.len() {
            for b in a + 1..mats.len() {
                let (u, v) = (&mats[a], &mats[b]);
                let c = u.matrix.commutator(&v.matrix);
                if c.is_zero() {
                    continue;
                }
                let (du, dv) = (degree(u), degree(v));
                if !self.group.commute(&du, &dv)? {
                    return Ok(SpanCheck::failed(
                        a,
                        b,
                        mats,
                        SpanFailure::NonCommutingDegrees,
                    ));
                }
                let target = self.group.mul(&du, &dv)?;
                let inside = by_degree
                    .get(&target)
                    .is_some_and(|basis| basis.contains(&matrix_vector(&c)));
                if !inside {
                    return Ok(SpanCheck::failed(a, b, mats, SpanFailure::NotInDegreeSpan));
                }
            }
        }
        Ok(SpanCheck {
            graded: true,
            witness: None,
        })
    }
}

/// Sparse view of a matrix keyed by `(row, col)`.
pub fn matrix_vector(m: &Matrix) -> LinComb<(usize, usize)> {
    let mut v = LinComb::zero();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            v.add_term((r, c), m[(r, c)].clone());
        }
    }
    v
}

/// An endomorphism of the algebra's underlying space, in basis
/// coordinates, optionally with a declared degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoMatrix {
    pub name: String,
    pub matrix: Matrix,
    pub degree: Option<GroupElement>,
}

impl EndoMatrix {
    /// The matrix unit `e_{ij}`: sends basis vector `j` to basis vector `i`.
    pub fn unit(n: usize, i: usize, j: usize, degree: Option<GroupElement>) -> Self {
        let mut m = Matrix::zeros(n, n);
        m[(i, j)] = Q::from_integer(1.into());
        Self {
            name: format!("e{}{}", i + 1, j + 1),
            matrix: m,
            degree,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpanFailure {
    /// Nonzero commutator of elements whose degrees do not commute.
    NonCommutingDegrees,
    /// Nonzero commutator outside the span of the product degree.
    NotInDegreeSpan,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanWitness {
    pub first: usize,
    pub second: usize,
    pub first_name: String,
    pub second_name: String,
    pub reason: SpanFailure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanCheck {
    pub graded: bool,
    pub witness: Option<SpanWitness>,
}

impl SpanCheck {
    fn failed(a: usize, b: usize, mats: &[EndoMatrix], reason: SpanFailure) -> Self {
        Self {
            graded: false,
            witness: Some(SpanWitness {
                first: a,
                second: b,
                first_name: mats[a].name.clone(),
                second_name: mats[b].name.clone(),
                reason,
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Basis indices of the offending pair or triple.
    pub witness: Option<Vec<usize>>,
    pub message: Option<String>,
}

impl CheckResult {
    fn pass(name: &str) -> Self {
        Self {
            name: name.into(),
            passed: true,
            witness: None,
            message: None,
        }
    }

    fn fail(name: &str, witness: Vec<usize>, message: String) -> Self {
        Self {
            name: name.into(),
            passed: false,
            witness: Some(witness),
            message: Some(message),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}
