//! Free graded Lie algebras at bounded length.
//!
//! Words live in the relatively free algebra F_G(X): a monomial survives
//! iff its letter degrees generate an abelian subgroup. The Lie subalgebra
//! generated by the letters has as basis the standard bracketings of the
//! Lyndon words whose letter degrees pass that test.

use std::collections::{BTreeMap, HashMap};

use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::{GroupElement, GroupError, GroupSpec};
use crate::liealg::GradedLieAlgebra;
use crate::linear::{EchelonBasis, LinComb, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreeLieError {
    #[error("letter index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("invalid alphabet: {0}")]
    BadAlphabet(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Element of the free associative algebra: words with rational coefficients.
pub type FreePoly = LinComb<Vec<usize>>;

/// Finitely many variables, each with a degree in the ambient group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlphabet {
    group: GroupSpec,
    names: Vec<String>,
    degrees: Vec<GroupElement>,
}

impl GradedAlphabet {
    pub fn new(
        group: GroupSpec,
        names: Vec<String>,
        degrees: Vec<GroupElement>,
    ) -> Result<Self, FreeLieError> {
        if names.len() != degrees.len() {
            return Err(FreeLieError::BadAlphabet(format!(
                "{} names for {} degrees",
                names.len(),
                degrees.len()
            )));
        }
        for (k, n) in names.iter().enumerate() {
            if n.is_empty() || n.contains(char::is_whitespace) || names[..k].contains(n) {
                return Err(FreeLieError::BadAlphabet(format!("bad letter name {n:?}")));
            }
        }
        for d in &degrees {
            group.check(d)?;
        }
        Ok(Self {
            group,
            names,
            degrees,
        })
    }

    /// The basis of an algebra, read as an alphabet.
    pub fn from_algebra(alg: &GradedLieAlgebra) -> Self {
        Self {
            group: alg.group().clone(),
            names: alg.names().to_vec(),
            degrees: alg.degrees().to_vec(),
        }
    }

    /// Parses `"x=<degree>; y=<degree>"` against `group`.
    pub fn parse(group: GroupSpec, s: &str) -> Result<Self, FreeLieError> {
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, lit) = part.split_once('=').ok_or_else(|| {
                FreeLieError::BadAlphabet(format!("expected name=degree, got {part:?}"))
            })?;
            names.push(name.trim().to_string());
            degrees.push(group.parse_element(lit)?);
        }
        Self::new(group, names, degrees)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.degrees
    }

    pub fn render(&self, w: &[usize]) -> String {
        if w.is_empty() {
            "1".into()
        } else {
            w.iter()
                .map(|&i| self.names[i].as_str())
                .collect::<Vec<_>>()
                .join(" ")
        }
    }

    fn check_word(&self, w: &[usize]) -> Result<(), FreeLieError> {
        match w.iter().find(|&&i| i >= self.len()) {
            Some(&i) => Err(FreeLieError::IndexOutOfRange(i)),
            None => Ok(()),
        }
    }

    /// Whether the letter degrees of `w` generate an abelian subgroup.
    pub fn word_is_gas(&self, w: &[usize]) -> Result<bool, FreeLieError> {
        self.check_word(w)?;
        let mut degs: Vec<GroupElement> = w.iter().map(|&i| self.degrees[i].clone()).collect();
        degs.sort();
        degs.dedup();
        Ok(self.group.gas(&degs)?)
    }

    pub fn word_degree(&self, w: &[usize]) -> Result<GroupElement, FreeLieError> {
        self.check_word(w)?;
        Ok(self.group.product(w.iter().map(|&i| &self.degrees[i]))?)
    }

    /// Image in F_G: drops monomials whose letter degrees are not g.a.s.
    pub fn project(&self, p: &FreePoly) -> Result<FreePoly, FreeLieError> {
        let mut out = FreePoly::zero();
        for (w, c) in p.iter() {
            if self.word_is_gas(w)? {
                out.add_term(w.clone(), c.clone());
            }
        }
        Ok(out)
    }
}

pub fn poly_mul(a: &FreePoly, b: &FreePoly) -> FreePoly {
    let mut out = FreePoly::zero();
    for (u, x) in a.iter() {
        for (v, y) in b.iter() {
            let mut w = u.clone();
            w.extend_from_slice(v);
            out.add_term(w, x * y);
        }
    }
    out
}

/// `ab − ba` in the free associative algebra.
pub fn poly_commutator(a: &FreePoly, b: &FreePoly) -> FreePoly {
    poly_mul(a, b).sub(&poly_mul(b, a))
}

pub fn letter(i: usize) -> FreePoly {
    FreePoly::term(vec![i], Q::one())
}

/// Length-`d` monomials of F_G(X) with an index lookup.
#[derive(Clone, Debug)]
pub struct FreeMonomialSpace {
    pub length: usize,
    monomials: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl FreeMonomialSpace {
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[Vec<usize>] {
        &self.monomials
    }

    pub fn index_of(&self, w: &[usize]) -> Option<usize> {
        self.index.get(w).copied()
    }
}

/// All length-`d` words whose letter degrees are g.a.s., in lex order.
pub fn free_monomial_basis(
    alphabet: &GradedAlphabet,
    d: usize,
) -> Result<FreeMonomialSpace, FreeLieError> {
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..d {
        let mut next = Vec::new();
        for w in &layer {
            for i in 0..alphabet.len() {
                let mut x = w.clone();
                x.push(i);
                // g.a.s. is prefix-closed, so prune early
                if alphabet.word_is_gas(&x)? {
                    next.push(x);
                }
            }
        }
        layer = next;
    }
    let index = layer
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect();
    Ok(FreeMonomialSpace {
        length: d,
        monomials: layer,
        index,
    })
}

/// All Lyndon words of length ≤ `max_len` over `k` letters, in lex order
/// (Duval's generation algorithm).
pub fn lyndon_words(k: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 || max_len == 0 {
        return out;
    }
    let mut w: Vec<usize> = vec![0];
    while !w.is_empty() {
        out.push(w.clone());
        let m = w.len();
        while w.len() < max_len {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&(k - 1)) {
            w.pop();
        }
        if let Some(last) = w.last_mut() {
            *last += 1;
        }
    }
    out
}

pub fn is_lyndon(w: &[usize]) -> bool {
    !w.is_empty()
        && (1..w.len()).all(|i| {
            let rotated: Vec<usize> = w[i..].iter().chain(&w[..i]).copied().collect();
            w < rotated.as_slice()
        })
}

/// Standard factorization `w = u·v` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[usize]) -> Option<(&[usize], &[usize])> {
    (1..w.len())
        .find(|&i| is_lyndon(&w[i..]))
        .map(|i| w.split_at(i))
}

/// A basis element of the free graded Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LyndonElement {
    pub word: Vec<usize>,
    /// Standard bracketing expanded in the free associative algebra.
    #[serde(skip)]
    pub expansion: FreePoly,
    pub degree: GroupElement,
}

fn bracketing(w: &[usize], memo: &mut HashMap<Vec<usize>, FreePoly>) -> FreePoly {
    if let Some(p) = memo.get(w) {
        return p.clone();
    }
    let p = match standard_factorization(w) {
        None => letter(w[0]),
        Some((u, v)) => {
            let pu = bracketing(u, memo);
            let pv = bracketing(v, memo);
            poly_commutator(&pu, &pv)
        }
    };
    memo.insert(w.to_vec(), p.clone());
    p
}

/// Lyndon basis of the free graded Lie algebra up to length `max_len`,
/// ordered by length then lexicographically.
pub fn lyndon_basis(
    alphabet: &GradedAlphabet,
    max_len: usize,
) -> Result<Vec<LyndonElement>, FreeLieError> {
    let mut words: Vec<Vec<usize>> = lyndon_words(alphabet.len(), max_len)
        .into_iter()
        .filter_map(|w| match alphabet.word_is_gas(&w) {
            Ok(true) => Some(Ok(w)),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<_, _>>()?;
    words.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut memo = HashMap::new();
    words
        .into_iter()
        .map(|w| {
            let expansion = alphabet.project(&bracketing(&w, &mut memo))?;
            let degree = alphabet.word_degree(&w)?;
            Ok(LyndonElement {
                word: w,
                expansion,
                degree,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittRow {
    pub length: usize,
    pub lyndon_count: usize,
    /// Number of sorted Lyndon products of this length with g.a.s. degrees.
    pub pbw_products: usize,
    pub pbw_rank: usize,
    pub monomial_dim: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittReport {
    pub rows: Vec<WittRow>,
}

impl WittReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

/// Checks, length by length, that sorted products of Lyndon elements span
/// the g.a.s. monomials of F_G(X).
pub fn witt_check(alphabet: &GradedAlphabet, max_len: usize) -> Result<WittReport, FreeLieError> {
    let basis = lyndon_basis(alphabet, max_len)?;
    let group = alphabet.group();
    let mut rows = Vec::new();
    for d in 1..=max_len {
        let space = free_monomial_basis(alphabet, d)?;
        let mut echelon = EchelonBasis::new();
        let mut products = 0;
        // non-decreasing sequences of basis positions with total length d
        let mut stack: Vec<(usize, usize, Vec<usize>)> = vec![(0, 0, Vec::new())];
        while let Some((start, len, seq)) = stack.pop() {
            if len == d {
                let degs: Vec<GroupElement> =
                    seq.iter().map(|&i| basis[i].degree.clone()).collect();
                if !group.gas(&degs)? {
                    continue;
                }
                products += 1;
                let mut p = FreePoly::term(Vec::new(), Q::one());
                for &i in &seq {
                    p = poly_mul(&p, &basis[i].expansion);
                }
                echelon.insert(&alphabet.project(&p)?);
                continue;
            }
            for (i, el) in basis.iter().enumerate().skip(start) {
                if len + el.word.len() <= d {
                    let mut s = seq.clone();
                    s.push(i);
                    stack.push((i, len + el.word.len(), s));
                }
            }
        }
        let lyndon_count = basis.iter().filter(|e| e.word.len() == d).count();
        rows.push(WittRow {
            length: d,
            lyndon_count,
            pbw_products: products,
            pbw_rank: echelon.rank(),
            monomial_dim: space.dim(),
            pass: echelon.rank() == space.dim(),
        });
    }
    Ok(WittReport { rows })
}

/// Value of the partial map α on an element of the free abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaValue {
    Defined(GroupElement),
    OutsideS,
}

/// `α(a_{i1}···a_{ir}) = g_{i1}···g_{ir}` when `{g_{i1}, …, g_{ir}}` is
/// g.a.s., and [`AlphaValue::OutsideS`] otherwise.
pub fn alpha_map(
    group: &GroupSpec,
    degrees: &[GroupElement],
    indices: &[usize],
) -> Result<AlphaValue, FreeLieError> {
    if let Some(&bad) = indices.iter().find(|&&i| i >= degrees.len()) {
        return Err(FreeLieError::IndexOutOfRange(bad));
    }
    let mut set: Vec<GroupElement> = indices.iter().map(|&i| degrees[i].clone()).collect();
    set.sort();
    set.dedup();
    if !group.gas(&set)? {
        return Ok(AlphaValue::OutsideS);
    }
    Ok(AlphaValue::Defined(
        group.product(indices.iter().map(|&i| &degrees[i]))?,
    ))
}

/// Locates the first obstruction `[g_j···g_{r−1}, g_r] ≠ 1` scanning the
/// word left to right; `None` means the monomial survives in F_G.
pub fn suffix_obstruction(
    group: &GroupSpec,
    degs: &[GroupElement],
) -> Result<Option<(usize, usize)>, GroupError> {
    for r in 1..degs.len() {
        let mut suffix = group.identity();
        for j in (0..r).rev() {
            suffix = group.mul(&degs[j], &suffix)?;
            if !group.commute(&suffix, &degs[r])? {
                return Ok(Some((j, r)));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiViolation {
    pub word: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiReport {
    /// Distinct letter degrees; the lifted group is free abelian on these.
    pub lifted_rank: usize,
    pub monomials_checked: usize,
    pub projected_zero: usize,
    pub projected_nonzero: usize,
    pub violations: Vec<PsiViolation>,
}

impl PsiReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Lifts the alphabet to a free abelian grading (one generator per distinct
/// degree) and checks that the projection onto F_G is α-graded on every
/// monomial of length ≤ `max_len`.
pub fn psi_grading_check(
    alphabet: &GradedAlphabet,
    max_len: usize,
) -> Result<PsiReport, FreeLieError> {
    let group = alphabet.group();
    let mut distinct: Vec<GroupElement> = alphabet.degrees().to_vec();
    distinct.sort();
    distinct.dedup();
    let lift: Vec<usize> = alphabet
        .degrees()
        .iter()
        .map(|d| distinct.binary_search(d).expect("degree is listed"))
        .collect();

    let mut report = PsiReport {
        lifted_rank: distinct.len(),
        monomials_checked: 0,
        projected_zero: 0,
        projected_nonzero: 0,
        violations: Vec::new(),
    };
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..=max_len {
        for w in &layer {
            report.monomials_checked += 1;
            // Z-degree as a multiset of lifted generators
            let mut z_degree: BTreeMap<usize, usize> = BTreeMap::new();
            for &i in w {
                *z_degree.entry(lift[i]).or_default() += 1;
            }
            let z_indices: Vec<usize> = z_degree
                .iter()
                .flat_map(|(&j, &m)| std::iter::repeat_n(j, m))
                .collect();
            let alpha = alpha_map(group, &distinct, &z_indices)?;
            let zero = !alphabet.word_is_gas(w)?;
            let letter_degs: Vec<GroupElement> =
                w.iter().map(|&i| alphabet.degrees()[i].clone()).collect();
            let obstruction = suffix_obstruction(group, &letter_degs)?;
            let mut violate = |reason: String| {
                report.violations.push(PsiViolation {
                    word: alphabet.render(w),
                    reason,
                })
            };
            if obstruction.is_some() != zero {
                violate(format!(
                    "suffix-obstruction scan ({obstruction:?}) disagrees with the g.a.s. test"
                ));
            }
            if zero {
                report.projected_zero += 1;
                if alpha != AlphaValue::OutsideS {
                    violate("monomial vanishes in F_G but its lifted degree lies in S".into());
                }
            } else {
                report.projected_nonzero += 1;
                let g_degree = alphabet.word_degree(w)?;
                match alpha {
                    AlphaValue::Defined(a) if a == g_degree => {}
                    AlphaValue::Defined(a) => violate(format!(
                        "G-degree {} differs from alpha of the lifted degree {}",
                        group.format_element(&g_degree),
                        group.format_element(&a)
                    )),
                    AlphaValue::OutsideS => {
                        violate("monomial survives but its lifted degree is outside S".into())
                    }
                }
            }
        }
        if layer.first().is_some_and(|w| w.len() == max_len) {
            break;
        }
        layer = layer
            .iter()
            .flat_map(|w| (0..alphabet.len()).map(move |i| [w.as_slice(), &[i]].concat()))
            .collect();
    }
    Ok(report)
}
