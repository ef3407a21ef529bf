//! Normal forms in the strong graded universal enveloping algebra.
//!
//! Elements are linear combinations of sorted monomials `e_{i1}···e_{im}`
//! (`i1 ≤ … ≤ im`) whose letter degrees pairwise commute. The straightening
//! map sends a word whose degrees do not generate an abelian subgroup to
//! zero; otherwise it repeatedly rewrites the leftmost descent
//! `… a b …` (`a > b`) as `… b a … + Σ_k α_{ab}^{(k)} … e_k …`.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::{GroupElement, GroupError};
use crate::liealg::{GradedLieAlgebra, LieVector};
use crate::linear::{fmt_rational, LinComb, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PbwError {
    #[error("basis index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("unknown basis element {0:?}")]
    UnknownName(String),
    #[error("cannot parse word {0:?}")]
    BadWord(String),
    #[error("{0:?} is not a sorted monomial")]
    NotSorted(Vec<usize>),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Sorted index sequence; the empty sequence is the unit.
///
/// Ordered by length, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PbwMonomial(Vec<usize>);

impl PbwMonomial {
    pub fn unit() -> Self {
        Self(Vec::new())
    }

    pub fn new(indices: Vec<usize>) -> Result<Self, PbwError> {
        if indices.windows(2).any(|w| w[0] > w[1]) {
            return Err(PbwError::NotSorted(indices));
        }
        Ok(Self(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Ordered product of the letter degrees.
    pub fn degree(&self, alg: &GradedLieAlgebra) -> Result<GroupElement, GroupError> {
        alg.group().product(self.0.iter().map(|&i| alg.degree(i)))
    }

    /// Space-separated basis names, or `1` for the unit.
    pub fn render(&self, alg: &GradedLieAlgebra) -> String {
        render_word(alg, &self.0)
    }
}

impl Ord for PbwMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for PbwMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of SU_G(L) in PBW coordinates.
pub type SuElement = LinComb<PbwMonomial>;

/// A scalar multiple of an arbitrary word in the basis letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawWord {
    pub letters: Vec<usize>,
    pub scalar: Q,
}

impl RawWord {
    pub fn new(letters: Vec<usize>) -> Self {
        Self {
            letters,
            scalar: Q::one(),
        }
    }
}

pub fn render_word(alg: &GradedLieAlgebra, letters: &[usize]) -> String {
    if letters.is_empty() {
        "1".into()
    } else {
        letters
            .iter()
            .map(|&i| alg.name(i))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Parses `"[2,0,1]"` (indices) or `"f h e"` (basis names); `"1"` and the
/// empty string are the empty word.
pub fn parse_word(alg: &GradedLieAlgebra, s: &str) -> Result<Vec<usize>, PbwError> {
    let t = s.trim();
    let letters: Vec<usize> = if t.starts_with('[') {
        serde_json::from_str(t).map_err(|_| PbwError::BadWord(s.to_string()))?
    } else if t.is_empty() || t == "1" {
        Vec::new()
    } else {
        t.split(|c: char| c.is_whitespace() || c == '*' || c == '·')
            .filter(|tok| !tok.is_empty())
            .map(|tok| {
                alg.index_of(tok)
                    .ok_or_else(|| PbwError::UnknownName(tok.to_string()))
            })
            .collect::<Result<_, _>>()?
    };
    check_letters(alg, &letters)?;
    Ok(letters)
}

fn check_letters(alg: &GradedLieAlgebra, letters: &[usize]) -> Result<(), PbwError> {
    match letters.iter().find(|&&i| i >= alg.dim()) {
        Some(&i) => Err(PbwError::IndexOutOfRange(i)),
        None => Ok(()),
    }
}

/// Whether the degrees of the letters generate an abelian subgroup.
pub fn word_is_gas(alg: &GradedLieAlgebra, letters: &[usize]) -> Result<bool, GroupError> {
    let mut degs: Vec<GroupElement> = letters.iter().map(|&i| alg.degree(i).clone()).collect();
    degs.sort();
    degs.dedup();
    alg.group().gas(&degs)
}

fn leftmost_descent(w: &[usize]) -> Option<usize> {
    w.windows(2).position(|p| p[0] > p[1])
}

/// Straightens a linear combination of g.a.s. words into PBW coordinates.
///
/// The g.a.s. property is not re-tested on rewritten words: a substituted
/// letter has degree `deg a · deg b`, which stays inside the abelian
/// subgroup generated by the original letters.
fn straighten(alg: &GradedLieAlgebra, mut pending: LinComb<Vec<usize>>) -> SuElement {
    let mut out = SuElement::zero();
    while let Some((w, c)) = pending.pop_last() {
        let Some(t) = leftmost_descent(&w) else {
            out.add_term(PbwMonomial(w), c);
            continue;
        };
        let mut swapped = w.clone();
        swapped.swap(t, t + 1);
        pending.add_term(swapped, c.clone());
        for (&k, alpha) in alg.bracket_basis(w[t], w[t + 1]).iter() {
            let mut sub = Vec::with_capacity(w.len() - 1);
            sub.extend_from_slice(&w[..t]);
            sub.push(k);
            sub.extend_from_slice(&w[t + 2..]);
            pending.add_term(sub, &c * alpha);
        }
    }
    out
}

/// The straightening map σ applied to a scalar multiple of a word.
pub fn normalize(alg: &GradedLieAlgebra, w: &RawWord) -> Result<SuElement, PbwError> {
    check_letters(alg, &w.letters)?;
    if w.scalar.is_zero() || !word_is_gas(alg, &w.letters)? {
        return Ok(SuElement::zero());
    }
    Ok(straighten(
        alg,
        LinComb::term(w.letters.clone(), w.scalar.clone()),
    ))
}

pub fn normalize_word(alg: &GradedLieAlgebra, letters: &[usize]) -> Result<SuElement, PbwError> {
    normalize(alg, &RawWord::new(letters.to_vec()))
}

/// σ extended linearly to a combination of words.
pub fn normalize_comb(
    alg: &GradedLieAlgebra,
    x: &LinComb<Vec<usize>>,
) -> Result<SuElement, PbwError> {
    let mut out = SuElement::zero();
    for (w, c) in x.iter() {
        out.add_scaled(&normalize_word(alg, w)?, c);
    }
    Ok(out)
}

/// Product in SU_G(L): concatenate monomials, then normalize.
pub fn su_mul(alg: &GradedLieAlgebra, a: &SuElement, b: &SuElement) -> Result<SuElement, PbwError> {
    let mut out = SuElement::zero();
    for (m1, c1) in a.iter() {
        for (m2, c2) in b.iter() {
            let mut w = m1.0.clone();
            w.extend_from_slice(&m2.0);
            out.add_scaled(&normalize_word(alg, &w)?, &(c1 * c2));
        }
    }
    Ok(out)
}

pub fn su_one() -> SuElement {
    SuElement::term(PbwMonomial::unit(), Q::one())
}

/// Image of a Lie algebra element under L → SU_G(L).
pub fn su_from_lie(x: &LieVector) -> SuElement {
    x.map_keys(|&i| Some(PbwMonomial(vec![i])))
}

/// Enumerates non-decreasing index sequences of length ≤ `max_len` whose
/// every prefix satisfies `keep`; `keep` must be prefix-closed.
fn sorted_words(
    n: usize,
    max_len: usize,
    mut keep: impl FnMut(&[usize]) -> Result<bool, GroupError>,
) -> Result<Vec<PbwMonomial>, GroupError> {
    let mut out = vec![PbwMonomial::unit()];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            let start = w.last().copied().unwrap_or(0);
            for i in start..n {
                let mut x = w.clone();
                x.push(i);
                if keep(&x)? {
                    next.push(x);
                }
            }
        }
        out.extend(next.iter().cloned().map(PbwMonomial));
        layer = next;
        if layer.is_empty() {
            break;
        }
    }
    Ok(out)
}

/// PBW basis of SU_G(L) up to length `max_len`: sorted monomials whose
/// degree set generates an abelian subgroup, ordered by length then lex.
pub fn pbw_basis(alg: &GradedLieAlgebra, max_len: usize) -> Result<Vec<PbwMonomial>, PbwError> {
    Ok(sorted_words(alg.dim(), max_len, |w| {
        let last = alg.degree(*w.last().expect("nonempty"));
        // the prefix already passed, so only the new letter needs checking
        for &i in &w[..w.len() - 1] {
            if !alg.group().commute(alg.degree(i), last)? {
                return Ok(false);
            }
        }
        Ok(true)
    })?)
}

/// Homogeneous spanning set of U_G(L): sorted monomials whose consecutive
/// degrees commute. No independence is claimed.
pub fn ug_spanning(alg: &GradedLieAlgebra, max_len: usize) -> Result<Vec<PbwMonomial>, PbwError> {
    Ok(sorted_words(alg.dim(), max_len, |w| match w {
        [.., a, b] => alg.group().commute(alg.degree(*a), alg.degree(*b)),
        _ => Ok(true),
    })?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairFailure {
    pub i: usize,
    pub j: usize,
    /// `σ(e_i e_j) − σ(e_j e_i)` rendered.
    pub commutator: String,
    /// `[e_i, e_j]` rendered.
    pub bracket: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbedReport {
    pub dim: usize,
    pub rank_of_generators: usize,
    pub injective: bool,
    pub pairs_checked: usize,
    pub pair_failures: Vec<PairFailure>,
}

impl EmbedReport {
    pub fn passed(&self) -> bool {
        self.injective && self.pair_failures.is_empty()
    }
}

/// Verifies that L embeds in SU_G(L): the generators stay independent and
/// `σ(e_i e_j) − σ(e_j e_i)` equals the image of `[e_i, e_j]` for all pairs.
pub fn embed_check(alg: &GradedLieAlgebra) -> Result<EmbedReport, PbwError> {
    let n = alg.dim();
    let images: Vec<SuElement> = (0..n)
        .map(|i| normalize_word(alg, &[i]))
        .collect::<Result<_, _>>()?;
    let rank = crate::linear::rank_of(&images);
    let mut failures = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let lhs = normalize_word(alg, &[i, j])?.sub(&normalize_word(alg, &[j, i])?);
            let rhs = su_from_lie(&alg.bracket_basis(i, j));
            if lhs != rhs {
                failures.push(PairFailure {
                    i,
                    j,
                    commutator: format_su(alg, &lhs),
                    bracket: format_su(alg, &rhs),
                });
            }
        }
    }
    Ok(EmbedReport {
        dim: n,
        rank_of_generators: rank,
        injective: rank == n,
        pairs_checked: n * n,
        pair_failures: failures,
    })
}

/// Renders `c1 * m1 + c2 * m2 + …`, leading (longest, then lexicographically
/// largest) monomial first; the zero element renders as `0`.
pub fn format_su(alg: &GradedLieAlgebra, x: &SuElement) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.iter()
        .rev()
        .map(|(m, c)| format!("{} * {}", fmt_rational(c), m.render(alg)))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Display adapter pairing an element with its algebra.
pub struct SuDisplay<'a>(pub &'a GradedLieAlgebra, pub &'a SuElement);

impl fmt::Display for SuDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_su(self.0, self.1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupSpec;
    use crate::liealg::BracketEntry;
    use crate::linear::q;

    fn sl2() -> GradedLieAlgebra {
        let z = |k| GroupElement::FreeAbelian(vec![k]);
        let e = |i, j, k, c| BracketEntry {
            i,
            j,
            terms: vec![(k, q(c))],
        };
        GradedLieAlgebra::new(
            GroupSpec::free_abelian(1),
            vec!["e".into(), "h".into(), "f".into()],
            vec![z(1), z(0), z(-1)],
            vec![e(0, 1, 0, -2), e(0, 2, 1, 1), e(1, 2, 2, -2)],
        )
        .unwrap()
    }

    fn c2c2() -> GradedLieAlgebra {
        let g =
            GroupSpec::free_product_cyclic_named(vec![2, 2], vec!["g".into(), "h".into()]).unwrap();
        let d = vec![g.parse_element("g").unwrap(), g.parse_element("h").unwrap()];
        GradedLieAlgebra::abelian(g, vec!["x".into(), "y".into()], d).unwrap()
    }

    fn mono(v: &[usize]) -> PbwMonomial {
        PbwMonomial::new(v.to_vec()).unwrap()
    }

    #[test]
    fn single_straightening_step() {
        let a = sl2();
        let r = normalize_word(&a, &[2, 0]).unwrap();
        assert_eq!(format_su(&a, &r), "1 * e f + -1 * h");
    }

    #[test]
    fn non_gas_word_vanishes() {
        let a = c2c2();
        assert!(normalize_word(&a, &[0, 1]).unwrap().is_zero());
        assert!(normalize_word(&a, &[1, 0, 0]).unwrap().is_zero());
        assert_eq!(
            normalize_word(&a, &[1, 1]).unwrap(),
            SuElement::term(mono(&[1, 1]), q(1))
        );
    }

    #[test]
    fn scalar_is_linear() {
        let a = sl2();
        let w = RawWord {
            letters: vec![2, 1, 0],
            scalar: q(3),
        };
        assert_eq!(
            normalize(&a, &w).unwrap(),
            normalize_word(&a, &[2, 1, 0]).unwrap().scaled(&q(3))
        );
        assert_eq!(normalize_word(&a, &[5]), Err(PbwError::IndexOutOfRange(5)));
    }

    #[test]
    fn sorted_monomials_are_fixed() {
        let a = sl2();
        for m in pbw_basis(&a, 3).unwrap() {
            assert_eq!(
                normalize_word(&a, m.indices()).unwrap(),
                SuElement::term(m, q(1))
            );
        }
    }

    #[test]
    fn unit_is_neutral() {
        let a = sl2();
        let x = normalize_word(&a, &[2, 1, 0]).unwrap();
        assert_eq!(su_mul(&a, &su_one(), &x).unwrap(), x);
        assert_eq!(su_mul(&a, &x, &su_one()).unwrap(), x);
    }

    #[test]
    fn c2c2_product_is_zero() {
        let a = c2c2();
        let x = su_from_lie(&a.basis_vector(0));
        let y = su_from_lie(&a.basis_vector(1));
        assert!(su_mul(&a, &x, &y).unwrap().is_zero());
    }

    #[test]
    fn pbw_and_spanning_sets() {
        let a = c2c2();
        let expect = vec![
            mono(&[]),
            mono(&[0]),
            mono(&[1]),
            mono(&[0, 0]),
            mono(&[1, 1]),
        ];
        assert_eq!(pbw_basis(&a, 2).unwrap(), expect);
        assert_eq!(ug_spanning(&a, 2).unwrap(), expect);
        assert_eq!(pbw_basis(&a, 0).unwrap(), vec![mono(&[])]);
        let s = sl2();
        let by_len = |d| {
            pbw_basis(&s, d)
                .unwrap()
                .into_iter()
                .filter(|m| m.len() == d)
                .count()
        };
        assert_eq!(by_len(3), 10);
        assert_eq!(pbw_basis(&s, 3).unwrap(), ug_spanning(&s, 3).unwrap());
    }

    #[test]
    fn spanning_set_over_free_group() {
        let g = GroupSpec::free(3);
        let degs = (0..3).map(|i| g.generator(i).unwrap()).collect();
        let a = GradedLieAlgebra::abelian(g, vec!["x1".into(), "x2".into(), "x3".into()], degs)
            .unwrap();
        let len2: Vec<_> = ug_spanning(&a, 2)
            .unwrap()
            .into_iter()
            .filter(|m| m.len() == 2)
            .collect();
        assert_eq!(len2, vec![mono(&[0, 0]), mono(&[1, 1]), mono(&[2, 2])]);
    }

    #[test]
    fn spanning_set_can_exceed_pbw_basis() {
        // degrees a, 1, b in a free group: "x u y" has commuting neighbours
        // but {a, b} does not generate an abelian subgroup
        let g = GroupSpec::free(2);
        let degs = vec![
            g.generator(0).unwrap(),
            g.identity(),
            g.generator(1).unwrap(),
        ];
        let a =
            GradedLieAlgebra::abelian(g, vec!["x".into(), "u".into(), "y".into()], degs).unwrap();
        let span = ug_spanning(&a, 3).unwrap();
        let basis = pbw_basis(&a, 3).unwrap();
        assert!(span.contains(&mono(&[0, 1, 2])));
        assert!(!basis.contains(&mono(&[0, 1, 2])));
        assert!(basis.iter().all(|m| span.contains(m)));
    }

    #[test]
    fn embedding_holds() {
        assert!(embed_check(&sl2()).unwrap().passed());
        let r = embed_check(&c2c2()).unwrap();
        assert!(r.passed());
        assert_eq!(r.rank_of_generators, 2);
    }

    #[test]
    fn word_parsing() {
        let a = sl2();
        assert_eq!(parse_word(&a, "f h e").unwrap(), vec![2, 1, 0]);
        assert_eq!(parse_word(&a, "[2,0,1]").unwrap(), vec![2, 0, 1]);
        assert_eq!(parse_word(&a, "1").unwrap(), Vec::<usize>::new());
        assert!(matches!(parse_word(&a, "q"), Err(PbwError::UnknownName(_))));
        assert_eq!(parse_word(&a, "[3]"), Err(PbwError::IndexOutOfRange(3)));
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        let mut v = vec![
            mono(&[0, 0]),
            mono(&[2]),
            mono(&[]),
            mono(&[0, 1]),
            mono(&[1]),
        ];
        v.sort();
        assert_eq!(
            v,
            vec![
                mono(&[]),
                mono(&[1]),
                mono(&[2]),
                mono(&[0, 0]),
                mono(&[0, 1])
            ]
        );
        assert!(PbwMonomial::new(vec![1, 0]).is_err());
    }
}
