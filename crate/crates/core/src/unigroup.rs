//! Support, universal grading group, its abelianization, and coarsenings.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::{GroupElement, GroupError, GroupSpec};
use crate::liealg::{GradedLieAlgebra, LieError};
use crate::snf::{self, IntMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UnigroupError {
    #[error("relation refers to unknown generator {0}")]
    UnknownGenerator(String),
    #[error(
        "product of support elements {0} and {1} is not in the support; validate the algebra first"
    )]
    ProductOutsideSupport(String, String),
    #[error("relabeling has no entry for support element {0}")]
    NotTotal(String),
    #[error("relabeling maps {0}, which is not in the support")]
    NotInSupport(String),
    #[error("relabeling assigns two labels to {0}")]
    Conflicting(String),
    #[error("Smith normal form check failed: {0}")]
    SnfCheck(String),
    #[error("abelianization image violates relation {0}")]
    ImageCheck(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// Distinct degrees of basis elements, in normal-form order.
pub fn support(alg: &GradedLieAlgebra) -> Vec<GroupElement> {
    alg.components().into_iter().map(|(d, _)| d).collect()
}

/// Generators and relations `s1 · s2 = s3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    /// `(s1, s2, s3)` as generator indices.
    pub relations: Vec<(usize, usize, usize)>,
}

impl Presentation {
    pub fn new(
        generators: Vec<String>,
        relations: Vec<(usize, usize, usize)>,
    ) -> Result<Self, UnigroupError> {
        let n = generators.len();
        for &(a, b, c) in &relations {
            if let Some(bad) = [a, b, c].into_iter().find(|&x| x >= n) {
                return Err(UnigroupError::UnknownGenerator(bad.to_string()));
            }
        }
        Ok(Self {
            generators,
            relations,
        })
    }

    /// Builds a presentation from named relations.
    pub fn from_named(
        generators: Vec<String>,
        relations: &[[String; 3]],
    ) -> Result<Self, UnigroupError> {
        let idx = |s: &String| {
            generators
                .iter()
                .position(|g| g == s)
                .ok_or_else(|| UnigroupError::UnknownGenerator(s.clone()))
        };
        let rels = relations
            .iter()
            .map(|[a, b, c]| Ok((idx(a)?, idx(b)?, idx(c)?)))
            .collect::<Result<_, UnigroupError>>()?;
        Self::new(generators, rels)
    }

    /// One line `s1 * s2 = s3` per relation.
    pub fn render(&self) -> Vec<String> {
        self.relations
            .iter()
            .map(|&(a, b, c)| {
                format!(
                    "{} * {} = {}",
                    self.generators[a], self.generators[b], self.generators[c]
                )
            })
            .collect()
    }
}

/// Presentation of the universal grading group: one generator per support
/// element and a relation `s1 s2 = s1·s2` for each ordered pair with
/// `[L_{s1}, L_{s2}] ≠ 0`.
pub fn universal_presentation(alg: &GradedLieAlgebra) -> Result<Presentation, UnigroupError> {
    let comps = alg.components();
    let group = alg.group();
    let position: BTreeMap<&GroupElement, usize> =
        comps.iter().enumerate().map(|(i, (d, _))| (d, i)).collect();
    let mut relations = Vec::new();
    for (a, (s1, idx1)) in comps.iter().enumerate() {
        for (b, (s2, idx2)) in comps.iter().enumerate() {
            let nonzero = idx1
                .iter()
                .any(|&i| idx2.iter().any(|&j| !alg.bracket_basis(i, j).is_zero()));
            if !nonzero {
                continue;
            }
            let prod = group.mul(s1, s2)?;
            let c = *position.get(&prod).ok_or_else(|| {
                UnigroupError::ProductOutsideSupport(
                    group.format_element(s1),
                    group.format_element(s2),
                )
            })?;
            relations.push((a, b, c));
        }
    }
    let generators = comps.iter().map(|(d, _)| group.format_element(d)).collect();
    Presentation::new(generators, relations)
}

/// The abelianization `Z^r ⊕ Z/d_1 ⊕ … ⊕ Z/d_k` with generator images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianizationData {
    pub free_rank: usize,
    /// `d_1 | d_2 | …`, each ≥ 2.
    pub invariant_factors: Vec<BigInt>,
    /// Per generator: free coordinates followed by torsion coordinates,
    /// the latter reduced into `[0, d_i)`.
    pub images: Vec<Vec<BigInt>>,
    pub generators: Vec<String>,
}

impl AbelianizationData {
    /// `Z^r x Z/d1 x …`, or `1` for the trivial group.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" x ")
        }
    }

    pub fn render_image(&self, i: usize) -> String {
        let parts: Vec<String> = self.images[i].iter().map(BigInt::to_string).collect();
        format!("({})", parts.join(", "))
    }

    /// Pairs of generators with equal images.
    pub fn collisions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 0..self.images.len() {
            for i in 0..j {
                if self.images[i] == self.images[j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let r = self.free_rank;
        v.iter()
            .enumerate()
            .map(|(k, x)| {
                if k < r {
                    x.clone()
                } else {
                    x.mod_floor(&self.invariant_factors[k - r])
                }
            })
            .collect()
    }
}

/// Relation matrix: row `s1 + s2 − s3` per relation.
pub fn relation_matrix(p: &Presentation) -> IntMatrix {
    p.relations
        .iter()
        .map(|&(a, b, c)| {
            let mut row = vec![BigInt::zero(); p.generators.len()];
            row[a] += 1;
            row[b] += 1;
            row[c] -= 1;
            row
        })
        .collect()
}

/// Abelianizes a presentation via Smith normal form. The form itself
/// (`U·M·V = D`, `det U = ±1`, `det V = ±1`, divisibility) and the
/// generator images are re-verified on every call.
pub fn abelianize(p: &Presentation) -> Result<AbelianizationData, UnigroupError> {
    let n = p.generators.len();
    let m = relation_matrix(p);
    let rows = m.len();
    let s = snf::smith_normal_form(&m, rows, n);
    snf::verify(&m, rows, n, &s).map_err(UnigroupError::SnfCheck)?;
    let diag = s.diagonal();
    let rank = s.rank();
    // quotient Z^n / rowspace(M) ≅ Z^n / rowspace(D) via x ↦ x·V
    let torsion_cols: Vec<usize> = (0..rank).filter(|&k| diag[k] > BigInt::one()).collect();
    let invariant_factors: Vec<BigInt> = torsion_cols.iter().map(|&k| diag[k].clone()).collect();
    let free_cols: Vec<usize> = (rank..n).collect();
    let mut data = AbelianizationData {
        free_rank: free_cols.len(),
        invariant_factors,
        images: Vec::with_capacity(n),
        generators: p.generators.clone(),
    };
    for i in 0..n {
        let raw: Vec<BigInt> = free_cols
            .iter()
            .chain(&torsion_cols)
            .map(|&k| s.v[i][k].clone())
            .collect();
        let img = data.reduce(&raw);
        data.images.push(img);
    }
    for (r, &(a, b, c)) in p.relations.iter().enumerate() {
        let sum: Vec<BigInt> = (0..data.free_rank + data.invariant_factors.len())
            .map(|k| &data.images[a][k] + &data.images[b][k] - &data.images[c][k])
            .collect();
        if data.reduce(&sum).iter().any(|x| !x.is_zero()) {
            return Err(UnigroupError::ImageCheck(r));
        }
    }
    Ok(data)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianVerdict {
    pub abelian: bool,
    pub collisions: Vec<(usize, usize)>,
    pub data: AbelianizationData,
}

/// A presentation's support generators keep distinct images in the
/// abelianization iff no two components coalesce.
pub fn is_abelian_presentation(p: &Presentation) -> Result<AbelianVerdict, UnigroupError> {
    let data = abelianize(p)?;
    let collisions = data.collisions();
    Ok(AbelianVerdict {
        abelian: collisions.is_empty(),
        collisions,
        data,
    })
}

/// Whether the grading is realized by its universal abelian grading group.
pub fn is_abelian_grading(alg: &GradedLieAlgebra) -> Result<AbelianVerdict, UnigroupError> {
    is_abelian_presentation(&universal_presentation(alg)?)
}

/// A relabeling of the support of a fine grading by elements of a coarse
/// group, with the induced component merges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coarsening {
    pub fine_group: GroupSpec,
    pub coarse_group: GroupSpec,
    /// `p` restricted to the fine support, in support order.
    pub support_map: Vec<(GroupElement, GroupElement)>,
    /// Coarse label ↦ fine degrees merged into it.
    pub merges: Vec<(GroupElement, Vec<GroupElement>)>,
}

impl Coarsening {
    pub fn apply(&self, fine: &GroupElement) -> Option<&GroupElement> {
        self.support_map
            .iter()
            .find(|(f, _)| f == fine)
            .map(|(_, c)| c)
    }

    /// `other ∘ self`, defined when `other` relabels this coarsening's image.
    pub fn then(&self, other: &Coarsening) -> Option<Coarsening> {
        let support_map: Vec<(GroupElement, GroupElement)> = self
            .support_map
            .iter()
            .map(|(f, c)| other.apply(c).map(|c2| (f.clone(), c2.clone())))
            .collect::<Option<_>>()?;
        Some(Coarsening {
            fine_group: self.fine_group.clone(),
            coarse_group: other.coarse_group.clone(),
            merges: merges_of(&support_map),
            support_map,
        })
    }

    pub fn render(&self) -> Vec<String> {
        self.support_map
            .iter()
            .map(|(f, c)| {
                format!(
                    "p({}) = {}",
                    self.fine_group.format_element(f),
                    self.coarse_group.format_element(c)
                )
            })
            .collect()
    }
}

fn merges_of(map: &[(GroupElement, GroupElement)]) -> Vec<(GroupElement, Vec<GroupElement>)> {
    let mut m: BTreeMap<GroupElement, Vec<GroupElement>> = BTreeMap::new();
    for (f, c) in map {
        m.entry(c.clone()).or_default().push(f.clone());
    }
    m.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoarseningWitness {
    /// Basis indices of the offending bracket (and component, if any).
    pub indices: Vec<usize>,
    pub message: String,
}

#[derive(Clone, Debug)]
pub struct CoarseningReport {
    pub valid: bool,
    pub coarsening: Coarsening,
    /// The algebra regraded by the coarse labels.
    pub coarse_algebra: GradedLieAlgebra,
    pub witness: Option<CoarseningWitness>,
}

/// Checks that relabeling the fine support by `relabel` yields a grading by
/// `coarse_group`, and returns the support surjection.
pub fn coarsening_check(
    fine: &GradedLieAlgebra,
    coarse_group: &GroupSpec,
    relabel: &[(GroupElement, GroupElement)],
) -> Result<CoarseningReport, UnigroupError> {
    let fg = fine.group();
    let supp = support(fine);
    let mut table: BTreeMap<&GroupElement, &GroupElement> = BTreeMap::new();
    for (f, c) in relabel {
        fg.check(f)?;
        coarse_group.check(c)?;
        if !supp.contains(f) {
            return Err(UnigroupError::NotInSupport(fg.format_element(f)));
        }
        if let Some(prev) = table.insert(f, c) {
            if prev != c {
                return Err(UnigroupError::Conflicting(fg.format_element(f)));
            }
        }
    }
    let support_map: Vec<(GroupElement, GroupElement)> = supp
        .iter()
        .map(|s| {
            table
                .get(s)
                .map(|c| (s.clone(), (*c).clone()))
                .ok_or_else(|| UnigroupError::NotTotal(fg.format_element(s)))
        })
        .collect::<Result<_, _>>()?;
    let degrees = fine
        .degrees()
        .iter()
        .map(|d| (*table.get(d).expect("support map is total")).clone())
        .collect();
    let coarse_algebra = fine.regraded(coarse_group.clone(), degrees)?;
    let grading = coarse_algebra
        .validate()
        .check("grading")
        .cloned()
        .expect("validate always reports grading");
    let witness = (!grading.passed).then(|| CoarseningWitness {
        indices: grading.witness.clone().unwrap_or_default(),
        message: grading.message.clone().unwrap_or_default(),
    });
    Ok(CoarseningReport {
        valid: grading.passed,
        coarsening: Coarsening {
            fine_group: fg.clone(),
            coarse_group: coarse_group.clone(),
            merges: merges_of(&support_map),
            support_map,
        },
        coarse_algebra,
        witness,
    })
}

/// The relabeling that sends every support element to itself.
pub fn identity_relabel(alg: &GradedLieAlgebra) -> Vec<(GroupElement, GroupElement)> {
    support(alg).into_iter().map(|s| (s.clone(), s)).collect()
}
