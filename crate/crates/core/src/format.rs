//! Text file formats: algebra definitions, endomorphism lists, relabelings,
//! and raw presentations. All are TOML documents.
//!
//! An algebra file looks like
//!
//! ```toml
//! name = "sl2"
//!
//! [group]
//! kind = "free_abelian"
//! rank = 1
//!
//! [[basis]]
//! name = "e"
//! degree = "[1]"
//!
//! [[brackets]]
//! i = 0
//! j = 2
//! terms = [{ k = 1, coeff = "1" }]
//! ```
//!
//! `group.kind` is one of `finite` (with `table` and optional `names`),
//! `free` (with `rank` and optional `names`), `free_abelian` (with `rank`),
//! or `free_product_cyclic` (with `orders` and optional `names`).

use std::fmt;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use toml::Spanned;

use crate::groups::{GroupElement, GroupSpec};
use crate::liealg::{BracketEntry, EndoMatrix, GradedLieAlgebra, ValidationReport};
use crate::linear::{parse_rational, Matrix, Q};
use crate::unigroup::Presentation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormatError {
    Io {
        path: PathBuf,
        message: String,
    },
    Syntax {
        path: PathBuf,
        line: Option<usize>,
        message: String,
    },
    Schema {
        path: PathBuf,
        line: Option<usize>,
        key: String,
        message: String,
    },
    Invalid {
        path: PathBuf,
        report: ValidationReport,
    },
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let loc = |path: &PathBuf, line: &Option<usize>| match line {
            Some(l) => format!("{}:{l}", path.display()),
            None => path.display().to_string(),
        };
        match self {
            Self::Io { path, message } => write!(f, "{}: {message}", path.display()),
            Self::Syntax {
                path,
                line,
                message,
            } => write!(f, "{}: {message}", loc(path, line)),
            Self::Schema {
                path,
                line,
                key,
                message,
            } => write!(f, "{}: {key}: {message}", loc(path, line)),
            Self::Invalid { path, report } => {
                write!(f, "{}: algebra fails validation", path.display())?;
                for c in report.checks.iter().filter(|c| !c.passed) {
                    write!(
                        f,
                        "; {}: {}",
                        c.name,
                        c.message.as_deref().unwrap_or("failed")
                    )?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for FormatError {}

/// Source text with a path, used to locate errors.
struct Source<'a> {
    path: &'a Path,
    text: &'a str,
}

impl Source<'_> {
    fn line_of(&self, offset: usize) -> usize {
        self.text[..offset.min(self.text.len())]
            .matches('\n')
            .count()
            + 1
    }

    fn schema<T>(
        &self,
        span: Option<std::ops::Range<usize>>,
        key: impl Into<String>,
        message: impl fmt::Display,
    ) -> Result<T, FormatError> {
        Err(FormatError::Schema {
            path: self.path.to_path_buf(),
            line: span.map(|s| self.line_of(s.start)),
            key: key.into(),
            message: message.to_string(),
        })
    }

    fn parse<T: for<'de> Deserialize<'de>>(&self) -> Result<T, FormatError> {
        toml::from_str(self.text).map_err(|e| FormatError::Syntax {
            path: self.path.to_path_buf(),
            line: e.span().map(|s| self.line_of(s.start)),
            message: e.message().to_string(),
        })
    }
}

fn read(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|e| FormatError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    kind: String,
    rank: Option<usize>,
    table: Option<Vec<Vec<usize>>>,
    names: Option<Vec<String>>,
    orders: Option<Vec<u64>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawCoeff {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBasis {
    name: String,
    degree: Spanned<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    k: usize,
    coeff: Spanned<RawCoeff>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBracket {
    i: usize,
    j: usize,
    #[serde(default)]
    terms: Vec<RawTerm>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    name: Option<String>,
    description: Option<String>,
    group: Spanned<RawGroup>,
    #[serde(default)]
    basis: Vec<Spanned<RawBasis>>,
    #[serde(default)]
    brackets: Vec<Spanned<RawBracket>>,
}

fn build_group(src: &Source, g: &Spanned<RawGroup>, key: &str) -> Result<GroupSpec, FormatError> {
    let span = Some(g.span());
    let raw = g.get_ref();
    let need_rank = || match raw.rank {
        Some(r) => Ok(r),
        None => src.schema(span.clone(), format!("{key}.rank"), "missing rank"),
    };
    let built = match raw.kind.as_str() {
        "finite" => {
            let Some(table) = raw.table.clone() else {
                return src.schema(
                    span,
                    format!("{key}.table"),
                    "finite group needs a Cayley table",
                );
            };
            GroupSpec::finite(table, raw.names.clone())
        }
        "free" => {
            let rank = need_rank()?;
            match raw.names.clone() {
                Some(names) if names.len() != rank => {
                    return src.schema(
                        span,
                        format!("{key}.names"),
                        format!("{} names for rank {rank}", names.len()),
                    )
                }
                Some(names) => GroupSpec::free_named(names),
                None => Ok(GroupSpec::free(rank)),
            }
        }
        "free_abelian" => Ok(GroupSpec::free_abelian(need_rank()?)),
        "free_product_cyclic" => {
            let Some(orders) = raw.orders.clone() else {
                return src.schema(
                    span,
                    format!("{key}.orders"),
                    "free product needs factor orders",
                );
            };
            match raw.names.clone() {
                Some(names) => GroupSpec::free_product_cyclic_named(orders, names),
                None => GroupSpec::free_product_cyclic(orders),
            }
        }
        other => {
            return src.schema(
                span,
                format!("{key}.kind"),
                format!("unknown group kind {other:?}"),
            )
        }
    };
    built.or_else(|e| src.schema(span, key, e))
}

fn coeff(src: &Source, c: &Spanned<RawCoeff>, key: String) -> Result<Q, FormatError> {
    match c.get_ref() {
        RawCoeff::Int(n) => Ok(Q::from_integer((*n).into())),
        RawCoeff::Text(s) => match parse_rational(s) {
            Some(q) => Ok(q),
            None => src.schema(
                Some(c.span()),
                key,
                format!("{s:?} is not an exact rational"),
            ),
        },
    }
}

/// A parsed algebra file with its optional metadata.
#[derive(Clone, Debug)]
pub struct AlgebraFile {
    pub name: Option<String>,
    pub description: Option<String>,
    pub algebra: GradedLieAlgebra,
}

/// Parses algebra text without running the Lie-axiom checks.
pub fn algebra_from_str(text: &str, path: &Path) -> Result<AlgebraFile, FormatError> {
    let src = Source { path, text };
    let raw: RawAlgebra = src.parse()?;
    let group = build_group(&src, &raw.group, "group")?;
    let mut names = Vec::new();
    let mut degrees = Vec::new();
    for (n, b) in raw.basis.iter().enumerate() {
        let rb = b.get_ref();
        names.push(rb.name.clone());
        match group.parse_element(rb.degree.get_ref()) {
            Ok(d) => degrees.push(d),
            Err(e) => return src.schema(Some(rb.degree.span()), format!("basis[{n}].degree"), e),
        }
    }
    let mut entries = Vec::new();
    for (n, br) in raw.brackets.iter().enumerate() {
        let rb = br.get_ref();
        let terms = rb
            .terms
            .iter()
            .enumerate()
            .map(|(t, term)| {
                Ok((
                    term.k,
                    coeff(&src, &term.coeff, format!("brackets[{n}].terms[{t}].coeff"))?,
                ))
            })
            .collect::<Result<_, FormatError>>()?;
        entries.push(BracketEntry {
            i: rb.i,
            j: rb.j,
            terms,
        });
    }
    let algebra = match GradedLieAlgebra::new(group, names, degrees, entries) {
        Ok(a) => a,
        Err(e) => {
            // point at the first bracket entry mentioning the offending pair, else the basis block
            let span = raw
                .brackets
                .first()
                .map(|b| b.span())
                .or_else(|| raw.basis.first().map(|b| b.span()));
            return src.schema(span, "brackets", e);
        }
    };
    Ok(AlgebraFile {
        name: raw.name,
        description: raw.description,
        algebra,
    })
}

/// Reads an algebra file without running the Lie-axiom checks.
pub fn load_algebra(path: &Path) -> Result<AlgebraFile, FormatError> {
    algebra_from_str(&read(path)?, path)
}

/// Reads an algebra file and requires it to pass validation.
pub fn parse_algebra(path: &Path) -> Result<AlgebraFile, FormatError> {
    let file = load_algebra(path)?;
    let report = file.algebra.validate();
    if !report.passed() {
        return Err(FormatError::Invalid {
            path: path.to_path_buf(),
            report,
        });
    }
    Ok(file)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    row: usize,
    col: usize,
    coeff: Spanned<RawCoeff>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMatrix {
    name: String,
    degree: Option<Spanned<String>>,
    #[serde(default)]
    entries: Vec<RawEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMatrices {
    #[serde(default)]
    matrix: Vec<Spanned<RawMatrix>>,
}

/// Parses a list of endomorphisms of `alg`:
///
/// ```toml
/// [[matrix]]
/// name = "e12"
/// degree = "a b^-1"
/// entries = [{ row = 0, col = 1, coeff = "1" }]
/// ```
pub fn matrices_from_str(
    text: &str,
    path: &Path,
    alg: &GradedLieAlgebra,
) -> Result<Vec<EndoMatrix>, FormatError> {
    let src = Source { path, text };
    let raw: RawMatrices = src.parse()?;
    let n = alg.dim();
    let mut out = Vec::new();
    for (m, sm) in raw.matrix.iter().enumerate() {
        let rm = sm.get_ref();
        let degree = match &rm.degree {
            None => None,
            Some(d) => match alg.group().parse_element(d.get_ref()) {
                Ok(g) => Some(g),
                Err(e) => return src.schema(Some(d.span()), format!("matrix[{m}].degree"), e),
            },
        };
        let mut mat = Matrix::zeros(n, n);
        for (t, e) in rm.entries.iter().enumerate() {
            if e.row >= n || e.col >= n {
                return src.schema(
                    Some(sm.span()),
                    format!("matrix[{m}].entries[{t}]"),
                    format!("entry ({}, {}) outside {n}x{n}", e.row, e.col),
                );
            }
            mat[(e.row, e.col)] = coeff(&src, &e.coeff, format!("matrix[{m}].entries[{t}].coeff"))?;
        }
        out.push(EndoMatrix {
            name: rm.name.clone(),
            matrix: mat,
            degree,
        });
    }
    Ok(out)
}

pub fn load_matrices(path: &Path, alg: &GradedLieAlgebra) -> Result<Vec<EndoMatrix>, FormatError> {
    matrices_from_str(&read(path)?, path, alg)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMapEntry {
    fine: Spanned<String>,
    coarse: Spanned<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRelabel {
    group: Spanned<RawGroup>,
    #[serde(default)]
    map: Vec<RawMapEntry>,
}

/// A coarse group with a map from fine degrees to coarse labels.
#[derive(Clone, Debug)]
pub struct RelabelFile {
    pub group: GroupSpec,
    pub map: Vec<(GroupElement, GroupElement)>,
}

/// Parses a relabeling of `fine`'s degrees:
///
/// ```toml
/// [group]
/// kind = "finite"
/// table = [[0, 1], [1, 0]]
/// names = ["even", "odd"]
///
/// [[map]]
/// fine = "[1]"
/// coarse = "odd"
/// ```
pub fn relabel_from_str(
    text: &str,
    path: &Path,
    fine: &GroupSpec,
) -> Result<RelabelFile, FormatError> {
    let src = Source { path, text };
    let raw: RawRelabel = src.parse()?;
    let group = build_group(&src, &raw.group, "group")?;
    let mut map = Vec::new();
    for (n, e) in raw.map.iter().enumerate() {
        let f = match fine.parse_element(e.fine.get_ref()) {
            Ok(f) => f,
            Err(err) => return src.schema(Some(e.fine.span()), format!("map[{n}].fine"), err),
        };
        let c = match group.parse_element(e.coarse.get_ref()) {
            Ok(c) => c,
            Err(err) => return src.schema(Some(e.coarse.span()), format!("map[{n}].coarse"), err),
        };
        map.push((f, c));
    }
    Ok(RelabelFile { group, map })
}

pub fn load_relabel(path: &Path, fine: &GroupSpec) -> Result<RelabelFile, FormatError> {
    relabel_from_str(&read(path)?, path, fine)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPresentation {
    generators: Vec<String>,
    #[serde(default)]
    relations: Vec<Spanned<[String; 3]>>,
}

/// Parses a raw presentation; each relation `[a, b, c]` means `a·b = c`.
pub fn presentation_from_str(text: &str, path: &Path) -> Result<Presentation, FormatError> {
    let src = Source { path, text };
    let raw: RawPresentation = src.parse()?;
    let mut rels = Vec::new();
    for (n, r) in raw.relations.iter().enumerate() {
        let mut idx = [0usize; 3];
        for (slot, name) in r.get_ref().iter().enumerate() {
            match raw.generators.iter().position(|g| g == name) {
                Some(p) => idx[slot] = p,
                None => {
                    return src.schema(
                        Some(r.span()),
                        format!("relations[{n}]"),
                        format!("unknown generator {name:?}"),
                    )
                }
            }
        }
        rels.push((idx[0], idx[1], idx[2]));
    }
    Presentation::new(raw.generators, rels).or_else(|e| src.schema(None, "relations", e))
}

pub fn load_presentation(path: &Path) -> Result<Presentation, FormatError> {
    presentation_from_str(&read(path)?, path)
}
