//! Group backends with a decidable word problem.
//!
//! Four families are supported: finite groups given by a Cayley table, free
//! groups, free abelian groups, and free products of finite cyclic groups.
//! Elements are always stored in normal form, so equality of elements is
//! structural equality.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest table size for which associativity is checked on every triple.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 64;
/// Number of sampled triples used for larger tables.
pub const SAMPLED_ASSOCIATIVITY_TRIPLES: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("element {element:?} does not belong to a {group} group")]
    BackendMismatch {
        element: GroupElement,
        group: &'static str,
    },
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("invalid group specification: {0}")]
    InvalidSpec(String),
    #[error("cannot parse group element {literal:?}: {reason}")]
    Parse { literal: String, reason: String },
    #[error("exponent overflow")]
    Overflow,
}

/// An element of one of the supported groups, in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupElement {
    /// Index into a Cayley table; 0 is the identity.
    Finite(usize),
    /// Reduced word of `(generator, nonzero exponent)` syllables, adjacent
    /// generators distinct.
    Free(Vec<(usize, i64)>),
    /// Coordinate vector in `Z^n`.
    FreeAbelian(Vec<i64>),
    /// Alternating word of `(factor, exponent)` syllables with exponent in
    /// `1..order`, adjacent factors distinct.
    FreeProduct(Vec<(usize, u64)>),
}

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    names: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates the table as a group with identity at index 0.
    pub fn new(table: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::InvalidTable(format!(
                    "row {i} has length {} (expected {n})",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(GroupError::InvalidTable(format!(
                    "entry {bad} in row {i} out of range"
                )));
            }
        }
        if let Some(names) = &names {
            if names.len() != n {
                return Err(GroupError::InvalidTable(format!(
                    "{} names for {n} elements",
                    names.len()
                )));
            }
            let mut sorted = names.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != n {
                return Err(GroupError::InvalidTable("duplicate element names".into()));
            }
        }
        // Latin square: every row and column is a permutation.
        for i in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for j in 0..n {
                if std::mem::replace(&mut seen_row[table[i][j]], true) {
                    return Err(GroupError::InvalidTable(format!(
                        "row {i} repeats element {}",
                        table[i][j]
                    )));
                }
                if std::mem::replace(&mut seen_col[table[j][i]], true) {
                    return Err(GroupError::InvalidTable(format!(
                        "column {i} repeats element {}",
                        table[j][i]
                    )));
                }
            }
        }
        for (x, row) in table.iter().enumerate() {
            if table[0][x] != x || row[0] != x {
                return Err(GroupError::InvalidTable(format!(
                    "index 0 is not an identity for element {x}"
                )));
            }
        }
        let mut inverses = Vec::with_capacity(n);
        for (x, row) in table.iter().enumerate() {
            match (0..n).find(|&y| row[y] == 0 && table[y][x] == 0) {
                Some(y) => inverses.push(y),
                None => {
                    return Err(GroupError::InvalidTable(format!(
                        "element {x} has no two-sided inverse"
                    )))
                }
            }
        }
        let group = Self {
            table,
            inverses,
            names,
        };
        group.check_associativity()?;
        Ok(group)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    fn check_triple(&self, a: usize, b: usize, c: usize) -> Result<(), GroupError> {
        if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
            return Err(GroupError::InvalidTable(format!(
                "associativity fails on ({a}, {b}, {c})"
            )));
        }
        Ok(())
    }

    fn check_associativity(&self) -> Result<(), GroupError> {
        let n = self.order();
        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        self.check_triple(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(self.table_hash());
            for _ in 0..SAMPLED_ASSOCIATIVITY_TRIPLES {
                let (a, b, c) = (
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                );
                self.check_triple(a, b, c)?;
            }
        }
        Ok(())
    }

    /// FNV-1a over the table entries; seeds the associativity sampler.
    pub fn table_hash(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for row in &self.table {
            for &x in row {
                for byte in (x as u64).to_le_bytes() {
                    h ^= u64::from(byte);
                    h = h.wrapping_mul(0x0000_0100_0000_01b3);
                }
            }
        }
        h
    }
}

/// The group in which degrees live.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Finite(FiniteGroup),
    Free {
        rank: usize,
        names: Vec<String>,
    },
    FreeAbelian {
        rank: usize,
    },
    FreeProductCyclic {
        orders: Vec<u64>,
        names: Vec<String>,
    },
}

fn default_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

fn check_names(names: &[String], n: usize) -> Result<(), GroupError> {
    if names.len() != n {
        return Err(GroupError::InvalidSpec(format!(
            "{} generator names for {n} generators",
            names.len()
        )));
    }
    for name in names {
        if name.is_empty()
            || name == "1"
            || name.contains(|c: char| c.is_whitespace() || "^[],".contains(c))
        {
            return Err(GroupError::InvalidSpec(format!(
                "unusable generator name {name:?}"
            )));
        }
    }
    let mut sorted = names.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != n {
        return Err(GroupError::InvalidSpec("duplicate generator names".into()));
    }
    Ok(())
}

impl GroupSpec {
    pub fn finite(table: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self, GroupError> {
        Ok(Self::Finite(FiniteGroup::new(table, names)?))
    }

    pub fn free(rank: usize) -> Self {
        Self::Free {
            rank,
            names: default_names(rank),
        }
    }

    pub fn free_named(names: Vec<String>) -> Result<Self, GroupError> {
        check_names(&names, names.len())?;
        Ok(Self::Free {
            rank: names.len(),
            names,
        })
    }

    pub fn free_abelian(rank: usize) -> Self {
        Self::FreeAbelian { rank }
    }

    pub fn free_product_cyclic(orders: Vec<u64>) -> Result<Self, GroupError> {
        let names = default_names(orders.len());
        Self::free_product_cyclic_named(orders, names)
    }

    pub fn free_product_cyclic_named(
        orders: Vec<u64>,
        names: Vec<String>,
    ) -> Result<Self, GroupError> {
        if let Some(bad) = orders.iter().find(|&&o| o < 2) {
            return Err(GroupError::InvalidSpec(format!(
                "cyclic factor order {bad} is below 2"
            )));
        }
        check_names(&names, orders.len())?;
        Ok(Self::FreeProductCyclic { orders, names })
    }

    /// Cyclic group `Z/n` as a Cayley table.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        Self::finite(table, None).expect("cyclic table is a group")
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Finite(_) => "finite",
            Self::Free { .. } => "free",
            Self::FreeAbelian { .. } => "free_abelian",
            Self::FreeProductCyclic { .. } => "free_product_cyclic",
        }
    }

    /// True when the group is abelian as an abstract group.
    pub fn is_abelian(&self) -> bool {
        match self {
            Self::Finite(g) => (0..g.order()).all(|a| (0..a).all(|b| g.mul(a, b) == g.mul(b, a))),
            Self::Free { rank, .. } => *rank <= 1,
            Self::FreeAbelian { .. } => true,
            Self::FreeProductCyclic { orders, .. } => orders.len() <= 1,
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            Self::Finite(_) => GroupElement::Finite(0),
            Self::Free { .. } => GroupElement::Free(Vec::new()),
            Self::FreeAbelian { rank } => GroupElement::FreeAbelian(vec![0; *rank]),
            Self::FreeProductCyclic { .. } => GroupElement::FreeProduct(Vec::new()),
        }
    }

    /// The `i`-th generator (for finite groups, the element with index `i`).
    pub fn generator(&self, i: usize) -> Result<GroupElement, GroupError> {
        let e = match self {
            Self::Finite(_) => GroupElement::Finite(i),
            Self::Free { .. } => GroupElement::Free(vec![(i, 1)]),
            Self::FreeAbelian { rank } => {
                let mut v = vec![0; *rank];
                if i < *rank {
                    v[i] = 1;
                } else {
                    return Err(GroupError::InvalidElement(format!(
                        "generator {i} out of range"
                    )));
                }
                GroupElement::FreeAbelian(v)
            }
            Self::FreeProductCyclic { .. } => GroupElement::FreeProduct(vec![(i, 1)]),
        };
        self.check(&e)?;
        Ok(e)
    }

    /// Checks that `e` is a normal-form element of this group.
    pub fn check(&self, e: &GroupElement) -> Result<(), GroupError> {
        let mismatch = || GroupError::BackendMismatch {
            element: e.clone(),
            group: self.kind(),
        };
        match (self, e) {
            (Self::Finite(g), GroupElement::Finite(i)) => {
                if *i >= g.order() {
                    return Err(GroupError::InvalidElement(format!(
                        "index {i} outside a group of order {}",
                        g.order()
                    )));
                }
            }
            (Self::Free { rank, .. }, GroupElement::Free(w)) => {
                for (k, &(g, x)) in w.iter().enumerate() {
                    if g >= *rank || x == 0 || (k > 0 && w[k - 1].0 == g) {
                        return Err(GroupError::InvalidElement(format!(
                            "{w:?} is not a reduced word of rank {rank}"
                        )));
                    }
                }
            }
            (Self::FreeAbelian { rank }, GroupElement::FreeAbelian(v)) => {
                if v.len() != *rank {
                    return Err(GroupError::InvalidElement(format!(
                        "vector of length {} in Z^{rank}",
                        v.len()
                    )));
                }
            }
            (Self::FreeProductCyclic { orders, .. }, GroupElement::FreeProduct(w)) => {
                for (k, &(f, x)) in w.iter().enumerate() {
                    if f >= orders.len() || x == 0 || x >= orders[f] || (k > 0 && w[k - 1].0 == f) {
                        return Err(GroupError::InvalidElement(format!(
                            "{w:?} is not a reduced free-product word"
                        )));
                    }
                }
            }
            _ => return Err(mismatch()),
        }
        Ok(())
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (self, a, b) {
            (Self::Finite(g), GroupElement::Finite(x), GroupElement::Finite(y)) => {
                GroupElement::Finite(g.mul(*x, *y))
            }
            (Self::Free { .. }, GroupElement::Free(u), GroupElement::Free(v)) => {
                let mut out = u.clone();
                for &(g, x) in v {
                    push_free(&mut out, g, x)?;
                }
                GroupElement::Free(out)
            }
            (
                Self::FreeAbelian { .. },
                GroupElement::FreeAbelian(u),
                GroupElement::FreeAbelian(v),
            ) => {
                let sum = u
                    .iter()
                    .zip(v)
                    .map(|(x, y)| x.checked_add(*y).ok_or(GroupError::Overflow))
                    .collect::<Result<_, _>>()?;
                GroupElement::FreeAbelian(sum)
            }
            (
                Self::FreeProductCyclic { orders, .. },
                GroupElement::FreeProduct(u),
                GroupElement::FreeProduct(v),
            ) => {
                let mut out = u.clone();
                for &(f, x) in v {
                    push_free_product(&mut out, orders, f, x);
                }
                GroupElement::FreeProduct(out)
            }
            _ => unreachable!("check() rejects mismatched backends"),
        })
    }

    pub fn inv(&self, a: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        Ok(match (self, a) {
            (Self::Finite(g), GroupElement::Finite(x)) => GroupElement::Finite(g.inverses[*x]),
            (Self::Free { .. }, GroupElement::Free(w)) => GroupElement::Free(
                w.iter()
                    .rev()
                    .map(|&(g, x)| x.checked_neg().map(|n| (g, n)))
                    .collect::<Option<_>>()
                    .ok_or(GroupError::Overflow)?,
            ),
            (Self::FreeAbelian { .. }, GroupElement::FreeAbelian(v)) => GroupElement::FreeAbelian(
                v.iter()
                    .map(|x| x.checked_neg())
                    .collect::<Option<_>>()
                    .ok_or(GroupError::Overflow)?,
            ),
            (Self::FreeProductCyclic { orders, .. }, GroupElement::FreeProduct(w)) => {
                GroupElement::FreeProduct(
                    w.iter().rev().map(|&(f, x)| (f, orders[f] - x)).collect(),
                )
            }
            _ => unreachable!("check() rejects mismatched backends"),
        })
    }

    pub fn is_identity(&self, a: &GroupElement) -> bool {
        match a {
            GroupElement::Finite(i) => *i == 0,
            GroupElement::Free(w) => w.is_empty(),
            GroupElement::FreeAbelian(v) => v.iter().all(|&x| x == 0),
            GroupElement::FreeProduct(w) => w.is_empty(),
        }
    }

    /// Ordered product of a sequence of elements; the empty product is the
    /// identity.
    pub fn product<'a>(
        &self,
        elems: impl IntoIterator<Item = &'a GroupElement>,
    ) -> Result<GroupElement, GroupError> {
        elems
            .into_iter()
            .try_fold(self.identity(), |acc, e| self.mul(&acc, e))
    }

    /// `g·h·g⁻¹·h⁻¹`
    pub fn commutator(
        &self,
        g: &GroupElement,
        h: &GroupElement,
    ) -> Result<GroupElement, GroupError> {
        let gh = self.mul(g, h)?;
        let gi = self.inv(g)?;
        let hi = self.inv(h)?;
        self.mul(&self.mul(&gh, &gi)?, &hi)
    }

    pub fn commute(&self, g: &GroupElement, h: &GroupElement) -> Result<bool, GroupError> {
        if let Self::FreeAbelian { .. } = self {
            self.check(g)?;
            self.check(h)?;
            return Ok(true);
        }
        Ok(self.is_identity(&self.commutator(g, h)?))
    }

    /// Whether the elements generate an abelian subgroup ("g.a.s."), decided
    /// by pairwise commutation of the generators.
    pub fn gas(&self, elems: &[GroupElement]) -> Result<bool, GroupError> {
        for (i, g) in elems.iter().enumerate() {
            self.check(g)?;
            for h in &elems[..i] {
                if g != h && !self.commute(g, h)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// First pair `(i, j)`, `i < j`, of non-commuting elements, if any.
    pub fn non_commuting_pair(
        &self,
        elems: &[GroupElement],
    ) -> Result<Option<(usize, usize)>, GroupError> {
        for j in 0..elems.len() {
            for i in 0..j {
                if elems[i] != elems[j] && !self.commute(&elems[i], &elems[j])? {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }

    /// Parses an element literal for this group.
    pub fn parse_element(&self, literal: &str) -> Result<GroupElement, GroupError> {
        let s = literal.trim();
        let err = |reason: String| GroupError::Parse {
            literal: literal.to_string(),
            reason,
        };
        let e = match self {
            Self::Finite(g) => {
                if let Some(i) = g.names().and_then(|ns| ns.iter().position(|n| n == s)) {
                    GroupElement::Finite(i)
                } else if matches!(s, "1" | "" | "[]") {
                    GroupElement::Finite(0)
                } else {
                    let digits = s.strip_prefix('#').unwrap_or(s);
                    let i: usize = digits
                        .parse()
                        .map_err(|_| err("unknown element name or index".into()))?;
                    GroupElement::Finite(i)
                }
            }
            Self::Free { rank, names } => {
                if matches!(s, "1" | "" | "[]") {
                    GroupElement::Free(Vec::new())
                } else {
                    let mut w = Vec::new();
                    for tok in s
                        .split(|c: char| c.is_whitespace() || c == '*')
                        .filter(|t| !t.is_empty())
                    {
                        let (g, x) = parse_token(tok, names, *rank).map_err(err)?;
                        push_free(&mut w, g, x)?;
                    }
                    GroupElement::Free(w)
                }
            }
            Self::FreeAbelian { rank } => {
                if matches!(s, "1" | "" | "[]") {
                    GroupElement::FreeAbelian(vec![0; *rank])
                } else {
                    let v: Vec<i64> = serde_json::from_str(s).map_err(|e| err(e.to_string()))?;
                    GroupElement::FreeAbelian(v)
                }
            }
            Self::FreeProductCyclic { orders, names } => {
                if matches!(s, "1" | "" | "[]") {
                    GroupElement::FreeProduct(Vec::new())
                } else {
                    let syllables: Vec<(usize, i64)> = if s.starts_with('[') {
                        serde_json::from_str(s).map_err(|e| err(e.to_string()))?
                    } else {
                        s.split(|c: char| c.is_whitespace() || c == '*')
                            .filter(|t| !t.is_empty())
                            .map(|tok| parse_token(tok, names, orders.len()))
                            .collect::<Result<_, _>>()
                            .map_err(err)?
                    };
                    let mut w = Vec::new();
                    for (f, x) in syllables {
                        if f >= orders.len() {
                            return Err(err(format!("factor {f} out of range")));
                        }
                        let order = orders[f] as i64;
                        push_free_product(&mut w, orders, f, x.rem_euclid(order) as u64);
                    }
                    GroupElement::FreeProduct(w)
                }
            }
        };
        self.check(&e).map_err(|e| err(e.to_string()))?;
        Ok(e)
    }

    /// Renders an element as a literal that [`GroupSpec::parse_element`]
    /// reads back.
    pub fn format_element(&self, e: &GroupElement) -> String {
        match (self, e) {
            (Self::Finite(g), GroupElement::Finite(i)) => match g.names() {
                Some(ns) if *i < ns.len() => ns[*i].clone(),
                _ if *i == 0 => "1".into(),
                _ => format!("#{i}"),
            },
            (Self::Free { names, .. }, GroupElement::Free(w)) => {
                format_word(w.iter().map(|&(g, x)| (g, x)), names)
            }
            (Self::FreeProductCyclic { names, .. }, GroupElement::FreeProduct(w)) => {
                format_word(w.iter().map(|&(f, x)| (f, x as i64)), names)
            }
            (_, GroupElement::FreeAbelian(v)) => {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                format!("[{}]", parts.join(","))
            }
            _ => format!("{e:?}"),
        }
    }

    pub fn display<'a>(&'a self, e: &'a GroupElement) -> impl fmt::Display + 'a {
        DisplayElement {
            group: self,
            elem: e,
        }
    }
}

struct DisplayElement<'a> {
    group: &'a GroupSpec,
    elem: &'a GroupElement,
}

impl fmt::Display for DisplayElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.group.format_element(self.elem))
    }
}

fn format_word(w: impl Iterator<Item = (usize, i64)>, names: &[String]) -> String {
    let parts: Vec<String> = w
        .map(|(g, x)| {
            if x == 1 {
                names[g].clone()
            } else {
                format!("{}^{x}", names[g])
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

fn parse_token(tok: &str, names: &[String], rank: usize) -> Result<(usize, i64), String> {
    let (name, exp) = match tok.split_once('^') {
        Some((n, e)) => (
            n,
            e.parse::<i64>()
                .map_err(|_| format!("bad exponent in {tok:?}"))?,
        ),
        None => (tok, 1),
    };
    let gen = names.iter().position(|n| n == name).or_else(|| {
        name.strip_prefix('x')
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&i| (1..=rank).contains(&i))
            .map(|i| i - 1)
    });
    match gen {
        Some(g) => Ok((g, exp)),
        None => Err(format!("unknown generator {name:?}")),
    }
}

fn push_free(w: &mut Vec<(usize, i64)>, g: usize, x: i64) -> Result<(), GroupError> {
    if x == 0 {
        return Ok(());
    }
    match w.last_mut() {
        Some((h, y)) if *h == g => {
            *y = y.checked_add(x).ok_or(GroupError::Overflow)?;
            if *y == 0 {
                w.pop();
            }
        }
        _ => w.push((g, x)),
    }
    Ok(())
}

fn push_free_product(w: &mut Vec<(usize, u64)>, orders: &[u64], f: usize, x: u64) {
    let x = x % orders[f];
    if x == 0 {
        return;
    }
    match w.last_mut() {
        Some((h, y)) if *h == f => {
            *y = (*y + x) % orders[f];
            if *y == 0 {
                w.pop();
            }
        }
        _ => w.push((f, x)),
    }
}
