//! Finite posets, pomonoids, monotone maps and antichain utilities.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;

/// Largest poset accepted by [`enumerate_monotone_selfmaps`].
pub const MON_LIMIT: usize = 6;

#[derive(Debug)]
struct PosetData {
    names: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<bool>,
    discrete: bool,
}

/// A finite poset with named elements. Elements are addressed by their
/// index in the sorted name list. Cloning is cheap.
#[derive(Clone)]
pub struct FinPoset {
    data: Arc<PosetData>,
}

impl PartialEq for FinPoset {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.names == other.data.names && self.data.leq == other.data.leq)
    }
}

impl Eq for FinPoset {}

impl fmt::Debug for FinPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .strict_pairs()
            .map(|(x, y)| format!("{}<{}", self.name(x), self.name(y)))
            .collect();
        write!(f, "FinPoset{{{:?}; {}}}", self.data.names, pairs.join(","))
    }
}

impl FinPoset {
    /// Builds a poset from names and the pairs `x <= y`. Reflexive pairs are
    /// implied; transitivity and antisymmetry are checked, not closed.
    pub fn new<S: AsRef<str>, T: AsRef<str>>(elements: &[S], leq: &[(T, T)]) -> Result<Self> {
        let mut names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Malformed(format!("duplicate element `{}`", w[0])));
        }
        if names.is_empty() {
            return Err(Error::Malformed("empty carrier".into()));
        }
        let index: HashMap<String, usize> =
            names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let n = names.len();
        let mut table = vec![false; n * n];
        for i in 0..n {
            table[i * n + i] = true;
        }
        for (x, y) in leq {
            let (x, y) = (x.as_ref(), y.as_ref());
            let i = *index.get(x).ok_or_else(|| Error::UnknownElement(x.to_string()))?;
            let j = *index.get(y).ok_or_else(|| Error::UnknownElement(y.to_string()))?;
            table[i * n + j] = true;
        }
        Self::from_table(names, table)
    }

    /// Builds a poset from already sorted, distinct names and a relation.
    pub fn from_fn(names: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = names.len();
        let mut table = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = leq(i, j);
            }
        }
        Self::from_table(names, table)
    }

    fn from_table(names: Vec<String>, table: Vec<bool>) -> Result<Self> {
        let n = names.len();
        debug_assert!(names.windows(2).all(|w| w[0] < w[1]), "names must be sorted");
        let at = |i: usize, j: usize| table[i * n + j];
        for i in 0..n {
            if !at(i, i) {
                return Err(Error::NotAPartialOrder {
                    law: "reflexivity",
                    witness: format!("({})", names[i]),
                });
            }
            for j in 0..n {
                if i != j && at(i, j) && at(j, i) {
                    return Err(Error::NotAPartialOrder {
                        law: "antisymmetry",
                        witness: format!("({}, {})", names[i], names[j]),
                    });
                }
                for k in 0..n {
                    if at(i, j) && at(j, k) && !at(i, k) {
                        return Err(Error::NotAPartialOrder {
                            law: "transitivity",
                            witness: format!("({}, {}, {})", names[i], names[j], names[k]),
                        });
                    }
                }
            }
        }
        let index = names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let n = names.len();
        let discrete = (0..n * n).all(|i| table[i] == (i / n == i % n));
        Ok(FinPoset {
            data: Arc::new(PosetData {
                names,
                index,
                leq: table,
                discrete,
            }),
        })
    }

    pub fn discrete<S: AsRef<str>>(elements: &[S]) -> Result<Self> {
        Self::new::<S, &str>(elements, &[])
    }

    /// The chain `elements[0] < elements[1] < ...` (in the given order).
    pub fn chain<S: AsRef<str>>(elements: &[S]) -> Result<Self> {
        let pairs: Vec<(&str, &str)> = elements
            .iter()
            .enumerate()
            .flat_map(|(i, x)| elements[i..].iter().map(move |y| (x.as_ref(), y.as_ref())))
            .collect();
        let names: Vec<&str> = elements.iter().map(|s| s.as_ref()).collect();
        Self::new(&names, &pairs)
    }

    pub fn len(&self) -> usize {
        self.data.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.data.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.data.names[i]
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.data
            .index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.data.leq[i * self.len() + j]
    }

    /// Number of pairs in the order relation, reflexive pairs included.
    pub fn leq_count(&self) -> usize {
        self.data.leq.iter().filter(|&&b| b).count()
    }

    pub fn strict_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |i| (0..n).filter(move |&j| i != j && self.leq(i, j)).map(move |j| (i, j)))
    }

    pub fn is_discrete(&self) -> bool {
        self.data.discrete
    }

    pub fn least(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.leq(i, j)))
    }

    pub fn greatest(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.leq(j, i)))
    }

    /// Least upper bound of two elements, if it exists.
    pub fn lub(&self, i: usize, j: usize) -> Option<usize> {
        let ubs: Vec<usize> = (0..self.len()).filter(|&k| self.leq(i, k) && self.leq(j, k)).collect();
        ubs.iter().copied().find(|&k| ubs.iter().all(|&m| self.leq(k, m)))
    }

    pub fn up(&self, s: &[usize]) -> Vec<usize> {
        (0..self.len()).filter(|&x| s.iter().any(|&a| self.leq(a, x))).collect()
    }

    pub fn down(&self, s: &[usize]) -> Vec<usize> {
        (0..self.len()).filter(|&x| s.iter().any(|&a| self.leq(x, a))).collect()
    }

    pub fn minimal(&self, s: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = s
            .iter()
            .copied()
            .filter(|&x| !s.iter().any(|&y| y != x && self.leq(y, x)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn maximal(&self, s: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = s
            .iter()
            .copied()
            .filter(|&x| !s.iter().any(|&y| y != x && self.leq(x, y)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn describe(&self) -> PosetDesc {
        PosetDesc {
            elements: self.data.names.clone(),
            leq: self
                .strict_pairs()
                .map(|(i, j)| [self.name(i).to_string(), self.name(j).to_string()])
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClosureMode {
    Up,
    Down,
    Min,
    Max,
}

/// Up/down closure or the minimal/maximal antichain of `s`, by name.
pub fn antichain_ops<S: AsRef<str>>(poset: &FinPoset, s: &[S], mode: ClosureMode) -> Result<Vec<String>> {
    let idx = s
        .iter()
        .map(|x| poset.index(x.as_ref()))
        .collect::<Result<Vec<usize>>>()?;
    let out = match mode {
        ClosureMode::Up => poset.up(&idx),
        ClosureMode::Down => poset.down(&idx),
        ClosureMode::Min => poset.minimal(&idx),
        ClosureMode::Max => poset.maximal(&idx),
    };
    Ok(out.into_iter().map(|i| poset.name(i).to_string()).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Notation {
    #[default]
    Multiplicative,
    Additive,
}

impl Notation {
    pub fn symbol(self) -> &'static str {
        match self {
            Notation::Additive => "+",
            Notation::Multiplicative => "·",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub commutative: bool,
    pub dually_integral: bool,
    pub idempotent: bool,
}

/// A finite partially ordered monoid.
#[derive(Clone, PartialEq, Eq)]
pub struct Pomonoid {
    poset: FinPoset,
    op: Arc<[usize]>,
    unit: usize,
    notation: Notation,
    flags: Flags,
}

impl fmt::Debug for Pomonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pomonoid{{{:?}, unit {}}}", self.poset, self.poset.name(self.unit))
    }
}

impl Pomonoid {
    /// Validates `op` (row-major `op[x * n + y]`) against the monoid and
    /// monotonicity laws and derives the flags.
    pub fn new(poset: FinPoset, op: Vec<usize>, unit: usize, notation: Notation) -> Result<Self> {
        let n = poset.len();
        if op.len() != n * n || op.iter().any(|&z| z >= n) || unit >= n {
            return Err(Error::Malformed("operation table is not total".into()));
        }
        let nm = |i: usize| poset.name(i).to_string();
        let s = notation.symbol();
        let at = |x: usize, y: usize| op[x * n + y];
        for x in 0..n {
            if at(unit, x) != x || at(x, unit) != x {
                return Err(Error::UnitNotNeutral(format!(
                    "({u}, {x}): {u}{s}{x} = {}, {x}{s}{u} = {}",
                    nm(at(unit, x)),
                    nm(at(x, unit)),
                    u = nm(unit),
                    x = nm(x)
                )));
            }
        }
        let assoc = par::find_map_first(n * n * n, |i| {
            let (x, y, z) = (i / (n * n), (i / n) % n, i % n);
            let l = at(at(x, y), z);
            let r = at(x, at(y, z));
            (l != r).then(|| {
                format!(
                    "({x}, {y}, {z}): ({x}{s}{y}){s}{z} = {}, {x}{s}({y}{s}{z}) = {}",
                    nm(l),
                    nm(r),
                    x = nm(x),
                    y = nm(y),
                    z = nm(z)
                )
            })
        });
        let mono = par::find_map_first(n * n * n, |i| {
            let (x, y, z) = (i / (n * n), (i / n) % n, i % n);
            if !poset.leq(x, y) {
                return None;
            }
            if !poset.leq(at(x, z), at(y, z)) {
                return Some(format!(
                    "({x}, {y}, {z}): {x} <= {y} but {x}{s}{z} = {} !<= {y}{s}{z} = {}",
                    nm(at(x, z)),
                    nm(at(y, z)),
                    x = nm(x),
                    y = nm(y),
                    z = nm(z)
                ));
            }
            if !poset.leq(at(z, x), at(z, y)) {
                return Some(format!(
                    "({x}, {y}, {z}): {x} <= {y} but {z}{s}{x} = {} !<= {z}{s}{y} = {}",
                    nm(at(z, x)),
                    nm(at(z, y)),
                    x = nm(x),
                    y = nm(y),
                    z = nm(z)
                ));
            }
            None
        });
        if let Some(w) = mono {
            return Err(Error::NotMonotone(w));
        }
        if let Some(w) = assoc {
            return Err(Error::NotAssociative(w));
        }
        let flags = Flags {
            commutative: (0..n).all(|x| (0..n).all(|y| at(x, y) == at(y, x))),
            dually_integral: (0..n).all(|x| poset.leq(unit, x)),
            idempotent: (0..n).all(|x| at(x, x) == x),
        };
        Ok(Pomonoid {
            poset,
            op: op.into(),
            unit,
            notation,
            flags,
        })
    }

    pub fn from_fn(
        poset: FinPoset,
        op: impl Fn(usize, usize) -> usize,
        unit: usize,
        notation: Notation,
    ) -> Result<Self> {
        let n = poset.len();
        let table = (0..n * n).map(|i| op(i / n, i % n)).collect();
        Self::new(poset, table, unit, notation)
    }

    pub fn poset(&self) -> &FinPoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.op[x * self.len() + y]
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn notation(&self) -> Notation {
        self.notation
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn is_cdi(&self) -> bool {
        self.flags.commutative && self.flags.dually_integral
    }

    pub fn name(&self, i: usize) -> &str {
        self.poset.name(i)
    }

    pub fn table(&self) -> &[usize] {
        &self.op
    }

    pub fn describe(&self) -> StructureDesc {
        let n = self.len();
        let nm = |i: usize| self.name(i).to_string();
        StructureDesc {
            poset: self.poset.describe(),
            monoid: Some(MonoidDesc {
                op: (0..n * n)
                    .map(|i| [nm(i / n), nm(i % n), nm(self.op(i / n, i % n))])
                    .collect(),
                unit: nm(self.unit),
                notation: self.notation,
            }),
        }
    }
}

/// An order-preserving map between finite posets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    domain: FinPoset,
    codomain: FinPoset,
    table: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(domain: FinPoset, codomain: FinPoset, table: Vec<usize>) -> Result<Self> {
        if table.len() != domain.len() || table.iter().any(|&y| y >= codomain.len()) {
            return Err(Error::Malformed("map table is not total".into()));
        }
        for (x, y) in domain.strict_pairs() {
            if !codomain.leq(table[x], table[y]) {
                return Err(Error::NotMonotone(format!(
                    "{} <= {} but {} !<= {}",
                    domain.name(x),
                    domain.name(y),
                    codomain.name(table[x]),
                    codomain.name(table[y])
                )));
            }
        }
        Ok(MonotoneMap {
            domain,
            codomain,
            table,
        })
    }

    /// Builds a map from `(x, y)` name pairs.
    pub fn from_pairs<S: AsRef<str>>(domain: FinPoset, codomain: FinPoset, pairs: &[(S, S)]) -> Result<Self> {
        let mut table = vec![usize::MAX; domain.len()];
        for (x, y) in pairs {
            table[domain.index(x.as_ref())?] = codomain.index(y.as_ref())?;
        }
        if let Some(x) = table.iter().position(|&y| y == usize::MAX) {
            return Err(Error::Malformed(format!("map undefined at `{}`", domain.name(x))));
        }
        Self::new(domain, codomain, table)
    }

    pub fn domain(&self) -> &FinPoset {
        &self.domain
    }

    pub fn codomain(&self) -> &FinPoset {
        &self.codomain
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }
}

/// Every monotone map `domain -> codomain`, in lexicographic order of
/// tables.
pub fn monotone_maps(domain: &FinPoset, codomain: &FinPoset) -> Vec<MonotoneMap> {
    let (n, m) = (domain.len(), codomain.len());
    let total = m.checked_pow(n as u32).unwrap_or(usize::MAX);
    par::filter_map_range(total, |i| {
        let mut t = vec![0; n];
        par::decode(i, m, &mut t);
        MonotoneMap::new(domain.clone(), codomain.clone(), t).ok()
    })
}

/// `Mon X`: all monotone self-maps of a poset as a pomonoid under
/// composition, ordered componentwise.
#[derive(Debug, Clone)]
pub struct MapMonoid {
    pub maps: Vec<Vec<usize>>,
    pub pomonoid: Pomonoid,
}

impl MapMonoid {
    pub fn index_of(&self, table: &[usize]) -> Option<usize> {
        self.maps.iter().position(|m| m.as_slice() == table)
    }
}

/// Renders a self-map table as `(y0,y1,...)` using element names.
pub fn map_name(poset: &FinPoset, table: &[usize]) -> String {
    let parts: Vec<&str> = table.iter().map(|&y| poset.name(y)).collect();
    format!("({})", parts.join(","))
}

/// Every monotone self-map of `poset`, in sorted order of their names.
pub fn enumerate_monotone_selfmaps(poset: &FinPoset) -> Result<MapMonoid> {
    let n = poset.len();
    if n > MON_LIMIT {
        return Err(Error::TooLarge {
            what: "Mon X carrier",
            size: n,
            limit: MON_LIMIT,
        });
    }
    let total = n.pow(n as u32);
    let mut maps: Vec<Vec<usize>> = par::filter_map_range(total, |i| {
        let mut t = vec![0; n];
        par::decode(i, n, &mut t);
        poset.strict_pairs().all(|(x, y)| poset.leq(t[x], t[y])).then_some(t)
    });
    maps.sort_by_key(|t| map_name(poset, t));
    let names: Vec<String> = maps.iter().map(|t| map_name(poset, t)).collect();
    let carrier = FinPoset::from_fn(names, |i, j| (0..n).all(|x| poset.leq(maps[i][x], maps[j][x])))?;
    let pos: HashMap<&[usize], usize> = maps.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    let m = maps.len();
    let mut op = vec![0; m * m];
    for f in 0..m {
        for g in 0..m {
            let comp: Vec<usize> = (0..n).map(|x| maps[f][maps[g][x]]).collect();
            op[f * m + g] = pos[comp.as_slice()];
        }
    }
    let id: Vec<usize> = (0..n).collect();
    let unit = pos[id.as_slice()];
    let pomonoid = Pomonoid::new(carrier, op, unit, Notation::Multiplicative)?;
    Ok(MapMonoid { maps, pomonoid })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDesc {
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidDesc {
    pub op: Vec<[String; 3]>,
    pub unit: String,
    #[serde(default)]
    pub notation: Notation,
}

/// The JSON-compatible structure description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureDesc {
    pub poset: PosetDesc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monoid: Option<MonoidDesc>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Poset(FinPoset),
    Pomonoid(Pomonoid),
}

impl PosetDesc {
    pub fn validate(&self) -> Result<FinPoset> {
        let pairs: Vec<(&str, &str)> = self.leq.iter().map(|[x, y]| (x.as_str(), y.as_str())).collect();
        FinPoset::new(&self.elements, &pairs)
    }
}

impl MonoidDesc {
    pub fn validate(&self, poset: FinPoset) -> Result<Pomonoid> {
        let n = poset.len();
        let mut table = vec![usize::MAX; n * n];
        for [x, y, z] in &self.op {
            let (i, j, k) = (poset.index(x)?, poset.index(y)?, poset.index(z)?);
            let slot = &mut table[i * n + j];
            if *slot != usize::MAX && *slot != k {
                return Err(Error::Malformed(format!("operation defined twice at ({x}, {y})")));
            }
            *slot = k;
        }
        if let Some(i) = table.iter().position(|&z| z == usize::MAX) {
            return Err(Error::Malformed(format!(
                "operation undefined at ({}, {})",
                poset.name(i / n),
                poset.name(i % n)
            )));
        }
        let unit = poset.index(&self.unit)?;
        Pomonoid::new(poset, table, unit, self.notation)
    }
}

/// Validates a structure description into a poset or a pomonoid.
pub fn validate_structure(raw: &StructureDesc) -> Result<Structure> {
    let poset = raw.poset.validate()?;
    match &raw.monoid {
        None => Ok(Structure::Poset(poset)),
        Some(m) => Ok(Structure::Pomonoid(m.validate(poset)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_has_three_pairs() {
        let c2 = FinPoset::chain(&["a", "b"]).unwrap();
        assert_eq!(c2.leq_count(), 3);
        assert!(c2.leq(0, 1) && !c2.leq(1, 0));
    }

    #[test]
    fn cycles_are_rejected() {
        let e = FinPoset::new(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(e, Error::NotAPartialOrder { law: "antisymmetry", .. }));
        let e = FinPoset::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap_err();
        assert!(matches!(e, Error::NotAPartialOrder { law: "transitivity", .. }));
    }

    #[test]
    fn closures() {
        let c2 = FinPoset::chain(&["a", "b"]).unwrap();
        let d2 = FinPoset::discrete(&["p", "q"]).unwrap();
        assert_eq!(antichain_ops(&c2, &["b"], ClosureMode::Down).unwrap(), ["a", "b"]);
        assert_eq!(antichain_ops(&d2, &["p", "q"], ClosureMode::Min).unwrap(), ["p", "q"]);
        assert_eq!(antichain_ops(&c2, &["a", "b"], ClosureMode::Min).unwrap(), ["a"]);
        assert!(matches!(
            antichain_ops(&c2, &["z"], ClosureMode::Up),
            Err(Error::UnknownElement(_))
        ));
    }

    #[test]
    fn selfmap_counts() {
        let d2 = FinPoset::discrete(&["p", "q"]).unwrap();
        let c2 = FinPoset::chain(&["a", "b"]).unwrap();
        let one = FinPoset::discrete(&["x"]).unwrap();
        assert_eq!(enumerate_monotone_selfmaps(&d2).unwrap().maps.len(), 4);
        let mc2 = enumerate_monotone_selfmaps(&c2).unwrap();
        assert_eq!(mc2.maps.len(), 3);
        assert!(mc2.index_of(&[1, 0]).is_none());
        assert_eq!(enumerate_monotone_selfmaps(&one).unwrap().maps.len(), 1);
        let big = FinPoset::discrete(&["a", "b", "c", "d", "e", "f", "g"]).unwrap();
        assert!(matches!(enumerate_monotone_selfmaps(&big), Err(Error::TooLarge { .. })));
    }
}
