//! Nuclei, additive consequence relations and congruences on a finite
//! generalized quantale, the conversions between them, structurality with
//! respect to a module, and the quotient module `Q_γ`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laws::LawReport;
use crate::modact::{iso_witness, FinModule};
use crate::order::{map_name, FinPoset};
use crate::par;
use crate::quantale::FinQuantale;

/// Largest carrier for which consequence relations are enumerated
/// directly: the number of free pairs must stay below this.
pub const FREE_PAIR_LIMIT: usize = 22;

/// A monotone, expansive, idempotent self-map with `γ(x)+γ(y) ≤ γ(x+y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nucleus {
    space: FinQuantale,
    table: Vec<usize>,
}

/// A binary relation `⊢` on the carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AddConsequence {
    space: FinQuantale,
    rel: Vec<bool>,
}

/// An equivalence relation, stored as canonical class labels (first
/// occurrence order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantCongruence {
    space: FinQuantale,
    class: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Nucleus,
    Consequence,
    Congruence,
}

impl Kind {
    pub const ALL: [Kind; 3] = [Kind::Nucleus, Kind::Consequence, Kind::Congruence];
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Nucleus => "nucleus",
            Kind::Consequence => "consequence",
            Kind::Congruence => "congruence",
        })
    }
}

/// Any of the three presentations of a substructural consequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Presentation {
    Nucleus(Nucleus),
    Consequence(AddConsequence),
    Congruence(QuantCongruence),
}

fn canonical_classes(labels: &[usize]) -> Vec<usize> {
    let mut map: Vec<(usize, usize)> = Vec::new();
    labels
        .iter()
        .map(|&l| match map.iter().find(|(k, _)| *k == l) {
            Some(&(_, v)) => v,
            None => {
                map.push((l, map.len()));
                map.len() - 1
            }
        })
        .collect()
}

impl Nucleus {
    pub fn new(space: &FinQuantale, table: Vec<usize>) -> Result<Self> {
        if table.len() != space.len() || table.iter().any(|&y| y >= space.len()) {
            return Err(Error::Malformed("nucleus table is not total".into()));
        }
        Ok(Nucleus {
            space: space.clone(),
            table,
        })
    }

    pub fn from_pairs<S: AsRef<str>>(space: &FinQuantale, pairs: &[(S, S)]) -> Result<Self> {
        let mut table = vec![None; space.len()];
        for (x, y) in pairs {
            table[space.index(x.as_ref())?] = Some(space.index(y.as_ref())?);
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(x, y)| y.ok_or_else(|| Error::Malformed(format!("nucleus undefined at {}", space.name(x)))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(space, table)
    }

    pub fn identity(space: &FinQuantale) -> Self {
        Nucleus {
            space: space.clone(),
            table: (0..space.len()).collect(),
        }
    }

    pub fn space(&self) -> &FinQuantale {
        &self.space
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// Fixed points `γ[Q]`, ascending.
    pub fn image(&self) -> Vec<usize> {
        (0..self.table.len()).filter(|&x| self.table[x] == x).collect()
    }

    pub fn validate(&self) -> LawReport {
        let q = &self.space;
        let g = &self.table;
        let n = q.len();
        let s = |x: usize| q.name(x).to_string();
        let mut r = LawReport::new(format!("nucleus {}", map_name(q.poset(), g)));
        let pairs = || (0..n).flat_map(|x| (0..n).map(move |y| (x, y)));
        r.record(
            "monotone",
            (n * n) as u64,
            pairs()
                .find(|&(x, y)| q.leq(x, y) && !q.leq(g[x], g[y]))
                .map(|(x, y)| format!("({}, {})", s(x), s(y))),
        );
        r.record("expansive", n as u64, (0..n).find(|&x| !q.leq(x, g[x])).map(s));
        r.record("idempotent", n as u64, (0..n).find(|&x| g[g[x]] != g[x]).map(s));
        r.record(
            "sum law",
            (n * n) as u64,
            pairs().find(|&(x, y)| !q.leq(q.plus(g[x], g[y]), g[q.plus(x, y)])).map(|(x, y)| {
                format!(
                    "({}, {}): γ({})+γ({}) = {} !<= γ({}+{}) = {}",
                    s(x),
                    s(y),
                    s(x),
                    s(y),
                    s(q.plus(g[x], g[y])),
                    s(x),
                    s(y),
                    s(g[q.plus(x, y)])
                )
            }),
        );
        r
    }
}

impl AddConsequence {
    pub fn new(space: &FinQuantale, rel: Vec<bool>) -> Result<Self> {
        if rel.len() != space.len() * space.len() {
            return Err(Error::Malformed("relation table has the wrong size".into()));
        }
        Ok(AddConsequence {
            space: space.clone(),
            rel,
        })
    }

    pub fn from_pairs<S: AsRef<str>>(space: &FinQuantale, pairs: &[(S, S)]) -> Result<Self> {
        let n = space.len();
        let mut rel = vec![false; n * n];
        for (x, y) in pairs {
            rel[space.index(x.as_ref())? * n + space.index(y.as_ref())?] = true;
        }
        Self::new(space, rel)
    }

    pub fn space(&self) -> &FinQuantale {
        &self.space
    }

    #[inline]
    pub fn entails(&self, x: usize, y: usize) -> bool {
        self.rel[x * self.space.len() + y]
    }

    pub fn pairs(&self) -> Vec<(String, String)> {
        let n = self.space.len();
        (0..n * n)
            .filter(|&i| self.rel[i])
            .map(|i| (self.space.name(i / n).to_string(), self.space.name(i % n).to_string()))
            .collect()
    }

    pub fn validate(&self) -> LawReport {
        let q = &self.space;
        let n = q.len();
        let s = |x: usize| q.name(x).to_string();
        let e = |x: usize, y: usize| self.entails(x, y);
        let mut r = LawReport::new("consequence relation");
        r.record(
            "reflexive over >=",
            (n * n) as u64,
            (0..n * n)
                .map(|i| (i / n, i % n))
                .find(|&(x, y)| q.leq(y, x) && !e(x, y))
                .map(|(x, y)| format!("{} >= {} but not {} |- {}", s(x), s(y), s(x), s(y))),
        );
        r.record(
            "transitive",
            (n * n * n) as u64,
            (0..n * n * n)
                .map(|i| (i / (n * n), (i / n) % n, i % n))
                .find(|&(x, y, z)| e(x, y) && e(y, z) && !e(x, z))
                .map(|(x, y, z)| format!("({}, {}, {})", s(x), s(y), s(z))),
        );
        r.record(
            "join closed",
            n as u64,
            (0..n)
                .find(|&x| {
                    let j = q.big_join((0..n).filter(|&y| e(x, y)));
                    !j.is_some_and(|j| e(x, j))
                })
                .map(s),
        );
        r.record(
            "sum compatible",
            (n * n * n) as u64,
            (0..n * n * n)
                .map(|i| (i / (n * n), (i / n) % n, i % n))
                .find(|&(x, y, z)| e(x, y) && (!e(q.plus(x, z), q.plus(y, z)) || !e(q.plus(z, x), q.plus(z, y))))
                .map(|(x, y, z)| format!("{} |- {} but not with {} added", s(x), s(y), s(z))),
        );
        r
    }
}

impl QuantCongruence {
    pub fn new(space: &FinQuantale, labels: &[usize]) -> Result<Self> {
        if labels.len() != space.len() {
            return Err(Error::Malformed("partition does not cover the carrier".into()));
        }
        Ok(QuantCongruence {
            space: space.clone(),
            class: canonical_classes(labels),
        })
    }

    pub fn from_blocks<S: AsRef<str>>(space: &FinQuantale, blocks: &[Vec<S>]) -> Result<Self> {
        let mut labels = vec![None; space.len()];
        for (b, block) in blocks.iter().enumerate() {
            for x in block {
                let i = space.index(x.as_ref())?;
                if labels[i].replace(b).is_some() {
                    return Err(Error::Malformed(format!("{} lies in two blocks", x.as_ref())));
                }
            }
        }
        let labels = labels
            .into_iter()
            .enumerate()
            .map(|(x, l)| l.ok_or_else(|| Error::Malformed(format!("{} lies in no block", space.name(x)))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(space, &labels)
    }

    pub fn space(&self) -> &FinQuantale {
        &self.space
    }

    #[inline]
    pub fn related(&self, x: usize, y: usize) -> bool {
        self.class[x] == self.class[y]
    }

    pub fn labels(&self) -> &[usize] {
        &self.class
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let k = self.class.iter().max().map_or(0, |m| m + 1);
        (0..k)
            .map(|c| (0..self.class.len()).filter(|&x| self.class[x] == c).collect())
            .collect()
    }

    pub fn block_names(&self) -> Vec<Vec<String>> {
        self.blocks()
            .iter()
            .map(|b| b.iter().map(|&x| self.space.name(x).to_string()).collect())
            .collect()
    }

    /// Compatibility with sums and binary joins; on a finite carrier every
    /// non-empty join is a finite one.
    pub fn validate(&self) -> LawReport {
        let q = &self.space;
        let n = q.len();
        let s = |x: usize| q.name(x).to_string();
        let t = |x: usize, y: usize| self.related(x, y);
        let mut r = LawReport::new("congruence");
        let triples = || (0..n * n * n).map(|i| (i / (n * n), (i / n) % n, i % n));
        r.record(
            "sum compatible",
            (n * n * n) as u64,
            triples()
                .find(|&(x, y, z)| t(x, y) && (!t(q.plus(x, z), q.plus(y, z)) || !t(q.plus(z, x), q.plus(z, y))))
                .map(|(x, y, z)| format!("{} ~ {} but not after adding {}", s(x), s(y), s(z))),
        );
        r.record(
            "join compatible",
            (n * n * n) as u64,
            triples()
                .find(|&(x, y, z)| t(x, y) && !t(q.join(x, z), q.join(y, z)))
                .map(|(x, y, z)| format!("{} ~ {} but not after joining {}", s(x), s(y), s(z))),
        );
        r
    }
}

impl Presentation {
    pub fn kind(&self) -> Kind {
        match self {
            Presentation::Nucleus(_) => Kind::Nucleus,
            Presentation::Consequence(_) => Kind::Consequence,
            Presentation::Congruence(_) => Kind::Congruence,
        }
    }

    pub fn space(&self) -> &FinQuantale {
        match self {
            Presentation::Nucleus(g) => &g.space,
            Presentation::Consequence(c) => &c.space,
            Presentation::Congruence(t) => &t.space,
        }
    }

    /// One-line rendering of the underlying table.
    pub fn describe(&self) -> String {
        let q = self.space();
        match self {
            Presentation::Nucleus(g) => format!("nucleus {}", map_name(q.poset(), &g.table)),
            Presentation::Consequence(c) => {
                let ps: Vec<String> = c.pairs().iter().map(|(x, y)| format!("{x}|-{y}")).collect();
                format!("consequence {{{}}}", ps.join(", "))
            }
            Presentation::Congruence(t) => {
                let bs: Vec<String> = t.block_names().iter().map(|b| format!("{{{}}}", b.join(","))).collect();
                format!("congruence {}", bs.join(""))
            }
        }
    }
}

/// Scans every axiom of the presentation.
pub fn validate_presentation(p: &Presentation) -> LawReport {
    match p {
        Presentation::Nucleus(g) => g.validate(),
        Presentation::Consequence(c) => c.validate(),
        Presentation::Congruence(t) => t.validate(),
    }
}

/// `x ⊢_γ y ⟺ y ≤ γ(x)`.
pub fn nucleus_to_consequence(g: &Nucleus) -> AddConsequence {
    let q = &g.space;
    let n = q.len();
    AddConsequence {
        space: q.clone(),
        rel: (0..n * n).map(|i| q.leq(i % n, g.apply(i / n))).collect(),
    }
}

/// `γ_⊢(x) = ⋁{y : x ⊢ y}`.
pub fn consequence_to_nucleus(c: &AddConsequence) -> Nucleus {
    let q = &c.space;
    let n = q.len();
    Nucleus {
        space: q.clone(),
        table: (0..n)
            .map(|x| q.big_join((0..n).filter(|&y| c.entails(x, y))).unwrap_or(x))
            .collect(),
    }
}

/// `γ_θ(x) = ⋁[x]_θ`.
pub fn congruence_to_nucleus(t: &QuantCongruence) -> Nucleus {
    let q = &t.space;
    let n = q.len();
    Nucleus {
        space: q.clone(),
        table: (0..n)
            .map(|x| q.big_join((0..n).filter(|&y| t.related(x, y))).expect("classes are non-empty"))
            .collect(),
    }
}

/// `x θ_γ y ⟺ γ(x) = γ(y)`.
pub fn nucleus_to_congruence(g: &Nucleus) -> QuantCongruence {
    QuantCongruence {
        space: g.space.clone(),
        class: canonical_classes(&g.table),
    }
}

/// `x θ_⊢ y ⟺ x ⊢ y and y ⊢ x`.
pub fn consequence_to_congruence(c: &AddConsequence) -> QuantCongruence {
    let n = c.space.len();
    let labels: Vec<usize> = (0..n)
        .map(|x| (0..n).find(|&y| c.entails(x, y) && c.entails(y, x)).unwrap_or(x))
        .collect();
    QuantCongruence {
        space: c.space.clone(),
        class: canonical_classes(&labels),
    }
}

/// `x ⊢_θ y ⟺ ⟨x ∨ y, x⟩ ∈ θ`.
pub fn congruence_to_consequence(t: &QuantCongruence) -> AddConsequence {
    let q = &t.space;
    let n = q.len();
    AddConsequence {
        space: q.clone(),
        rel: (0..n * n).map(|i| t.related(q.join(i / n, i % n), i / n)).collect(),
    }
}

/// Converts to the requested presentation.
pub fn convert(p: &Presentation, target: Kind) -> Presentation {
    match (p, target) {
        (Presentation::Nucleus(g), Kind::Nucleus) => Presentation::Nucleus(g.clone()),
        (Presentation::Nucleus(g), Kind::Consequence) => Presentation::Consequence(nucleus_to_consequence(g)),
        (Presentation::Nucleus(g), Kind::Congruence) => Presentation::Congruence(nucleus_to_congruence(g)),
        (Presentation::Consequence(c), Kind::Nucleus) => Presentation::Nucleus(consequence_to_nucleus(c)),
        (Presentation::Consequence(c), Kind::Consequence) => Presentation::Consequence(c.clone()),
        (Presentation::Consequence(c), Kind::Congruence) => Presentation::Congruence(consequence_to_congruence(c)),
        (Presentation::Congruence(t), Kind::Nucleus) => Presentation::Nucleus(congruence_to_nucleus(t)),
        (Presentation::Congruence(t), Kind::Consequence) => Presentation::Consequence(congruence_to_consequence(t)),
        (Presentation::Congruence(t), Kind::Congruence) => Presentation::Congruence(t.clone()),
    }
}

/// The first of the two round trips through other presentations that
/// fails to return `p`.
pub fn round_trip_witness(p: &Presentation) -> Option<String> {
    Kind::ALL.iter().filter(|&&k| k != p.kind()).find_map(|&k| {
        let back = convert(&convert(p, k), p.kind());
        (back != *p).then(|| format!("{} -> {} -> {} gives {}", p.describe(), k, p.kind(), back.describe()))
    })
}

/// Enumerates nuclei by backtracking over expansive monotone tables in
/// lexicographic order, pruning on the sum law as soon as it is decidable.
pub fn enumerate_nuclei(q: &FinQuantale) -> Vec<Nucleus> {
    let n = q.len();
    let mut out = Vec::new();
    let mut table = vec![0usize; n];
    fn consistent(q: &FinQuantale, t: &[usize], k: usize) -> bool {
        let x = k;
        for y in 0..=k {
            if q.leq(x, y) && !q.leq(t[x], t[y]) || q.leq(y, x) && !q.leq(t[y], t[x]) {
                return false;
            }
        }
        // The sum law on every pair whose sum is already assigned.
        for a in 0..=k {
            for b in 0..=k {
                let s = q.plus(a, b);
                if s <= k && (a == k || b == k || s == k) && !q.leq(q.plus(t[a], t[b]), t[s]) {
                    return false;
                }
            }
        }
        // idempotence where decidable
        (0..=k).all(|z| t[z] > k || t[t[z]] == t[z])
    }
    fn go(q: &FinQuantale, t: &mut Vec<usize>, k: usize, out: &mut Vec<Nucleus>) {
        let n = q.len();
        if k == n {
            out.push(Nucleus {
                space: q.clone(),
                table: t.clone(),
            });
            return;
        }
        for v in 0..n {
            if !q.leq(k, v) {
                continue;
            }
            t[k] = v;
            if consistent(q, t, k) {
                go(q, t, k + 1, out);
            }
        }
    }
    go(q, &mut table, 0, &mut out);
    out
}

/// Enumerates consequence relations as the subsets of non-`≥` pairs that
/// satisfy the axioms once the `≥` pairs are added.
pub fn enumerate_consequences(q: &FinQuantale) -> Result<Vec<AddConsequence>> {
    let n = q.len();
    let free: Vec<usize> = (0..n * n).filter(|&i| !q.leq(i % n, i / n)).collect();
    if free.len() > FREE_PAIR_LIMIT {
        return Err(Error::TooLarge {
            what: "free consequence pairs",
            size: free.len(),
            limit: FREE_PAIR_LIMIT,
        });
    }
    let base: Vec<bool> = (0..n * n).map(|i| q.leq(i % n, i / n)).collect();
    let found = par::filter_map_range(1usize << free.len(), |mask| {
        let mut rel = base.clone();
        for (b, &i) in free.iter().enumerate() {
            if mask >> b & 1 == 1 {
                rel[i] = true;
            }
        }
        let c = AddConsequence {
            space: q.clone(),
            rel,
        };
        c.validate().passed().then_some(c)
    });
    Ok(found)
}

/// Enumerates congruences over all set partitions of the carrier.
pub fn enumerate_congruences(q: &FinQuantale) -> Vec<QuantCongruence> {
    let n = q.len();
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn go(q: &FinQuantale, labels: &mut Vec<usize>, k: usize, used: usize, out: &mut Vec<QuantCongruence>) {
        if k == labels.len() {
            let t = QuantCongruence {
                space: q.clone(),
                class: labels.clone(),
            };
            if t.validate().passed() {
                out.push(t);
            }
            return;
        }
        for c in 0..=used {
            labels[k] = c;
            go(q, labels, k + 1, used.max(c + 1), out);
        }
    }
    if n > 0 {
        go(q, &mut labels, 1, 1, &mut out);
    }
    out
}

/// Counts of the three presentations on one quantale and the outcome of
/// every round trip and order check.
#[derive(Debug, Clone, Serialize)]
pub struct Correspondence {
    pub nuclei: usize,
    pub consequences: usize,
    pub congruences: usize,
    /// First failing round trip, bijection or order check.
    pub failure: Option<String>,
}

impl Correspondence {
    pub fn passed(&self) -> bool {
        self.failure.is_none() && self.nuclei == self.consequences && self.nuclei == self.congruences
    }
}

fn nucleus_leq(a: &Nucleus, b: &Nucleus) -> bool {
    (0..a.table.len()).all(|x| a.space.leq(a.table[x], b.table[x]))
}

fn rel_subset(a: &AddConsequence, b: &AddConsequence) -> bool {
    a.rel.iter().zip(&b.rel).all(|(x, y)| !x || *y)
}

fn partition_finer(a: &QuantCongruence, b: &QuantCongruence) -> bool {
    let n = a.class.len();
    (0..n * n).all(|i| !a.related(i / n, i % n) || b.related(i / n, i % n))
}

/// Enumerates all three presentations independently, then checks that the
/// conversions are mutually inverse bijections between the enumerated
/// sets that preserve and reflect the natural orders.
pub fn correspond(q: &FinQuantale) -> Result<Correspondence> {
    let nuclei = enumerate_nuclei(q);
    let cons = enumerate_consequences(q)?;
    let congs = enumerate_congruences(q);
    let all: Vec<Presentation> = nuclei
        .iter()
        .cloned()
        .map(Presentation::Nucleus)
        .chain(cons.iter().cloned().map(Presentation::Consequence))
        .chain(congs.iter().cloned().map(Presentation::Congruence))
        .collect();
    let mut failure = all.iter().find_map(round_trip_witness);
    if failure.is_none() {
        failure = nuclei.iter().find_map(|g| {
            let c = nucleus_to_consequence(g);
            let t = nucleus_to_congruence(g);
            if !cons.contains(&c) {
                Some(format!("⊢ of {} was not enumerated", Presentation::Nucleus(g.clone()).describe()))
            } else if !congs.contains(&t) {
                Some(format!("θ of {} was not enumerated", Presentation::Nucleus(g.clone()).describe()))
            } else {
                None
            }
        });
    }
    if failure.is_none() {
        failure = nuclei.iter().enumerate().find_map(|(i, a)| {
            nuclei.iter().skip(i).find_map(|b| {
                [(a, b), (b, a)].into_iter().find_map(|(a, b)| {
                    let le = nucleus_leq(a, b);
                    let c = rel_subset(&nucleus_to_consequence(a), &nucleus_to_consequence(b));
                    let t = partition_finer(&nucleus_to_congruence(a), &nucleus_to_congruence(b));
                    (le != c || le != t).then(|| {
                        format!(
                            "order mismatch between {} and {}",
                            map_name(q.poset(), &a.table),
                            map_name(q.poset(), &b.table)
                        )
                    })
                })
            })
        });
    }
    Ok(Correspondence {
        nuclei: nuclei.len(),
        consequences: cons.len(),
        congruences: congs.len(),
        failure,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Generators,
    All,
}

/// Structurality of a presentation with respect to a module, at both
/// scopes, with the transfer to the other two presentations.
#[derive(Debug, Clone, Serialize)]
pub struct StructuralReport {
    pub scope: Scope,
    /// The verdict at the requested scope.
    pub structural: bool,
    pub witness: Option<String>,
    pub generators_pass: bool,
    pub all_pass: bool,
    /// Structurality (all scalars) of the other two presentations.
    pub transfer: Vec<(Kind, bool)>,
}

impl StructuralReport {
    /// Generator-scope and all-scope verdicts agree.
    pub fn scopes_agree(&self) -> bool {
        self.generators_pass == self.all_pass
    }

    /// Structurality is shared by all three presentations.
    pub fn transfer_holds(&self) -> bool {
        self.transfer.iter().all(|&(_, s)| s == self.all_pass)
    }
}

/// First scalar and point(s) where `p` fails to be structural, scanning
/// only the scalars in `scalars`.
pub fn structural_witness(p: &Presentation, m: &FinModule, scalars: &[usize]) -> Option<String> {
    let q = m.quantale();
    let n = q.len();
    let a = m.aqm();
    let s = |x: usize| q.name(x);
    scalars.iter().find_map(|&k| match p {
        Presentation::Nucleus(g) => (0..n).find_map(|x| {
            let (l, r) = (m.get(k, g.apply(x)), g.apply(m.get(k, x)));
            (!q.leq(l, r)).then(|| format!("{} ∗ γ({}) = {} !<= γ({} ∗ {}) = {}", a.name(k), s(x), s(l), a.name(k), s(x), s(r)))
        }),
        Presentation::Consequence(c) => (0..n * n).find_map(|i| {
            let (x, y) = (i / n, i % n);
            (c.entails(x, y) && !c.entails(m.get(k, x), m.get(k, y)))
                .then(|| format!("{} |- {} but not {} ∗ {} |- {} ∗ {}", s(x), s(y), a.name(k), s(x), a.name(k), s(y)))
        }),
        Presentation::Congruence(t) => (0..n * n).find_map(|i| {
            let (x, y) = (i / n, i % n);
            (t.related(x, y) && !t.related(m.get(k, x), m.get(k, y)))
                .then(|| format!("{} ~ {} but not {} ∗ {} ~ {} ∗ {}", s(x), s(y), a.name(k), s(x), a.name(k), s(y)))
        }),
    })
}

pub fn structural_check(p: &Presentation, m: &FinModule, scope: Scope) -> Result<StructuralReport> {
    if p.space() != m.quantale() {
        return Err(Error::BaseMismatch);
    }
    let aqm = m.aqm();
    if scope == Scope::Generators && !aqm.is_distributively_generated() {
        let missing: Vec<&str> = (0..aqm.len())
            .filter(|&x| aqm.presentation(x).is_none())
            .map(|x| aqm.name(x))
            .collect();
        return Err(Error::NotDistributivelyGenerated(format!("unreached: {}", missing.join(", "))));
    }
    let all: Vec<usize> = (0..aqm.len()).collect();
    let gen_w = structural_witness(p, m, &aqm.generators());
    let all_w = structural_witness(p, m, &all);
    let transfer = Kind::ALL
        .iter()
        .filter(|&&k| k != p.kind())
        .map(|&k| (k, structural_witness(&convert(p, k), m, &all).is_none()))
        .collect();
    let witness = match scope {
        Scope::Generators => gen_w.clone(),
        Scope::All => all_w.clone(),
    };
    Ok(StructuralReport {
        scope,
        structural: witness.is_none(),
        witness,
        generators_pass: gen_w.is_none(),
        all_pass: all_w.is_none(),
        transfer,
    })
}

/// `Q_γ` over `γ[Q]` with `x +_γ y = γ(x+y)`, `0_γ = γ(0)`, joins
/// `γ(x ∨ y)` and action `a ∗_γ x = γ(a ∗ x)`.
#[derive(Debug, Clone)]
pub struct QuotientModule {
    pub module: FinModule,
    pub parent: FinModule,
    pub nucleus: Nucleus,
    /// Parent index of each quotient element.
    pub carrier: Vec<usize>,
}

impl QuotientModule {
    pub fn embed(&self, i: usize) -> usize {
        self.carrier[i]
    }

    /// `γ` as a map parent → quotient.
    pub fn project(&self, x: usize) -> usize {
        self.carrier
            .binary_search(&self.nucleus.apply(x))
            .expect("γ(x) is a fixed point")
    }

    /// Module-law scan of the quotient plus the homomorphism check of the
    /// projection.
    pub fn check(&self) -> Result<LawReport> {
        let mut r = self.module.check()?;
        let proj: Vec<usize> = (0..self.parent.len()).map(|x| self.project(x)).collect();
        r.record(
            "projection homomorphism",
            (self.parent.len() * self.parent.len()) as u64,
            crate::modact::hom_witness(&self.parent, &self.module, &proj),
        );
        let hit: std::collections::BTreeSet<usize> = proj.iter().copied().collect();
        r.record(
            "projection surjective",
            self.module.len() as u64,
            (hit.len() != self.module.len()).then(|| "some fixed point is not hit".to_string()),
        );
        Ok(r)
    }
}

pub fn quotient(m: &FinModule, g: &Nucleus) -> Result<QuotientModule> {
    if g.space() != m.quantale() {
        return Err(Error::BaseMismatch);
    }
    g.validate().into_result()?;
    let all: Vec<usize> = (0..m.aqm().len()).collect();
    if let Some(w) = structural_witness(&Presentation::Nucleus(g.clone()), m, &all) {
        return Err(Error::NotStructural(w));
    }
    let q = m.quantale();
    let carrier = g.image();
    let k = carrier.len();
    let pos = |x: usize| carrier.binary_search(&x).expect("fixed point");
    let names: Vec<String> = carrier.iter().map(|&x| q.name(x).to_string()).collect();
    let poset = FinPoset::from_fn(names, |i, j| q.leq(carrier[i], carrier[j]))?;
    let space = FinQuantale::from_fn(
        poset,
        |i, j| pos(g.apply(q.plus(carrier[i], carrier[j]))),
        pos(g.apply(q.zero())),
    )?;
    let n = m.aqm().len();
    let table = (0..n * k).map(|i| pos(g.apply(m.get(i / k, carrier[i % k])))).collect();
    Ok(QuotientModule {
        module: FinModule::new(m.aqm().clone(), space, table)?,
        parent: m.clone(),
        nucleus: g.clone(),
        carrier,
    })
}

/// `Q/θ` with classes named by their largest element. Each class is closed
/// under binary joins, so the largest element exists.
pub fn congruence_quotient(m: &FinModule, t: &QuantCongruence) -> Result<(FinModule, Vec<usize>)> {
    if t.space() != m.quantale() {
        return Err(Error::BaseMismatch);
    }
    t.validate().into_result()?;
    let all: Vec<usize> = (0..m.aqm().len()).collect();
    if let Some(w) = structural_witness(&Presentation::Congruence(t.clone()), m, &all) {
        return Err(Error::NotStructural(w));
    }
    let q = m.quantale();
    let blocks = t.blocks();
    let tops: Vec<usize> = blocks
        .iter()
        .map(|b| q.big_join(b.iter().copied()).expect("non-empty block"))
        .collect();
    let mut order: Vec<usize> = (0..blocks.len()).collect();
    order.sort_by(|&a, &b| q.name(tops[a]).cmp(q.name(tops[b])));
    let class_of = |x: usize| order.iter().position(|&c| c == t.labels()[x]).unwrap();
    let reps: Vec<usize> = order.iter().map(|&c| tops[c]).collect();
    let names: Vec<String> = reps.iter().map(|&x| format!("[{}]", q.name(x))).collect();
    let poset = FinPoset::from_fn(names, |i, j| t.related(q.join(reps[i], reps[j]), reps[j]))?;
    let space = FinQuantale::from_fn(poset, |i, j| class_of(q.plus(reps[i], reps[j])), class_of(q.zero()))?;
    let k = reps.len();
    let n = m.aqm().len();
    let table = (0..n * k).map(|i| class_of(m.get(i / k, reps[i % k]))).collect();
    let proj = (0..q.len()).map(class_of).collect();
    Ok((FinModule::new(m.aqm().clone(), space, table)?, proj))
}

/// Builds `Q_γ` and `Q/θ_γ` and checks that `γ(x) ↦ [x]` is a module
/// isomorphism between them.
pub fn quotient_iso_witness(qm: &QuotientModule) -> Result<Option<String>> {
    let theta = nucleus_to_congruence(&qm.nucleus);
    let (cq, proj) = congruence_quotient(&qm.parent, &theta)?;
    let f: Vec<usize> = qm.carrier.iter().map(|&x| proj[x]).collect();
    Ok(iso_witness(&qm.module, &cq, &f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{a3, n2};

    #[test]
    fn n2_nuclei() {
        let q = n2();
        let ns: Vec<Vec<usize>> = enumerate_nuclei(&q).into_iter().map(|g| g.table).collect();
        assert_eq!(ns, vec![vec![0, 1, 2], vec![0, 2, 2], vec![2, 2, 2]]);
        let bad = Nucleus::new(&q, vec![1, 1, 2]).unwrap().validate();
        assert_eq!(bad.first_failure().unwrap().law, "sum law");
        assert!(bad.failure("sum law").unwrap().starts_with("(0, 0)"));
    }

    #[test]
    fn conversions() {
        let q = n2();
        let g = Nucleus::new(&q, vec![0, 2, 2]).unwrap();
        let c = nucleus_to_consequence(&g);
        let extra: Vec<(usize, usize)> = (0..9).map(|i| (i / 3, i % 3)).filter(|&(x, y)| c.entails(x, y) && x < y).collect();
        assert_eq!(extra, vec![(1, 2)]);
        assert_eq!(nucleus_to_congruence(&g).blocks(), vec![vec![0], vec![1, 2]]);
        let ge = AddConsequence::new(&q, (0..9).map(|i| i / 3 >= i % 3).collect()).unwrap();
        assert_eq!(consequence_to_nucleus(&ge).table, vec![0, 1, 2]);
    }

    #[test]
    fn n2_correspondence() {
        let c = correspond(&n2()).unwrap();
        assert_eq!((c.nuclei, c.consequences, c.congruences), (3, 3, 3));
        assert!(c.passed(), "{:?}", c.failure);
    }

    #[test]
    fn a3_quotient() {
        let m = FinModule::self_module(&a3());
        let g = Nucleus::new(m.quantale(), vec![0, 2, 2]).unwrap();
        let r = structural_check(&Presentation::Nucleus(g.clone()), &m, Scope::Generators).unwrap();
        assert!(r.structural && r.scopes_agree() && r.transfer_holds());
        let qm = quotient(&m, &g).unwrap();
        assert_eq!(qm.carrier, vec![0, 2]);
        assert_eq!(qm.module.quantale().plus(1, 1), 1);
        assert!(qm.check().unwrap().passed());
        assert_eq!(quotient_iso_witness(&qm).unwrap(), None);
        let top = quotient(&m, &Nucleus::new(m.quantale(), vec![2, 2, 2]).unwrap()).unwrap();
        assert_eq!(top.module.len(), 1);
    }
}
