//! Exhaustive enumeration of small generalized quantales and the check
//! suites run over them.

use serde::Serialize;

use crate::aqm::{exp_end, FinAqm};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::modact::FinModule;
use crate::nucleus::correspond;
use crate::order::FinPoset;
use crate::par;
use crate::projective::{cyclic_module, cyclic_projective_check, enumerate_modules, lifting_check, LiftingFamily};
use crate::quantale::FinQuantale;

/// Largest carrier the search enumerates by default.
pub const SEARCH_LIMIT: usize = 4;
/// Hard ceiling even with an explicit override.
pub const SEARCH_HARD_LIMIT: usize = 5;

const NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

/// Posets on `n` points labelled along a linear extension (`x < y` only
/// when `x` precedes `y`), as strict-relation bitmasks over pairs `i < j`.
fn labelled_posets(n: usize) -> Vec<Vec<bool>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let mut lt = vec![false; n * n];
        for (b, &(i, j)) in pairs.iter().enumerate() {
            lt[i * n + j] = mask >> b & 1 == 1;
        }
        let transitive = (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| !(lt[i * n + j] && lt[j * n + k]) || lt[i * n + k]))
        });
        if transitive {
            out.push(lt);
        }
    }
    out
}

/// Join-semilattices among the labelled posets on `n` points.
pub fn enumerate_semilattices(n: usize) -> Vec<FinPoset> {
    let names: Vec<String> = NAMES[..n].iter().map(|s| s.to_string()).collect();
    labelled_posets(n)
        .into_iter()
        .filter_map(|lt| FinPoset::from_fn(names.clone(), |i, j| i == j || lt[i * n + j]).ok())
        .filter(|p| (0..n).all(|i| (0..n).all(|j| p.lub(i, j).is_some())))
        .collect()
}

struct Fill<'a> {
    p: &'a FinPoset,
    n: usize,
    unit: usize,
    commutative: bool,
    join: Vec<usize>,
    t: Vec<Option<usize>>,
}

impl Fill<'_> {
    fn get(&self, x: usize, y: usize) -> Option<usize> {
        self.t[x * self.n + y]
    }

    /// Monotonicity and binary-join distribution among filled cells.
    fn consistent(&self) -> bool {
        let (n, p) = (self.n, self.p);
        for x in 0..n {
            for y in 0..n {
                let Some(v) = self.get(x, y) else { continue };
                for z in 0..n {
                    if p.leq(y, z) {
                        if let Some(w) = self.get(x, z) {
                            if !p.leq(v, w) {
                                return false;
                            }
                        }
                    }
                    if p.leq(x, z) {
                        if let Some(w) = self.get(z, y) {
                            if !p.leq(v, w) {
                                return false;
                            }
                        }
                    }
                    let j = self.join[y * n + z];
                    if let (Some(w), Some(s)) = (self.get(x, z), self.get(x, j)) {
                        if s != self.join[v * n + w] {
                            return false;
                        }
                    }
                    let j = self.join[x * n + z];
                    if let (Some(w), Some(s)) = (self.get(z, y), self.get(j, y)) {
                        if s != self.join[v * n + w] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn associative(&self) -> bool {
        let n = self.n;
        let t = |x: usize, y: usize| self.get(x, y).unwrap();
        (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| t(t(x, y), z) == t(x, t(y, z)))))
    }

    fn go(&mut self, cells: &[(usize, usize)], k: usize, out: &mut Vec<Vec<usize>>) {
        if k == cells.len() {
            if self.associative() {
                out.push(self.t.iter().map(|c| c.unwrap()).collect());
            }
            return;
        }
        let (x, y) = cells[k];
        for v in 0..self.n {
            self.t[x * self.n + y] = Some(v);
            if self.commutative {
                self.t[y * self.n + x] = Some(v);
            }
            if self.consistent() {
                self.go(cells, k + 1, out);
            }
        }
        self.t[x * self.n + y] = None;
        if self.commutative {
            self.t[y * self.n + x] = None;
        }
    }
}

/// Sum tables on `p` with unit `unit`: monotone, associative and
/// distributing over binary joins on both sides.
fn sum_tables(p: &FinPoset, unit: usize, commutative: bool) -> Vec<Vec<usize>> {
    let n = p.len();
    let join = (0..n * n).map(|i| p.lub(i / n, i % n).unwrap()).collect();
    let mut t = vec![None; n * n];
    for x in 0..n {
        t[unit * n + x] = Some(x);
        t[x * n + unit] = Some(x);
    }
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| x != unit && y != unit && (!commutative || x <= y))
        .collect();
    let mut f = Fill {
        p,
        n,
        unit,
        commutative,
        join,
        t,
    };
    let mut out = Vec::new();
    f.go(&cells, 0, &mut out);
    debug_assert!(f.unit == unit);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Class {
    /// Commutative with the additive unit at the bottom.
    Cdi,
    All,
}

/// Every generalized quantale of the class on exactly `n` labelled points.
pub fn enumerate_quantales(n: usize, class: Class) -> Result<Vec<FinQuantale>> {
    if n > SEARCH_HARD_LIMIT {
        return Err(Error::TooLarge {
            what: "search carrier",
            size: n,
            limit: SEARCH_HARD_LIMIT,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let posets = enumerate_semilattices(n);
    let per = par::map_slice(&posets, |p| {
        let units: Vec<usize> = match class {
            Class::Cdi => p.least().into_iter().collect(),
            Class::All => (0..n).collect(),
        };
        let mut qs = Vec::new();
        for u in units {
            for t in sum_tables(p, u, class == Class::Cdi) {
                let q = FinQuantale::from_fn(p.clone(), |x, y| t[x * n + y], u).expect("search tables are valid");
                qs.push(q);
            }
        }
        qs
    });
    Ok(per.into_iter().flatten().collect())
}

/// Every quantale of the class on `1..=n` points.
pub fn enumerate_upto(n: usize, class: Class) -> Result<Vec<FinQuantale>> {
    let mut out = Vec::new();
    for k in 1..=n {
        out.extend(enumerate_quantales(k, class)?);
    }
    Ok(out)
}

/// `elements; order; + table; 0`.
pub fn describe_quantale(q: &FinQuantale) -> String {
    let n = q.len();
    let names: Vec<&str> = (0..n).map(|x| q.name(x)).collect();
    let lt: Vec<String> = q.poset().strict_pairs().map(|(x, y)| format!("{}<{}", names[x], names[y])).collect();
    let rows: Vec<String> = (0..n)
        .map(|x| (0..n).map(|y| names[q.plus(x, y)]).collect::<Vec<_>>().join(" "))
        .collect();
    format!("{{{}}}; {}; + = [{}]; 0 = {}", names.join(","), lt.join(","), rows.join("; "), names[q.zero()])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Nuclei, consequence relations and congruences agree in number and
    /// convert round trips are identities, on c.d.i. quantales.
    Correspondence,
    /// Left distributivity of composition over joins in `Gen(Q)`.
    GenDistributivity,
    /// Conditions (ii)–(v) against exhaustive lifting on small modules.
    Projective,
}

impl Suite {
    pub const ALL: [Suite; 3] = [Suite::Correspondence, Suite::GenDistributivity, Suite::Projective];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Correspondence => "correspondence",
            Suite::GenDistributivity => "gen-distributivity",
            Suite::Projective => "projective",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|x| x.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub structure: String,
    pub witness: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub suite: Suite,
    pub size: usize,
    pub structures: usize,
    /// Failures of a claim the suite checks.
    pub counterexamples: Vec<Finding>,
    /// Noteworthy instances that refute nothing.
    pub notes: Vec<Finding>,
}

impl SearchReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

pub fn run_suite(suite: Suite, size: usize) -> Result<SearchReport> {
    match suite {
        Suite::Correspondence => correspondence_suite(size),
        Suite::GenDistributivity => gen_distributivity_suite(size),
        Suite::Projective => projective_suite(size, &[("A3", fixtures::a3()), ("P(M2)", fixtures::pm2())]),
    }
}

pub fn correspondence_suite(size: usize) -> Result<SearchReport> {
    let qs = enumerate_upto(size, Class::Cdi)?;
    let found = par::map_slice(&qs, |q| match correspond(q) {
        Ok(c) if c.passed() => None,
        Ok(c) => Some(Finding {
            structure: describe_quantale(q),
            witness: format!(
                "nuclei {}, consequences {}, congruences {}: {}",
                c.nuclei,
                c.consequences,
                c.congruences,
                c.failure.unwrap_or_default()
            ),
        }),
        Err(e) => Some(Finding {
            structure: describe_quantale(q),
            witness: e.to_string(),
        }),
    });
    Ok(SearchReport {
        suite: Suite::Correspondence,
        size,
        structures: qs.len(),
        counterexamples: found.into_iter().flatten().collect(),
        notes: Vec::new(),
    })
}

/// First `(x, y, z)` in `Gen(Q)` with `x·(y ∨ z) != x·y ∨ x·z`.
pub fn left_distributivity_witness(a: &FinAqm) -> Option<String> {
    let n = a.len();
    let q = a.quant();
    par::find_map_first(n * n * n, |i| {
        let (x, y, z) = (i / (n * n), i / n % n, i % n);
        let l = a.mul(x, q.join(y, z));
        let r = q.join(a.mul(x, y), a.mul(x, z));
        (l != r).then(|| {
            format!(
                "x = {}, y = {}, z = {}: x·(y v z) = {}, x·y v x·z = {}",
                a.name(x),
                a.name(y),
                a.name(z),
                a.name(l),
                a.name(r)
            )
        })
    })
}

/// Runs over all generalized quantales. Failures of left distributivity
/// are the instances the suite looks for and are reported as
/// counterexamples to it.
pub fn gen_distributivity_suite(size: usize) -> Result<SearchReport> {
    let qs = enumerate_upto(size, Class::All)?;
    let mut counterexamples = Vec::new();
    for q in &qs {
        let ee = exp_end(q)?;
        if let Some(w) = left_distributivity_witness(&ee.aqm) {
            counterexamples.push(Finding {
                structure: describe_quantale(q),
                witness: w,
            });
        }
    }
    Ok(SearchReport {
        suite: Suite::GenDistributivity,
        size,
        structures: qs.len(),
        counterexamples,
        notes: Vec::new(),
    })
}

/// Describes a module by its carrier and action table.
pub fn describe_module(m: &FinModule) -> String {
    let a = m.aqm();
    let rows: Vec<String> = (0..a.len())
        .map(|b| {
            let r: Vec<&str> = (0..m.len()).map(|x| m.name(m.get(b, x))).collect();
            format!("{}: {}", a.name(b), r.join(" "))
        })
        .collect();
    format!("{} | {}", describe_quantale(m.quantale()), rows.join("; "))
}

/// For every cyclic module on at most `size` points over each AQM, the
/// conditions (ii)–(v) must be all-or-none with a shared witness, and a
/// lifting failure must not coexist with them. Modules failing both are
/// recorded as notes.
pub fn projective_suite(size: usize, aqms: &[(&str, FinAqm)]) -> Result<SearchReport> {
    let spaces = enumerate_upto(size.min(3), Class::All)?;
    let (mut structures, mut counterexamples, mut notes) = (0, Vec::new(), Vec::new());
    for (name, a) in aqms {
        let family = LiftingFamily::exhaustive(a, &spaces)?;
        let rows = par::map_slice(&family.modules, |m| -> Result<Option<(bool, Finding)>> {
            if !(0..m.len()).any(|u| cyclic_module(m, u).cyclic) {
                return Ok(None);
            }
            let mut r = cyclic_projective_check(m)?;
            r.lifting = Some(lifting_check(m, &family));
            let structure = format!("{name}: {}", describe_module(m));
            let lifts = r.lifting.as_ref().is_some_and(|l| l.passed());
            if !r.consistent() {
                let held: Vec<String> = r.conditions.iter().map(|c| c.is_some().to_string()).collect();
                let witness = format!("conditions (ii)-(v) disagree: {}", held.join(", "));
                return Ok(Some((true, Finding { structure, witness })));
            }
            if r.conditions_hold() && !lifts {
                let witness = "conditions (ii)-(v) hold but a lift is missing".to_string();
                return Ok(Some((true, Finding { structure, witness })));
            }
            if !r.conditions_hold() {
                let witness = if lifts {
                    "conditions (ii)-(v) fail; lifting passes within the family".to_string()
                } else {
                    "conditions (ii)-(v) fail and lifting fails: not projective".to_string()
                };
                return Ok(Some((false, Finding { structure, witness })));
            }
            Ok(None)
        });
        structures += family.modules.len();
        for row in rows {
            match row? {
                Some((true, f)) => counterexamples.push(f),
                Some((false, f)) => notes.push(f),
                None => {}
            }
        }
    }
    Ok(SearchReport {
        suite: Suite::Projective,
        size,
        structures,
        counterexamples,
        notes,
    })
}

/// Modules over `a` on at most `size` points that are cyclic but fail
/// the lifting test within that family.
pub fn non_projective_modules(a: &FinAqm, size: usize) -> Result<Vec<FinModule>> {
    let spaces = enumerate_upto(size, Class::All)?;
    let family = LiftingFamily::new(enumerate_modules(a, &spaces)?);
    Ok(family
        .modules
        .iter()
        .filter(|m| (0..m.len()).any(|u| cyclic_module(m, u).cyclic))
        .filter(|m| !lifting_check(m, &family).passed())
        .cloned()
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| enumerate_semilattices(n).len()).collect();
        assert_eq!(counts[..3], [1, 1, 2]);
        let cdi2 = enumerate_quantales(2, Class::Cdi).unwrap();
        // Two-element chain with bottom as zero: top + top is forced to top.
        assert_eq!(cdi2.len(), 1);
    }
}
