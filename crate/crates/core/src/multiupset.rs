//! Finitely generated multiupsets over a finite poset: the free c.d.i.
//! pomonoid `Multi(X)`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::Serialize;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::order::{FinPoset, MonotoneMap, Pomonoid};

/// An evaluation table, inline for small bases.
pub type Raw = SmallVec<[u32; 6]>;

/// An order-preserving map `X -> N`, stored as its full evaluation table.
#[derive(Clone)]
pub struct Multiupset {
    base: FinPoset,
    eval: Raw,
}

impl PartialEq for Multiupset {
    fn eq(&self, other: &Self) -> bool {
        self.eval == other.eval && self.base == other.base
    }
}

impl Eq for Multiupset {}

impl Hash for Multiupset {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.eval.hash(state);
    }
}

impl PartialOrd for Multiupset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order used only for canonical sorting: multiplicity, then table.
impl Ord for Multiupset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.multiplicity()
            .cmp(&other.multiplicity())
            .then_with(|| self.eval.cmp(&other.eval))
    }
}

impl fmt::Debug for Multiupset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Multiupset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_gens(f, &self.base, &self.decompose())
    }
}

pub(crate) fn write_gens(f: &mut impl fmt::Write, base: &FinPoset, gens: &[usize]) -> fmt::Result {
    f.write_char('[')?;
    for (i, &g) in gens.iter().enumerate() {
        if i > 0 {
            f.write_char(',')?;
        }
        f.write_str(base.name(g))?;
    }
    f.write_char(']')
}

/// Canonical generators of an evaluation table: for each level `i > 0`, the
/// minimal elements of `{x : eval(x) >= i}`, sorted.
pub(crate) fn decompose_raw(base: &FinPoset, eval: &[u32]) -> Vec<usize> {
    let top = eval.iter().copied().max().unwrap_or(0);
    let mut gens = Vec::new();
    for level in 1..=top {
        let upset: Vec<usize> = (0..eval.len()).filter(|&x| eval[x] >= level).collect();
        gens.extend(base.minimal(&upset));
    }
    gens.sort_unstable();
    gens
}

pub(crate) fn multiplicity_raw(base: &FinPoset, eval: &[u32]) -> usize {
    if base.is_discrete() {
        return eval.iter().map(|&v| v as usize).sum();
    }
    decompose_raw(base, eval).len()
}

#[inline]
pub(crate) fn leq_raw(f: &[u32], g: &[u32]) -> bool {
    f.iter().zip(g).all(|(a, b)| a <= b)
}

#[inline]
pub(crate) fn add_raw(f: &[u32], g: &[u32]) -> Raw {
    f.iter()
        .zip(g)
        .map(|(a, b)| a.checked_add(*b).expect("multiplicity overflow"))
        .collect()
}

/// Evaluation table of the sum of the generators in `gens`.
pub(crate) fn eval_of_gens(base: &FinPoset, gens: &[usize]) -> Raw {
    (0..base.len())
        .map(|x| gens.iter().filter(|&&a| base.leq(a, x)).count() as u32)
        .collect()
}

impl Multiupset {
    pub fn empty(base: &FinPoset) -> Self {
        Multiupset {
            base: base.clone(),
            eval: vec![0; base.len()].into(),
        }
    }

    /// `[a]`: 1 on the principal upset of `a`, 0 elsewhere.
    pub fn generator(base: &FinPoset, a: usize) -> Self {
        Self::from_gens(base, &[a])
    }

    pub fn generator_embed(base: &FinPoset, a: &str) -> Result<Self> {
        Ok(Self::generator(base, base.index(a)?))
    }

    pub fn from_gens(base: &FinPoset, gens: &[usize]) -> Self {
        Multiupset {
            base: base.clone(),
            eval: eval_of_gens(base, gens),
        }
    }

    /// Validates an evaluation table as order preserving.
    pub fn from_eval(base: &FinPoset, eval: Vec<u32>) -> Result<Self> {
        if eval.len() != base.len() {
            return Err(Error::Malformed("evaluation table has the wrong length".into()));
        }
        if let Some((x, y)) = base.strict_pairs().find(|&(x, y)| eval[x] > eval[y]) {
            return Err(Error::NotMonotone(format!(
                "{} <= {} but f({}) = {} > f({}) = {}",
                base.name(x),
                base.name(y),
                base.name(x),
                eval[x],
                base.name(y),
                eval[y]
            )));
        }
        Ok(Multiupset {
            base: base.clone(),
            eval: eval.into(),
        })
    }

    pub(crate) fn from_raw(base: &FinPoset, eval: Raw) -> Self {
        Multiupset {
            base: base.clone(),
            eval,
        }
    }

    /// Parses the literal `[a,a,b]`; `[]` is the empty multiupset.
    pub fn parse(base: &FinPoset, text: &str) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Malformed(format!("multiupset literal `{text}`")))?;
        let gens = inner
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| base.index(s))
            .collect::<Result<Vec<usize>>>()?;
        Ok(Self::from_gens(base, &gens))
    }

    pub fn base(&self) -> &FinPoset {
        &self.base
    }

    pub fn eval(&self) -> &[u32] {
        &self.eval
    }

    pub fn is_empty(&self) -> bool {
        self.eval.iter().all(|&v| v == 0)
    }

    fn same_base(&self, other: &Self) -> Result<()> {
        if self.base == other.base {
            Ok(())
        } else {
            Err(Error::BaseMismatch)
        }
    }

    pub fn msum(&self, other: &Self) -> Result<Self> {
        self.same_base(other)?;
        Ok(Multiupset {
            base: self.base.clone(),
            eval: add_raw(&self.eval, &other.eval),
        })
    }

    pub fn mleq(&self, other: &Self) -> Result<bool> {
        self.same_base(other)?;
        Ok(leq_raw(&self.eval, &other.eval))
    }

    /// The canonical generator multiset `Σ_{i>0} Σ min f⁻¹[↑i]`.
    pub fn decompose(&self) -> Vec<usize> {
        decompose_raw(&self.base, &self.eval)
    }

    /// Length of the canonical generator multiset.
    pub fn multiplicity(&self) -> usize {
        multiplicity_raw(&self.base, &self.eval)
    }
}

/// `h♯: Multi(X) -> M` for a monotone `h: X -> M` into a c.d.i. pomonoid.
#[derive(Debug, Clone)]
pub struct PomonoidExtension {
    h: MonotoneMap,
    target: Pomonoid,
}

impl PomonoidExtension {
    pub fn apply(&self, f: &Multiupset) -> usize {
        let base = f.base();
        let top = f.eval().iter().copied().max().unwrap_or(0);
        let mut acc = self.target.unit();
        for level in 1..=top {
            let upset: Vec<usize> = (0..base.len()).filter(|&x| f.eval()[x] >= level).collect();
            for a in base.minimal(&upset) {
                acc = self.target.op(acc, self.h.apply(a));
            }
        }
        acc
    }

    pub fn map(&self) -> &MonotoneMap {
        &self.h
    }

    pub fn target(&self) -> &Pomonoid {
        &self.target
    }
}

pub fn free_extend_pomonoid(h: &MonotoneMap, target: &Pomonoid) -> Result<PomonoidExtension> {
    if !target.is_cdi() {
        return Err(Error::NotCdi);
    }
    if h.codomain() != target.poset() {
        return Err(Error::BaseMismatch);
    }
    Ok(PomonoidExtension {
        h: h.clone(),
        target: target.clone(),
    })
}

/// The freeness properties of `h♯` on the multiplicity-`k` fragment, each
/// with its first failure.
#[derive(Debug, Clone, Serialize)]
pub struct FreenessReport {
    pub map: String,
    /// `h♯([a]) = h(a)`.
    pub generators: Option<String>,
    /// `h♯([]) = 0` and `h♯(f + g) = h♯(f) + h♯(g)`.
    pub equations: Option<String>,
    /// `f <= g` implies `h♯(f) <= h♯(g)`.
    pub monotone: Option<String>,
    /// Any map obeying `φ([]) = 0` and `φ(f + [a]) = φ(f) + h(a)` inside
    /// the fragment equals `h♯` there.
    pub unique: Option<String>,
    pub instances: u64,
}

impl FreenessReport {
    pub fn passed(&self) -> bool {
        self.generators.is_none() && self.equations.is_none() && self.monotone.is_none() && self.unique.is_none()
    }

    /// All properties other than order preservation.
    pub fn equations_pass(&self) -> bool {
        self.generators.is_none() && self.equations.is_none() && self.unique.is_none()
    }
}

pub fn freeness_check(h: &MonotoneMap, target: &Pomonoid, k: usize) -> Result<FreenessReport> {
    let ext = free_extend_pomonoid(h, target)?;
    let base = h.domain();
    let frag = fragment(base, k);
    let val: Vec<usize> = frag.iter().map(|f| ext.apply(f)).collect();
    let tn = |y: usize| target.name(y).to_string();
    let mut instances = 0u64;
    let generators = (0..base.len()).find_map(|a| {
        let v = ext.apply(&Multiupset::generator(base, a));
        (v != h.apply(a)).then(|| format!("h#([{}]) = {} but h({}) = {}", base.name(a), tn(v), base.name(a), tn(h.apply(a))))
    });
    instances += base.len() as u64;
    let mut equations = (ext.apply(&Multiupset::empty(base)) != target.unit()).then(|| "h#([]) != 0".to_string());
    let mut monotone = None;
    for (i, f) in frag.iter().enumerate() {
        for (j, g) in frag.iter().enumerate() {
            instances += 2;
            let s = f.msum(g)?;
            let (l, r) = (ext.apply(&s), target.op(val[i], val[j]));
            if equations.is_none() && l != r {
                equations = Some(format!("h#({f} + {g}) = {} but h#({f}) + h#({g}) = {}", tn(l), tn(r)));
            }
            if monotone.is_none() && f.mleq(g)? && !target.poset().leq(val[i], val[j]) {
                monotone = Some(format!("{f} <= {g} but h#({f}) = {} !<= h#({g}) = {}", tn(val[i]), tn(val[j])));
            }
        }
    }
    // Values forced on each fragment element by the equations, built up by
    // multiplicity from [].
    let pos: std::collections::HashMap<&Multiupset, usize> = frag.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut forced: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); frag.len()];
    forced[pos[&Multiupset::empty(base)]].insert(target.unit());
    for (i, f) in frag.iter().enumerate() {
        let vals: Vec<usize> = forced[i].iter().copied().collect();
        for a in 0..base.len() {
            let g = f.msum(&Multiupset::generator(base, a))?;
            if let Some(&j) = pos.get(&g) {
                for &v in &vals {
                    forced[j].insert(target.op(v, h.apply(a)));
                }
            }
        }
    }
    let unique = frag.iter().enumerate().find_map(|(i, f)| {
        let only = forced[i].len() == 1 && forced[i].contains(&val[i]);
        (!only).then(|| {
            let vs: Vec<String> = forced[i].iter().map(|&v| tn(v)).collect();
            format!("{f}: forced values {{{}}}, h#({f}) = {}", vs.join(","), tn(val[i]))
        })
    });
    instances += frag.len() as u64;
    Ok(FreenessReport {
        map: crate::order::map_name(target.poset(), h.table()),
        generators,
        equations,
        monotone,
        unique,
        instances,
    })
}

/// Every multiupset whose canonical multiplicity is at most `k`, sorted.
pub fn fragment(base: &FinPoset, k: usize) -> Vec<Multiupset> {
    let n = base.len();
    let mut seen: BTreeSet<Raw> = BTreeSet::new();
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
    while let Some((gens, from)) = stack.pop() {
        let eval = eval_of_gens(base, &gens);
        if multiplicity_raw(base, &eval) <= k {
            seen.insert(eval);
        }
        if gens.len() < k {
            for a in from..n {
                let mut next = gens.clone();
                next.push(a);
                stack.push((next, a));
            }
        }
    }
    let mut out: Vec<Multiupset> = seen.into_iter().map(|e| Multiupset::from_raw(base, e)).collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> FinPoset {
        FinPoset::chain(&["a", "b"]).unwrap()
    }

    fn d2() -> FinPoset {
        FinPoset::discrete(&["p", "q"]).unwrap()
    }

    #[test]
    fn generators() {
        let c2 = c2();
        assert_eq!(Multiupset::generator_embed(&c2, "a").unwrap().eval(), &[1, 1]);
        assert_eq!(Multiupset::generator_embed(&c2, "b").unwrap().eval(), &[0, 1]);
        assert_eq!(Multiupset::generator_embed(&d2(), "p").unwrap().eval(), &[1, 0]);
    }

    #[test]
    fn sum_and_order() {
        let c2 = c2();
        let a = Multiupset::parse(&c2, "[a]").unwrap();
        let b = Multiupset::parse(&c2, "[b]").unwrap();
        assert_eq!(a.msum(&b).unwrap().eval(), &[1, 2]);
        assert!(!a.mleq(&b).unwrap());
        assert!(b.mleq(&a.msum(&a).unwrap()).unwrap());
        assert!(matches!(a.msum(&Multiupset::empty(&d2())), Err(Error::BaseMismatch)));
    }

    #[test]
    fn decomposition() {
        let c2 = c2();
        let f = Multiupset::from_eval(&c2, vec![1, 2]).unwrap();
        assert_eq!(f.to_string(), "[a,b]");
        assert_eq!(Multiupset::empty(&c2).decompose(), Vec::<usize>::new());
        assert_eq!(Multiupset::parse(&d2(), "[q,p,p]").unwrap().to_string(), "[p,p,q]");
        assert!(Multiupset::from_eval(&c2, vec![2, 1]).is_err());
    }

    #[test]
    fn fragment_sizes() {
        assert_eq!(fragment(&d2(), 4).len(), 15);
        assert_eq!(fragment(&c2(), 4).len(), 15);
        assert!(fragment(&c2(), 4).iter().all(|f| f.multiplicity() <= 4));
    }
}
