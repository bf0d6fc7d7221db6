//! Finitely generated non-empty downsets: `DM(X)` over `Multi(X)` and the
//! finite `Down(M)` over a c.d.i. pomonoid.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::laws::{Carrier, QuantaleOps};
use smallvec::SmallVec;

use crate::multiupset::{self, write_gens, Multiupset, PomonoidExtension, Raw};
use crate::order::{FinPoset, Notation, Pomonoid};
use crate::quantale::FinQuantale;

/// Bounds for fragment enumeration and for products computed inside a
/// fragment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fragment {
    /// Largest canonical multiplicity of an enumerated generator.
    pub k: usize,
    /// Largest antichain of generators in an enumerated downset.
    pub antichain: usize,
    /// Largest multiplicity a product or action result may reach before
    /// `FragmentExceeded` is raised.
    pub limit: usize,
}

impl Fragment {
    pub fn new(k: usize, antichain: usize) -> Self {
        Fragment {
            k,
            antichain,
            limit: k.pow(3).max(1),
        }
    }

    pub fn describe(&self) -> String {
        format!(
            "fragment: multiplicity <= {}, antichain <= {}, product limit {}",
            self.k, self.antichain, self.limit
        )
    }
}

impl Default for Fragment {
    fn default() -> Self {
        Fragment::new(4, 3)
    }
}

/// Largest base poset accepted by the downset constructions.
pub const DM_BASE_LIMIT: usize = 8;

/// A multiupset packed as eight 16-bit lanes, lane 0 most significant, so
/// the numeric order extends the pointwise order.
pub(crate) type Gen = u128;
pub(crate) type Gens = SmallVec<[Gen; 4]>;

const LANE_MAX: u32 = 0x7fff;
const HIGH: Gen = 0x8000_8000_8000_8000_8000_8000_8000_8000;

#[inline]
fn shift(i: usize) -> u32 {
    16 * (7 - i as u32)
}

pub(crate) fn pack(eval: &[u32]) -> Gen {
    debug_assert!(eval.len() <= DM_BASE_LIMIT);
    eval.iter().enumerate().fold(0, |acc, (i, &v)| {
        assert!(v <= LANE_MAX, "multiplicity overflow");
        acc | (Gen::from(v) << shift(i))
    })
}

#[inline]
pub(crate) fn lane(g: Gen, i: usize) -> u32 {
    ((g >> shift(i)) & 0xffff) as u32
}

pub(crate) fn unpack(g: Gen, n: usize) -> Raw {
    (0..n).map(|i| lane(g, i)).collect()
}

/// Pointwise `f <= g`, lane by lane without borrows.
#[inline]
pub(crate) fn gen_leq(f: Gen, g: Gen) -> bool {
    ((g | HIGH) - f) & HIGH == HIGH
}

#[inline]
pub(crate) fn gen_add(f: Gen, g: Gen) -> Gen {
    let s = f + g;
    assert!(s & HIGH == 0, "multiplicity overflow");
    s
}

/// `k · f`, lane by lane.
#[inline]
pub(crate) fn gen_scale(f: Gen, k: u32) -> Gen {
    let mut acc = 0;
    for _ in 0..k {
        acc = gen_add(acc, f);
    }
    acc
}

#[inline]
fn weight(g: Gen) -> u32 {
    (0..8).map(|i| lane(g, i)).sum()
}

pub(crate) fn gen_multiplicity(base: &FinPoset, g: Gen) -> usize {
    if base.is_discrete() {
        weight(g) as usize
    } else {
        multiupset::multiplicity_raw(base, &unpack(g, base.len()))
    }
}

pub(crate) fn gen_decompose(base: &FinPoset, g: Gen) -> Vec<usize> {
    multiupset::decompose_raw(base, &unpack(g, base.len()))
}

pub(crate) fn check_base(base: &FinPoset) -> Result<()> {
    if base.len() > DM_BASE_LIMIT {
        return Err(Error::TooLarge {
            what: "downset base",
            size: base.len(),
            limit: DM_BASE_LIMIT,
        });
    }
    Ok(())
}

/// Maximal antichain of `gens`, ascending.
pub(crate) fn normalize_raw(gens: impl IntoIterator<Item = Gen>) -> Gens {
    let mut all: Gens = gens.into_iter().collect();
    all.sort_unstable_by(|a, b| b.cmp(a));
    all.dedup();
    let mut keep: Gens = SmallVec::new();
    for g in all {
        if !keep.iter().any(|&h| gen_leq(g, h)) {
            keep.push(g);
        }
    }
    keep.reverse();
    keep
}

fn sum_raw(p: &[Gen], q: &[Gen]) -> Gens {
    normalize_raw(p.iter().flat_map(|&f| q.iter().map(move |&g| gen_add(f, g))))
}

fn join_raw(p: &[Gen], q: &[Gen]) -> Gens {
    normalize_raw(p.iter().chain(q).copied())
}

fn dleq_raw(p: &[Gen], q: &[Gen]) -> bool {
    p.iter().all(|&f| q.iter().any(|&g| gen_leq(f, g)))
}

/// A non-empty finitely generated downset of `Multi(X)`, stored as the
/// antichain of its maximal generators.
#[derive(Clone)]
pub struct FgDownset {
    base: FinPoset,
    maxgens: Gens,
}

impl PartialEq for FgDownset {
    fn eq(&self, other: &Self) -> bool {
        self.maxgens == other.maxgens && self.base == other.base
    }
}

impl Eq for FgDownset {}

impl Hash for FgDownset {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.maxgens.hash(state);
    }
}

impl fmt::Debug for FgDownset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FgDownset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut gens: Vec<Gen> = self.maxgens.to_vec();
        gens.sort_by_key(|&g| (weight(g), g));
        f.write_str("v[")?;
        for (i, &g) in gens.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write_gens(f, &self.base, &gen_decompose(&self.base, g))?;
        }
        f.write_str("]")
    }
}

impl FgDownset {
    pub(crate) fn from_raw(base: &FinPoset, gens: impl IntoIterator<Item = Gen>) -> Self {
        let maxgens = normalize_raw(gens);
        debug_assert!(!maxgens.is_empty());
        FgDownset {
            base: base.clone(),
            maxgens,
        }
    }

    pub(crate) fn raw(&self) -> &[Gen] {
        &self.maxgens
    }

    /// `↓{[]}`, the additive unit. Panics on bases beyond [`DM_BASE_LIMIT`].
    pub fn dzero(base: &FinPoset) -> Self {
        assert!(base.len() <= DM_BASE_LIMIT, "downset base too large");
        FgDownset {
            base: base.clone(),
            maxgens: SmallVec::from_elem(0, 1),
        }
    }

    pub fn principal(f: &Multiupset) -> Self {
        assert!(f.base().len() <= DM_BASE_LIMIT, "downset base too large");
        FgDownset {
            base: f.base().clone(),
            maxgens: SmallVec::from_elem(pack(f.eval()), 1),
        }
    }

    /// `η(a) = ↓{[a]}`.
    pub fn unit_embed(base: &FinPoset, a: &str) -> Result<Self> {
        check_base(base)?;
        Ok(Self::principal(&Multiupset::generator_embed(base, a)?))
    }

    pub fn eta(base: &FinPoset, a: usize) -> Self {
        Self::principal(&Multiupset::generator(base, a))
    }

    pub fn normalize(gens: &[Multiupset]) -> Result<Self> {
        let first = gens.first().ok_or(Error::EmptyGeneratorSet)?;
        if gens.iter().any(|g| g.base() != first.base()) {
            return Err(Error::BaseMismatch);
        }
        check_base(first.base())?;
        Ok(Self::from_raw(first.base(), gens.iter().map(|g| pack(g.eval()))))
    }

    /// Parses `v[[p],[q,q]]`; `v[[]]` is `dzero`.
    pub fn parse(base: &FinPoset, text: &str) -> Result<Self> {
        let bad = || Error::Malformed(format!("downset literal `{text}`"));
        let inner = text
            .trim()
            .strip_prefix("v[")
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(bad)?;
        let mut gens = Vec::new();
        let mut rest = inner.trim();
        while !rest.is_empty() {
            let close = rest.find(']').ok_or_else(bad)?;
            gens.push(Multiupset::parse(base, &rest[..=close])?);
            rest = rest[close + 1..].trim_start().trim_start_matches(',').trim_start();
        }
        if gens.is_empty() {
            return Err(Error::EmptyGeneratorSet);
        }
        Self::normalize(&gens)
    }

    pub fn base(&self) -> &FinPoset {
        &self.base
    }

    pub fn maxgens(&self) -> Vec<Multiupset> {
        let n = self.base.len();
        self.maxgens
            .iter()
            .map(|&g| Multiupset::from_raw(&self.base, unpack(g, n)))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.maxgens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maxgens.is_empty()
    }

    /// Largest canonical multiplicity among the maximal generators.
    pub fn multiplicity(&self) -> usize {
        self.maxgens
            .iter()
            .map(|&g| gen_multiplicity(&self.base, g))
            .max()
            .unwrap_or(0)
    }

    fn same_base(&self, other: &Self) -> Result<()> {
        if self.base == other.base {
            Ok(())
        } else {
            Err(Error::BaseMismatch)
        }
    }

    pub fn contains(&self, f: &Multiupset) -> bool {
        f.base().len() == self.base.len() && self.maxgens.iter().any(|&g| gen_leq(pack(f.eval()), g))
    }

    pub fn dleq(&self, other: &Self) -> Result<bool> {
        self.same_base(other)?;
        Ok(dleq_raw(&self.maxgens, &other.maxgens))
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        self.same_base(other)?;
        Ok(FgDownset {
            base: self.base.clone(),
            maxgens: join_raw(&self.maxgens, &other.maxgens),
        })
    }

    pub fn dsum(&self, other: &Self) -> Result<Self> {
        self.same_base(other)?;
        Ok(FgDownset {
            base: self.base.clone(),
            maxgens: sum_raw(&self.maxgens, &other.maxgens),
        })
    }

    /// Every multiupset in the denoted downset, in canonical order. This is
    /// the brute-force oracle for the antichain representation.
    pub fn enumerate(&self) -> Vec<Multiupset> {
        let base = &self.base;
        let mut all: BTreeSet<Raw> = BTreeSet::new();
        for &m in &self.maxgens {
            below(base, &unpack(m, base.len()), &mut all);
        }
        let mut out: Vec<Multiupset> = all.into_iter().map(|g| Multiupset::from_raw(base, g)).collect();
        out.sort();
        out
    }
}

/// Inserts every order-preserving `g <= m` into `out`.
fn below(base: &FinPoset, m: &[u32], out: &mut BTreeSet<Raw>) {
    let n = m.len();
    let mut g = vec![0u32; n];
    loop {
        if base.strict_pairs().all(|(x, y)| g[x] <= g[y]) {
            out.insert(Raw::from_slice(&g));
        }
        let mut i = 0;
        while i < n {
            if g[i] < m[i] {
                g[i] += 1;
                break;
            }
            g[i] = 0;
            i += 1;
        }
        if i == n {
            return;
        }
    }
}

pub fn djoin(family: &[FgDownset]) -> Result<FgDownset> {
    let first = family.first().ok_or(Error::EmptyGeneratorSet)?;
    family.iter().skip(1).try_fold(first.clone(), |acc, p| acc.join(p))
}

/// `DM(X)` as a generalized quantale over a fixed base poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DmQuantale {
    base: FinPoset,
}

impl DmQuantale {
    pub fn new(base: &FinPoset) -> Result<Self> {
        check_base(base)?;
        Ok(DmQuantale { base: base.clone() })
    }

    pub fn base(&self) -> &FinPoset {
        &self.base
    }

    pub fn eta(&self, a: usize) -> FgDownset {
        FgDownset::eta(&self.base, a)
    }

    /// Every downset whose maximal generators have multiplicity `<= k`
    /// and form an antichain of size `<= antichain`.
    pub fn fragment(&self, frag: &Fragment) -> Vec<FgDownset> {
        downset_fragment(&self.base, frag)
    }
}

impl Carrier for DmQuantale {
    type Elem = FgDownset;
    #[inline]
    fn leq(&self, a: &FgDownset, b: &FgDownset) -> bool {
        dleq_raw(&a.maxgens, &b.maxgens)
    }
    fn show(&self, a: &FgDownset) -> String {
        a.to_string()
    }
    fn weight(&self, a: &FgDownset) -> usize {
        a.multiplicity()
    }
}

impl QuantaleOps for DmQuantale {
    fn join(&self, a: &FgDownset, b: &FgDownset) -> FgDownset {
        FgDownset {
            base: self.base.clone(),
            maxgens: join_raw(&a.maxgens, &b.maxgens),
        }
    }
    fn plus(&self, a: &FgDownset, b: &FgDownset) -> FgDownset {
        FgDownset {
            base: self.base.clone(),
            maxgens: sum_raw(&a.maxgens, &b.maxgens),
        }
    }
    fn zero(&self) -> FgDownset {
        FgDownset::dzero(&self.base)
    }
}

pub fn downset_fragment(base: &FinPoset, frag: &Fragment) -> Vec<FgDownset> {
    let gens: Vec<Gen> = multiupset::fragment(base, frag.k).iter().map(|g| pack(g.eval())).collect();
    let n = gens.len();
    let comparable = |i: usize, j: usize| gen_leq(gens[i], gens[j]) || gen_leq(gens[j], gens[i]);
    let mut out: BTreeSet<Gens> = BTreeSet::new();
    let mut stack: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    while let Some(chain) = stack.pop() {
        out.insert(normalize_raw(chain.iter().map(|&i| gens[i])));
        if chain.len() < frag.antichain {
            let last = *chain.last().unwrap();
            for j in last + 1..n {
                if chain.iter().all(|&i| !comparable(i, j)) {
                    let mut next = chain.clone();
                    next.push(j);
                    stack.push(next);
                }
            }
        }
    }
    let mut v: Vec<FgDownset> = out
        .into_iter()
        .map(|maxgens| FgDownset {
            base: base.clone(),
            maxgens,
        })
        .collect();
    v.sort_by_cached_key(|p| (p.multiplicity(), p.len(), p.to_string()));
    v
}

/// `h♯(P) = ⋁ h[maxgens P]` for a pomonoid homomorphism
/// `h: Multi(X) -> N` given as an extension of a map on generators.
#[derive(Debug, Clone)]
pub struct DmExtension {
    h: PomonoidExtension,
    target: FinQuantale,
}

impl DmExtension {
    pub fn new(h: PomonoidExtension, target: &FinQuantale) -> Result<Self> {
        if !target.is_cdi() {
            return Err(Error::NotCdi);
        }
        if h.target() != target.pomonoid() {
            return Err(Error::NotAHomomorphism("h does not land in the target's sum".into()));
        }
        Ok(DmExtension {
            h,
            target: target.clone(),
        })
    }

    pub fn apply(&self, p: &FgDownset) -> usize {
        self.target
            .big_join(p.maxgens().iter().map(|f| self.h.apply(f)))
            .expect("downsets are non-empty")
    }
}

/// `Down(M)` for a finite c.d.i. pomonoid, materialized as a finite
/// quantale together with the unit map.
#[derive(Debug, Clone)]
pub struct DownQuantale {
    pub quantale: FinQuantale,
    /// Member lists of each downset, indexed like the quantale carrier.
    pub sets: Vec<Vec<usize>>,
    /// `η(a) = ↓{a}` as a carrier index.
    pub eta: Vec<usize>,
    base: Pomonoid,
}

/// Downset names list their maximal elements: `v{a,b}`.
fn down_name(m: &Pomonoid, set: &[usize]) -> String {
    let max = m.poset().maximal(set);
    let parts: Vec<&str> = max.iter().map(|&x| m.name(x)).collect();
    format!("v{{{}}}", parts.join(","))
}

pub fn down_quantale(m: &Pomonoid) -> Result<DownQuantale> {
    if !m.is_cdi() {
        return Err(Error::NotCdi);
    }
    let n = m.len();
    if n > 16 {
        return Err(Error::TooLarge {
            what: "Down(M) base",
            size: n,
            limit: 16,
        });
    }
    let poset = m.poset();
    let mut sets: Vec<Vec<usize>> = (1u32..(1 << n))
        .map(|mask| (0..n).filter(|&x| mask & (1 << x) != 0).collect::<Vec<usize>>())
        .filter(|s| poset.down(s) == *s)
        .collect();
    sets.sort_by_key(|s| down_name(m, s));
    let names: Vec<String> = sets.iter().map(|s| down_name(m, s)).collect();
    let subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.contains(x));
    let carrier = FinPoset::from_fn(names, |i, j| subset(&sets[i], &sets[j]))?;
    let find = |s: &Vec<usize>| sets.iter().position(|t| t == s).expect("closed under sums");
    let k = sets.len();
    let mut plus = vec![0; k * k];
    for i in 0..k {
        for j in 0..k {
            let sums: Vec<usize> = sets[i]
                .iter()
                .flat_map(|&x| sets[j].iter().map(move |&y| m.op(x, y)))
                .collect();
            plus[i * k + j] = find(&poset.down(&sums));
        }
    }
    let zero = find(&poset.down(&[m.unit()]));
    let quantale = FinQuantale::new(Pomonoid::new(carrier, plus, zero, Notation::Additive)?)?;
    let eta = (0..n).map(|a| find(&poset.down(&[a]))).collect();
    Ok(DownQuantale {
        quantale,
        sets,
        eta,
        base: m.clone(),
    })
}

impl DownQuantale {
    pub fn base(&self) -> &Pomonoid {
        &self.base
    }

    /// `h♯(P) = ⋁ h[maxgens P]` for a pomonoid homomorphism `h: M -> N`.
    pub fn free_extend(&self, h: &[usize], target: &FinQuantale) -> Result<Vec<usize>> {
        let m = &self.base;
        if !target.is_cdi() {
            return Err(Error::NotCdi);
        }
        if h.len() != m.len() || h.iter().any(|&y| y >= target.len()) {
            return Err(Error::Malformed("h is not total".into()));
        }
        for (x, y) in m.poset().strict_pairs() {
            if !target.leq(h[x], h[y]) {
                return Err(Error::NotAHomomorphism(format!(
                    "not monotone at {} <= {}",
                    m.name(x),
                    m.name(y)
                )));
            }
        }
        if h[m.unit()] != target.zero() {
            return Err(Error::NotAHomomorphism(format!("h({}) != 0", m.name(m.unit()))));
        }
        for x in 0..m.len() {
            for y in 0..m.len() {
                if h[m.op(x, y)] != target.plus(h[x], h[y]) {
                    return Err(Error::NotAHomomorphism(format!(
                        "h({} + {}) != h({}) + h({})",
                        m.name(x),
                        m.name(y),
                        m.name(x),
                        m.name(y)
                    )));
                }
            }
        }
        Ok(self
            .sets
            .iter()
            .map(|s| {
                let max = m.poset().maximal(s);
                target.big_join(max.into_iter().map(|x| h[x])).expect("non-empty")
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{c2, d2, n2};

    fn dm(base: &FinPoset, s: &str) -> FgDownset {
        FgDownset::parse(base, s).unwrap()
    }

    #[test]
    fn normal_form() {
        let d2 = d2();
        let p = Multiupset::parse(&d2, "[p]").unwrap();
        let e = Multiupset::empty(&d2);
        let pq = Multiupset::parse(&d2, "[p,q]").unwrap();
        let q = Multiupset::parse(&d2, "[q]").unwrap();
        assert_eq!(FgDownset::normalize(&[p.clone(), e]).unwrap().to_string(), "v[[p]]");
        assert_eq!(FgDownset::normalize(&[p.clone(), pq]).unwrap().to_string(), "v[[p,q]]");
        assert_eq!(FgDownset::normalize(&[p, q]).unwrap().to_string(), "v[[q],[p]]");
        assert!(matches!(FgDownset::normalize(&[]), Err(Error::EmptyGeneratorSet)));
    }

    #[test]
    fn joins_sums_order() {
        let d2 = d2();
        let p = dm(&d2, "v[[p]]");
        let q = dm(&d2, "v[[q]]");
        let pq = dm(&d2, "v[[p],[q]]");
        assert_eq!(p.join(&q).unwrap(), pq);
        assert_eq!(pq.join(&pq).unwrap(), pq);
        assert_eq!(p.join(&dm(&d2, "v[[p,q]]")).unwrap(), dm(&d2, "v[[p,q]]"));
        assert_eq!(p.dsum(&q).unwrap(), dm(&d2, "v[[p,q]]"));
        assert_eq!(pq.dsum(&FgDownset::dzero(&d2)).unwrap(), pq);
        assert_eq!(pq.dsum(&p).unwrap(), dm(&d2, "v[[p,p],[p,q]]"));
        assert!(p.dleq(&dm(&d2, "v[[p,q]]")).unwrap());
        assert!(!pq.dleq(&p).unwrap());
        assert!(FgDownset::dzero(&d2).dleq(&pq).unwrap());
        assert!(matches!(p.join(&FgDownset::dzero(&c2())), Err(Error::BaseMismatch)));
    }

    #[test]
    fn eta_principal() {
        let d2 = d2();
        let e = FgDownset::unit_embed(&d2, "p").unwrap();
        assert_eq!(e.enumerate().len(), 2);
        assert_eq!(dm(&d2, "v[[]]"), FgDownset::dzero(&d2));
    }

    #[test]
    fn down_n2_unit_is_hom() {
        let q = n2();
        let down = down_quantale(q.pomonoid()).unwrap();
        assert_eq!(down.quantale.len(), 3);
        let (e1, e2) = (down.eta[1], down.eta[2]);
        assert_eq!(down.quantale.plus(e1, e1), e2);
        let id: Vec<usize> = (0..3).collect();
        let hs = down.free_extend(&id, &q).unwrap();
        assert_eq!(hs[down.quantale.join(e1, e2)], 2);
        assert_eq!(hs[down.quantale.zero()], 0);
    }

    #[test]
    fn fragment_is_closed_under_normalization() {
        let frag = Fragment::default();
        let xs = downset_fragment(&d2(), &frag);
        assert!(xs.iter().all(|p| p.len() <= 3 && p.multiplicity() <= 4));
        let uniq: BTreeSet<Gens> = xs.iter().map(|p| p.maxgens.clone()).collect();
        assert_eq!(uniq.len(), xs.len());
    }
}
