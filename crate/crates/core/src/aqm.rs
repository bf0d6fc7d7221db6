//! Additive quantales with multiplication: finite AQMs, the `ExpEnd`
//! construction and the free AQM over a pomonoid.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use hashbrown::Equivalent;
use serde::Serialize;

use crate::downset::{gen_add, gen_decompose, gen_scale, lane, pack, DmQuantale, FgDownset, Fragment, Gen, Gens};
use crate::error::{Error, Result};
use crate::memo::Memo;
use crate::laws::{check_aqm_laws, AqmOps, Carrier, FiniteDist, LawReport, QuantaleOps};
use crate::multiupset::{eval_of_gens, leq_raw};
use crate::order::{enumerate_monotone_selfmaps, map_name, FinPoset, Notation, Pomonoid};
use crate::quantale::{eval_term, FinQuantale, QuantaleTerm};

/// Largest quantale accepted by [`exp_end`].
pub const EXP_END_LIMIT: usize = 5;

/// Unvalidated tables of a finite AQM. [`check_aqm`] scans them and
/// [`FinAqm::new`] turns them into a validated value.
#[derive(Debug, Clone)]
pub struct AqmParts {
    pub quant: FinQuantale,
    pub mul: Vec<usize>,
    pub one: usize,
    pub dist_poset: FinPoset,
    pub dist_mul: Vec<usize>,
    pub dist_one: usize,
    pub iota: Vec<usize>,
}

impl AqmParts {
    /// The whole multiplicative monoid as the distributive sort, `ι = id`.
    pub fn full(quant: FinQuantale, mul: Vec<usize>, one: usize) -> Self {
        let n = quant.len();
        AqmParts {
            dist_poset: quant.poset().clone(),
            dist_mul: mul.clone(),
            dist_one: one,
            iota: (0..n).collect(),
            quant,
            mul,
            one,
        }
    }

    pub fn with_dist(quant: FinQuantale, mul: Vec<usize>, one: usize, dist: &Pomonoid, iota: Vec<usize>) -> Self {
        AqmParts {
            quant,
            mul,
            one,
            dist_poset: dist.poset().clone(),
            dist_mul: dist.table().to_vec(),
            dist_one: dist.unit(),
            iota,
        }
    }

    fn check_shape(&self) -> Result<()> {
        let n = self.quant.len();
        let m = self.dist_poset.len();
        let ok = self.mul.len() == n * n
            && self.mul.iter().all(|&z| z < n)
            && self.one < n
            && self.dist_mul.len() == m * m
            && self.dist_mul.iter().all(|&z| z < m)
            && self.dist_one < m
            && self.iota.len() == m
            && self.iota.iter().all(|&z| z < n);
        if ok {
            Ok(())
        } else {
            Err(Error::Malformed("AQM tables are not total".into()))
        }
    }
}

impl Carrier for AqmParts {
    type Elem = usize;
    fn leq(&self, a: &usize, b: &usize) -> bool {
        self.quant.leq(*a, *b)
    }
    fn show(&self, a: &usize) -> String {
        self.quant.name(*a).to_string()
    }
}

impl QuantaleOps for AqmParts {
    fn join(&self, a: &usize, b: &usize) -> usize {
        self.quant.join(*a, *b)
    }
    fn plus(&self, a: &usize, b: &usize) -> usize {
        self.quant.plus(*a, *b)
    }
    fn zero(&self) -> usize {
        self.quant.zero()
    }
}

impl AqmOps for AqmParts {
    type Dist = usize;
    fn mul(&self, a: &usize, b: &usize) -> Result<usize> {
        Ok(self.mul[a * self.quant.len() + b])
    }
    fn one(&self) -> usize {
        self.one
    }
    fn iota(&self, d: &usize) -> usize {
        self.iota[*d]
    }
    fn dist_mul(&self, d: &usize, e: &usize) -> usize {
        self.dist_mul[d * self.dist_poset.len() + e]
    }
    fn dist_one(&self) -> usize {
        self.dist_one
    }
    fn dist_leq(&self, d: &usize, e: &usize) -> bool {
        self.dist_poset.leq(*d, *e)
    }
    fn show_dist(&self, d: &usize) -> String {
        self.dist_poset.name(*d).to_string()
    }
}

/// Law scan of a finite AQM plus its distributive-generation analysis.
#[derive(Debug, Clone, Serialize)]
pub struct AqmReport {
    pub laws: LawReport,
    pub distributively_generated: bool,
    /// Each element with a term over `ι[A_d]` denoting it, when reached.
    pub presentation: Vec<(String, Option<String>)>,
    /// The closure of `ι[A_d]` is closed under `·` and contains 1.
    pub closure_is_submonoid: bool,
}

impl AqmReport {
    pub fn passed(&self) -> bool {
        self.laws.passed()
    }
}

/// Terms over `ι[A_d]` for every element reachable from it by binary
/// joins, sums and 0; `None` for unreachable elements.
fn dg_closure(parts: &AqmParts) -> Vec<Option<QuantaleTerm>> {
    let q = &parts.quant;
    let n = q.len();
    let mut terms: Vec<Option<QuantaleTerm>> = vec![None; n];
    terms[q.zero()] = Some(QuantaleTerm::zero());
    for (d, &x) in parts.iota.iter().enumerate() {
        if terms[x].is_none() {
            terms[x] = Some(QuantaleTerm::var(parts.dist_poset.name(d)));
        }
    }
    loop {
        let members: Vec<usize> = (0..n).filter(|&x| terms[x].is_some()).collect();
        let mut changed = false;
        for &x in &members {
            for &y in &members {
                let (tx, ty) = (terms[x].clone().unwrap(), terms[y].clone().unwrap());
                let j = q.join(x, y);
                if terms[j].is_none() {
                    terms[j] = Some(tx.join(&ty));
                    changed = true;
                }
                let s = q.plus(x, y);
                if terms[s].is_none() {
                    terms[s] = Some(tx.plus(&ty));
                    changed = true;
                }
            }
        }
        if !changed {
            return terms;
        }
    }
}

/// Scans every AQM law on the finite carriers and computes the
/// distributive-generation flag with a witness presentation.
pub fn check_aqm(parts: &AqmParts) -> Result<AqmReport> {
    parts.check_shape()?;
    let xs = parts.quant.elements();
    let ds: Vec<usize> = (0..parts.dist_poset.len()).collect();
    let mut laws = check_aqm_laws(parts, &xs, &ds)?;
    let m = ds.len();
    let sd = |d: usize| parts.dist_poset.name(d).to_string();
    laws.scan("distributive sort associative", &[m, m, m], |i| {
        let (a, b, c) = (i[0], i[1], i[2]);
        let l = parts.dist_mul(&parts.dist_mul(&a, &b), &c);
        let r = parts.dist_mul(&a, &parts.dist_mul(&b, &c));
        Ok((l != r).then(|| format!("({}, {}, {})", sd(a), sd(b), sd(c))))
    })?;
    laws.scan("distributive sort unit", &[m], |i| {
        let u = parts.dist_one;
        Ok((parts.dist_mul(&u, &i[0]) != i[0] || parts.dist_mul(&i[0], &u) != i[0]).then(|| sd(i[0])))
    })?;
    laws.scan("distributive sort monotone", &[m, m, m], |i| {
        let (a, b, c) = (i[0], i[1], i[2]);
        if !parts.dist_poset.leq(a, b) {
            return Ok(None);
        }
        let ok = parts.dist_poset.leq(parts.dist_mul(&a, &c), parts.dist_mul(&b, &c))
            && parts.dist_poset.leq(parts.dist_mul(&c, &a), parts.dist_mul(&c, &b));
        Ok((!ok).then(|| format!("({}, {}, {})", sd(a), sd(b), sd(c))))
    })?;
    let terms = dg_closure(parts);
    let env: BTreeMap<String, usize> = ds
        .iter()
        .map(|&d| (parts.dist_poset.name(d).to_string(), parts.iota[d]))
        .collect();
    for (x, t) in terms.iter().enumerate() {
        if let Some(t) = t {
            debug_assert_eq!(eval_term(t, &env, &parts.quant).ok(), Some(x));
        }
    }
    let closure: Vec<usize> = (0..xs.len()).filter(|&x| terms[x].is_some()).collect();
    let n = xs.len();
    let closure_is_submonoid = closure.contains(&parts.one)
        && closure
            .iter()
            .all(|&x| closure.iter().all(|&y| terms[parts.mul[x * n + y]].is_some()));
    Ok(AqmReport {
        distributively_generated: terms.iter().all(Option::is_some),
        presentation: terms
            .iter()
            .enumerate()
            .map(|(x, t)| (parts.quant.name(x).to_string(), t.as_ref().map(|t| t.to_string())))
            .collect(),
        closure_is_submonoid,
        laws,
    })
}

/// A validated finite AQM `⟨A_d, A, ι⟩`.
#[derive(Clone)]
pub struct FinAqm {
    quant: FinQuantale,
    mul: Arc<[usize]>,
    one: usize,
    dist: Pomonoid,
    iota: Arc<[usize]>,
    terms: Arc<[Option<QuantaleTerm>]>,
}

impl fmt::Debug for FinAqm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinAqm{{{:?}}}", self.quant.poset())
    }
}

impl PartialEq for FinAqm {
    fn eq(&self, other: &Self) -> bool {
        self.quant == other.quant
            && self.mul == other.mul
            && self.one == other.one
            && self.dist == other.dist
            && self.iota == other.iota
    }
}

impl FinAqm {
    /// Runs [`check_aqm`] and rejects the first violated law.
    pub fn new(parts: AqmParts) -> Result<Self> {
        let report = check_aqm(&parts)?;
        report.laws.into_result()?;
        let dist = Pomonoid::new(
            parts.dist_poset.clone(),
            parts.dist_mul.clone(),
            parts.dist_one,
            Notation::Multiplicative,
        )?;
        Ok(FinAqm {
            terms: dg_closure(&parts).into(),
            quant: parts.quant,
            mul: parts.mul.into(),
            one: parts.one,
            dist,
            iota: parts.iota.into(),
        })
    }

    pub fn parts(&self) -> AqmParts {
        AqmParts {
            quant: self.quant.clone(),
            mul: self.mul.to_vec(),
            one: self.one,
            dist_poset: self.dist.poset().clone(),
            dist_mul: self.dist.table().to_vec(),
            dist_one: self.dist.unit(),
            iota: self.iota.to_vec(),
        }
    }

    pub fn quant(&self) -> &FinQuantale {
        &self.quant
    }

    pub fn dist(&self) -> &Pomonoid {
        &self.dist
    }

    pub fn len(&self) -> usize {
        self.quant.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quant.is_empty()
    }

    pub fn name(&self, a: usize) -> &str {
        self.quant.name(a)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.len() + b]
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn iota(&self, d: usize) -> usize {
        self.iota[d]
    }

    /// `ι[A_d]` as a sorted, deduplicated list of carrier elements.
    pub fn generators(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.iota.iter().copied().collect();
        set.into_iter().collect()
    }

    pub fn is_distributively_generated(&self) -> bool {
        self.terms.iter().all(Option::is_some)
    }

    /// A term over `ι[A_d]` denoting `a`, if `a` is reached.
    pub fn presentation(&self, a: usize) -> Option<&QuantaleTerm> {
        self.terms[a].as_ref()
    }

    /// Idempotent elements in ascending carrier order.
    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&u| self.mul(u, u) == u).collect()
    }
}

impl Carrier for FinAqm {
    type Elem = usize;
    fn leq(&self, a: &usize, b: &usize) -> bool {
        self.quant.leq(*a, *b)
    }
    fn show(&self, a: &usize) -> String {
        self.quant.name(*a).to_string()
    }
}

impl QuantaleOps for FinAqm {
    fn join(&self, a: &usize, b: &usize) -> usize {
        self.quant.join(*a, *b)
    }
    fn plus(&self, a: &usize, b: &usize) -> usize {
        self.quant.plus(*a, *b)
    }
    fn zero(&self) -> usize {
        self.quant.zero()
    }
}

impl AqmOps for FinAqm {
    type Dist = usize;
    fn mul(&self, a: &usize, b: &usize) -> Result<usize> {
        Ok(FinAqm::mul(self, *a, *b))
    }
    fn one(&self) -> usize {
        self.one
    }
    fn iota(&self, d: &usize) -> usize {
        self.iota[*d]
    }
    fn dist_mul(&self, d: &usize, e: &usize) -> usize {
        self.dist.op(*d, *e)
    }
    fn dist_one(&self) -> usize {
        self.dist.unit()
    }
    fn dist_leq(&self, d: &usize, e: &usize) -> bool {
        self.dist.poset().leq(*d, *e)
    }
    fn show_dist(&self, d: &usize) -> String {
        self.dist.name(*d).to_string()
    }
}

/// `ExpEnd(Q)`: endomorphisms as the distributive sort, `Gen(Q)` as the
/// quantale sort, composition as product.
#[derive(Debug, Clone)]
pub struct ExpEnd {
    pub aqm: FinAqm,
    /// Tables of the maps in `Gen(Q)`, indexed like the AQM carrier.
    pub maps: Vec<Vec<usize>>,
    /// Tables of the endomorphisms, indexed like the distributive sort.
    pub endos: Vec<Vec<usize>>,
    pub space: FinQuantale,
}

fn is_endomorphism(q: &FinQuantale, f: &[usize]) -> bool {
    let n = q.len();
    (0..n).all(|x| {
        (0..n).all(|y| f[q.join(x, y)] == q.join(f[x], f[y]) && f[q.plus(x, y)] == q.plus(f[x], f[y]))
    }) && f[q.zero()] == q.zero()
        && q.bottom().is_none_or(|b| f[b] == b)
}

pub fn exp_end(q: &FinQuantale) -> Result<ExpEnd> {
    let n = q.len();
    if n > EXP_END_LIMIT {
        return Err(Error::TooLarge {
            what: "ExpEnd carrier",
            size: n,
            limit: EXP_END_LIMIT,
        });
    }
    let mon = enumerate_monotone_selfmaps(q.poset())?;
    let endos: Vec<Vec<usize>> = mon.maps.iter().filter(|f| is_endomorphism(q, f)).cloned().collect();
    let mut gen: BTreeSet<Vec<usize>> = endos.iter().cloned().collect();
    gen.insert(vec![q.zero(); n]);
    loop {
        let cur: Vec<Vec<usize>> = gen.iter().cloned().collect();
        let before = gen.len();
        for f in &cur {
            for g in &cur {
                gen.insert((0..n).map(|x| q.plus(f[x], g[x])).collect());
                gen.insert((0..n).map(|x| q.join(f[x], g[x])).collect());
            }
        }
        if gen.len() == before {
            break;
        }
    }
    let poset = q.poset();
    let mut maps: Vec<Vec<usize>> = gen.into_iter().collect();
    maps.sort_by_key(|f| map_name(poset, f));
    let find = |f: &[usize]| maps.iter().position(|g| g.as_slice() == f);
    let pointwise = |fs: &[Vec<usize>]| {
        let names = fs.iter().map(|f| map_name(poset, f)).collect();
        FinPoset::from_fn(names, |i, j| (0..n).all(|x| poset.leq(fs[i][x], fs[j][x])))
    };
    let k = maps.len();
    let gen_poset = pointwise(&maps)?;
    let zero = find(&vec![q.zero(); n]).expect("zero map present");
    let quant = FinQuantale::from_fn(
        gen_poset,
        |i, j| find(&(0..n).map(|x| q.plus(maps[i][x], maps[j][x])).collect::<Vec<_>>()).unwrap(),
        zero,
    )?;
    let mut mul = vec![0; k * k];
    for i in 0..k {
        for j in 0..k {
            let comp: Vec<usize> = (0..n).map(|x| maps[i][maps[j][x]]).collect();
            mul[i * k + j] = find(&comp).ok_or_else(|| {
                Error::law(
                    "Gen closed under composition",
                    format!("{} ∘ {}", map_name(poset, &maps[i]), map_name(poset, &maps[j])),
                )
            })?;
        }
    }
    let id: Vec<usize> = (0..n).collect();
    let one = find(&id).expect("identity is an endomorphism");
    let mut endos = endos;
    endos.sort_by_key(|f| map_name(poset, f));
    let e = endos.len();
    let end_poset = pointwise(&endos)?;
    let efind = |f: &[usize]| endos.iter().position(|g| g.as_slice() == f).unwrap();
    let dist = Pomonoid::from_fn(
        end_poset,
        |i, j| efind(&(0..n).map(|x| endos[i][endos[j][x]]).collect::<Vec<_>>()),
        efind(&id),
        Notation::Multiplicative,
    )?;
    let iota = (0..e).map(|i| find(&endos[i]).unwrap()).collect();
    let aqm = FinAqm::new(AqmParts::with_dist(quant, mul, one, &dist, iota))?;
    Ok(ExpEnd {
        aqm,
        maps,
        endos,
        space: q.clone(),
    })
}

/// The free AQM over a multiplicative pomonoid `M`: `DM(M)` with the
/// product `[a₁,…,aₙ]·Q = a₁⋆Q + … + aₙ⋆Q`, joined over the generators of
/// the left factor. The distributive sort is `M` itself with
/// `ι(a) = ↓{[a]}`.
#[derive(Debug, Clone)]
pub struct FreeAqm {
    monoid: Pomonoid,
    dm: DmQuantale,
    frag: Fragment,
    /// `[a·x]` packed, indexed `a * |M| + x`.
    gen_table: Arc<[Gen]>,
    /// `f · Q` for generators `f` already seen.
    memo: Arc<Memo<(Gen, Gens), Gens>>,
}

/// Borrowed form of a product memo key; hashes exactly like `(Gen, Gens)`.
#[derive(Hash)]
struct Probe<'a>(Gen, &'a [Gen]);

impl Equivalent<(Gen, Gens)> for Probe<'_> {
    fn equivalent(&self, key: &(Gen, Gens)) -> bool {
        self.0 == key.0 && self.1 == &key.1[..]
    }
}

pub fn free_aqm(m: &Pomonoid, frag: Fragment) -> Result<FreeAqm> {
    let dm = DmQuantale::new(m.poset())?;
    let n = m.len();
    let gen_table = (0..n * n)
        .map(|i| pack(&eval_of_gens(m.poset(), &[m.op(i / n, i % n)])))
        .collect();
    Ok(FreeAqm {
        monoid: m.clone(),
        dm,
        frag,
        gen_table,
        memo: Arc::default(),
    })
}

impl FreeAqm {
    pub fn monoid(&self) -> &Pomonoid {
        &self.monoid
    }

    pub fn dm(&self) -> &DmQuantale {
        &self.dm
    }

    pub fn fragment(&self) -> &Fragment {
        &self.frag
    }

    pub fn base(&self) -> &FinPoset {
        self.monoid.poset()
    }

    /// Generators of `P` over which a monotone construction may be
    /// evaluated: the maximal ones on a discrete base, all members
    /// otherwise.
    pub(crate) fn spanning(&self, p: &FgDownset) -> Vec<Gen> {
        if self.base().is_discrete() {
            p.raw().to_vec()
        } else {
            p.enumerate().iter().map(|f| pack(f.eval())).collect()
        }
    }

    /// `a ⋆ [x₁,…,xₙ] = [a·x₁,…,a·xₙ]` on the canonical generators.
    pub(crate) fn scalar_on_gen(&self, a: usize, g: Gen) -> Gen {
        let base = self.base();
        let n = base.len();
        let row = &self.gen_table[a * n..(a + 1) * n];
        if base.is_discrete() {
            (0..n).fold(0, |acc, x| gen_add(acc, gen_scale(row[x], lane(g, x))))
        } else {
            gen_decompose(base, g).into_iter().fold(0, |acc, x| gen_add(acc, row[x]))
        }
    }

    /// `a ⋆ Q = ↓{a ⋆ g : g ∈ Q}`.
    pub fn scalar_on_downset(&self, a: usize, q: &FgDownset) -> FgDownset {
        let gens = self.spanning(q).into_iter().map(|g| self.scalar_on_gen(a, g));
        FgDownset::from_raw(self.base(), gens)
    }

    /// `[a₁,…,aₙ] · Q = a₁⋆Q + … + aₙ⋆Q`, and `[] · Q = 0`. Built one
    /// summand at a time so that prefixes are shared through the memo.
    fn gen_times(&self, f: Gen, q: &FgDownset, out: &mut Gens) {
        let own = |p: &Probe| (p.0, Gens::from_slice(p.1));
        let compute = || {
            let base = self.base();
            let parts = gen_decompose(base, f);
            match parts.split_last() {
                None => self.dm.zero().raw().into(),
                Some((&a, rest)) => {
                    let mut prefix = Gens::new();
                    self.gen_times(pack(&eval_of_gens(base, rest)), q, &mut prefix);
                    let prefix = FgDownset::from_raw(base, prefix);
                    self.dm.plus(&prefix, &self.scalar_on_downset(a, q)).raw().into()
                }
            }
        };
        self.memo
            .visit(&Probe(f, q.raw()), own, compute, |v: &Gens| out.extend_from_slice(v));
    }

    fn within_limit(&self, p: FgDownset) -> Result<FgDownset> {
        let size = p.multiplicity();
        if size > self.frag.limit {
            return Err(Error::FragmentExceeded {
                size,
                limit: self.frag.limit,
            });
        }
        Ok(p)
    }

    pub fn product(&self, p: &FgDownset, q: &FgDownset) -> Result<FgDownset> {
        let mut parts = Gens::new();
        for f in self.spanning(p) {
            self.gen_times(f, q, &mut parts);
        }
        self.within_limit(FgDownset::from_raw(self.base(), parts))
    }

    /// The elementwise product `↓{f·g : f ∈ P, g ∈ Q}` where `f·g` is the
    /// multiset of pairwise products. It is not the free product.
    pub fn naive_product(&self, p: &FgDownset, q: &FgDownset) -> FgDownset {
        let base = self.base();
        let mut out = Vec::new();
        for f in self.spanning(p) {
            for g in self.spanning(q) {
                let fs = gen_decompose(base, f);
                let gs = gen_decompose(base, g);
                let prod: Vec<usize> = fs
                    .iter()
                    .flat_map(|&a| gs.iter().map(move |&b| (a, b)))
                    .map(|(a, b)| self.monoid.op(a, b))
                    .collect();
                out.push(pack(&eval_of_gens(base, &prod)));
            }
        }
        FgDownset::from_raw(base, out)
    }

    /// A pair on which `a ↦ ↓{[a]}` fails to be an order embedding.
    pub fn unit_embedding_witness(&self) -> Option<String> {
        let p = self.base();
        let n = p.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| p.leq(a, b) != self.dm.leq(&self.dm.eta(a), &self.dm.eta(b)))
            .map(|(a, b)| {
                format!(
                    "{a} <= {b} is {} but η({a}) <= η({b}) is {}",
                    p.leq(a, b),
                    self.dm.leq(&self.dm.eta(a), &self.dm.eta(b)),
                    a = p.name(a),
                    b = p.name(b)
                )
            })
    }

    /// Scalars of the fragment: downsets of the configured size.
    pub fn scalar_fragment(&self) -> Vec<FgDownset> {
        self.dm.fragment(&self.frag)
    }
}

impl Carrier for FreeAqm {
    type Elem = FgDownset;
    fn leq(&self, a: &FgDownset, b: &FgDownset) -> bool {
        self.dm.leq(a, b)
    }
    fn show(&self, a: &FgDownset) -> String {
        a.to_string()
    }
    fn weight(&self, a: &FgDownset) -> usize {
        a.multiplicity()
    }
}

impl QuantaleOps for FreeAqm {
    fn join(&self, a: &FgDownset, b: &FgDownset) -> FgDownset {
        self.dm.join(a, b)
    }
    fn plus(&self, a: &FgDownset, b: &FgDownset) -> FgDownset {
        self.dm.plus(a, b)
    }
    fn zero(&self) -> FgDownset {
        self.dm.zero()
    }
}

impl AqmOps for FreeAqm {
    type Dist = usize;
    fn mul(&self, a: &FgDownset, b: &FgDownset) -> Result<FgDownset> {
        self.product(a, b)
    }
    fn one(&self) -> FgDownset {
        self.dm.eta(self.monoid.unit())
    }
    fn iota(&self, d: &usize) -> FgDownset {
        self.dm.eta(*d)
    }
    fn dist_mul(&self, d: &usize, e: &usize) -> usize {
        self.monoid.op(*d, *e)
    }
    fn dist_one(&self) -> usize {
        self.monoid.unit()
    }
    fn dist_leq(&self, d: &usize, e: &usize) -> bool {
        self.monoid.poset().leq(*d, *e)
    }
    fn show_dist(&self, d: &usize) -> String {
        self.monoid.name(*d).to_string()
    }
}

impl FiniteDist for FreeAqm {
    fn dist_pomonoid(&self) -> &Pomonoid {
        &self.monoid
    }
}

impl FiniteDist for FinAqm {
    fn dist_pomonoid(&self) -> &Pomonoid {
        &self.dist
    }
}

/// The AQM homomorphism `DM(M) -> B` extending `ι_B ∘ h` for a pomonoid
/// homomorphism `h: M -> B_d`.
#[derive(Debug, Clone)]
pub struct FreeAqmExtension {
    free: FreeAqm,
    target: FinAqm,
    h: Vec<usize>,
}

pub fn extend_free_aqm(free: &FreeAqm, target: &FinAqm, h: &[usize]) -> Result<FreeAqmExtension> {
    let m = free.monoid();
    let b = target.dist();
    if h.len() != m.len() || h.iter().any(|&y| y >= b.len()) {
        return Err(Error::Malformed("h is not total".into()));
    }
    if h[m.unit()] != b.unit() {
        return Err(Error::NotAHomomorphism("h(1) != 1".into()));
    }
    for x in 0..m.len() {
        for y in 0..m.len() {
            if h[m.op(x, y)] != b.op(h[x], h[y]) {
                return Err(Error::NotAHomomorphism(format!("at ({}, {})", m.name(x), m.name(y))));
            }
            if m.poset().leq(x, y) && !b.poset().leq(h[x], h[y]) {
                return Err(Error::NotAHomomorphism(format!(
                    "not monotone at {} <= {}",
                    m.name(x),
                    m.name(y)
                )));
            }
        }
    }
    Ok(FreeAqmExtension {
        free: free.clone(),
        target: target.clone(),
        h: h.to_vec(),
    })
}

impl FreeAqmExtension {
    pub fn apply(&self, p: &FgDownset) -> usize {
        let t = &self.target;
        let base = self.free.base();
        self.free
            .spanning(p)
            .into_iter()
            .map(|f| {
                gen_decompose(base, f)
                    .into_iter()
                    .fold(t.quant().zero(), |acc, x| t.quant().plus(acc, t.iota(self.h[x])))
            })
            .reduce(|a, b| t.quant().join(a, b))
            .expect("downsets are non-empty")
    }
}

/// True when every member of `p` lies below some member of `q`, computed by
/// brute-force enumeration rather than on maximal generators.
pub fn dleq_by_enumeration(p: &FgDownset, q: &FgDownset) -> bool {
    let qs = q.enumerate();
    p.enumerate().iter().all(|f| qs.iter().any(|g| leq_raw(f.eval(), g.eval())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{a3, a3_parts, m2, n2};

    #[test]
    fn a3_valid_and_generated() {
        let r = check_aqm(&a3_parts()).unwrap();
        assert!(r.passed(), "{:?}", r.laws.first_failure());
        assert!(r.distributively_generated && r.closure_is_submonoid);
    }

    #[test]
    fn misdeclared_unit() {
        let mut parts = a3_parts();
        parts.one = 0;
        parts.dist_one = 0;
        let e = FinAqm::new(parts).unwrap_err();
        assert!(matches!(e, Error::LawViolated { ref law, .. } if law == "unit"), "{e}");
    }

    #[test]
    fn exp_end_n2() {
        let e = exp_end(&n2()).unwrap();
        assert_eq!(e.endos, vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 2]]);
        let id = e.maps.iter().position(|f| f == &vec![0, 1, 2]).unwrap();
        let dbl = e.maps.iter().position(|f| f == &vec![0, 2, 2]).unwrap();
        assert_eq!(e.aqm.quant().plus(id, id), dbl);
        assert!(e.aqm.is_distributively_generated());
        assert!(check_aqm(&e.aqm.parts()).unwrap().closure_is_submonoid);
    }

    #[test]
    fn free_products() {
        let m = m2();
        let f = free_aqm(&m, Fragment::default()).unwrap();
        let base = f.base().clone();
        let dm = |s: &str| FgDownset::parse(&base, s).unwrap();
        assert_eq!(f.product(&dm("v[[c]]"), &dm("v[[c,c]]")).unwrap(), dm("v[[c,c]]"));
        assert_eq!(f.product(&dm("v[[e],[c]]"), &dm("v[[c]]")).unwrap(), dm("v[[c]]"));
        let p = dm("v[[e],[c,c]]");
        assert_eq!(f.product(&f.one(), &p).unwrap(), p);
    }

    #[test]
    fn naive_product_differs() {
        let f = free_aqm(&m2(), Fragment::default()).unwrap();
        let base = f.base().clone();
        let p = FgDownset::parse(&base, "v[[e,e]]").unwrap();
        let q = FgDownset::parse(&base, "v[[e],[c]]").unwrap();
        assert_eq!(f.product(&p, &q).unwrap().to_string(), "v[[e,e],[c,e],[c,c]]");
        assert_ne!(f.product(&p, &q).unwrap(), f.naive_product(&p, &q));
    }

    #[test]
    fn product_limit_is_an_error() {
        let f = free_aqm(&m2(), Fragment { k: 4, antichain: 3, limit: 3 }).unwrap();
        let base = f.base().clone();
        let p = FgDownset::parse(&base, "v[[e,e]]").unwrap();
        assert!(matches!(f.product(&p, &p), Err(Error::FragmentExceeded { size: 4, limit: 3 })));
    }

    #[test]
    fn freeness_into_a3() {
        let f = free_aqm(&m2(), Fragment::new(2, 2)).unwrap();
        let a = a3();
        let h = vec![2, 1]; // c ↦ 2, e ↦ 1
        let ext = extend_free_aqm(&f, &a, &h).unwrap();
        let xs = f.scalar_fragment();
        for p in &xs {
            for q in &xs {
                let pq = f.product(p, q).unwrap();
                assert_eq!(ext.apply(&pq), a.mul(ext.apply(p), ext.apply(q)));
                assert_eq!(ext.apply(&f.dm().join(p, q)), a.quant().join(ext.apply(p), ext.apply(q)));
            }
        }
        assert!(extend_free_aqm(&f, &a, &[0, 2]).is_err());
    }
}
