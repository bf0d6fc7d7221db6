//! Actions at three levels: a pomonoid on a poset, a pomonoid on a
//! generalized quantale (an act), and an AQM on a generalized quantale (a
//! module). Extension along the free constructions and restriction along
//! `ι` move between the levels.

use std::fmt;
use std::sync::Arc;

use hashbrown::Equivalent;
use serde::Serialize;

use crate::aqm::{free_aqm, FinAqm, FreeAqm};
use crate::downset::{gen_decompose, pack, DmQuantale, FgDownset, Fragment, Gen};
use crate::error::{Error, Result};
use crate::laws::{
    check_act_laws, check_module_laws, check_poset_action_laws, ActOps, ActPoint, AqmOps, Carrier, FiniteDist,
    LawReport, ModuleOps, Point, QuantaleOps, Scalar,
};
use crate::memo::Memo;
use crate::multiupset::eval_of_gens;
use crate::order::{FinPoset, Pomonoid};
use crate::par;
use crate::quantale::FinQuantale;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Level {
    PosetAction,
    ActAction,
    ModuleAction,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::PosetAction => "poset-action",
            Level::ActAction => "act-action",
            Level::ModuleAction => "module-action",
        })
    }
}

/// Builds a total `rows × cols` table from `(a, x, y)` name triples.
fn table_from_triples<S: AsRef<str>>(
    rows: usize,
    cols: usize,
    triples: &[(S, S, S)],
    row: impl Fn(&str) -> Result<usize>,
    col: impl Fn(&str) -> Result<usize>,
) -> Result<Vec<usize>> {
    let mut table = vec![None; rows * cols];
    for (a, x, y) in triples {
        let (i, j) = (row(a.as_ref())?, col(x.as_ref())?);
        let v = col(y.as_ref())?;
        if table[i * cols + j].replace(v).is_some_and(|old| old != v) {
            return Err(Error::Malformed(format!(
                "action defined twice at ({}, {})",
                a.as_ref(),
                x.as_ref()
            )));
        }
    }
    table
        .into_iter()
        .enumerate()
        .map(|(k, v)| v.ok_or_else(|| Error::Malformed(format!("action undefined at entry {}", k))))
        .collect()
}

fn check_table(table: &[usize], rows: usize, cols: usize) -> Result<()> {
    if table.len() != rows * cols || table.iter().any(|&y| y >= cols) {
        return Err(Error::Malformed("action table is not total".into()));
    }
    Ok(())
}

/// A pomonoid acting on a finite poset. Construction checks only that the
/// table is total; [`PosetAction::check`] scans the laws.
#[derive(Debug, Clone)]
pub struct PosetAction {
    monoid: Pomonoid,
    space: FinPoset,
    table: Arc<[usize]>,
}

impl PosetAction {
    pub fn new(monoid: Pomonoid, space: FinPoset, table: Vec<usize>) -> Result<Self> {
        check_table(&table, monoid.len(), space.len())?;
        Ok(PosetAction {
            monoid,
            space,
            table: table.into(),
        })
    }

    pub fn from_triples<S: AsRef<str>>(monoid: Pomonoid, space: FinPoset, triples: &[(S, S, S)]) -> Result<Self> {
        let table = table_from_triples(
            monoid.len(),
            space.len(),
            triples,
            |a| monoid.poset().index(a),
            |x| space.index(x),
        )?;
        Self::new(monoid, space, table)
    }

    pub fn poset(&self) -> &FinPoset {
        &self.space
    }

    pub fn get(&self, a: usize, x: usize) -> usize {
        self.table[a * self.space.len() + x]
    }

    pub fn check(&self) -> Result<LawReport> {
        let ps: Vec<usize> = (0..self.space.len()).collect();
        check_poset_action_laws(self, &ps)
    }
}

impl ActOps for PosetAction {
    type Space = FinPoset;
    fn monoid(&self) -> &Pomonoid {
        &self.monoid
    }
    fn space(&self) -> &FinPoset {
        &self.space
    }
    fn act(&self, a: usize, x: &usize) -> usize {
        self.get(a, *x)
    }
}

/// A pomonoid acting on a finite generalized quantale.
#[derive(Debug, Clone)]
pub struct FinAct {
    monoid: Pomonoid,
    space: FinQuantale,
    table: Arc<[usize]>,
}

impl FinAct {
    pub fn new(monoid: Pomonoid, space: FinQuantale, table: Vec<usize>) -> Result<Self> {
        check_table(&table, monoid.len(), space.len())?;
        Ok(FinAct {
            monoid,
            space,
            table: table.into(),
        })
    }

    pub fn from_triples<S: AsRef<str>>(monoid: Pomonoid, space: FinQuantale, triples: &[(S, S, S)]) -> Result<Self> {
        let table = table_from_triples(
            monoid.len(),
            space.len(),
            triples,
            |a| monoid.poset().index(a),
            |x| space.index(x),
        )?;
        Self::new(monoid, space, table)
    }

    pub fn get(&self, a: usize, x: usize) -> usize {
        self.table[a * self.space.len() + x]
    }

    pub fn check(&self) -> Result<LawReport> {
        check_act_laws(self, &self.space.elements())
    }
}

impl ActOps for FinAct {
    type Space = FinQuantale;
    fn monoid(&self) -> &Pomonoid {
        &self.monoid
    }
    fn space(&self) -> &FinQuantale {
        &self.space
    }
    fn act(&self, a: usize, x: &usize) -> usize {
        self.get(a, *x)
    }
}

/// A finite AQM acting on a finite generalized quantale.
#[derive(Debug, Clone)]
pub struct FinModule {
    scalars: FinAqm,
    space: FinQuantale,
    table: Arc<[usize]>,
}

impl PartialEq for FinModule {
    fn eq(&self, other: &Self) -> bool {
        self.scalars == other.scalars && self.space == other.space && self.table == other.table
    }
}

impl FinModule {
    /// Checks the table shape only; see [`FinModule::validated`].
    pub fn new(scalars: FinAqm, space: FinQuantale, table: Vec<usize>) -> Result<Self> {
        check_table(&table, scalars.len(), space.len())?;
        Ok(FinModule {
            scalars,
            space,
            table: table.into(),
        })
    }

    /// [`FinModule::new`] followed by the full law scan.
    pub fn validated(scalars: FinAqm, space: FinQuantale, table: Vec<usize>) -> Result<Self> {
        let m = Self::new(scalars, space, table)?;
        m.check()?.into_result()?;
        Ok(m)
    }

    pub fn from_triples<S: AsRef<str>>(scalars: FinAqm, space: FinQuantale, triples: &[(S, S, S)]) -> Result<Self> {
        let table = table_from_triples(
            scalars.len(),
            space.len(),
            triples,
            |a| scalars.quant().index(a),
            |x| space.index(x),
        )?;
        Self::new(scalars, space, table)
    }

    /// `A` acting on itself by multiplication.
    pub fn self_module(a: &FinAqm) -> Self {
        let n = a.len();
        FinModule {
            scalars: a.clone(),
            space: a.quant().clone(),
            table: (0..n * n).map(|i| a.mul(i / n, i % n)).collect(),
        }
    }

    pub fn aqm(&self) -> &FinAqm {
        &self.scalars
    }

    pub fn quantale(&self) -> &FinQuantale {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.space.len()
    }

    pub fn is_empty(&self) -> bool {
        self.space.is_empty()
    }

    pub fn name(&self, x: usize) -> &str {
        self.space.name(x)
    }

    #[inline]
    pub fn get(&self, a: usize, x: usize) -> usize {
        self.table[a * self.space.len() + x]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn check(&self) -> Result<LawReport> {
        let xs = self.scalars.quant().elements();
        let ds: Vec<usize> = (0..self.scalars.dist().len()).collect();
        check_module_laws(self, &xs, &ds, &self.space.elements())
    }

    /// The orbit `A∗u`, in carrier order.
    pub fn orbit(&self, u: usize) -> Vec<usize> {
        let mut o: Vec<usize> = (0..self.scalars.len()).map(|a| self.get(a, u)).collect();
        o.sort_unstable();
        o.dedup();
        o
    }

    /// The submodule carried by `elems`, which must contain 0 and be closed
    /// under joins, sums and the action. Element names are kept.
    pub fn submodule(&self, elems: &[usize]) -> Result<(FinModule, Vec<usize>)> {
        let q = &self.space;
        let mut elems = elems.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let pos = |x: usize| elems.binary_search(&x).ok();
        let fail = |what: &str, x: usize| {
            Error::law(format!("submodule closed under {what}"), q.name(x).to_string())
        };
        let z = pos(q.zero()).ok_or_else(|| fail("zero", q.zero()))?;
        let k = elems.len();
        let mut plus = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                let (s, jn) = (q.plus(elems[i], elems[j]), q.join(elems[i], elems[j]));
                plus[i * k + j] = pos(s).ok_or_else(|| fail("sums", s))?;
                pos(jn).ok_or_else(|| fail("joins", jn))?;
            }
        }
        let names: Vec<String> = elems.iter().map(|&x| q.name(x).to_string()).collect();
        let poset = FinPoset::from_fn(names, |i, j| q.leq(elems[i], elems[j]))?;
        let sub = FinQuantale::from_fn(poset, |i, j| plus[i * k + j], z)?;
        let n = self.scalars.len();
        let mut table = vec![0; n * k];
        for a in 0..n {
            for (i, &x) in elems.iter().enumerate() {
                let y = self.get(a, x);
                table[a * k + i] = pos(y).ok_or_else(|| fail("the action", y))?;
            }
        }
        let m = FinModule::new(self.scalars.clone(), sub, table)?;
        Ok((m, elems))
    }

    /// The cyclic submodule `A∗u`.
    pub fn cyclic_submodule(&self, u: usize) -> Result<(FinModule, Vec<usize>)> {
        self.submodule(&self.orbit(u))
    }
}

impl ModuleOps for FinModule {
    type Scalars = FinAqm;
    type Space = FinQuantale;
    fn scalars(&self) -> &FinAqm {
        &self.scalars
    }
    fn space(&self) -> &FinQuantale {
        &self.space
    }
    fn act(&self, a: &usize, x: &usize) -> Result<usize> {
        Ok(self.get(*a, *x))
    }
}

/// First failure of `f: M -> N` as a module homomorphism: monotone and
/// preserving binary joins, sums, zero and the action.
pub fn hom_witness(m: &FinModule, n: &FinModule, f: &[usize]) -> Option<String> {
    if m.scalars != n.scalars {
        return Some("modules over different AQMs".into());
    }
    if f.len() != m.len() || f.iter().any(|&y| y >= n.len()) {
        return Some("map is not total".into());
    }
    let (p, q) = (&m.space, &n.space);
    let k = m.len();
    if f[p.zero()] != q.zero() {
        return Some(format!("f(0) = {}", q.name(f[p.zero()])));
    }
    for x in 0..k {
        for y in 0..k {
            let (xs, ys) = (p.name(x), p.name(y));
            if p.leq(x, y) && !q.leq(f[x], f[y]) {
                return Some(format!("not monotone at {xs} <= {ys}"));
            }
            if f[p.join(x, y)] != q.join(f[x], f[y]) {
                return Some(format!("f({xs} v {ys}) != f({xs}) v f({ys})"));
            }
            if f[p.plus(x, y)] != q.plus(f[x], f[y]) {
                return Some(format!("f({xs} + {ys}) != f({xs}) + f({ys})"));
            }
        }
    }
    for a in 0..m.scalars.len() {
        for x in 0..k {
            if f[m.get(a, x)] != n.get(a, f[x]) {
                return Some(format!("f({} ∗ {}) != {} ∗ f({})", m.scalars.name(a), p.name(x), m.scalars.name(a), p.name(x)));
            }
        }
    }
    None
}

/// First failure of `f` as a module isomorphism: a bijective homomorphism
/// that also reflects the order.
pub fn iso_witness(m: &FinModule, n: &FinModule, f: &[usize]) -> Option<String> {
    if m.len() != n.len() {
        return Some(format!("carriers of size {} and {}", m.len(), n.len()));
    }
    if let Some(w) = hom_witness(m, n, f) {
        return Some(w);
    }
    let mut seen = vec![false; n.len()];
    for &y in f {
        if std::mem::replace(&mut seen[y], true) {
            return Some(format!("{} is hit twice", n.name(y)));
        }
    }
    for x in 0..m.len() {
        for y in 0..m.len() {
            if n.space.leq(f[x], f[y]) && !m.space.leq(x, y) {
                return Some(format!("order not reflected at {}, {}", m.name(x), m.name(y)));
            }
        }
    }
    None
}

/// A finite action at any of the three levels.
#[derive(Debug, Clone)]
pub enum ActionMap {
    Poset(PosetAction),
    Act(FinAct),
    Module(FinModule),
}

impl ActionMap {
    pub fn level(&self) -> Level {
        match self {
            ActionMap::Poset(_) => Level::PosetAction,
            ActionMap::Act(_) => Level::ActAction,
            ActionMap::Module(_) => Level::ModuleAction,
        }
    }
}

/// Scans the law set of the action's level exhaustively.
pub fn check_action(am: &ActionMap) -> Result<LawReport> {
    let mut r = match am {
        ActionMap::Poset(p) => p.check()?,
        ActionMap::Act(a) => a.check()?,
        ActionMap::Module(m) => m.check()?,
    };
    r.scope = format!("{}: {}", am.level(), r.scope);
    Ok(r)
}

/// The act on `DM(X)` induced by a poset action on `X`:
/// `a ∗ [x₁,…,xₙ] = [a∗x₁,…,a∗xₙ]` and `a ∗ P = ↓{a ∗ f : f ∈ P}`.
#[derive(Debug, Clone)]
pub struct DmAct {
    action: PosetAction,
    dm: DmQuantale,
}

pub fn extend_poset_action_to_dm(pa: &PosetAction) -> Result<DmAct> {
    pa.check()?.into_result()?;
    Ok(DmAct {
        dm: DmQuantale::new(pa.poset())?,
        action: pa.clone(),
    })
}

impl DmAct {
    pub fn action(&self) -> &PosetAction {
        &self.action
    }

    pub fn dm(&self) -> &DmQuantale {
        &self.dm
    }

    fn act_gen(&self, a: usize, g: Gen) -> Gen {
        let base = self.dm.base();
        let image: Vec<usize> = gen_decompose(base, g).into_iter().map(|x| self.action.get(a, x)).collect();
        pack(&eval_of_gens(base, &image))
    }

    /// Law scan at act level over a fragment of `DM(X)`.
    pub fn check(&self, frag: &Fragment) -> Result<LawReport> {
        let mut r = check_act_laws(self, &self.dm.fragment(frag))?;
        r.scope = format!("{} ({})", r.scope, frag.describe());
        Ok(r)
    }

    /// A point where `a ∗ η(x) = η(a ∗ x)` fails.
    pub fn eta_witness(&self) -> Option<String> {
        let (m, x) = (self.action.monoid.len(), self.action.space.len());
        (0..m * x).find_map(|i| {
            let (a, p) = (i / x, i % x);
            let l = self.act(a, &self.dm.eta(p));
            let r = self.dm.eta(self.action.get(a, p));
            (l != r).then(|| format!("{} ∗ η({}) = {} but η({} ∗ {}) = {}", self.action.monoid.name(a), self.action.space.name(p), l, self.action.monoid.name(a), self.action.space.name(p), r))
        })
    }
}

impl ActOps for DmAct {
    type Space = DmQuantale;
    fn monoid(&self) -> &Pomonoid {
        &self.action.monoid
    }
    fn space(&self) -> &DmQuantale {
        &self.dm
    }
    fn act(&self, a: usize, p: &FgDownset) -> FgDownset {
        let base = self.dm.base();
        let gens: Vec<Gen> = if base.is_discrete() {
            p.raw().to_vec()
        } else {
            p.enumerate().iter().map(|f| pack(f.eval())).collect()
        };
        FgDownset::from_raw(base, gens.into_iter().map(|g| self.act_gen(a, g)))
    }
}

type ActMemo<A> = Memo<(Gen, ActPoint<A>), ActPoint<A>>;

/// The module over `DM(M)` induced by an `M`-act:
/// `[a₁,…,aₙ] ∗♯ x = a₁∗x + … + aₙ∗x` and `Σ ∗♯ x` the join of these over
/// the multiupsets of `Σ`.
#[derive(Debug, Clone)]
pub struct ExtendedModule<A: ActOps> {
    act: A,
    free: FreeAqm,
    /// `f ∗♯ x` for generators `f` already seen.
    memo: Arc<ActMemo<A>>,
}

/// Borrowed form of an action memo key; hashes exactly like `(Gen, P)`.
#[derive(Hash)]
struct PointProbe<'a, P>(Gen, &'a P);

impl<P: PartialEq> Equivalent<(Gen, P)> for PointProbe<'_, P> {
    fn equivalent(&self, key: &(Gen, P)) -> bool {
        self.0 == key.0 && *self.1 == key.1
    }
}

/// Extends an act to a module over the free AQM on its monoid. The act is
/// assumed valid; the unit map of the monoid into `DM(M)` must be an order
/// embedding.
pub fn extend_act_to_module<A>(aa: &A, frag: Fragment) -> Result<ExtendedModule<A>>
where
    A: ActOps + Clone,
    A::Space: QuantaleOps,
{
    let free = free_aqm(aa.monoid(), frag)?;
    if let Some(w) = free.unit_embedding_witness() {
        return Err(Error::UnitNotEmbedding(w));
    }
    Ok(ExtendedModule {
        act: aa.clone(),
        free,
        memo: Arc::default(),
    })
}

impl<A> ExtendedModule<A>
where
    A: ActOps,
    A::Space: QuantaleOps,
{
    pub fn free(&self) -> &FreeAqm {
        &self.free
    }

    pub fn inner(&self) -> &A {
        &self.act
    }

    /// Built one summand at a time so that prefixes are shared through the
    /// memo.
    fn gen_act(&self, f: Gen, x: &ActPoint<A>) -> ActPoint<A> {
        let compute = || {
            let q = self.act.space();
            let base = self.free.base();
            let parts = gen_decompose(base, f);
            match parts.split_last() {
                None => q.zero(),
                Some((&a, rest)) => {
                    let prefix = self.gen_act(pack(&eval_of_gens(base, rest)), x);
                    q.plus(&prefix, &self.act.act(a, x))
                }
            }
        };
        self.memo
            .visit(&PointProbe(f, x), |p| (p.0, p.1.clone()), compute, Clone::clone)
    }

    fn within_limit(&self, y: ActPoint<A>) -> Result<ActPoint<A>> {
        let size = self.act.space().weight(&y);
        let limit = self.free.fragment().limit;
        if size > limit {
            return Err(Error::FragmentExceeded { size, limit });
        }
        Ok(y)
    }

    fn join_over(&self, gens: impl IntoIterator<Item = Gen>, x: &ActPoint<A>) -> Result<ActPoint<A>> {
        let q = self.act.space();
        let y = gens
            .into_iter()
            .map(|f| self.gen_act(f, x))
            .reduce(|a, b| q.join(&a, &b))
            .expect("downsets are non-empty");
        self.within_limit(y)
    }

    /// The join over every member of `Σ`, not just the maximal ones.
    pub fn act_full(&self, s: &FgDownset, x: &ActPoint<A>) -> Result<ActPoint<A>> {
        self.join_over(s.enumerate().iter().map(|f| pack(f.eval())), x)
    }

    /// Module-law scan over the scalar fragment of the free AQM.
    pub fn check(&self, ps: &[ActPoint<A>]) -> Result<LawReport> {
        let xs = self.free.scalar_fragment();
        let ds: Vec<usize> = (0..self.act.monoid().len()).collect();
        let mut r = check_module_laws(self, &xs, &ds, ps)?;
        r.scope = format!("{} ({})", r.scope, self.free.fragment().describe());
        Ok(r)
    }
}

impl<A> ModuleOps for ExtendedModule<A>
where
    A: ActOps,
    A::Space: QuantaleOps,
{
    type Scalars = FreeAqm;
    type Space = A::Space;
    fn scalars(&self) -> &FreeAqm {
        &self.free
    }
    fn space(&self) -> &A::Space {
        self.act.space()
    }
    fn act(&self, s: &FgDownset, x: &ActPoint<A>) -> Result<ActPoint<A>> {
        self.join_over(self.free.spanning(s), x)
    }
}

/// The act `a ⋆ x = ι(a) ∗ x` underlying a module.
#[derive(Debug, Clone)]
pub struct Restricted<M> {
    module: M,
}

pub fn restrict_module_to_act<M>(ma: &M) -> Restricted<M>
where
    M: ModuleOps + Clone,
    M::Scalars: FiniteDist,
{
    Restricted { module: ma.clone() }
}

impl<M> Restricted<M> {
    pub fn inner(&self) -> &M {
        &self.module
    }
}

impl<M> ActOps for Restricted<M>
where
    M: ModuleOps,
    M::Scalars: FiniteDist,
{
    type Space = M::Space;
    fn monoid(&self) -> &Pomonoid {
        self.module.scalars().dist_pomonoid()
    }
    fn space(&self) -> &M::Space {
        self.module.space()
    }
    fn act(&self, a: usize, x: &Point<M>) -> Point<M> {
        let s = self.module.scalars().iota(&a);
        self.module.act(&s, x).expect("distributive scalars stay within the fragment")
    }
}

/// `A` acting on itself by multiplication, for any AQM.
#[derive(Debug, Clone)]
pub struct SelfModule<A> {
    aqm: A,
}

impl<A: AqmOps> SelfModule<A> {
    pub fn new(aqm: A) -> Self {
        SelfModule { aqm }
    }
}

impl<A: AqmOps> ModuleOps for SelfModule<A> {
    type Scalars = A;
    type Space = A;
    fn scalars(&self) -> &A {
        &self.aqm
    }
    fn space(&self) -> &A {
        &self.aqm
    }
    fn act(&self, a: &A::Elem, x: &A::Elem) -> Result<A::Elem> {
        self.aqm.mul(a, x)
    }
}

/// First point where two acts on the same space differ.
pub fn compare_acts<A, B>(a: &A, b: &B, ps: &[ActPoint<A>]) -> Option<String>
where
    A: ActOps,
    B: ActOps<Space = A::Space>,
{
    let (m, p) = (a.monoid().len(), ps.len());
    par::find_map_first(m * p, |i| {
        let (s, x) = (i / p, &ps[i % p]);
        let (l, r) = (a.act(s, x), b.act(s, x));
        (l != r).then(|| {
            let sp = a.space();
            format!("{} ∗ {}: {} vs {}", a.monoid().name(s), sp.show(x), sp.show(&l), sp.show(&r))
        })
    })
}

/// First scalar/point pair where two modules over the same scalars differ.
pub fn compare_modules<M, N>(m: &M, n: &N, xs: &[Scalar<M>], ps: &[Point<M>]) -> Result<Option<String>>
where
    M: ModuleOps,
    N: ModuleOps<Scalars = M::Scalars, Space = M::Space>,
{
    let p = ps.len();
    par::try_find_map_first(xs.len() * p, |i| {
        let (s, x) = (&xs[i / p], &ps[i % p]);
        let (l, r) = (m.act(s, x)?, n.act(s, x)?);
        Ok((l != r).then(|| {
            let (a, q) = (m.scalars(), m.space());
            format!("{} ∗ {}: {} vs {}", a.show(s), q.show(x), q.show(&l), q.show(&r))
        }))
    })
}

/// Outcome of the extension/restriction round trips on one act.
#[derive(Debug, Clone, Serialize)]
pub struct RoundTrip {
    /// `restrict(extend(act))` against `act` on the points.
    pub act_round_trip: Option<String>,
    /// `extend(restrict(module))` against `module` on scalars × points.
    pub module_round_trip: Option<String>,
    /// `Σ ∗♯ x` over maximal generators against all members of `Σ`.
    pub maxgens_oracle: Option<String>,
    pub pairs: usize,
}

impl RoundTrip {
    pub fn passed(&self) -> bool {
        self.act_round_trip.is_none() && self.module_round_trip.is_none() && self.maxgens_oracle.is_none()
    }
}

/// Both round trips for `aa`, on the points `ps` and the scalar fragment.
pub fn round_trips<A>(aa: &A, frag: Fragment, ps: &[ActPoint<A>]) -> Result<RoundTrip>
where
    A: ActOps + Clone,
    A::Space: QuantaleOps,
{
    let ext = extend_act_to_module(aa, frag)?;
    let res = restrict_module_to_act(&ext);
    let act_round_trip = compare_acts(aa, &res, ps);
    let back = extend_act_to_module(&res, frag)?;
    let xs = ext.free().scalar_fragment();
    let module_round_trip = compare_modules(&ext, &back, &xs, ps)?;
    let p = ps.len();
    let maxgens_oracle = par::try_find_map_first(xs.len() * p, |i| {
        let (s, x) = (&xs[i / p], &ps[i % p]);
        let (l, r) = (ext.act(s, x)?, ext.act_full(s, x)?);
        Ok((l != r).then(|| format!("{} ∗♯ {}", s, aa.space().show(x))))
    })?;
    Ok(RoundTrip {
        act_round_trip,
        module_round_trip,
        maxgens_oracle,
        pairs: xs.len() * p,
    })
}

/// Checks `m ≤ m'` implies `m ∗ x ≤ m' ∗ x` over scalar/point samples.
pub fn scalar_monotonicity_witness<M: ModuleOps>(m: &M, xs: &[Scalar<M>], ps: &[Point<M>]) -> Result<Option<String>> {
    let (n, p) = (xs.len(), ps.len());
    let (a, q) = (m.scalars(), m.space());
    par::try_find_map_first(n * n * p, |i| {
        let (s, t, x) = (&xs[i / (n * p)], &xs[(i / p) % n], &ps[i % p]);
        if !a.leq(s, t) {
            return Ok(None);
        }
        Ok((!q.leq(&m.act(s, x)?, &m.act(t, x)?)).then(|| format!("{} <= {} at {}", a.show(s), a.show(t), q.show(x))))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{a3, d2, m2, m2_on_d2};

    #[test]
    fn m2_on_d2_is_a_poset_action() {
        let r = check_action(&ActionMap::Poset(m2_on_d2())).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn unit_violation() {
        let pa = PosetAction::new(m2(), d2(), vec![0, 0, 0, 0]).unwrap();
        let r = pa.check().unwrap();
        assert!(r.failure("unit").is_some());
    }

    #[test]
    fn dm_extension_examples() {
        let dm = extend_poset_action_to_dm(&m2_on_d2()).unwrap();
        let d2 = d2();
        let p = |s: &str| FgDownset::parse(&d2, s).unwrap();
        assert_eq!(dm.act(0, &p("v[[p],[q]]")), p("v[[p]]"));
        assert_eq!(dm.act(1, &p("v[[p],[q,q]]")), p("v[[p],[q,q]]"));
        assert_eq!(dm.act(0, &FgDownset::dzero(&d2)), FgDownset::dzero(&d2));
        assert!(dm.eta_witness().is_none());
    }

    #[test]
    fn module_extension_examples() {
        let dm = extend_poset_action_to_dm(&m2_on_d2()).unwrap();
        let ext = extend_act_to_module(&dm, Fragment::default()).unwrap();
        let (d2, m) = (d2(), ext.free().base().clone());
        let p = |s: &str| FgDownset::parse(&d2, s).unwrap();
        let s = |t: &str| FgDownset::parse(&m, t).unwrap();
        assert_eq!(ext.act(&s("v[[c,c]]"), &p("v[[p],[q]]")).unwrap(), p("v[[p,p]]"));
        assert_eq!(ext.act(&s("v[[e]]"), &p("v[[p],[q]]")).unwrap(), p("v[[p],[q]]"));
        assert_eq!(ext.act(&s("v[[e],[c]]"), &p("v[[q]]")).unwrap(), p("v[[p],[q]]"));
    }

    #[test]
    fn a3_self_module() {
        let m = FinModule::self_module(&a3());
        assert!(check_action(&ActionMap::Module(m.clone())).unwrap().passed());
        let res = restrict_module_to_act(&m);
        for a in 0..3 {
            for x in 0..3 {
                assert_eq!(res.act(a, &x), a3().mul(a, x));
            }
        }
    }
}
