//! Operation traits shared by finite carriers and downset fragments, and
//! exhaustive law scans over supplied samples.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::order::{FinPoset, Pomonoid};
use crate::par;

pub trait Carrier: Sync {
    type Elem: Clone + Eq + Hash + fmt::Debug + Send + Sync;
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn show(&self, a: &Self::Elem) -> String;
    /// Size measure checked against fragment limits; 0 on finite carriers.
    fn weight(&self, _a: &Self::Elem) -> usize {
        0
    }
}

/// Binary join, sum and zero of a generalized quantale.
pub trait QuantaleOps: Carrier {
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn plus(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn zero(&self) -> Self::Elem;
}

/// The two sorts of an additive quantale with multiplication.
pub trait AqmOps: QuantaleOps {
    type Dist: Clone + PartialEq + fmt::Debug + Send + Sync;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn one(&self) -> Self::Elem;
    fn iota(&self, d: &Self::Dist) -> Self::Elem;
    fn dist_mul(&self, d: &Self::Dist, e: &Self::Dist) -> Self::Dist;
    fn dist_one(&self) -> Self::Dist;
    fn dist_leq(&self, d: &Self::Dist, e: &Self::Dist) -> bool;
    fn show_dist(&self, d: &Self::Dist) -> String;
}

/// An AQM whose distributive sort is a finite pomonoid addressed by index.
pub trait FiniteDist: AqmOps<Dist = usize> {
    fn dist_pomonoid(&self) -> &Pomonoid;
}

pub type Scalar<M> = <<M as ModuleOps>::Scalars as Carrier>::Elem;
pub type Dist<M> = <<M as ModuleOps>::Scalars as AqmOps>::Dist;
pub type Point<M> = <<M as ModuleOps>::Space as Carrier>::Elem;
pub type ActPoint<A> = <<A as ActOps>::Space as Carrier>::Elem;

/// A module-level action of an AQM on a generalized quantale.
pub trait ModuleOps: Sync {
    type Scalars: AqmOps;
    type Space: QuantaleOps;
    fn scalars(&self) -> &Self::Scalars;
    fn space(&self) -> &Self::Space;
    fn act(&self, a: &Scalar<Self>, x: &Point<Self>) -> Result<Point<Self>>;
}

/// An action of a finite pomonoid, on a poset or on a quantale.
pub trait ActOps: Sync {
    type Space: Carrier;
    fn monoid(&self) -> &Pomonoid;
    fn space(&self) -> &Self::Space;
    fn act(&self, a: usize, x: &ActPoint<Self>) -> ActPoint<Self>;
}

impl Carrier for FinPoset {
    type Elem = usize;
    fn leq(&self, a: &usize, b: &usize) -> bool {
        FinPoset::leq(self, *a, *b)
    }
    fn show(&self, a: &usize) -> String {
        self.name(*a).to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub law: String,
    pub instances: u64,
    pub witness: Option<String>,
}

/// Outcome of a law scan: one entry per law with its instance count and
/// the first violating instance, if any.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub scope: String,
    pub checks: Vec<LawCheck>,
}

fn decode_mixed(mut i: usize, dims: &[usize], out: &mut [usize]) {
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = i % d;
        i /= d;
    }
}

impl LawReport {
    pub fn new(scope: impl Into<String>) -> Self {
        LawReport {
            scope: scope.into(),
            checks: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.witness.is_none())
    }

    pub fn first_failure(&self) -> Option<&LawCheck> {
        self.checks.iter().find(|c| c.witness.is_some())
    }

    pub fn failure(&self, law: &str) -> Option<&str> {
        self.checks
            .iter()
            .find(|c| c.law == law)
            .and_then(|c| c.witness.as_deref())
    }

    pub fn instances(&self) -> u64 {
        self.checks.iter().map(|c| c.instances).sum()
    }

    pub fn extend(&mut self, other: LawReport) {
        self.checks.extend(other.checks);
    }

    /// Turns the first violated law into [`Error::LawViolated`].
    pub fn into_result(self) -> Result<Self> {
        match self.first_failure() {
            Some(c) => Err(Error::law(c.law.clone(), c.witness.clone().unwrap_or_default())),
            None => Ok(self),
        }
    }

    pub fn record(&mut self, law: &str, instances: u64, witness: Option<String>) {
        self.checks.push(LawCheck {
            law: law.to_string(),
            instances,
            witness,
        });
    }

    /// Scans every index tuple of the box `dims` (at most four axes);
    /// `f` returns a witness for a violated instance.
    pub fn scan<F>(&mut self, law: &str, dims: &[usize], f: F) -> Result<()>
    where
        F: Fn(&[usize]) -> Result<Option<String>> + Send + Sync,
    {
        assert!(dims.len() <= 4);
        let total: usize = dims.iter().product();
        let hit = par::try_find_map_first(total, |i| {
            let mut idx = [0usize; 4];
            decode_mixed(i, dims, &mut idx[..dims.len()]);
            f(&idx[..dims.len()])
        })?;
        self.record(law, total as u64, hit);
        Ok(())
    }
}

fn eq_or<T: PartialEq>(l: &T, r: &T, w: impl FnOnce() -> String) -> Option<String> {
    (l != r).then(w)
}

struct ColumnOps<T> {
    ids: Vec<Result<usize>>,
    joins: Vec<T>,
    sums: Vec<T>,
    width: usize,
}

impl<T: Clone + Eq + Hash> ColumnOps<T> {
    fn new<'a, Q>(q: &Q, col: impl Iterator<Item = &'a Result<T>>) -> Self
    where
        Q: QuantaleOps<Elem = T>,
        T: 'a,
    {
        let col: Vec<Result<T>> = col.cloned().collect();
        let (vals, ids) = intern_results(&col);
        let c = vals.len();
        ColumnOps {
            ids,
            joins: (0..c * c).map(|i| q.join(&vals[i / c], &vals[i % c])).collect(),
            sums: (0..c * c).map(|i| q.plus(&vals[i / c], &vals[i % c])).collect(),
            width: c,
        }
    }

    fn join(&self, x: usize, y: usize) -> Result<&T> {
        Ok(&self.joins[self.ids[x].clone()? * self.width + self.ids[y].clone()?])
    }

    fn sum(&self, x: usize, y: usize) -> Result<&T> {
        Ok(&self.sums[self.ids[x].clone()? * self.width + self.ids[y].clone()?])
    }
}

/// Distinct values of `items` in first-occurrence order, and the position
/// of each item among them.
fn intern<T: Clone + Eq + Hash>(items: &[T]) -> (Vec<T>, Vec<usize>) {
    let mut seen: HashMap<&T, usize> = HashMap::new();
    let mut values = Vec::new();
    let ids = items
        .iter()
        .map(|x| {
            *seen.entry(x).or_insert_with(|| {
                values.push(x.clone());
                values.len() - 1
            })
        })
        .collect();
    (values, ids)
}

/// [`intern`] over the successful entries; errors are kept in place.
fn intern_results<T: Clone + Eq + Hash>(items: &[Result<T>]) -> (Vec<T>, Vec<Result<usize>>) {
    let mut seen: HashMap<&T, usize> = HashMap::new();
    let mut values = Vec::new();
    let ids = items
        .iter()
        .map(|x| {
            let x = x.as_ref().map_err(Clone::clone)?;
            Ok(*seen.entry(x).or_insert_with(|| {
                values.push(x.clone());
                values.len() - 1
            }))
        })
        .collect();
    (values, ids)
}

/// `f` on every ordered pair of `xs`, row-major.
fn pair_table<T, R, F>(xs: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T, &T) -> R + Send + Sync,
{
    let n = xs.len();
    par::map_range(n * n, |i| f(&xs[i / n], &xs[i % n]))
}

/// Order, join and sum laws of a generalized quantale over `xs`.
pub fn check_quantale<Q: QuantaleOps>(q: &Q, xs: &[Q::Elem]) -> Result<LawReport> {
    let n = xs.len();
    let s = |a: &Q::Elem| q.show(a);
    let mut r = LawReport::new(format!("{n} elements"));
    let le = pair_table(xs, |a, b| q.leq(a, b));
    let pt = pair_table(xs, |a, b| q.plus(a, b));
    let jt = pair_table(xs, |a, b| q.join(a, b));
    let ix = |a: usize, b: usize| a * n + b;
    r.scan("order antisymmetric", &[n, n], |i| {
        let (a, b) = (i[0], i[1]);
        Ok((le[ix(a, b)] && le[ix(b, a)] && xs[a] != xs[b]).then(|| format!("({}, {})", s(&xs[a]), s(&xs[b]))))
    })?;
    r.scan("order transitive", &[n, n, n], |i| {
        let (a, b, c) = (i[0], i[1], i[2]);
        Ok((le[ix(a, b)] && le[ix(b, c)] && !le[ix(a, c)])
            .then(|| format!("({}, {}, {})", s(&xs[a]), s(&xs[b]), s(&xs[c]))))
    })?;
    r.scan("join least upper bound", &[n, n, n], |i| {
        let (a, b, c) = (i[0], i[1], i[2]);
        let j = &jt[ix(a, b)];
        if !q.leq(&xs[a], j) || !q.leq(&xs[b], j) {
            return Ok(Some(format!("{} v {} = {} is not an upper bound", s(&xs[a]), s(&xs[b]), s(j))));
        }
        Ok((le[ix(a, c)] && le[ix(b, c)] && !q.leq(j, &xs[c]))
            .then(|| format!("{} v {} = {} !<= {}", s(&xs[a]), s(&xs[b]), s(j), s(&xs[c]))))
    })?;
    r.scan("sum associative", &[n, n, n], |i| {
        let (a, b, c) = (i[0], i[1], i[2]);
        let l = q.plus(&pt[ix(a, b)], &xs[c]);
        let rr = q.plus(&xs[a], &pt[ix(b, c)]);
        Ok(eq_or(&l, &rr, || {
            format!("({}, {}, {}): {} vs {}", s(&xs[a]), s(&xs[b]), s(&xs[c]), s(&l), s(&rr))
        }))
    })?;
    let z = q.zero();
    r.scan("sum unit", &[n], |i| {
        let a = &xs[i[0]];
        let (l, rr) = (q.plus(&z, a), q.plus(a, &z));
        Ok((l != *a || rr != *a).then(|| format!("({}): 0+a = {}, a+0 = {}", s(a), s(&l), s(&rr))))
    })?;
    r.scan("sum monotone", &[n, n, n], |i| {
        let (a, b, c) = (i[0], i[1], i[2]);
        if !le[ix(a, b)] {
            return Ok(None);
        }
        Ok((!q.leq(&pt[ix(a, c)], &pt[ix(b, c)]) || !q.leq(&pt[ix(c, a)], &pt[ix(c, b)]))
            .then(|| format!("({}, {}, {})", s(&xs[a]), s(&xs[b]), s(&xs[c]))))
    })?;
    r.scan("sum distributes over join (left)", &[n, n, n], |i| {
        let (a, b, c) = (i[0], i[1], i[2]);
        let l = q.plus(&xs[a], &jt[ix(b, c)]);
        let rr = q.join(&pt[ix(a, b)], &pt[ix(a, c)]);
        Ok(eq_or(&l, &rr, || {
            format!("({}, {}, {}): {} vs {}", s(&xs[a]), s(&xs[b]), s(&xs[c]), s(&l), s(&rr))
        }))
    })?;
    r.scan("sum distributes over join (right)", &[n, n, n], |i| {
        let (a, b, c) = (i[0], i[1], i[2]);
        let l = q.plus(&jt[ix(b, c)], &xs[a]);
        let rr = q.join(&pt[ix(b, a)], &pt[ix(c, a)]);
        Ok(eq_or(&l, &rr, || {
            format!("({}, {}, {}): {} vs {}", s(&xs[a]), s(&xs[b]), s(&xs[c]), s(&l), s(&rr))
        }))
    })?;
    Ok(r)
}

/// Commutativity of the sum and leastness of zero.
pub fn check_cdi<Q: QuantaleOps>(q: &Q, xs: &[Q::Elem]) -> Result<LawReport> {
    let n = xs.len();
    let mut r = LawReport::new(format!("{n} elements"));
    r.scan("sum commutative", &[n, n], |i| {
        let (a, b) = (&xs[i[0]], &xs[i[1]]);
        Ok((q.plus(a, b) != q.plus(b, a)).then(|| format!("({}, {})", q.show(a), q.show(b))))
    })?;
    let z = q.zero();
    r.scan("zero least", &[n], |i| {
        Ok((!q.leq(&z, &xs[i[0]])).then(|| q.show(&xs[i[0]])))
    })?;
    Ok(r)
}

/// The AQM laws: the monoid laws of `·`, right distributivity for all
/// elements, left distributivity for `ι`-images, and `ι` a monotone
/// monoid homomorphism.
pub fn check_aqm_laws<A: AqmOps>(a: &A, xs: &[A::Elem], ds: &[A::Dist]) -> Result<LawReport> {
    let (n, m) = (xs.len(), ds.len());
    let s = |x: &A::Elem| a.show(x);
    let sd = |d: &A::Dist| a.show_dist(d);
    let mut r = LawReport::new(format!("{n} elements, {m} distributive"));
    let ix = |x: usize, y: usize| x * n + y;
    let mt = pair_table(xs, |x, y| a.mul(x, y));
    let pt = pair_table(xs, |x, y| a.plus(x, y));
    let jt = pair_table(xs, |x, y| a.join(x, y));
    let iotas: Vec<A::Elem> = ds.iter().map(|d| a.iota(d)).collect();
    let lt: Vec<Result<A::Elem>> = par::map_range(m * n, |i| a.mul(&iotas[i / n], &xs[i % n]));
    let lmul = |d: usize, y: usize| lt[d * n + y].clone();
    let one = a.one();
    r.scan("unit", &[n], |i| {
        let x = &xs[i[0]];
        let (l, rr) = (a.mul(&one, x)?, a.mul(x, &one)?);
        Ok((l != *x || rr != *x).then(|| format!("({}): 1·a = {}, a·1 = {}", s(x), s(&l), s(&rr))))
    })?;
    let w3 = |x: usize, y: usize, z: usize, l: &A::Elem, rr: &A::Elem| {
        format!("({}, {}, {}): {} vs {}", s(&xs[x]), s(&xs[y]), s(&xs[z]), s(l), s(rr))
    };
    // Left factors repeat heavily, so products are taken once per distinct
    // left value.
    let (mv, mid) = intern_results(&mt);
    let k = mv.len();
    let lt_assoc = par::map_range(k * n, |i| a.mul(&mv[i / n], &xs[i % n]));
    let rt_assoc = par::map_range(n * k, |i| a.mul(&xs[i / k], &mv[i % k]));
    r.scan("associative", &[n, n, n], |i| {
        let (x, y, z) = (i[0], i[1], i[2]);
        let l = lt_assoc[mid[ix(x, y)].clone()? * n + z].clone()?;
        let rr = rt_assoc[x * k + mid[ix(y, z)].clone()?].clone()?;
        Ok(eq_or(&l, &rr, || w3(x, y, z, &l, &rr)))
    })?;
    let (jv, jid) = intern(&jt);
    let jl = par::map_range(jv.len() * n, |i| a.mul(&jv[i / n], &xs[i % n]));
    // Per right factor z: the distinct products x·z, and the joins and sums
    // of every pair of them.
    let cols: Vec<ColumnOps<A::Elem>> = par::map_range(n, |z| ColumnOps::new(a, (0..n).map(|x| &mt[ix(x, z)])));
    r.scan("right join", &[n, n, n], |i| {
        let (x, y, z) = (i[0], i[1], i[2]);
        let l = jl[jid[ix(x, y)] * n + z].clone()?;
        let rr = cols[z].join(x, y)?;
        Ok(eq_or(&l, rr, || w3(x, y, z, &l, rr)))
    })?;
    let (sv, sid) = intern(&pt);
    let sl = par::map_range(sv.len() * n, |i| a.mul(&sv[i / n], &xs[i % n]));
    r.scan("right sum", &[n, n, n], |i| {
        let (x, y, z) = (i[0], i[1], i[2]);
        let l = sl[sid[ix(x, y)] * n + z].clone()?;
        let rr = cols[z].sum(x, y)?;
        Ok(eq_or(&l, rr, || w3(x, y, z, &l, rr)))
    })?;
    let zero = a.zero();
    r.scan("right zero", &[n], |i| {
        let l = a.mul(&zero, &xs[i[0]])?;
        Ok(eq_or(&l, &zero, || format!("({}): 0·a = {}", s(&xs[i[0]]), s(&l))))
    })?;
    let wl = |d: usize, y: usize, z: usize, l: &A::Elem, rr: &A::Elem| {
        format!("({}, {}, {}): {} vs {}", sd(&ds[d]), s(&xs[y]), s(&xs[z]), s(l), s(rr))
    };
    r.scan("left join", &[m, n, n], |i| {
        let (d, y, z) = (i[0], i[1], i[2]);
        let l = a.mul(&iotas[d], &jt[ix(y, z)])?;
        let rr = a.join(&lmul(d, y)?, &lmul(d, z)?);
        Ok(eq_or(&l, &rr, || wl(d, y, z, &l, &rr)))
    })?;
    r.scan("left sum", &[m, n, n], |i| {
        let (d, y, z) = (i[0], i[1], i[2]);
        let l = a.mul(&iotas[d], &pt[ix(y, z)])?;
        let rr = a.plus(&lmul(d, y)?, &lmul(d, z)?);
        Ok(eq_or(&l, &rr, || wl(d, y, z, &l, &rr)))
    })?;
    r.scan("left zero", &[m], |i| {
        let l = a.mul(&iotas[i[0]], &zero)?;
        Ok(eq_or(&l, &zero, || format!("({}): ι(d)·0 = {}", sd(&ds[i[0]]), s(&l))))
    })?;
    r.scan("iota homomorphism", &[m, m], |i| {
        let (d, e) = (&ds[i[0]], &ds[i[1]]);
        let l = a.iota(&a.dist_mul(d, e));
        let rr = a.mul(&iotas[i[0]], &iotas[i[1]])?;
        Ok(eq_or(&l, &rr, || format!("({}, {}): {} vs {}", sd(d), sd(e), s(&l), s(&rr))))
    })?;
    let i1 = a.iota(&a.dist_one());
    r.record("iota unit", 1, (i1 != one).then(|| format!("ι(1) = {}", s(&i1))));
    r.scan("iota monotone", &[m, m], |i| {
        let (d, e) = (&ds[i[0]], &ds[i[1]]);
        Ok((a.dist_leq(d, e) && !a.leq(&iotas[i[0]], &iotas[i[1]])).then(|| format!("({}, {})", sd(d), sd(e))))
    })?;
    Ok(r)
}

/// Module-level action laws over the given scalar, distributive and point
/// samples.
pub fn check_module_laws<M: ModuleOps>(
    m: &M,
    xs: &[Scalar<M>],
    ds: &[Dist<M>],
    ps: &[Point<M>],
) -> Result<LawReport> {
    let (a, q) = (m.scalars(), m.space());
    let (n, k, p) = (xs.len(), ds.len(), ps.len());
    let s = |x: &Scalar<M>| a.show(x);
    let sd = |d: &Dist<M>| a.show_dist(d);
    let sp = |x: &Point<M>| q.show(x);
    let mut r = LawReport::new(format!("{n} scalars, {k} distributive, {p} points"));
    // Every scalar-point action is tabulated once; composite scalars and
    // points are taken once per distinct value.
    let at: Vec<Result<Point<M>>> = par::map_range(n * p, |i| m.act(&xs[i / p], &ps[i % p]));
    let act_at = |x: usize, u: usize| at[x * p + u].clone();
    let sle = pair_table(xs, |x, y| a.leq(x, y));
    r.scan("monotone in scalar", &[n, n, p], |i| {
        let (x, y, u) = (i[0], i[1], i[2]);
        if !sle[x * n + y] {
            return Ok(None);
        }
        let (l, rr) = (act_at(x, u)?, act_at(y, u)?);
        Ok((!q.leq(&l, &rr)).then(|| {
            format!("({}, {}, {}): {} !<= {}", s(&xs[x]), s(&xs[y]), sp(&ps[u]), sp(&l), sp(&rr))
        }))
    })?;
    let ple = pair_table(ps, |u, v| q.leq(u, v));
    r.scan("monotone in point", &[n, p, p], |i| {
        let (x, u, v) = (i[0], i[1], i[2]);
        if !ple[u * p + v] {
            return Ok(None);
        }
        let (l, rr) = (act_at(x, u)?, act_at(x, v)?);
        Ok((!q.leq(&l, &rr)).then(|| {
            format!("({}, {}, {}): {} !<= {}", s(&xs[x]), sp(&ps[u]), sp(&ps[v]), sp(&l), sp(&rr))
        }))
    })?;
    let one = a.one();
    r.scan("unit", &[p], |i| {
        let l = m.act(&one, &ps[i[0]])?;
        Ok(eq_or(&l, &ps[i[0]], || format!("({}): 1*x = {}", sp(&ps[i[0]]), sp(&l))))
    })?;
    let w3 = |x: usize, y: usize, u: usize, l: &Point<M>, rr: &Point<M>| {
        format!("({}, {}, {}): {} vs {}", s(&xs[x]), s(&xs[y]), sp(&ps[u]), sp(l), sp(rr))
    };
    let mt = pair_table(xs, |x, y| a.mul(x, y));
    let (mv, mid) = intern_results(&mt);
    let lt = par::map_range(mv.len() * p, |i| m.act(&mv[i / p], &ps[i % p]));
    let (av, aid) = intern_results(&at);
    let kv = av.len();
    let rt = par::map_range(n * kv, |i| m.act(&xs[i / kv], &av[i % kv]));
    r.scan("compatibility", &[n, n, p], |i| {
        let (x, y, u) = (i[0], i[1], i[2]);
        let l = lt[mid[x * n + y].clone()? * p + u].clone()?;
        let rr = rt[x * kv + aid[y * p + u].clone()?].clone()?;
        Ok(eq_or(&l, &rr, || w3(x, y, u, &l, &rr)))
    })?;
    let cols: Vec<ColumnOps<Point<M>>> = par::map_range(p, |u| ColumnOps::new(q, (0..n).map(|x| &at[x * p + u])));
    let (jv, jid) = intern(&pair_table(xs, |x, y| a.join(x, y)));
    let jl = par::map_range(jv.len() * p, |i| m.act(&jv[i / p], &ps[i % p]));
    r.scan("scalar join", &[n, n, p], |i| {
        let (x, y, u) = (i[0], i[1], i[2]);
        let l = jl[jid[x * n + y] * p + u].clone()?;
        let rr = cols[u].join(x, y)?;
        Ok(eq_or(&l, rr, || w3(x, y, u, &l, rr)))
    })?;
    let (sv, sid) = intern(&pair_table(xs, |x, y| a.plus(x, y)));
    let sl = par::map_range(sv.len() * p, |i| m.act(&sv[i / p], &ps[i % p]));
    r.scan("scalar sum", &[n, n, p], |i| {
        let (x, y, u) = (i[0], i[1], i[2]);
        let l = sl[sid[x * n + y] * p + u].clone()?;
        let rr = cols[u].sum(x, y)?;
        Ok(eq_or(&l, rr, || w3(x, y, u, &l, rr)))
    })?;
    let (za, zq) = (a.zero(), q.zero());
    r.scan("scalar zero", &[p], |i| {
        let l = m.act(&za, &ps[i[0]])?;
        Ok(eq_or(&l, &zq, || format!("({}): 0*x = {}", sp(&ps[i[0]]), sp(&l))))
    })?;
    r.scan("distributive join", &[k, p, p], |i| {
        let (d, u, v) = (a.iota(&ds[i[0]]), &ps[i[1]], &ps[i[2]]);
        let l = m.act(&d, &q.join(u, v))?;
        let rr = q.join(&m.act(&d, u)?, &m.act(&d, v)?);
        Ok(eq_or(&l, &rr, || format!("({}, {}, {}): {} vs {}", sd(&ds[i[0]]), sp(u), sp(v), sp(&l), sp(&rr))))
    })?;
    r.scan("distributive sum", &[k, p, p], |i| {
        let (d, u, v) = (a.iota(&ds[i[0]]), &ps[i[1]], &ps[i[2]]);
        let l = m.act(&d, &q.plus(u, v))?;
        let rr = q.plus(&m.act(&d, u)?, &m.act(&d, v)?);
        Ok(eq_or(&l, &rr, || format!("({}, {}, {}): {} vs {}", sd(&ds[i[0]]), sp(u), sp(v), sp(&l), sp(&rr))))
    })?;
    r.scan("distributive zero", &[k], |i| {
        let l = m.act(&a.iota(&ds[i[0]]), &zq)?;
        Ok(eq_or(&l, &zq, || format!("({}): ι(d)*0 = {}", sd(&ds[i[0]]), sp(&l))))
    })?;
    Ok(r)
}

/// Poset-level action laws: monotone in both arguments, compatible with the
/// monoid product and unital.
pub fn check_poset_action_laws<A: ActOps>(act: &A, ps: &[ActPoint<A>]) -> Result<LawReport> {
    let mon = act.monoid();
    let sp = act.space();
    let (n, p) = (mon.len(), ps.len());
    let show = |x: &ActPoint<A>| sp.show(x);
    let mut r = LawReport::new(format!("{n} scalars, {p} points"));
    r.scan("monotone in scalar", &[n, n, p], |i| {
        let (a, b, x) = (i[0], i[1], &ps[i[2]]);
        if !mon.poset().leq(a, b) {
            return Ok(None);
        }
        let (l, rr) = (act.act(a, x), act.act(b, x));
        Ok((!sp.leq(&l, &rr)).then(|| format!("({}, {}, {})", mon.name(a), mon.name(b), show(x))))
    })?;
    r.scan("monotone in point", &[n, p, p], |i| {
        let (a, x, y) = (i[0], &ps[i[1]], &ps[i[2]]);
        if !sp.leq(x, y) {
            return Ok(None);
        }
        let (l, rr) = (act.act(a, x), act.act(a, y));
        Ok((!sp.leq(&l, &rr)).then(|| format!("({}, {}, {})", mon.name(a), show(x), show(y))))
    })?;
    r.scan("unit", &[p], |i| {
        let x = &ps[i[0]];
        let l = act.act(mon.unit(), x);
        Ok(eq_or(&l, x, || format!("({}): 1*x = {}", show(x), show(&l))))
    })?;
    r.scan("compatibility", &[n, n, p], |i| {
        let (a, b, x) = (i[0], i[1], &ps[i[2]]);
        let l = act.act(mon.op(a, b), x);
        let rr = act.act(a, &act.act(b, x));
        Ok(eq_or(&l, &rr, || {
            format!("({}, {}, {}): {} vs {}", mon.name(a), mon.name(b), show(x), show(&l), show(&rr))
        }))
    })?;
    Ok(r)
}

/// Act-level laws: the poset-level laws plus preservation of binary joins,
/// sums and zero by every scalar.
pub fn check_act_laws<A>(act: &A, ps: &[ActPoint<A>]) -> Result<LawReport>
where
    A: ActOps,
    A::Space: QuantaleOps,
{
    let mut r = check_poset_action_laws(act, ps)?;
    let mon = act.monoid();
    let sp = act.space();
    let (n, p) = (mon.len(), ps.len());
    let show = |x: &ActPoint<A>| sp.show(x);
    r.scan("preserves join", &[n, p, p], |i| {
        let (a, x, y) = (i[0], &ps[i[1]], &ps[i[2]]);
        let l = act.act(a, &sp.join(x, y));
        let rr = sp.join(&act.act(a, x), &act.act(a, y));
        Ok(eq_or(&l, &rr, || format!("({}, {}, {}): {} vs {}", mon.name(a), show(x), show(y), show(&l), show(&rr))))
    })?;
    r.scan("preserves sum", &[n, p, p], |i| {
        let (a, x, y) = (i[0], &ps[i[1]], &ps[i[2]]);
        let l = act.act(a, &sp.plus(x, y));
        let rr = sp.plus(&act.act(a, x), &act.act(a, y));
        Ok(eq_or(&l, &rr, || format!("({}, {}, {}): {} vs {}", mon.name(a), show(x), show(y), show(&l), show(&rr))))
    })?;
    let z = sp.zero();
    r.scan("preserves zero", &[n], |i| {
        let l = act.act(i[0], &z);
        Ok(eq_or(&l, &z, || format!("({}): a*0 = {}", mon.name(i[0]), show(&l))))
    })?;
    Ok(r)
}
