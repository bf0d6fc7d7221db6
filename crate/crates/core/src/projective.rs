//! Residuals of a module action, dividing elements, the nuclei `γ_u`,
//! cyclicity at the three levels, and cyclic projectivity.

use serde::Serialize;

use crate::aqm::FinAqm;
use crate::equivlogic::{generator_image_map, homs_from_cyclic};
use crate::error::{Error, Result};
use crate::laws::{ActOps, Carrier, ModuleOps, Point, QuantaleOps, Scalar};
use crate::modact::{hom_witness, iso_witness, ActionMap, FinAct, FinModule, Level, PosetAction};
use crate::nucleus::{quotient, structural_witness, Nucleus, Presentation};
use crate::par;
use crate::quantale::FinQuantale;

/// `y /∗ x` together with the scalars it is the join of.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidualResult<E = usize> {
    pub value: Option<E>,
    /// Every scanned `b` with `b ∗ x ≤ y`.
    pub certificate: Vec<E>,
    /// Only a bounded scalar fragment was scanned.
    pub fragment_limited: bool,
}

/// Exact residual over a finite AQM. The join of the certificate is
/// checked to lie in it, and the adjunction `a ∗ x ≤ y ⟺ a ≤ y /∗ x` is
/// scanned for every scalar.
pub fn residual(m: &FinModule, y: usize, x: usize) -> Result<ResidualResult> {
    let a = m.aqm();
    let q = m.quantale();
    let certificate: Vec<usize> = (0..a.len()).filter(|&b| q.leq(m.get(b, x), y)).collect();
    let Some(value) = a.quant().big_join(certificate.iter().copied()) else {
        return Err(Error::NoResidual {
            y: q.name(y).into(),
            x: q.name(x).into(),
        });
    };
    if let Some(b) = (0..a.len()).find(|&b| q.leq(m.get(b, x), y) != a.quant().leq(b, value)) {
        return Err(Error::law(
            "residual adjunction",
            format!("{} /* {} = {}, scalar {}", q.name(y), q.name(x), a.name(value), a.name(b)),
        ));
    }
    Ok(ResidualResult {
        value: Some(value),
        certificate,
        fragment_limited: false,
    })
}

/// Best residual within a sample of scalars: the join of the sampled
/// certificate when it still acts below `y`.
pub fn residual_in_fragment<M>(
    m: &M,
    xs: &[Scalar<M>],
    y: &Point<M>,
    x: &Point<M>,
) -> Result<ResidualResult<Scalar<M>>>
where
    M: ModuleOps,
{
    let (a, q) = (m.scalars(), m.space());
    let mut certificate = Vec::new();
    for b in xs {
        if q.leq(&m.act(b, x)?, y) {
            certificate.push(b.clone());
        }
    }
    let join = certificate.iter().cloned().reduce(|s, t| a.join(&s, &t));
    let value = match join {
        Some(j) if q.leq(&m.act(&j, x)?, y) => Some(j),
        _ => None,
    };
    Ok(ResidualResult {
        value,
        certificate,
        fragment_limited: true,
    })
}

/// First sampled point `x` for which no sampled scalar acts on `u` below
/// `x`; `None` means `u` is dividing at fragment scope.
pub fn fragment_dividing_witness<M: ModuleOps>(
    m: &M,
    xs: &[Scalar<M>],
    ps: &[Point<M>],
    u: &Point<M>,
) -> Result<Option<String>> {
    for x in ps {
        if residual_in_fragment(m, xs, x, u)?.certificate.is_empty() {
            return Ok(Some(m.space().show(x)));
        }
    }
    Ok(None)
}

/// First `x` with no residual `x /∗ u`.
pub fn dividing_witness(m: &FinModule, u: usize) -> Option<usize> {
    let q = m.quantale();
    (0..m.len()).find(|&x| (0..m.aqm().len()).all(|b| !q.leq(m.get(b, u), x)))
}

pub fn is_dividing(m: &FinModule, u: usize) -> bool {
    dividing_witness(m, u).is_none()
}

/// `x /∗ u` for a dividing `u`.
fn div(m: &FinModule, x: usize, u: usize) -> usize {
    let q = m.quantale();
    m.aqm()
        .quant()
        .big_join((0..m.aqm().len()).filter(|&b| q.leq(m.get(b, u), x)))
        .expect("u is dividing")
}

/// `γ_u(a) = (a ∗ u) /∗ u` and the isomorphism `A∗u ≅ A_{γ_u}`.
#[derive(Debug, Clone)]
pub struct GammaU {
    pub u: usize,
    pub nucleus: Nucleus,
    /// First failed nucleus or structurality law.
    pub nucleus_failure: Option<String>,
    /// First failure of `x ↦ x /∗ u` and `a ↦ a ∗ u` as mutually inverse
    /// module homomorphisms between `A∗u` and `A_{γ_u}`.
    pub iso_failure: Option<String>,
}

impl GammaU {
    pub fn passed(&self) -> bool {
        self.nucleus_failure.is_none() && self.iso_failure.is_none()
    }
}

pub fn gamma_u(m: &FinModule, u: usize) -> Result<GammaU> {
    if let Some(x) = dividing_witness(m, u) {
        return Err(Error::NotDividing {
            u: m.name(u).into(),
            x: m.name(x).into(),
        });
    }
    let a = m.aqm();
    let table = (0..a.len()).map(|b| div(m, m.get(b, u), u)).collect();
    let nucleus = Nucleus::new(a.quant(), table)?;
    let self_mod = FinModule::self_module(a);
    let all: Vec<usize> = (0..a.len()).collect();
    let nucleus_failure = nucleus
        .validate()
        .first_failure()
        .map(|c| format!("{}: {}", c.law, c.witness.clone().unwrap_or_default()))
        .or_else(|| structural_witness(&Presentation::Nucleus(nucleus.clone()), &self_mod, &all));
    let iso_failure = if nucleus_failure.is_some() {
        Some("γ_u is not a structural nucleus".to_string())
    } else {
        gamma_iso_failure(m, u, &self_mod, &nucleus)?
    };
    Ok(GammaU {
        u,
        nucleus,
        nucleus_failure,
        iso_failure,
    })
}

fn gamma_iso_failure(m: &FinModule, u: usize, self_mod: &FinModule, g: &Nucleus) -> Result<Option<String>> {
    let (orbit_mod, orbit) = m.cyclic_submodule(u)?;
    let qm = quotient(self_mod, g)?;
    // to: A∗u → A_γ, x ↦ x /∗ u; back: A_γ → A∗u, a ↦ a ∗ u.
    let to: Vec<usize> = orbit.iter().map(|&x| qm.project(div(m, x, u))).collect();
    let back: Vec<usize> = qm
        .carrier
        .iter()
        .map(|&b| orbit.binary_search(&m.get(b, u)).expect("a ∗ u lies in the orbit"))
        .collect();
    if let Some(w) = hom_witness(&orbit_mod, &qm.module, &to) {
        return Ok(Some(format!("x ↦ x /* u: {w}")));
    }
    if let Some(w) = hom_witness(&qm.module, &orbit_mod, &back) {
        return Ok(Some(format!("a ↦ a * u: {w}")));
    }
    if let Some(i) = (0..to.len()).find(|&i| back[to[i]] != i) {
        return Ok(Some(format!("({} /* u) * u != {}", m.name(orbit[i]), m.name(orbit[i]))));
    }
    if let Some(i) = (0..back.len()).find(|&i| to[back[i]] != i) {
        let a = qm.carrier[i];
        return Ok(Some(format!("({} * u) /* u != {}", m.aqm().name(a), m.aqm().name(a))));
    }
    Ok(None)
}

/// Cyclicity of an action by a single element.
#[derive(Debug, Clone, Serialize)]
pub struct CyclicReport {
    pub level: Level,
    pub generator: String,
    pub cyclic: bool,
    /// An element outside what `u` generates.
    pub witness: Option<String>,
    /// At module level with `u` dividing: whether `(x /∗ u) ∗ u = x` for
    /// every `x`, which must agree with `cyclic`.
    pub residual_characterization: Option<bool>,
}

impl CyclicReport {
    pub fn consistent(&self) -> bool {
        self.residual_characterization.is_none_or(|r| r == self.cyclic)
    }
}

fn missing(names: impl Fn(usize) -> String, n: usize, reached: &[bool]) -> Option<String> {
    (0..n).find(|&x| !reached[x]).map(names)
}

/// `A ∗ u = Q`.
pub fn cyclic_module(m: &FinModule, u: usize) -> CyclicReport {
    let mut reached = vec![false; m.len()];
    for x in m.orbit(u) {
        reached[x] = true;
    }
    let witness = missing(|x| m.name(x).to_string(), m.len(), &reached);
    let residual_characterization =
        is_dividing(m, u).then(|| (0..m.len()).all(|x| m.get(div(m, x, u), u) == x));
    CyclicReport {
        level: Level::ModuleAction,
        generator: m.name(u).to_string(),
        cyclic: witness.is_none(),
        witness,
        residual_characterization,
    }
}

/// Closure of `s` under binary joins, sums and zero.
pub fn quantale_closure(q: &FinQuantale, s: &[usize]) -> Vec<bool> {
    let mut reached = vec![false; q.len()];
    reached[q.zero()] = true;
    for &x in s {
        reached[x] = true;
    }
    loop {
        let cur: Vec<usize> = (0..q.len()).filter(|&x| reached[x]).collect();
        let mut grew = false;
        for &x in &cur {
            for &y in &cur {
                for z in [q.join(x, y), q.plus(x, y)] {
                    grew |= !std::mem::replace(&mut reached[z], true);
                }
            }
        }
        if !grew {
            return reached;
        }
    }
}

/// The quantale generated by `M ∗ u` is the whole carrier.
pub fn cyclic_act(a: &FinAct, u: usize) -> CyclicReport {
    let q = ActOps::space(a);
    let orbit: Vec<usize> = (0..a.monoid().len()).map(|m| a.get(m, u)).collect();
    let reached = quantale_closure(q, &orbit);
    let witness = missing(|x| q.name(x).to_string(), q.len(), &reached);
    CyclicReport {
        level: Level::ActAction,
        generator: q.name(u).to_string(),
        cyclic: witness.is_none(),
        witness,
        residual_characterization: None,
    }
}

/// `M ∗ u` is the whole poset.
pub fn cyclic_poset(pa: &PosetAction, u: usize) -> CyclicReport {
    let p = pa.poset();
    let mut reached = vec![false; p.len()];
    for m in 0..pa.monoid().len() {
        reached[pa.get(m, u)] = true;
    }
    let witness = missing(|x| p.name(x).to_string(), p.len(), &reached);
    CyclicReport {
        level: Level::PosetAction,
        generator: p.name(u).to_string(),
        cyclic: witness.is_none(),
        witness,
        residual_characterization: None,
    }
}

pub fn cyclic_check(am: &ActionMap, u: usize) -> CyclicReport {
    match am {
        ActionMap::Poset(p) => cyclic_poset(p, u),
        ActionMap::Act(a) => cyclic_act(a, u),
        ActionMap::Module(m) => cyclic_module(m, u),
    }
}

/// Elements `v` for which `m` is `v`-cyclic (`v` dividing and
/// `(x /∗ v) ∗ v = x` for all `x`), ascending.
pub fn cyclic_generators(m: &FinModule) -> Vec<usize> {
    (0..m.len())
        .filter(|&v| cyclic_module(m, v).residual_characterization == Some(true))
        .collect()
}

/// A witness pair for one of the conditions (ii)–(v).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Dividing (idempotent where required) scalar.
    pub u: String,
    /// Cyclic generator of the module; absent for condition (ii).
    pub v: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProjectiveReport {
    /// Dividing idempotents of the scalar AQM, ascending.
    pub dividing_idempotents: Vec<String>,
    /// Cyclic generators of the module, ascending.
    pub generators: Vec<String>,
    /// First witness found for each of (ii), (iii), (iv), (v).
    pub conditions: [Option<Witness>; 4],
    /// A single `(u, v)` witnessing all four conditions at once.
    pub shared: Option<Witness>,
    /// Result of the exhaustive lifting test, when run.
    pub lifting: Option<LiftingReport>,
}

impl ProjectiveReport {
    pub fn holds(&self, i: usize) -> bool {
        self.conditions[i].is_some()
    }

    /// (ii)–(v) agree, and when any holds a shared witness exists.
    pub fn consistent(&self) -> bool {
        let all = self.conditions.iter().all(Option::is_some);
        let none = self.conditions.iter().all(Option::is_none);
        (all && self.shared.is_some()) || none
    }

    pub fn conditions_hold(&self) -> bool {
        self.conditions.iter().all(Option::is_some)
    }

    /// The report itself, or `SearchExhausted` when no witness for
    /// (ii)–(v) exists among the scalars.
    pub fn require(self) -> Result<Self> {
        if self.conditions_hold() {
            Ok(self)
        } else {
            Err(Error::SearchExhausted(format!(
                "no dividing idempotent among {} candidates witnesses (ii)-(v)",
                self.dividing_idempotents.len()
            )))
        }
    }

    /// Condition (i), where the lifting test ran, agrees with (ii)–(v).
    pub fn lifting_agrees(&self) -> Option<bool> {
        self.lifting.as_ref().map(|l| l.passed() == self.conditions_hold())
    }
}

fn dividing_in_self(a: &FinAqm, u: usize) -> bool {
    let q = a.quant();
    (0..a.len()).all(|y| (0..a.len()).any(|b| q.leq(a.mul(b, u), y)))
}

/// `γ_v` on the scalars for a dividing `v` in `m`.
fn gamma_table(m: &FinModule, v: usize) -> Vec<usize> {
    (0..m.aqm().len()).map(|b| div(m, m.get(b, v), v)).collect()
}

/// Conditions (ii)–(v) for a fixed `(u, v)` (`v` ignored by (ii)).
fn condition_holds(m: &FinModule, ctx: &Ctx, i: usize, u: usize, v: usize) -> bool {
    let a = m.aqm();
    let n = a.len();
    match i {
        0 => ctx.idempotent(u) && ctx.iso_to_orbit(m, u),
        1 => ctx.idempotent(u) && gamma_table(m, v) == ctx.gamma_self(u),
        2 => {
            let g = gamma_table(m, v);
            g[u] == g[a.one()] && (0..n).all(|b| a.mul(g[b], u) == a.mul(b, u))
        }
        _ => m.get(u, v) == v && (0..n).all(|b| a.mul(div(m, m.get(b, v), v), u) == a.mul(b, u)),
    }
}

struct Ctx {
    dividing: Vec<bool>,
    /// `γ_u` of the self-module, per dividing scalar.
    gammas: Vec<Option<Vec<usize>>>,
    idempotent: Vec<bool>,
    /// Orbit submodules `A·u` for dividing idempotents.
    orbits: Vec<Option<FinModule>>,
}

impl Ctx {
    fn new(a: &FinAqm) -> Result<Self> {
        let n = a.len();
        let self_mod = FinModule::self_module(a);
        let dividing: Vec<bool> = (0..n).map(|u| dividing_in_self(a, u)).collect();
        let idempotent: Vec<bool> = (0..n).map(|u| a.mul(u, u) == u).collect();
        let gammas = (0..n).map(|u| dividing[u].then(|| gamma_table(&self_mod, u))).collect();
        let orbits = (0..n)
            .map(|u| {
                if dividing[u] && idempotent[u] {
                    self_mod.cyclic_submodule(u).map(|(s, _)| Some(s))
                } else {
                    Ok(None)
                }
            })
            .collect::<Result<_>>()?;
        Ok(Ctx {
            dividing,
            gammas,
            idempotent,
            orbits,
        })
    }

    fn idempotent(&self, u: usize) -> bool {
        self.idempotent[u]
    }

    fn gamma_self(&self, u: usize) -> Vec<usize> {
        self.gammas[u].clone().expect("u is dividing")
    }

    fn iso_to_orbit(&self, m: &FinModule, u: usize) -> bool {
        let Some(orbit) = &self.orbits[u] else {
            return false;
        };
        if orbit.len() != m.len() {
            return false;
        }
        // A·u is cyclic on u, so an isomorphism is fixed by the image of u.
        let Ok(gen) = orbit.quantale().index(m.aqm().name(u)) else {
            return false;
        };
        (0..m.len()).any(|w| {
            generator_image_map(orbit, gen, m, w)
                .ok()
                .is_some_and(|f| iso_witness(orbit, m, &f).is_none())
        })
    }
}

/// Evaluates (ii)–(v) independently, searching scalars `u` ascending and
/// generators `v` ascending, then looks for one `(u, v)` that serves all.
pub fn cyclic_projective_check(m: &FinModule) -> Result<ProjectiveReport> {
    let a = m.aqm();
    let ctx = Ctx::new(a)?;
    let us: Vec<usize> = (0..a.len()).filter(|&u| ctx.dividing[u]).collect();
    let vs = cyclic_generators(m);
    let wit = |u: usize, v: Option<usize>| Witness {
        u: a.name(u).to_string(),
        v: v.map(|v| m.name(v).to_string()),
    };
    let conditions = std::array::from_fn(|i| {
        if i == 0 {
            us.iter().find(|&&u| condition_holds(m, &ctx, 0, u, 0)).map(|&u| wit(u, None))
        } else {
            us.iter()
                .flat_map(|&u| vs.iter().map(move |&v| (u, v)))
                .find(|&(u, v)| condition_holds(m, &ctx, i, u, v))
                .map(|(u, v)| wit(u, Some(v)))
        }
    });
    let shared = us
        .iter()
        .flat_map(|&u| vs.iter().map(move |&v| (u, v)))
        .find(|&(u, v)| (0..4).all(|i| condition_holds(m, &ctx, i, u, v)))
        .map(|(u, v)| wit(u, Some(v)));
    Ok(ProjectiveReport {
        dividing_idempotents: us
            .iter()
            .filter(|&&u| ctx.idempotent[u])
            .map(|&u| a.name(u).to_string())
            .collect(),
        generators: vs.iter().map(|&v| m.name(v).to_string()).collect(),
        conditions,
        shared,
        lifting: None,
    })
}

/// Largest module carrier enumerated for the lifting test.
pub const MODULE_ENUM_LIMIT: usize = 4;

/// Every module homomorphism `m → n`, in lexicographic order of tables.
pub fn enumerate_homs(m: &FinModule, n: &FinModule) -> Vec<Vec<usize>> {
    let (k, t) = (m.len(), n.len());
    let total = t.checked_pow(k as u32).unwrap_or(usize::MAX);
    par::filter_map_range(total, |i| {
        let mut f = vec![0; k];
        par::decode(i, t, &mut f);
        hom_witness(m, n, &f).is_none().then_some(f)
    })
}

/// Every module over `a` whose carrier is one of `spaces`.
pub fn enumerate_modules(a: &FinAqm, spaces: &[FinQuantale]) -> Result<Vec<FinModule>> {
    let mut out = Vec::new();
    for q in spaces {
        let n = q.len();
        if n > MODULE_ENUM_LIMIT {
            return Err(Error::TooLarge {
                what: "module carrier",
                size: n,
                limit: MODULE_ENUM_LIMIT,
            });
        }
        // Rows of 0 and 1 are forced; the rest are searched.
        let free: Vec<usize> = (0..a.len()).filter(|&b| b != a.one() && b != a.quant().zero()).collect();
        let cells = free.len() * n;
        let total = n.checked_pow(cells as u32).filter(|&t| t <= 1 << 24).ok_or(Error::TooLarge {
            what: "action tables",
            size: cells,
            limit: 24,
        })?;
        let base: Vec<usize> = (0..a.len() * n)
            .map(|i| if i / n == a.one() { i % n } else { q.zero() })
            .collect();
        let found = par::filter_map_range(total, |i| {
            let mut cell = vec![0; cells];
            par::decode(i, n, &mut cell);
            let mut table = base.clone();
            for (j, &b) in free.iter().enumerate() {
                table[b * n..(b + 1) * n].copy_from_slice(&cell[j * n..(j + 1) * n]);
            }
            let m = FinModule::new(a.clone(), q.clone(), table).ok()?;
            m.check().ok()?.passed().then_some(m)
        });
        out.extend(found);
    }
    Ok(out)
}

/// Modules with every surjection between them, shared by lifting tests.
#[derive(Debug, Clone)]
pub struct LiftingFamily {
    pub modules: Vec<FinModule>,
    /// `(q, r, g)` for every surjective homomorphism `g: Q ↠ R`.
    pub surjections: Vec<(usize, usize, Vec<usize>)>,
}

impl LiftingFamily {
    pub fn new(modules: Vec<FinModule>) -> Self {
        let k = modules.len();
        let surjections = par::map_range(k * k, |i| {
            let (q, r) = (&modules[i / k], &modules[i % k]);
            enumerate_homs(q, r)
                .into_iter()
                .filter(|g| {
                    let mut hit = vec![false; r.len()];
                    g.iter().for_each(|&y| hit[y] = true);
                    hit.into_iter().all(|b| b)
                })
                .map(|g| (i / k, i % k, g))
                .collect::<Vec<_>>()
        })
        .into_iter()
        .flatten()
        .collect();
        LiftingFamily { modules, surjections }
    }

    /// Every module on the given carriers over `a`.
    pub fn exhaustive(a: &FinAqm, spaces: &[FinQuantale]) -> Result<Self> {
        Ok(Self::new(enumerate_modules(a, spaces)?))
    }
}

/// One `(g: Q ↠ R, h: P → R)` instance of the lifting property.
#[derive(Debug, Clone, Serialize)]
pub struct LiftCase {
    pub q: usize,
    pub r: usize,
    pub g: Vec<usize>,
    pub h: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LiftingReport {
    pub modules: usize,
    pub surjections: usize,
    /// `(g, h)` pairs tested.
    pub cases: usize,
    /// The first case without a lift.
    pub no_lift: Option<LiftCase>,
}

impl LiftingReport {
    pub fn passed(&self) -> bool {
        self.no_lift.is_none()
    }

    pub fn into_result(self) -> Result<Self> {
        match &self.no_lift {
            Some(c) => Err(Error::NoLift(format!("g: Q#{} -> R#{} = {:?}, h = {:?}", c.q, c.r, c.g, c.h))),
            None => Ok(self),
        }
    }
}

/// Every homomorphism out of `p`; through generator images when `p` is
/// cyclic.
pub fn homs_out(p: &FinModule, r: &FinModule) -> Vec<Vec<usize>> {
    match (0..p.len()).find(|&u| cyclic_module(p, u).cyclic) {
        Some(u) => homs_from_cyclic(p, u, r),
        None => enumerate_homs(p, r),
    }
}

/// Projectivity of `p` against every surjection `g: Q ↠ R` in the family
/// and every homomorphism `h: P → R`: some `h♯: P → Q` has `g ∘ h♯ = h`.
pub fn lifting_check(p: &FinModule, family: &LiftingFamily) -> LiftingReport {
    if p.len() > MODULE_ENUM_LIMIT {
        return LiftingReport {
            modules: family.modules.len(),
            surjections: family.surjections.len(),
            cases: 0,
            no_lift: None,
        };
    }
    let homs: Vec<Vec<Vec<usize>>> = family.modules.iter().map(|r| homs_out(p, r)).collect();
    let mut cases = 0;
    for (q, r, g) in &family.surjections {
        for h in &homs[*r] {
            cases += 1;
            if !homs[*q].iter().any(|l| l.iter().zip(h).all(|(&x, &y)| g[x] == y)) {
                return LiftingReport {
                    modules: family.modules.len(),
                    surjections: family.surjections.len(),
                    cases,
                    no_lift: Some(LiftCase {
                        q: *q,
                        r: *r,
                        g: g.clone(),
                        h: h.clone(),
                    }),
                };
            }
        }
    }
    LiftingReport {
        modules: family.modules.len(),
        surjections: family.surjections.len(),
        cases,
        no_lift: None,
    }
}

/// Renders a lifting failure with element names.
pub fn describe_case(c: &LiftCase, p: &FinModule, family: &LiftingFamily) -> String {
    let (q, r) = (&family.modules[c.q], &family.modules[c.r]);
    let show = |dom: &FinModule, cod: &FinModule, f: &[usize]| {
        let parts: Vec<String> = f
            .iter()
            .enumerate()
            .map(|(x, &y)| format!("{}->{}", dom.name(x), cod.name(y)))
            .collect();
        format!("({})", parts.join(", "))
    };
    format!(
        "g = {} : Q#{} onto R#{}, h = {} has no lift",
        show(q, r, &c.g),
        c.q,
        c.r,
        show(p, r, &c.h)
    )
}

/// The (ii)–(v) check followed by the lifting test against `family`.
pub fn projective_with_lifting(m: &FinModule, family: &LiftingFamily) -> Result<ProjectiveReport> {
    let mut r = cyclic_projective_check(m)?;
    r.lifting = Some(lifting_check(m, family));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{a3_module, a_dot_2, m2_on_d2};

    #[test]
    fn residuals_in_a3() {
        let m = a3_module();
        assert_eq!(residual(&m, 1, 2).unwrap().value, Some(0));
        assert_eq!(residual(&m, 2, 2).unwrap().value, Some(2));
        for y in 0..3 {
            assert_eq!(residual(&m, y, 1).unwrap().value, Some(y));
        }
    }

    #[test]
    fn gamma_of_two() {
        let g = gamma_u(&a3_module(), 2).unwrap();
        assert_eq!(g.nucleus.table(), &[0, 2, 2]);
        assert!(g.passed(), "{:?} {:?}", g.nucleus_failure, g.iso_failure);
        assert_eq!(gamma_u(&a3_module(), 1).unwrap().nucleus.table(), &[0, 1, 2]);
    }

    #[test]
    fn cyclicity() {
        let m = a3_module();
        assert!(cyclic_module(&m, 1).cyclic);
        let r = cyclic_module(&m, 2);
        assert_eq!((r.cyclic, r.witness.as_deref()), (false, Some("1")));
        assert!(r.consistent());
        assert!(cyclic_module(&a_dot_2(), 1).cyclic);
        let pa = m2_on_d2();
        assert!(cyclic_poset(&pa, 1).cyclic);
        assert!(!cyclic_poset(&pa, 0).cyclic);
    }

    #[test]
    fn a_dot_2_is_cyclic_projective() {
        let r = cyclic_projective_check(&a_dot_2()).unwrap();
        let w = Witness {
            u: "2".into(),
            v: Some("2".into()),
        };
        assert_eq!(r.shared, Some(w));
        assert!(r.conditions_hold() && r.consistent());
    }
}
