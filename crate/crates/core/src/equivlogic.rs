//! Homomorphisms fixed by a generator image, translation pairs between
//! structural quotients, and the two-line equivalence test.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::modact::{hom_witness, iso_witness, FinModule};
use crate::nucleus::{quotient, Nucleus, QuotientModule};
use crate::par;
use crate::projective::{cyclic_generators, cyclic_module, cyclic_projective_check};

/// `a ∗ u ↦ a ∗ w` as a table, checked only for well-definedness.
pub fn generator_image_map(p: &FinModule, u: usize, q: &FinModule, w: usize) -> Result<Vec<usize>> {
    if let Some(x) = cyclic_module(p, u).witness {
        return Err(Error::NotCyclic(format!("{x} is not in the orbit of {}", p.name(u))));
    }
    let a = p.aqm();
    let mut f: Vec<Option<(usize, usize)>> = vec![None; p.len()];
    for b in 0..a.len() {
        let (x, y) = (p.get(b, u), q.get(b, w));
        match f[x] {
            None => f[x] = Some((b, y)),
            Some((c, z)) if z != y => {
                return Err(Error::IllDefined {
                    a: a.name(c).into(),
                    b: a.name(b).into(),
                })
            }
            Some(_) => {}
        }
    }
    Ok(f.into_iter().map(|e| e.expect("u-cyclic").1).collect())
}

/// [`generator_image_map`] validated as a module homomorphism.
pub fn hom_from_generator_image(p: &FinModule, u: usize, q: &FinModule, w: usize) -> Result<Vec<usize>> {
    let f = generator_image_map(p, u, q, w)?;
    match hom_witness(p, q, &f) {
        Some(msg) => Err(Error::NotAHomomorphism(msg)),
        None => Ok(f),
    }
}

/// Every homomorphism out of the `u`-cyclic module `p`, by image of `u`.
pub fn homs_from_cyclic(p: &FinModule, u: usize, q: &FinModule) -> Vec<Vec<usize>> {
    (0..q.len())
        .filter_map(|w| hom_from_generator_image(p, u, q, w).ok())
        .collect()
}

/// First `x` with `f(γ(x)) != δ(τ(x))`. `f` maps the carrier of `P_γ` to
/// that of `Q_δ`, both by quotient index.
pub fn induced_embedding_witness(pg: &QuotientModule, qd: &QuotientModule, f: &[usize], tau: &[usize]) -> Option<String> {
    (0..pg.parent.len()).find_map(|x| {
        let l = qd.embed(f[pg.project(x)]);
        let r = qd.nucleus.apply(tau[x]);
        (l != r).then(|| {
            let (p, q) = (&pg.parent, &qd.parent);
            format!("x = {}: f(γ(x)) = {}, δ(τ(x)) = {}", p.name(x), q.name(l), q.name(r))
        })
    })
}

pub fn induced_embedding_check(pg: &QuotientModule, qd: &QuotientModule, f: &[usize], tau: &[usize]) -> bool {
    induced_embedding_witness(pg, qd, f, tau).is_none()
}

/// `τ: P → Q` and `ρ: Q → P` with structural nuclei `γ` on `P`, `δ` on `Q`.
#[derive(Debug, Clone)]
pub struct TranslationPair {
    pub p: QuotientModule,
    pub q: QuotientModule,
    pub tau: Vec<usize>,
    pub rho: Vec<usize>,
}

impl TranslationPair {
    /// Validates `τ`, `ρ` as homomorphisms and `γ`, `δ` as structural
    /// nuclei.
    pub fn new(p: &FinModule, q: &FinModule, gamma: &Nucleus, delta: &Nucleus, tau: Vec<usize>, rho: Vec<usize>) -> Result<Self> {
        let pg = quotient(p, gamma)?;
        let qd = quotient(q, delta)?;
        Self::from_quotients(pg, qd, tau, rho)
    }

    pub fn from_quotients(p: QuotientModule, q: QuotientModule, tau: Vec<usize>, rho: Vec<usize>) -> Result<Self> {
        if let Some(w) = hom_witness(&p.parent, &q.parent, &tau) {
            return Err(Error::NotAHomomorphism(format!("τ: {w}")));
        }
        if let Some(w) = hom_witness(&q.parent, &p.parent, &rho) {
            return Err(Error::NotAHomomorphism(format!("ρ: {w}")));
        }
        Ok(TranslationPair { p, q, tau, rho })
    }

    pub fn gamma(&self) -> &Nucleus {
        &self.p.nucleus
    }

    pub fn delta(&self) -> &Nucleus {
        &self.q.nucleus
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Condition {
    pub name: &'static str,
    pub holds: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    /// The four conditions: τ reflects and preserves `⊢_γ`; `E` and `τρE`
    /// are interderivable; ρ reflects and preserves `⊢_δ`; `Γ` and `ρτΓ`
    /// are interderivable.
    pub conditions: [Condition; 4],
    pub line1: bool,
    pub line2: bool,
    /// `f = δ∘τ` on the fixed points of `γ`, as quotient indices.
    pub f: Option<Vec<usize>>,
    /// `g = γ∘ρ` on the fixed points of `δ`.
    pub g: Option<Vec<usize>>,
    /// First failure of `f` and `g` as mutually inverse isomorphisms.
    pub inverse_failure: Option<String>,
}

impl EquivalenceReport {
    pub fn lines_agree(&self) -> bool {
        self.line1 == self.line2
    }

    pub fn passed(&self) -> bool {
        self.line1 && self.line2 && self.f.is_some() && self.inverse_failure.is_none()
    }
}

/// `x ⊢ y` for the nucleus `n`.
fn entails(n: &Nucleus, x: usize, y: usize) -> bool {
    n.space().leq(y, n.apply(x))
}

fn transfer_condition(
    name: &'static str,
    src: &FinModule,
    dst: &FinModule,
    s: &Nucleus,
    t: &Nucleus,
    map: &[usize],
) -> Condition {
    let k = src.len();
    let witness = par::find_map_first(k * k, |i| {
        let (x, y) = (i / k, i % k);
        (entails(s, x, y) != entails(t, map[x], map[y])).then(|| {
            format!(
                "{} |- {} is {}, image {} |- {} is {}",
                src.name(x),
                src.name(y),
                entails(s, x, y),
                dst.name(map[x]),
                dst.name(map[y]),
                entails(t, map[x], map[y])
            )
        })
    });
    Condition {
        name,
        holds: witness.is_none(),
        witness,
    }
}

fn round_trip_condition(name: &'static str, m: &FinModule, n: &Nucleus, there: &[usize], back: &[usize]) -> Condition {
    let witness = (0..m.len()).find_map(|x| {
        let y = back[there[x]];
        (!entails(n, x, y) || !entails(n, y, x)).then(|| format!("{} and {} are not interderivable", m.name(x), m.name(y)))
    });
    Condition {
        name,
        holds: witness.is_none(),
        witness,
    }
}

/// Evaluates both lines over the full carriers and, when they hold,
/// builds `f = δ∘τ`, `g = γ∘ρ` and checks they are inverse isomorphisms
/// `P_γ ≅ Q_δ`.
pub fn equivalence_check(tp: &TranslationPair) -> EquivalenceReport {
    let (p, q) = (&tp.p.parent, &tp.q.parent);
    let (gamma, delta) = (tp.gamma(), tp.delta());
    let conditions = [
        transfer_condition("tau transfers", p, q, gamma, delta, &tp.tau),
        round_trip_condition("tau rho round trip", q, delta, &tp.rho, &tp.tau),
        transfer_condition("rho transfers", q, p, delta, gamma, &tp.rho),
        round_trip_condition("rho tau round trip", p, gamma, &tp.tau, &tp.rho),
    ];
    let line1 = conditions[0].holds && conditions[1].holds;
    let line2 = conditions[2].holds && conditions[3].holds;
    let (mut f, mut g, mut inverse_failure) = (None, None, None);
    if line1 {
        let ff: Vec<usize> = tp.p.carrier.iter().map(|&x| tp.q.project(tp.tau[x])).collect();
        let gg: Vec<usize> = tp.q.carrier.iter().map(|&x| tp.p.project(tp.rho[x])).collect();
        inverse_failure = inverse_iso_witness(&tp.p, &tp.q, &ff, &gg);
        f = Some(ff);
        g = Some(gg);
    }
    EquivalenceReport {
        conditions,
        line1,
        line2,
        f,
        g,
        inverse_failure,
    }
}

/// First failure of `f: P_γ → Q_δ` and `g` as mutually inverse module
/// isomorphisms.
pub fn inverse_iso_witness(pg: &QuotientModule, qd: &QuotientModule, f: &[usize], g: &[usize]) -> Option<String> {
    if let Some(w) = iso_witness(&pg.module, &qd.module, f) {
        return Some(format!("f: {w}"));
    }
    if let Some(w) = iso_witness(&qd.module, &pg.module, g) {
        return Some(format!("g: {w}"));
    }
    if let Some(i) = (0..f.len()).find(|&i| g[f[i]] != i) {
        return Some(format!("g(f({})) != {}", pg.module.name(i), pg.module.name(i)));
    }
    (0..g.len())
        .find(|&i| f[g[i]] != i)
        .map(|i| format!("f(g({})) != {}", qd.module.name(i), qd.module.name(i)))
}

/// A homomorphism `t: P → Q` with `δ ∘ t = target` (`target` valued in
/// the quotient indices of `qd`), searched through the images of a
/// generator of `p`, smallest image first.
fn lift_along(p: &FinModule, u: usize, qd: &QuotientModule, target: &[usize]) -> Option<Vec<usize>> {
    homs_from_cyclic(p, u, &qd.parent)
        .into_iter()
        .find(|t| (0..p.len()).all(|x| qd.project(t[x]) == target[x]))
}

/// Lifts `f ∘ γ` along `δ` and `g ∘ δ` along `γ` through the projectivity
/// of `P` and `Q`.
pub fn recover_translations(pg: &QuotientModule, qd: &QuotientModule, f: &[usize], g: &[usize]) -> Result<TranslationPair> {
    if let Some(w) = inverse_iso_witness(pg, qd, f, g) {
        return Err(Error::NotAHomomorphism(w));
    }
    let (p, q) = (&pg.parent, &qd.parent);
    let mut gens = Vec::new();
    for (m, label) in [(p, "P"), (q, "Q")] {
        let r = cyclic_projective_check(m)?;
        let v = cyclic_generators(m).first().copied();
        match (r.conditions_hold(), v) {
            (true, Some(v)) => gens.push(v),
            _ => return Err(Error::NotProjective(format!("{label} is not certified cyclic projective"))),
        }
    }
    let fg: Vec<usize> = (0..p.len()).map(|x| f[pg.project(x)]).collect();
    let gd: Vec<usize> = (0..q.len()).map(|x| g[qd.project(x)]).collect();
    let tau = lift_along(p, gens[0], qd, &fg).ok_or_else(|| Error::NoLift("f ∘ γ along δ".into()))?;
    let rho = lift_along(q, gens[1], pg, &gd).ok_or_else(|| Error::NoLift("g ∘ δ along γ".into()))?;
    TranslationPair::from_quotients(pg.clone(), qd.clone(), tau, rho)
}

/// Every `(τ, ρ)` between every ordered pair of `modules`, with every pair
/// of structural nuclei on them.
pub fn enumerate_candidates(modules: &[FinModule]) -> Result<Vec<TranslationPair>> {
    let mut quotients = Vec::new();
    for m in modules {
        let qs: Vec<QuotientModule> = crate::nucleus::enumerate_nuclei(m.quantale())
            .iter()
            .filter_map(|g| quotient(m, g).ok())
            .collect();
        quotients.push(qs);
    }
    let mut out = Vec::new();
    for (i, p) in modules.iter().enumerate() {
        for (j, q) in modules.iter().enumerate() {
            let taus = crate::projective::enumerate_homs(p, q);
            let rhos = crate::projective::enumerate_homs(q, p);
            for pg in &quotients[i] {
                for qd in &quotients[j] {
                    for tau in &taus {
                        for rho in &rhos {
                            out.push(TranslationPair::from_quotients(pg.clone(), qd.clone(), tau.clone(), rho.clone())?);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{a3_module, a_dot_2};

    #[test]
    fn generator_images() {
        let a3 = a3_module();
        assert_eq!(hom_from_generator_image(&a3, 1, &a3, 2).unwrap(), vec![0, 2, 2]);
        assert_eq!(hom_from_generator_image(&a3, 1, &a3, 1).unwrap(), vec![0, 1, 2]);
        let e = generator_image_map(&a_dot_2(), 1, &a3, 1).unwrap_err();
        assert_eq!(
            e,
            Error::IllDefined {
                a: "1".into(),
                b: "2".into()
            }
        );
    }

    #[test]
    fn a3_translation_pair() {
        let a3 = a3_module();
        let g = Nucleus::new(a3.quantale(), vec![0, 2, 2]).unwrap();
        let tp = TranslationPair::new(&a3, &a3, &g, &g, vec![0, 2, 2], vec![0, 2, 2]).unwrap();
        let r = equivalence_check(&tp);
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.f.as_deref(), Some(&[0, 1][..]));
        let zero = TranslationPair::new(&a3, &a3, &g, &g, vec![0, 2, 2], vec![0, 0, 0]).unwrap();
        let r = equivalence_check(&zero);
        assert!(!r.line1 && !r.line2 && r.conditions[1].witness.is_some());
    }
}
