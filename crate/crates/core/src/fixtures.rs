//! Small named structures used by tests, examples and the CLI.

use crate::aqm::{exp_end, AqmParts, FinAqm};
use crate::modact::{FinModule, PosetAction};
use crate::nucleus::Nucleus;
use crate::order::{FinPoset, Notation, Pomonoid};
use crate::quantale::FinQuantale;

/// Discrete `{p, q}`.
pub fn d2() -> FinPoset {
    FinPoset::discrete(&["p", "q"]).unwrap()
}

/// The chain `a < b`.
pub fn c2() -> FinPoset {
    FinPoset::chain(&["a", "b"]).unwrap()
}

/// `{0, 1, 2}` with truncated addition and max as join.
pub fn n2() -> FinQuantale {
    let p = FinPoset::chain(&["0", "1", "2"]).unwrap();
    FinQuantale::from_fn(p, |x, y| (x + y).min(2), 0).unwrap()
}

/// Discrete `{c, e}` with `c·c = c` and unit `e`; `c` is index 0.
pub fn m2() -> Pomonoid {
    let p = FinPoset::discrete(&["c", "e"]).unwrap();
    Pomonoid::from_fn(p, |x, y| x.min(y), 1, Notation::Multiplicative).unwrap()
}

/// N2 with truncated multiplication, unit 1 and every element distributive.
pub fn a3_parts() -> AqmParts {
    AqmParts::full(n2(), (0..9).map(|i| ((i / 3) * (i % 3)).min(2)).collect(), 1)
}

pub fn a3() -> FinAqm {
    FinAqm::new(a3_parts()).unwrap()
}

/// M2 on D2: `e` fixes everything, `c` sends both points to `p`.
pub fn m2_on_d2() -> PosetAction {
    PosetAction::new(m2(), d2(), vec![0, 0, 0, 1]).unwrap()
}

/// A3 acting on itself.
pub fn a3_module() -> FinModule {
    FinModule::self_module(&a3())
}

/// The cyclic submodule `A·2 = {0, 2}` of A3.
pub fn a_dot_2() -> FinModule {
    a3_module().cyclic_submodule(2).unwrap().0
}

/// A3 whose distributive sort is only the unit.
pub fn a3_unit_dist() -> FinAqm {
    let one = FinPoset::discrete(&["1"]).unwrap();
    let dist = Pomonoid::from_fn(one, |_, _| 0, 0, Notation::Multiplicative).unwrap();
    let p = a3_parts();
    FinAqm::new(AqmParts::with_dist(p.quant, p.mul, p.one, &dist, vec![1])).unwrap()
}

/// `ExpEnd(Q)` acting on `Q` by evaluation.
pub fn exp_end_module(q: &FinQuantale) -> FinModule {
    let ee = exp_end(q).unwrap();
    let n = q.len();
    let table = (0..ee.aqm.len() * n).map(|i| ee.maps[i / n][i % n]).collect();
    FinModule::new(ee.aqm, q.clone(), table).unwrap()
}

/// The four-element Boolean lattice `0 < p, q < 1` with join as sum.
pub fn b2() -> FinQuantale {
    let p = FinPoset::new(&["0", "p", "q", "1"], &[("0", "p"), ("0", "q"), ("0", "1"), ("p", "1"), ("q", "1")]).unwrap();
    let j = p.clone();
    FinQuantale::from_fn(p, |x, y| j.lub(x, y).unwrap(), 0).unwrap()
}

/// A nucleus on B2 that collapses `q` to the top but fixes `p`; the swap
/// endomorphism of B2 breaks its structurality.
pub fn b2_lopsided_nucleus() -> Nucleus {
    Nucleus::from_pairs(&b2(), &[("0", "0"), ("p", "p"), ("q", "1"), ("1", "1")]).unwrap()
}

/// Subsets of M2 under union, with the elementwise product and `ι(a) = {a}`.
/// Elements are named `0`, `c`, `ce`, `e` (in carrier order).
pub fn pm2() -> FinAqm {
    // Bitmask of each carrier element: c = 1, e = 2.
    const MASK: [usize; 4] = [0, 1, 3, 2];
    let idx = |m: usize| MASK.iter().position(|&k| k == m).unwrap();
    let names: Vec<String> = ["0", "c", "ce", "e"].iter().map(|s| s.to_string()).collect();
    let p = FinPoset::from_fn(names, |i, j| MASK[i] & !MASK[j] == 0).unwrap();
    let quant = FinQuantale::from_fn(p, |i, j| idx(MASK[i] | MASK[j]), 0).unwrap();
    let mul = (0..16)
        .map(|k| {
            let (a, b) = (MASK[k / 4], MASK[k % 4]);
            // c·x = x·c = c and e·e = e.
            let c = a != 0 && b != 0 && (a | b) & 1 != 0;
            let e = a & b & 2 != 0;
            idx(c as usize | (e as usize) << 1)
        })
        .collect();
    FinAqm::new(AqmParts::with_dist(quant, mul, idx(2), &m2(), vec![idx(1), idx(2)])).unwrap()
}

/// A two-element `P(M2)`-module `{0, t}` on which `c` acts as zero. It is
/// cyclic but not projective.
pub fn pm2_two() -> FinModule {
    let a = pm2();
    let q = FinQuantale::from_fn(FinPoset::chain(&["0", "t"]).unwrap(), |x, y| x.max(y), 0).unwrap();
    let triples: Vec<(&str, &str, &str)> = ["0", "c", "ce", "e"]
        .iter()
        .flat_map(|&s| {
            let keeps = s.contains('e');
            [(s, "0", "0"), (s, "t", if keeps { "t" } else { "0" })]
        })
        .collect();
    FinModule::from_triples(a, q, &triples).unwrap()
}
