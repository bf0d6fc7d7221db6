use squanta_core::aqm::{AqmParts, FinAqm};
use squanta_core::error::Error;
use squanta_core::order::{FinPoset, Notation, Pomonoid};
use squanta_core::fixtures::{a3, a3_module, a3_unit_dist, b2, b2_lopsided_nucleus, exp_end_module, n2, pm2};
use squanta_core::modact::FinModule;
use squanta_core::nucleus::{
    congruence_quotient, convert, correspond, enumerate_congruences, enumerate_consequences, enumerate_nuclei, quotient,
    quotient_iso_witness, round_trip_witness, structural_check, Kind, Nucleus, Presentation, QuantCongruence, Scope,
};
use squanta_core::quantale::FinQuantale;
use squanta_core::search::{enumerate_upto, Class};

/// Nuclei by brute force over every self-map, checked against the four
/// defining laws directly.
fn brute_nuclei(q: &FinQuantale) -> Vec<Vec<usize>> {
    let n = q.len();
    let mut out = Vec::new();
    for i in 0..n.pow(n as u32) {
        let mut g = vec![0; n];
        let mut k = i;
        for slot in g.iter_mut().rev() {
            *slot = k % n;
            k /= n;
        }
        let ok = (0..n).all(|x| {
            q.leq(x, g[x])
                && g[g[x]] == g[x]
                && (0..n).all(|y| (!q.leq(x, y) || q.leq(g[x], g[y])) && q.leq(q.plus(g[x], g[y]), g[q.plus(x, y)]))
        });
        if ok {
            out.push(g);
        }
    }
    out
}

#[test]
fn nuclei_match_brute_force() {
    for q in enumerate_upto(4, Class::All).unwrap() {
        let ours: Vec<Vec<usize>> = enumerate_nuclei(&q).into_iter().map(|g| g.table().to_vec()).collect();
        assert_eq!(ours, brute_nuclei(&q), "{q:?}");
    }
}

#[test]
fn n2_counts() {
    let q = n2();
    assert_eq!(enumerate_nuclei(&q).len(), 3);
    assert_eq!(enumerate_consequences(&q).unwrap().len(), 3);
    assert_eq!(enumerate_congruences(&q).len(), 3);
    let c = correspond(&q).unwrap();
    assert!(c.passed(), "{c:?}");
}

#[test]
fn every_conversion_round_trips() {
    for q in [n2(), b2()] {
        for g in enumerate_nuclei(&q) {
            let p = Presentation::Nucleus(g);
            assert!(round_trip_witness(&p).is_none());
            for k in Kind::ALL {
                assert!(round_trip_witness(&convert(&p, k)).is_none());
            }
        }
    }
}

#[test]
fn congruence_blocks_of_gamma() {
    let q = n2();
    let g = Nucleus::new(&q, vec![0, 2, 2]).unwrap();
    let Presentation::Congruence(t) = convert(&Presentation::Nucleus(g), Kind::Congruence) else {
        unreachable!()
    };
    assert_eq!(t.block_names(), vec![vec!["0".to_string()], vec!["1".to_string(), "2".to_string()]]);
}

fn fixture_modules() -> Vec<FinModule> {
    vec![a3_module(), exp_end_module(&n2()), exp_end_module(&b2())]
}

#[test]
fn structurality_scopes_and_transfer() {
    for m in fixture_modules() {
        let q = m.quantale().clone();
        let mut ps: Vec<Presentation> = enumerate_nuclei(&q).into_iter().map(Presentation::Nucleus).collect();
        ps.extend(enumerate_consequences(&q).unwrap().into_iter().map(Presentation::Consequence));
        ps.extend(enumerate_congruences(&q).into_iter().map(Presentation::Congruence));
        for p in &ps {
            let r = structural_check(p, &m, Scope::Generators).unwrap();
            assert!(r.scopes_agree() && r.transfer_holds(), "{}: {r:?}", p.describe());
        }
    }
}

#[test]
fn lopsided_nucleus_is_not_structural() {
    let m = exp_end_module(&b2());
    let g = b2_lopsided_nucleus();
    assert!(g.validate().passed());
    let r = structural_check(&Presentation::Nucleus(g.clone()), &m, Scope::All).unwrap();
    assert!(!r.structural && r.witness.is_some());
    assert!(matches!(quotient(&m, &g), Err(Error::NotStructural(_))));
}

#[test]
fn generator_scope_needs_generation() {
    // A3 with only the unit distributive is still generated (1 + 1 = 2).
    let m = FinModule::new(a3_unit_dist(), n2(), a3_module().table().to_vec()).unwrap();
    let g = Presentation::Nucleus(Nucleus::identity(&n2()));
    assert!(structural_check(&g, &m, Scope::Generators).unwrap().structural);
    // P(M2) with only e distributive is not: e ∪ e = e never reaches c.
    let p = pm2().parts();
    let one = FinPoset::discrete(&["e"]).unwrap();
    let dist = Pomonoid::from_fn(one, |_, _| 0, 0, Notation::Multiplicative).unwrap();
    let a = FinAqm::new(AqmParts::with_dist(p.quant, p.mul, p.one, &dist, vec![3])).unwrap();
    let m = FinModule::self_module(&a);
    let g = Presentation::Nucleus(Nucleus::identity(m.quantale()));
    assert!(matches!(structural_check(&g, &m, Scope::Generators), Err(Error::NotDistributivelyGenerated(_))));
    assert!(structural_check(&g, &m, Scope::All).unwrap().structural);
}

#[test]
fn quotients_agree_with_congruence_quotients() {
    for m in fixture_modules() {
        for g in enumerate_nuclei(m.quantale()) {
            let Ok(qm) = quotient(&m, &g) else { continue };
            assert!(qm.check().unwrap().passed());
            assert!(quotient_iso_witness(&qm).unwrap().is_none());
        }
    }
}

#[test]
fn a3_gamma_quotient() {
    let m = a3_module();
    let g = Nucleus::new(m.quantale(), vec![0, 2, 2]).unwrap();
    let qm = quotient(&m, &g).unwrap();
    assert_eq!(qm.carrier, vec![0, 2]);
    // 1 ∗_γ 2 = γ(2) = 2 and 2 +_γ 2 = γ(2) = 2.
    assert_eq!(qm.module.get(1, 1), 1);
    assert_eq!(qm.module.quantale().plus(1, 1), 1);
    let t = QuantCongruence::from_blocks(m.quantale(), &[vec!["0"], vec!["1", "2"]]).unwrap();
    let (cq, proj) = congruence_quotient(&m, &t).unwrap();
    assert_eq!(cq.name(proj[1]), "[2]");
    let _ = a3();
}
