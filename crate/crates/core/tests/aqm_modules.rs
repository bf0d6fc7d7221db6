use proptest::prelude::*;
use squanta_core::aqm::{check_aqm, exp_end, free_aqm, FinAqm};
use squanta_core::downset::{downset_fragment, FgDownset, Fragment};
use squanta_core::fixtures::{a3, a3_module, a_dot_2, b2, d2, exp_end_module, m2, m2_on_d2, n2, pm2, pm2_two};
use squanta_core::laws::{check_aqm_laws, AqmOps};
use squanta_core::modact::{check_action, extend_poset_action_to_dm, round_trips, ActionMap, FinModule, PosetAction};

#[test]
fn free_aqm_laws_on_small_fragment() {
    let f = free_aqm(&m2(), Fragment::new(2, 2)).unwrap();
    let xs = f.scalar_fragment();
    let r = check_aqm_laws(&f, &xs, &[0, 1]).unwrap();
    assert!(r.passed(), "{:?}", r.first_failure());
    assert!(f.unit_embedding_witness().is_none());
}

#[test]
fn m2_act_round_trips() {
    let dm = extend_poset_action_to_dm(&m2_on_d2()).unwrap();
    let ps = downset_fragment(&d2(), &Fragment::new(2, 2));
    let rt = round_trips(&dm, Fragment::new(2, 2), &ps).unwrap();
    assert!(rt.passed(), "{rt:?}");
}

#[test]
fn m2_act_lifts_to_dm() {
    let dm = extend_poset_action_to_dm(&m2_on_d2()).unwrap();
    assert!(dm.eta_witness().is_none());
    assert!(dm.check(&Fragment::new(3, 2)).unwrap().passed());
}

#[test]
fn orbit_of_q() {
    let pa = m2_on_d2();
    let q = d2().index("q").unwrap();
    let mut orbit: Vec<usize> = (0..2).map(|a| pa.get(a, q)).collect();
    orbit.sort();
    assert_eq!(orbit, vec![0, 1]);
}

#[test]
fn non_monotone_action_is_rejected() {
    // `c` swaps p and q on the chain p < q.
    let chain = squanta_core::order::FinPoset::chain(&["p", "q"]).unwrap();
    let bad = PosetAction::new(m2(), chain, vec![1, 0, 0, 1]).unwrap();
    let r = check_action(&ActionMap::Poset(bad)).unwrap();
    assert!(!r.passed());
}

#[test]
fn fixture_modules_are_valid() {
    for m in [a3_module(), a_dot_2(), exp_end_module(&n2()), exp_end_module(&b2()), pm2_two()] {
        let r = m.check().unwrap();
        assert!(r.passed(), "{:?}", r.first_failure());
    }
    for a in [a3(), pm2(), exp_end(&n2()).unwrap().aqm] {
        assert!(check_aqm(&a.parts()).unwrap().passed());
    }
}

#[test]
fn pm2_shape() {
    let a = pm2();
    let names: Vec<&str> = (0..a.len()).map(|x| a.name(x)).collect();
    assert_eq!(names, ["0", "c", "ce", "e"]);
    assert_eq!(a.one(), 3);
    // c·e = c, e·e = e, ce·ce = {c·c, c·e, e·c, e·e} = ce.
    assert_eq!(a.mul(1, 3), 1);
    assert_eq!(a.mul(2, 2), 2);
    assert!(a.is_distributively_generated());
}

#[test]
fn self_module_matches_multiplication() {
    let a = a3();
    let m = FinModule::self_module(&a);
    for x in 0..3 {
        for y in 0..3 {
            assert_eq!(m.get(x, y), (x * y).min(2));
        }
    }
}

fn idx(a: &FinAqm, s: &str) -> usize {
    a.quant().index(s).unwrap()
}

#[test]
fn pm2_idempotents() {
    let a = pm2();
    let ids: Vec<usize> = a.idempotents();
    assert_eq!(ids, vec![idx(&a, "0"), idx(&a, "c"), idx(&a, "ce"), idx(&a, "e")]);
}

proptest! {
    #[test]
    fn free_product_associative(i in 0usize..64, j in 0usize..64, k in 0usize..64) {
        let f = free_aqm(&m2(), Fragment::new(2, 2)).unwrap();
        let xs = f.scalar_fragment();
        let (p, q, r) = (&xs[i % xs.len()], &xs[j % xs.len()], &xs[k % xs.len()]);
        let l = f.mul(&f.mul(p, q).unwrap(), r).unwrap();
        let rr = f.mul(p, &f.mul(q, r).unwrap()).unwrap();
        prop_assert_eq!(l, rr);
    }

    #[test]
    fn unit_is_neutral(i in 0usize..64) {
        let f = free_aqm(&m2(), Fragment::new(2, 2)).unwrap();
        let xs = f.scalar_fragment();
        let p: &FgDownset = &xs[i % xs.len()];
        prop_assert_eq!(&f.mul(&f.one(), p).unwrap(), p);
        prop_assert_eq!(&f.mul(p, &f.one()).unwrap(), p);
    }
}
