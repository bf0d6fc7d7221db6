use proptest::prelude::*;
use squanta_core::fixtures::{a3, a3_module, a_dot_2, exp_end_module, m2_on_d2, n2, pm2, pm2_two};
use squanta_core::modact::{iso_witness, FinModule};
use squanta_core::nucleus::{enumerate_nuclei, quotient};
use squanta_core::projective::{
    cyclic_module, cyclic_poset, cyclic_projective_check, describe_case, gamma_u, is_dividing, lifting_check,
    residual, LiftingFamily, Witness,
};
use squanta_core::quantale::FinQuantale;
use squanta_core::search::{enumerate_upto, Class};

fn spaces(n: usize) -> Vec<FinQuantale> {
    enumerate_upto(n, Class::All).unwrap()
}

fn fixtures() -> Vec<FinModule> {
    vec![a3_module(), a_dot_2(), exp_end_module(&n2()), pm2_two(), FinModule::self_module(&pm2())]
}

#[test]
fn residual_adjunction_on_fixtures() {
    for m in fixtures() {
        let (a, q) = (m.aqm(), m.quantale());
        for x in 0..m.len() {
            for y in 0..m.len() {
                let Ok(r) = residual(&m, y, x) else {
                    assert!((0..a.len()).all(|b| !q.leq(m.get(b, x), y)));
                    continue;
                };
                let v = r.value.unwrap();
                assert!(q.leq(m.get(v, x), y));
                for b in 0..a.len() {
                    assert_eq!(q.leq(m.get(b, x), y), a.quant().leq(b, v));
                }
            }
        }
    }
}

#[test]
fn gamma_u_is_a_structural_nucleus_with_iso() {
    for m in fixtures() {
        for u in (0..m.len()).filter(|&u| is_dividing(&m, u)) {
            let g = gamma_u(&m, u).unwrap();
            assert!(g.passed(), "{} at {}: {:?} {:?}", m.name(u), u, g.nucleus_failure, g.iso_failure);
        }
    }
}

#[test]
fn gamma_two_is_an_enumerated_nucleus() {
    let g = gamma_u(&a3_module(), 2).unwrap();
    let all: Vec<Vec<usize>> = enumerate_nuclei(&n2()).into_iter().map(|g| g.table().to_vec()).collect();
    assert!(all.contains(&g.nucleus.table().to_vec()));
    assert_eq!(g.nucleus.table(), &[0, 2, 2]);
}

#[test]
fn cyclic_modules_are_quotients_of_scalars() {
    for m in fixtures() {
        for u in (0..m.len()).filter(|&u| is_dividing(&m, u) && cyclic_module(&m, u).cyclic) {
            let g = gamma_u(&m, u).unwrap();
            let qm = quotient(&FinModule::self_module(m.aqm()), &g.nucleus).unwrap();
            // a ∗ u for the fixed points a of γ_u hits each element once.
            let f: Vec<usize> = qm.carrier.iter().map(|&a| m.get(a, u)).collect();
            assert!(iso_witness(&qm.module, &m, &f).is_none());
        }
    }
}

#[test]
fn residual_characterization_agrees() {
    for m in fixtures() {
        for u in 0..m.len() {
            assert!(cyclic_module(&m, u).consistent());
        }
    }
}

#[test]
fn poset_level_orbits() {
    let pa = m2_on_d2();
    assert!(cyclic_poset(&pa, 1).cyclic);
    assert_eq!(cyclic_poset(&pa, 0).witness.as_deref(), Some("q"));
}

#[test]
fn a_dot_2_is_cyclic_projective() {
    let r = cyclic_projective_check(&a_dot_2()).unwrap();
    let w = Witness { u: "2".into(), v: Some("2".into()) };
    assert!(r.conditions_hold() && r.consistent());
    assert_eq!(r.shared, Some(w));
    assert_eq!(r.conditions[0].as_ref().unwrap().u, "2");
    let fam = LiftingFamily::exhaustive(&a3(), &spaces(3)).unwrap();
    assert!(lifting_check(&a_dot_2(), &fam).passed());
}

#[test]
fn a3_is_free_cyclic() {
    let r = cyclic_projective_check(&a3_module()).unwrap();
    assert_eq!(r.shared, Some(Witness { u: "1".into(), v: Some("1".into()) }));
}

#[test]
fn one_element_module() {
    let q = FinQuantale::from_fn(squanta_core::order::FinPoset::chain(&["0"]).unwrap(), |_, _| 0, 0).unwrap();
    let m = FinModule::new(a3(), q, vec![0; 3]).unwrap();
    let r = cyclic_projective_check(&m).unwrap();
    assert!(r.conditions_hold());
    assert_eq!(r.shared.unwrap().u, "0");
}

#[test]
fn pm2_two_has_no_lift() {
    let m = pm2_two();
    let r = cyclic_projective_check(&m).unwrap();
    assert!(!r.conditions_hold() && r.consistent());
    assert!(cyclic_module(&m, 1).cyclic);
    let fam = LiftingFamily::exhaustive(&pm2(), &spaces(3)).unwrap();
    let l = lifting_check(&m, &fam);
    let case = l.no_lift.clone().expect("a missing lift");
    let text = describe_case(&case, &m, &fam);
    assert!(text.contains("no lift"), "{text}");
    // Only size-3 targets witness it.
    let small = LiftingFamily::exhaustive(&pm2(), &spaces(2)).unwrap();
    assert!(lifting_check(&m, &small).passed());
}

#[test]
fn identity_surjection_lifts_trivially() {
    let fam = LiftingFamily::new(vec![a_dot_2()]);
    assert!(fam.surjections.iter().any(|(_, _, g)| g == &vec![0, 1]));
    assert!(lifting_check(&a_dot_2(), &fam).passed());
}

proptest! {
    #[test]
    fn residual_of_unit(y in 0usize..3) {
        prop_assert_eq!(residual(&a3_module(), y, 1).unwrap().value, Some(y));
    }
}

// A_γ is cyclic projective exactly when γ = γ_u for a dividing idempotent u.
#[test]
fn gamma_equals_gamma_u_on_self_modules() {
    for a in [a3(), pm2()] {
        let own = FinModule::self_module(&a);
        let gammas: Vec<Vec<usize>> = (0..a.len())
            .filter(|&u| a.mul(u, u) == u && is_dividing(&own, u))
            .map(|u| gamma_u(&own, u).unwrap().nucleus.table().to_vec())
            .collect();
        for g in enumerate_nuclei(a.quant()) {
            let Ok(qm) = quotient(&own, &g) else { continue };
            let r = cyclic_projective_check(&qm.module).unwrap();
            assert_eq!(r.conditions_hold(), gammas.contains(&g.table().to_vec()), "{:?}", g.table());
        }
    }
}

#[test]
fn exhausted_search_is_an_error() {
    let e = cyclic_projective_check(&pm2_two()).unwrap().require().unwrap_err();
    assert!(matches!(e, squanta_core::Error::SearchExhausted(_)));
    assert!(cyclic_projective_check(&a_dot_2()).unwrap().require().is_ok());
}
