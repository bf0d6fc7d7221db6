use squanta_core::error::Error;
use squanta_core::fixtures::{a3_module, a_dot_2, pm2_two};
use squanta_core::modact::{iso_witness, FinModule};
use squanta_core::nucleus::{quotient, Nucleus, QuotientModule};
use squanta_core::projective::enumerate_homs;
use squanta_core::equivlogic::{
    enumerate_candidates, equivalence_check, generator_image_map, homs_from_cyclic, induced_embedding_check,
    recover_translations, TranslationPair,
};

fn a3_gamma() -> QuotientModule {
    let p = a3_module();
    let g = Nucleus::new(p.quantale(), vec![0, 2, 2]).unwrap();
    quotient(&p, &g).unwrap()
}

fn dot_identity() -> QuotientModule {
    let q = a_dot_2();
    quotient(&q, &Nucleus::identity(q.quantale())).unwrap()
}

// Brute force: some bijection between the quotients is a module iso.
fn isomorphic(a: &FinModule, b: &FinModule) -> bool {
    a.len() == b.len() && enumerate_homs(a, b).iter().any(|f| iso_witness(a, b, f).is_none())
}

#[test]
fn lines_agree_on_every_candidate() {
    let all = enumerate_candidates(&[a3_module(), a_dot_2()]).unwrap();
    assert!(all.len() > 50);
    let mut passing = 0;
    for tp in &all {
        let r = equivalence_check(tp);
        assert!(r.lines_agree(), "{r:?}");
        if r.line1 {
            assert!(r.inverse_failure.is_none(), "{r:?}");
            assert!(isomorphic(&tp.p.module, &tp.q.module));
            passing += 1;
        }
    }
    assert!(passing > 0);
}

#[test]
fn recovers_translations_from_gamma_u_iso() {
    let (pg, qd) = (a3_gamma(), dot_identity());
    // f: a ↦ a∗2 on the fixed points {0, 2}; g: x ↦ x/∗2.
    let f: Vec<usize> = pg.carrier.iter().map(|&a| qd.project(a_dot_2().get(a, 1))).collect();
    let g = vec![0, 1];
    assert_eq!(f, vec![0, 1]);
    let tp = recover_translations(&pg, &qd, &f, &g).unwrap();
    let r = equivalence_check(&tp);
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.f.unwrap(), f);
    assert_eq!(r.g.unwrap(), g);
    assert!(induced_embedding_check(&tp.p, &tp.q, &f, &tp.tau));
}

#[test]
fn recovery_needs_an_isomorphism() {
    let e = recover_translations(&a3_gamma(), &dot_identity(), &[0, 0], &[0, 1]).unwrap_err();
    assert!(matches!(e, Error::NotAHomomorphism(_)), "{e:?}");
}

#[test]
fn recovery_needs_projectivity() {
    let m = pm2_two();
    let id = quotient(&m, &Nucleus::identity(m.quantale())).unwrap();
    let e = recover_translations(&id, &id, &[0, 1], &[0, 1]).unwrap_err();
    assert!(matches!(e, Error::NotProjective(_)), "{e:?}");
}

#[test]
fn generator_images_determine_homs() {
    let p = a_dot_2();
    // Oracle: every hom out of a cyclic module is fixed by the image of 2.
    for q in [a3_module(), a_dot_2()] {
        let mut brute = enumerate_homs(&p, &q);
        let mut via = homs_from_cyclic(&p, 1, &q);
        brute.sort();
        via.sort();
        assert_eq!(brute, via);
    }
    assert!(generator_image_map(&a3_module(), 1, &p, 1).is_ok());
}

#[test]
fn non_homomorphic_translation_rejected() {
    let p = a3_module();
    let g = Nucleus::identity(p.quantale());
    let e = TranslationPair::new(&p, &p, &g, &g, vec![0, 2, 1], vec![0, 1, 2]).unwrap_err();
    assert!(matches!(e, Error::NotAHomomorphism(_)));
}
