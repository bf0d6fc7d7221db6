use squanta_core::fixtures::{a3, pm2};
use squanta_core::order::FinPoset;
use squanta_core::projective::cyclic_projective_check;
use squanta_core::quantale::FinQuantale;
use squanta_core::search::{
    enumerate_quantales, enumerate_semilattices, non_projective_modules, projective_suite, run_suite, Class, Suite,
};

const NAMES: [&str; 3] = ["a", "b", "c"];

// Every upper-triangular relation, every unit, every table: keep what
// the validating constructors accept.
fn brute_force(n: usize) -> (usize, usize) {
    let names: Vec<String> = NAMES[..n].iter().map(|s| s.to_string()).collect();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let (mut all, mut cdi) = (0, 0);
    for mask in 0u32..1 << pairs.len() {
        let rel = |i: usize, j: usize| i == j || pairs.iter().position(|&p| p == (i, j)).is_some_and(|k| mask >> k & 1 == 1);
        let Ok(p) = FinPoset::from_fn(names.clone(), rel) else { continue };
        if !(0..n).all(|i| (0..n).all(|j| p.lub(i, j).is_some())) {
            continue;
        }
        for unit in 0..n {
            for code in 0..n.pow((n * n) as u32) {
                let t: Vec<usize> = (0..n * n).map(|i| code / n.pow(i as u32) % n).collect();
                let Ok(q) = FinQuantale::from_fn(p.clone(), |x, y| t[x * n + y], unit) else { continue };
                all += 1;
                let comm = (0..n).all(|x| (0..n).all(|y| q.plus(x, y) == q.plus(y, x)));
                if comm && q.bottom() == Some(unit) {
                    cdi += 1;
                }
            }
        }
    }
    (all, cdi)
}

#[test]
fn quantale_counts_match_brute_force() {
    for n in 1..=3 {
        let (all, cdi) = brute_force(n);
        assert_eq!(enumerate_quantales(n, Class::All).unwrap().len(), all, "n = {n}");
        assert_eq!(enumerate_quantales(n, Class::Cdi).unwrap().len(), cdi, "n = {n}");
    }
}

#[test]
fn semilattice_counts() {
    let counts: Vec<usize> = (1..=4).map(|n| enumerate_semilattices(n).len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 7]);
}

#[test]
fn hard_limit() {
    assert!(enumerate_quantales(6, Class::Cdi).is_err());
}

#[test]
fn correspondence_suite_passes() {
    let r = run_suite(Suite::Correspondence, 4).unwrap();
    assert!(r.passed(), "{:?}", r.counterexamples);
    assert_eq!(r.structures, enumerate_quantales(4, Class::Cdi).unwrap().len() + 4);
}

#[test]
fn gen_distributivity_failures_are_not_cdi() {
    let r = run_suite(Suite::GenDistributivity, 3).unwrap();
    assert!(!r.passed());
    assert!(r.counterexamples.iter().all(|f| !f.witness.is_empty()));
}

#[test]
fn projective_suite_agrees() {
    let r = projective_suite(3, &[("A3", a3()), ("P(M2)", pm2())]).unwrap();
    assert!(r.passed(), "{:?}", r.counterexamples);
    for m in non_projective_modules(&pm2(), 2).unwrap() {
        assert!(!cyclic_projective_check(&m).unwrap().conditions_hold());
    }
}

#[test]
fn suite_names_round_trip() {
    for s in Suite::ALL {
        assert_eq!(Suite::parse(s.name()), Some(s));
    }
}
