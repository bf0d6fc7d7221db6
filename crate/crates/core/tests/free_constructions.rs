use std::collections::BTreeSet;

use proptest::prelude::*;
use squanta_core::downset::{djoin, downset_fragment, DmQuantale, FgDownset, Fragment};
use squanta_core::fixtures::{c2, d2, n2};
use squanta_core::laws::{check_cdi, check_quantale, QuantaleOps};
use squanta_core::multiupset::{fragment, free_extend_pomonoid, freeness_check, Multiupset};
use squanta_core::order::{monotone_maps, FinPoset, MonotoneMap};

/// All evaluation tables `X -> {0..=m}` that are order-preserving.
fn brute_multiupsets(x: &FinPoset, m: u32) -> Vec<Vec<u32>> {
    let n = x.len();
    let total = (m as usize + 1).pow(n as u32);
    (0..total)
        .map(|mut i| {
            (0..n)
                .map(|_| {
                    let v = (i % (m as usize + 1)) as u32;
                    i /= m as usize + 1;
                    v
                })
                .collect::<Vec<u32>>()
        })
        .filter(|t| x.strict_pairs().all(|(a, b)| t[a] <= t[b]))
        .collect()
}

#[test]
fn fragment_matches_brute_force() {
    for x in [d2(), c2()] {
        let ours: BTreeSet<Vec<u32>> = fragment(&x, 4).iter().map(|f| f.eval().to_vec()).collect();
        let brute: BTreeSet<Vec<u32>> = brute_multiupsets(&x, 4)
            .into_iter()
            .filter(|t| Multiupset::from_eval(&x, t.clone()).unwrap().multiplicity() <= 4)
            .collect();
        assert_eq!(ours, brute);
    }
}

#[test]
fn extension_examples() {
    let n2 = n2();
    let (d2, c2) = (d2(), c2());
    let h = MonotoneMap::from_pairs(d2.clone(), n2.poset().clone(), &[("p", "1"), ("q", "1")]).unwrap();
    let ext = free_extend_pomonoid(&h, n2.pomonoid()).unwrap();
    assert_eq!(ext.apply(&Multiupset::parse(&d2, "[p,q]").unwrap()), 2);
    assert_eq!(ext.apply(&Multiupset::empty(&d2)), 0);
    let h = MonotoneMap::from_pairs(c2.clone(), n2.poset().clone(), &[("a", "1"), ("b", "2")]).unwrap();
    let ext = free_extend_pomonoid(&h, n2.pomonoid()).unwrap();
    assert_eq!(ext.apply(&Multiupset::parse(&c2, "[a,b]").unwrap()), 2);
}

#[test]
fn freeness_on_d2_and_c2() {
    let n2 = n2();
    for h in monotone_maps(&d2(), n2.poset()) {
        let r = freeness_check(&h, n2.pomonoid(), 4).unwrap();
        assert!(r.passed(), "{r:?}");
    }
    // On C2 the generator map reverses order, so h♯ keeps the equations
    // but is order-preserving only when h is constant.
    for h in monotone_maps(&c2(), n2.poset()) {
        let r = freeness_check(&h, n2.pomonoid(), 4).unwrap();
        assert!(r.equations_pass(), "{r:?}");
        assert_eq!(r.monotone.is_none(), h.apply(0) == h.apply(1), "{r:?}");
    }
}

fn dm_fragment(x: &FinPoset) -> Vec<FgDownset> {
    downset_fragment(x, &Fragment::default())
}

#[test]
fn dm_quantale_laws() {
    for x in [d2(), c2()] {
        let dm = DmQuantale::new(&x).unwrap();
        let xs = dm_fragment(&x);
        let r = check_quantale(&dm, &xs).unwrap();
        assert!(r.passed(), "{:?}", r.first_failure());
        assert!(check_cdi(&dm, &xs).unwrap().passed());
    }
}

/// `P + Q` as the downward closure of pairwise sums of all members,
/// compared by membership.
fn sum_by_members(p: &FgDownset, q: &FgDownset) -> BTreeSet<Vec<u32>> {
    let mut out = BTreeSet::new();
    for f in p.enumerate() {
        for g in q.enumerate() {
            out.insert(f.msum(&g).unwrap().eval().to_vec());
        }
    }
    out
}

fn members(p: &FgDownset) -> BTreeSet<Vec<u32>> {
    p.enumerate().iter().map(|f| f.eval().to_vec()).collect()
}

#[test]
fn dsum_matches_member_oracle() {
    for x in [d2(), c2()] {
        let xs: Vec<FgDownset> = dm_fragment(&x).into_iter().filter(|p| p.multiplicity() <= 3).collect();
        for p in &xs {
            for q in &xs {
                let s = p.dsum(q).unwrap();
                // Every sum of members lies below a sum of maximal generators,
                // and every member of the sum is below some pairwise sum.
                let sums = sum_by_members(p, q);
                let all = members(&s);
                assert!(sums.is_subset(&all));
                for f in s.enumerate() {
                    assert!(sums.iter().any(|t| f.eval().iter().zip(t).all(|(a, b)| a <= b)));
                }
            }
        }
    }
}

#[test]
fn djoin_is_union() {
    let x = d2();
    let xs = dm_fragment(&x);
    for p in xs.iter().take(20) {
        for q in xs.iter().take(20) {
            let j = djoin(&[p.clone(), q.clone()]).unwrap();
            let u: BTreeSet<_> = members(p).union(&members(q)).cloned().collect();
            assert_eq!(members(&j), u);
        }
    }
}

proptest! {
    #[test]
    fn decompose_resums(gens in proptest::collection::vec(0usize..2, 0..6), c in any::<bool>()) {
        let x = if c { c2() } else { d2() };
        let f = Multiupset::from_gens(&x, &gens);
        let back = Multiupset::from_gens(&x, &f.decompose());
        prop_assert_eq!(back, f);
    }

    #[test]
    fn dsum_distributes(i in 0usize..200, j in 0usize..200, k in 0usize..200) {
        let x = c2();
        let xs = dm_fragment(&x);
        let (p, q, r) = (&xs[i % xs.len()], &xs[j % xs.len()], &xs[k % xs.len()]);
        let dm = DmQuantale::new(&x).unwrap();
        prop_assert_eq!(dm.plus(p, &dm.join(q, r)), dm.join(&dm.plus(p, q), &dm.plus(p, r)));
    }
}
