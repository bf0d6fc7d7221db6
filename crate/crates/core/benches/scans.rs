use criterion::{criterion_group, criterion_main, Criterion};
use squanta_core::aqm::free_aqm;
use squanta_core::downset::Fragment;
use squanta_core::fixtures::{m2, m2_on_d2};
use squanta_core::laws::check_aqm_laws;
use squanta_core::modact::extend_poset_action_to_dm;
use squanta_core::par;
use squanta_core::search::{run_suite, Suite};

fn pools() -> [(String, usize); 2] {
    [("1 thread".into(), 1), (format!("default pool ({})", par::num_threads()), par::num_threads())]
}

fn free_aqm_scan(c: &mut Criterion) {
    let mut g = c.benchmark_group("free_aqm_laws");
    g.sample_size(10);
    for (label, n) in pools() {
        g.bench_function(label, |b| {
            b.iter(|| {
                par::with_threads(n, || {
                    let f = free_aqm(&m2(), Fragment::new(3, 2)).unwrap();
                    let xs = f.scalar_fragment();
                    check_aqm_laws(&f, &xs, &[0, 1]).unwrap()
                })
            })
        });
    }
    g.finish();
}

fn dm_module_scan(c: &mut Criterion) {
    let dm = extend_poset_action_to_dm(&m2_on_d2()).unwrap();
    let mut g = c.benchmark_group("dm_module_laws");
    g.sample_size(10);
    for (label, n) in pools() {
        g.bench_function(label, |b| b.iter(|| par::with_threads(n, || dm.check(&Fragment::new(3, 2)).unwrap())));
    }
    g.finish();
}

fn search(c: &mut Criterion) {
    let mut g = c.benchmark_group("gen_distributivity_search");
    g.sample_size(10);
    for (label, n) in pools() {
        g.bench_function(label, |b| b.iter(|| par::with_threads(n, || run_suite(Suite::GenDistributivity, 3).unwrap())));
    }
    g.finish();
}

criterion_group!(benches, free_aqm_scan, dm_module_scan, search);
criterion_main!(benches);
