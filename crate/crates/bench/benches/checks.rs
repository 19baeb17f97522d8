use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use bolkit_core::magma::{check_moufang, check_right_bol, verify_theorems};
use bolkit_core::ring::{unit_bol_loop, zorn_gf2};
use bolkit_core::search::{canonical_form, enumerate_structures, SearchOptions};
use bolkit_core::{fixtures, SearchKind, SearchSpec};

fn identity_checks(c: &mut Criterion) {
    let mut group = c.benchmark_group("right_bol");
    for g in fixtures::groups_up_to(8)
        .into_iter()
        .filter(|g| g.table.order() == 8)
    {
        group.bench_with_input(BenchmarkId::from_parameter(&g.name), &g.table, |b, t| {
            b.iter(|| check_right_bol(black_box(t)))
        });
    }
    group.finish();

    let zorn_units = unit_bol_loop(&zorn_gf2()).unwrap();
    c.bench_function("moufang/zorn_units_120", |b| {
        b.iter(|| check_moufang(black_box(&zorn_units)))
    });
    let q8 = fixtures::by_name("q8").unwrap();
    if let bolkit_core::Structure::Magma(t) = q8 {
        c.bench_function("theorem_suite/q8", |b| {
            b.iter(|| verify_theorems(black_box(&t)).unwrap())
        });
    }
}

fn canonical(c: &mut Criterion) {
    let spec = SearchSpec::exhaustive(SearchKind::BolLoop, 8).iso_reduced();
    let loops = enumerate_structures(&spec, &SearchOptions::default()).unwrap();
    let tables: Vec<_> = loops
        .certificates
        .iter()
        .filter_map(|cert| match &cert.structure {
            bolkit_core::Structure::Magma(t) => Some(t.clone()),
            bolkit_core::Structure::Ring(_) => None,
        })
        .collect();
    c.bench_function("canonical_form/bol_loops_8", |b| {
        b.iter(|| {
            for t in &tables {
                black_box(canonical_form(black_box(t)).unwrap());
            }
        })
    });
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    for (name, spec) in [
        (
            "bol_magma_5",
            SearchSpec::exhaustive(SearchKind::BolMagmaWithNeutral, 5),
        ),
        (
            "bol_magma_5_iso",
            SearchSpec::exhaustive(SearchKind::BolMagmaWithNeutral, 5).iso_reduced(),
        ),
        (
            "bol_loop_8_iso",
            SearchSpec::exhaustive(SearchKind::BolLoop, 8).iso_reduced(),
        ),
        (
            "sra_ring_2x4",
            SearchSpec::rings(SearchKind::SraRing, vec![2, 4]),
        ),
    ] {
        group.bench_function(name, |b| {
            b.iter(|| enumerate_structures(&spec, &SearchOptions::default()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, identity_checks, canonical, enumeration);
criterion_main!(benches);
