use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use maltcat_bench::double_groupoid;
use maltcat_core::congruence::{all_congruences, tc_commutator};
use maltcat_core::internal::{groupoid_structure, loday_encode_double};
use maltcat_core::natmaltsev::pedicchio_delta;
use maltcat_core::reflection::{coreflect, reflect, regular_quotients};
use maltcat_core::{corpus, Congruence};

fn commutators(c: &mut Criterion) {
    let mut group = c.benchmark_group("tc_commutator");
    for a in [
        corpus::cyclic_group(4),
        corpus::klein_group(),
        corpus::symmetric_group_3(),
    ] {
        let full = Congruence::full(&a);
        group.bench_with_input(BenchmarkId::from_parameter(a.name()), &a, |b, a| {
            b.iter(|| tc_commutator(a, &full, &full).unwrap())
        });
    }
    group.finish();
    c.bench_function("all_congruences/S3", |b| {
        let s3 = corpus::symmetric_group_3();
        b.iter(|| all_congruences(&s3).unwrap())
    });
    c.bench_function("pedicchio_delta/Z4", |b| {
        let z4 = corpus::cyclic_group(4);
        let mid = Congruence::from_blocks(&z4, &[vec![0, 2], vec![1, 3]]).unwrap();
        b.iter(|| pedicchio_delta(&z4, &mid, &mid).unwrap())
    });
}

fn groupoids(c: &mut Criterion) {
    let g = corpus::groupoid_from_hom(2, 4, 2).unwrap();
    c.bench_function("groupoid_structure/hom_z2_z4", |b| {
        b.iter(|| groupoid_structure(&g).unwrap())
    });
}

fn reflections(c: &mut Criterion) {
    let mut group = c.benchmark_group("reflection");
    for name in ["vdisc_hom_z2_z2", "vdisc_hom_z2_z4", "hom_z2_z2_x_group_z2"] {
        let dg = double_groupoid(name);
        group.bench_with_input(BenchmarkId::new("reflect", name), &dg, |b, dg| {
            b.iter(|| reflect(dg).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("coreflect", name), &dg, |b, dg| {
            b.iter(|| coreflect(dg).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("encode", name), &dg, |b, dg| {
            b.iter(|| loday_encode_double(dg).unwrap())
        });
    }
    let disc = double_groupoid("disc_z4");
    group.bench_function("regular_quotients/disc_z4", |b| {
        b.iter(|| regular_quotients(&disc).unwrap())
    });
    group.finish();
}

criterion_group!(benches, commutators, groupoids, reflections);
criterion_main!(benches);
