use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use witt2rep::chartab::StructureConstants;
use witt2rep::clifford::{AnalysisOptions, LengthTwoContext};
use witt2rep::group::{enumerate_points, EnumOptions, GroupScheme};
use witt2rep::par::Exec;
use witt2rep::ring::parse_ring;

const EXECS: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_points");
    g.sample_size(10);
    for (scheme, ring) in [("sl(2)", "zmod(3^2)"), ("gl(2)", "witt2(gf(4))")] {
        for (name, exec) in EXECS {
            let opts = EnumOptions { exec, ..EnumOptions::default() };
            g.bench_with_input(BenchmarkId::new(name, format!("{scheme}@{ring}")), &opts, |b, opts| {
                b.iter(|| enumerate_points(scheme.parse().unwrap(), parse_ring(ring).unwrap(), opts).unwrap())
            });
        }
    }
    g.finish();
}

fn structure_constants(c: &mut Criterion) {
    let mut g = c.benchmark_group("structure_constants");
    g.sample_size(10);
    for (name, exec) in EXECS {
        let opts = EnumOptions { exec, ..EnumOptions::default() };
        let grp = enumerate_points(GroupScheme::sl(2), parse_ring("zmod(3^2)").unwrap(), &opts).unwrap();
        g.bench_function(BenchmarkId::new(name, "sl(2)@zmod(3^2)"), |b| b.iter(|| StructureConstants::compute(grp.group())));
    }
    g.finish();
}

fn orbit_table(c: &mut Criterion) {
    let mut g = c.benchmark_group("orbit_table");
    g.sample_size(10);
    for (name, exec) in EXECS {
        let opts = AnalysisOptions { exec, ..AnalysisOptions::default() };
        let ctx = LengthTwoContext::build(GroupScheme::gl(2), parse_ring("witt2(gf(3))").unwrap(), &opts).unwrap();
        g.bench_function(BenchmarkId::new(name, "gl(2)@witt2(gf(3))"), |b| b.iter(|| ctx.orbit_table().unwrap()));
    }
    g.finish();
}

criterion_group!(benches, enumeration, structure_constants, orbit_table);
criterion_main!(benches);
