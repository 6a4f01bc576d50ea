use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use permblock_core::census::{count_configs, BoundaryConditions};
use permblock_core::gf2::BitMatrix;
use permblock_core::lattice::{assemble_block, enumerate_lines, BrickSpec, LatticeSpec, LineOrdering};
use permblock_core::{build_extension_field, ExtFieldSpec, Ring, RingMatrix};

fn random_brick(f: &ExtFieldSpec, n: usize, seed: u64) -> BrickSpec<ExtFieldSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    BrickSpec::simple(RingMatrix::from_fn(f.clone(), n, n, |_, _| f.random(&mut rng))).unwrap()
}

fn assembly(c: &mut Criterion) {
    let mut g = c.benchmark_group("assemble");
    for (q, m) in [(2u64, 1usize), (2, 8)] {
        let f = build_extension_field(q, m).unwrap();
        let brick = random_brick(&f, 3, 1);
        for l in [2usize, 4] {
            let profile = enumerate_lines(&LatticeSpec::cube(3, l, vec![1; 3]).unwrap(), LineOrdering::Lex).unwrap();
            g.bench_with_input(BenchmarkId::new(f.tag(), l), &profile, |b, p| {
                b.iter(|| assemble_block(&brick, p, None).unwrap())
            });
        }
    }
    g.finish();
}

fn gf2_rank(c: &mut Criterion) {
    let f = build_extension_field(2, 1).unwrap();
    let mut g = c.benchmark_group("gf2-rank");
    for n in [64usize, 256, 1024] {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let m = RingMatrix::from_fn(f.clone(), n, n, |_, _| f.random(&mut rng));
        let bits = BitMatrix::from_matrix(&m).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &bits, |b, bits| b.iter(|| bits.rank()));
    }
    g.finish();
}

fn census(c: &mut Criterion) {
    let f = build_extension_field(2, 1).unwrap();
    let brick = random_brick(&f, 3, 2);
    let mut g = c.benchmark_group("census");
    for l in [4usize, 8] {
        let profile = enumerate_lines(&LatticeSpec::cube(3, l, vec![1; 3]).unwrap(), LineOrdering::Lex).unwrap();
        let block = assemble_block(&brick, &profile, None).unwrap();
        let bcs = BoundaryConditions::toric(3);
        g.bench_function(BenchmarkId::from_parameter(l), |b| b.iter(|| count_configs(&block, &profile, &bcs).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, assembly, gf2_rank, census);
criterion_main!(benches);
