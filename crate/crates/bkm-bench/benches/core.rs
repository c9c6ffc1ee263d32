use bkm_core::cartan::{BkmCartanMatrix, RootSum, Weight};
use bkm_core::lie_engine::{Engine, KillSpec, ModuleModel};
use bkm_core::solver::enumerate_dn;
use criterion::{criterion_group, criterion_main, Criterion};

fn bench_verma_dims(c: &mut Criterion) {
    c.bench_function("verma_dims_negA3_cutoff5", |b| {
        b.iter(|| {
            let m = BkmCartanMatrix::negative_type_a(3);
            let mut eng = Engine::new(m);
            let mut total = 0u64;
            for beta in RootSum::all_up_to(3, 5) {
                total += eng.dim_u(&beta).unwrap();
            }
            total
        })
    });
}

fn bench_simple_module(c: &mut Criterion) {
    c.bench_function("simple_dims_negA2_rho_cutoff5", |b| {
        b.iter(|| {
            let m = BkmCartanMatrix::negative_type_a(2);
            let rho = m.weyl_vector();
            let mut eng = Engine::new(m);
            let mut model = ModuleModel::new(rho, KillSpec::Simple);
            let mut total = 0u64;
            for beta in RootSum::all_up_to(2, 5) {
                total += model.dim(&mut eng, &beta).unwrap();
            }
            total
        })
    });
}

fn bench_enumerate_dn(c: &mut Criterion) {
    c.bench_function("enumerate_dn_n6", |b| b.iter(|| enumerate_dn(6, false).len()));
}

criterion_group!(benches, bench_verma_dims, bench_simple_module, bench_enumerate_dn);
criterion_main!(benches);
