// Serial reference against OpenMP kernel for each parallel hot loop.

#include <benchmark/benchmark.h>

#include "duc/builtins.h"
#include "duc/ca_sim.h"
#include "duc/ergodicity.h"
#include "duc/kernels.h"
#include "duc/perm_map.h"

namespace {

using namespace duc;

Exec exec_of(const benchmark::State &state) { return state.range(0) ? Exec::parallel : Exec::serial; }

void label(benchmark::State &state) { state.SetLabel(state.range(0) ? "omp" : "serial"); }

void BM_TransferDense(benchmark::State &state) {
    const Gate g = builtin_map("E1").to_gate();
    const TransferOptions opts{6561, exec_of(state)};
    const int alpha = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(transfer_matrix(g, alpha, Direction::right, opts).matrix.data());
    label(state);
}
BENCHMARK(BM_TransferDense)->ArgsProduct({{0, 1}, {2, 3}})->Unit(benchmark::kMillisecond);

void BM_TransferGraph(benchmark::State &state) {
    const PermMap u = builtin_map("I2");
    const int n = u.n();
    std::vector<int> v(n * n), vp(n * n);
    for (int a = 0; a < n; a++)
        for (int b = 0; b < n; b++) {
            v[u.c(a, b) * n + u.d(a, b)] = b * n + a;
            vp[u.c(a, b) * n + a] = b * n + u.d(a, b);
        }
    const int alpha = static_cast<int>(state.range(1));
    for (auto _ : state) {
        auto g = state.range(0) ? kernels::transfer_graph_omp(v, vp, n, alpha)
                                : kernels::transfer_graph_serial(v, vp, n, alpha);
        benchmark::DoNotOptimize(g.targets.data());
    }
    label(state);
}
BENCHMARK(BM_TransferGraph)->ArgsProduct({{0, 1}, {3, 4}})->Unit(benchmark::kMillisecond);

void BM_CycleTable(benchmark::State &state) {
    const BrickworkCA ca(builtin_map("C1"));
    const int L = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(cycle_table(ca, L, uint64_t{1} << 24, exec_of(state)).states);
    label(state);
}
BENCHMARK(BM_CycleTable)->ArgsProduct({{0, 1}, {10, 12}})->Unit(benchmark::kMillisecond);

void BM_OrbitIteration(benchmark::State &state) {
    OrbitOptions opts;
    opts.samples = 50;
    opts.repetitions = 2;
    opts.table_cap = 1;  // force per-sample iteration
    opts.exec = exec_of(state);
    const PermMap m = builtin_map("C2");
    for (auto _ : state) benchmark::DoNotOptimize(average_orbit_length(m, 12, opts).mean);
    label(state);
}
BENCHMARK(BM_OrbitIteration)->Args({0})->Args({1})->Unit(benchmark::kMillisecond);

void BM_CorrelatorRow(benchmark::State &state) {
    const Gate g = builtin_map("table1").to_gate();
    const auto basis = traceless_basis(3);
    const CorrelatorOptions opts{6561, exec_of(state)};
    for (auto _ : state) benchmark::DoNotOptimize(correlator_row(g, 8, 4, basis, basis[0], 0, opts).data());
    label(state);
}
BENCHMARK(BM_CorrelatorRow)->Args({0})->Args({1})->Unit(benchmark::kMillisecond);

void BM_Enumerate(benchmark::State &state) {
    EnumerateOptions opts;
    opts.parallel = state.range(0) != 0;
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_du(3, opts).class_count);
    label(state);
}
BENCHMARK(BM_Enumerate)->Args({0})->Args({1})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
