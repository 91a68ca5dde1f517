#include <benchmark/benchmark.h>

#include "qsearch/search_algorithms.hpp"
#include "qsearch/simulate.hpp"
#include "qsearch/synthesis.hpp"

using namespace qsearch;

static void BM_apply_single_gate(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Statevector sv = Statevector::zero_state(n);
    const GateOp h = GateOp::single(n / 2, h_gate());
    for (auto _ : state) {
        sv = apply_gate(sv, h);
        benchmark::DoNotOptimize(sv.amplitudes.entries().data());
    }
    state.SetComplexityN(1 << n);
}
BENCHMARK(BM_apply_single_gate)->DenseRange(2, 10, 2)->Complexity();

static void BM_density_noisy_gate(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    DensityMatrix dm = DensityMatrix::zero_state(n);
    const GateOp h = GateOp::single(0, h_gate());
    for (auto _ : state) {
        dm = apply_gate(dm, h);
        dm = depolarize(dm, {0}, 0.001);
        benchmark::DoNotOptimize(dm.rho.entries().data());
    }
}
BENCHMARK(BM_density_noisy_gate)->DenseRange(2, 6, 1);

static void BM_synthesize_collapse_gate(benchmark::State& state) {
    const std::size_t n = std::size_t{1} << state.range(0);
    const CMatrix u = build_U(n);
    for (auto _ : state) {
        auto result = synthesize(u, SynthesisHint::QftFamily);
        benchmark::DoNotOptimize(result.circuit.ops.data());
    }
}
BENCHMARK(BM_synthesize_collapse_gate)->DenseRange(2, 6, 1);

static void BM_synthesize_generic(benchmark::State& state) {
    const std::size_t n = std::size_t{1} << state.range(0);
    const CMatrix u = build_U(n);
    for (auto _ : state) {
        auto result = synthesize(u, SynthesisHint::Generic);
        benchmark::DoNotOptimize(result.circuit.ops.data());
    }
}
BENCHMARK(BM_synthesize_generic)->DenseRange(2, 4, 1);

static void BM_noisy_sweep_cell(benchmark::State& state) {
    const int q = static_cast<int>(state.range(0));
    const std::size_t n = std::size_t{1} << q;
    const Circuit circuit =
        qcpa_circuit(MarkedSequence::single_marked(n, 2), PermutationConvention::RowStart);
    const NoiseModel nm = NoiseModel::all_gates(0.001, 0.001);
    for (auto _ : state) {
        auto dist = noisy_distribution(circuit, nm);
        benchmark::DoNotOptimize(dist.data());
    }
}
BENCHMARK(BM_noisy_sweep_cell)->DenseRange(3, 5, 1);

static void BM_grover_pipeline_matrix(benchmark::State& state) {
    const std::size_t n = std::size_t{1} << state.range(0);
    for (auto _ : state) {
        auto out = run_grover(n, 1, grover_iterations(n), RunMode::Matrix);
        benchmark::DoNotOptimize(out.distribution.data());
    }
}
BENCHMARK(BM_grover_pipeline_matrix)->DenseRange(3, 7, 1);

BENCHMARK_MAIN();
