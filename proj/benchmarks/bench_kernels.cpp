#include <benchmark/benchmark.h>

#include <cmath>

#include "tricam/diagnostics.hpp"
#include "tricam/dynamics.hpp"
#include "tricam/initdata.hpp"
#include "tricam/kernels.hpp"

using namespace tricam;

namespace {

Field test_field(std::size_t n) {
    const Grid1D g = make_symmetric_grid(20, n);
    return Field::sample(g, [](double x) { return std::exp(-x * x) + 0.5 * std::exp(-0.3 * (x - 4) * (x - 4)); });
}

State test_state(std::size_t n) {
    return initial_state(admissible_profiles(ProfileParams{}, make_symmetric_grid(20, n)));
}

void BM_ConvG1(benchmark::State& st, KernelBackend backend) {
    const Field f = test_field(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(conv_g1(f, backend));
    st.SetComplexityN(st.range(0));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_ScanStencil(benchmark::State& st) {
    const Field f = test_field(16384);
    for (auto _ : st) benchmark::DoNotOptimize(recursive_exp_conv(f, ExpKernel::g1(), static_cast<int>(st.range(0))));
}

void BM_Rhs(benchmark::State& st, KernelBackend backend) {
    SolverOptions o;
    o.backend = backend;
    const Solver solver(o);
    const State s = test_state(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(solver.rhs(s));
    st.SetComplexityN(st.range(0));
}

void BM_StepRk4(benchmark::State& st) {
    const Solver solver;
    const State s = test_state(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(solver.step_rk4(s, 1e-3));
}

void BM_Measure(benchmark::State& st) {
    const Solver solver;
    const State s = test_state(static_cast<std::size_t>(st.range(0)));
    const Field b = solver.recover_b(s.a, s.c);
    for (auto _ : st) benchmark::DoNotOptimize(measure(s, b, solver));
}

}  // namespace

BENCHMARK_CAPTURE(BM_ConvG1, fourier, KernelBackend::FourierSymbol)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity();
BENCHMARK_CAPTURE(BM_ConvG1, scan, KernelBackend::RecursiveScan)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity(benchmark::oN);
BENCHMARK_CAPTURE(BM_ConvG1, oracle, KernelBackend::DirectOracle)->RangeMultiplier(2)->Range(1 << 9, 1 << 11)->Complexity(benchmark::oNSquared);
BENCHMARK(BM_ScanStencil)->Arg(2)->Arg(4)->Arg(8)->Arg(12);
BENCHMARK_CAPTURE(BM_Rhs, fourier, KernelBackend::FourierSymbol)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Complexity();
BENCHMARK_CAPTURE(BM_Rhs, scan, KernelBackend::RecursiveScan)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Complexity();
BENCHMARK(BM_StepRk4)->Arg(1024)->Arg(4096);
BENCHMARK(BM_Measure)->Arg(1024);
BENCHMARK_MAIN();
