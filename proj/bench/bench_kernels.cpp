// Serial reference kernels against their OpenMP versions, plus the epsilon
// sweep at one thread and at the default thread count.

#include <benchmark/benchmark.h>

#include <random>

#include "shishkin/analysis.hpp"
#include "shishkin/kernels.hpp"

namespace {

using namespace shishkin;

BlockTridiagonalSystem blank(const Problem& p, std::size_t N) {
    const auto mesh = build_mesh(compute_transitions(p.epsilon, p.alpha, N));
    BlockTridiagonalSystem sys;
    sys.N = mesh.N();
    sys.n = p.n();
    sys.points = mesh.points;
    sys.left_bc = p.u_left;
    sys.right_bc = p.u_right;
    sys.epsilon = Eigen::Map<const Eigen::VectorXd>(p.epsilon.data(), static_cast<Eigen::Index>(p.n()));
    return sys;
}

template <void (*Assemble)(const Problem&, BlockTridiagonalSystem&)>
void BM_Assemble(benchmark::State& state) {
    const Problem& p = builtin_problem("P3").problem;
    auto sys = blank(p, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        Assemble(p, sys);
        benchmark::DoNotOptimize(sys.diag.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <MeshFunction (*Apply)(const BlockTridiagonalSystem&, const MeshFunction&)>
void BM_ApplyOperator(benchmark::State& state) {
    const Problem& p = builtin_problem("P3").problem;
    const auto N = static_cast<std::size_t>(state.range(0));
    const auto sys = assemble(p, build_mesh(compute_transitions(p.epsilon, p.alpha, N)));
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    MeshFunction psi(static_cast<Eigen::Index>(N + 1), 2);
    for (Eigen::Index i = 0; i < psi.size(); ++i) psi.data()[i] = u(rng);
    for (auto _ : state) benchmark::DoNotOptimize(Apply(sys, psi));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Eigen::MatrixXd (*Inverse)(const Eigen::MatrixXd&)>
void BM_DenseInverse(benchmark::State& state) {
    const Problem& p = builtin_problem("P2").problem;
    const auto N = static_cast<std::size_t>(state.range(0));
    const Eigen::MatrixXd m = to_dense(assemble(p, build_mesh(compute_transitions(p.epsilon, p.alpha, N))));
    for (auto _ : state) benchmark::DoNotOptimize(Inverse(m));
}

void BM_Sweep(benchmark::State& state) {
    const Problem& p = builtin_problem("P3").problem;
    const auto grid = epsilon_grid_product({{1e-8, 1e-6}, {1e-4, 1e-2}});
    SweepOptions opts;
    opts.threads = state.range(0) > 0 ? static_cast<int>(state.range(0)) : kernels::sweep_threads();
    for (auto _ : state)
        benchmark::DoNotOptimize(epsilon_sweep(p, "P3", grid, {64, 128, 256}, ErrorMode::TwoMesh, std::nullopt, opts));
}

BENCHMARK(BM_Assemble<kernels::serial::assemble_rows>)->Name("assemble/serial")->Range(1 << 8, 1 << 14);
BENCHMARK(BM_Assemble<kernels::parallel::assemble_rows>)->Name("assemble/parallel")->Range(1 << 8, 1 << 14);
BENCHMARK(BM_ApplyOperator<kernels::serial::apply_operator>)->Name("apply/serial")->Range(1 << 8, 1 << 14);
BENCHMARK(BM_ApplyOperator<kernels::parallel::apply_operator>)->Name("apply/parallel")->Range(1 << 8, 1 << 14);
BENCHMARK(BM_DenseInverse<kernels::serial::dense_inverse>)->Name("dense_inverse/serial")->Arg(64)->Arg(256);
BENCHMARK(BM_DenseInverse<kernels::parallel::dense_inverse>)->Name("dense_inverse/parallel")->Arg(64)->Arg(256);
BENCHMARK(BM_Sweep)->Name("sweep/threads")->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
