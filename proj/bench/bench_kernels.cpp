#include "warplab/kernels.hpp"

#include <benchmark/benchmark.h>

#include <omp.h>

using namespace warplab;

namespace {

const WarpProfile& profile()
{
    static const WarpProfile p = [] {
        ManifoldSpec s;
        s.family = Family::DeSitterSchwarzschild;
        s.n = 3;
        s.m = 0.3;
        s.c = -1.0;
        return build_profile(s);
    }();
    return p;
}

SubmanifoldMesh graph_mesh(int resolution)
{
    ManifoldSpec s;
    s.family = Family::SpaceForm;
    s.n = 3;
    s.c = -1.0;
    RadialGraph g;
    g.r0 = 1.0;
    g.eps = 0.2;
    g.mode = GraphMode::Random;
    g.seed = 1;
    return mesh_radial_graph(build_profile(s), g, resolution);
}

void BM_ConeSerial(benchmark::State& state)
{
    SubmanifoldMesh m = mesh_cone(profile(), RadialCone{2, 1.0, 0.5, 3.0}, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::moments_serial(m, profile()));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m.size()));
}

void BM_ConeParallel(benchmark::State& state)
{
    SubmanifoldMesh m = mesh_cone(profile(), RadialCone{2, 1.0, 0.5, 3.0}, static_cast<int>(state.range(0)));
    omp_set_num_threads(static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::moments_parallel(m, profile()));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m.size()));
}

void BM_GraphSerial(benchmark::State& state)
{
    SubmanifoldMesh m = graph_mesh(static_cast<int>(state.range(0)));
    WarpProfile p = build_profile(m.spec);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::moments_serial(m, p));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m.size()));
}

void BM_GraphParallel(benchmark::State& state)
{
    SubmanifoldMesh m = graph_mesh(static_cast<int>(state.range(0)));
    WarpProfile p = build_profile(m.spec);
    omp_set_num_threads(static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::moments_parallel(m, p));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m.size()));
}

} // namespace

BENCHMARK(BM_ConeSerial)->Arg(16384)->Arg(262144)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_ConeParallel)->ArgsProduct({{16384, 262144}, {1, 2, 4, 8}})->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_GraphSerial)->Arg(16384)->Arg(65536)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_GraphParallel)->ArgsProduct({{16384, 65536}, {1, 2, 4, 8}})->Unit(benchmark::kMicrosecond)->UseRealTime();

BENCHMARK_MAIN();
