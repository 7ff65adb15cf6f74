#include <benchmark/benchmark.h>

#include "planebreaker/expr/parser.hpp"
#include "planebreaker/mesh/kernels.hpp"
#include "planebreaker/mesh/surface.hpp"

namespace pb = planebreaker;

namespace {

const pb::expr::Expression& surface()
{
    static const pb::expr::Expression e = pb::expr::parse("z = 3sin(x) + cos(y) + sqrt(x^2 + y^2) / 4");
    return e;
}

void BM_SampleSerial(benchmark::State& state)
{
    const pb::mesh::Resolution res{static_cast<int>(state.range(0))};
    for (auto _ : state) {
        auto field = pb::mesh::serial::sample_grid(surface(), pb::mesh::kDefaultDomain, res);
        benchmark::DoNotOptimize(field.values().data());
    }
    state.SetItemsProcessed(state.iterations() * (res.segments + 1) * (res.segments + 1));
}

void BM_SampleOpenMP(benchmark::State& state)
{
    const pb::mesh::Resolution res{static_cast<int>(state.range(0))};
    for (auto _ : state) {
        auto field = pb::mesh::sample_grid(surface(), pb::mesh::kDefaultDomain, res);
        benchmark::DoNotOptimize(field.values().data());
    }
    state.SetItemsProcessed(state.iterations() * (res.segments + 1) * (res.segments + 1));
}

void BM_NormalsSerial(benchmark::State& state)
{
    const pb::mesh::Resolution res{static_cast<int>(state.range(0))};
    const auto field = pb::mesh::sample_grid(surface(), pb::mesh::kDefaultDomain, res);
    for (auto _ : state) {
        auto normals = pb::mesh::serial::compute_normals(field);
        benchmark::DoNotOptimize(normals.data());
    }
}

void BM_NormalsOpenMP(benchmark::State& state)
{
    const pb::mesh::Resolution res{static_cast<int>(state.range(0))};
    const auto field = pb::mesh::sample_grid(surface(), pb::mesh::kDefaultDomain, res);
    for (auto _ : state) {
        auto normals = pb::mesh::compute_normals(field);
        benchmark::DoNotOptimize(normals.data());
    }
}

void BM_BuildMesh(benchmark::State& state)
{
    const pb::mesh::Resolution res{static_cast<int>(state.range(0))};
    const auto field = pb::mesh::sample_grid(surface(), pb::mesh::kDefaultDomain, res);
    for (auto _ : state) {
        auto mesh = pb::mesh::build_mesh(surface(), field, pb::mesh::kDefaultZLimits, pb::mesh::ColorMap::viridis());
        benchmark::DoNotOptimize(mesh.indices.data());
    }
}

} // namespace

BENCHMARK(BM_SampleSerial)->Arg(64)->Arg(128)->Arg(512)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SampleOpenMP)->Arg(64)->Arg(128)->Arg(512)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_NormalsSerial)->Arg(128)->Arg(512)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_NormalsOpenMP)->Arg(128)->Arg(512)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BuildMesh)->Arg(128)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
