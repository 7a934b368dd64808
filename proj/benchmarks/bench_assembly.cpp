#include <benchmark/benchmark.h>

#include <cmath>

#include "fspectra/assembly.hpp"
#include "fspectra/immersion.hpp"
#include "fspectra/mesh.hpp"

namespace {

using namespace fspectra;

void BM_Icosphere(benchmark::State& state) {
  const int subdiv = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(icosphere(subdiv));
}
BENCHMARK(BM_Icosphere)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_AssembleShrinker(benchmark::State& state) {
  const auto g = AmbientSpace::gaussian(3, 1.0);
  const auto s = shrinker_sphere(g, std::sqrt(2.0));
  const SurfaceMesh mesh = attach(icosphere(static_cast<int>(state.range(0))), *s);
  for (auto _ : state) benchmark::DoNotOptimize(assemble(mesh, *s));
  state.counters["vertices"] = mesh.num_vertices();
}
BENCHMARK(BM_AssembleShrinker)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_AssembleTorusHodge(benchmark::State& state) {
  const auto g = AmbientSpace::gaussian(3, 1.0);
  const TorusOfRevolution torus(g, 2.0, 0.7);
  const int n = static_cast<int>(state.range(0));
  const SurfaceMesh mesh = torus_grid(n, n / 2, [&](double u, double v) { return torus.position(u, v); });
  for (auto _ : state) benchmark::DoNotOptimize(assemble_hodge1(mesh, torus));
  state.counters["edges"] = mesh.num_edges();
}
BENCHMARK(BM_AssembleTorusHodge)->Arg(24)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);

}  // namespace
