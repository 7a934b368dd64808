#include <benchmark/benchmark.h>

#include "fspectra/assembly.hpp"
#include "fspectra/immersion.hpp"
#include "fspectra/mesh.hpp"
#include "fspectra/spectral.hpp"
#include "fspectra/theorem.hpp"

namespace {

using namespace fspectra;

OperatorAssembly slice_assembly(int subdiv) {
  const auto cyl = AmbientSpace::sphere_cylinder(2, 1, 1.0);
  const auto s = slice_sphere(cyl);
  return assemble_hodge1(attach(icosphere(subdiv), *s), *s);
}

void BM_Eigensolve(benchmark::State& state) {
  const OperatorAssembly as = slice_assembly(static_cast<int>(state.range(0)));
  SolverOptions opts;
  opts.method = state.range(1) == 0 ? SolverMethod::kDense : SolverMethod::kShiftInvert;
  for (auto _ : state) benchmark::DoNotOptimize(eigensolve(as, 16, opts));
  state.SetLabel(state.range(1) == 0 ? "dense" : "shift-invert");
}
BENCHMARK(BM_Eigensolve)
    ->Args({3, 0})
    ->Args({3, 1})
    ->Args({4, 1})
    ->Args({5, 1})
    ->Unit(benchmark::kMillisecond);

void BM_HarmonicBasisTorus(benchmark::State& state) {
  const auto g = AmbientSpace::gaussian(3, 1.0);
  const TorusOfRevolution torus(g, 2.0, 0.7);
  const int n = static_cast<int>(state.range(0));
  const OperatorAssembly as =
      assemble_hodge1(torus_grid(n, n / 2, [&](double u, double v) { return torus.position(u, v); }), torus);
  for (auto _ : state) benchmark::DoNotOptimize(harmonic_basis(as));
}
BENCHMARK(BM_HarmonicBasisTorus)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);

void BM_HypothesisProduct(benchmark::State& state) {
  const auto a = AmbientSpace::sphere_cylinder(2, 2, 1.0);
  const auto imm = sphere_round_product(a, 1.0);
  const auto form = circle_form(imm);
  const Quadrature quad = product_quadrature(*imm, static_cast<int>(state.range(0)), 128);
  for (auto _ : state) benchmark::DoNotOptimize(hypothesis_check(hypothesis_input(*imm, {form}, quad), 0.0));
}
BENCHMARK(BM_HypothesisProduct)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace
