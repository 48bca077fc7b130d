#include <benchmark/benchmark.h>

#include "gdnls/functionals.hpp"
#include "gdnls/linearized.hpp"
#include "gdnls/moments.hpp"
#include "gdnls/simulator.hpp"
#include "gdnls/spectral.hpp"

using namespace gdnls;

namespace {

const Sigma kSigma(1.8);
const Omega kOmega{1.0, -1.1797};  // close to the degenerate point

void BM_FSigma(benchmark::State& state) {
  double z = -0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f_sigma(kSigma, z));
    z = z > 0.9 ? -0.5 : z + 1e-3;
  }
}
BENCHMARK(BM_FSigma);

void BM_AlphaMoments(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(alpha_moments(kSigma, kOmega));
}
BENCHMARK(BM_AlphaMoments);

void BM_HessianClosed(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(hessian_closed(kSigma, kOmega));
}
BENCHMARK(BM_HessianClosed);

void BM_DValue(benchmark::State& state) {
  const Grid g = oracle_grid(kSigma, kOmega);
  for (auto _ : state) benchmark::DoNotOptimize(d_value(kSigma, kOmega, g));
}
BENCHMARK(BM_DValue);

void BM_IntegratorStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Grid g(default_grid(kSigma, kOmega).length(), n);
  const auto p = sample_profile(kSigma, kOmega, g);
  Integrator integ(kSigma, g, 1e-3);
  cvec hat = Spectral(g).forward(p.field.values);
  for (auto _ : state) integ.advance(hat);
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_IntegratorStep)->Arg(256)->Arg(1024)->Arg(4096);

void BM_OrbitalDistance(benchmark::State& state) {
  const auto p = sample_profile(kSigma, kOmega, default_grid(kSigma, kOmega));
  const Spectral sp(p.grid);
  const auto u = std::polar(1.0, 0.3) * sp.shift(p.field, 1.7);
  for (auto _ : state) benchmark::DoNotOptimize(orbital_distance(u, p));
}
BENCHMARK(BM_OrbitalDistance);

void BM_Assemble(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = sample_profile(kSigma, kOmega, Grid(default_grid(kSigma, kOmega).length(), n));
  for (auto _ : state) benchmark::DoNotOptimize(assemble(p));
}
BENCHMARK(BM_Assemble)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
