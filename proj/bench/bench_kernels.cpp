// Serial reference vs OpenMP kernels. Run with CAPREGION_THREADS unset to
// use every core, or cap the team via kernels::set_max_threads.

#include <benchmark/benchmark.h>

#include "capregion/bounds.hpp"
#include "capregion/bvn_scheduler.hpp"
#include "capregion/kernels.hpp"
#include "capregion/network_model.hpp"
#include "capregion/rayleigh.hpp"

using namespace capregion;

namespace {

template <bool Parallel>
void BM_InversePowerSums(benchmark::State& state) {
  const auto p = uniform_random_placement(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) {
    auto s = Parallel ? kernels::inverse_power_sums(p.nodes(), 3.0)
                      : kernels::serial::inverse_power_sums(p.nodes(), 3.0);
    benchmark::DoNotOptimize(s.data());
  }
}

template <bool Parallel>
void BM_MinPairDistance(benchmark::State& state) {
  const auto p = uniform_random_placement(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::min_pair_distance(p.nodes())
                                      : kernels::serial::min_pair_distance(p.nodes()));
  }
}

template <bool Parallel>
void BM_RayleighGains(benchmark::State& state) {
  const auto p = uniform_random_placement(static_cast<std::size_t>(state.range(0)), 3);
  std::uint64_t slot = 0;
  for (auto _ : state) {
    auto h = Parallel ? kernels::rayleigh_gains(p.nodes(), 2.0, 7, slot++)
                      : kernels::serial::rayleigh_gains(p.nodes(), 2.0, 7, slot++);
    benchmark::DoNotOptimize(h.data().data());
  }
}

template <bool Parallel>
void BM_OpportunisticSlots(benchmark::State& state) {
  const auto p = uniform_random_placement(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) {
    auto s = simulate_opportunistic(p, 2.0, 32, 9, Parallel ? Exec::Parallel : Exec::Serial);
    benchmark::DoNotOptimize(s.idle_slots);
  }
}

void BM_Birkhoff(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  DenseMatrix<double> m(n, n, 0.0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t u = 0; u < n; ++u) m(u, (u * (k + 1) + k) % n) += 1.0;
  // Row and column sums of the integer matrix are not uniform in general;
  // normalize with a few Sinkhorn passes, then finish with a completion.
  for (int it = 0; it < 50; ++it) {
    for (std::size_t u = 0; u < n; ++u) {
      double s = 0.0;
      for (std::size_t w = 0; w < n; ++w) s += m(u, w);
      for (std::size_t w = 0; w < n; ++w) m(u, w) /= s;
    }
    for (std::size_t w = 0; w < n; ++w) {
      double s = 0.0;
      for (std::size_t u = 0; u < n; ++u) s += m(u, w);
      for (std::size_t u = 0; u < n; ++u) m(u, w) /= s;
    }
  }
  DenseMatrix<double> sub = m;
  for (auto& x : sub.data()) x *= 0.999;
  for (std::size_t u = 0; u < n; ++u) sub(u, u) = 0.0;
  const auto ds = complete_to_doubly_stochastic(UnicastTraffic(sub));
  for (auto _ : state) {
    auto d = birkhoff_decompose(ds);
    benchmark::DoNotOptimize(d.weights.data());
  }
}

}  // namespace

BENCHMARK_TEMPLATE(BM_InversePowerSums, false)->Arg(1000)->Arg(4000);
BENCHMARK_TEMPLATE(BM_InversePowerSums, true)->Arg(1000)->Arg(4000);
BENCHMARK_TEMPLATE(BM_MinPairDistance, false)->Arg(4000);
BENCHMARK_TEMPLATE(BM_MinPairDistance, true)->Arg(4000)->Arg(100000);
BENCHMARK_TEMPLATE(BM_RayleighGains, false)->Arg(500);
BENCHMARK_TEMPLATE(BM_RayleighGains, true)->Arg(500);
BENCHMARK_TEMPLATE(BM_OpportunisticSlots, false)->Arg(100);
BENCHMARK_TEMPLATE(BM_OpportunisticSlots, true)->Arg(100);
BENCHMARK(BM_Birkhoff)->Arg(32)->Arg(64);

BENCHMARK_MAIN();
