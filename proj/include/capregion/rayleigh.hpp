#pragma once

// Rayleigh fading: the water-filling outer bound on single-node cuts and the
// opportunistic-matching inner bound.

#include <cstdint>
#include <span>
#include <vector>

#include "capregion/kernels.hpp"
#include "capregion/network_model.hpp"

namespace capregion {

// P(g >= gamma) for g the sum of n-1 unit-mean exponentials (Erlang).
double erlang_tail(std::size_t n, double gamma);

// Power scale n^{alpha/2} r_min^{-alpha} that dominates every link gain.
double waterfill_gain_scale(std::size_t n, double alpha, double r_min);
// P*(g) = (1/g0 - 1/(scale g))^+
double waterfill_power(double g, double g0, double scale);
// E[P*(g)] by adaptive Gauss-Kronrod quadrature against the Erlang density.
double waterfill_expected_power(std::size_t n, double alpha, double r_min, double g0);

struct WaterfillSolution {
  double g0 = 0.0;
  double expected_power = 0.0;  // n - 1 at the solution
  double gain_scale = 0.0;
  // E log2(1 + P*(g) scale g): the water-filled cut capacity.
  double bound_bits = 0.0;
  // Jensen relaxation log2(1 + n^{1+alpha/2} r_min^{-alpha} / g0).
  double jensen_bits = 0.0;
  // log2(4 n^{2+alpha/2} r_min^{-alpha})
  double outer_limit_bits = 0.0;
};

// Bisection for g0 on [1/(8(n-1)), n]. Requires n >= 9.
WaterfillSolution solve_waterfill(std::size_t n, double alpha, double r_min);

// log2(4 n^{2+alpha/2} r_min^{-alpha}); requires n >= 9.
double rayleigh_outer_factor(std::size_t n, double alpha, double r_min);

// p(n) = 1/sqrt(n)
double edge_probability(std::size_t n);

struct Edge {
  NodeIndex a = 0;  // a < b
  NodeIndex b = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Undirected edge (u, v) iff max(|h_uv|^2, |h_vu|^2) >= ln(1/p(n)) r_uv^{-alpha}.
std::vector<Edge> slot_graph(const NodePlacement& p, double alpha,
                             const ChannelMatrix& gains, Exec exec = Exec::Serial);

// Maximum-cardinality matching on a general graph (Edmonds' blossom
// algorithm). Pairs come back with a < b, sorted.
std::vector<Edge> max_matching(std::span<const Edge> edges, std::size_t n);

struct OrientedPair {
  NodeIndex source = 0;
  NodeIndex destination = 0;
  double gain = 0.0;  // |h_{source,destination}|^2
  double rate = 0.0;  // (1/2) log2(1 + 2 gain)
};

struct SlotPlan {
  std::uint64_t slot = 0;
  std::vector<Edge> graph;
  std::vector<Edge> matching;
  // Idle when the matching covers fewer than n-1 nodes.
  bool idle = true;
  std::vector<OrientedPair> pairs;
  // (1/2) log2(1 + 2^{-alpha/2} ln n), certified for every active pair.
  double rate_floor = 0.0;
};

// Graph, matching and orientation for one slot of given gains.
SlotPlan plan_slot(const NodePlacement& p, double alpha, const ChannelMatrix& gains,
                   std::uint64_t slot, Exec exec = Exec::Serial);

// plan_slot on the Rayleigh gains drawn for (seed, t).
SlotPlan opportunistic_round(const NodePlacement& p, double alpha,
                             std::uint64_t seed, std::uint64_t t,
                             Exec exec = Exec::Parallel);

struct RayleighInnerRate {
  double per_pair_floor = 0.0;   // (1/(8n)) (log2 log2 n - alpha/2 - log2 log2 e)
  double region_multiple = 0.0;  // (1/16) (...)
};

// Throws HypothesisViolation when the bracket is not positive.
RayleighInnerRate rayleigh_inner_rate(std::size_t n, double alpha);

struct OpportunisticSummary {
  std::uint64_t slots = 0;
  std::uint64_t idle_slots = 0;
  double idle_fraction = 0.0;
  double mean_coverage = 0.0;  // matched vertices / n, averaged over slots
  double rate_floor = 0.0;
  // Smallest certified pair rate seen in an active slot (+inf if none).
  double min_pair_rate = 0.0;
  // Share of slots in which each ordered pair was scheduled; min and max
  // over all n(n-1) pairs (fairness is reported, not guaranteed).
  double min_pair_share = 0.0;
  double max_pair_share = 0.0;
};

// Rounds run independently per slot; the reduction is in slot order.
OpportunisticSummary simulate_opportunistic(const NodePlacement& p, double alpha,
                                            std::uint64_t slots, std::uint64_t seed,
                                            Exec exec = Exec::Parallel);

}  // namespace capregion
