#include "capregion/rayleigh.hpp"

#include <omp.h>

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

#include "capregion/errors.hpp"

namespace capregion {
namespace {

constexpr double kQuadratureTolerance = 1e-12;
constexpr double kPowerTolerance = 1e-6;

void check_waterfill_inputs(std::size_t n, double alpha, double r_min) {
  if (n < 9) {
    throw HypothesisViolation("Rayleigh outer bound requires n >= 9, got n = " +
                              std::to_string(n));
  }
  validate_alpha(alpha);
  if (!(r_min > 0.0) || r_min > r_min_ceiling()) {
    throw InvalidInput("r_min must lie in (0, 4/sqrt(pi)]");
  }
}

// Density of the sum of k unit-mean exponentials.
double erlang_density(double gamma, std::size_t k, double log_norm) {
  if (gamma <= 0.0) return 0.0;
  return std::exp((static_cast<double>(k) - 1.0) * std::log(gamma) - gamma - log_norm);
}

// Integral of f(gamma) * erlang_density over [lower, inf), split at the mode
// so every panel the quadrature sees is unimodal.
template <typename F>
double erlang_expectation(std::size_t n, double lower, F&& f) {
  using boost::math::quadrature::gauss_kronrod;
  const std::size_t k = n - 1;
  const double log_norm = std::lgamma(static_cast<double>(k));
  auto integrand = [&](double g) { return f(g) * erlang_density(g, k, log_norm); };
  const double mode = static_cast<double>(k) - 1.0;
  const double spread = std::sqrt(static_cast<double>(k));
  const double upper = std::max(lower, mode) + 60.0 * spread + 60.0;
  double total = 0.0;
  double a = lower;
  for (double cut : {mode - 8.0 * spread, mode, mode + 8.0 * spread, upper}) {
    if (cut <= a) continue;
    total += gauss_kronrod<double, 61>::integrate(integrand, a, cut, 20,
                                                  kQuadratureTolerance);
    a = cut;
  }
  return total;
}

// Edmonds' blossom algorithm, O(V^3).
class BlossomMatcher {
 public:
  BlossomMatcher(std::span<const Edge> edges, std::size_t n)
      : n_(n), adj_(n), mate_(n, kNone), parent_(n), base_(n), used_(n), blossom_(n) {
    for (const auto& e : edges) {
      if (e.a >= n || e.b >= n) throw InvalidInput("edge endpoint out of range");
      if (e.a == e.b) continue;
      adj_[e.a].push_back(e.b);
      adj_[e.b].push_back(e.a);
    }
  }

  std::vector<Edge> solve() {
    // Greedy start, then grow from every exposed vertex.
    for (NodeIndex v = 0; v < n_; ++v) {
      if (mate_[v] != kNone) continue;
      for (NodeIndex u : adj_[v]) {
        if (mate_[u] == kNone) {
          mate_[u] = v;
          mate_[v] = u;
          break;
        }
      }
    }
    for (NodeIndex root = 0; root < n_; ++root) {
      if (mate_[root] != kNone) continue;
      NodeIndex v = find_path(root);
      while (v != kNone) {
        const NodeIndex pv = parent_[v];
        const NodeIndex next = mate_[pv];
        mate_[v] = pv;
        mate_[pv] = v;
        v = next;
      }
    }
    std::vector<Edge> out;
    for (NodeIndex v = 0; v < n_; ++v) {
      if (mate_[v] != kNone && v < mate_[v]) out.push_back({v, mate_[v]});
    }
    return out;
  }

 private:
  static constexpr NodeIndex kNone = std::numeric_limits<NodeIndex>::max();

  NodeIndex lowest_common_base(NodeIndex a, NodeIndex b) {
    std::vector<bool> seen(n_, false);
    for (;;) {
      a = base_[a];
      seen[a] = true;
      if (mate_[a] == kNone) break;
      a = parent_[mate_[a]];
    }
    for (;;) {
      b = base_[b];
      if (seen[b]) return b;
      b = parent_[mate_[b]];
    }
  }

  void mark_path(NodeIndex v, NodeIndex b, NodeIndex child) {
    while (base_[v] != b) {
      blossom_[base_[v]] = blossom_[base_[mate_[v]]] = true;
      parent_[v] = child;
      child = mate_[v];
      v = parent_[mate_[v]];
    }
  }

  NodeIndex find_path(NodeIndex root) {
    std::fill(used_.begin(), used_.end(), false);
    std::fill(parent_.begin(), parent_.end(), kNone);
    for (NodeIndex i = 0; i < n_; ++i) base_[i] = i;
    used_[root] = true;
    std::queue<NodeIndex> q;
    q.push(root);
    while (!q.empty()) {
      const NodeIndex v = q.front();
      q.pop();
      for (NodeIndex to : adj_[v]) {
        if (base_[v] == base_[to] || mate_[v] == to) continue;
        if (to == root || (mate_[to] != kNone && parent_[mate_[to]] != kNone)) {
          // Odd cycle: contract it into its base.
          const NodeIndex b = lowest_common_base(v, to);
          std::fill(blossom_.begin(), blossom_.end(), false);
          mark_path(v, b, to);
          mark_path(to, b, v);
          for (NodeIndex i = 0; i < n_; ++i) {
            if (blossom_[base_[i]]) {
              base_[i] = b;
              if (!used_[i]) {
                used_[i] = true;
                q.push(i);
              }
            }
          }
        } else if (parent_[to] == kNone) {
          parent_[to] = v;
          if (mate_[to] == kNone) return to;
          used_[mate_[to]] = true;
          q.push(mate_[to]);
        }
      }
    }
    return kNone;
  }

  std::size_t n_;
  std::vector<std::vector<NodeIndex>> adj_;
  std::vector<NodeIndex> mate_;
  std::vector<NodeIndex> parent_;
  std::vector<NodeIndex> base_;
  std::vector<bool> used_;
  std::vector<bool> blossom_;
};

}  // namespace

double erlang_tail(std::size_t n, double gamma) {
  if (n < 2) throw InvalidInput("Erlang tail needs n >= 2");
  if (!(gamma >= 0.0)) throw InvalidInput("Erlang tail needs gamma >= 0");
  if (gamma == 0.0) return 1.0;
  if (std::isinf(gamma)) return 0.0;
  // Poisson(gamma) cdf at n-2, summed in log space to survive large gamma.
  const double log_gamma = std::log(gamma);
  double sum = 0.0;
  for (std::size_t i = 0; i + 2 <= n; ++i) {
    const double di = static_cast<double>(i);
    sum += std::exp(di * log_gamma - gamma - std::lgamma(di + 1.0));
  }
  return std::min(sum, 1.0);
}

double waterfill_gain_scale(std::size_t n, double alpha, double r_min) {
  return std::pow(static_cast<double>(n), alpha / 2.0) * std::pow(r_min, -alpha);
}

double waterfill_power(double g, double g0, double scale) {
  if (!(g > 0.0)) return 0.0;
  return std::max(0.0, 1.0 / g0 - 1.0 / (scale * g));
}

double waterfill_expected_power(std::size_t n, double alpha, double r_min, double g0) {
  check_waterfill_inputs(n, alpha, r_min);
  if (!(g0 > 0.0)) throw InvalidInput("water level g0 must be positive");
  const double scale = waterfill_gain_scale(n, alpha, r_min);
  return erlang_expectation(n, g0 / scale,
                            [&](double g) { return waterfill_power(g, g0, scale); });
}

WaterfillSolution solve_waterfill(std::size_t n, double alpha, double r_min) {
  check_waterfill_inputs(n, alpha, r_min);
  const double target = static_cast<double>(n - 1);
  double lo = 1.0 / (8.0 * target);
  double hi = static_cast<double>(n);
  auto power = [&](double g0) { return waterfill_expected_power(n, alpha, r_min, g0); };
  // Expected power falls as the water level g0 rises.
  if (power(lo) < target || power(hi) > target) {
    throw Error("water-filling bracket [1/(8(n-1)), n] does not contain the solution");
  }
  for (int it = 0; it < 200 && hi / lo - 1.0 > 1e-15; ++it) {
    const double mid = std::sqrt(lo * hi);
    (power(mid) > target ? lo : hi) = mid;
  }
  WaterfillSolution s;
  s.g0 = 0.5 * (lo + hi);
  s.gain_scale = waterfill_gain_scale(n, alpha, r_min);
  s.expected_power = power(s.g0);
  if (std::abs(s.expected_power - target) > kPowerTolerance) {
    throw Error("water-filling bisection did not meet the power constraint");
  }
  const double scale = s.gain_scale;
  const double g0 = s.g0;
  // Where P* > 0, 1 + P* scale g = scale g / g0.
  s.bound_bits = erlang_expectation(n, g0 / scale, [&](double g) {
    return std::max(0.0, std::log2(scale * g / g0));
  });
  const double dn = static_cast<double>(n);
  s.jensen_bits = std::log2(1.0 + std::pow(dn, 1.0 + alpha / 2.0) *
                                      std::pow(r_min, -alpha) / g0);
  s.outer_limit_bits = rayleigh_outer_factor(n, alpha, r_min);
  return s;
}

double rayleigh_outer_factor(std::size_t n, double alpha, double r_min) {
  check_waterfill_inputs(n, alpha, r_min);
  return 2.0 + (2.0 + alpha / 2.0) * std::log2(static_cast<double>(n)) -
         alpha * std::log2(r_min);
}

double edge_probability(std::size_t n) {
  return 1.0 / std::sqrt(static_cast<double>(n));
}

std::vector<Edge> slot_graph(const NodePlacement& p, double alpha,
                             const ChannelMatrix& gains, Exec exec) {
  validate_alpha(alpha);
  const std::size_t n = p.size();
  if (gains.rows() != n || !gains.square()) {
    throw InvalidInput("gain matrix does not match the placement");
  }
  const double level = std::log(1.0 / edge_probability(n));
  std::vector<std::vector<Edge>> rows(n);
  auto scan_row = [&](NodeIndex u) {
    for (NodeIndex v = u + 1; v < n; ++v) {
      const double threshold = level * std::pow(p.distance(u, v), -alpha);
      if (std::max(std::norm(gains(u, v)), std::norm(gains(v, u))) >= threshold) {
        rows[u].push_back({u, v});
      }
    }
  };
  const auto signed_n = static_cast<std::ptrdiff_t>(n);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 8) num_threads(kernels::max_threads())
    for (std::ptrdiff_t u = 0; u < signed_n; ++u) scan_row(u);
  } else {
    for (std::ptrdiff_t u = 0; u < signed_n; ++u) scan_row(u);
  }
  std::vector<Edge> edges;
  for (auto& r : rows) edges.insert(edges.end(), r.begin(), r.end());
  return edges;
}

std::vector<Edge> max_matching(std::span<const Edge> edges, std::size_t n) {
  return BlossomMatcher(edges, n).solve();
}

SlotPlan plan_slot(const NodePlacement& p, double alpha, const ChannelMatrix& gains,
                   std::uint64_t slot, Exec exec) {
  const std::size_t n = p.size();
  SlotPlan plan;
  plan.slot = slot;
  plan.graph = slot_graph(p, alpha, gains, exec);
  plan.matching = max_matching(plan.graph, n);
  plan.rate_floor =
      0.5 * std::log2(1.0 + std::exp2(-alpha / 2.0) * std::log(static_cast<double>(n)));
  plan.idle = 2 * plan.matching.size() + 1 < n;
  if (plan.idle) return plan;
  for (const auto& e : plan.matching) {
    const double forward = std::norm(gains(e.a, e.b));
    const double backward = std::norm(gains(e.b, e.a));
    // Ties go to the lower index, which is e.a.
    OrientedPair op = forward >= backward ? OrientedPair{e.a, e.b, forward, 0.0}
                                          : OrientedPair{e.b, e.a, backward, 0.0};
    op.rate = 0.5 * std::log2(1.0 + 2.0 * op.gain);
    plan.pairs.push_back(op);
  }
  return plan;
}

SlotPlan opportunistic_round(const NodePlacement& p, double alpha,
                             std::uint64_t seed, std::uint64_t t, Exec exec) {
  const auto gains = sample_channel(p, make_channel_params(alpha, Fading::Rayleigh),
                                    seed, t, exec);
  return plan_slot(p, alpha, gains, t, exec);
}

RayleighInnerRate rayleigh_inner_rate(std::size_t n, double alpha) {
  validate_alpha(alpha);
  if (n < 3) throw HypothesisViolation("Rayleigh inner rate needs n >= 3");
  const double bracket = std::log2(std::log2(static_cast<double>(n))) - alpha / 2.0 -
                         std::log2(std::numbers::log2e);
  if (!(bracket > 0.0)) {
    throw HypothesisViolation("log2 log2 n must exceed alpha/2 + log2 log2 e for n = " +
                              std::to_string(n));
  }
  return {bracket / (8.0 * static_cast<double>(n)), bracket / 16.0};
}

OpportunisticSummary simulate_opportunistic(const NodePlacement& p, double alpha,
                                            std::uint64_t slots, std::uint64_t seed,
                                            Exec exec) {
  validate_alpha(alpha);
  const std::size_t n = p.size();
  struct SlotResult {
    bool idle = true;
    std::size_t matched = 0;
    std::vector<OrientedPair> pairs;
  };
  std::vector<SlotResult> results(slots);
  auto run = [&](std::uint64_t t) {
    // Parallelism lives at the slot level; each round runs serially.
    auto plan = opportunistic_round(p, alpha, seed, t, Exec::Serial);
    results[t] = {plan.idle, 2 * plan.matching.size(), std::move(plan.pairs)};
  };
  const auto signed_slots = static_cast<std::ptrdiff_t>(slots);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 4) num_threads(kernels::max_threads())
    for (std::ptrdiff_t t = 0; t < signed_slots; ++t) run(t);
  } else {
    for (std::ptrdiff_t t = 0; t < signed_slots; ++t) run(t);
  }

  OpportunisticSummary s;
  s.slots = slots;
  s.rate_floor =
      0.5 * std::log2(1.0 + std::exp2(-alpha / 2.0) * std::log(static_cast<double>(n)));
  s.min_pair_rate = std::numeric_limits<double>::infinity();
  DenseMatrix<std::uint64_t> activity(n, n, 0);
  double coverage = 0.0;
  for (const auto& r : results) {
    coverage += static_cast<double>(r.matched) / static_cast<double>(n);
    if (r.idle) {
      ++s.idle_slots;
      continue;
    }
    for (const auto& op : r.pairs) {
      s.min_pair_rate = std::min(s.min_pair_rate, op.rate);
      ++activity(op.source, op.destination);
    }
  }
  if (slots > 0) {
    s.idle_fraction = static_cast<double>(s.idle_slots) / static_cast<double>(slots);
    s.mean_coverage = coverage / static_cast<double>(slots);
    std::uint64_t lo = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t hi = 0;
    for (NodeIndex u = 0; u < n; ++u) {
      for (NodeIndex v = 0; v < n; ++v) {
        if (u == v) continue;
        lo = std::min(lo, activity(u, v));
        hi = std::max(hi, activity(u, v));
      }
    }
    s.min_pair_share = static_cast<double>(lo) / static_cast<double>(slots);
    s.max_pair_share = static_cast<double>(hi) / static_cast<double>(slots);
  }
  return s;
}

}  // namespace capregion
