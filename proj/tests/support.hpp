#pragma once

// Generators and brute-force oracles shared by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "capregion/bvn_scheduler.hpp"
#include "capregion/network_model.hpp"
#include "capregion/rayleigh.hpp"
#include "capregion/traffic.hpp"

namespace capregion::testing {

inline std::mt19937_64 test_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline std::size_t uniform_size(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::vector<NodeIndex> random_permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<NodeIndex> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// Convex combination of k random permutation matrices.
inline DenseMatrix<double> random_doubly_stochastic(std::mt19937_64& rng, std::size_t n,
                                                    std::size_t k) {
  std::vector<double> w(k);
  std::exponential_distribution<double> expo(1.0);
  for (auto& x : w) x = expo(rng);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  DenseMatrix<double> m(n, n, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    const auto p = random_permutation(rng, n);
    for (std::size_t u = 0; u < n; ++u) m(u, p[u]) += w[i] / total;
  }
  return m;
}

// Dense-ish random unicast traffic with a random sparsity pattern.
inline UnicastTraffic random_unicast(std::mt19937_64& rng, std::size_t n, double density) {
  DenseMatrix<double> r(n, n, 0.0);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t w = 0; w < n; ++w)
      if (u != w && uniform_real(rng, 0.0, 1.0) < density) r(u, w) = uniform_real(rng, 0.0, 1.0);
  // Keep at least one nonzero entry.
  if (n >= 2 && std::all_of(r.data().begin(), r.data().end(), [](double x) { return x == 0.0; }))
    r(0, 1) = 0.5;
  return UnicastTraffic(std::move(r));
}

// Sparse multicast traffic: `entries` random (source, destination set) pairs.
inline MulticastTraffic random_multicast(std::mt19937_64& rng, std::size_t n,
                                         std::size_t entries, double max_rate) {
  std::vector<MulticastEntry> out;
  for (std::size_t i = 0; i < entries; ++i) {
    MulticastEntry e;
    e.source = uniform_size(rng, 0, n - 1);
    const std::size_t size = uniform_size(rng, 1, std::min<std::size_t>(n - 1, 4));
    while (e.destinations.size() < size) {
      const NodeIndex w = uniform_size(rng, 0, n - 1);
      if (w != e.source && std::find(e.destinations.begin(), e.destinations.end(), w) ==
                               e.destinations.end())
        e.destinations.push_back(w);
    }
    e.rate = uniform_real(rng, 0.0, max_rate);
    out.push_back(std::move(e));
  }
  return MulticastTraffic(n, std::move(out));
}

// Largest row/column sum, computed directly from the definition.
inline double brute_max_load_uc(const UnicastTraffic& t) {
  double best = 0.0;
  const std::size_t n = t.size();
  for (std::size_t a = 0; a < n; ++a) {
    double row = 0.0, col = 0.0;
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      row += t.rate(a, b);
      col += t.rate(b, a);
    }
    best = std::max({best, row, col});
  }
  return best;
}

inline double brute_max_load_mc(const MulticastTraffic& t) {
  std::vector<double> src(t.size(), 0.0), dst(t.size(), 0.0);
  for (const auto& e : t.entries()) {
    src[e.source] += e.rate;
    for (NodeIndex w : e.destinations)
      if (w != e.source) dst[w] += e.rate;
  }
  return std::max(*std::max_element(src.begin(), src.end()),
                  *std::max_element(dst.begin(), dst.end()));
}

// Maximum matching size by exhaustive recursion; fine for n <= 12.
inline std::size_t exhaustive_matching_size(const std::vector<Edge>& edges, std::size_t n) {
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (const auto& e : edges) adj[e.a][e.b] = adj[e.b][e.a] = true;
  std::vector<bool> used(n, false);
  std::function<std::size_t(std::size_t)> best = [&](std::size_t v) -> std::size_t {
    while (v < n && used[v]) ++v;
    if (v >= n) return 0;
    used[v] = true;
    std::size_t result = best(v + 1);  // leave v unmatched
    for (std::size_t u = v + 1; u < n; ++u) {
      if (!used[u] && adj[v][u]) {
        used[u] = true;
        result = std::max(result, 1 + best(v + 1));
        used[u] = false;
      }
    }
    used[v] = false;
    return result;
  };
  return best(0);
}

inline std::vector<Edge> random_graph(std::mt19937_64& rng, std::size_t n, double p) {
  std::vector<Edge> edges;
  for (NodeIndex a = 0; a < n; ++a)
    for (NodeIndex b = a + 1; b < n; ++b)
      if (uniform_real(rng, 0.0, 1.0) < p) edges.push_back({a, b});
  return edges;
}

inline bool is_valid_matching(const std::vector<Edge>& matching, const std::vector<Edge>& edges,
                              std::size_t n) {
  std::vector<bool> seen(n, false);
  for (const auto& m : matching) {
    if (m.a >= m.b || m.b >= n) return false;
    if (seen[m.a] || seen[m.b]) return false;
    seen[m.a] = seen[m.b] = true;
    if (std::find(edges.begin(), edges.end(), m) == edges.end()) return false;
  }
  return true;
}

inline double max_abs_diff(const DenseMatrix<double>& a, const DenseMatrix<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  return worst;
}

inline bool is_permutation_of_n(const Permutation& p, std::size_t n) {
  if (p.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (NodeIndex v : p) {
    if (v >= n || hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

}  // namespace capregion::testing
