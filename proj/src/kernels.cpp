#include "capregion/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "capregion/random.hpp"

namespace capregion::kernels {
namespace {

int g_thread_cap = 0;

int team_size() { return g_thread_cap > 0 ? g_thread_cap : omp_get_max_threads(); }

double path_gain(const Point& a, const Point& b, double alpha) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::pow(dx * dx + dy * dy, -alpha / 2.0);
}

// One transmitter row of the channel matrix. Each row owns its generator,
// which is what makes the parallel and serial kernels agree bit for bit.
void fill_phase_row(std::span<const Point> nodes, double alpha,
                    std::uint64_t seed, std::uint64_t slot, std::size_t u,
                    std::span<std::complex<double>> row) {
  auto rng = make_rng(seed, Stream::Channel, slot, u);
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    if (v == u) {
      row[v] = 0.0;
      continue;
    }
    const double theta = 2.0 * std::numbers::pi * uniform01(rng);
    row[v] = std::polar(std::sqrt(path_gain(nodes[u], nodes[v], alpha)), theta);
  }
}

void fill_rayleigh_row(std::span<const Point> nodes, double alpha,
                       std::uint64_t seed, std::uint64_t slot, std::size_t u,
                       std::span<std::complex<double>> row) {
  auto rng = make_rng(seed, Stream::Channel, slot, u);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    if (v == u) {
      row[v] = 0.0;
      continue;
    }
    const double re = normal(rng);
    const double im = normal(rng);
    const double scale = std::sqrt(path_gain(nodes[u], nodes[v], alpha) / 2.0);
    row[v] = {scale * re, scale * im};
  }
}

double min_distance_bruteforce_parallel(std::span<const Point> nodes) {
  const auto n = static_cast<std::ptrdiff_t>(nodes.size());
  double best = std::numeric_limits<double>::infinity();
#pragma omp parallel for reduction(min : best) schedule(dynamic, 16) num_threads(team_size())
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    for (std::ptrdiff_t j = i + 1; j < n; ++j) {
      best = std::min(best, euclidean(nodes[i], nodes[j]));
    }
  }
  return best;
}

}  // namespace

void set_max_threads(int threads) { g_thread_cap = std::max(threads, 0); }
int max_threads() { return team_size(); }

DenseMatrix<double> distance_matrix(std::span<const Point> nodes) {
  const auto n = static_cast<std::ptrdiff_t>(nodes.size());
  DenseMatrix<double> d(nodes.size(), nodes.size(), 0.0);
#pragma omp parallel for schedule(static) num_threads(team_size())
  for (std::ptrdiff_t u = 0; u < n; ++u) {
    for (std::ptrdiff_t v = 0; v < n; ++v) {
      d(u, v) = u == v ? 0.0 : euclidean(nodes[u], nodes[v]);
    }
  }
  return d;
}

double min_pair_distance(std::span<const Point> nodes) {
  const std::size_t n = nodes.size();
  if (n < 2) return std::numeric_limits<double>::infinity();
  if (n <= 256) return min_distance_bruteforce_parallel(nodes);

  // k*k < n cells on the unit square: some cell holds two points, so the
  // closest pair is at most sqrt(2)/k apart and a 5x5 cell neighbourhood
  // (reach 2/k) sees it.
  const auto k = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n - 1))));
  const double cell = 1.0 / static_cast<double>(k);
  auto cell_of = [&](double c) {
    const auto i = static_cast<std::ptrdiff_t>(std::floor(c / cell));
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(k) - 1));
  };

  std::vector<std::size_t> start(k * k + 1, 0);
  std::vector<std::size_t> cell_index(n);
  for (std::size_t i = 0; i < n; ++i) {
    cell_index[i] = cell_of(nodes[i].y) * k + cell_of(nodes[i].x);
    ++start[cell_index[i] + 1];
  }
  for (std::size_t c = 0; c < k * k; ++c) start[c + 1] += start[c];
  std::vector<std::size_t> members(n);
  {
    auto fill = start;
    for (std::size_t i = 0; i < n; ++i) members[fill[cell_index[i]]++] = i;
  }

  double best = std::numeric_limits<double>::infinity();
  const auto signed_n = static_cast<std::ptrdiff_t>(n);
  const auto signed_k = static_cast<std::ptrdiff_t>(k);
#pragma omp parallel for reduction(min : best) schedule(static) num_threads(team_size())
  for (std::ptrdiff_t i = 0; i < signed_n; ++i) {
    const auto cx = static_cast<std::ptrdiff_t>(cell_index[i] % k);
    const auto cy = static_cast<std::ptrdiff_t>(cell_index[i] / k);
    for (std::ptrdiff_t dy = -2; dy <= 2; ++dy) {
      for (std::ptrdiff_t dx = -2; dx <= 2; ++dx) {
        const auto x = cx + dx;
        const auto y = cy + dy;
        if (x < 0 || y < 0 || x >= signed_k || y >= signed_k) continue;
        const auto c = static_cast<std::size_t>(y * signed_k + x);
        for (std::size_t m = start[c]; m < start[c + 1]; ++m) {
          const std::size_t j = members[m];
          if (j > static_cast<std::size_t>(i)) {
            best = std::min(best, euclidean(nodes[i], nodes[j]));
          }
        }
      }
    }
  }
  // Only reachable for points outside the unit square.
  if (best >= 2.0 * cell) return min_distance_bruteforce_parallel(nodes);
  return best;
}

double max_pair_distance(std::span<const Point> nodes) {
  const auto n = static_cast<std::ptrdiff_t>(nodes.size());
  double best = 0.0;
#pragma omp parallel for reduction(max : best) schedule(dynamic, 16) num_threads(team_size())
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    for (std::ptrdiff_t j = i + 1; j < n; ++j) {
      best = std::max(best, euclidean(nodes[i], nodes[j]));
    }
  }
  return best;
}

std::vector<double> inverse_power_sums(std::span<const Point> nodes,
                                       double alpha) {
  const auto n = static_cast<std::ptrdiff_t>(nodes.size());
  std::vector<double> sums(nodes.size(), 0.0);
#pragma omp parallel for schedule(static) num_threads(team_size())
  for (std::ptrdiff_t w = 0; w < n; ++w) {
    double s = 0.0;
    for (std::ptrdiff_t u = 0; u < n; ++u) {
      if (u != w) s += path_gain(nodes[u], nodes[w], alpha);
    }
    sums[w] = s;
  }
  return sums;
}

ChannelMatrix phase_gains(std::span<const Point> nodes, double alpha,
                          std::uint64_t seed, std::uint64_t slot) {
  const auto n = static_cast<std::ptrdiff_t>(nodes.size());
  ChannelMatrix h(nodes.size(), nodes.size());
#pragma omp parallel for schedule(static) num_threads(team_size())
  for (std::ptrdiff_t u = 0; u < n; ++u) {
    fill_phase_row(nodes, alpha, seed, slot, u, h.row(u));
  }
  return h;
}

ChannelMatrix rayleigh_gains(std::span<const Point> nodes, double alpha,
                             std::uint64_t seed, std::uint64_t slot) {
  const auto n = static_cast<std::ptrdiff_t>(nodes.size());
  ChannelMatrix h(nodes.size(), nodes.size());
#pragma omp parallel for schedule(static) num_threads(team_size())
  for (std::ptrdiff_t u = 0; u < n; ++u) {
    fill_rayleigh_row(nodes, alpha, seed, slot, u, h.row(u));
  }
  return h;
}

namespace serial {

DenseMatrix<double> distance_matrix(std::span<const Point> nodes) {
  DenseMatrix<double> d(nodes.size(), nodes.size(), 0.0);
  for (std::size_t u = 0; u < nodes.size(); ++u)
    for (std::size_t v = 0; v < nodes.size(); ++v)
      if (u != v) d(u, v) = euclidean(nodes[u], nodes[v]);
  return d;
}

double min_pair_distance(std::span<const Point> nodes) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      best = std::min(best, euclidean(nodes[i], nodes[j]));
  return best;
}

double max_pair_distance(std::span<const Point> nodes) {
  double best = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      best = std::max(best, euclidean(nodes[i], nodes[j]));
  return best;
}

std::vector<double> inverse_power_sums(std::span<const Point> nodes,
                                       double alpha) {
  std::vector<double> sums(nodes.size(), 0.0);
  for (std::size_t w = 0; w < nodes.size(); ++w)
    for (std::size_t u = 0; u < nodes.size(); ++u)
      if (u != w) sums[w] += path_gain(nodes[u], nodes[w], alpha);
  return sums;
}

ChannelMatrix phase_gains(std::span<const Point> nodes, double alpha,
                          std::uint64_t seed, std::uint64_t slot) {
  ChannelMatrix h(nodes.size(), nodes.size());
  for (std::size_t u = 0; u < nodes.size(); ++u)
    fill_phase_row(nodes, alpha, seed, slot, u, h.row(u));
  return h;
}

ChannelMatrix rayleigh_gains(std::span<const Point> nodes, double alpha,
                             std::uint64_t seed, std::uint64_t slot) {
  ChannelMatrix h(nodes.size(), nodes.size());
  for (std::size_t u = 0; u < nodes.size(); ++u)
    fill_rayleigh_row(nodes, alpha, seed, slot, u, h.row(u));
  return h;
}

}  // namespace serial
}  // namespace capregion::kernels
