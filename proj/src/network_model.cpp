#include "capregion/network_model.hpp"

#include <cmath>
#include <string>

#include "capregion/errors.hpp"
#include "capregion/random.hpp"

namespace capregion {

NodePlacement::NodePlacement(std::vector<Point> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) {
    throw InvalidInput("placement needs at least 2 nodes, got " +
                       std::to_string(nodes_.size()));
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& p = nodes_[i];
    if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0)) {
      throw InvalidInput("node " + std::to_string(i) +
                         " lies outside the unit square");
    }
  }
  min_distance_ = kernels::min_pair_distance(nodes_);
  if (!(min_distance_ > 0.0)) {
    throw InvalidInput("placement has coincident nodes");
  }
  if (nodes_.size() <= kDistanceCacheLimit) {
    distances_ = kernels::distance_matrix(nodes_);
  }
}

double NodePlacement::distance(NodeIndex u, NodeIndex v) const {
  if (u >= size() || v >= size()) {
    throw InvalidInput("node index out of range");
  }
  if (u == v) {
    throw InvalidInput("distance of a node to itself is undefined");
  }
  if (distances_) return (*distances_)(u, v);
  return euclidean(nodes_[u], nodes_[v]);
}

double NodePlacement::r_min() const {
  return std::sqrt(static_cast<double>(size())) * min_distance_;
}

void validate_alpha(double alpha) {
  if (!std::isfinite(alpha) || alpha < 2.0) {
    throw HypothesisViolation("path-loss exponent alpha must satisfy alpha >= 2, got " +
                              std::to_string(alpha));
  }
}

ChannelParams make_channel_params(double alpha, Fading fading) {
  validate_alpha(alpha);
  return {alpha, fading};
}

double pairwise_distance(const NodePlacement& p, NodeIndex u, NodeIndex v) {
  return p.distance(u, v);
}

double r_min(const NodePlacement& p) { return p.r_min(); }

NodePlacement grid_placement(std::size_t n) {
  const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  if (n < 4 || side * side != n) {
    throw InvalidInput("grid placement needs a perfect square n >= 4, got " +
                       std::to_string(n));
  }
  const double spacing = 1.0 / static_cast<double>(side);
  std::vector<Point> nodes;
  nodes.reserve(n);
  for (std::size_t j = 0; j < side; ++j) {
    for (std::size_t i = 0; i < side; ++i) {
      nodes.push_back({(static_cast<double>(i) + 0.5) * spacing,
                       (static_cast<double>(j) + 0.5) * spacing});
    }
  }
  return NodePlacement(std::move(nodes));
}

NodePlacement uniform_random_placement(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw InvalidInput("placement needs at least 2 nodes");
  auto rng = make_rng(seed, Stream::Placement, n);
  // Continuous draws; a coincident pair has probability zero but is redrawn.
  for (std::uint64_t attempt = 0;; ++attempt) {
    std::vector<Point> nodes(n);
    for (auto& p : nodes) {
      p.x = uniform01(rng);
      p.y = uniform01(rng);
    }
    if (kernels::min_pair_distance(nodes) > 0.0 || attempt > 16) {
      return NodePlacement(std::move(nodes));
    }
  }
}

ChannelMatrix sample_channel(const NodePlacement& p, const ChannelParams& c,
                             std::uint64_t seed, std::uint64_t t, Exec exec) {
  validate_alpha(c.alpha);
  const bool parallel = exec == Exec::Parallel;
  switch (c.fading) {
    case Fading::Phase:
      return parallel ? kernels::phase_gains(p.nodes(), c.alpha, seed, t)
                      : kernels::serial::phase_gains(p.nodes(), c.alpha, seed, t);
    case Fading::Rayleigh:
      return parallel ? kernels::rayleigh_gains(p.nodes(), c.alpha, seed, t)
                      : kernels::serial::rayleigh_gains(p.nodes(), c.alpha, seed, t);
  }
  throw InvalidInput("unknown fading model");
}

}  // namespace capregion
