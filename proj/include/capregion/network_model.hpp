#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "capregion/geometry.hpp"
#include "capregion/kernels.hpp"
#include "capregion/matrix.hpp"

namespace capregion {

// Placements up to this size keep a full distance table; larger ones
// recompute distances on demand.
inline constexpr std::size_t kDistanceCacheLimit = 2048;

// n >= 2 pairwise distinct nodes on the unit square. Immutable.
class NodePlacement {
 public:
  explicit NodePlacement(std::vector<Point> nodes);

  std::size_t size() const { return nodes_.size(); }
  std::span<const Point> nodes() const { return nodes_; }
  const Point& operator[](NodeIndex i) const { return nodes_[i]; }

  // Throws InvalidInput for u == v or an index out of range.
  double distance(NodeIndex u, NodeIndex v) const;
  double min_distance() const { return min_distance_; }
  // n^{1/2} times the minimum pairwise distance.
  double r_min() const;

 private:
  std::vector<Point> nodes_;
  std::optional<DenseMatrix<double>> distances_;
  double min_distance_ = 0.0;
};

enum class Fading { Phase, Rayleigh };

struct ChannelParams {
  double alpha = 2.0;  // path-loss exponent
  Fading fading = Fading::Phase;
};

// Throws HypothesisViolation unless alpha >= 2 (and finite).
void validate_alpha(double alpha);
ChannelParams make_channel_params(double alpha, Fading fading);

double pairwise_distance(const NodePlacement& p, NodeIndex u, NodeIndex v);
double r_min(const NodePlacement& p);

// Upper limit on r_min for any placement on the unit square.
inline double r_min_ceiling() { return 4.0 / std::sqrt(std::numbers::pi); }

// Cell-centred sqrt(n) x sqrt(n) grid with spacing n^{-1/2}; r_min = 1.
NodePlacement grid_placement(std::size_t n);
NodePlacement uniform_random_placement(std::size_t n, std::uint64_t seed);

// Complex gains for slot t; entry (u, v) is the channel from u to v and the
// diagonal is zero. Slots are i.i.d. and keyed by (seed, t).
ChannelMatrix sample_channel(const NodePlacement& p, const ChannelParams& c,
                             std::uint64_t seed, std::uint64_t t,
                             Exec exec = Exec::Parallel);

}  // namespace capregion
