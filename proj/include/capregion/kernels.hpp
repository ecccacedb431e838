#pragma once

// Data-parallel kernels behind the network model, the cut-set bounds and the
// slot simulations. Each kernel has an OpenMP implementation and a plain
// serial reference in `kernels::serial` that the tests compare against.
// Results never depend on the thread count.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "capregion/geometry.hpp"
#include "capregion/matrix.hpp"

namespace capregion {

using ChannelMatrix = DenseMatrix<std::complex<double>>;

enum class Exec { Serial, Parallel };

namespace kernels {

// Caps the OpenMP team size; values < 1 restore the runtime default.
void set_max_threads(int threads);
int max_threads();

DenseMatrix<double> distance_matrix(std::span<const Point> nodes);

// Exact closest-pair distance. Buckets points on a grid so the cost is
// linear in n for spread-out placements.
double min_pair_distance(std::span<const Point> nodes);
double max_pair_distance(std::span<const Point> nodes);

// sums[w] = sum_{u != w} r_{u,w}^{-alpha}
std::vector<double> inverse_power_sums(std::span<const Point> nodes,
                                       double alpha);

// Phase fading: h = r^{-alpha/2} exp(i theta), theta ~ U[0, 2pi).
ChannelMatrix phase_gains(std::span<const Point> nodes, double alpha,
                          std::uint64_t seed, std::uint64_t slot);
// Rayleigh fading: h ~ CN(0, r^{-alpha}).
ChannelMatrix rayleigh_gains(std::span<const Point> nodes, double alpha,
                             std::uint64_t seed, std::uint64_t slot);

namespace serial {

DenseMatrix<double> distance_matrix(std::span<const Point> nodes);
// Brute force over all pairs.
double min_pair_distance(std::span<const Point> nodes);
double max_pair_distance(std::span<const Point> nodes);
std::vector<double> inverse_power_sums(std::span<const Point> nodes,
                                       double alpha);
ChannelMatrix phase_gains(std::span<const Point> nodes, double alpha,
                          std::uint64_t seed, std::uint64_t slot);
ChannelMatrix rayleigh_gains(std::span<const Point> nodes, double alpha,
                             std::uint64_t seed, std::uint64_t slot);

}  // namespace serial
}  // namespace kernels
}  // namespace capregion
