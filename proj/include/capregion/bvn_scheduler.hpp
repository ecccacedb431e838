#pragma once

#include <vector>

#include "capregion/matrix.hpp"
#include "capregion/network_model.hpp"
#include "capregion/traffic.hpp"

namespace capregion {

// Image array: the schedule sends from u to perm[u]. Fixed points are idle.
using Permutation = std::vector<NodeIndex>;

// Convex combination of permutation schedules.
struct ScheduleDecomposition {
  std::size_t n = 0;
  std::vector<Permutation> schedules;
  std::vector<double> weights;  // nonnegative, sum to 1
  // Mass left unassigned by the extraction loop before the weights were
  // renormalised (floating-point residue only).
  double unassigned_mass = 0.0;

  std::size_t size() const { return schedules.size(); }
  // sum_i weights[i] * S_i
  DenseMatrix<double> reconstruct() const;
};

inline constexpr double kStochasticTolerance = 1e-9;

bool is_doubly_stochastic(const DenseMatrix<double>& m,
                          double tol = kStochasticTolerance);

// Dominating doubly stochastic matrix: greedily pours
// min(row deficit, column deficit) into the lexicographically first
// deficient cell until every row and column sums to 1 (at most 2n steps).
// Throws Infeasible if some row or column already exceeds 1 + 1e-9.
DenseMatrix<double> complete_to_doubly_stochastic(const UnicastTraffic& t);

// Birkhoff decomposition: repeatedly extracts a perfect matching of the
// positive support weighted by its smallest entry. At most n^2 - 2n + 2
// terms. Throws InvalidInput unless m is doubly stochastic within 1e-9.
ScheduleDecomposition birkhoff_decompose(const DenseMatrix<double>& m);

// Time-shared interference-alignment rates: sum_i w_i R_i where R_i carries
// (1/2) log2(1 + 2 r_{u,w}^{-alpha}) on each active pair of schedule i.
UnicastTraffic schedule_rates(const ScheduleDecomposition& d,
                              const NodePlacement& p, double alpha);

}  // namespace capregion
