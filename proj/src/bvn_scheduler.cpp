#include "capregion/bvn_scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "capregion/errors.hpp"
#include "capregion/ia_phase.hpp"

namespace capregion {
namespace {

constexpr NodeIndex kFree = std::numeric_limits<NodeIndex>::max();
// Residual entries below this are treated as zero so extraction terminates.
constexpr double kSupportFloor = 1e-12;
// Stop once the unassigned mass is this small.
constexpr double kMassFloor = 1e-11;

// Bipartite matching over the positive entries of a square matrix, repaired
// incrementally between extraction rounds.
class SupportMatching {
 public:
  explicit SupportMatching(std::size_t n)
      : n_(n), row_mate_(n, kFree), col_mate_(n, kFree), parent_(n), seen_(n) {}

  // Drops matched cells that left the support, then augments every free row.
  // Returns false if the support has no perfect matching.
  bool repair(const DenseMatrix<double>& m) {
    for (NodeIndex r = 0; r < n_; ++r) {
      const NodeIndex c = row_mate_[r];
      if (c != kFree && !(m(r, c) > 0.0)) {
        row_mate_[r] = kFree;
        col_mate_[c] = kFree;
      }
    }
    for (NodeIndex r = 0; r < n_; ++r) {
      if (row_mate_[r] == kFree && !augment(m, r)) return false;
    }
    return true;
  }

  const std::vector<NodeIndex>& row_mates() const { return row_mate_; }

 private:
  // BFS for an alternating path from free row `root` to a free column.
  bool augment(const DenseMatrix<double>& m, NodeIndex root) {
    std::fill(seen_.begin(), seen_.end(), false);
    std::queue<NodeIndex> rows;
    rows.push(root);
    while (!rows.empty()) {
      const NodeIndex r = rows.front();
      rows.pop();
      for (NodeIndex c = 0; c < n_; ++c) {
        if (seen_[c] || !(m(r, c) > 0.0)) continue;
        seen_[c] = true;
        parent_[c] = r;
        if (col_mate_[c] == kFree) {
          // Flip the path back to the root.
          NodeIndex col = c;
          while (col != kFree) {
            const NodeIndex row = parent_[col];
            const NodeIndex next = row_mate_[row];
            row_mate_[row] = col;
            col_mate_[col] = row;
            col = next;
          }
          return true;
        }
        rows.push(col_mate_[c]);
      }
    }
    return false;
  }

  std::size_t n_;
  std::vector<NodeIndex> row_mate_;
  std::vector<NodeIndex> col_mate_;
  std::vector<NodeIndex> parent_;
  std::vector<bool> seen_;
};

}  // namespace

DenseMatrix<double> ScheduleDecomposition::reconstruct() const {
  DenseMatrix<double> m(n, n, 0.0);
  for (std::size_t i = 0; i < schedules.size(); ++i) {
    for (NodeIndex u = 0; u < n; ++u) m(u, schedules[i][u]) += weights[i];
  }
  return m;
}

bool is_doubly_stochastic(const DenseMatrix<double>& m, double tol) {
  if (!m.square() || m.rows() == 0) return false;
  const std::size_t n = m.rows();
  std::vector<double> cols(n, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    double row = 0.0;
    for (std::size_t w = 0; w < n; ++w) {
      const double x = m(u, w);
      if (!std::isfinite(x) || x < 0.0) return false;
      row += x;
      cols[w] += x;
    }
    if (std::abs(row - 1.0) > tol) return false;
  }
  return std::all_of(cols.begin(), cols.end(),
                     [&](double c) { return std::abs(c - 1.0) <= tol; });
}

DenseMatrix<double> complete_to_doubly_stochastic(const UnicastTraffic& t) {
  const std::size_t n = t.size();
  const auto loads = unicast_loads(t);
  for (NodeIndex v = 0; v < n; ++v) {
    if (loads.source[v] > 1.0 + kStochasticTolerance ||
        loads.destination[v] > 1.0 + kStochasticTolerance) {
      throw Infeasible("traffic is not doubly substochastic at node " +
                       std::to_string(v) + "; scale it by rho_hat_star first");
    }
  }
  auto m = t.rates();
  std::vector<double> row_deficit(n), col_deficit(n);
  for (NodeIndex v = 0; v < n; ++v) {
    row_deficit[v] = std::max(0.0, 1.0 - loads.source[v]);
    col_deficit[v] = std::max(0.0, 1.0 - loads.destination[v]);
  }
  for (NodeIndex u = 0; u < n; ++u) {
    for (NodeIndex w = 0; w < n && row_deficit[u] > 0.0; ++w) {
      if (col_deficit[w] <= 0.0) continue;
      // Each step saturates a row or a column.
      if (row_deficit[u] <= col_deficit[w]) {
        m(u, w) += row_deficit[u];
        col_deficit[w] -= row_deficit[u];
        row_deficit[u] = 0.0;
      } else {
        m(u, w) += col_deficit[w];
        row_deficit[u] -= col_deficit[w];
        col_deficit[w] = 0.0;
      }
    }
  }
  return m;
}

ScheduleDecomposition birkhoff_decompose(const DenseMatrix<double>& m) {
  if (!is_doubly_stochastic(m)) {
    throw InvalidInput("matrix is not doubly stochastic within 1e-9");
  }
  const std::size_t n = m.rows();
  ScheduleDecomposition d;
  d.n = n;

  auto residual = m;
  for (double& x : residual.data()) {
    if (x < kSupportFloor) x = 0.0;
  }

  SupportMatching matching(n);
  double assigned = 0.0;
  // Every round zeroes at least one support cell.
  const std::size_t max_rounds = n * n;
  while (d.schedules.size() < max_rounds && 1.0 - assigned > kMassFloor) {
    if (!matching.repair(residual)) break;
    const auto& mate = matching.row_mates();
    double weight = std::numeric_limits<double>::infinity();
    for (NodeIndex u = 0; u < n; ++u) weight = std::min(weight, residual(u, mate[u]));
    for (NodeIndex u = 0; u < n; ++u) {
      double& x = residual(u, mate[u]);
      x -= weight;
      if (x < kSupportFloor) x = 0.0;
    }
    d.schedules.push_back(mate);
    d.weights.push_back(weight);
    assigned += weight;
  }

  d.unassigned_mass = 1.0 - assigned;
  if (assigned > 0.0) {
    for (double& w : d.weights) w /= assigned;
  }
  return d;
}

UnicastTraffic schedule_rates(const ScheduleDecomposition& d,
                              const NodePlacement& p, double alpha) {
  validate_alpha(alpha);
  if (d.n != p.size()) {
    throw InvalidInput("decomposition and placement disagree on n");
  }
  DenseMatrix<double> rates(d.n, d.n, 0.0);
  for (std::size_t i = 0; i < d.schedules.size(); ++i) {
    const auto& perm = d.schedules[i];
    for (NodeIndex u = 0; u < d.n; ++u) {
      const NodeIndex w = perm[u];
      if (w != u) rates(u, w) += d.weights[i] * alignment_rate(p.distance(u, w), alpha);
    }
  }
  return UnicastTraffic(std::move(rates));
}

}  // namespace capregion
