#pragma once

#include <optional>
#include <vector>

#include "capregion/network_model.hpp"
#include "capregion/traffic.hpp"

namespace capregion {

// Inner and outer multipliers sandwiching the capacity region around the
// cut-defined approximation. All rates are in bits per channel use.
struct BoundFactors {
  double inner = 0.0;
  double outer = 0.0;
};

// Requires n >= 9, alpha >= 2, 0 < r_min <= 4/sqrt(pi).
// inner = 2^{-alpha/2}, outer = log2(n^{2+alpha/2} r_min^{-alpha}).
BoundFactors unicast_factors(std::size_t n, double alpha, double r_min);
// Same hypotheses; inner = 2^{-1-alpha/2}.
BoundFactors multicast_factors(std::size_t n, double alpha, double r_min);

// log2(n^{2+alpha/2} r_min^{-alpha}) without hypothesis checks.
double outer_factor_value(std::size_t n, double alpha, double r_min);

struct BoundsReport {
  double inner_factor = 0.0;
  double outer_factor = 0.0;
  double rho_hat_star = 0.0;
  // [inner * rho_hat_star, outer * rho_hat_star]
  double rho_low = 0.0;
  double rho_high = 0.0;
  double gap_ratio = 0.0;
  bool member = true;
  std::optional<Cut> binding_cut;
};

BoundsReport make_bounds_report(const BoundFactors& factors,
                                const RegionMembership& m);

enum class CutDirection { Into, OutOf };

// MIMO cut value with the per-node power constraints relaxed to a sum-power
// constraint: log2(1 + (n-1) sum_{u != w} r_{u,w}^{-alpha}). Symmetric
// distances make both directions equal.
double cutset_single_node(const NodePlacement& p, double alpha, NodeIndex w,
                          CutDirection direction);
std::vector<double> cutset_all_nodes(const NodePlacement& p, double alpha,
                                     Exec exec = Exec::Parallel);

// Interference-alignment rate under random source-destination pairing:
// 2^{-1-alpha/2} ln ln n / ln n. Requires n >= 16.
double table1_rho_ia(std::size_t n, double alpha);

// Common-destination traffic that sits on the outer bound up to a constant.
struct Example3Witness {
  double achievable_multiple = 0.0;  // (1/2) log2 n
  double outer_multiple = 0.0;       // (2 + alpha(1/2 + kappa)) log2 n
  double K = 0.0;                    // 1 / (4 + alpha(1 + 2 kappa))
  double mac_equal_rate = 0.0;       // (1/(n-1)) log2(1 + (n-1) 2^{-alpha/2})
  double mac_rate_floor = 0.0;       // (1/(n-1)) (1 - alpha/(2 log2 n)) log2 n
};

// Requires n > 2^alpha and kappa >= 0.
Example3Witness example3_witness(std::size_t n, double alpha, double kappa);

}  // namespace capregion
