#include "capregion/bounds.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "capregion/errors.hpp"

namespace capregion {
namespace {

void check_hypotheses(std::size_t n, double alpha, double r_min) {
  if (n < 9) {
    throw HypothesisViolation("bounds require n >= 9 nodes, got n = " +
                              std::to_string(n));
  }
  validate_alpha(alpha);
  if (!(r_min > 0.0) || r_min > r_min_ceiling()) {
    throw InvalidInput("r_min must lie in (0, 4/sqrt(pi)], got " +
                       std::to_string(r_min));
  }
}

}  // namespace

double outer_factor_value(std::size_t n, double alpha, double r_min) {
  const double dn = static_cast<double>(n);
  return (2.0 + alpha / 2.0) * std::log2(dn) - alpha * std::log2(r_min);
}

BoundFactors unicast_factors(std::size_t n, double alpha, double r_min) {
  check_hypotheses(n, alpha, r_min);
  return {std::exp2(-alpha / 2.0), outer_factor_value(n, alpha, r_min)};
}

BoundFactors multicast_factors(std::size_t n, double alpha, double r_min) {
  check_hypotheses(n, alpha, r_min);
  return {std::exp2(-1.0 - alpha / 2.0), outer_factor_value(n, alpha, r_min)};
}

BoundsReport make_bounds_report(const BoundFactors& factors,
                                const RegionMembership& m) {
  BoundsReport r;
  r.inner_factor = factors.inner;
  r.outer_factor = factors.outer;
  r.rho_hat_star = m.rho_hat_star;
  r.rho_low = factors.inner * m.rho_hat_star;
  r.rho_high = factors.outer * m.rho_hat_star;
  r.gap_ratio = factors.outer / factors.inner;
  r.member = m.member;
  r.binding_cut = m.binding_cut;
  return r;
}

double cutset_single_node(const NodePlacement& p, double alpha, NodeIndex w,
                          CutDirection /*direction*/) {
  validate_alpha(alpha);
  if (w >= p.size()) throw InvalidInput("node index out of range");
  double sum = 0.0;
  for (NodeIndex u = 0; u < p.size(); ++u) {
    if (u != w) sum += std::pow(p.distance(u, w), -alpha);
  }
  return std::log2(1.0 + static_cast<double>(p.size() - 1) * sum);
}

std::vector<double> cutset_all_nodes(const NodePlacement& p, double alpha,
                                     Exec exec) {
  validate_alpha(alpha);
  auto sums = exec == Exec::Parallel
                  ? kernels::inverse_power_sums(p.nodes(), alpha)
                  : kernels::serial::inverse_power_sums(p.nodes(), alpha);
  const double scale = static_cast<double>(p.size() - 1);
  for (double& s : sums) s = std::log2(1.0 + scale * s);
  return sums;
}

double table1_rho_ia(std::size_t n, double alpha) {
  if (n < 16) {
    throw HypothesisViolation("random-pairing rate formula needs n >= 16, got " +
                              std::to_string(n));
  }
  validate_alpha(alpha);
  const double ln_n = std::log(static_cast<double>(n));
  return std::exp2(-1.0 - alpha / 2.0) * std::log(ln_n) / ln_n;
}

Example3Witness example3_witness(std::size_t n, double alpha, double kappa) {
  validate_alpha(alpha);
  const double dn = static_cast<double>(n);
  if (!(dn > std::exp2(alpha))) {
    throw HypothesisViolation("common-destination witness needs n > 2^alpha");
  }
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw InvalidInput("kappa must be finite and nonnegative");
  }
  Example3Witness w;
  const double log_n = std::log2(dn);
  w.achievable_multiple = 0.5 * log_n;
  w.outer_multiple = (2.0 + alpha * (0.5 + kappa)) * log_n;
  w.K = 1.0 / (4.0 + alpha * (1.0 + 2.0 * kappa));
  w.mac_equal_rate = std::log2(1.0 + (dn - 1.0) * std::exp2(-alpha / 2.0)) / (dn - 1.0);
  w.mac_rate_floor = (1.0 - alpha / (2.0 * log_n)) * log_n / (dn - 1.0);
  if (w.mac_equal_rate < w.mac_rate_floor) {
    throw std::logic_error("equal-rate MAC point fell below its floor");
  }
  return w;
}

}  // namespace capregion
