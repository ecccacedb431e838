#include "capregion/multicast_star.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "capregion/errors.hpp"
#include "capregion/ia_phase.hpp"

namespace capregion {
namespace {

std::string describe(const Cut& c) {
  return std::string(c.kind == CutKind::Source ? "source" : "destination") +
         " cut at node " + std::to_string(c.node);
}

}  // namespace

StarGraph make_star_graph(std::size_t n) {
  if (n < 2) throw InvalidInput("star graph needs at least 2 nodes");
  return {n};
}

StarRouting route_over_star(const MulticastTraffic& t) {
  const auto loads = multicast_loads(t);
  const auto m = membership(loads);
  if (!m.member) {
    throw Infeasible("multicast traffic violates the " + describe(*m.binding_cut) +
                     " (load " + std::to_string(m.max_load) + " > 1)");
  }
  const std::size_t n = t.size();
  StarRouting r;
  r.graph = make_star_graph(n);
  r.uplink = loads.source;
  r.downlink = loads.destination;
  r.flows.reserve(t.entries().size());
  for (std::size_t i = 0; i < t.entries().size(); ++i) {
    const auto& e = t.entries()[i];
    EntryFlow f;
    f.entry = i;
    f.source = e.source;
    f.uplink = e.rate;
    for (NodeIndex w : e.destinations) {
      if (w != e.source) f.downlink.emplace_back(w, e.rate);
    }
    f.parts = n;
    f.parts_sent = n - 1;
    r.flows.push_back(std::move(f));
  }
  return r;
}

PhaseTraffic phase_traffic(const StarRouting& r, StarPhase phase) {
  const std::size_t n = r.graph.n;
  const double parts = static_cast<double>(n);
  const double uniform = 1.0 / static_cast<double>(n - 1);
  DenseMatrix<double> payload(n, n, 0.0);
  DenseMatrix<double> offered(n, n, 0.0);
  double dummy = 0.0;
  for (NodeIndex u = 0; u < n; ++u) {
    for (NodeIndex w = 0; w < n; ++w) {
      if (u == w) continue;
      const double load = phase == StarPhase::Uplink ? r.uplink[u] : r.downlink[w];
      payload(u, w) = load / parts;
      offered(u, w) = uniform;
      dummy += std::max(0.0, uniform - payload(u, w));
    }
  }
  return {UnicastTraffic(std::move(offered)), UnicastTraffic(std::move(payload)), dummy};
}

ScheduleDecomposition uniform_cyclic_decomposition(std::size_t n) {
  if (n < 2) throw InvalidInput("cyclic decomposition needs n >= 2");
  ScheduleDecomposition d;
  d.n = n;
  const double weight = 1.0 / static_cast<double>(n - 1);
  for (std::size_t k = 1; k < n; ++k) {
    Permutation shift(n);
    for (NodeIndex u = 0; u < n; ++u) shift[u] = (u + k) % n;
    d.schedules.push_back(std::move(shift));
    d.weights.push_back(weight);
  }
  return d;
}

MulticastRateCertificate multicast_achieved_rates(const MulticastTraffic& t,
                                                  const NodePlacement& p,
                                                  double alpha, Exec exec) {
  validate_alpha(alpha);
  if (t.size() != p.size()) {
    throw InvalidInput("traffic and placement disagree on n");
  }
  route_over_star(t);  // feasibility

  // Every ordered pair appears in exactly one cyclic shift, so the uniform
  // phase matrix is served at the smallest pair rate, i.e. the rate of the
  // farthest pair. Up and down phases share time equally.
  const double farthest = exec == Exec::Parallel
                              ? kernels::max_pair_distance(p.nodes())
                              : kernels::serial::max_pair_distance(p.nodes());
  MulticastRateCertificate c;
  c.min_pair_rate = alignment_rate(farthest, alpha);
  c.achieved_multiple = 0.5 * c.min_pair_rate;
  c.floor = std::exp2(-1.0 - alpha / 2.0);
  return c;
}

}  // namespace capregion
