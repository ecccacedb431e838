#pragma once

// Two-phase multicast over the capacitated star graph: every message goes
// up to a virtual hub and back down to its destination group. Each phase is
// realised in the wireless network as uniform unicast traffic, scheduled
// over the n-1 cyclic shifts.

#include <vector>

#include "capregion/bvn_scheduler.hpp"
#include "capregion/network_model.hpp"
#include "capregion/traffic.hpp"

namespace capregion {

// Nodes 0..n-1 plus the hub at index n; edges (u, hub) and (hub, u), all of
// capacity 1.
struct StarGraph {
  std::size_t n = 0;

  NodeIndex hub() const { return n; }
  std::size_t edge_count() const { return 2 * n; }
  double capacity() const { return 1.0; }
};

StarGraph make_star_graph(std::size_t n);

// Flow of one multicast entry: once up from its source, once down to each
// destination other than the source.
struct EntryFlow {
  std::size_t entry = 0;
  NodeIndex source = 0;
  double uplink = 0.0;
  std::vector<std::pair<NodeIndex, double>> downlink;
  // The message is split into n equal parts, one kept at the source.
  std::size_t parts = 0;
  std::size_t parts_sent = 0;
};

struct StarRouting {
  StarGraph graph;
  std::vector<double> uplink;    // flow on (u, hub)
  std::vector<double> downlink;  // flow on (hub, w)
  std::vector<EntryFlow> flows;
};

// Throws Infeasible naming the violated cut when t is outside the
// approximate multicast region.
StarRouting route_over_star(const MulticastTraffic& t);

enum class StarPhase { Uplink, Downlink };

// Unicast traffic one phase induces in the wireless network. `payload` is
// what the messages actually need (uplink: load(u)/n to every other node;
// downlink: load(w)/n from every other node); `offered` pads it with dummy
// traffic to the uniform 1/(n-1) matrix that the cyclic schedule serves.
struct PhaseTraffic {
  UnicastTraffic offered;
  UnicastTraffic payload;
  double dummy_rate = 0.0;  // total padding, excluded from goodput
};

PhaseTraffic phase_traffic(const StarRouting& r, StarPhase phase);

// The n-1 cyclic shifts u -> u+k mod n, each with weight 1/(n-1).
ScheduleDecomposition uniform_cyclic_decomposition(std::size_t n);

struct MulticastRateCertificate {
  // Multiple of t delivered by the two-phase scheme on this placement.
  double achieved_multiple = 0.0;
  // 2^{-1-alpha/2}
  double floor = 0.0;
  // Smallest aligned pair rate over all cyclic schedules.
  double min_pair_rate = 0.0;
};

MulticastRateCertificate multicast_achieved_rates(const MulticastTraffic& t,
                                                  const NodePlacement& p,
                                                  double alpha,
                                                  Exec exec = Exec::Parallel);

}  // namespace capregion
