#include "capregion/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "capregion/errors.hpp"
#include "capregion/random.hpp"

namespace capregion {
namespace {

void check_rate(double r) {
  if (!std::isfinite(r) || r < 0.0) {
    throw InvalidInput("traffic rates must be finite and nonnegative");
  }
}

void check_factor(double factor) {
  if (!std::isfinite(factor) || factor < 0.0) {
    throw InvalidInput("scale factor must be finite and nonnegative");
  }
}

}  // namespace

UnicastTraffic::UnicastTraffic(std::size_t n) : n_(n), row_start_(n + 1, 0) {
  if (n < 2) throw InvalidInput("traffic needs at least 2 nodes");
}

UnicastTraffic::UnicastTraffic(const DenseMatrix<double>& rates) : n_(rates.rows()) {
  if (!rates.square()) throw InvalidInput("unicast traffic must be square");
  if (n_ < 2) throw InvalidInput("traffic needs at least 2 nodes");
  row_start_.assign(n_ + 1, 0);
  for (NodeIndex u = 0; u < n_; ++u) {
    for (NodeIndex w = 0; w < n_; ++w) {
      const double r = rates(u, w);
      check_rate(r);
      if (u != w && r > 0.0) entries_.push_back({u, w, r});
    }
    row_start_[u + 1] = entries_.size();
  }
}

UnicastTraffic::UnicastTraffic(std::size_t n, std::vector<UnicastEntry> entries)
    : n_(n), row_start_(n + 1, 0) {
  if (n < 2) throw InvalidInput("traffic needs at least 2 nodes");
  for (const auto& e : entries) {
    if (e.source >= n || e.destination >= n) {
      throw InvalidInput("traffic entry refers to a node outside 0.." + std::to_string(n - 1));
    }
    check_rate(e.rate);
  }
  std::sort(entries.begin(), entries.end(), [](const UnicastEntry& a, const UnicastEntry& b) {
    return std::pair(a.source, a.destination) < std::pair(b.source, b.destination);
  });
  for (const auto& e : entries) {
    if (e.source == e.destination || e.rate == 0.0) continue;
    if (!entries_.empty() && entries_.back().source == e.source &&
        entries_.back().destination == e.destination) {
      entries_.back().rate += e.rate;
    } else {
      entries_.push_back(e);
    }
  }
  for (const auto& e : entries_) ++row_start_[e.source + 1];
  for (NodeIndex u = 0; u < n; ++u) row_start_[u + 1] += row_start_[u];
}

double UnicastTraffic::rate(NodeIndex u, NodeIndex w) const {
  const auto first = entries_.begin() + static_cast<std::ptrdiff_t>(row_start_[u]);
  const auto last = entries_.begin() + static_cast<std::ptrdiff_t>(row_start_[u + 1]);
  const auto it = std::lower_bound(first, last, w, [](const UnicastEntry& e, NodeIndex v) {
    return e.destination < v;
  });
  return it != last && it->destination == w ? it->rate : 0.0;
}

DenseMatrix<double> UnicastTraffic::rates() const {
  DenseMatrix<double> m(n_, n_, 0.0);
  for (const auto& e : entries_) m(e.source, e.destination) = e.rate;
  return m;
}

UnicastTraffic UnicastTraffic::scaled(double factor) const {
  check_factor(factor);
  auto copy = entries_;
  for (auto& e : copy) e.rate *= factor;
  return UnicastTraffic(n_, std::move(copy));
}

MulticastTraffic::MulticastTraffic(std::size_t n, std::vector<MulticastEntry> entries)
    : n_(n) {
  if (n < 2) throw InvalidInput("traffic needs at least 2 nodes");
  std::map<std::pair<NodeIndex, std::vector<NodeIndex>>, double> merged;
  for (auto& e : entries) {
    check_rate(e.rate);
    if (e.source >= n) throw InvalidInput("multicast source index out of range");
    std::sort(e.destinations.begin(), e.destinations.end());
    e.destinations.erase(std::unique(e.destinations.begin(), e.destinations.end()),
                         e.destinations.end());
    if (e.destinations.empty()) {
      throw InvalidInput("multicast destination set is empty");
    }
    if (e.destinations.back() >= n) {
      throw InvalidInput("multicast destination index out of range");
    }
    if (e.destinations.size() == 1 && e.destinations.front() == e.source) {
      throw InvalidInput("multicast entry from node " + std::to_string(e.source) +
                         " has no destination other than its source");
    }
    merged[{e.source, std::move(e.destinations)}] += e.rate;
  }
  entries_.reserve(merged.size());
  for (auto& [key, rate] : merged) {
    entries_.push_back({key.first, key.second, rate});
  }
}

MulticastTraffic MulticastTraffic::scaled(double factor) const {
  check_factor(factor);
  auto copy = entries_;
  for (auto& e : copy) e.rate *= factor;
  return MulticastTraffic(n_, std::move(copy));
}

MulticastTraffic as_multicast(const UnicastTraffic& t) {
  std::vector<MulticastEntry> entries;
  entries.reserve(t.entries().size());
  for (const auto& e : t.entries()) entries.push_back({e.source, {e.destination}, e.rate});
  return MulticastTraffic(t.size(), std::move(entries));
}

NodeLoads unicast_loads(const UnicastTraffic& t) {
  const std::size_t n = t.size();
  NodeLoads loads{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (const auto& e : t.entries()) {
    loads.source[e.source] += e.rate;
    loads.destination[e.destination] += e.rate;
  }
  return loads;
}

NodeLoads multicast_loads(const MulticastTraffic& t) {
  const std::size_t n = t.size();
  NodeLoads loads{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (const auto& e : t.entries()) {
    // Canonical entries always reach some node besides the source.
    loads.source[e.source] += e.rate;
    for (NodeIndex w : e.destinations) {
      if (w != e.source) loads.destination[w] += e.rate;
    }
  }
  return loads;
}

RegionMembership membership(const NodeLoads& loads) {
  RegionMembership m;
  double max_load = 0.0;
  // Scan in (node, source-before-destination) order; strict > keeps the
  // first maximiser.
  for (NodeIndex v = 0; v < loads.source.size(); ++v) {
    if (loads.source[v] > max_load) {
      max_load = loads.source[v];
      m.binding_cut = Cut{CutKind::Source, v};
    }
    if (loads.destination[v] > max_load) {
      max_load = loads.destination[v];
      m.binding_cut = Cut{CutKind::Destination, v};
    }
  }
  m.max_load = max_load;
  if (max_load == 0.0) {
    m.member = true;
    m.rho_hat_star = std::numeric_limits<double>::infinity();
    m.binding_cut.reset();
    return m;
  }
  m.rho_hat_star = 1.0 / max_load;
  m.member = max_load <= 1.0 + kRegionTolerance;
  return m;
}

RegionMembership membership_uc(const UnicastTraffic& t) {
  return membership(unicast_loads(t));
}

RegionMembership membership_mc(const MulticastTraffic& t) {
  return membership(multicast_loads(t));
}

UnicastTraffic random_sd_pairing(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw InvalidInput("pairing needs at least 2 nodes");
  auto rng = make_rng(seed, Stream::Pairing, n);
  std::uniform_int_distribution<std::size_t> pick(0, n - 2);
  std::vector<UnicastEntry> entries(n);
  for (NodeIndex u = 0; u < n; ++u) {
    NodeIndex w = pick(rng);
    if (w >= u) ++w;  // skip u itself
    entries[u] = {u, w, 1.0};
  }
  return UnicastTraffic(n, std::move(entries));
}

void validate_permutation(std::span<const NodeIndex> pi, std::size_t n) {
  if (pi.size() != n) throw InvalidInput("permutation has the wrong length");
  std::vector<bool> seen(n, false);
  for (NodeIndex v : pi) {
    if (v >= n || seen[v]) throw InvalidInput("relabelling is not a bijection");
    seen[v] = true;
  }
}

UnicastTraffic permute_traffic(const UnicastTraffic& t,
                               std::span<const NodeIndex> pi) {
  validate_permutation(pi, t.size());
  // new(u, w) = old(pi[u], pi[w])
  std::vector<NodeIndex> inverse(pi.size());
  for (NodeIndex u = 0; u < pi.size(); ++u) inverse[pi[u]] = u;
  std::vector<UnicastEntry> entries;
  entries.reserve(t.entries().size());
  for (const auto& e : t.entries())
    entries.push_back({inverse[e.source], inverse[e.destination], e.rate});
  return UnicastTraffic(t.size(), std::move(entries));
}

MulticastTraffic permute_traffic(const MulticastTraffic& t,
                                 std::span<const NodeIndex> pi) {
  validate_permutation(pi, t.size());
  // t'(u, W) = t(pi(u), pi(W)): the entry stored at (a, B) moves to
  // (pi^{-1}(a), pi^{-1}(B)).
  std::vector<NodeIndex> inverse(t.size());
  for (NodeIndex v = 0; v < t.size(); ++v) inverse[pi[v]] = v;
  std::vector<MulticastEntry> entries;
  entries.reserve(t.entries().size());
  for (const auto& e : t.entries()) {
    MulticastEntry moved{inverse[e.source], {}, e.rate};
    moved.destinations.reserve(e.destinations.size());
    for (NodeIndex w : e.destinations) moved.destinations.push_back(inverse[w]);
    entries.push_back(std::move(moved));
  }
  return MulticastTraffic(t.size(), std::move(entries));
}

UnicastTraffic common_destination_traffic(std::size_t n, NodeIndex destination) {
  if (n < 2) throw InvalidInput("traffic needs at least 2 nodes");
  if (destination >= n) throw InvalidInput("destination index out of range");
  std::vector<UnicastEntry> entries;
  entries.reserve(n - 1);
  for (NodeIndex u = 0; u < n; ++u) {
    if (u != destination) entries.push_back({u, destination, 1.0 / static_cast<double>(n - 1)});
  }
  return UnicastTraffic(n, std::move(entries));
}

}  // namespace capregion
