#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "capregion/matrix.hpp"

namespace capregion {

// Loads within this relative slack of 1 still count as inside the region, so
// that rho_hat_star * t (which can overshoot 1 by an ulp) stays a member.
inline constexpr double kRegionTolerance = 1e-12;

struct UnicastEntry {
  NodeIndex source = 0;
  NodeIndex destination = 0;
  double rate = 0.0;

  friend bool operator==(const UnicastEntry&, const UnicastEntry&) = default;
};

// n x n nonnegative unicast rate matrix (bits per channel use) with a zero
// diagonal. Only the positive entries are stored, sorted by (source,
// destination), so pairings on 1e5 nodes stay cheap.
class UnicastTraffic {
 public:
  explicit UnicastTraffic(std::size_t n);
  // Rejects negative or non-finite rates; drops the diagonal.
  explicit UnicastTraffic(const DenseMatrix<double>& rates);
  // Same checks; duplicate (source, destination) entries add up.
  UnicastTraffic(std::size_t n, std::vector<UnicastEntry> entries);

  std::size_t size() const { return n_; }
  double rate(NodeIndex u, NodeIndex w) const;
  std::span<const UnicastEntry> entries() const { return entries_; }
  // Dense copy, O(n^2) memory.
  DenseMatrix<double> rates() const;
  bool is_zero() const { return entries_.empty(); }

  UnicastTraffic scaled(double factor) const;

 private:
  std::size_t n_ = 0;
  std::vector<UnicastEntry> entries_;
  std::vector<std::size_t> row_start_;  // entries of row u: [row_start_[u], row_start_[u+1])
};

struct MulticastEntry {
  NodeIndex source = 0;
  std::vector<NodeIndex> destinations;  // sorted, unique
  double rate = 0.0;

  friend bool operator==(const MulticastEntry&, const MulticastEntry&) = default;
};

// Sparse multicast traffic: (source, destination set) -> rate. Destination
// sets are canonicalised to sorted index lists and duplicate keys are merged
// by summing their rates. Entries whose set contains nothing but the source
// are rejected.
class MulticastTraffic {
 public:
  MulticastTraffic(std::size_t n, std::vector<MulticastEntry> entries);

  std::size_t size() const { return n_; }
  std::span<const MulticastEntry> entries() const { return entries_; }

  MulticastTraffic scaled(double factor) const;

 private:
  std::size_t n_;
  std::vector<MulticastEntry> entries_;
};

// Singleton destination sets; the unicast region is the matching slice.
MulticastTraffic as_multicast(const UnicastTraffic& t);

enum class CutKind { Source, Destination };

struct Cut {
  CutKind kind = CutKind::Source;
  NodeIndex node = 0;

  friend bool operator==(const Cut&, const Cut&) = default;
};

struct NodeLoads {
  std::vector<double> source;       // traffic leaving each node
  std::vector<double> destination;  // traffic arriving at each node
};

struct RegionMembership {
  bool member = true;
  // +infinity for zero traffic.
  double rho_hat_star = 0.0;
  // Empty only for zero traffic.
  std::optional<Cut> binding_cut;
  double max_load = 0.0;
};

NodeLoads unicast_loads(const UnicastTraffic& t);
NodeLoads multicast_loads(const MulticastTraffic& t);

// Region test against the per-node source/destination cuts. Ties for the
// binding cut go to the lowest node index, source before destination.
RegionMembership membership(const NodeLoads& loads);
RegionMembership membership_uc(const UnicastTraffic& t);
RegionMembership membership_mc(const MulticastTraffic& t);

// Every node is source once at rate 1; destinations uniform over the others.
UnicastTraffic random_sd_pairing(std::size_t n, std::uint64_t seed);

// Relabelled traffic with t'(u, w) = t(pi(u), pi(w)), and for multicast
// t'(u, W) = t(pi(u), pi(W)). Throws InvalidInput unless pi is a bijection.
UnicastTraffic permute_traffic(const UnicastTraffic& t,
                               std::span<const NodeIndex> pi);
MulticastTraffic permute_traffic(const MulticastTraffic& t,
                                 std::span<const NodeIndex> pi);

// Rate 1/(n-1) from every node to a single common destination.
UnicastTraffic common_destination_traffic(std::size_t n, NodeIndex destination);

void validate_permutation(std::span<const NodeIndex> pi, std::size_t n);

}  // namespace capregion
