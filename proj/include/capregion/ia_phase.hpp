#pragma once

// Ergodic interference alignment under phase fading: per-pair rate
// guarantees and a slot-level demonstration of two-slot cancellation with
// quantized phases.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "capregion/kernels.hpp"
#include "capregion/network_model.hpp"

namespace capregion {

// (1/2) log2(1 + 2 r^{-alpha}): the aligned rate of a pair at distance r.
double alignment_rate(double distance, double alpha);

struct SourceDestination {
  NodeIndex source = 0;
  NodeIndex destination = 0;
};

// Pairs with distinct sources, distinct destinations, and source != destination.
class Pairing {
 public:
  explicit Pairing(std::vector<SourceDestination> pairs);

  std::size_t size() const { return pairs_.size(); }
  std::span<const SourceDestination> pairs() const { return pairs_; }
  const SourceDestination& operator[](std::size_t i) const { return pairs_[i]; }
  NodeIndex max_node() const;

 private:
  std::vector<SourceDestination> pairs_;
};

std::vector<double> ia_pair_rates(const Pairing& pr, const NodePlacement& p,
                                  double alpha);

// Phases restricted to {2 pi k / Q}. Q must be even so that -h stays in the
// alphabet; level k + Q/2 is stored as the exact negation of level k.
class PhaseAlphabet {
 public:
  explicit PhaseAlphabet(int levels);

  int levels() const { return static_cast<int>(phasors_.size()); }
  std::complex<double> phasor(int level) const { return phasors_[level]; }
  int negated(int level) const { return (level + levels() / 2) % levels(); }

 private:
  std::vector<std::complex<double>> phasors_;
};

// Phase fading with quantized i.i.d. phases; every (slot, link) level is a
// counter-based draw keyed by (seed, t, u, v).
class QuantizedPhaseChannel {
 public:
  QuantizedPhaseChannel(NodePlacement placement, double alpha, int levels,
                        std::uint64_t seed);

  const NodePlacement& placement() const { return placement_; }
  const PhaseAlphabet& alphabet() const { return alphabet_; }
  int levels() const { return alphabet_.levels(); }
  double alpha() const { return alpha_; }

  int phase_level(NodeIndex u, NodeIndex v, std::uint64_t t) const;
  ChannelMatrix gains(std::uint64_t t) const;

 private:
  NodePlacement placement_;
  double alpha_;
  PhaseAlphabet alphabet_;
  std::uint64_t seed_;
};

// Phase levels of the K*K links (u_i, w_j) relevant to a pairing, one byte
// per link, link (i, j) at index i*K + j.
using LinkPattern = std::string;

LinkPattern link_pattern(const QuantizedPhaseChannel& ch, const Pairing& pr,
                         std::uint64_t t);
std::vector<LinkPattern> link_patterns(const QuantizedPhaseChannel& ch,
                                       const Pairing& pr, std::uint64_t horizon,
                                       Exec exec = Exec::Parallel);

// The unique pattern that completes `p`: direct links equal, cross links
// negated.
LinkPattern complement_pattern(const LinkPattern& p, std::size_t pairs, int levels);
bool complementary(const LinkPattern& a, const LinkPattern& b, std::size_t pairs,
                   int levels);

struct SlotPair {
  std::uint64_t first = 0;
  std::uint64_t second = 0;
};

// First complementary pair in slot order: smallest t2, then smallest t1 < t2.
std::optional<SlotPair> find_complementary_slot(std::span<const LinkPattern> slots,
                                                std::size_t pairs, int levels);
std::optional<SlotPair> find_complementary_slot(const QuantizedPhaseChannel& ch,
                                                const Pairing& pr,
                                                std::uint64_t horizon,
                                                Exec exec = Exec::Parallel);

// Probability that two independent slots are complementary: Q^{-K^2}.
double complementarity_probability(std::size_t pairs, int levels);

struct ComplementCount {
  std::uint64_t slots = 0;
  std::uint64_t complementary_pairs = 0;  // unordered slot pairs
  double frequency = 0.0;                 // complementary_pairs / C(slots, 2)
};

ComplementCount count_complementary_pairs(std::span<const LinkPattern> slots,
                                          std::size_t pairs, int levels);

// One slot of the channel y_v = sum_{u != v} h_{u,v} x_u + z_v.
struct SlotSample {
  ChannelMatrix gains;
  std::vector<std::complex<double>> transmitted;
  std::vector<std::complex<double>> noise;
  std::vector<std::complex<double>> received;
};

SlotSample make_slot_sample(ChannelMatrix gains,
                            std::vector<std::complex<double>> transmitted,
                            std::vector<std::complex<double>> noise);

// Unit-variance circularly-symmetric complex Gaussian noise for slot t.
std::vector<std::complex<double>> sample_noise(std::size_t n, std::uint64_t seed,
                                               std::uint64_t t);
// Unit-modulus random symbols at the pairing's sources, zero elsewhere.
std::vector<std::complex<double>> sample_symbols(const Pairing& pr, std::size_t n,
                                                 std::uint64_t seed);

struct CombinedReception {
  NodeIndex source = 0;
  NodeIndex destination = 0;
  std::complex<double> combined;               // y[t1] + y[t2]
  std::complex<double> signal;                 // (h[t1] + h[t2]) x
  std::complex<double> residual_interference;  // sum over other sources
  std::complex<double> noise;                  // z[t1] + z[t2]
  double noise_power = 2.0;                    // analytic variance of the noise sum
  double effective_snr = 0.0;                  // |h[t1] + h[t2]|^2 / noise_power
};

// Adds the receptions of two slots at every destination. Throws InvalidInput
// if the sources did not repeat their symbols.
std::vector<CombinedReception> two_slot_combine(const SlotSample& s1,
                                                const SlotSample& s2,
                                                const Pairing& pr);

}  // namespace capregion
