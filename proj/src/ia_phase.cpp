#include "capregion/ia_phase.hpp"

#include <omp.h>

#include <cmath>
#include <numbers>
#include <unordered_map>

#include "capregion/errors.hpp"
#include "capregion/random.hpp"

namespace capregion {

double alignment_rate(double distance, double alpha) {
  return 0.5 * std::log2(1.0 + 2.0 * std::pow(distance, -alpha));
}

Pairing::Pairing(std::vector<SourceDestination> pairs) : pairs_(std::move(pairs)) {
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (pairs_[i].source == pairs_[i].destination) {
      throw InvalidInput("pair " + std::to_string(i) + " has source == destination");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (pairs_[i].source == pairs_[j].source) {
        throw InvalidInput("node " + std::to_string(pairs_[i].source) +
                           " is a source twice");
      }
      if (pairs_[i].destination == pairs_[j].destination) {
        throw InvalidInput("node " + std::to_string(pairs_[i].destination) +
                           " is a destination twice");
      }
    }
  }
}

NodeIndex Pairing::max_node() const {
  NodeIndex m = 0;
  for (const auto& sd : pairs_) m = std::max({m, sd.source, sd.destination});
  return m;
}

std::vector<double> ia_pair_rates(const Pairing& pr, const NodePlacement& p,
                                  double alpha) {
  validate_alpha(alpha);
  std::vector<double> rates;
  rates.reserve(pr.size());
  for (const auto& sd : pr.pairs()) {
    rates.push_back(alignment_rate(p.distance(sd.source, sd.destination), alpha));
  }
  return rates;
}

PhaseAlphabet::PhaseAlphabet(int levels) {
  if (levels < 2 || levels % 2 != 0 || levels > 256) {
    throw InvalidInput("phase quantization needs an even number of levels in [2, 256]");
  }
  phasors_.resize(levels);
  const int half = levels / 2;
  for (int k = 0; k < half; ++k) {
    phasors_[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / levels);
    phasors_[k + half] = -phasors_[k];
  }
}

QuantizedPhaseChannel::QuantizedPhaseChannel(NodePlacement placement, double alpha,
                                             int levels, std::uint64_t seed)
    : placement_(std::move(placement)), alpha_(alpha), alphabet_(levels), seed_(seed) {
  validate_alpha(alpha);
}

int QuantizedPhaseChannel::phase_level(NodeIndex u, NodeIndex v, std::uint64_t t) const {
  const std::uint64_t link = u * placement_.size() + v;
  const std::uint64_t h = derive_seed(
      seed_, static_cast<std::uint64_t>(Stream::QuantizedPhase), t, link);
  // Top bits select the level; exact for power-of-two alphabets.
  const double u01 = static_cast<double>(h >> 11) * 0x1.0p-53;
  return static_cast<int>(u01 * levels());
}

ChannelMatrix QuantizedPhaseChannel::gains(std::uint64_t t) const {
  const std::size_t n = placement_.size();
  ChannelMatrix h(n, n);
  for (NodeIndex u = 0; u < n; ++u) {
    for (NodeIndex v = 0; v < n; ++v) {
      if (u == v) continue;
      const double magnitude = std::pow(placement_.distance(u, v), -alpha_ / 2.0);
      h(u, v) = magnitude * alphabet_.phasor(phase_level(u, v, t));
    }
  }
  return h;
}

LinkPattern link_pattern(const QuantizedPhaseChannel& ch, const Pairing& pr,
                         std::uint64_t t) {
  const std::size_t k = pr.size();
  LinkPattern p(k * k, '\0');
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      p[i * k + j] = static_cast<char>(ch.phase_level(pr[i].source, pr[j].destination, t));
    }
  }
  return p;
}

std::vector<LinkPattern> link_patterns(const QuantizedPhaseChannel& ch,
                                       const Pairing& pr, std::uint64_t horizon,
                                       Exec exec) {
  if (pr.max_node() >= ch.placement().size()) {
    throw InvalidInput("pairing refers to nodes outside the placement");
  }
  std::vector<LinkPattern> out(horizon);
  const auto h = static_cast<std::ptrdiff_t>(horizon);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static) num_threads(kernels::max_threads())
    for (std::ptrdiff_t t = 0; t < h; ++t) out[t] = link_pattern(ch, pr, t);
  } else {
    for (std::ptrdiff_t t = 0; t < h; ++t) out[t] = link_pattern(ch, pr, t);
  }
  return out;
}

LinkPattern complement_pattern(const LinkPattern& p, std::size_t pairs, int levels) {
  LinkPattern c = p;
  const int half = levels / 2;
  for (std::size_t i = 0; i < pairs; ++i) {
    for (std::size_t j = 0; j < pairs; ++j) {
      if (i == j) continue;
      auto& level = c[i * pairs + j];
      level = static_cast<char>((static_cast<unsigned char>(level) + half) % levels);
    }
  }
  return c;
}

bool complementary(const LinkPattern& a, const LinkPattern& b, std::size_t pairs,
                   int levels) {
  return b == complement_pattern(a, pairs, levels);
}

std::optional<SlotPair> find_complementary_slot(std::span<const LinkPattern> slots,
                                                std::size_t pairs, int levels) {
  PhaseAlphabet validate(levels);
  std::unordered_map<LinkPattern, std::uint64_t> first_seen;
  for (std::uint64_t t = 0; t < slots.size(); ++t) {
    auto it = first_seen.find(complement_pattern(slots[t], pairs, levels));
    if (it != first_seen.end()) return SlotPair{it->second, t};
    first_seen.emplace(slots[t], t);
  }
  return std::nullopt;
}

std::optional<SlotPair> find_complementary_slot(const QuantizedPhaseChannel& ch,
                                                const Pairing& pr,
                                                std::uint64_t horizon, Exec exec) {
  const auto patterns = link_patterns(ch, pr, horizon, exec);
  return find_complementary_slot(patterns, pr.size(), ch.levels());
}

double complementarity_probability(std::size_t pairs, int levels) {
  return std::pow(static_cast<double>(levels), -static_cast<double>(pairs * pairs));
}

ComplementCount count_complementary_pairs(std::span<const LinkPattern> slots,
                                          std::size_t pairs, int levels) {
  std::unordered_map<LinkPattern, std::uint64_t> counts;
  for (const auto& p : slots) ++counts[p];
  ComplementCount c;
  c.slots = slots.size();
  for (const auto& [pattern, count] : counts) {
    const auto comp = complement_pattern(pattern, pairs, levels);
    if (comp == pattern) {
      c.complementary_pairs += count * (count - 1) / 2;
    } else if (pattern < comp) {
      auto it = counts.find(comp);
      if (it != counts.end()) c.complementary_pairs += count * it->second;
    }
  }
  const double total = 0.5 * static_cast<double>(c.slots) * static_cast<double>(c.slots - 1);
  c.frequency = total > 0.0 ? static_cast<double>(c.complementary_pairs) / total : 0.0;
  return c;
}

SlotSample make_slot_sample(ChannelMatrix gains,
                            std::vector<std::complex<double>> transmitted,
                            std::vector<std::complex<double>> noise) {
  const std::size_t n = gains.rows();
  if (!gains.square() || transmitted.size() != n || noise.size() != n) {
    throw InvalidInput("slot sample dimensions disagree");
  }
  SlotSample s{std::move(gains), std::move(transmitted), std::move(noise), {}};
  s.received.assign(n, 0.0);
  for (NodeIndex v = 0; v < n; ++v) {
    std::complex<double> y = 0.0;
    for (NodeIndex u = 0; u < n; ++u) {
      if (u != v) y += s.gains(u, v) * s.transmitted[u];
    }
    s.received[v] = y + s.noise[v];
  }
  return s;
}

std::vector<std::complex<double>> sample_noise(std::size_t n, std::uint64_t seed,
                                               std::uint64_t t) {
  auto rng = make_rng(seed, Stream::Noise, t);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  std::vector<std::complex<double>> z(n);
  for (auto& v : z) {
    const double re = normal(rng);
    v = {re, normal(rng)};
  }
  return z;
}

std::vector<std::complex<double>> sample_symbols(const Pairing& pr, std::size_t n,
                                                 std::uint64_t seed) {
  auto rng = make_rng(seed, Stream::Symbols, n);
  std::vector<std::complex<double>> x(n, 0.0);
  for (const auto& sd : pr.pairs()) {
    if (sd.source >= n) throw InvalidInput("pairing source outside the network");
    x[sd.source] = std::polar(1.0, 2.0 * std::numbers::pi * uniform01(rng));
  }
  return x;
}

std::vector<CombinedReception> two_slot_combine(const SlotSample& s1,
                                                const SlotSample& s2,
                                                const Pairing& pr) {
  const std::size_t n = s1.gains.rows();
  if (s2.gains.rows() != n || pr.max_node() >= n) {
    throw InvalidInput("slot samples and pairing disagree on the network size");
  }
  if (s1.transmitted != s2.transmitted) {
    throw InvalidInput("sources must send the same symbol in both slots");
  }
  std::vector<CombinedReception> out;
  out.reserve(pr.size());
  for (const auto& sd : pr.pairs()) {
    const NodeIndex w = sd.destination;
    CombinedReception r;
    r.source = sd.source;
    r.destination = w;
    r.combined = s1.received[w] + s2.received[w];
    const auto direct = s1.gains(sd.source, w) + s2.gains(sd.source, w);
    r.signal = direct * s1.transmitted[sd.source];
    for (NodeIndex u = 0; u < n; ++u) {
      if (u == w || u == sd.source) continue;
      r.residual_interference +=
          (s1.gains(u, w) + s2.gains(u, w)) * s1.transmitted[u];
    }
    r.noise = s1.noise[w] + s2.noise[w];
    r.effective_snr = std::norm(direct) * std::norm(s1.transmitted[sd.source]) /
                      r.noise_power;
    out.push_back(r);
  }
  return out;
}

}  // namespace capregion
