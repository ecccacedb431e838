// Acceptance harness: one PASS/FAIL line per criterion, with the criterion's
// wall-clock limit enforced. `--criterion N` runs a single criterion.

#include <CLI11.hpp>
#include <Eigen/Dense>
#include <boost/math/special_functions/gamma.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <unordered_set>

#include "capregion/bounds.hpp"
#include "capregion/errors.hpp"
#include "capregion/bvn_scheduler.hpp"
#include "capregion/ia_phase.hpp"
#include "capregion/multicast_star.hpp"
#include "capregion/rayleigh.hpp"
#include "capregion/traffic.hpp"
#include "support.hpp"

using namespace capregion;
namespace t = capregion::testing;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

// Collects the first few failures with context.
class Recorder {
 public:
  void require(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) messages_ += (messages_.empty() ? "" : "; ") + what;
  }
  Verdict verdict(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    return {false, std::to_string(failures_) + " failure(s): " + messages_};
  }

 private:
  int failures_ = 0;
  std::string messages_;
};

std::string fmt(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

Verdict criterion_table1() {
  const std::size_t ns[] = {100, 1000, 10000, 100000};
  const double printed[] = {0.042, 0.035, 0.030, 0.027};
  Recorder r;
  std::string values;
  for (int i = 0; i < 4; ++i) {
    const double v = table1_rho_ia(ns[i], 4.0);
    values += (i ? " " : "") + fmt(v, 5);
    const bool close = std::abs(v - printed[i]) <= 5e-4;
    const bool rounds = std::round(v * 1000.0) == std::round(printed[i] * 1000.0);
    r.require(close && rounds, "n=" + std::to_string(ns[i]) + " gives " + fmt(v, 6) +
                                   " vs printed " + fmt(printed[i], 3) + " (|diff| " +
                                   fmt(std::abs(v - printed[i]), 3) + ")");
  }
  return r.verdict("rho_IA(alpha=4) = " + values);
}

Verdict criterion_theorem1() {
  auto rng = t::test_rng(1001);
  Recorder r;
  std::size_t checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = t::uniform_size(rng, 9, 64);
    const auto p = uniform_random_placement(n, rng());
    auto lambda = t::random_unicast(rng, n, t::uniform_real(rng, 0.05, 1.0));
    lambda = lambda.scaled(membership_uc(lambda).rho_hat_star);
    const auto d = birkhoff_decompose(complete_to_doubly_stochastic(lambda));
    for (double alpha : {2.0, 3.0, 4.0}) {
      const auto achieved = schedule_rates(d, p, alpha);
      const double inner = std::exp2(-alpha / 2.0);
      for (NodeIndex u = 0; u < n; ++u)
        for (NodeIndex w = 0; w < n; ++w) {
          ++checked;
          r.require(achieved.rate(u, w) >= inner * lambda.rate(u, w) - 1e-9,
                    "trial " + std::to_string(trial) + " alpha " + fmt(alpha) + " entry (" +
                        std::to_string(u) + "," + std::to_string(w) + ")");
        }
    }
  }
  return r.verdict(std::to_string(checked) + " entries at or above 2^(-alpha/2) lambda");
}

Verdict criterion_birkhoff() {
  auto rng = t::test_rng(1002);
  Recorder r;
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = t::uniform_size(rng, 1, 50);
    const std::size_t k = t::uniform_size(rng, 1, 3 * n);
    const auto m = t::random_doubly_stochastic(rng, n, k);
    const auto d = birkhoff_decompose(m);
    const double err = t::max_abs_diff(d.reconstruct(), m);
    worst = std::max(worst, err);
    r.require(err < 1e-9, "reconstruction error " + fmt(err) + " at n=" + std::to_string(n));
    r.require(d.size() <= n * n - 2 * n + 2, "too many terms at n=" + std::to_string(n));
    for (const auto& s : d.schedules) r.require(t::is_permutation_of_n(s, n), "non-permutation schedule");
  }
  // n = 3 against the least-squares fit over all six permutation matrices.
  std::vector<Permutation> perms;
  Permutation p = {0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  Eigen::Matrix<double, 9, 6> basis = Eigen::Matrix<double, 9, 6>::Zero();
  for (int k = 0; k < 6; ++k)
    for (int u = 0; u < 3; ++u) basis(u * 3 + static_cast<int>(perms[k][u]), k) = 1.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = trial == 0 ? DenseMatrix<double>(3, 3, 1.0 / 3.0) : t::random_doubly_stochastic(rng, 3, 4);
    const auto d = birkhoff_decompose(m);
    Eigen::Matrix<double, 6, 1> w = Eigen::Matrix<double, 6, 1>::Zero();
    bool known = true;
    for (std::size_t i = 0; i < d.size(); ++i) {
      const auto it = std::find(perms.begin(), perms.end(), d.schedules[i]);
      if (it == perms.end()) {
        known = false;
        continue;
      }
      w(it - perms.begin()) += d.weights[i];
    }
    Eigen::Matrix<double, 9, 1> target;
    for (int i = 0; i < 9; ++i) target(i) = m.data()[i];
    const Eigen::Matrix<double, 6, 1> ls = basis.completeOrthogonalDecomposition().solve(target);
    r.require(known, "n=3 schedule outside the six permutations");
    r.require((basis * w - target).norm() < 1e-9, "n=3 decomposition residual");
    r.require((basis * ls - target).norm() < 1e-9, "n=3 least-squares residual");
  }
  return r.verdict("500 matrices, worst error " + fmt(worst, 3) + "; n=3 oracle agrees");
}

Verdict criterion_outer_dominance() {
  auto rng = t::test_rng(1004);
  Recorder r;
  std::size_t checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = t::uniform_size(rng, 9, 300);
    NodePlacement p = trial % 10 == 0 && std::sqrt(double(n)) == std::floor(std::sqrt(double(n)))
                          ? grid_placement(n)
                          : uniform_random_placement(n, rng());
    const double alpha = t::uniform_real(rng, 2.0, 6.0);
    const double limit = std::log2(std::pow(static_cast<double>(n), 2.0 + alpha / 2.0) *
                                   std::pow(p.r_min(), -alpha));
    for (NodeIndex w = 0; w < n; ++w) {
      for (auto dir : {CutDirection::Into, CutDirection::OutOf}) {
        ++checked;
        const double c = cutset_single_node(p, alpha, w, dir);
        r.require(c <= limit, "cut " + fmt(c) + " > " + fmt(limit) + " at n=" + std::to_string(n));
      }
    }
  }
  return r.verdict(std::to_string(checked) + " single-node cuts below log2(n^(2+alpha/2) r_min^-alpha)");
}

// Complementary partners of every pattern over k*k links, counted exhaustively.
double exhaustive_probability(std::size_t k, int q) {
  std::vector<LinkPattern> all{LinkPattern{}};
  for (std::size_t link = 0; link < k * k; ++link) {
    std::vector<LinkPattern> next;
    next.reserve(all.size() * q);
    for (const auto& p : all)
      for (int level = 0; level < q; ++level) next.push_back(p + static_cast<char>(level));
    all = std::move(next);
  }
  double partners = 0.0;
  if (all.size() <= 256) {
    for (const auto& a : all)
      for (const auto& b : all)
        if (complementary(a, b, k, q)) partners += 1.0;
  } else {
    const std::unordered_set<LinkPattern> universe(all.begin(), all.end());
    for (const auto& a : all) partners += static_cast<double>(universe.count(complement_pattern(a, k, q)));
  }
  return partners / (static_cast<double>(all.size()) * static_cast<double>(all.size()));
}

Verdict criterion_two_slot() {
  Recorder r;
  const int q = 4;
  std::string summary;
  double worst_residual = 0.0;
  for (std::size_t k = 1; k <= 3; ++k) {
    std::vector<SourceDestination> sd;
    for (NodeIndex i = 0; i < k; ++i) sd.push_back({i, k + i});
    const Pairing pr(sd);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const QuantizedPhaseChannel ch(uniform_random_placement(2 * k, 500 + seed), 2.0 + seed, q, seed);
      const auto found = find_complementary_slot(ch, pr, 100000);
      r.require(found.has_value(), "no complementary slots for K=" + std::to_string(k));
      if (!found) continue;
      const auto x = sample_symbols(pr, 2 * k, seed);
      const auto s1 = make_slot_sample(ch.gains(found->first), x, sample_noise(2 * k, seed, found->first));
      const auto s2 = make_slot_sample(ch.gains(found->second), x, sample_noise(2 * k, seed, found->second));
      for (const auto& c : two_slot_combine(s1, s2, pr)) {
        worst_residual = std::max(worst_residual, std::abs(c.residual_interference));
        r.require(std::abs(c.residual_interference) < 1e-12, "residual " + fmt(std::abs(c.residual_interference)));
      }
    }
    const QuantizedPhaseChannel ch(uniform_random_placement(2 * k, 900 + k), 3.0, q, 77 + k);
    const auto slots = link_patterns(ch, pr, 100000);
    const auto count = count_complementary_pairs(slots, k, q);
    const double exact = exhaustive_probability(k, q);
    r.require(exact == complementarity_probability(k, q), "exhaustive count disagrees with Q^-K^2");
    const double rel = std::abs(count.frequency / exact - 1.0);
    r.require(rel <= 0.2, "K=" + std::to_string(k) + " frequency " + fmt(count.frequency) + " vs " + fmt(exact));
    summary += "K=" + std::to_string(k) + ": " + fmt(count.frequency, 4) + " vs " + fmt(exact, 4) + "; ";
  }
  return r.verdict(summary + "max residual " + fmt(worst_residual, 3));
}

Verdict criterion_multicast() {
  auto rng = t::test_rng(1006);
  Recorder r;
  int feasible = 0;
  double lowest_margin = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = t::uniform_size(rng, 9, 64);
    const auto p = uniform_random_placement(n, rng());
    const double alpha = t::uniform_real(rng, 2.0, 6.0);
    auto traffic = t::random_multicast(rng, n, t::uniform_size(rng, 1, 2 * n), 1.0);
    traffic = traffic.scaled(membership_mc(traffic).rho_hat_star * t::uniform_real(rng, 0.5, 1.5));
    const bool member = membership_mc(traffic).member;
    bool routed = true;
    try {
      route_over_star(traffic);
    } catch (const Infeasible&) {
      routed = false;
    }
    r.require(routed == member, "routing/membership disagree at trial " + std::to_string(trial));
    if (!member) continue;
    ++feasible;
    const auto cert = multicast_achieved_rates(traffic, p, alpha);
    const double floor = std::exp2(-1.0 - alpha / 2.0);
    lowest_margin = std::min(lowest_margin, cert.achieved_multiple / floor);
    r.require(cert.achieved_multiple >= floor, "achieved " + fmt(cert.achieved_multiple) + " < " + fmt(floor));
  }
  return r.verdict(std::to_string(feasible) + " feasible of 100; min achieved/floor " + fmt(lowest_margin, 4));
}

Verdict criterion_concentration() {
  const std::size_t n = 10000;
  const double ln_n = std::log(static_cast<double>(n));
  const double scale = std::log(ln_n) / ln_n;
  int inside = 0;
  double lo = 1e9, hi = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto loads = unicast_loads(random_sd_pairing(n, seed));
    const double v = scale * *std::max_element(loads.destination.begin(), loads.destination.end());
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    if (v >= 0.5 && v <= 2.0) ++inside;
  }
  const std::string detail = std::to_string(inside) + "/100 seeds in [0.5, 2] (range " + fmt(lo, 4) +
                             ".." + fmt(hi, 4) + ")";
  return {inside >= 95, detail};
}

Verdict criterion_waterfill() {
  Recorder r;
  auto rng = t::test_rng(1008);
  double worst = 0.0;
  for (std::size_t n : {9u, 100u, 1000u}) {
    for (double alpha : {2.0, 4.0}) {
      const double r_min = 1.0;
      const auto s = solve_waterfill(n, alpha, r_min);
      const std::string tag = " (n=" + std::to_string(n) + ", alpha=" + fmt(alpha) + ")";
      r.require(s.g0 >= 1.0 / (4.0 * (n - 1.0)), "g0 below 1/(4(n-1))" + tag);
      const double limit = std::log2(4.0 * std::pow(static_cast<double>(n), 2.0 + alpha / 2.0) *
                                     std::pow(r_min, -alpha));
      r.require(s.bound_bits <= limit, "bound_bits above the limit" + tag);
      std::gamma_distribution<double> erlang(static_cast<double>(n - 1), 1.0);
      const int samples = 4000000;
      double mean = 0.0;
      for (int i = 0; i < samples; ++i) mean += waterfill_power(erlang(rng), s.g0, s.gain_scale);
      mean /= samples;
      const double rel = std::abs(mean / s.expected_power - 1.0);
      worst = std::max(worst, rel);
      r.require(rel < 1e-3, "Monte Carlo power off by " + fmt(rel, 3) + tag);
    }
  }
  return r.verdict("6 configurations, worst Monte Carlo relative gap " + fmt(worst, 3));
}

Verdict criterion_rayleigh_inner() {
  Recorder r;
  const std::size_t n = 100;
  const double alpha = 2.0;
  const auto p = uniform_random_placement(n, 2024);
  const double floor = 0.5 * std::log2(1.0 + std::exp2(-alpha / 2.0) * std::log(static_cast<double>(n)));
  int active = 0;
  std::size_t pairs = 0;
  for (std::uint64_t slot = 0; slot < 1000; ++slot) {
    const auto plan = opportunistic_round(p, alpha, 31337, slot);
    if (plan.idle) continue;
    ++active;
    for (const auto& op : plan.pairs) {
      ++pairs;
      r.require(op.rate >= floor, "pair rate " + fmt(op.rate) + " below floor " + fmt(floor));
    }
  }
  r.require(active >= 500, "non-idle fraction " + fmt(active / 1000.0));
  auto rng = t::test_rng(1009);
  int agree = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t m = t::uniform_size(rng, 2, 10);
    const auto edges = t::random_graph(rng, m, t::uniform_real(rng, 0.05, 0.8));
    const auto matching = max_matching(edges, m);
    const bool ok = t::is_valid_matching(matching, edges, m) &&
                    matching.size() == t::exhaustive_matching_size(edges, m);
    if (ok) ++agree;
    r.require(ok, "matching differs from exhaustive oracle");
  }
  return r.verdict("non-idle " + fmt(active / 1000.0, 3) + ", " + std::to_string(pairs) +
                   " pairs above floor " + fmt(floor, 4) + "; " + std::to_string(agree) +
                   "/1000 matchings optimal");
}

Verdict criterion_permutation_invariance() {
  auto rng = t::test_rng(1010);
  Recorder r;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = t::uniform_size(rng, 2, 60);
    const auto uc = t::random_unicast(rng, n, 0.3);
    const auto mc = t::random_multicast(rng, std::max<std::size_t>(n, 3), n, 1.0);
    const auto pi_uc = t::random_permutation(rng, n);
    const auto pi_mc = t::random_permutation(rng, mc.size());
    const double a = membership_uc(uc).rho_hat_star;
    const double b = membership_uc(permute_traffic(uc, pi_uc)).rho_hat_star;
    const double c = membership_mc(mc).rho_hat_star;
    const double d = membership_mc(permute_traffic(mc, pi_mc)).rho_hat_star;
    r.require(std::abs(a - b) <= 1e-12 * std::max(1.0, a), "unicast rho changed: " + fmt(a, 17) + " vs " + fmt(b, 17));
    r.require(std::abs(c - d) <= 1e-12 * std::max(1.0, c), "multicast rho changed: " + fmt(c, 17) + " vs " + fmt(d, 17));
  }
  return r.verdict("100 relabelings per traffic kind");
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> selected;
  app.add_option("--criterion", selected, "Criterion number(s) to run (default: all)");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "interference-alignment rate table", 1.0, criterion_table1},
      {2, "unicast inner bound end to end", 30.0, criterion_theorem1},
      {3, "Birkhoff decomposition", 60.0, criterion_birkhoff},
      {4, "single-node cut dominance", 10.0, criterion_outer_dominance},
      {5, "two-slot cancellation", 60.0, criterion_two_slot},
      {6, "multicast sandwich", 30.0, criterion_multicast},
      {7, "random pairing concentration", 30.0, criterion_concentration},
      {8, "Rayleigh outer bound", 60.0, criterion_waterfill},
      {9, "Rayleigh inner bound", 120.0, criterion_rayleigh_inner},
      {10, "relabeling invariance", 5.0, criterion_permutation_invariance},
  };

  bool all_pass = true;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds >= c.limit_seconds) {
      v.pass = false;
      v.detail += "; over the time limit";
    }
    all_pass = all_pass && v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << v.detail << " ("
              << fmt(seconds, 3) << " s, limit " << fmt(c.limit_seconds) << " s)" << std::endl;
  }
  return all_pass ? 0 : 1;
}
