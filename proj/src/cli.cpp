#include "capregion/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "capregion/bounds.hpp"
#include "capregion/bvn_scheduler.hpp"
#include "capregion/errors.hpp"
#include "capregion/ia_phase.hpp"
#include "capregion/io.hpp"
#include "capregion/kernels.hpp"
#include "capregion/multicast_star.hpp"
#include "capregion/rayleigh.hpp"
#include "capregion/traffic.hpp"

namespace capregion::cli {
namespace {

using io::Json;

const std::vector<std::size_t> kTable1Sizes = {100, 1000, 10000, 100000};

// Two significant digits, keeping trailing zeros (0.030, not 0.03).
std::string two_significant(double x) {
  int decimals = 0;
  if (x != 0.0) decimals = std::max(0, 1 - static_cast<int>(std::floor(std::log10(std::abs(x)))));
  std::ostringstream s;
  s << std::fixed << std::setprecision(decimals) << x;
  return s.str();
}

void print_pretty(const Json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      out << pad << key << ":\n";
      print_pretty(value, out, indent + 2);
    } else if (value.is_array() && !value.empty() && value.front().is_object()) {
      out << pad << key << ":\n";
      for (const auto& item : value) {
        out << pad << "  -\n";
        print_pretty(item, out, indent + 4);
      }
    } else if (value.is_string()) {
      out << pad << key << ": " << value.get<std::string>() << '\n';
    } else {
      out << pad << key << ": " << value.dump() << '\n';
    }
  }
}

void emit(const RunConfig& cfg, const Json& report, std::ostream& out) {
  if (!cfg.out_path.empty()) {
    io::write_json_file(cfg.out_path, report);
    return;
  }
  if (cfg.pretty) {
    print_pretty(report, out, 0);
  } else {
    out << report.dump(2) << '\n';
  }
}

std::uint64_t require_seed(const RunConfig& cfg, const char* what) {
  if (!cfg.seed) throw InvalidInput(std::string(what) + " is stochastic and needs --seed");
  return *cfg.seed;
}

void require_same_size(const NodePlacement& p, std::size_t traffic_n) {
  if (p.size() != traffic_n) {
    throw InvalidInput("placement has " + std::to_string(p.size()) +
                       " nodes but traffic has n = " + std::to_string(traffic_n));
  }
}

Json membership_json(const RegionMembership& m) {
  return {{"member", m.member},
          {"rho_hat_star", io::rate_to_json(m.rho_hat_star)},
          {"max_load", m.max_load},
          {"binding_cut", io::cut_to_json(m.binding_cut)}};
}

RegionMembership membership_of(const RunConfig& cfg, const Json& traffic) {
  if (cfg.kind == "uc") return membership_uc(io::unicast_from_json(traffic));
  return membership_mc(io::multicast_from_json(traffic));
}

std::size_t traffic_size(const RunConfig& cfg, const Json& traffic) {
  if (cfg.kind == "uc") return io::unicast_from_json(traffic).size();
  return io::multicast_from_json(traffic).size();
}

int cmd_place(const RunConfig& cfg, std::ostream& out) {
  const NodePlacement p = cfg.kind == "grid"
                              ? grid_placement(cfg.n)
                              : uniform_random_placement(cfg.n, require_seed(cfg, "uniform placement"));
  emit(cfg, io::placement_to_json(p), out);
  return kSuccess;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  const Json traffic = io::read_json_file(cfg.traffic_path);
  if (!cfg.placement_path.empty()) {
    require_same_size(io::placement_from_json(io::read_json_file(cfg.placement_path)),
                      traffic_size(cfg, traffic));
  }
  const RegionMembership m = membership_of(cfg, traffic);
  Json report = membership_json(m);
  report["kind"] = cfg.kind;
  emit(cfg, report, out);
  return m.member ? kSuccess : kInfeasible;
}

int cmd_bounds(const RunConfig& cfg, std::ostream& out) {
  const NodePlacement p = io::placement_from_json(io::read_json_file(cfg.placement_path));
  const Json traffic = io::read_json_file(cfg.traffic_path);
  require_same_size(p, traffic_size(cfg, traffic));
  const double rm = p.r_min();
  const BoundFactors f = cfg.kind == "uc" ? unicast_factors(p.size(), cfg.alpha, rm)
                                          : multicast_factors(p.size(), cfg.alpha, rm);
  const BoundsReport b = make_bounds_report(f, membership_of(cfg, traffic));
  const Json report = {{"kind", cfg.kind},
                       {"n", p.size()},
                       {"alpha", cfg.alpha},
                       {"r_min", rm},
                       {"inner_factor", b.inner_factor},
                       {"outer_factor", b.outer_factor},
                       {"rho_hat_star", io::rate_to_json(b.rho_hat_star)},
                       {"rho_low", io::rate_to_json(b.rho_low)},
                       {"rho_high", io::rate_to_json(b.rho_high)},
                       {"gap_ratio", b.gap_ratio},
                       {"member", b.member},
                       {"binding_cut", io::cut_to_json(b.binding_cut)}};
  emit(cfg, report, out);
  return kSuccess;
}

int cmd_decompose(const RunConfig& cfg, std::ostream& out) {
  UnicastTraffic t = io::unicast_from_json(io::read_json_file(cfg.traffic_path));
  if (cfg.scale_to_region && !t.is_zero()) {
    t = t.scaled(membership_uc(t).rho_hat_star);
  }
  const ScheduleDecomposition d = birkhoff_decompose(complete_to_doubly_stochastic(t));
  emit(cfg, io::decomposition_to_json(d), out);
  return kSuccess;
}

int cmd_route_mc(const RunConfig& cfg, std::ostream& out) {
  const NodePlacement p = io::placement_from_json(io::read_json_file(cfg.placement_path));
  const MulticastTraffic t = io::multicast_from_json(io::read_json_file(cfg.traffic_path));
  require_same_size(p, t.size());
  const StarRouting r = route_over_star(t);
  const MulticastRateCertificate c = multicast_achieved_rates(t, p, cfg.alpha);
  const Json report = {{"n", p.size()},
                       {"alpha", cfg.alpha},
                       {"uplink_load", r.uplink},
                       {"downlink_load", r.downlink},
                       {"achieved_multiple", c.achieved_multiple},
                       {"floor", c.floor},
                       {"min_pair_rate", c.min_pair_rate}};
  emit(cfg, report, out);
  return kSuccess;
}

int cmd_ia_demo(const RunConfig& cfg, std::ostream& out) {
  const std::uint64_t seed = require_seed(cfg, "ia-demo");
  const std::size_t k = cfg.n_pairs;
  if (k == 0) throw InvalidInput("--n-pairs must be positive");
  std::vector<SourceDestination> sd;
  for (NodeIndex i = 0; i < k; ++i) sd.push_back({i, k + i});
  const Pairing pr(std::move(sd));
  const QuantizedPhaseChannel ch(uniform_random_placement(2 * k, seed), cfg.alpha,
                                 cfg.quantization, seed);
  Json report = {{"n_pairs", k},
                 {"quantization", cfg.quantization},
                 {"horizon", cfg.horizon},
                 {"seed", seed},
                 {"relevant_links", k * k},
                 {"complementarity_probability",
                  complementarity_probability(k, cfg.quantization)}};
  const auto found = find_complementary_slot(ch, pr, cfg.horizon);
  report["found"] = found.has_value();
  if (found) {
    const std::size_t n = 2 * k;
    const auto symbols = sample_symbols(pr, n, seed);
    const SlotSample s1 = make_slot_sample(ch.gains(found->first), symbols,
                                           sample_noise(n, seed, found->first));
    const SlotSample s2 = make_slot_sample(ch.gains(found->second), symbols,
                                           sample_noise(n, seed, found->second));
    report["slots"] = {found->first, found->second};
    const auto rates = ia_pair_rates(pr, ch.placement(), cfg.alpha);
    Json pairs = Json::array();
    const auto combined = two_slot_combine(s1, s2, pr);
    for (std::size_t i = 0; i < combined.size(); ++i) {
      const auto& c = combined[i];
      pairs.push_back({{"source", c.source},
                       {"destination", c.destination},
                       {"residual_interference", std::abs(c.residual_interference)},
                       {"effective_snr", c.effective_snr},
                       {"rate", rates[i]}});
    }
    report["pairs"] = std::move(pairs);
  }
  emit(cfg, report, out);
  return kSuccess;
}

int cmd_rayleigh(const RunConfig& cfg, std::ostream& out) {
  const std::uint64_t seed = require_seed(cfg, "rayleigh");
  const NodePlacement p = io::placement_from_json(io::read_json_file(cfg.placement_path));
  const std::size_t n = p.size();
  const RayleighInnerRate inner = rayleigh_inner_rate(n, cfg.alpha);
  const double outer = rayleigh_outer_factor(n, cfg.alpha, p.r_min());
  const OpportunisticSummary s = simulate_opportunistic(p, cfg.alpha, cfg.slots, seed);
  Json min_rate = nullptr;
  if (std::isfinite(s.min_pair_rate)) min_rate = s.min_pair_rate;
  const Json report = {{"n", n},
                       {"alpha", cfg.alpha},
                       {"slots", s.slots},
                       {"seed", seed},
                       {"idle_fraction", s.idle_fraction},
                       {"mean_coverage", s.mean_coverage},
                       {"rate_floor", s.rate_floor},
                       {"min_pair_rate", min_rate},
                       {"min_pair_share", s.min_pair_share},
                       {"max_pair_share", s.max_pair_share},
                       {"inner_per_pair_floor", inner.per_pair_floor},
                       {"inner_multiple", inner.region_multiple},
                       {"outer_multiple", outer}};
  emit(cfg, report, out);
  return kSuccess;
}

int cmd_rayleigh_outer(const RunConfig& cfg, std::ostream& out) {
  const WaterfillSolution w = solve_waterfill(cfg.n, cfg.alpha, cfg.r_min);
  const Json report = {{"n", cfg.n},
                       {"alpha", cfg.alpha},
                       {"r_min", cfg.r_min},
                       {"g0", w.g0},
                       {"expected_power", w.expected_power},
                       {"gain_scale", w.gain_scale},
                       {"bound_bits", w.bound_bits},
                       {"jensen_bits", w.jensen_bits},
                       {"outer_limit_bits", w.outer_limit_bits}};
  emit(cfg, report, out);
  return kSuccess;
}

int cmd_table1(const RunConfig& cfg, std::ostream& out) {
  Json values = Json::array();
  std::string row;
  for (std::size_t n : kTable1Sizes) {
    const double v = table1_rho_ia(n, cfg.alpha);
    values.push_back(v);
    if (!row.empty()) row += ' ';
    row += two_significant(v);
  }
  const Json report = {{"alpha", cfg.alpha}, {"n", kTable1Sizes}, {"rho_ia", values}, {"row", row}};
  if (cfg.pretty && cfg.out_path.empty()) {
    out << row << '\n';
  } else {
    emit(cfg, report, out);
  }
  return kSuccess;
}

void apply_thread_limit() {
  const char* env = std::getenv("CAPREGION_THREADS");
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  const long threads = std::strtol(env, &end, 10);
  if (*end != '\0' || threads < 1) {
    throw InvalidInput(std::string("CAPREGION_THREADS must be a positive integer, got '") +
                       env + "'");
  }
  kernels::set_max_threads(static_cast<int>(threads));
}

}  // namespace

ParseResult parse_args(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
  CLI::App app{"Capacity-region bounds and schedules for dense wireless networks", "capregion"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--pretty", cfg.pretty, "Human-readable output");
    sub->add_option("--out", cfg.out_path, "Write the JSON report to this file");
  };
  auto add_alpha = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--alpha", cfg.alpha, "Path-loss exponent (>= 2)");
    if (required) o->required();
  };
  auto add_seed = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--seed", seed, "RNG seed");
    if (required) o->required();
    return o;
  };

  std::vector<std::pair<CLI::App*, Command>> commands;
  {
    auto* s = app.add_subcommand("place", "Generate a node placement");
    s->add_option("--kind", cfg.kind, "grid or uniform")
        ->required()
        ->check(CLI::IsMember({"grid", "uniform"}));
    s->add_option("--n", cfg.n, "Number of nodes")->required();
    add_seed(s, false);
    add_common(s);
    commands.emplace_back(s, Command::Place);
  }
  auto add_kind = [&](CLI::App* s) {
    s->add_option("--kind", cfg.kind, "uc (unicast) or mc (multicast)")
        ->required()
        ->check(CLI::IsMember({"uc", "mc"}));
  };
  {
    auto* s = app.add_subcommand("check", "Test membership in the approximate region");
    s->add_option("--placement", cfg.placement_path, "Placement JSON");
    s->add_option("--traffic", cfg.traffic_path, "Traffic JSON")->required();
    add_kind(s);
    add_common(s);
    commands.emplace_back(s, Command::Check);
  }
  {
    auto* s = app.add_subcommand("bounds", "Inner and outer capacity scaling bounds");
    s->add_option("--placement", cfg.placement_path, "Placement JSON")->required();
    s->add_option("--traffic", cfg.traffic_path, "Traffic JSON")->required();
    add_alpha(s, true);
    add_kind(s);
    add_common(s);
    commands.emplace_back(s, Command::Bounds);
  }
  {
    auto* s = app.add_subcommand("decompose", "Permutation schedule decomposition");
    s->add_option("--traffic", cfg.traffic_path, "Unicast traffic JSON")->required();
    s->add_flag("--scale-to-region", cfg.scale_to_region,
                "Scale the traffic by its largest feasible multiple first");
    add_common(s);
    commands.emplace_back(s, Command::Decompose);
  }
  {
    auto* s = app.add_subcommand("route-mc", "Two-phase multicast routing over the star graph");
    s->add_option("--placement", cfg.placement_path, "Placement JSON")->required();
    s->add_option("--traffic", cfg.traffic_path, "Multicast traffic JSON")->required();
    add_alpha(s, true);
    add_common(s);
    commands.emplace_back(s, Command::RouteMc);
  }
  {
    auto* s = app.add_subcommand("ia-demo", "Two-slot interference alignment demonstration");
    s->add_option("--n-pairs", cfg.n_pairs, "Number of source-destination pairs")->required();
    s->add_option("--quantization", cfg.quantization, "Phase levels (even)");
    s->add_option("--horizon", cfg.horizon, "Slots to search")->required();
    add_alpha(s, false);
    add_seed(s, true);
    add_common(s);
    commands.emplace_back(s, Command::IaDemo);
  }
  {
    auto* s = app.add_subcommand("rayleigh", "Opportunistic matching under Rayleigh fading");
    s->add_option("--placement", cfg.placement_path, "Placement JSON")->required();
    add_alpha(s, true);
    s->add_option("--slots", cfg.slots, "Number of slots")->required();
    add_seed(s, true);
    add_common(s);
    commands.emplace_back(s, Command::Rayleigh);
  }
  {
    auto* s = app.add_subcommand("rayleigh-outer", "Water-filling cut bound");
    s->add_option("--n", cfg.n, "Number of nodes")->required();
    add_alpha(s, true);
    s->add_option("--rmin", cfg.r_min, "Normalized minimum separation")->required();
    add_common(s);
    commands.emplace_back(s, Command::RayleighOuter);
  }
  {
    auto* s = app.add_subcommand("table1", "Interference-alignment rate for n = 1e2..1e5");
    add_alpha(s, false);
    add_common(s);
    commands.emplace_back(s, Command::Table1);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return {std::nullopt, code == 0 ? kSuccess : kInvalidInput};
  }
  auto given = [](CLI::App* sub, const char* name) {
    const CLI::Option* o = sub->get_option_no_throw(name);
    return o != nullptr && o->count() > 0;
  };
  for (const auto& [sub, command] : commands) {
    if (sub->parsed()) {
      cfg.command = command;
      if (command == Command::IaDemo && !given(sub, "--alpha")) cfg.alpha = 2.0;
      if (command == Command::Table1 && !given(sub, "--alpha")) cfg.alpha = 4.0;
      if (given(sub, "--seed")) cfg.seed = seed;
    }
  }
  return {cfg, kSuccess};
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    apply_thread_limit();
    switch (cfg.command) {
      case Command::Place: return cmd_place(cfg, out);
      case Command::Check: return cmd_check(cfg, out);
      case Command::Bounds: return cmd_bounds(cfg, out);
      case Command::Decompose: return cmd_decompose(cfg, out);
      case Command::RouteMc: return cmd_route_mc(cfg, out);
      case Command::IaDemo: return cmd_ia_demo(cfg, out);
      case Command::Rayleigh: return cmd_rayleigh(cfg, out);
      case Command::RayleighOuter: return cmd_rayleigh_outer(cfg, out);
      case Command::Table1: return cmd_table1(cfg, out);
    }
  } catch (const HypothesisViolation& e) {
    err << "hypothesis violation: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const Infeasible& e) {
    err << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kInvalidInput;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const ParseResult parsed = parse_args(args, out, err);
  if (!parsed.config) return parsed.exit_code;
  return execute(*parsed.config, out, err);
}

}  // namespace capregion::cli
