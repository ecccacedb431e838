#include "capregion/io.hpp"

#include <cmath>
#include <fstream>
#include <string>

#include "capregion/errors.hpp"

namespace capregion::io {
namespace {

std::size_t read_size(const Json& doc) {
  if (!doc.is_object() || !doc.contains("n")) {
    throw InvalidInput("JSON document needs an \"n\" field");
  }
  const Json& n = doc.at("n");
  if (!n.is_number_unsigned() && !(n.is_number_integer() && n.get<long long>() >= 0)) {
    throw InvalidInput("\"n\" must be a non-negative integer");
  }
  return n.get<std::size_t>();
}

const Json& read_entries(const Json& doc) {
  if (!doc.contains("entries") || !doc.at("entries").is_array()) {
    throw InvalidInput("JSON document needs an \"entries\" array");
  }
  return doc.at("entries");
}

NodeIndex read_node(const Json& v, std::size_t n) {
  if (!v.is_number_integer() || v.get<long long>() < 0 ||
      static_cast<std::size_t>(v.get<long long>()) >= n) {
    throw InvalidInput("node index " + v.dump() + " out of range for n = " +
                       std::to_string(n));
  }
  return static_cast<NodeIndex>(v.get<long long>());
}

double read_rate(const Json& v) {
  if (!v.is_number()) throw InvalidInput("rate " + v.dump() + " is not a number");
  return v.get<double>();
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("file not found: " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidInput("parse error in " + path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

NodePlacement placement_from_json(const Json& doc) {
  const std::size_t n = read_size(doc);
  if (!doc.contains("nodes") || !doc.at("nodes").is_array()) {
    throw InvalidInput("placement needs a \"nodes\" array");
  }
  const Json& nodes = doc.at("nodes");
  if (nodes.size() != n) {
    throw InvalidInput("placement lists " + std::to_string(nodes.size()) +
                       " nodes but n = " + std::to_string(n));
  }
  std::vector<Point> pts;
  pts.reserve(n);
  for (const Json& xy : nodes) {
    if (!xy.is_array() || xy.size() != 2 || !xy[0].is_number() || !xy[1].is_number()) {
      throw InvalidInput("node coordinates must be [x, y], got " + xy.dump());
    }
    pts.push_back({xy[0].get<double>(), xy[1].get<double>()});
  }
  return NodePlacement(std::move(pts));
}

Json placement_to_json(const NodePlacement& p) {
  Json nodes = Json::array();
  for (const Point& q : p.nodes()) nodes.push_back({q.x, q.y});
  return {{"n", p.size()}, {"nodes", std::move(nodes)}};
}

UnicastTraffic unicast_from_json(const Json& doc) {
  const std::size_t n = read_size(doc);
  if (n < 2) throw InvalidInput("traffic needs at least 2 nodes");
  std::vector<UnicastEntry> entries;
  for (const Json& e : read_entries(doc)) {
    if (!e.is_array() || e.size() != 3) {
      throw InvalidInput("unicast entry must be [u, w, rate], got " + e.dump());
    }
    const NodeIndex u = read_node(e[0], n);
    const NodeIndex w = read_node(e[1], n);
    if (u == w) throw InvalidInput("unicast entry has source equal to destination");
    entries.push_back({u, w, read_rate(e[2])});
  }
  return UnicastTraffic(n, std::move(entries));
}

Json unicast_to_json(const UnicastTraffic& t) {
  Json entries = Json::array();
  for (const auto& e : t.entries()) entries.push_back({e.source, e.destination, e.rate});
  return {{"n", t.size()}, {"entries", std::move(entries)}};
}

MulticastTraffic multicast_from_json(const Json& doc) {
  const std::size_t n = read_size(doc);
  std::vector<MulticastEntry> out;
  for (const Json& e : read_entries(doc)) {
    if (!e.is_array() || e.size() != 3 || !e[1].is_array()) {
      throw InvalidInput("multicast entry must be [u, [w...], rate], got " + e.dump());
    }
    MulticastEntry m;
    m.source = read_node(e[0], n);
    for (const Json& w : e[1]) m.destinations.push_back(read_node(w, n));
    m.rate = read_rate(e[2]);
    out.push_back(std::move(m));
  }
  return MulticastTraffic(n, std::move(out));
}

Json multicast_to_json(const MulticastTraffic& t) {
  Json entries = Json::array();
  for (const auto& e : t.entries()) entries.push_back({e.source, e.destinations, e.rate});
  return {{"n", t.size()}, {"entries", std::move(entries)}};
}

Json decomposition_to_json(const ScheduleDecomposition& d) {
  return {{"schedules", d.schedules}, {"weights", d.weights}};
}

Json cut_to_json(const std::optional<Cut>& cut) {
  if (!cut) return nullptr;
  return {{"kind", cut->kind == CutKind::Source ? "source" : "destination"},
          {"node", cut->node}};
}

Json rate_to_json(double value) {
  if (std::isinf(value) && value > 0) return "unbounded";
  return value;
}

}  // namespace capregion::io
