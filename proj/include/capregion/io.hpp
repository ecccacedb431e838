#pragma once

// JSON file formats for placements, traffic and schedule decompositions.

#include <filesystem>
#include <json.hpp>

#include "capregion/bvn_scheduler.hpp"
#include "capregion/network_model.hpp"
#include "capregion/traffic.hpp"

namespace capregion::io {

using Json = nlohmann::json;

// Throws InvalidInput with "file not found" or "parse error" messages.
Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& doc);

// {"n": N, "nodes": [[x, y], ...]}
NodePlacement placement_from_json(const Json& doc);
Json placement_to_json(const NodePlacement& p);

// {"n": N, "entries": [[u, w, rate], ...]}; duplicate (u, w) entries add up.
UnicastTraffic unicast_from_json(const Json& doc);
Json unicast_to_json(const UnicastTraffic& t);

// {"n": N, "entries": [[u, [w1, w2, ...], rate], ...]}
MulticastTraffic multicast_from_json(const Json& doc);
Json multicast_to_json(const MulticastTraffic& t);

// {"schedules": [[perm[0], perm[1], ...], ...], "weights": [...]}
Json decomposition_to_json(const ScheduleDecomposition& d);

Json cut_to_json(const std::optional<Cut>& cut);
// Finite values as numbers, +inf as "unbounded".
Json rate_to_json(double value);

}  // namespace capregion::io
