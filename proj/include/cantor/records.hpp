#pragma once

// Run records, exact JSON serialization, and the one-file-per-run cache.
// Serialized rationals are integer num/den pairs; cache files are written
// atomically and are byte-identical across reruns and thread counts.

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "cantor/directed.hpp"
#include "cantor/histogram.hpp"
#include "cantor/lower.hpp"

namespace cantor {

inline constexpr const char* kToolVersion = "cantor-bounds 1.0.0";
inline constexpr int kSchemaVersion = 1;

using json = nlohmann::ordered_json;

json rat_to_json(const Rat64& r);
Rat64 rat_from_json(const json& j);

json bound_to_json(const BoundResult& b);
json chain_to_json(const LowerBoundChain& c);

struct RunRecord {
    int schema_version = kSchemaVersion;
    std::string command;
    int d = 0;
    int k = 0;
    json flags = json::object();
    json result = json::object();
    std::int64_t wall_time_ms = 0;
    std::uint64_t enumeration_count = 0;
    std::string tool_version = kToolVersion;

    json to_json(bool normalize_timing) const;
};

std::filesystem::path cache_dir();

// results/<command>-d<d>-k<k>.json, written via temp-file rename; timing is
// normalized to zero inside the file so reruns are byte-identical.
std::filesystem::path write_cache(const RunRecord& rec);
std::optional<json> read_cache(const std::string& command, int d, int k);

}  // namespace cantor
