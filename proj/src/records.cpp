#include "cantor/records.hpp"

#include <cstdlib>
#include <fstream>

namespace cantor {

json rat_to_json(const Rat64& r) { return json{{"num", r.num}, {"den", r.den}}; }

Rat64 rat_from_json(const json& j) {
    return Rat64{j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>()};
}

json bound_to_json(const BoundResult& b) {
    json j;
    j["direction"] = b.direction == BoundResult::Direction::Upper ? "upper" : "lower";
    j["value"] = b.value;
    j["d"] = b.d;
    j["k"] = b.k;
    j["certified"] = b.certified;
    j["rounding_budget"] = b.rounding_budget;
    if (b.witness) {
        j["witness"] = json{{"diameter_sq", rat_to_json(b.witness->diameter_sq)},
                            {"covered", b.witness->covered},
                            {"mu_low", rat_to_json(b.witness->mu_low)}};
    }
    return j;
}

json chain_to_json(const LowerBoundChain& c) {
    json steps = json::array();
    for (const auto& s : c.steps) {
        json cls = json::array();
        for (const auto& rep : s.assumed_classes) cls.push_back(rep);
        steps.push_back(json{{"classes", cls},
                             {"threshold_sq", rat_to_json(s.threshold_sq)},
                             {"matching_sizes", s.matching_sizes},
                             {"measure_cap", rat_to_json(s.cap)},
                             {"mu_min", s.mu_min},
                             {"new_bound_sq", rat_to_json(s.new_bound_sq)}});
    }
    json j;
    j["direction"] = "lower";
    j["d"] = c.d;
    j["k"] = c.k;
    j["upper_bound_used"] = c.upper_bound_used;
    j["chain"] = steps;
    j["final_sq"] = rat_to_json(c.final_sq);
    j["value"] = c.final_value;
    j["certified"] = c.certified;
    j["note"] = c.note;
    return j;
}

json RunRecord::to_json(bool normalize_timing) const {
    json j;
    j["schema_version"] = schema_version;
    j["command"] = command;
    j["params"] = json{{"d", d}, {"k", k}, {"flags", flags}};
    j["result"] = result;
    j["timing"] = json{{"wall_ms", normalize_timing ? 0 : wall_time_ms}};
    j["enumeration_count"] = enumeration_count;
    j["tool_version"] = tool_version;
    return j;
}

std::filesystem::path cache_dir() {
    if (const char* env = std::getenv("CANTOR_BOUNDS_DIR")) return std::filesystem::path(env);
    return std::filesystem::path("results");
}

std::filesystem::path write_cache(const RunRecord& rec) {
    const auto dir = cache_dir();
    std::filesystem::create_directories(dir);
    const auto path = dir / (rec.command + "-d" + std::to_string(rec.d) + "-k" +
                             std::to_string(rec.k) + ".json");
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << rec.to_json(/*normalize_timing=*/true).dump(2) << "\n";
    }
    std::filesystem::rename(tmp, path);
    return path;
}

std::optional<json> read_cache(const std::string& command, int d, int k) {
    const auto path = cache_dir() / (command + "-d" + std::to_string(d) + "-k" +
                                     std::to_string(k) + ".json");
    std::ifstream in(path);
    if (!in) return std::nullopt;
    json j;
    in >> j;
    return j;
}

}  // namespace cantor
