#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include "cantor/records.hpp"

using namespace cantor;

namespace {

struct CacheDirGuard {
    explicit CacheDirGuard(const std::string& dir) { setenv("CANTOR_BOUNDS_DIR", dir.c_str(), 1); }
    ~CacheDirGuard() { unsetenv("CANTOR_BOUNDS_DIR"); }
};

}  // namespace

TEST_CASE("rational serialization preserves exact integer pairs") {
    for (const Rat64 r : {Rat64{44, 81}, Rat64{-3, 16}, Rat64{0}, Rat64{832081571, 387420489}}) {
        const json j = rat_to_json(r);
        CHECK(rat_from_json(j) == r);
    }
}

TEST_CASE("run record serialization round-trips byte for byte") {
    BoundResult b;
    b.direction = BoundResult::Direction::Upper;
    b.value = 1.500886049123709;
    b.d = 2;
    b.k = 12;
    b.certified = true;
    b.rounding_budget = 2 * kEvalRelBudget;
    b.witness = UpperWitness{Rat64{478243758042, 282429536481}, 15584400, Rat64{974025, 1048576}};

    RunRecord rec;
    rec.command = "upper";
    rec.d = 2;
    rec.k = 12;
    rec.flags = json{{"max_enum", 1ull << 26}, {"method", "auto"}};
    rec.result = bound_to_json(b);
    rec.wall_time_ms = 1234;
    rec.enumeration_count = 1ull << 22;

    const std::string once = rec.to_json(true).dump(2);
    const json parsed = json::parse(once);
    CHECK(parsed.dump(2) == once);

    // exact rationals survive the round trip digit for digit
    CHECK(rat_from_json(parsed["result"]["witness"]["diameter_sq"]) ==
          Rat64{478243758042, 282429536481});
    // timing is normalized in the serialized form
    CHECK(parsed["timing"]["wall_ms"] == 0);
    CHECK(parsed["schema_version"] == 1);
}

TEST_CASE("cache write is atomic-style and reruns are byte-identical") {
    CacheDirGuard guard("/tmp/cantor_records_test");
    std::filesystem::remove_all("/tmp/cantor_records_test");

    RunRecord rec;
    rec.command = "upper";
    rec.d = 2;
    rec.k = 3;
    rec.flags = json{{"max_enum", 1024}};
    rec.result = json{{"value", 1.504975717274691}};
    rec.wall_time_ms = 17;
    rec.enumeration_count = 16;

    const auto path1 = write_cache(rec);
    std::string first((std::istreambuf_iterator<char>(std::ifstream(path1).rdbuf())),
                      std::istreambuf_iterator<char>());
    rec.wall_time_ms = 4242;  // timing differences must not leak into the file
    const auto path2 = write_cache(rec);
    std::string second((std::istreambuf_iterator<char>(std::ifstream(path2).rdbuf())),
                       std::istreambuf_iterator<char>());
    CHECK(path1 == path2);
    CHECK(first == second);
    CHECK(!std::filesystem::exists(path1.string() + ".tmp"));

    const auto back = read_cache("upper", 2, 3);
    REQUIRE(back.has_value());
    CHECK((*back)["result"]["value"].get<double>() == 1.504975717274691);
    CHECK(!read_cache("upper", 2, 4).has_value());
    std::filesystem::remove_all("/tmp/cantor_records_test");
}

TEST_CASE("chain serialization carries steps and exact thresholds") {
    LowerBoundChain c;
    c.d = 3;
    c.k = 2;
    c.upper_bound_used = 2.352741546983966;
    RefinementStep s;
    s.assumed_classes = {{1, 2}};
    s.threshold_sq = Rat64{44, 81};
    s.matching_sizes = {8};
    s.cap = Rat64{1, 8};
    s.mu_min = 0.13971682953754775;
    s.new_bound_sq = Rat64{44, 81};
    c.steps.push_back(s);
    c.final_sq = Rat64{44, 81};
    c.final_value = 0.5612725844843506;
    c.certified = true;

    const json j = chain_to_json(c);
    CHECK(rat_from_json(j["chain"][0]["threshold_sq"]) == Rat64{44, 81});
    CHECK(rat_from_json(j["final_sq"]) == Rat64{44, 81});
    CHECK(j["chain"][0]["matching_sizes"][0] == 8);
    CHECK(j["direction"] == "lower");
}
