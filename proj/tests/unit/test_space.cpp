#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cspace/space.hpp"

using namespace cspace;

namespace {

std::string one_concept(const std::string& regions, const std::string& extra = "") {
    return R"({"version": "t", "concepts": [{"name": "c", "regions": )" + regions + extra +
           R"(, "min_run_plies": 2, "convergence_threshold": 0.0}]})";
}

PerspectiveVector at_centroid(const ConceptSpec& c) {
    PerspectiveVector v;
    PartialPoint p = centroid(c);
    for (int d = 0; d < kDimensionCount; ++d) v.values[d] = p.values[d].value_or(0.3);
    return v;
}

}  // namespace

TEST_CASE("shipped default has the three concepts") {
    const SpaceConfig& cfg = default_config();
    REQUIRE(cfg.concepts.size() == 3);
    CHECK(cfg.concepts[0].name == "king_attack");
    CHECK(cfg.concepts[1].name == "positional_sacrifice");
    CHECK(cfg.concepts[2].name == "space_domination");
    CHECK(load_config(default_config_document()) == cfg);
}

TEST_CASE("validation errors") {
    CHECK_THROWS_AS(load_config(one_concept(R"([{"domain": "Force", "bounds": {"MOB": [0.9, 0.2]}}])")), ConfigError);
    CHECK_THROWS_AS(load_config(one_concept(R"([{"domain": "Territory", "bounds": {"MAT": [0.1, 0.2]}}])")),
                    ConfigError);
    CHECK_THROWS_AS(load_config(one_concept(R"([{"domain": "Force", "bounds": {"XYZ": [0.1, 0.2]}}])")), ConfigError);
    CHECK_THROWS_AS(load_config(one_concept(R"([{"domain": "Force", "bounds": {}}])")), ConfigError);
    CHECK_THROWS_AS(load_config(one_concept(R"([{"domain": "Force", "bounds": {"MOB": [0.1, 1.2]}}])")), ConfigError);
    CHECK_THROWS_AS(load_config(one_concept(
                        R"([{"domain": "Force", "bounds": {"MOB": [0.1, 0.2]}}, {"domain": "Force", "bounds": {"MAT": [0.1, 0.2]}}])")),
                    ConfigError);
    CHECK_THROWS_AS(load_config(one_concept(R"([{"domain": "Force", "bounds": {"MOB": [0.1, 0.2]}}])",
                                            R"(, "trends": [{"dimension": "MAT", "direction": "down", "min_delta": 0.1, "window": 4}])")),
                    ConfigError);
    CHECK_THROWS_AS(load_config(one_concept(R"([{"domain": "Force", "bounds": {"MOB": [0.1, 0.2]}}])",
                                            R"(, "trends": [{"dimension": "MAT", "direction": "decreasing", "min_delta": 0.1, "window": 1}])")),
                    ConfigError);
    CHECK_THROWS_AS(load_config("{"), ConfigError);
    CHECK_THROWS_AS(load_config(R"({"version": "t", "concepts": []})"), ConfigError);
    std::string dup = R"({"version": "t", "concepts": [
        {"name": "a", "regions": [{"domain": "Force", "bounds": {"MOB": [0.1, 0.2]}}], "min_run_plies": 2},
        {"name": "a", "regions": [{"domain": "Force", "bounds": {"MOB": [0.1, 0.2]}}], "min_run_plies": 2}]})";
    CHECK_THROWS_AS(load_config(dup), ConfigError);
}

TEST_CASE("load is order-preserving and round-trips") {
    const SpaceConfig& cfg = default_config();
    SpaceConfig again = load_config(to_json(cfg));
    CHECK(again == cfg);
    CHECK(to_json(again) == to_json(cfg));
}

TEST_CASE("centroid and membership") {
    SpaceConfig cfg = load_config(one_concept(R"([{"domain": "Force", "bounds": {"MOB": [0.6, 1.0], "MAT": [0.5, 0.5]}}])"));
    const ConceptSpec& c = cfg.concepts[0];
    PartialPoint p = centroid(c);
    CHECK(*p.values[index_of(DimensionId::MOB)] == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(*p.values[index_of(DimensionId::MAT)] == 0.5);
    CHECK_FALSE(p.values[index_of(DimensionId::PRS)]);
    CHECK(p.declared() == 2);

    PerspectiveVector v = at_centroid(c);
    CHECK(membership(v, c));
    CHECK(typicality(v, c) == 1.0);
    v[DimensionId::MOB] = 0.6;
    CHECK(membership(v, c));
    v[DimensionId::MOB] = 0.59;
    CHECK_FALSE(membership(v, c));
    v[DimensionId::MOB] = 0.8;
    v[DimensionId::MAT] = 0.55;
    CHECK_FALSE(membership(v, c));
    // Point interval: 1 + |offset| off centre.
    CHECK(scaled_distance(v, c) == doctest::Approx(std::sqrt(1.05 * 1.05 / 2)).epsilon(1e-12));
}

TEST_CASE("typicality corner and halfway") {
    const ConceptSpec& c = default_config().concepts[0];
    PerspectiveVector corner = at_centroid(c), half = at_centroid(c);
    PartialPoint p = centroid(c);
    auto bounds = c.declared_bounds();
    for (int d = 0; d < kDimensionCount; ++d) {
        if (!bounds[d]) continue;
        corner.values[d] = bounds[d]->hi;
        half.values[d] = (*p.values[d] + bounds[d]->hi) / 2.0;
    }
    CHECK(std::abs(typicality(corner, c)) <= 1e-12);
    CHECK(typicality(half, c) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(membership(corner, c));
}

TEST_CASE("typicality is 1 only at the centroid and stays in range") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const auto& c : default_config().concepts) {
        PerspectiveVector centre = at_centroid(c);
        for (int i = 0; i < 300; ++i) {
            PerspectiveVector v;
            for (double& x : v.values) x = u(rng);
            double t = typicality(v, c);
            CHECK((t >= 0.0 && t <= 1.0));
            bool at_centre = true;
            PartialPoint p = centroid(c);
            for (int d = 0; d < kDimensionCount; ++d)
                if (p.values[d]) at_centre = at_centre && v.values[d] == *p.values[d];
            if (!at_centre) CHECK(t < 1.0);
        }
        CHECK(typicality(centre, c) == 1.0);
    }
}

TEST_CASE("shrinking an interval never admits a non-member") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const auto& base : default_config().concepts) {
        for (int i = 0; i < 200; ++i) {
            ConceptSpec shrunk = base;
            for (auto& r : shrunk.regions)
                for (auto& iv : r.bounds)
                    if (iv) {
                        double a = iv->lo + (iv->hi - iv->lo) * u(rng) / 2;
                        double b = iv->hi - (iv->hi - iv->lo) * u(rng) / 2;
                        iv = Interval{a, b};
                    }
            PerspectiveVector v;
            for (double& x : v.values) x = u(rng);
            if (!membership(v, base)) CHECK_FALSE(membership(v, shrunk));
        }
    }
}

TEST_CASE("region volume") {
    const ConceptSpec& ka = default_config().concepts[0];
    double expected = 0.0;
    for (const auto& r : ka.regions) {
        double prod = 1.0;
        for (const auto& iv : r.bounds)
            if (iv) prod *= iv->hi - iv->lo;
        expected += prod;
    }
    CHECK(region_volume(ka) == doctest::Approx(expected).epsilon(1e-15));
}
