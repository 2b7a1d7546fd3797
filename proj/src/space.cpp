#include "cspace/space.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cspace/json_writer.hpp"

namespace cspace {

using json = nlohmann::ordered_json;

std::string_view to_string(TrendDirection d) noexcept {
    return d == TrendDirection::Increasing ? "increasing" : "decreasing";
}

std::array<std::optional<Interval>, kDimensionCount> ConceptSpec::declared_bounds() const {
    std::array<std::optional<Interval>, kDimensionCount> out{};
    for (const auto& region : regions) {
        for (int d = 0; d < kDimensionCount; ++d) {
            if (region.bounds[d]) out[d] = region.bounds[d];
        }
    }
    return out;
}

kernels::BoxQuery ConceptSpec::box() const {
    std::array<double, kernels::kDims> lo{}, hi{};
    std::uint8_t mask = 0;
    auto bounds = declared_bounds();
    for (int d = 0; d < kDimensionCount; ++d) {
        if (!bounds[d]) continue;
        lo[d] = bounds[d]->lo;
        hi[d] = bounds[d]->hi;
        mask |= static_cast<std::uint8_t>(1U << d);
    }
    return kernels::make_box(lo, hi, mask);
}

const ConceptSpec* SpaceConfig::find(std::string_view name) const noexcept {
    for (const auto& c : concepts) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

int PartialPoint::declared() const noexcept {
    return static_cast<int>(std::count_if(values.begin(), values.end(), [](const auto& v) { return v.has_value(); }));
}

namespace {

bool is_identifier(std::string_view name) {
    if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) return false;
    return std::all_of(name.begin(), name.end(),
                       [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; });
}

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
    for (const auto& [k, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
            throw ConfigError("schema error: unknown key '" + k + "' in " + where);
        }
    }
}

const json& require(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(std::string("schema error: missing '") + key + "' in " + where);
    return *it;
}

double require_number(const json& v, const std::string& what) {
    if (!v.is_number()) throw ConfigError("schema error: " + what + " must be a number");
    return v.get<double>();
}

int require_integer(const json& v, const std::string& what) {
    if (!v.is_number_integer()) throw ConfigError("schema error: " + what + " must be an integer");
    return v.get<int>();
}

std::optional<DomainId> domain_from_text(std::string text) {
    if (!text.empty()) {
        std::transform(text.begin(), text.end(), text.begin(), [](unsigned char c) { return std::tolower(c); });
        text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
    }
    return parse_domain(text);
}

RegionSpec parse_region(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError("schema error: region in " + where + " must be an object");
    reject_unknown_keys(j, {"domain", "bounds"}, where);
    const json& domain = require(j, "domain", where);
    if (!domain.is_string()) throw ConfigError("schema error: domain must be a string in " + where);
    auto id = domain_from_text(domain.get<std::string>());
    if (!id) throw ConfigError("schema error: unknown domain '" + domain.get<std::string>() + "' in " + where);
    RegionSpec region;
    region.domain = *id;
    const json& bounds = require(j, "bounds", where);
    if (!bounds.is_object()) throw ConfigError("schema error: bounds must be an object in " + where);
    for (const auto& [name, interval] : bounds.items()) {
        auto dim = parse_dimension(name);
        if (!dim) throw ConfigError("unknown dimension '" + name + "' in " + where);
        if (!interval.is_array() || interval.size() != 2) {
            throw ConfigError("schema error: bound " + name + " must be [lo, hi] in " + where);
        }
        region.bounds[index_of(*dim)] = Interval{require_number(interval[0], name + " lo"),
                                                 require_number(interval[1], name + " hi")};
    }
    return region;
}

TrendConstraint parse_trend(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError("schema error: trend in " + where + " must be an object");
    reject_unknown_keys(j, {"dimension", "direction", "min_delta", "window"}, where);
    TrendConstraint t;
    const json& dim = require(j, "dimension", where);
    auto id = dim.is_string() ? parse_dimension(dim.get<std::string>()) : std::nullopt;
    if (!id) throw ConfigError("unknown dimension in trend of " + where);
    t.dimension = *id;
    const json& dir = require(j, "direction", where);
    if (dir == "increasing") {
        t.direction = TrendDirection::Increasing;
    } else if (dir == "decreasing") {
        t.direction = TrendDirection::Decreasing;
    } else {
        throw ConfigError("schema error: trend direction must be 'increasing' or 'decreasing' in " + where);
    }
    t.min_delta = require_number(require(j, "min_delta", where), "min_delta");
    t.window = require_integer(require(j, "window", where), "window");
    return t;
}

ConceptSpec parse_concept(const json& j, std::size_t index) {
    std::string where = "concept #" + std::to_string(index);
    if (!j.is_object()) throw ConfigError("schema error: " + where + " must be an object");
    reject_unknown_keys(j, {"name", "regions", "trends", "min_run_plies", "convergence_threshold"}, where);
    ConceptSpec c;
    const json& name = require(j, "name", where);
    if (!name.is_string()) throw ConfigError("schema error: name must be a string in " + where);
    c.name = name.get<std::string>();
    where = "concept '" + c.name + "'";
    const json& regions = require(j, "regions", where);
    if (!regions.is_array()) throw ConfigError("schema error: regions must be an array in " + where);
    for (const auto& r : regions) c.regions.push_back(parse_region(r, where));
    if (auto it = j.find("trends"); it != j.end()) {
        if (!it->is_array()) throw ConfigError("schema error: trends must be an array in " + where);
        for (const auto& t : *it) c.trends.push_back(parse_trend(t, where));
    }
    c.min_run_plies = require_integer(require(j, "min_run_plies", where), "min_run_plies");
    if (auto it = j.find("convergence_threshold"); it != j.end()) {
        c.convergence_threshold = require_number(*it, "convergence_threshold");
    }
    return c;
}

}  // namespace

void validate(const SpaceConfig& cfg) {
    if (cfg.concepts.empty()) throw ConfigError("configuration has no concepts");
    std::set<std::string> names;
    for (const auto& c : cfg.concepts) {
        const std::string where = "concept '" + c.name + "'";
        if (!is_identifier(c.name)) throw ConfigError("invalid concept name '" + c.name + "'");
        if (!names.insert(c.name).second) throw ConfigError("duplicate concept name '" + c.name + "'");
        if (c.regions.empty()) throw ConfigError(where + " has no regions");
        std::set<DomainId> domains;
        for (const auto& r : c.regions) {
            if (!domains.insert(r.domain).second) {
                throw ConfigError(where + " declares domain " + std::string(to_string(r.domain)) + " twice");
            }
            int declared = 0;
            for (DimensionId d : kAllDimensions) {
                const auto& iv = r.bounds[index_of(d)];
                if (!iv) continue;
                ++declared;
                const std::string dim = std::string(to_string(d));
                if (domain_of(d) != r.domain) {
                    throw ConfigError(where + ": dimension " + dim + " belongs to " +
                                      std::string(to_string(domain_of(d))) + ", not " +
                                      std::string(to_string(r.domain)));
                }
                if (iv->lo > iv->hi) throw ConfigError(where + ": interval for " + dim + " has lo > hi");
                if (iv->lo < 0.0 || iv->hi > 1.0) throw ConfigError(where + ": interval for " + dim + " outside [0,1]");
            }
            if (declared == 0) throw ConfigError(where + " has a region without bounds");
        }
        for (const auto& t : c.trends) {
            if (t.window < 2) throw ConfigError(where + ": trend window must be at least 2");
            if (t.min_delta < 0.0 || t.min_delta > 1.0) throw ConfigError(where + ": trend min_delta outside [0,1]");
        }
        if (c.min_run_plies < 1) throw ConfigError(where + ": min_run_plies must be at least 1");
        if (c.convergence_threshold < -1.0 || c.convergence_threshold > 1.0) {
            throw ConfigError(where + ": convergence_threshold outside [-1,1]");
        }
    }
}

SpaceConfig load_config(std::string_view document) {
    json j;
    try {
        j = json::parse(document.begin(), document.end());
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("schema error: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("schema error: configuration must be a JSON object");
    reject_unknown_keys(j, {"version", "concepts"}, "configuration");
    SpaceConfig cfg;
    const json& version = require(j, "version", "configuration");
    if (!version.is_string()) throw ConfigError("schema error: version must be a string");
    cfg.version = version.get<std::string>();
    const json& concepts = require(j, "concepts", "configuration");
    if (!concepts.is_array()) throw ConfigError("schema error: concepts must be an array");
    for (std::size_t i = 0; i < concepts.size(); ++i) cfg.concepts.push_back(parse_concept(concepts[i], i));
    validate(cfg);
    return cfg;
}

SpaceConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read configuration file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_config(buf.str());
}

std::string to_json(const SpaceConfig& cfg) {
    JsonWriter w;
    w.begin_object().key("version").value(cfg.version).key("concepts").begin_array();
    for (const auto& c : cfg.concepts) {
        w.begin_object().key("name").value(c.name).key("regions").begin_array();
        for (const auto& r : c.regions) {
            w.begin_object().key("domain").value(to_string(r.domain)).key("bounds").begin_object();
            for (DimensionId d : kAllDimensions) {
                const auto& iv = r.bounds[index_of(d)];
                if (!iv) continue;
                w.key(to_string(d)).begin_array(true).shortest(iv->lo).shortest(iv->hi).end_array();
            }
            w.end_object().end_object();
        }
        w.end_array().key("trends").begin_array();
        for (const auto& t : c.trends) {
            w.begin_object()
                .key("dimension")
                .value(to_string(t.dimension))
                .key("direction")
                .value(to_string(t.direction))
                .key("min_delta")
                .shortest(t.min_delta)
                .key("window")
                .value(t.window)
                .end_object();
        }
        w.end_array()
            .key("min_run_plies")
            .value(c.min_run_plies)
            .key("convergence_threshold")
            .shortest(c.convergence_threshold)
            .end_object();
    }
    w.end_array().end_object();
    return w.str() + "\n";
}

const SpaceConfig& default_config() {
    static const SpaceConfig cfg = load_config(default_config_document());
    return cfg;
}

bool membership(const PerspectiveVector& v, const ConceptSpec& c) {
    for (const auto& region : c.regions) {
        for (int d = 0; d < kDimensionCount; ++d) {
            if (region.bounds[d] && !region.bounds[d]->contains(v.values[d])) return false;
        }
    }
    return true;
}

PartialPoint centroid(const ConceptSpec& c) {
    PartialPoint p;
    auto bounds = c.declared_bounds();
    for (int d = 0; d < kDimensionCount; ++d) {
        if (bounds[d]) p.values[d] = bounds[d]->midpoint();
    }
    return p;
}

double scaled_distance(const PerspectiveVector& v, const ConceptSpec& c) {
    kernels::ColumnsView row;
    for (int d = 0; d < kDimensionCount; ++d) row.column[d] = &v.values[d];
    row.rows = 1;
    double out = 0.0;
    kernels::scalar_kernels().scaled_distance(row, c.box(), &out);
    return out;
}

double typicality(const PerspectiveVector& v, const ConceptSpec& c) {
    return std::max(0.0, 1.0 - scaled_distance(v, c));
}

double region_volume(const ConceptSpec& c) {
    double total = 0.0;
    for (const auto& r : c.regions) {
        double volume = 1.0;
        for (const auto& iv : r.bounds) {
            if (iv) volume *= iv->hi - iv->lo;
        }
        total += volume;
    }
    return total;
}

}  // namespace cspace
