#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cspace/encoder.hpp"
#include "cspace/kernels.hpp"

namespace cspace {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    double midpoint() const noexcept { return (lo + hi) / 2.0; }
    double halfwidth() const noexcept { return (hi - lo) / 2.0; }
    bool contains(double x) const noexcept { return x >= lo && x <= hi; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Axis-aligned box over the dimensions of one domain. Bounds are closed.
struct RegionSpec {
    DomainId domain = DomainId::Force;
    std::array<std::optional<Interval>, kDimensionCount> bounds{};

    friend bool operator==(const RegionSpec&, const RegionSpec&) = default;
};

enum class TrendDirection { Increasing, Decreasing };

std::string_view to_string(TrendDirection d) noexcept;

struct TrendConstraint {
    DimensionId dimension = DimensionId::MAT;
    TrendDirection direction = TrendDirection::Decreasing;
    double min_delta = 0.0;
    int window = 2;

    friend bool operator==(const TrendConstraint&, const TrendConstraint&) = default;
};

struct ConceptSpec {
    std::string name;
    std::vector<RegionSpec> regions;
    std::vector<TrendConstraint> trends;
    int min_run_plies = 1;
    double convergence_threshold = 0.0;

    /// Union of all region bounds keyed by dimension.
    std::array<std::optional<Interval>, kDimensionCount> declared_bounds() const;
    /// The box as a kernel query (declared dimensions only).
    kernels::BoxQuery box() const;

    friend bool operator==(const ConceptSpec&, const ConceptSpec&) = default;
};

struct SpaceConfig {
    std::string version;
    std::vector<ConceptSpec> concepts;

    const ConceptSpec* find(std::string_view name) const noexcept;
    friend bool operator==(const SpaceConfig&, const SpaceConfig&) = default;
};

/// Parses and validates a JSON configuration document.
SpaceConfig load_config(std::string_view document);
SpaceConfig load_config_file(const std::string& path);

/// Validation shared by load_config and programmatic construction.
void validate(const SpaceConfig& cfg);

/// Canonical JSON form (stable key order, fixed decimals).
std::string to_json(const SpaceConfig& cfg);

/// The shipped default document and its parsed form.
std::string_view default_config_document() noexcept;
const SpaceConfig& default_config();

/// Centre of every declared interval; undeclared dimensions are empty.
struct PartialPoint {
    std::array<std::optional<double>, kDimensionCount> values{};

    int declared() const noexcept;
    friend bool operator==(const PartialPoint&, const PartialPoint&) = default;
};

bool membership(const PerspectiveVector& v, const ConceptSpec& c);
PartialPoint centroid(const ConceptSpec& c);

/// Root-mean-square of per-dimension offsets from the centroid scaled by the
/// interval halfwidth. Point intervals contribute 0 on the centre and
/// 1 + |offset| elsewhere.
double scaled_distance(const PerspectiveVector& v, const ConceptSpec& c);

/// max(0, 1 - scaled_distance).
double typicality(const PerspectiveVector& v, const ConceptSpec& c);

/// Sum over regions of the product of interval widths.
double region_volume(const ConceptSpec& c);

}  // namespace cspace
