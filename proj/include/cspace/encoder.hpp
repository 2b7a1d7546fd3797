#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "cspace/chess/position.hpp"
#include "cspace/kernels.hpp"

namespace cspace {

using chess::Color;
using chess::Position;

/// Quality dimensions in their canonical column order.
enum class DimensionId : int { MAT = 0, MOB, VUL, CTR, FLO, PRS, SPA };

inline constexpr int kDimensionCount = 7;
inline constexpr std::array<DimensionId, kDimensionCount> kAllDimensions{
    DimensionId::MAT, DimensionId::MOB, DimensionId::VUL, DimensionId::CTR,
    DimensionId::FLO, DimensionId::PRS, DimensionId::SPA};

enum class DomainId : int { Territory = 0, Force, Conflict };

inline constexpr std::array<DomainId, 3> kAllDomains{DomainId::Territory, DomainId::Force, DomainId::Conflict};

constexpr int index_of(DimensionId d) noexcept { return static_cast<int>(d); }

/// Territory = {CTR, FLO}, Force = {MAT, MOB, SPA}, Conflict = {PRS, VUL}.
constexpr DomainId domain_of(DimensionId d) noexcept {
    switch (d) {
        case DimensionId::CTR:
        case DimensionId::FLO: return DomainId::Territory;
        case DimensionId::MAT:
        case DimensionId::MOB:
        case DimensionId::SPA: return DomainId::Force;
        case DimensionId::PRS:
        case DimensionId::VUL: return DomainId::Conflict;
    }
    return DomainId::Force;
}

std::string_view to_string(DimensionId d) noexcept;
std::string_view to_string(DomainId d) noexcept;
std::optional<DimensionId> parse_dimension(std::string_view name) noexcept;
std::optional<DomainId> parse_domain(std::string_view name) noexcept;

/// One player's normalised point in [0,1]^7.
struct PerspectiveVector {
    std::array<double, kDimensionCount> values{};
    Color perspective = Color::White;

    double operator[](DimensionId d) const noexcept { return values[index_of(d)]; }
    double& operator[](DimensionId d) noexcept { return values[index_of(d)]; }

    friend bool operator==(const PerspectiveVector&, const PerspectiveVector&) = default;
};

struct DualVector {
    PerspectiveVector white;
    PerspectiveVector black;
};

/// Unnormalised feature values for one side.
struct RawFeatures {
    int material = 0;
    int mobility = 0;
    int vulnerability = 0;
    int control = 0;
    double flow = 0.0;
    int pressure = 0;
    int space = 0;

    friend bool operator==(const RawFeatures&, const RawFeatures&) = default;
};

int raw_material(const Position& p, Color c);
int raw_mobility(const Position& p, Color c);
int raw_control(const Position& p, Color c);
int raw_pressure(const Position& p, Color c);
int raw_space(const Position& p, Color c);
int raw_vulnerability(const Position& p, Color c);
double raw_flow(const Position& p, Color c);

RawFeatures raw_features(const Position& p, Color c);

/// Linear clamps: MAT 0.5 + raw/20, MOB /60, VUL /16, CTR /12, PRS /20, SPA /8; FLO as is.
const kernels::Normalisation& default_normalisation() noexcept;

PerspectiveVector normalise(const RawFeatures& raw, Color perspective);

/// Batch form of normalise() running through the active kernel table.
std::vector<PerspectiveVector> normalise_all(const std::vector<RawFeatures>& raw, Color perspective,
                                             const kernels::KernelTable& table = kernels::active());

PerspectiveVector encode_position(const Position& p, Color c);
DualVector encode_both(const Position& p);

}  // namespace cspace
