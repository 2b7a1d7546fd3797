#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cspace/encoder.hpp"
#include "cspace/kernels.hpp"
#include "cspace/notation.hpp"
#include "cspace/space.hpp"

namespace cspace {

struct TrajectoryPoint {
    int ply = 0;
    PerspectiveVector vector;
};

/// One perspective's path through the space; ply 0 is the initial position.
struct Trajectory {
    std::string game_id;
    Color perspective = Color::White;
    std::vector<TrajectoryPoint> points;

    std::size_t size() const noexcept { return points.size(); }
    double value(int ply, DimensionId d) const { return points.at(static_cast<std::size_t>(ply)).vector[d]; }

    kernels::Columns columns() const;
};

struct DualTrajectory {
    Trajectory white;
    Trajectory black;
    /// Fullmove number (FEN counter) of the position at each ply.
    std::vector<int> fullmove;
    /// Side that made the move leading to each ply; empty for ply 0.
    std::vector<std::optional<Color>> side_moved;

    const Trajectory& of(Color c) const noexcept { return c == Color::White ? white : black; }
};

DualTrajectory build_trajectories(const notation::GameRecord& g, const std::string& game_id);

/// Centred moving average per dimension; edges use the points available.
/// Throws std::invalid_argument for even or non-positive windows.
Trajectory smooth(const Trajectory& t, int window, const kernels::KernelTable& table = kernels::active());

struct Segment {
    const Trajectory* trajectory = nullptr;
    int start_ply = 0;
    int end_ply = 0;
};

/// Cosine between the segment's displacement and the direction from its start
/// to `target`, over the target's declared dimensions. Empty when either
/// vector is zero, which counts as not converging.
std::optional<double> segment_direction(const Segment& s, const PartialPoint& target);

std::vector<double> distance_series(const Trajectory& t, const ConceptSpec& c,
                                    const kernels::KernelTable& table = kernels::active());

std::vector<std::uint8_t> membership_series(const Trajectory& t, const ConceptSpec& c,
                                            const kernels::KernelTable& table = kernels::active());

/// value(end_ply) - value(max(0, end_ply - window + 1)).
double trend_delta(const Trajectory& t, DimensionId dim, int end_ply, int window);

}  // namespace cspace
