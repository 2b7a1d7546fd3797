#include "cspace/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cspace {

kernels::Columns Trajectory::columns() const {
    kernels::Columns cols(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (int d = 0; d < kDimensionCount; ++d) cols.at(d, i) = points[i].vector.values[d];
    }
    return cols;
}

namespace {

Trajectory from_vectors(const std::string& game_id, Color perspective, std::vector<PerspectiveVector> vectors) {
    Trajectory t;
    t.game_id = game_id;
    t.perspective = perspective;
    t.points.reserve(vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i) t.points.push_back({static_cast<int>(i), vectors[i]});
    return t;
}

}  // namespace

DualTrajectory build_trajectories(const notation::GameRecord& g, const std::string& game_id) {
    const std::vector<Position> positions = g.replay();
    std::vector<RawFeatures> white_raw, black_raw;
    white_raw.reserve(positions.size());
    black_raw.reserve(positions.size());
    DualTrajectory out;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        const Position& p = positions[i];
        white_raw.push_back(raw_features(p, Color::White));
        black_raw.push_back(raw_features(p, Color::Black));
        out.fullmove.push_back(p.fullmove_number());
        if (i == 0) {
            out.side_moved.emplace_back(std::nullopt);
        } else {
            out.side_moved.emplace_back(chess::opposite(p.side_to_move()));
        }
    }
    out.white = from_vectors(game_id, Color::White, normalise_all(white_raw, Color::White));
    out.black = from_vectors(game_id, Color::Black, normalise_all(black_raw, Color::Black));
    return out;
}

Trajectory smooth(const Trajectory& t, int window, const kernels::KernelTable& table) {
    if (window < 1 || window % 2 == 0) {
        throw std::invalid_argument("smoothing window must be a positive odd number, got " + std::to_string(window));
    }
    Trajectory out = t;
    if (window == 1 || t.points.empty()) return out;
    kernels::Columns in = t.columns();
    kernels::Columns result(in.rows());
    table.moving_average(in.view(), window, result.mutable_view());
    for (std::size_t i = 0; i < out.points.size(); ++i) {
        for (int d = 0; d < kDimensionCount; ++d) out.points[i].vector.values[d] = result.at(d, i);
    }
    return out;
}

std::optional<double> segment_direction(const Segment& s, const PartialPoint& target) {
    if (!s.trajectory) throw std::invalid_argument("segment without trajectory");
    if (s.start_ply < 0 || s.end_ply <= s.start_ply || static_cast<std::size_t>(s.end_ply) >= s.trajectory->size()) {
        throw std::invalid_argument("segment bounds outside trajectory");
    }
    const auto& start = s.trajectory->points[static_cast<std::size_t>(s.start_ply)].vector;
    const auto& end = s.trajectory->points[static_cast<std::size_t>(s.end_ply)].vector;
    double dot = 0.0, moved = 0.0, towards = 0.0;
    for (int d = 0; d < kDimensionCount; ++d) {
        if (!target.values[d]) continue;
        double a = end.values[d] - start.values[d];
        double b = *target.values[d] - start.values[d];
        dot += a * b;
        moved += a * a;
        towards += b * b;
    }
    if (moved == 0.0 || towards == 0.0) return std::nullopt;
    return std::clamp(dot / (std::sqrt(moved) * std::sqrt(towards)), -1.0, 1.0);
}

std::vector<double> distance_series(const Trajectory& t, const ConceptSpec& c, const kernels::KernelTable& table) {
    kernels::Columns cols = t.columns();
    std::vector<double> out(cols.rows());
    table.scaled_distance(cols.view(), c.box(), out.data());
    return out;
}

std::vector<std::uint8_t> membership_series(const Trajectory& t, const ConceptSpec& c,
                                            const kernels::KernelTable& table) {
    kernels::Columns cols = t.columns();
    std::vector<std::uint8_t> out(cols.rows());
    table.membership(cols.view(), c.box(), out.data());
    return out;
}

double trend_delta(const Trajectory& t, DimensionId dim, int end_ply, int window) {
    if (window < 2) throw std::invalid_argument("trend window must be at least 2");
    int start = std::max(0, end_ply - window + 1);
    return t.value(end_ply, dim) - t.value(start, dim);
}

}  // namespace cspace
