#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cspace/space.hpp"
#include "cspace/trajectory.hpp"

namespace cspace {

struct RecognitionOptions {
    int smooth_window = 3;
    const kernels::KernelTable* kernels = nullptr;  // nullptr selects kernels::active()
};

struct RecognitionEvent {
    std::string concept_name;
    Color perspective = Color::White;
    int start_ply = 0;
    int end_ply = 0;
    int start_move = 1;
    int end_move = 1;
    int peak_ply = 0;
    double peak_typicality = 0.0;
    /// Cosine over the approach window; empty when the window had no displacement.
    std::optional<double> convergence;
    /// Centroid distance was non-increasing over the approach window.
    bool distance_closing = false;
    int approach_start_ply = 0;
    int approach_end_ply = 0;
    /// Most favourable observed delta per trend constraint, in config order.
    std::vector<std::pair<DimensionId, double>> trend_values;

    int run_plies() const noexcept { return end_ply - start_ply + 1; }
    friend bool operator==(const RecognitionEvent&, const RecognitionEvent&) = default;
};

/// Maximal membership runs on the smoothed trajectories that are long
/// enough, converge toward the centroid and satisfy every trend constraint
/// (trends measured on the raw trajectory). Sorted by (start_ply, concept,
/// perspective).
std::vector<RecognitionEvent> detect_events(const DualTrajectory& trajs, const SpaceConfig& cfg,
                                            const RecognitionOptions& options = {});

class ExplainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DimensionExplanation {
    DimensionId dimension = DimensionId::MAT;
    DomainId domain = DomainId::Force;
    Interval bounds;
    double centroid = 0.0;
    double raw_start = 0.0;
    double raw_end = 0.0;
    double smoothed_start = 0.0;
    double smoothed_end = 0.0;
    /// Share of the squared scaled distance at the peak ply; rows sum to d^2.
    double contribution = 0.0;
};

struct TrendExplanation {
    TrendConstraint constraint;
    double observed = 0.0;
    bool satisfied = false;
};

struct EventExplanation {
    RecognitionEvent event;
    std::vector<DimensionExplanation> dimensions;
    std::vector<TrendExplanation> trends;
};

EventExplanation explain_event(const RecognitionEvent& e, const DualTrajectory& trajs, const SpaceConfig& cfg,
                               const RecognitionOptions& options = {});

}  // namespace cspace
