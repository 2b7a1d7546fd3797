#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cspace/recognition.hpp"
#include "cspace/space.hpp"
#include "cspace/trajectory.hpp"

namespace cspace::calibration {

/// Problem with the labeled case file itself (unreadable, malformed, empty).
class LabelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A game expected to contain `concept_name` for `perspective`, starting within
/// [move_lo, move_hi] and lasting at least `min_plies`.
struct PositiveCase {
    std::string pgn;
    int game = 1;  // 1-based index within the PGN file
    std::string concept_name;
    Color perspective = Color::White;
    int move_lo = 1;
    int move_hi = 1;
    int min_plies = 1;
    DualTrajectory trajectories;
};

/// Games that should produce no events at all.
struct NegativeGame {
    std::string pgn;
    int game = 1;
    DualTrajectory trajectories;
};

struct LabeledSet {
    std::vector<PositiveCase> positives;
    std::vector<NegativeGame> negatives;
};

/// Reads the JSON case file and replays every referenced game. PGN paths are
/// resolved relative to the case file's directory.
LabeledSet load_labeled_set(const std::string& path);
LabeledSet parse_labeled_set(std::string_view document, const std::string& base_dir);

struct Options {
    int grid_steps = 20;  // endpoints are multiples of 1 / grid_steps
    int min_run_lo = 2;
    int min_run_hi = 8;
    int move_tolerance = 2;
    int max_passes = 50;
    std::string version = "calibrated-1";
    RecognitionOptions recognition;
};

struct Score {
    int positives_detected = 0;
    int negative_events = 0;
    double volume = 0.0;  // summed over concepts that have positive cases

    /// Lexicographic: more positives, then fewer negative events, then smaller volume.
    bool better_than(const Score& o) const noexcept;
};

struct CaseReport {
    std::string label;
    bool detected = false;
    std::vector<RecognitionEvent> candidates;  // events of the labeled concept and perspective
};

struct Result {
    SpaceConfig config;
    Score score;
    int positives_total = 0;
    int passes = 0;
    std::vector<CaseReport> positives;
    std::vector<std::string> negative_hits;  // one line per event on a negative game

    /// Every positive found and no negative event.
    bool feasible() const noexcept { return score.positives_detected == positives_total && score.negative_events == 0; }
};

Score evaluate(const SpaceConfig& cfg, const LabeledSet& set, const Options& options);

/// Coordinate-wise grid search starting from `base`. Deterministic.
Result calibrate(const SpaceConfig& base, const LabeledSet& set, const Options& options = {});

}  // namespace cspace::calibration
