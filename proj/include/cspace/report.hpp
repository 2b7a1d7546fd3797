#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cspace/json_writer.hpp"
#include "cspace/recognition.hpp"

namespace cspace::report {

std::string_view tool_version() noexcept;

enum class PerspectiveFilter { White, Black, Both };

std::optional<PerspectiveFilter> parse_perspective(std::string_view s) noexcept;
std::string_view to_string(PerspectiveFilter f) noexcept;
constexpr bool includes(PerspectiveFilter f, Color c) noexcept {
    return f == PerspectiveFilter::Both || (f == PerspectiveFilter::White) == (c == Color::White);
}

struct AnalysisSettings {
    PerspectiveFilter perspective = PerspectiveFilter::Both;
    int smooth_window = 3;
    bool embed_trajectories = false;
    /// Emitted as "generated_at" when set.
    std::optional<std::string> timestamp;
};

/// Header keys copied into reports, in this order, when present.
inline constexpr std::string_view kSelectedHeaders[] = {"Event", "Site", "Date",  "Round",
                                                        "White", "Black", "Result", "ECO"};

struct GameAnalysis {
    std::string game_id;
    std::string source;
    int index = 0;  // 1-based within source
    std::vector<std::pair<std::string, std::string>> headers;
    std::string error;  // empty on success
    DualTrajectory trajectories;
    /// Events kept by the perspective filter, with one explanation each.
    std::vector<RecognitionEvent> events;
    std::vector<EventExplanation> explanations;

    bool ok() const noexcept { return error.empty(); }
};

GameAnalysis analyze_game(const notation::GameRecord& g, std::string game_id, const SpaceConfig& cfg,
                          const AnalysisSettings& settings);

/// Entry for a game that could not be parsed or analysed.
GameAnalysis failed_game(std::string game_id, std::string source, int index, std::string error);

/// Dimension-keyed object with 6-decimal values.
void write_vector(JsonWriter& w, const PerspectiveVector& v);
void write_event(JsonWriter& w, const RecognitionEvent& e);
void write_explanation(JsonWriter& w, const EventExplanation& ex);
std::string events_json(const std::vector<RecognitionEvent>& events);

std::string report_json(const std::vector<GameAnalysis>& games, const SpaceConfig& cfg,
                        const AnalysisSettings& settings);

inline constexpr std::string_view kCsvHeader =
    "game_id,ply,move_number,side_moved,perspective,MAT,MOB,VUL,CTR,FLO,PRS,SPA";

/// Raw trajectory rows, ply-major with White before Black, 6 decimals.
std::string trajectory_csv(const DualTrajectory& trajs, PerspectiveFilter filter, bool header = true);

/// The (x, y) dimensions drawn for a domain's projection.
std::pair<DimensionId, DimensionId> projection_axes(DomainId d) noexcept;

/// One 2-D projection of the smoothed trajectories with region rectangles.
/// In the Force projection MAT sets each segment's stroke width.
std::string projection_svg(const GameAnalysis& game, const SpaceConfig& cfg, DomainId domain,
                           const AnalysisSettings& settings);

}  // namespace cspace::report
