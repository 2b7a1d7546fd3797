#include "cspace/report.hpp"

namespace cspace::report {

namespace {

constexpr int kDecimals = 6;

void write_trajectory(JsonWriter& w, const Trajectory& t) {
    w.begin_array();
    for (const auto& p : t.points) {
        w.begin_array(true);
        for (double x : p.vector.values) w.fixed(x, kDecimals);
        w.end_array();
    }
    w.end_array();
}

}  // namespace

void write_vector(JsonWriter& w, const PerspectiveVector& v) {
    w.begin_object();
    for (DimensionId d : kAllDimensions) w.key(cspace::to_string(d)).fixed(v[d], kDecimals);
    w.end_object();
}

std::string_view tool_version() noexcept { return CSPACE_VERSION_STRING; }

std::optional<PerspectiveFilter> parse_perspective(std::string_view s) noexcept {
    if (s == "white") return PerspectiveFilter::White;
    if (s == "black") return PerspectiveFilter::Black;
    if (s == "both") return PerspectiveFilter::Both;
    return std::nullopt;
}

std::string_view to_string(PerspectiveFilter f) noexcept {
    switch (f) {
        case PerspectiveFilter::White: return "white";
        case PerspectiveFilter::Black: return "black";
        case PerspectiveFilter::Both: break;
    }
    return "both";
}

GameAnalysis analyze_game(const notation::GameRecord& g, std::string game_id, const SpaceConfig& cfg,
                          const AnalysisSettings& settings) {
    GameAnalysis out;
    out.game_id = std::move(game_id);
    for (std::string_view key : kSelectedHeaders) {
        for (const auto& [k, v] : g.headers) {
            if (k == key) {
                out.headers.emplace_back(k, v);
                break;
            }
        }
    }
    out.trajectories = build_trajectories(g, out.game_id);
    RecognitionOptions options;
    options.smooth_window = settings.smooth_window;
    for (auto& e : detect_events(out.trajectories, cfg, options)) {
        if (!includes(settings.perspective, e.perspective)) continue;
        out.explanations.push_back(explain_event(e, out.trajectories, cfg, options));
        out.events.push_back(std::move(e));
    }
    return out;
}

GameAnalysis failed_game(std::string game_id, std::string source, int index, std::string error) {
    GameAnalysis out;
    out.game_id = std::move(game_id);
    out.source = std::move(source);
    out.index = index;
    out.error = error.empty() ? "unknown error" : std::move(error);
    return out;
}

void write_event(JsonWriter& w, const RecognitionEvent& e) {
    w.begin_object()
        .key("concept")
        .value(e.concept_name)
        .key("perspective")
        .value(chess::to_string(e.perspective))
        .key("start_ply")
        .value(e.start_ply)
        .key("end_ply")
        .value(e.end_ply)
        .key("start_move")
        .value(e.start_move)
        .key("end_move")
        .value(e.end_move)
        .key("run_plies")
        .value(e.run_plies())
        .key("peak_ply")
        .value(e.peak_ply)
        .key("peak_typicality")
        .fixed(e.peak_typicality, kDecimals)
        .key("convergence");
    if (e.convergence) {
        w.fixed(*e.convergence, kDecimals);
    } else {
        w.null();
    }
    w.key("distance_closing")
        .value(e.distance_closing)
        .key("approach")
        .begin_array(true)
        .value(e.approach_start_ply)
        .value(e.approach_end_ply)
        .end_array()
        .key("trend_values")
        .begin_array();
    for (const auto& [d, delta] : e.trend_values) {
        w.begin_object().key("dimension").value(cspace::to_string(d)).key("delta").fixed(delta, kDecimals).end_object();
    }
    w.end_array().end_object();
}

void write_explanation(JsonWriter& w, const EventExplanation& ex) {
    w.begin_object().key("dimensions").begin_array();
    for (const auto& row : ex.dimensions) {
        w.begin_object()
            .key("dimension")
            .value(cspace::to_string(row.dimension))
            .key("domain")
            .value(cspace::to_string(row.domain))
            .key("bounds")
            .begin_array(true)
            .fixed(row.bounds.lo, kDecimals)
            .fixed(row.bounds.hi, kDecimals)
            .end_array()
            .key("centroid")
            .fixed(row.centroid, kDecimals)
            .key("raw_start")
            .fixed(row.raw_start, kDecimals)
            .key("raw_end")
            .fixed(row.raw_end, kDecimals)
            .key("smoothed_start")
            .fixed(row.smoothed_start, kDecimals)
            .key("smoothed_end")
            .fixed(row.smoothed_end, kDecimals)
            .key("contribution")
            .fixed(row.contribution, kDecimals)
            .end_object();
    }
    w.end_array().key("trends").begin_array();
    for (const auto& t : ex.trends) {
        w.begin_object()
            .key("dimension")
            .value(cspace::to_string(t.constraint.dimension))
            .key("direction")
            .value(cspace::to_string(t.constraint.direction))
            .key("min_delta")
            .fixed(t.constraint.min_delta, kDecimals)
            .key("window")
            .value(t.constraint.window)
            .key("observed")
            .fixed(t.observed, kDecimals)
            .key("satisfied")
            .value(t.satisfied)
            .end_object();
    }
    w.end_array().end_object();
}

std::string events_json(const std::vector<RecognitionEvent>& events) {
    JsonWriter w;
    w.begin_array();
    for (const auto& e : events) write_event(w, e);
    w.end_array();
    return w.str() + "\n";
}

std::string report_json(const std::vector<GameAnalysis>& games, const SpaceConfig& cfg,
                        const AnalysisSettings& settings) {
    JsonWriter w;
    w.begin_object().key("tool_version").value(tool_version()).key("config_version").value(cfg.version);
    if (settings.timestamp) w.key("generated_at").value(*settings.timestamp);
    w.key("settings")
        .begin_object()
        .key("perspective")
        .value(to_string(settings.perspective))
        .key("smooth_window")
        .value(settings.smooth_window)
        .end_object();
    w.key("games").begin_array();
    for (const auto& g : games) {
        w.begin_object()
            .key("game_id")
            .value(g.game_id)
            .key("source")
            .value(g.source)
            .key("index")
            .value(g.index)
            .key("status")
            .value(g.ok() ? "ok" : "error");
        if (!g.ok()) {
            w.key("error").value(g.error).end_object();
            continue;
        }
        w.key("headers").begin_object();
        for (const auto& [k, v] : g.headers) w.key(k).value(v);
        w.end_object();
        w.key("plies").value(static_cast<long long>(g.trajectories.white.size()) - 1);
        w.key("events").begin_array();
        for (const auto& e : g.events) write_event(w, e);
        w.end_array();
        w.key("explanations").begin_array();
        for (const auto& ex : g.explanations) write_explanation(w, ex);
        w.end_array();
        if (settings.embed_trajectories) {
            w.key("trajectories").begin_object();
            for (Color c : {Color::White, Color::Black}) {
                if (!includes(settings.perspective, c)) continue;
                w.key(chess::to_string(c));
                write_trajectory(w, g.trajectories.of(c));
            }
            w.end_object();
        }
        w.end_object();
    }
    w.end_array().end_object();
    return w.str() + "\n";
}

std::string trajectory_csv(const DualTrajectory& trajs, PerspectiveFilter filter, bool header) {
    std::string out;
    if (header) {
        out += kCsvHeader;
        out += '\n';
    }
    const std::size_t n = trajs.white.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (Color c : {Color::White, Color::Black}) {
            if (!includes(filter, c)) continue;
            const Trajectory& t = trajs.of(c);
            out += t.game_id;
            out += ',';
            out += std::to_string(i);
            out += ',';
            out += std::to_string(trajs.fullmove.at(i));
            out += ',';
            if (trajs.side_moved.at(i)) out += chess::to_string(*trajs.side_moved[i]);
            out += ',';
            out += chess::to_string(c);
            for (double x : t.points[i].vector.values) {
                out += ',';
                out += JsonWriter::format_fixed(x, kDecimals);
            }
            out += '\n';
        }
    }
    return out;
}

}  // namespace cspace::report
