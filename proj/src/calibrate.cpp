#include "cspace/calibrate.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace cspace::calibration {

namespace {

using json = nlohmann::json;

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LabelError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string game_id(const std::string& pgn, int game) {
    return std::filesystem::path(pgn).stem().string() + "-" + std::to_string(game);
}

class GameCache {
public:
    explicit GameCache(std::string base_dir) : base_dir_(std::move(base_dir)) {}

    const std::vector<notation::GameRecord>& games(const std::string& pgn) {
        auto it = cache_.find(pgn);
        if (it != cache_.end()) return it->second;
        std::filesystem::path p(pgn);
        if (p.is_relative()) p = std::filesystem::path(base_dir_) / p;
        try {
            return cache_.emplace(pgn, notation::parse_pgn(read_text(p.string()))).first->second;
        } catch (const std::runtime_error& e) {
            throw LabelError(pgn + ": " + e.what());
        }
    }

    DualTrajectory trajectories(const std::string& pgn, int game) {
        const auto& gs = games(pgn);
        if (game < 1 || game > static_cast<int>(gs.size())) {
            throw LabelError(pgn + ": no game " + std::to_string(game));
        }
        return build_trajectories(gs[game - 1], game_id(pgn, game));
    }

private:
    std::string base_dir_;
    std::map<std::string, std::vector<notation::GameRecord>> cache_;
};

Color parse_color(const std::string& s) {
    if (s == "white") return Color::White;
    if (s == "black") return Color::Black;
    throw LabelError("perspective must be 'white' or 'black', got '" + s + "'");
}

bool matches(const RecognitionEvent& e, const PositiveCase& p, int tolerance) {
    return e.concept_name == p.concept_name && e.perspective == p.perspective && e.run_plies() >= p.min_plies &&
           e.start_move >= p.move_lo - tolerance && e.start_move <= p.move_hi + tolerance;
}

std::string label_of(const PositiveCase& p) {
    return game_id(p.pgn, p.game) + " " + p.concept_name + " " + std::string(chess::to_string(p.perspective));
}

double volume_of_labeled(const SpaceConfig& cfg, const LabeledSet& set) {
    double total = 0.0;
    for (const auto& c : cfg.concepts) {
        bool labeled = false;
        for (const auto& p : set.positives) labeled = labeled || p.concept_name == c.name;
        if (labeled) total += region_volume(c);
    }
    return total;
}

// One search coordinate: an interval endpoint or a concept's min_run_plies.
struct Coordinate {
    std::size_t concept_index;
    std::size_t region = 0;
    int dim = -1;  // -1 selects min_run_plies
    bool upper = false;
};

std::vector<Coordinate> coordinates(const SpaceConfig& cfg) {
    std::vector<Coordinate> out;
    for (std::size_t c = 0; c < cfg.concepts.size(); ++c) {
        const auto& concept_spec = cfg.concepts[c];
        for (std::size_t r = 0; r < concept_spec.regions.size(); ++r) {
            for (int d = 0; d < kDimensionCount; ++d) {
                if (!concept_spec.regions[r].bounds[d]) continue;
                out.push_back({c, r, d, false});
                out.push_back({c, r, d, true});
            }
        }
        out.push_back({c});
    }
    return out;
}

double snap(double x, int steps) { return std::round(x * steps) / steps; }

}  // namespace

bool Score::better_than(const Score& o) const noexcept {
    if (positives_detected != o.positives_detected) return positives_detected > o.positives_detected;
    if (negative_events != o.negative_events) return negative_events < o.negative_events;
    return volume < o.volume;
}

LabeledSet parse_labeled_set(std::string_view document, const std::string& base_dir) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw LabelError(std::string("malformed case file: ") + e.what());
    }
    if (!doc.is_object()) throw LabelError("case file must be a JSON object");
    for (const auto& [k, v] : doc.items()) {
        if (k != "positives" && k != "negatives") throw LabelError("unknown key '" + k + "'");
    }
    GameCache cache(base_dir);
    LabeledSet set;
    try {
        for (const auto& p : doc.value("positives", json::array())) {
            PositiveCase c;
            c.pgn = p.at("pgn").get<std::string>();
            c.game = p.value("game", 1);
            c.concept_name = p.at("concept").get<std::string>();
            c.perspective = parse_color(p.at("perspective").get<std::string>());
            const auto& moves = p.at("moves");
            if (!moves.is_array() || moves.size() != 2) throw LabelError("'moves' must be [first, last]");
            c.move_lo = moves[0].get<int>();
            c.move_hi = moves[1].get<int>();
            if (c.move_lo < 1 || c.move_hi < c.move_lo) throw LabelError("'moves' must be increasing and positive");
            c.min_plies = p.value("min_plies", 1);
            c.trajectories = cache.trajectories(c.pgn, c.game);
            set.positives.push_back(std::move(c));
        }
        for (const auto& n : doc.value("negatives", json::array())) {
            std::string pgn = n.at("pgn").get<std::string>();
            if (n.contains("game")) {
                int g = n.at("game").get<int>();
                set.negatives.push_back({pgn, g, cache.trajectories(pgn, g)});
            } else {
                int count = static_cast<int>(cache.games(pgn).size());
                for (int g = 1; g <= count; ++g) set.negatives.push_back({pgn, g, cache.trajectories(pgn, g)});
            }
        }
    } catch (const json::exception& e) {
        throw LabelError(std::string("malformed case entry: ") + e.what());
    }
    if (set.positives.empty() && set.negatives.empty()) throw LabelError("case file lists no games");
    return set;
}

LabeledSet load_labeled_set(const std::string& path) {
    std::string dir = std::filesystem::path(path).parent_path().string();
    return parse_labeled_set(read_text(path), dir.empty() ? "." : dir);
}

Score evaluate(const SpaceConfig& cfg, const LabeledSet& set, const Options& options) {
    Score s;
    for (const auto& p : set.positives) {
        for (const auto& e : detect_events(p.trajectories, cfg, options.recognition)) {
            if (matches(e, p, options.move_tolerance)) {
                ++s.positives_detected;
                break;
            }
        }
    }
    for (const auto& n : set.negatives) {
        s.negative_events += static_cast<int>(detect_events(n.trajectories, cfg, options.recognition).size());
    }
    s.volume = volume_of_labeled(cfg, set);
    return s;
}

namespace {

struct Descent {
    SpaceConfig config;
    Score score;
    int passes = 0;
};

Descent descend(SpaceConfig current, const LabeledSet& set, const Options& options) {
    const int steps = options.grid_steps;
    Descent out;
    Score best = evaluate(current, set, options);
    for (out.passes = 1; out.passes <= options.max_passes; ++out.passes) {
        bool improved = false;
        for (const Coordinate& k : coordinates(current)) {
            ConceptSpec& c = current.concepts[k.concept_index];
            if (k.dim < 0) {
                const int keep = c.min_run_plies;
                int chosen = keep;
                for (int v = options.min_run_lo; v <= options.min_run_hi; ++v) {
                    if (v == keep) continue;
                    c.min_run_plies = v;
                    Score s = evaluate(current, set, options);
                    if (s.better_than(best)) {
                        best = s;
                        chosen = v;
                        improved = true;
                    }
                }
                c.min_run_plies = chosen;
                continue;
            }
            Interval& iv = *c.regions[k.region].bounds[k.dim];
            const Interval keep = iv;
            Interval chosen = keep;
            for (int i = 0; i <= steps; ++i) {
                double v = static_cast<double>(i) / steps;
                Interval trial = k.upper ? Interval{keep.lo, v} : Interval{v, keep.hi};
                if (trial.lo > trial.hi || trial == keep) continue;
                iv = trial;
                Score s = evaluate(current, set, options);
                if (s.better_than(best)) {
                    best = s;
                    chosen = trial;
                    improved = true;
                }
            }
            iv = chosen;
        }
        if (!improved) break;
    }
    out.passes = std::min(out.passes, options.max_passes);
    out.config = std::move(current);
    out.score = best;
    return out;
}

}  // namespace

Result calibrate(const SpaceConfig& base, const LabeledSet& set, const Options& options) {
    validate(base);
    for (const auto& p : set.positives) {
        if (!base.find(p.concept_name)) throw LabelError("unknown concept '" + p.concept_name + "' in case file");
    }
    SpaceConfig seed = base;
    seed.version = options.version;
    for (auto& c : seed.concepts) {
        for (auto& r : c.regions) {
            for (auto& iv : r.bounds) {
                if (iv) iv = Interval{snap(iv->lo, options.grid_steps), snap(iv->hi, options.grid_steps)};
            }
        }
    }
    Descent best = descend(seed, set, options);
    // Second start: concepts with a missed positive are opened to the full
    // unit box, so a positive that needs several endpoints moved at once is
    // reachable one coordinate at a time.
    SpaceConfig open = best.config;
    bool reopened = false;
    for (auto& c : open.concepts) {
        bool missed = false;
        for (const auto& p : set.positives) {
            if (p.concept_name != c.name) continue;
            bool found = false;
            for (const auto& e : detect_events(p.trajectories, best.config, options.recognition)) {
                found = found || matches(e, p, options.move_tolerance);
            }
            missed = missed || !found;
        }
        if (!missed) continue;
        reopened = true;
        for (auto& r : c.regions) {
            for (auto& iv : r.bounds) {
                if (iv) iv = Interval{0.0, 1.0};
            }
        }
    }
    if (reopened) {
        Descent alt = descend(open, set, options);
        if (alt.score.better_than(best.score)) best = std::move(alt);
    }

    Result result;
    result.config = std::move(best.config);
    result.score = best.score;
    result.passes = best.passes;
    const SpaceConfig& current = result.config;
    result.positives_total = static_cast<int>(set.positives.size());
    for (const auto& p : set.positives) {
        CaseReport r;
        r.label = label_of(p);
        for (const auto& e : detect_events(p.trajectories, current, options.recognition)) {
            if (e.concept_name != p.concept_name || e.perspective != p.perspective) continue;
            r.detected = r.detected || matches(e, p, options.move_tolerance);
            r.candidates.push_back(e);
        }
        result.positives.push_back(std::move(r));
    }
    for (const auto& n : set.negatives) {
        for (const auto& e : detect_events(n.trajectories, current, options.recognition)) {
            result.negative_hits.push_back(game_id(n.pgn, n.game) + " " + e.concept_name + " " +
                                           std::string(chess::to_string(e.perspective)) + " moves " +
                                           std::to_string(e.start_move) + "-" + std::to_string(e.end_move));
        }
    }
    return result;
}

}  // namespace cspace::calibration
