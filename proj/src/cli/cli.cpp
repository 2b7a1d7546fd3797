#include "cspace/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "commands.hpp"
#include "cspace/calibrate.hpp"
#include "cspace/report.hpp"

namespace cspace::cli {

namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) throw UsageError("cannot write " + path.string());
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw UsageError("cannot create directory " + dir + ": " + ec.message());
}

SpaceConfig resolve_config(const std::string& flag) {
    if (!flag.empty()) return load_config_file(flag);
    if (const char* env = std::getenv(kConfigEnv); env && *env) return load_config_file(env);
    return default_config();
}

std::string utc_stamp() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void check_window(int window) {
    if (window < 1 || window % 2 == 0) throw UsageError("--smooth-window must be a positive odd number");
}

report::PerspectiveFilter perspective_of(const std::string& s) {
    auto f = report::parse_perspective(s);
    if (!f) throw UsageError("--perspective must be white, black or both");
    return *f;
}

// Distinct file stems for the inputs; repeats get "_<position>" appended.
std::vector<std::string> input_stems(const std::vector<std::string>& inputs) {
    std::map<std::string, int> seen;
    for (const auto& p : inputs) ++seen[fs::path(p).stem().string()];
    std::vector<std::string> out;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        std::string stem = fs::path(inputs[i]).stem().string();
        if (seen[stem] > 1) stem += "_" + std::to_string(i + 1);
        out.push_back(stem);
    }
    return out;
}

struct LoadedGame {
    std::string game_id;
    std::string source;
    int index = 0;
    std::unique_ptr<notation::GameRecord> record;
    std::string error;
};

std::vector<LoadedGame> load_games(const std::vector<std::string>& inputs) {
    std::vector<LoadedGame> games;
    const auto stems = input_stems(inputs);
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        const std::string text = read_text(inputs[i]);
        try {
            for (auto& pg : notation::parse_pgn_games(text)) {
                LoadedGame g;
                g.game_id = stems[i] + "-" + std::to_string(pg.index);
                g.source = inputs[i];
                g.index = pg.index;
                g.record = std::move(pg.record);
                g.error = std::move(pg.error);
                games.push_back(std::move(g));
            }
        } catch (const notation::PgnSyntaxError& e) {
            LoadedGame g;
            g.game_id = stems[i];
            g.source = inputs[i];
            g.error = e.what();
            games.push_back(std::move(g));
        }
    }
    return games;
}

unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

template <class Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, jobs), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

struct AnalyzeArgs {
    std::vector<std::string> inputs;
    std::string config;
    std::string out_dir = ".";
    bool csv = false;
    bool svg = false;
    bool embed = false;
    std::string perspective = "both";
    int smooth_window = 3;
    unsigned jobs = 0;
    bool stamp = false;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
    check_window(a.smooth_window);
    report::AnalysisSettings settings;
    settings.perspective = perspective_of(a.perspective);
    settings.smooth_window = a.smooth_window;
    settings.embed_trajectories = a.embed;
    const SpaceConfig cfg = resolve_config(a.config);
    if (a.stamp) settings.timestamp = utc_stamp();

    auto loaded = load_games(a.inputs);
    std::vector<report::GameAnalysis> results(loaded.size());
    parallel_for(loaded.size(), a.jobs ? a.jobs : default_jobs(), [&](std::size_t i) {
        const LoadedGame& g = loaded[i];
        if (!g.record) {
            results[i] = report::failed_game(g.game_id, g.source, g.index, g.error);
            return;
        }
        try {
            results[i] = report::analyze_game(*g.record, g.game_id, cfg, settings);
            results[i].source = g.source;
            results[i].index = g.index;
        } catch (const std::exception& e) {
            results[i] = report::failed_game(g.game_id, g.source, g.index, e.what());
        }
    });

    ensure_dir(a.out_dir);
    const fs::path dir(a.out_dir);
    write_text(dir / "report.json", report::report_json(results, cfg, settings));
    int failures = 0;
    for (const auto& g : results) {
        if (!g.ok()) {
            ++failures;
            err << g.game_id << ": " << g.error << "\n";
            continue;
        }
        if (a.csv) write_text(dir / (g.game_id + ".csv"), report::trajectory_csv(g.trajectories, settings.perspective));
        if (a.svg) {
            for (DomainId d : {DomainId::Territory, DomainId::Force, DomainId::Conflict}) {
                std::string name = g.game_id + "-" + std::string(to_string(d)) + ".svg";
                std::transform(name.begin(), name.end(), name.begin(), [](unsigned char ch) { return std::tolower(ch); });
                write_text(dir / name, report::projection_svg(g, cfg, d, settings));
            }
        }
        out << g.game_id << ": " << g.events.size() << (g.events.size() == 1 ? " event" : " events") << "\n";
    }
    return failures ? kPartial : kOk;
}

int cmd_encode(const std::vector<std::string>& fen_parts, std::ostream& out, std::ostream& err) {
    std::string fen;
    for (const auto& p : fen_parts) fen += (fen.empty() ? "" : " ") + p;
    Position p;
    try {
        p = chess::parse_fen(fen);
    } catch (const chess::FenError& e) {
        err << "error: invalid FEN: " << e.what() << "\n";
        return kUsage;
    }
    const DualVector v = encode_both(p);
    JsonWriter w;
    w.begin_object().key("fen").value(chess::to_fen(p)).key("white");
    report::write_vector(w, v.white);
    w.key("black");
    report::write_vector(w, v.black);
    w.end_object();
    out << w.str() << "\n";
    return kOk;
}

struct TrajectoryArgs {
    std::vector<std::string> inputs;
    std::string out_dir;
    std::string perspective = "both";
};

int cmd_trajectory(const TrajectoryArgs& a, std::ostream& out, std::ostream& err) {
    const auto filter = perspective_of(a.perspective);
    auto loaded = load_games(a.inputs);
    if (!a.out_dir.empty()) ensure_dir(a.out_dir);
    int failures = 0;
    bool header = true;
    for (const auto& g : loaded) {
        if (!g.record) {
            ++failures;
            err << g.game_id << ": " << g.error << "\n";
            continue;
        }
        const DualTrajectory t = build_trajectories(*g.record, g.game_id);
        if (a.out_dir.empty()) {
            out << report::trajectory_csv(t, filter, header);
            header = false;
        } else {
            const fs::path path = fs::path(a.out_dir) / (g.game_id + ".csv");
            write_text(path, report::trajectory_csv(t, filter));
            out << path.string() << "\n";
        }
    }
    return failures ? kPartial : kOk;
}

struct CalibrateArgs {
    std::string labels;
    std::string config;
    std::string out_dir;
};

int cmd_calibrate(const CalibrateArgs& a, std::ostream& out, std::ostream& err) {
    const SpaceConfig base = resolve_config(a.config);
    calibration::Result r;
    try {
        r = calibration::calibrate(base, calibration::load_labeled_set(a.labels));
    } catch (const calibration::LabelError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    err << "positives detected: " << r.score.positives_detected << "/" << r.positives_total << "\n";
    for (const auto& c : r.positives) {
        err << "  " << (c.detected ? "found  " : "missed ") << c.label;
        for (const auto& e : c.candidates) {
            err << " [moves " << e.start_move << "-" << e.end_move << ", " << e.run_plies() << " plies]";
        }
        err << "\n";
    }
    err << "negative events: " << r.score.negative_events << "\n";
    for (const auto& h : r.negative_hits) err << "  " << h << "\n";
    err << "region volume: " << JsonWriter::format_fixed(r.score.volume, 6) << "\n";

    const std::string doc = to_json(r.config);
    if (a.out_dir.empty()) {
        out << doc;
    } else {
        ensure_dir(a.out_dir);
        const fs::path path = fs::path(a.out_dir) / "config.json";
        write_text(path, doc);
        out << path.string() << "\n";
    }
    if (!r.feasible()) {
        err << "error: calibration infeasible; emitted the best configuration found\n";
        return kInfeasible;
    }
    return kOk;
}

int cmd_perft(int depth, const std::vector<std::string>& fen_parts, std::ostream& out, std::ostream& err) {
    if (depth < 0) {
        err << "error: depth must be non-negative\n";
        return kUsage;
    }
    std::string fen;
    for (const auto& p : fen_parts) fen += (fen.empty() ? "" : " ") + p;
    Position p;
    try {
        p = fen.empty() ? Position::start() : chess::parse_fen(fen);
    } catch (const chess::FenError& e) {
        err << "error: invalid FEN: " << e.what() << "\n";
        return kUsage;
    }
    out << chess::perft(p, depth) << "\n";
    return kOk;
}

void add_config(CLI::App* cmd, std::string& target) {
    cmd->add_option("--config", target, "Concept space configuration (JSON)")->check(CLI::ExistingFile);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Conceptual-space strategy recognition for chess games"};
    app.name("concept-space");
    app.set_version_flag("--version", std::string(report::tool_version()));
    app.require_subcommand(1);

    AnalyzeArgs analyze;
    auto* an = app.add_subcommand("analyze", "Detect strategy events in PGN games and write a JSON report");
    an->add_option("inputs", analyze.inputs, "PGN files")->required()->check(CLI::ExistingFile);
    add_config(an, analyze.config);
    an->add_option("--out", analyze.out_dir, "Output directory")->capture_default_str();
    an->add_flag("--csv", analyze.csv, "Write one trajectory CSV per game");
    an->add_flag("--svg", analyze.svg, "Write one SVG per game and domain projection");
    an->add_flag("--embed-trajectories", analyze.embed, "Include raw trajectories in the report");
    an->add_option("--perspective", analyze.perspective, "white, black or both")->capture_default_str();
    an->add_option("--smooth-window", analyze.smooth_window, "Odd moving-average window")->capture_default_str();
    an->add_option("--jobs", analyze.jobs, "Concurrent games (default: available parallelism)")
        ->check(CLI::Range(1u, 4096u));
    an->add_flag("--stamp", analyze.stamp, "Record the UTC time in the report");

    std::vector<std::string> encode_fen;
    auto* en = app.add_subcommand("encode", "Print both perspective vectors of a FEN position");
    en->add_option("fen", encode_fen, "FEN (quoted or as separate fields)")->required();

    TrajectoryArgs traj;
    auto* tr = app.add_subcommand("trajectory", "Write raw trajectories as CSV");
    tr->add_option("inputs", traj.inputs, "PGN files")->required()->check(CLI::ExistingFile);
    tr->add_option("--out", traj.out_dir, "Write one CSV per game into this directory instead of stdout");
    tr->add_option("--perspective", traj.perspective, "white, black or both")->capture_default_str();

    FetchRequest fetch;
    fetch.out_dir = ".";
    auto* fe = app.add_subcommand("fetch", "Download a game as PGN");
    fe->add_option("id", fetch.id, "Game id substituted for {id}")->required();
    fe->add_option("--url-template", fetch.url_template,
                   std::string("URL with {id}; defaults to $") + kFetchUrlEnv);
    fe->add_option("--out", fetch.out_dir, "Output directory")->capture_default_str();

    CalibrateArgs cal;
    auto* ca = app.add_subcommand("calibrate", "Fit region bounds to labeled games");
    ca->add_option("labels", cal.labels, "Labeled case file (JSON)")->required()->check(CLI::ExistingFile);
    add_config(ca, cal.config);
    ca->add_option("--out", cal.out_dir, "Write config.json into this directory instead of stdout");

    int perft_depth = 0;
    std::vector<std::string> perft_fen;
    auto* pe = app.add_subcommand("perft", "Count leaf nodes of the legal move tree");
    pe->add_option("depth", perft_depth, "Search depth")->required();
    pe->add_option("fen", perft_fen, "FEN (default: standard start)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*an) return cmd_analyze(analyze, out, err);
        if (*en) return cmd_encode(encode_fen, out, err);
        if (*tr) return cmd_trajectory(traj, out, err);
        if (*fe) {
            if (fetch.url_template.empty()) {
                if (const char* env = std::getenv(kFetchUrlEnv)) fetch.url_template = env;
            }
            if (fetch.url_template.empty()) {
                err << "error: no URL template; pass --url-template or set " << kFetchUrlEnv << "\n";
                return kUsage;
            }
            return cmd_fetch(fetch, out, err);
        }
        if (*ca) return cmd_calibrate(cal, out, err);
        if (*pe) return cmd_perft(perft_depth, perft_fen, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ConfigError& e) {
        err << "error: configuration: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace cspace::cli
