#include <array>

#include "cspace/report.hpp"

namespace cspace::report {

namespace {

constexpr double kLeft = 60.0;
constexpr double kTop = 40.0;
constexpr double kSide = 400.0;
constexpr double kWidth = kLeft + kSide + 40.0;
constexpr double kHeight = kTop + kSide + 60.0;

constexpr std::array<std::string_view, 6> kRegionColours = {"#2ca02c", "#9467bd", "#ff7f0e",
                                                            "#8c564b", "#17becf", "#bcbd22"};

std::string_view trajectory_colour(Color c) { return c == Color::White ? "#1f77b4" : "#d62728"; }

std::string num(double v) { return JsonWriter::format_fixed(v, 2); }

double px(double x) { return kLeft + x * kSide; }
double py(double y) { return kTop + (1.0 - y) * kSide; }

std::string point(double x, double y) { return num(px(x)) + "," + num(py(y)); }

std::string attr_escape(std::string_view s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

struct Canvas {
    std::string body;
    void line(const std::string& s) {
        body += s;
        body += '\n';
    }
};

void draw_frame(Canvas& c, DimensionId xd, DimensionId yd) {
    c.line("<rect class=\"frame\" x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(kSide) +
           "\" height=\"" + num(kSide) + "\" fill=\"white\" stroke=\"#444\"/>");
    for (int i = 0; i <= 4; ++i) {
        double t = i / 4.0;
        c.line("<line class=\"grid\" x1=\"" + num(px(t)) + "\" y1=\"" + num(py(0)) + "\" x2=\"" + num(px(t)) +
               "\" y2=\"" + num(py(1)) + "\" stroke=\"#ddd\"/>");
        c.line("<line class=\"grid\" x1=\"" + num(px(0)) + "\" y1=\"" + num(py(t)) + "\" x2=\"" + num(px(1)) +
               "\" y2=\"" + num(py(t)) + "\" stroke=\"#ddd\"/>");
        c.line("<text x=\"" + num(px(t)) + "\" y=\"" + num(py(0) + 16) + "\" font-size=\"11\" text-anchor=\"middle\">" +
               JsonWriter::format_fixed(t, 2) + "</text>");
        c.line("<text x=\"" + num(px(0) - 6) + "\" y=\"" + num(py(t) + 4) + "\" font-size=\"11\" text-anchor=\"end\">" +
               JsonWriter::format_fixed(t, 2) + "</text>");
    }
    c.line("<text class=\"axis\" x=\"" + num(px(0.5)) + "\" y=\"" + num(py(0) + 34) +
           "\" font-size=\"13\" text-anchor=\"middle\">" + std::string(to_string(xd)) + "</text>");
    c.line("<text class=\"axis\" x=\"" + num(kLeft - 40) + "\" y=\"" + num(py(0.5)) +
           "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 " + num(kLeft - 40) + " " + num(py(0.5)) +
           ")\">" + std::string(to_string(yd)) + "</text>");
}

void draw_regions(Canvas& c, const SpaceConfig& cfg, DomainId domain, DimensionId xd, DimensionId yd) {
    for (std::size_t k = 0; k < cfg.concepts.size(); ++k) {
        const auto& concept_spec = cfg.concepts[k];
        std::string_view colour = kRegionColours[k % kRegionColours.size()];
        for (const auto& r : concept_spec.regions) {
            if (r.domain != domain) continue;
            Interval x = r.bounds[index_of(xd)].value_or(Interval{});
            Interval y = r.bounds[index_of(yd)].value_or(Interval{});
            c.line("<rect class=\"region\" data-concept=\"" + attr_escape(concept_spec.name) + "\" x=\"" + num(px(x.lo)) +
                   "\" y=\"" + num(py(y.hi)) + "\" width=\"" + num(px(x.hi) - px(x.lo)) + "\" height=\"" +
                   num(py(y.lo) - py(y.hi)) + "\" fill=\"" + std::string(colour) + "\" fill-opacity=\"0.15\" stroke=\"" +
                   std::string(colour) + "\"/>");
            c.line("<text class=\"region-label\" x=\"" + num(px(x.lo) + 3) + "\" y=\"" + num(py(y.hi) + 12) +
                   "\" font-size=\"10\" fill=\"" + std::string(colour) + "\">" + attr_escape(concept_spec.name) +
                   "</text>");
        }
    }
}

std::string points_attr(const Trajectory& t, DimensionId xd, DimensionId yd, int from, int to) {
    std::string pts;
    for (int i = from; i <= to; ++i) {
        if (!pts.empty()) pts += ' ';
        pts += point(t.value(i, xd), t.value(i, yd));
    }
    return pts;
}

void draw_path(Canvas& c, const Trajectory& t, DomainId domain, DimensionId xd, DimensionId yd) {
    const std::string persp(chess::to_string(t.perspective));
    const std::string colour(trajectory_colour(t.perspective));
    const int last = static_cast<int>(t.size()) - 1;
    if (last < 0) return;
    if (domain == DomainId::Force) {
        c.line("<g class=\"trajectory\" data-perspective=\"" + persp + "\" stroke=\"" + colour + "\">");
        for (int i = 0; i < last; ++i) {
            double mat = (t.value(i, DimensionId::MAT) + t.value(i + 1, DimensionId::MAT)) / 2.0;
            c.line("<line x1=\"" + num(px(t.value(i, xd))) + "\" y1=\"" + num(py(t.value(i, yd))) + "\" x2=\"" +
                   num(px(t.value(i + 1, xd))) + "\" y2=\"" + num(py(t.value(i + 1, yd))) + "\" stroke-width=\"" +
                   num(0.5 + 5.0 * mat) + "\"/>");
        }
        c.line("</g>");
    } else {
        c.line("<polyline class=\"trajectory\" data-perspective=\"" + persp + "\" fill=\"none\" stroke=\"" + colour +
               "\" stroke-width=\"1.5\" points=\"" + points_attr(t, xd, yd, 0, last) + "\"/>");
    }
    c.line("<circle class=\"start\" data-perspective=\"" + persp + "\" cx=\"" + num(px(t.value(0, xd))) + "\" cy=\"" +
           num(py(t.value(0, yd))) + "\" r=\"4\" fill=\"white\" stroke=\"" + colour + "\"/>");
    c.line("<circle class=\"end\" data-perspective=\"" + persp + "\" cx=\"" + num(px(t.value(last, xd))) + "\" cy=\"" +
           num(py(t.value(last, yd))) + "\" r=\"4\" fill=\"" + colour + "\"/>");
}

void draw_events(Canvas& c, const GameAnalysis& g, const Trajectory& smoothed, const SpaceConfig& cfg,
                 DomainId domain, DimensionId xd, DimensionId yd) {
    for (const auto& e : g.events) {
        if (e.perspective != smoothed.perspective) continue;
        const ConceptSpec* concept_spec = cfg.find(e.concept_name);
        if (!concept_spec) continue;
        bool drawn_here = false;
        for (const auto& r : concept_spec->regions) drawn_here = drawn_here || r.domain == domain;
        if (!drawn_here) continue;
        c.line("<polyline class=\"event\" data-concept=\"" + attr_escape(e.concept_name) + "\" data-perspective=\"" +
               std::string(chess::to_string(e.perspective)) + "\" fill=\"none\" stroke=\"" +
               std::string(trajectory_colour(e.perspective)) + "\" stroke-opacity=\"0.45\" stroke-width=\"6\" points=\"" +
               points_attr(smoothed, xd, yd, e.start_ply, e.end_ply) + "\"/>");
    }
}

}  // namespace

std::pair<DimensionId, DimensionId> projection_axes(DomainId d) noexcept {
    switch (d) {
        case DomainId::Territory: return {DimensionId::CTR, DimensionId::FLO};
        case DomainId::Force: return {DimensionId::MOB, DimensionId::SPA};
        case DomainId::Conflict: break;
    }
    return {DimensionId::PRS, DimensionId::VUL};
}

std::string projection_svg(const GameAnalysis& game, const SpaceConfig& cfg, DomainId domain,
                           const AnalysisSettings& settings) {
    const auto [xd, yd] = projection_axes(domain);
    Canvas c;
    c.line("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
           "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\" font-family=\"sans-serif\">");
    std::string title = game.game_id + " " + std::string(to_string(domain)) + ": " + std::string(to_string(xd)) +
                        " x " + std::string(to_string(yd));
    c.line("<title>" + attr_escape(title) + "</title>");
    c.line("<text x=\"" + num(kLeft) + "\" y=\"" + num(kTop - 14) + "\" font-size=\"14\">" + attr_escape(title) +
           "</text>");
    draw_frame(c, xd, yd);
    draw_regions(c, cfg, domain, xd, yd);
    for (Color col : {Color::White, Color::Black}) {
        if (!includes(settings.perspective, col)) continue;
        const Trajectory smoothed = smooth(game.trajectories.of(col), settings.smooth_window);
        draw_events(c, game, smoothed, cfg, domain, xd, yd);
        draw_path(c, smoothed, domain, xd, yd);
    }
    double ly = py(0) + 50;
    double lx = kLeft;
    for (Color col : {Color::White, Color::Black}) {
        if (!includes(settings.perspective, col)) continue;
        c.line("<line x1=\"" + num(lx) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(lx + 20) + "\" y2=\"" +
               num(ly - 4) + "\" stroke=\"" + std::string(trajectory_colour(col)) + "\" stroke-width=\"2\"/>");
        c.line("<text x=\"" + num(lx + 26) + "\" y=\"" + num(ly) + "\" font-size=\"11\">" +
               std::string(chess::to_string(col)) + " perspective</text>");
        lx += 140;
    }
    c.line("</svg>");
    return c.body;
}

}  // namespace cspace::report
