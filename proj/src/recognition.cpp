#include "cspace/recognition.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace cspace {

namespace {

constexpr int kApproachPlies = 6;
// Trend deltas come from differences of quantised feature values; absorb
// the representation error so that e.g. a 2-point material drop meets 0.1.
constexpr double kTrendTolerance = 1e-9;

const kernels::KernelTable& table_for(const RecognitionOptions& options) {
    return options.kernels ? *options.kernels : kernels::active();
}

double signed_delta(const TrendConstraint& t, double delta) {
    return t.direction == TrendDirection::Decreasing ? -delta : delta;
}

struct TrendOutcome {
    double observed = 0.0;
    bool satisfied = false;
};

TrendOutcome evaluate_trend(const Trajectory& raw, const TrendConstraint& t, int start_ply, int end_ply) {
    TrendOutcome best;
    double best_signed = 0.0;
    for (int ply = start_ply; ply <= end_ply; ++ply) {
        double delta = trend_delta(raw, t.dimension, ply, t.window);
        double s = signed_delta(t, delta);
        if (ply == start_ply || s > best_signed) {
            best_signed = s;
            best.observed = delta;
        }
    }
    best.satisfied = best_signed >= t.min_delta - kTrendTolerance;
    return best;
}

void detect_for(const ConceptSpec& concept_spec, const Trajectory& raw, const Trajectory& smoothed,
                const std::vector<int>& fullmove, const kernels::KernelTable& table,
                std::vector<RecognitionEvent>& out) {
    const auto member = membership_series(smoothed, concept_spec, table);
    const auto distance = distance_series(smoothed, concept_spec, table);
    const PartialPoint target = centroid(concept_spec);
    const int n = static_cast<int>(member.size());

    for (int a = 0; a < n;) {
        if (!member[a]) {
            ++a;
            continue;
        }
        int b = a;
        while (b + 1 < n && member[b + 1]) ++b;
        const int run = b - a + 1;
        const int next = b + 1;
        if (run < concept_spec.min_run_plies) {
            a = next;
            continue;
        }

        // Approach window ends at the run's first ply; a run starting at the
        // initial position measures its first plies instead.
        const int k = std::min(kApproachPlies, run);
        int seg_start = std::max(0, a - k + 1);
        int seg_end = a;
        if (seg_end == seg_start) seg_end = std::min(b, a + k - 1);

        std::optional<double> cosine;
        bool closing = false;
        if (seg_end > seg_start) {
            cosine = segment_direction(Segment{&smoothed, seg_start, seg_end}, target);
            closing = true;
            for (int i = seg_start; i < seg_end; ++i) closing = closing && distance[i + 1] <= distance[i];
        }
        const bool converging = (cosine && *cosine >= concept_spec.convergence_threshold) || closing;
        if (!converging) {
            a = next;
            continue;
        }

        RecognitionEvent e;
        bool trends_ok = true;
        for (const auto& t : concept_spec.trends) {
            TrendOutcome outcome = evaluate_trend(raw, t, a, b);
            trends_ok = trends_ok && outcome.satisfied;
            e.trend_values.emplace_back(t.dimension, outcome.observed);
        }
        if (!trends_ok) {
            a = next;
            continue;
        }

        e.concept_name = concept_spec.name;
        e.perspective = raw.perspective;
        e.start_ply = a;
        e.end_ply = b;
        e.start_move = fullmove.at(a);
        e.end_move = fullmove.at(b);
        e.convergence = cosine;
        e.distance_closing = closing;
        e.approach_start_ply = seg_start;
        e.approach_end_ply = seg_end;
        e.peak_ply = a;
        e.peak_typicality = -1.0;
        for (int i = a; i <= b; ++i) {
            double typ = std::max(0.0, 1.0 - distance[i]);
            if (typ > e.peak_typicality) {
                e.peak_typicality = typ;
                e.peak_ply = i;
            }
        }
        out.push_back(std::move(e));
        a = next;
    }
}

}  // namespace

std::vector<RecognitionEvent> detect_events(const DualTrajectory& trajs, const SpaceConfig& cfg,
                                            const RecognitionOptions& options) {
    const auto& table = table_for(options);
    std::vector<RecognitionEvent> events;
    for (Color c : {Color::White, Color::Black}) {
        const Trajectory& raw = trajs.of(c);
        const Trajectory smoothed = smooth(raw, options.smooth_window, table);
        for (const auto& concept_spec : cfg.concepts) detect_for(concept_spec, raw, smoothed, trajs.fullmove, table, events);
    }
    std::stable_sort(events.begin(), events.end(), [](const RecognitionEvent& x, const RecognitionEvent& y) {
        return std::tie(x.start_ply, x.concept_name, x.perspective) < std::tie(y.start_ply, y.concept_name, y.perspective);
    });
    return events;
}

EventExplanation explain_event(const RecognitionEvent& e, const DualTrajectory& trajs, const SpaceConfig& cfg,
                               const RecognitionOptions& options) {
    const ConceptSpec* concept_spec = cfg.find(e.concept_name);
    if (!concept_spec) throw ExplainError("event concept '" + e.concept_name + "' is not in the configuration");
    const Trajectory& raw = trajs.of(e.perspective);
    const int n = static_cast<int>(raw.size());
    if (e.start_ply < 0 || e.end_ply < e.start_ply || e.end_ply >= n || e.peak_ply < e.start_ply ||
        e.peak_ply > e.end_ply) {
        throw ExplainError("event ply range does not fit the trajectory");
    }
    if (concept_spec->trends.size() != e.trend_values.size()) {
        throw ExplainError("event trend values do not match the concept's constraints");
    }
    const Trajectory smoothed = smooth(raw, options.smooth_window, table_for(options));

    EventExplanation ex;
    ex.event = e;
    const int declared = concept_spec->box().declared_count();
    for (const auto& region : concept_spec->regions) {
        for (DimensionId d : kAllDimensions) {
            const auto& iv = region.bounds[index_of(d)];
            if (!iv) continue;
            DimensionExplanation row;
            row.dimension = d;
            row.domain = region.domain;
            row.bounds = *iv;
            row.centroid = iv->midpoint();
            row.raw_start = raw.value(e.start_ply, d);
            row.raw_end = raw.value(e.end_ply, d);
            row.smoothed_start = smoothed.value(e.start_ply, d);
            row.smoothed_end = smoothed.value(e.end_ply, d);
            double x = smoothed.value(e.peak_ply, d);
            double term = iv->halfwidth() > 0.0 ? (x - row.centroid) / iv->halfwidth()
                                                : (x == row.centroid ? 0.0 : 1.0 + std::fabs(x - row.centroid));
            row.contribution = term * term / declared;
            ex.dimensions.push_back(row);
        }
    }
    for (const auto& t : concept_spec->trends) {
        TrendOutcome outcome = evaluate_trend(raw, t, e.start_ply, e.end_ply);
        ex.trends.push_back({t, outcome.observed, outcome.satisfied});
    }
    return ex;
}

}  // namespace cspace
