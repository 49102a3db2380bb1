#include "strokeminer/kinematics.hpp"

#include <algorithm>
#include <cmath>

namespace strokeminer {

namespace {

// Linear resampling of one coordinate series to n samples over [0, T-1].
std::vector<double> resample_axis(const StrokeRecording& rec, MarkerId marker,
                                  Axis axis, int n) {
    const int frames = rec.frame_count();
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double u = static_cast<double>(i) / (n - 1) * (frames - 1);
        int lo = static_cast<int>(std::floor(u));
        if (lo >= frames - 1) lo = frames - 2;
        double frac = u - lo;
        double a = axis_value(rec.frames[lo].positions[marker.index()], axis);
        double b = axis_value(rec.frames[lo + 1].positions[marker.index()], axis);
        out[static_cast<std::size_t>(i)] = a + frac * (b - a);
    }
    return out;
}

// Resampling warped so the impact instant of each recording maps to the
// midpoint of normalized time.
std::vector<double> resample_axis_impact_anchored(const StrokeRecording& rec,
                                                  MarkerId marker, Axis axis,
                                                  int n, int impact_frame) {
    const int frames = rec.frame_count();
    double anchor = std::clamp(static_cast<double>(impact_frame), 1.0,
                               static_cast<double>(frames - 2));
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double s = static_cast<double>(i) / (n - 1);  // normalized time
        double u = s <= 0.5 ? s / 0.5 * anchor
                            : anchor + (s - 0.5) / 0.5 * (frames - 1 - anchor);
        int lo = static_cast<int>(std::floor(u));
        if (lo >= frames - 1) lo = frames - 2;
        double frac = u - lo;
        double a = axis_value(rec.frames[lo].positions[marker.index()], axis);
        double b = axis_value(rec.frames[lo + 1].positions[marker.index()], axis);
        out[static_cast<std::size_t>(i)] = a + frac * (b - a);
    }
    return out;
}

// One-pass co-moment accumulation (Welford-style). The acceptance oracle
// recomputes the same coefficient with a classic two-pass formula.
double pearson(const std::vector<double>& xs, const std::vector<double>& ys,
               const char* axis_name) {
    const std::size_t n = xs.size();
    double mean_x = 0.0, mean_y = 0.0, m2_x = 0.0, m2_y = 0.0, cov = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double k = 1.0 / static_cast<double>(i + 1);
        double dx = xs[i] - mean_x;
        double dy = ys[i] - mean_y;
        mean_x += dx * k;
        mean_y += dy * k;
        m2_x += dx * (xs[i] - mean_x);
        m2_y += dy * (ys[i] - mean_y);
        cov += dx * (ys[i] - mean_y);
    }
    if (m2_x <= 0.0 || m2_y <= 0.0) {
        throw DegenerateSeries(std::string("zero variance on axis ") + axis_name +
                               "; correlation undefined");
    }
    return cov / (std::sqrt(m2_x) * std::sqrt(m2_y));
}

}  // namespace

SpeedSeries speed_series(const StrokeRecording& rec, MarkerId marker, Axis axis) {
    if (rec.frame_count() < 2) {
        throw InsufficientData("speed series needs at least 2 frames");
    }
    SpeedSeries series{marker.ordinal(), axis, {}};
    series.values.reserve(rec.frames.size() - 1);
    for (std::size_t t = 0; t + 1 < rec.frames.size(); ++t) {
        double a = axis_value(rec.frames[t].positions[marker.index()], axis);
        double b = axis_value(rec.frames[t + 1].positions[marker.index()], axis);
        series.values.push_back((b - a) * rec.fps);
    }
    return series;
}

std::pair<double, double> extrema(const StrokeRecording& rec, MarkerId marker,
                                  Axis axis) {
    if (rec.frames.empty()) throw InsufficientData("extrema of an empty recording");
    double lo = axis_value(rec.frames.front().positions[marker.index()], axis);
    double hi = lo;
    for (const Frame& frame : rec.frames) {
        double v = axis_value(frame.positions[marker.index()], axis);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {lo, hi};
}

CorrelationResult trajectory_correlation(const StrokeRecording& rec_a,
                                         const StrokeRecording& rec_b,
                                         MarkerId marker, int resample_n,
                                         TrajectoryAlignment alignment) {
    if (rec_a.frame_count() < 2 || rec_b.frame_count() < 2) {
        throw InsufficientData("trajectory correlation needs >= 2 frames per recording");
    }
    if (resample_n < 2) {
        throw std::invalid_argument("resample_n must be >= 2");
    }
    std::vector<double> ax, ay, bx, by;
    if (alignment == TrajectoryAlignment::Duration) {
        ax = resample_axis(rec_a, marker, Axis::X, resample_n);
        ay = resample_axis(rec_a, marker, Axis::Y, resample_n);
        bx = resample_axis(rec_b, marker, Axis::X, resample_n);
        by = resample_axis(rec_b, marker, Axis::Y, resample_n);
    } else {
        int impact_a = detect_impact(rec_a);
        int impact_b = detect_impact(rec_b);
        ax = resample_axis_impact_anchored(rec_a, marker, Axis::X, resample_n, impact_a);
        ay = resample_axis_impact_anchored(rec_a, marker, Axis::Y, resample_n, impact_a);
        bx = resample_axis_impact_anchored(rec_b, marker, Axis::X, resample_n, impact_b);
        by = resample_axis_impact_anchored(rec_b, marker, Axis::Y, resample_n, impact_b);
    }
    CorrelationResult result;
    result.r_x = pearson(ax, bx, "x");
    result.r_y = pearson(ay, by, "y");
    result.n = resample_n;
    return result;
}

CorrelationResult marker_pair_correlation(const StrokeRecording& rec,
                                          MarkerId marker_a, MarkerId marker_b) {
    if (rec.frame_count() < 2) {
        throw InsufficientData("marker-pair correlation needs >= 2 frames");
    }
    const std::size_t n = rec.frames.size();
    std::vector<double> ax(n), ay(n), bx(n), by(n);
    for (std::size_t t = 0; t < n; ++t) {
        ax[t] = rec.frames[t].positions[marker_a.index()].x;
        ay[t] = rec.frames[t].positions[marker_a.index()].y;
        bx[t] = rec.frames[t].positions[marker_b.index()].x;
        by[t] = rec.frames[t].positions[marker_b.index()].y;
    }
    CorrelationResult result;
    result.r_x = pearson(ax, bx, "x");
    result.r_y = pearson(ay, by, "y");
    result.n = static_cast<int>(n);
    return result;
}

int detect_impact(const StrokeRecording& rec) {
    if (rec.frame_count() < 2) {
        throw InsufficientData("impact detection needs at least 2 frames");
    }
    constexpr std::array<int, 3> racket_markers = {6, 7, 8};  // M7, M8, M9
    int best_index = 0;
    double best_speed = -1.0;
    for (std::size_t t = 0; t + 1 < rec.frames.size(); ++t) {
        double mean_speed = 0.0;
        for (int m : racket_markers) {
            const Point& a = rec.frames[t].positions[m];
            const Point& b = rec.frames[t + 1].positions[m];
            mean_speed += std::hypot((b.x - a.x) * rec.fps, (b.y - a.y) * rec.fps);
        }
        mean_speed /= racket_markers.size();
        if (mean_speed > best_speed) {  // strict: ties keep the earliest index
            best_speed = mean_speed;
            best_index = static_cast<int>(t);
        }
    }
    return best_index;
}

ExtremaTable extrema_report(const std::vector<StrokeRecording>& recs,
                            const std::vector<MarkerId>& markers) {
    ExtremaTable table;
    for (SkillClass cls : kAllSkillClasses) {
        bool any = std::any_of(recs.begin(), recs.end(),
                               [cls](const StrokeRecording& r) { return r.skill == cls; });
        if (!any) continue;
        for (MarkerId marker : markers) {
            double lo = 0.0, hi = 0.0;
            bool first = true;
            for (const StrokeRecording& rec : recs) {
                if (rec.skill != cls) continue;
                auto [mn, mx] = extrema(rec, marker, Axis::X);
                lo = first ? mn : std::min(lo, mn);
                hi = first ? mx : std::max(hi, mx);
                first = false;
            }
            table.rows.push_back({cls, marker.ordinal(), lo, hi});
        }
    }
    return table;
}

}  // namespace strokeminer
