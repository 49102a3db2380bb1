#pragma once

#include <utility>
#include <vector>

#include "strokeminer/stroke_data.hpp"

namespace strokeminer {

enum class Axis { X = 0, Y = 1 };

inline double axis_value(const Point& p, Axis axis) {
    return axis == Axis::X ? p.x : p.y;
}

// First differences scaled by fps, i.e. pixels/second. values[t] covers the
// step from frame t to frame t+1, so the series is one shorter than the
// recording.
struct SpeedSeries {
    int marker_ordinal;
    Axis axis;
    std::vector<double> values;
};

SpeedSeries speed_series(const StrokeRecording& rec, MarkerId marker, Axis axis);

// Exact (min, max) of one marker's coordinate over all frames.
std::pair<double, double> extrema(const StrokeRecording& rec, MarkerId marker,
                                  Axis axis);

struct CorrelationResult {
    double r_x = 0.0;
    double r_y = 0.0;
    int n = 0;  // resampled sample count
};

// How two recordings of different lengths are brought to a common time base
// before correlating.
enum class TrajectoryAlignment {
    // Linear resampling over each recording's own duration.
    Duration,
    // Piecewise-linear warp that maps both racket-impact instants to the
    // midpoint of normalized time before resampling.
    ImpactAnchored,
};

// Pearson correlation per axis between the same marker's trajectory in two
// recordings, after resampling both to `resample_n` points. Throws
// InsufficientData (< 2 frames), DegenerateSeries when either resampled
// series has zero variance (the message names the axis).
CorrelationResult trajectory_correlation(
    const StrokeRecording& rec_a, const StrokeRecording& rec_b, MarkerId marker,
    int resample_n = 100,
    TrajectoryAlignment alignment = TrajectoryAlignment::Duration);

// Within-recording variant: correlation between two markers' trajectories
// of the same recording (no resampling; the series share a clock).
CorrelationResult marker_pair_correlation(const StrokeRecording& rec,
                                          MarkerId marker_a, MarkerId marker_b);

// Frame step index (0..frames-2) at which the mean speed magnitude of the
// racket markers {7, 8, 9} is maximal. Ties break toward the earliest index.
int detect_impact(const StrokeRecording& rec);

struct ExtremaRow {
    SkillClass skill;
    int marker_ordinal;
    double min_x;
    double max_x;
};

// Per skill class and marker, the min-of-mins / max-of-maxes of the x
// coordinate across that class's recordings. Rows are ordered by class
// (expert, intermediate, novice; absent classes skipped) then by the
// requested marker order.
struct ExtremaTable {
    std::vector<ExtremaRow> rows;
};

ExtremaTable extrema_report(const std::vector<StrokeRecording>& recs,
                            const std::vector<MarkerId>& markers);

}  // namespace strokeminer
