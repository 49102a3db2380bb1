#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "strokeminer/errors.hpp"

namespace strokeminer {

// ---------------------------------------------------------------------------
// Markers and skill classes
// ---------------------------------------------------------------------------

inline constexpr int kMarkerCount = 9;

// One of the nine digitized points on the subject's right arm and racket.
// Ordinals run 1..9; the anatomical naming is fixed.
class MarkerId {
public:
    explicit MarkerId(int ordinal);

    int ordinal() const { return ordinal_; }
    // Zero-based index into per-frame position arrays.
    int index() const { return ordinal_ - 1; }
    std::string_view anatomical_name() const;

    friend bool operator==(MarkerId a, MarkerId b) {
        return a.ordinal_ == b.ordinal_;
    }

private:
    int ordinal_;
};

enum class SkillClass { Expert = 0, Intermediate = 1, Novice = 2 };

inline constexpr std::array<SkillClass, 3> kAllSkillClasses = {
    SkillClass::Expert, SkillClass::Intermediate, SkillClass::Novice};

std::string_view to_string(SkillClass cls);
SkillClass skill_from_string(std::string_view text);  // FormatError on unknown label

// ---------------------------------------------------------------------------
// Recording types
// ---------------------------------------------------------------------------

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct Frame {
    int index = 0;
    std::array<Point, kMarkerCount> positions{};
};

struct RecordingMetadata {
    std::string subject_id;
    SkillClass skill = SkillClass::Novice;
    double fps = 90.0;
    std::array<int, 2> resolution = {512, 512};
};

// One subject's forehand stroke: an ordered frame sequence of all nine
// marker positions plus capture metadata. Immutable by convention; every
// operation returns a new value. Coordinates are stored as doubles even
// though the source is pixel-integer, since origin shifts and downstream
// statistics need fractional precision.
struct StrokeRecording {
    std::string subject_id;
    SkillClass skill = SkillClass::Novice;
    double fps = 90.0;
    std::array<int, 2> resolution = {512, 512};
    std::vector<Frame> frames;
    bool normalized = false;

    int frame_count() const { return static_cast<int>(frames.size()); }
    const Point& position(int frame, MarkerId marker) const {
        return frames[static_cast<std::size_t>(frame)]
            .positions[static_cast<std::size_t>(marker.index())];
    }
};

// ---------------------------------------------------------------------------
// Parsing and serialization
// ---------------------------------------------------------------------------

// Expected CSV header: frame,m1_x,m1_y,m2_x,m2_y,...,m9_x,m9_y
std::string recording_csv_header();

// Parses a recording CSV. Frame indices must be consecutive from 0.
// Throws FormatError (header / no data rows), SequenceError (index gaps,
// duplicates, wrong start; message names the 1-based data row) or
// ValueError (non-numeric, missing or non-finite cell; message names the
// 1-based data row and the column, e.g. "row 7, m4_y").
StrokeRecording parse_recording(std::string_view csv_text,
                                const RecordingMetadata& metadata);

// Canonical CSV form. Coordinates are written with the shortest digit
// sequence that round-trips exactly, so parse -> serialize -> parse is
// bit-exact and serialize -> parse -> serialize is byte-identical.
std::string serialize_recording(const StrokeRecording& rec);

// Metadata sidecar JSON:
//   {"subject_id": str, "skill": "expert"|"intermediate"|"novice",
//    "fps": number, "resolution": [w, h]}
// fps defaults to 90 and resolution to [512, 512] when absent.
RecordingMetadata parse_metadata(std::string_view json_text);
std::string serialize_metadata(const RecordingMetadata& metadata);

// ---------------------------------------------------------------------------
// Normalization and validation
// ---------------------------------------------------------------------------

// Shifts all coordinates so marker 1's first-frame position becomes (0, 0)
// ("shoulder origin"). Idempotent; preserves frame count, fps and all
// pairwise coordinate differences.
StrokeRecording normalize_origin(const StrokeRecording& rec);

struct ValidationPolicy {
    int min_frames = 40;
    int max_frames = 120;
    double expected_fps = 90.0;
    // Largest plausible per-frame marker displacement in pixels; anything
    // beyond it is flagged as a digitization glitch.
    double max_jump = 100.0;
};

enum class FindingCode {
    FrameCountLow,
    FrameCountHigh,
    UnexpectedFps,
    MarkerJump,
};

struct Finding {
    FindingCode code;
    std::string message;
    int frame = -1;   // first frame of the offending pair for MarkerJump
    int marker = -1;  // marker ordinal for MarkerJump
};

// Advisory checks; never throws. Empty result means clean.
std::vector<Finding> validate_recording(const StrokeRecording& rec,
                                        const ValidationPolicy& policy = {});

// ---------------------------------------------------------------------------
// Number formatting shared by all text formats
// ---------------------------------------------------------------------------

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);
// Strict full-cell parse; throws ValueError when `what` is non-numeric or
// not fully consumed. Does not reject non-finite values (callers decide).
double parse_double(std::string_view cell, const std::string& what);

}  // namespace strokeminer
