#pragma once

#include <string>
#include <vector>

#include "strokeminer/stroke_data.hpp"

namespace strokeminer {

// Sliding-window geometry. The defaults (5-frame windows overlapping by 3,
// i.e. stride 2) produce the 90-attribute instances the classifiers train
// on: 9 markers x 2 axes x 5 frames.
struct WindowSpec {
    int window_len = 5;
    int overlap = 3;

    int stride() const { return window_len - overlap; }
    // Enforces 0 <= overlap < window_len (throws std::invalid_argument).
    void validate() const;
};

// One classification instance. Feature layout is frame-major:
//   index = t*18 + (m-1)*2 + a      t: frame offset, m: marker, a: 0=x 1=y
struct FeatureWindow {
    std::vector<double> features;
    SkillClass label;
    std::string subject_id;  // provenance: source recording
    int start_frame = 0;     // provenance: window start within the recording
};

struct Dataset {
    std::vector<std::string> schema;           // attribute names, m{m}_{x|y}_t{t}
    std::vector<SkillClass> class_alphabet;    // canonical order subset
    std::vector<FeatureWindow> instances;

    int attribute_count() const { return static_cast<int>(schema.size()); }
    int size() const { return static_cast<int>(instances.size()); }
    int class_index(SkillClass cls) const;  // SchemaError when absent
};

// Attribute names in feature-index order for the given spec.
std::vector<std::string> schema_names(const WindowSpec& spec);

// Closed form for the number of windows a T-frame recording yields.
int window_count(int frame_count, const WindowSpec& spec);

// Cuts a normalized recording into overlapping windows starting at frames
// 0, stride, 2*stride, ... Trailing frames that cannot fill a window are
// dropped. Throws InsufficientData when frame count < window_len and
// std::invalid_argument when the recording is not normalized.
std::vector<FeatureWindow> make_windows(const StrokeRecording& rec,
                                        const WindowSpec& spec = {});

// Concatenates windows of all recordings (in input order) whose skill is in
// `classes`; other recordings are excluded. With `differenced` set, windows
// are built over the frame-to-frame delta series instead of raw positions.
// Throws EmptyDataset when nothing remains.
Dataset build_dataset(const std::vector<StrokeRecording>& recs,
                      const WindowSpec& spec,
                      const std::vector<SkillClass>& classes,
                      bool differenced = false);

// CSV with header `m1_x_t0,...,m9_y_t4,class`. Deterministic; re-import of
// the text yields a dataset that re-exports byte-identically. Provenance is
// not part of the exchange format and does not survive the round trip.
std::string export_dataset(const Dataset& ds);
Dataset import_dataset(std::string_view csv_text);

}  // namespace strokeminer
