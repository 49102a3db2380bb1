#include "strokeminer/windowing.hpp"

#include <algorithm>

namespace strokeminer {

void WindowSpec::validate() const {
    if (window_len < 1) {
        throw std::invalid_argument("window_len must be >= 1");
    }
    if (overlap < 0 || overlap >= window_len) {
        throw std::invalid_argument("overlap must satisfy 0 <= overlap < window_len");
    }
}

int Dataset::class_index(SkillClass cls) const {
    for (std::size_t i = 0; i < class_alphabet.size(); ++i) {
        if (class_alphabet[i] == cls) return static_cast<int>(i);
    }
    throw SchemaError("class '" + std::string(to_string(cls)) +
                      "' not in dataset alphabet");
}

std::vector<std::string> schema_names(const WindowSpec& spec) {
    spec.validate();
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(spec.window_len) * 2 * kMarkerCount);
    for (int t = 0; t < spec.window_len; ++t) {
        for (int m = 1; m <= kMarkerCount; ++m) {
            for (const char* axis : {"x", "y"}) {
                names.push_back("m" + std::to_string(m) + "_" + axis + "_t" +
                                std::to_string(t));
            }
        }
    }
    return names;
}

int window_count(int frame_count, const WindowSpec& spec) {
    spec.validate();
    if (frame_count < spec.window_len) return 0;
    return (frame_count - spec.window_len) / spec.stride() + 1;
}

std::vector<FeatureWindow> make_windows(const StrokeRecording& rec,
                                        const WindowSpec& spec) {
    spec.validate();
    if (!rec.normalized) {
        throw std::invalid_argument("recording '" + rec.subject_id +
                                    "' must be normalized before windowing");
    }
    const int frames = rec.frame_count();
    if (frames < spec.window_len) {
        throw InsufficientData("recording '" + rec.subject_id + "' has " +
                               std::to_string(frames) + " frames, window needs " +
                               std::to_string(spec.window_len));
    }

    std::vector<FeatureWindow> windows;
    const std::size_t width = static_cast<std::size_t>(spec.window_len) * 2 * kMarkerCount;
    for (int start = 0; start + spec.window_len <= frames; start += spec.stride()) {
        FeatureWindow window;
        window.features.reserve(width);
        for (int t = 0; t < spec.window_len; ++t) {
            for (const Point& p : rec.frames[start + t].positions) {
                window.features.push_back(p.x);
                window.features.push_back(p.y);
            }
        }
        window.label = rec.skill;
        window.subject_id = rec.subject_id;
        window.start_frame = start;
        windows.push_back(std::move(window));
    }
    return windows;
}

namespace {

// Frame-to-frame deltas as a pseudo-recording; one frame shorter.
StrokeRecording difference_recording(const StrokeRecording& rec) {
    StrokeRecording out = rec;
    out.frames.clear();
    for (std::size_t t = 0; t + 1 < rec.frames.size(); ++t) {
        Frame d;
        d.index = static_cast<int>(t);
        for (int m = 0; m < kMarkerCount; ++m) {
            d.positions[m].x = rec.frames[t + 1].positions[m].x - rec.frames[t].positions[m].x;
            d.positions[m].y = rec.frames[t + 1].positions[m].y - rec.frames[t].positions[m].y;
        }
        out.frames.push_back(d);
    }
    return out;
}

}  // namespace

Dataset build_dataset(const std::vector<StrokeRecording>& recs,
                      const WindowSpec& spec,
                      const std::vector<SkillClass>& classes,
                      bool differenced) {
    spec.validate();
    if (classes.empty()) {
        throw std::invalid_argument("class subset must be non-empty");
    }

    Dataset ds;
    ds.schema = schema_names(spec);
    for (SkillClass cls : kAllSkillClasses) {  // canonical alphabet order
        if (std::find(classes.begin(), classes.end(), cls) != classes.end()) {
            ds.class_alphabet.push_back(cls);
        }
    }

    for (const StrokeRecording& rec : recs) {
        if (std::find(ds.class_alphabet.begin(), ds.class_alphabet.end(),
                      rec.skill) == ds.class_alphabet.end()) {
            continue;
        }
        auto windows = differenced ? make_windows(difference_recording(rec), spec)
                                   : make_windows(rec, spec);
        for (auto& w : windows) ds.instances.push_back(std::move(w));
    }

    if (ds.instances.empty()) {
        throw EmptyDataset("no feature windows for the requested classes");
    }
    return ds;
}

std::string export_dataset(const Dataset& ds) {
    if (ds.instances.empty()) throw EmptyDataset("cannot export an empty dataset");
    std::string out;
    for (const std::string& name : ds.schema) {
        out += name;
        out += ',';
    }
    out += "class\n";
    for (const FeatureWindow& w : ds.instances) {
        for (double v : w.features) {
            out += format_double(v);
            out += ',';
        }
        out += to_string(w.label);
        out += '\n';
    }
    return out;
}

Dataset import_dataset(std::string_view csv_text) {
    Dataset ds;
    bool saw_header = false;
    int row = 0;
    std::array<bool, 3> seen{};
    std::size_t pos = 0;
    while (pos <= csv_text.size()) {
        std::size_t eol = csv_text.find('\n', pos);
        std::string_view line = csv_text.substr(
            pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? csv_text.size() + 1 : eol + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;

        std::size_t start = 0;
        std::vector<std::string_view> cells;
        while (true) {
            std::size_t comma = line.find(',', start);
            if (comma == std::string_view::npos) {
                cells.push_back(line.substr(start));
                break;
            }
            cells.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }

        if (!saw_header) {
            if (cells.size() < 2 || cells.back() != "class") {
                throw FormatError("dataset header must end with a 'class' column");
            }
            for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
                ds.schema.emplace_back(cells[i]);
            }
            saw_header = true;
            continue;
        }

        ++row;
        if (cells.size() != ds.schema.size() + 1) {
            throw ValueError("row " + std::to_string(row) + ": expected " +
                             std::to_string(ds.schema.size() + 1) + " cells, got " +
                             std::to_string(cells.size()));
        }
        FeatureWindow w;
        w.features.reserve(ds.schema.size());
        for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
            w.features.push_back(parse_double(
                cells[i], "row " + std::to_string(row) + ", " + ds.schema[i]));
        }
        w.label = skill_from_string(cells.back());
        seen[static_cast<std::size_t>(w.label)] = true;
        ds.instances.push_back(std::move(w));
    }
    if (!saw_header) throw FormatError("empty dataset file");
    if (ds.instances.empty()) throw EmptyDataset("dataset file has no rows");
    for (SkillClass cls : kAllSkillClasses) {
        if (seen[static_cast<std::size_t>(cls)]) ds.class_alphabet.push_back(cls);
    }
    return ds;
}

}  // namespace strokeminer
