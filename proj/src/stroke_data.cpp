#include "strokeminer/stroke_data.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <system_error>

#include <json.hpp>

namespace strokeminer {

namespace {

constexpr std::array<std::string_view, kMarkerCount> kMarkerNames = {
    "acromioclavicular joint", "acromiale",          "radiale",
    "ulna",                    "stylium",            "stylium ulnae",
    "racket inner side",       "racket outer side",  "racket top",
};

std::vector<std::string_view> split_csv_line(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return cells;
}

std::string column_name(std::size_t column) {
    if (column == 0) return "frame";
    std::size_t marker = (column - 1) / 2 + 1;
    return "m" + std::to_string(marker) + ((column - 1) % 2 == 0 ? "_x" : "_y");
}

}  // namespace

MarkerId::MarkerId(int ordinal) : ordinal_(ordinal) {
    if (ordinal < 1 || ordinal > kMarkerCount) {
        throw std::invalid_argument("marker ordinal must be in 1..9, got " +
                                    std::to_string(ordinal));
    }
}

std::string_view MarkerId::anatomical_name() const {
    return kMarkerNames[static_cast<std::size_t>(ordinal_ - 1)];
}

std::string_view to_string(SkillClass cls) {
    switch (cls) {
        case SkillClass::Expert: return "expert";
        case SkillClass::Intermediate: return "intermediate";
        case SkillClass::Novice: return "novice";
    }
    return "?";
}

SkillClass skill_from_string(std::string_view text) {
    for (SkillClass cls : kAllSkillClasses) {
        if (text == to_string(cls)) return cls;
    }
    throw FormatError("unknown skill class '" + std::string(text) + "'");
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw ValueError("unformattable double");
    return std::string(buf, ptr);
}

double parse_double(std::string_view cell, const std::string& what) {
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || cell.empty()) {
        throw ValueError(what + ": non-numeric value '" + std::string(cell) + "'");
    }
    return value;
}

std::string recording_csv_header() {
    std::string header = "frame";
    for (int m = 1; m <= kMarkerCount; ++m) {
        header += ",m" + std::to_string(m) + "_x,m" + std::to_string(m) + "_y";
    }
    return header;
}

StrokeRecording parse_recording(std::string_view csv_text,
                                const RecordingMetadata& metadata) {
    StrokeRecording rec;
    rec.subject_id = metadata.subject_id;
    rec.skill = metadata.skill;
    rec.fps = metadata.fps;
    rec.resolution = metadata.resolution;
    rec.normalized = false;

    bool saw_header = false;
    int row = 0;  // 1-based data row counter
    std::size_t pos = 0;
    while (pos <= csv_text.size()) {
        std::size_t eol = csv_text.find('\n', pos);
        std::string_view line = csv_text.substr(
            pos, eol == std::string_view::npos ? std::string_view::npos
                                               : eol - pos);
        pos = eol == std::string_view::npos ? csv_text.size() + 1 : eol + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;

        if (!saw_header) {
            if (line != recording_csv_header()) {
                throw FormatError("malformed header: expected '" +
                                  recording_csv_header() + "', got '" +
                                  std::string(line) + "'");
            }
            saw_header = true;
            continue;
        }

        ++row;
        auto cells = split_csv_line(line);
        if (cells.size() != 1 + 2 * kMarkerCount) {
            std::size_t col = std::min(cells.size(), std::size_t(2 * kMarkerCount));
            throw ValueError("row " + std::to_string(row) + ", " +
                             column_name(col) + ": missing cell (got " +
                             std::to_string(cells.size()) + " of 19 columns)");
        }

        double index_value =
            parse_double(cells[0], "row " + std::to_string(row) + ", frame");
        long index = static_cast<long>(index_value);
        if (static_cast<double>(index) != index_value) {
            throw ValueError("row " + std::to_string(row) +
                             ", frame: non-integer index");
        }
        if (index != row - 1) {
            throw SequenceError(
                "row " + std::to_string(row) + ": expected frame index " +
                std::to_string(row - 1) + ", got " + std::to_string(index));
        }

        Frame frame;
        frame.index = static_cast<int>(index);
        for (std::size_t c = 1; c < cells.size(); ++c) {
            std::string where = "row " + std::to_string(row) + ", " + column_name(c);
            double value = parse_double(cells[c], where);
            if (!std::isfinite(value)) {
                throw ValueError(where + ": non-finite value");
            }
            Point& p = frame.positions[(c - 1) / 2];
            if ((c - 1) % 2 == 0) p.x = value; else p.y = value;
        }
        rec.frames.push_back(frame);
    }

    if (!saw_header) throw FormatError("empty recording file");
    if (rec.frames.empty()) throw FormatError("recording has no data rows");
    return rec;
}

std::string serialize_recording(const StrokeRecording& rec) {
    std::string out = recording_csv_header();
    out += '\n';
    for (const Frame& frame : rec.frames) {
        out += std::to_string(frame.index);
        for (const Point& p : frame.positions) {
            out += ',';
            out += format_double(p.x);
            out += ',';
            out += format_double(p.y);
        }
        out += '\n';
    }
    return out;
}

RecordingMetadata parse_metadata(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("metadata sidecar: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("subject_id") || !doc.contains("skill")) {
        throw FormatError("metadata sidecar must carry subject_id and skill");
    }
    RecordingMetadata meta;
    try {
        meta.subject_id = doc.at("subject_id").get<std::string>();
        meta.skill = skill_from_string(doc.at("skill").get<std::string>());
        if (doc.contains("fps")) meta.fps = doc.at("fps").get<double>();
        if (doc.contains("resolution")) {
            auto res = doc.at("resolution");
            if (!res.is_array() || res.size() != 2) {
                throw FormatError("resolution must be [w, h]");
            }
            meta.resolution = {res.at(0).get<int>(), res.at(1).get<int>()};
        }
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("metadata sidecar: ") + e.what());
    }
    return meta;
}

std::string serialize_metadata(const RecordingMetadata& metadata) {
    nlohmann::ordered_json doc;
    doc["subject_id"] = metadata.subject_id;
    doc["skill"] = std::string(to_string(metadata.skill));
    doc["fps"] = metadata.fps;
    doc["resolution"] = metadata.resolution;
    return doc.dump(2) + "\n";
}

StrokeRecording normalize_origin(const StrokeRecording& rec) {
    if (rec.frames.empty()) throw InsufficientData("cannot normalize an empty recording");
    StrokeRecording out = rec;
    const Point origin = rec.frames.front().positions.front();
    for (Frame& frame : out.frames) {
        for (Point& p : frame.positions) {
            p.x -= origin.x;
            p.y -= origin.y;
        }
    }
    out.normalized = true;
    return out;
}

std::vector<Finding> validate_recording(const StrokeRecording& rec,
                                        const ValidationPolicy& policy) {
    std::vector<Finding> findings;
    const int frames = rec.frame_count();
    if (frames < policy.min_frames) {
        findings.push_back({FindingCode::FrameCountLow,
                            "frame count " + std::to_string(frames) + " < " +
                                std::to_string(policy.min_frames),
                            -1, -1});
    } else if (frames > policy.max_frames) {
        findings.push_back({FindingCode::FrameCountHigh,
                            "frame count " + std::to_string(frames) + " > " +
                                std::to_string(policy.max_frames),
                            -1, -1});
    }
    if (rec.fps != policy.expected_fps) {
        findings.push_back({FindingCode::UnexpectedFps,
                            "fps " + format_double(rec.fps) + " != expected " +
                                format_double(policy.expected_fps),
                            -1, -1});
    }
    for (int m = 0; m < kMarkerCount; ++m) {
        for (int t = 0; t + 1 < frames; ++t) {
            const Point& a = rec.frames[t].positions[m];
            const Point& b = rec.frames[t + 1].positions[m];
            double jump = std::hypot(b.x - a.x, b.y - a.y);
            if (jump > policy.max_jump) {
                findings.push_back(
                    {FindingCode::MarkerJump,
                     "marker " + std::to_string(m + 1) + " jumps " +
                         format_double(jump) + " px between frames " +
                         std::to_string(t) + " and " + std::to_string(t + 1),
                     t, m + 1});
            }
        }
    }
    return findings;
}

}  // namespace strokeminer
