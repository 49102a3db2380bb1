#include <doctest.h>

#include <cmath>

#include "strokeminer/stroke_data.hpp"
#include "test_support.hpp"

using namespace strokeminer;
using testsupport::constant_recording;
using testsupport::make_recording;
using testsupport::random_recording;

namespace {

std::string csv_row(int index, double base) {
    std::string row = std::to_string(index);
    for (int m = 0; m < kMarkerCount; ++m) {
        row += "," + format_double(base + m) + "," + format_double(base + m + 0.5);
    }
    return row;
}

std::string well_formed_csv(int rows) {
    std::string csv = recording_csv_header() + "\n";
    for (int i = 0; i < rows; ++i) csv += csv_row(i, 100.0 + i) + "\n";
    return csv;
}

RecordingMetadata meta(const std::string& subject = "s1",
                       SkillClass skill = SkillClass::Expert) {
    return RecordingMetadata{subject, skill, 90.0, {512, 512}};
}

}  // namespace

TEST_CASE("parse_recording accepts a well-formed file") {
    StrokeRecording rec = parse_recording(well_formed_csv(40), meta());
    CHECK(rec.frame_count() == 40);
    CHECK_FALSE(rec.normalized);
    CHECK(rec.subject_id == "s1");
    CHECK(rec.skill == SkillClass::Expert);
    CHECK(rec.frames[3].positions[2].x == 105.0);
    CHECK(rec.frames[39].index == 39);
}

TEST_CASE("parse_recording rejects malformed headers") {
    CHECK_THROWS_AS(parse_recording("frame,m1_x\n0,1\n", meta()), FormatError);
    CHECK_THROWS_AS(parse_recording("", meta()), FormatError);
    CHECK_THROWS_AS(parse_recording(recording_csv_header() + "\n", meta()),
                    FormatError);  // header only, no data rows
}

TEST_CASE("parse_recording detects frame-index gaps and duplicates") {
    std::string csv = recording_csv_header() + "\n" + csv_row(0, 1) + "\n" +
                      csv_row(1, 2) + "\n" + csv_row(3, 3) + "\n";
    CHECK_THROWS_WITH_AS(parse_recording(csv, meta()),
                         doctest::Contains("row 3"), SequenceError);

    std::string dup = recording_csv_header() + "\n" + csv_row(0, 1) + "\n" +
                      csv_row(0, 2) + "\n";
    CHECK_THROWS_AS(parse_recording(dup, meta()), SequenceError);

    std::string late_start = recording_csv_header() + "\n" + csv_row(1, 1) + "\n";
    CHECK_THROWS_AS(parse_recording(late_start, meta()), SequenceError);
}

TEST_CASE("parse_recording names the offending cell") {
    // NaN lands in row 7, column m4_y.
    std::string csv = recording_csv_header() + "\n";
    for (int i = 0; i < 10; ++i) {
        if (i == 6) {
            std::string row = std::to_string(i);
            for (int m = 1; m <= kMarkerCount; ++m) {
                row += ",1";
                row += (m == 4) ? ",NaN" : ",2";
            }
            csv += row + "\n";
        } else {
            csv += csv_row(i, 1.0) + "\n";
        }
    }
    CHECK_THROWS_WITH_AS(parse_recording(csv, meta()),
                         doctest::Contains("row 7, m4_y"), ValueError);
}

TEST_CASE("parse_recording rejects missing and non-numeric cells") {
    std::string missing = recording_csv_header() + "\n0,1,2,3\n";
    CHECK_THROWS_AS(parse_recording(missing, meta()), ValueError);

    std::string garbage = recording_csv_header() + "\n" + csv_row(0, 1) + "\n";
    garbage.replace(garbage.rfind("1.5"), 3, "abc");
    CHECK_THROWS_AS(parse_recording(garbage, meta()), ValueError);

    std::string inf_cell = csv_row(0, 1);
    inf_cell = inf_cell.substr(0, inf_cell.rfind(',')) + ",inf";
    CHECK_THROWS_AS(
        parse_recording(recording_csv_header() + "\n" + inf_cell + "\n", meta()),
        ValueError);
}

TEST_CASE("normalize_origin shifts everything by marker 1 of frame 0") {
    auto rec = make_recording("n", SkillClass::Novice, 5, [](int t, int m) {
        if (t == 0 && m == 0) return Point{100.0, 200.0};
        if (t == 3 && m == 3) return Point{130.0, 190.0};
        return Point{100.0 + t, 200.0 + m};
    });
    StrokeRecording out = normalize_origin(rec);
    CHECK(out.normalized);
    CHECK(out.frames[0].positions[0].x == 0.0);
    CHECK(out.frames[0].positions[0].y == 0.0);
    CHECK(out.frames[3].positions[3].x == 30.0);
    CHECK(out.frames[3].positions[3].y == -10.0);
}

TEST_CASE("normalize_origin is idempotent") {
    StrokeRecording rec = random_recording("r", SkillClass::Expert, 50, 7);
    StrokeRecording once = normalize_origin(rec);
    StrokeRecording twice = normalize_origin(once);
    CHECK(serialize_recording(once) == serialize_recording(twice));
    CHECK(once.frame_count() == rec.frame_count());
    CHECK(once.fps == rec.fps);
}

TEST_CASE("normalize_origin maps a constant recording to all zeros") {
    StrokeRecording rec = constant_recording("c", SkillClass::Novice, 4, 100.0, 200.0);
    StrokeRecording out = normalize_origin(rec);
    for (const Frame& frame : out.frames) {
        for (const Point& p : frame.positions) {
            CHECK(p.x == 0.0);
            CHECK(p.y == 0.0);
        }
    }
}

TEST_CASE("normalize_origin preserves pairwise differences on pixel data") {
    // Integer-valued coordinates subtract exactly, so preservation is exact.
    StrokeRecording rec = random_recording("r", SkillClass::Expert, 30, 11);
    StrokeRecording out = normalize_origin(rec);
    for (int t = 0; t + 1 < rec.frame_count(); ++t) {
        for (int m = 0; m < kMarkerCount; ++m) {
            double before = rec.frames[t + 1].positions[m].x - rec.frames[t].positions[m].x;
            double after = out.frames[t + 1].positions[m].x - out.frames[t].positions[m].x;
            CHECK(before == after);
        }
    }
}

TEST_CASE("validate_recording is quiet on clean input") {
    StrokeRecording rec = constant_recording("v", SkillClass::Expert, 80, 10, 10);
    CHECK(validate_recording(rec).empty());
}

TEST_CASE("validate_recording flags out-of-range frame counts") {
    StrokeRecording rec = constant_recording("v", SkillClass::Expert, 30, 10, 10);
    auto findings = validate_recording(rec);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].code == FindingCode::FrameCountLow);
    CHECK(findings[0].message == "frame count 30 < 40");

    StrokeRecording big = constant_recording("v", SkillClass::Expert, 130, 10, 10);
    auto high = validate_recording(big);
    REQUIRE(high.size() == 1);
    CHECK(high[0].code == FindingCode::FrameCountHigh);
}

TEST_CASE("validate_recording flags unexpected fps") {
    StrokeRecording rec = constant_recording("v", SkillClass::Expert, 80, 10, 10);
    rec.fps = 60.0;
    auto findings = validate_recording(rec);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].code == FindingCode::UnexpectedFps);
}

TEST_CASE("validate_recording detects digitization glitches") {
    auto rec = make_recording("g", SkillClass::Novice, 60, [](int t, int m) {
        if (m == 4 && t == 21) return Point{400.0, 0.0};  // 400 px jump in and out
        return Point{0.0, 0.0};
    });
    ValidationPolicy policy;
    policy.max_jump = 100.0;
    auto findings = validate_recording(rec, policy);
    REQUIRE(findings.size() == 2);  // into frame 21 and back out
    CHECK(findings[0].code == FindingCode::MarkerJump);
    CHECK(findings[0].marker == 5);
    CHECK(findings[0].frame == 20);
    CHECK(findings[1].frame == 21);
}

TEST_CASE("recording CSV round-trips bit-exactly") {
    auto rec = make_recording("rt", SkillClass::Intermediate, 12, [](int t, int m) {
        return Point{0.1 * t + m / 3.0, -17.25 + t * 1e-3};
    });
    std::string text = serialize_recording(rec);
    StrokeRecording back = parse_recording(text, meta("rt", SkillClass::Intermediate));
    REQUIRE(back.frame_count() == rec.frame_count());
    for (int t = 0; t < rec.frame_count(); ++t) {
        for (int m = 0; m < kMarkerCount; ++m) {
            CHECK(back.frames[t].positions[m].x == rec.frames[t].positions[m].x);
            CHECK(back.frames[t].positions[m].y == rec.frames[t].positions[m].y);
        }
    }
    CHECK(serialize_recording(back) == text);
}

TEST_CASE("metadata sidecar parses with defaults and round-trips") {
    RecordingMetadata m = parse_metadata(R"({"subject_id": "p3", "skill": "novice"})");
    CHECK(m.subject_id == "p3");
    CHECK(m.skill == SkillClass::Novice);
    CHECK(m.fps == 90.0);
    CHECK(m.resolution[0] == 512);

    RecordingMetadata full;
    full.subject_id = "p9";
    full.skill = SkillClass::Intermediate;
    full.fps = 120.0;
    full.resolution = {640, 480};
    RecordingMetadata back = parse_metadata(serialize_metadata(full));
    CHECK(back.subject_id == full.subject_id);
    CHECK(back.skill == full.skill);
    CHECK(back.fps == full.fps);
    CHECK(back.resolution == full.resolution);

    CHECK_THROWS_AS(parse_metadata("{"), FormatError);
    CHECK_THROWS_AS(parse_metadata(R"({"subject_id": "x"})"), FormatError);
    CHECK_THROWS_AS(parse_metadata(R"({"subject_id": "x", "skill": "guru"})"),
                    FormatError);
}

TEST_CASE("marker ids expose the fixed anatomical naming") {
    CHECK(MarkerId(1).anatomical_name() == "acromioclavicular joint");
    CHECK(MarkerId(9).anatomical_name() == "racket top");
    CHECK(MarkerId(4).index() == 3);
    CHECK_THROWS_AS(MarkerId(0), std::invalid_argument);
    CHECK_THROWS_AS(MarkerId(10), std::invalid_argument);
}

TEST_CASE("skill classes map to and from labels") {
    CHECK(to_string(SkillClass::Expert) == "expert");
    CHECK(skill_from_string("intermediate") == SkillClass::Intermediate);
    CHECK_THROWS_AS(skill_from_string("pro"), FormatError);
}
