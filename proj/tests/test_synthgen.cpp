#include <doctest.h>

#include <cmath>

#include "strokeminer/evaluation.hpp"
#include "strokeminer/kinematics.hpp"
#include "strokeminer/synthgen.hpp"
#include "test_support.hpp"

using namespace strokeminer;

namespace {

double mean_corr(const StrokeRecording& a, const StrokeRecording& b) {
    CorrelationResult r = trajectory_correlation(a, b, MarkerId(9));
    return (r.r_x + r.r_y) / 2.0;
}

double mean_pairwise_corr(const std::vector<const StrokeRecording*>& recs) {
    double sum = 0.0;
    int pairs = 0;
    for (std::size_t i = 0; i < recs.size(); ++i) {
        for (std::size_t j = i + 1; j < recs.size(); ++j) {
            sum += mean_corr(*recs[i], *recs[j]);
            ++pairs;
        }
    }
    return sum / pairs;
}

std::vector<const StrokeRecording*> of_class(const std::vector<StrokeRecording>& recs,
                                             SkillClass cls) {
    std::vector<const StrokeRecording*> out;
    for (const StrokeRecording& rec : recs) {
        if (rec.skill == cls) out.push_back(&rec);
    }
    return out;
}

}  // namespace

TEST_CASE("generate_recording is deterministic in (profile, seed)") {
    StrokeRecording a = generate_recording(expert_profile(), 99);
    StrokeRecording b = generate_recording(expert_profile(), 99);
    CHECK(serialize_recording(a) == serialize_recording(b));
    CHECK(a.subject_id == "synth_99");
    StrokeRecording c = generate_recording(expert_profile(), 100);
    CHECK(serialize_recording(a) != serialize_recording(c));
}

TEST_CASE("generated recordings satisfy the advertised shape") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        StrokeRecording rec = generate_recording(novice_profile(), seed);
        CHECK_FALSE(rec.normalized);
        CHECK(rec.fps == 90.0);
        CHECK(rec.frame_count() >= 48);
        CHECK(rec.frame_count() <= 112);
        CHECK(rec.skill == SkillClass::Novice);
    }
}

TEST_CASE("generate_cohort reproduces the cohort spec") {
    std::vector<StrokeRecording> cohort = generate_cohort(paper_cohort_spec(), 42);
    REQUIRE(cohort.size() == 15);
    CHECK(of_class(cohort, SkillClass::Expert).size() == 7);
    CHECK(of_class(cohort, SkillClass::Intermediate).size() == 3);
    CHECK(of_class(cohort, SkillClass::Novice).size() == 5);
    CHECK(cohort[0].subject_id == "expert_0");
    CHECK(cohort[7].subject_id == "intermediate_0");
    CHECK(cohort[10].subject_id == "novice_0");

    std::vector<StrokeRecording> again = generate_cohort(paper_cohort_spec(), 42);
    for (std::size_t i = 0; i < cohort.size(); ++i) {
        CHECK(serialize_recording(cohort[i]) == serialize_recording(again[i]));
    }

    CohortSpec no_intermediate;
    no_intermediate.groups.emplace_back(expert_profile(), 2);
    no_intermediate.groups.emplace_back(novice_profile(), 0);
    std::vector<StrokeRecording> small = generate_cohort(no_intermediate, 1);
    CHECK(small.size() == 2);
    CHECK(of_class(small, SkillClass::Novice).empty());
}

TEST_CASE("expert recordings from different seeds stay tightly correlated") {
    // Calibration target locked by the preset values: 20 seed pairs.
    for (std::uint64_t k = 0; k < 20; ++k) {
        StrokeRecording a = generate_recording(expert_profile(), k);
        StrokeRecording b = generate_recording(expert_profile(), 1000 + k);
        CHECK(mean_corr(a, b) >= 0.9);
    }
}

TEST_CASE("novice recordings from different seeds decorrelate") {
    for (std::uint64_t k = 0; k < 20; ++k) {
        StrokeRecording a = generate_recording(novice_profile(), k);
        StrokeRecording b = generate_recording(novice_profile(), 1000 + k);
        CHECK(mean_corr(a, b) <= 0.5);
    }
}

TEST_CASE("generated cohorts pass validation with the default policy") {
    std::vector<StrokeRecording> cohort = generate_cohort(paper_cohort_spec(), 42);
    for (const StrokeRecording& rec : cohort) {
        auto findings = validate_recording(rec);
        for (const Finding& f : findings) {
            CHECK(f.code != FindingCode::FrameCountLow);
            CHECK(f.code != FindingCode::FrameCountHigh);
            CHECK(f.code != FindingCode::UnexpectedFps);
        }
        if (rec.skill == SkillClass::Expert) {
            CHECK(findings.empty());  // experts also stay glitch-free
        }
    }
}

TEST_CASE("expert racket speed peaks strictly inside the recording") {
    std::vector<StrokeRecording> cohort = generate_cohort(paper_cohort_spec(), 42);
    for (const StrokeRecording* rec : of_class(cohort, SkillClass::Expert)) {
        int impact = detect_impact(*rec);
        CHECK(impact > 0);
        CHECK(impact < rec->frame_count() - 2);
    }
}

TEST_CASE("expert cohorts out-correlate novice cohorts") {
    std::vector<StrokeRecording> cohort = generate_cohort(paper_cohort_spec(), 42);
    auto experts = of_class(cohort, SkillClass::Expert);
    auto novices = of_class(cohort, SkillClass::Novice);
    REQUIRE(experts.size() >= 5);
    REQUIRE(novices.size() >= 5);
    double expert_corr = mean_pairwise_corr(experts);
    double novice_corr = mean_pairwise_corr(novices);
    CHECK(expert_corr > novice_corr);
}

TEST_CASE("novice shoulder range strictly contains the expert range") {
    std::vector<StrokeRecording> cohort = generate_cohort(paper_cohort_spec(), 42);
    std::vector<StrokeRecording> normalized;
    for (const StrokeRecording& rec : cohort) {
        if (rec.skill != SkillClass::Intermediate) {
            normalized.push_back(normalize_origin(rec));
        }
    }
    ExtremaTable table = extrema_report(normalized, {MarkerId(1)});
    REQUIRE(table.rows.size() == 2);
    const ExtremaRow& expert = table.rows[0];
    const ExtremaRow& novice = table.rows[1];
    REQUIRE(expert.skill == SkillClass::Expert);
    REQUIRE(novice.skill == SkillClass::Novice);
    CHECK(novice.min_x < expert.min_x);
    CHECK(novice.max_x > expert.max_x);
}

TEST_CASE("synthetic windows feed the trainers cleanly") {
    std::vector<StrokeRecording> cohort = generate_cohort(paper_cohort_spec(), 7);
    std::vector<StrokeRecording> normalized;
    for (const StrokeRecording& rec : cohort) normalized.push_back(normalize_origin(rec));
    Dataset ds = build_dataset(normalized, WindowSpec{},
                               {SkillClass::Expert, SkillClass::Novice});
    DecisionTree tree = train_c45(ds, C45Params{1, false, 0.25});
    int correct = 0;
    for (const FeatureWindow& w : ds.instances) {
        if (predict_tree(tree, w.features).label == w.label) ++correct;
    }
    CHECK(correct == ds.size());  // consistency on duplicate-free synthetic data
}
