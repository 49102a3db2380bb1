#include <doctest.h>

#include <cmath>

#include "strokeminer/evaluation.hpp"
#include "test_support.hpp"

using namespace strokeminer;
using testsupport::make_dataset;
using testsupport::make_recording;

namespace {

const std::vector<SkillClass> kEN = {SkillClass::Expert, SkillClass::Novice};

Dataset labeled_values(const std::vector<std::pair<double, SkillClass>>& rows,
                       const std::vector<std::string>& subjects = {}) {
    Dataset ds;
    ds.schema = {"a0"};
    ds.class_alphabet = kEN;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        FeatureWindow w;
        w.features = {rows[i].first};
        w.label = rows[i].second;
        if (!subjects.empty()) w.subject_id = subjects[i];
        ds.instances.push_back(std::move(w));
    }
    return ds;
}

LearnerConfig c45_learner() {
    LearnerConfig config;
    config.kind = LearnerConfig::Kind::C45;
    config.c45.min_leaf = 1;
    config.c45.prune = false;
    return config;
}

}  // namespace

TEST_CASE("accuracy_from_confusion reproduces the cross-table arithmetic") {
    ConfusionMatrix cm(kEN);
    cm.counts = {{40, 0}, {26, 72}};
    CHECK(std::abs(accuracy_from_confusion(cm) - 81.2) < 0.05);
}

TEST_CASE("accuracy_from_confusion handles the degenerate corners") {
    ConfusionMatrix identity(kEN);
    identity.counts = {{10, 0}, {0, 25}};
    CHECK(accuracy_from_confusion(identity) == 100.0);

    ConfusionMatrix wrong(kEN);
    wrong.counts = {{0, 7}, {9, 0}};
    CHECK(accuracy_from_confusion(wrong) == 0.0);

    ConfusionMatrix empty(kEN);
    CHECK_THROWS_AS(accuracy_from_confusion(empty), EmptyEvaluation);
}

TEST_CASE("kfold leave-one-out runs one fold per instance") {
    Dataset ds = labeled_values({{1, SkillClass::Expert},
                                 {2, SkillClass::Expert},
                                 {3, SkillClass::Expert},
                                 {4, SkillClass::Expert},
                                 {5, SkillClass::Expert},
                                 {6, SkillClass::Novice},
                                 {7, SkillClass::Novice},
                                 {8, SkillClass::Novice},
                                 {9, SkillClass::Novice},
                                 {10, SkillClass::Novice}});
    EvaluationReport report = kfold_cross_validate(ds, 10, c45_learner(), 1);
    CHECK(report.folds == 10);
    REQUIRE(report.confusion_cv.has_value());
    CHECK(report.confusion_cv->total() == 10);  // each instance tested once
    long expert_row = report.confusion_cv->counts[0][0] +
                      report.confusion_cv->counts[0][1];
    CHECK(expert_row == 5);  // row sums equal true class counts
    CHECK(report.rate_train == 100.0);  // separable data, resubstitution
    CHECK(report.learner == "c45");
}

TEST_CASE("kfold rejects impossible fold counts") {
    Dataset ds = labeled_values({{1, SkillClass::Expert}, {2, SkillClass::Novice}});
    CHECK_THROWS_AS(kfold_cross_validate(ds, 1, c45_learner(), 0), FoldError);
    CHECK_THROWS_AS(kfold_cross_validate(ds, 3, c45_learner(), 0), FoldError);
}

TEST_CASE("kfold reports are deterministic given the seed") {
    Dataset ds = labeled_values({{1, SkillClass::Expert},
                                 {2, SkillClass::Expert},
                                 {3, SkillClass::Novice},
                                 {4, SkillClass::Novice},
                                 {5, SkillClass::Expert},
                                 {6, SkillClass::Novice},
                                 {7, SkillClass::Expert},
                                 {8, SkillClass::Novice}});
    EvaluationReport a = kfold_cross_validate(ds, 4, c45_learner(), 42);
    EvaluationReport b = kfold_cross_validate(ds, 4, c45_learner(), 42);
    CHECK(report_to_json({a}, 42) == report_to_json({b}, 42));
}

TEST_CASE("grouping keeps recordings out of their own training folds") {
    // Four single-value recordings; every window of a recording repeats its
    // value. With grouping, the tested recording's value is never seen in
    // training, so the interleaved labels defeat the learner; without
    // grouping the duplicates leak and accuracy is perfect.
    std::vector<std::pair<double, SkillClass>> rows;
    std::vector<std::string> subjects;
    const SkillClass labels[] = {SkillClass::Expert, SkillClass::Novice,
                                 SkillClass::Expert, SkillClass::Novice};
    for (int rec = 0; rec < 4; ++rec) {
        for (int w = 0; w < 5; ++w) {
            rows.push_back({static_cast<double>(rec), labels[rec]});
            subjects.push_back("rec" + std::to_string(rec));
        }
    }
    Dataset ds = labeled_values(rows, subjects);

    EvaluationReport leaky = kfold_cross_validate(ds, 4, c45_learner(), 3, false);
    CHECK(*leaky.rate_cv == 100.0);

    EvaluationReport grouped = kfold_cross_validate(ds, 2, c45_learner(), 3, true);
    CHECK(grouped.grouped);
    CHECK(*grouped.rate_cv < 100.0);
    CHECK(grouped.confusion_cv->total() == 20);

    CHECK_THROWS_AS(kfold_cross_validate(ds, 5, c45_learner(), 3, true), FoldError);
}

TEST_CASE("holdout_evaluate reports resubstitution and evaluation rates") {
    Dataset train = labeled_values({{1, SkillClass::Expert},
                                    {2, SkillClass::Expert},
                                    {8, SkillClass::Novice},
                                    {9, SkillClass::Novice}});
    SUBCASE("eval identical to train gives equal rates") {
        EvaluationReport report = holdout_evaluate(train, train, c45_learner());
        CHECK(report.rate_train == report.rate_eval);
        CHECK_FALSE(report.rate_cv.has_value());
        REQUIRE(report.confusion_train.has_value());
        REQUIRE(report.confusion_eval.has_value());
        CHECK(accuracy_from_confusion(*report.confusion_eval) == *report.rate_eval);
    }
    SUBCASE("disjoint evaluation set is scored independently") {
        Dataset eval = labeled_values({{0, SkillClass::Expert},
                                       {3, SkillClass::Expert},
                                       {7, SkillClass::Novice},
                                       {10, SkillClass::Novice}});
        EvaluationReport report = holdout_evaluate(train, eval, c45_learner());
        CHECK(*report.rate_train == 100.0);
        CHECK(*report.rate_eval == 100.0);
    }
    SUBCASE("schema mismatch is rejected") {
        Dataset eval = train;
        eval.schema = {"other"};
        CHECK_THROWS_AS(holdout_evaluate(train, eval, c45_learner()), SchemaError);
        Dataset alphabet = train;
        alphabet.class_alphabet = {SkillClass::Expert};
        CHECK_THROWS_AS(holdout_evaluate(train, alphabet, c45_learner()), SchemaError);
    }
}

namespace {

// Recordings tracing parametric curves; marker 9 carries the identity.
StrokeRecording curve(const std::string& id, SkillClass cls, double freq,
                      double phase) {
    return make_recording(id, cls, 30, [=](int t, int) {
        double u = t / 29.0;
        return Point{50.0 * std::sin(freq * u + phase),
                     30.0 * std::cos(freq * u + phase)};
    });
}

}  // namespace

TEST_CASE("select_training_recordings picks the most correlated clique") {
    std::vector<StrokeRecording> recs{
        curve("a", SkillClass::Expert, 6.0, 0.0),
        curve("b", SkillClass::Expert, 6.0, 0.05),   // nearly identical to a
        curve("c", SkillClass::Expert, 19.0, 1.3),   // different shape
    };
    auto [train, eval] = select_training_recordings(recs, SkillClass::Expert, 2,
                                                    MarkerId(9));
    CHECK(train == std::vector<std::string>{"a", "b"});
    CHECK(eval == std::vector<std::string>{"c"});
}

TEST_CASE("select_training_recordings handles the minimal and tied cases") {
    std::vector<StrokeRecording> recs{curve("b", SkillClass::Expert, 6.0, 0.0),
                                      curve("a", SkillClass::Expert, 9.0, 0.4)};
    auto [train, eval] = select_training_recordings(recs, SkillClass::Expert, 1,
                                                    MarkerId(9));
    // No pairs exist for n = 1: every subset ties, lexicographic order wins.
    CHECK(train == std::vector<std::string>{"a"});
    CHECK(eval == std::vector<std::string>{"b"});

    CHECK_THROWS_AS(select_training_recordings(recs, SkillClass::Expert, 2,
                                               MarkerId(9)),
                    InsufficientData);
    CHECK_THROWS_AS(select_training_recordings(recs, SkillClass::Novice, 1,
                                               MarkerId(9)),
                    InsufficientData);
}

TEST_CASE("aggregate_recording_prediction majority vote and tie-breaks") {
    auto pred = [](SkillClass cls, double p) {
        Prediction out;
        out.label = cls;
        out.distribution[static_cast<std::size_t>(cls)] = p;
        return out;
    };

    CHECK(aggregate_recording_prediction({pred(SkillClass::Expert, 0.9),
                                          pred(SkillClass::Expert, 0.8),
                                          pred(SkillClass::Novice, 0.7)}) ==
          SkillClass::Expert);

    // 2-2 vote tie: expert windows sum 1.9, novice windows 1.6.
    CHECK(aggregate_recording_prediction({pred(SkillClass::Expert, 0.95),
                                          pred(SkillClass::Expert, 0.95),
                                          pred(SkillClass::Novice, 0.8),
                                          pred(SkillClass::Novice, 0.8)}) ==
          SkillClass::Expert);

    CHECK(aggregate_recording_prediction({pred(SkillClass::Novice, 0.6)}) ==
          SkillClass::Novice);

    // Full tie (votes and probabilities): canonical class order decides.
    CHECK(aggregate_recording_prediction({pred(SkillClass::Novice, 0.7),
                                          pred(SkillClass::Expert, 0.7)}) ==
          SkillClass::Expert);

    CHECK_THROWS_AS(aggregate_recording_prediction({}), EmptyEvaluation);
}

TEST_CASE("report rendering carries rates, confusions and seeds") {
    Dataset ds = labeled_values({{1, SkillClass::Expert},
                                 {2, SkillClass::Expert},
                                 {8, SkillClass::Novice},
                                 {9, SkillClass::Novice}});
    EvaluationReport report = kfold_cross_validate(ds, 2, c45_learner(), 11);
    std::string json = report_to_json({report}, 11);
    CHECK(json.find("\"seed\": 11") != std::string::npos);
    CHECK(json.find("\"learner\": \"c45\"") != std::string::npos);
    CHECK(json.find("cross_validation") != std::string::npos);
    std::string text = report_to_text({report});
    CHECK(text.find("Recognition rate (%)") != std::string::npos);
    CHECK(text.find("c45") != std::string::npos);
    CHECK(text.find("true\\predicted") != std::string::npos);
}
