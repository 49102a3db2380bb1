#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "strokeminer/classifiers.hpp"
#include "strokeminer/stroke_data.hpp"
#include "strokeminer/windowing.hpp"

namespace strokeminer {

struct ConfusionMatrix {
    std::vector<SkillClass> classes;
    std::vector<std::vector<long>> counts;  // counts[true][predicted]

    explicit ConfusionMatrix(std::vector<SkillClass> cls = {});
    void add(SkillClass truth, SkillClass predicted);
    long total() const;
    long trace() const;
};

// 100 * trace / total. Throws EmptyEvaluation on an empty matrix.
double accuracy_from_confusion(const ConfusionMatrix& cm);

// Which learner to run and with what parameters.
struct LearnerConfig {
    enum class Kind { C45, NBTree };
    Kind kind = Kind::C45;
    C45Params c45{};
    NBTreeParams nbtree{};

    std::string name() const { return kind == Kind::C45 ? "c45" : "nbtree"; }
    Model train(const Dataset& ds) const;
};

// Mirrors the three recognition-rate settings reported per learner:
// cross-validation, learning data (resubstitution) and hold-out evaluation.
// Each present rate has its confusion matrix and equals
// 100 * trace / total of it.
struct EvaluationReport {
    std::string learner;
    std::optional<double> rate_cv;
    std::optional<double> rate_train;
    std::optional<double> rate_eval;
    std::optional<ConfusionMatrix> confusion_cv;
    std::optional<ConfusionMatrix> confusion_train;
    std::optional<ConfusionMatrix> confusion_eval;
    int folds = 0;
    std::uint64_t seed = 0;
    bool grouped = false;
};

// Stratified k-fold cross-validation with a seeded shuffle per class
// stratum. With group_by_recording, all windows sharing a subject_id are
// assigned to one fold (group stratification by label), so no recording
// leaks across the train/test boundary. The report also carries the
// resubstitution rate of a model trained on the full dataset. Throws
// FoldError when k < 2 or k exceeds the instance (or group) count.
EvaluationReport kfold_cross_validate(const Dataset& ds, int k,
                                      const LearnerConfig& learner,
                                      std::uint64_t seed,
                                      bool group_by_recording = false);

// Trains on `train`, reports resubstitution and hold-out rates. Throws
// SchemaError when schemas or class alphabets differ.
EvaluationReport holdout_evaluate(const Dataset& train, const Dataset& eval,
                                  const LearnerConfig& learner);

// Picks the n recordings of `cls` forming the subset with the highest mean
// pairwise trajectory correlation (mean of r_x and r_y, given marker) as
// training; the rest become evaluation. Score ties break toward the
// lexicographically first subject set. Throws InsufficientData when fewer
// than n+1 recordings of the class exist.
std::pair<std::vector<std::string>, std::vector<std::string>>
select_training_recordings(const std::vector<StrokeRecording>& recs,
                           SkillClass cls, int n, MarkerId marker);

// Majority vote over per-window predictions; vote ties break toward the
// class with the higher summed predicted probability over its own windows,
// remaining ties toward canonical class order. Throws EmptyEvaluation.
SkillClass aggregate_recording_prediction(const std::vector<Prediction>& window_preds);

// Rendering. JSON is machine-readable (seed always present); text mirrors
// the recognition-rate / class-discrimination table layout.
std::string report_to_json(const std::vector<EvaluationReport>& reports,
                           std::uint64_t seed);
std::string report_to_text(const std::vector<EvaluationReport>& reports);

}  // namespace strokeminer
