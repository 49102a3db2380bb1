#include "strokeminer/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "strokeminer/kinematics.hpp"
#include "strokeminer/rng.hpp"

namespace strokeminer {

ConfusionMatrix::ConfusionMatrix(std::vector<SkillClass> cls)
    : classes(std::move(cls)),
      counts(classes.size(), std::vector<long>(classes.size(), 0)) {}

void ConfusionMatrix::add(SkillClass truth, SkillClass predicted) {
    std::size_t i = classes.size(), j = classes.size();
    for (std::size_t c = 0; c < classes.size(); ++c) {
        if (classes[c] == truth) i = c;
        if (classes[c] == predicted) j = c;
    }
    if (i == classes.size() || j == classes.size()) {
        throw SchemaError("class outside the confusion matrix alphabet");
    }
    counts[i][j]++;
}

long ConfusionMatrix::total() const {
    long sum = 0;
    for (const auto& row : counts) sum += std::accumulate(row.begin(), row.end(), 0L);
    return sum;
}

long ConfusionMatrix::trace() const {
    long sum = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) sum += counts[i][i];
    return sum;
}

double accuracy_from_confusion(const ConfusionMatrix& cm) {
    long n = cm.total();
    if (n == 0) throw EmptyEvaluation("confusion matrix has no observations");
    return 100.0 * static_cast<double>(cm.trace()) / static_cast<double>(n);
}

Model LearnerConfig::train(const Dataset& ds) const {
    if (kind == Kind::C45) return train_c45(ds, c45);
    return train_nbtree(ds, nbtree);
}

namespace {

Dataset subset_dataset(const Dataset& ds, std::span<const int> indices) {
    Dataset out;
    out.schema = ds.schema;
    out.class_alphabet = ds.class_alphabet;
    out.instances.reserve(indices.size());
    for (int i : indices) out.instances.push_back(ds.instances[static_cast<std::size_t>(i)]);
    return out;
}

ConfusionMatrix resubstitution_confusion(const Model& model, const Dataset& ds) {
    ConfusionMatrix cm(ds.class_alphabet);
    for (const FeatureWindow& w : ds.instances) {
        cm.add(w.label, predict(model, w.features).label);
    }
    return cm;
}

}  // namespace

EvaluationReport kfold_cross_validate(const Dataset& ds, int k,
                                      const LearnerConfig& learner,
                                      std::uint64_t seed,
                                      bool group_by_recording) {
    if (ds.instances.empty()) throw EmptyDataset("cross-validation on empty dataset");
    if (k < 2) throw FoldError("fold count must be >= 2, got " + std::to_string(k));

    // Units are instances, or whole recordings when grouping; each unit is
    // assigned to exactly one fold, stratified by class.
    struct Unit {
        SkillClass label;
        std::vector<int> instance_indices;
    };
    std::vector<Unit> units;
    if (group_by_recording) {
        std::vector<std::string> order;
        std::map<std::string, std::size_t> position;
        for (std::size_t i = 0; i < ds.instances.size(); ++i) {
            const FeatureWindow& w = ds.instances[i];
            auto [it, inserted] = position.try_emplace(w.subject_id, units.size());
            if (inserted) units.push_back({w.label, {}});
            units[it->second].instance_indices.push_back(static_cast<int>(i));
        }
    } else {
        units.reserve(ds.instances.size());
        for (std::size_t i = 0; i < ds.instances.size(); ++i) {
            units.push_back({ds.instances[i].label, {static_cast<int>(i)}});
        }
    }
    if (static_cast<std::size_t>(k) > units.size()) {
        throw FoldError("fold count " + std::to_string(k) + " exceeds the " +
                        std::to_string(units.size()) +
                        (group_by_recording ? " recording groups" : " instances"));
    }

    // Stratified assignment: per class, shuffle that class's units with a
    // seed derived from the class index, then deal them round-robin.
    std::vector<int> fold_of(units.size(), -1);
    for (std::size_t c = 0; c < ds.class_alphabet.size(); ++c) {
        std::vector<std::size_t> members;
        for (std::size_t u = 0; u < units.size(); ++u) {
            if (units[u].label == ds.class_alphabet[c]) members.push_back(u);
        }
        seeded_shuffle(members, derive_seed(seed, c));
        for (std::size_t i = 0; i < members.size(); ++i) {
            fold_of[members[i]] = static_cast<int>(i % static_cast<std::size_t>(k));
        }
    }

    ConfusionMatrix cv_confusion(ds.class_alphabet);
    for (int f = 0; f < k; ++f) {
        std::vector<int> train_idx, test_idx;
        for (std::size_t u = 0; u < units.size(); ++u) {
            auto& dest = fold_of[u] == f ? test_idx : train_idx;
            dest.insert(dest.end(), units[u].instance_indices.begin(),
                        units[u].instance_indices.end());
        }
        if (test_idx.empty()) continue;
        std::sort(train_idx.begin(), train_idx.end());  // preserve dataset order
        std::sort(test_idx.begin(), test_idx.end());
        Dataset train_ds = subset_dataset(ds, train_idx);
        Model model = learner.train(train_ds);
        for (int i : test_idx) {
            const FeatureWindow& w = ds.instances[static_cast<std::size_t>(i)];
            cv_confusion.add(w.label, predict(model, w.features).label);
        }
    }

    // Learning-data rate: resubstitution of a model trained on everything.
    Model full_model = learner.train(ds);
    ConfusionMatrix train_confusion = resubstitution_confusion(full_model, ds);

    EvaluationReport report;
    report.learner = learner.name();
    report.folds = k;
    report.seed = seed;
    report.grouped = group_by_recording;
    report.rate_cv = accuracy_from_confusion(cv_confusion);
    report.confusion_cv = std::move(cv_confusion);
    report.rate_train = accuracy_from_confusion(train_confusion);
    report.confusion_train = std::move(train_confusion);
    return report;
}

EvaluationReport holdout_evaluate(const Dataset& train, const Dataset& eval,
                                  const LearnerConfig& learner) {
    if (train.schema != eval.schema) {
        throw SchemaError("train/eval attribute schemas differ");
    }
    if (train.class_alphabet != eval.class_alphabet) {
        throw SchemaError("train/eval class alphabets differ");
    }
    if (train.instances.empty()) throw EmptyDataset("empty training dataset");
    if (eval.instances.empty()) throw EmptyDataset("empty evaluation dataset");

    Model model = learner.train(train);
    ConfusionMatrix train_confusion = resubstitution_confusion(model, train);
    ConfusionMatrix eval_confusion(eval.class_alphabet);
    for (const FeatureWindow& w : eval.instances) {
        eval_confusion.add(w.label, predict(model, w.features).label);
    }

    EvaluationReport report;
    report.learner = learner.name();
    report.seed = learner.kind == LearnerConfig::Kind::NBTree ? learner.nbtree.seed : 0;
    report.rate_train = accuracy_from_confusion(train_confusion);
    report.confusion_train = std::move(train_confusion);
    report.rate_eval = accuracy_from_confusion(eval_confusion);
    report.confusion_eval = std::move(eval_confusion);
    return report;
}

std::pair<std::vector<std::string>, std::vector<std::string>>
select_training_recordings(const std::vector<StrokeRecording>& recs, SkillClass cls,
                           int n, MarkerId marker) {
    if (n < 1) throw std::invalid_argument("training subset size must be >= 1");
    std::vector<const StrokeRecording*> members;
    for (const StrokeRecording& rec : recs) {
        if (rec.skill == cls) members.push_back(&rec);
    }
    std::sort(members.begin(), members.end(),
              [](const StrokeRecording* a, const StrokeRecording* b) {
                  return a->subject_id < b->subject_id;
              });
    const int m = static_cast<int>(members.size());
    if (m < n + 1) {
        throw InsufficientData("need at least " + std::to_string(n + 1) + " '" +
                               std::string(to_string(cls)) + "' recordings, have " +
                               std::to_string(m));
    }

    // Pairwise mean(r_x, r_y) for the given marker.
    std::vector<std::vector<double>> corr(m, std::vector<double>(m, 0.0));
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            CorrelationResult r = trajectory_correlation(*members[i], *members[j], marker);
            corr[i][j] = corr[j][i] = (r.r_x + r.r_y) / 2.0;
        }
    }

    // Exhaustive search over n-subsets, enumerated in lexicographic subject
    // order so score ties resolve to the lexicographically first subset.
    // Cohort sizes here are small (paper scale: <= 7 per class).
    std::vector<int> pick(static_cast<std::size_t>(n));
    std::iota(pick.begin(), pick.end(), 0);
    std::vector<int> best_pick;
    double best_score = -std::numeric_limits<double>::infinity();
    while (true) {
        double score = 0.0;
        int pairs = 0;
        for (std::size_t a = 0; a < pick.size(); ++a) {
            for (std::size_t b = a + 1; b < pick.size(); ++b) {
                score += corr[pick[a]][pick[b]];
                ++pairs;
            }
        }
        score = pairs > 0 ? score / pairs : 0.0;
        if (score > best_score) {  // strict: lexicographic first wins ties
            best_score = score;
            best_pick = pick;
        }
        // next combination
        int pos = n - 1;
        while (pos >= 0 && pick[static_cast<std::size_t>(pos)] == m - n + pos) --pos;
        if (pos < 0) break;
        ++pick[static_cast<std::size_t>(pos)];
        for (int q = pos + 1; q < n; ++q) {
            pick[static_cast<std::size_t>(q)] = pick[static_cast<std::size_t>(q - 1)] + 1;
        }
    }

    std::vector<std::string> train_ids, eval_ids;
    std::vector<bool> chosen(static_cast<std::size_t>(m), false);
    for (int i : best_pick) chosen[static_cast<std::size_t>(i)] = true;
    for (int i = 0; i < m; ++i) {
        (chosen[static_cast<std::size_t>(i)] ? train_ids : eval_ids)
            .push_back(members[static_cast<std::size_t>(i)]->subject_id);
    }
    return {train_ids, eval_ids};
}

SkillClass aggregate_recording_prediction(const std::vector<Prediction>& window_preds) {
    if (window_preds.empty()) {
        throw EmptyEvaluation("no window predictions to aggregate");
    }
    std::array<long, 3> votes{};
    std::array<double, 3> own_probability{};  // summed p(c) over windows voting c
    for (const Prediction& pred : window_preds) {
        std::size_t c = static_cast<std::size_t>(pred.label);
        votes[c]++;
        own_probability[c] += pred.distribution[c];
    }
    long top_votes = *std::max_element(votes.begin(), votes.end());
    int best = -1;
    for (int c = 0; c < 3; ++c) {
        if (votes[static_cast<std::size_t>(c)] != top_votes) continue;
        if (best < 0 || own_probability[static_cast<std::size_t>(c)] >
                            own_probability[static_cast<std::size_t>(best)]) {
            best = c;  // strict: remaining ties keep canonical class order
        }
    }
    return static_cast<SkillClass>(best);
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json confusion_to_json(const ConfusionMatrix& cm) {
    ordered_json doc;
    std::vector<std::string> names;
    for (SkillClass cls : cm.classes) names.emplace_back(to_string(cls));
    doc["classes"] = names;
    doc["counts"] = cm.counts;
    return doc;
}

std::string format_rate(double rate) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", rate);
    return buf;
}

void render_confusion(std::ostringstream& out, const std::string& title,
                      const ConfusionMatrix& cm) {
    out << title << "\n";
    out << "true\\predicted";
    for (SkillClass cls : cm.classes) out << "\t" << to_string(cls);
    out << "\n";
    for (std::size_t i = 0; i < cm.classes.size(); ++i) {
        out << to_string(cm.classes[i]);
        for (std::size_t j = 0; j < cm.classes.size(); ++j) {
            out << "\t" << cm.counts[i][j];
        }
        out << "\n";
    }
}

}  // namespace

std::string report_to_json(const std::vector<EvaluationReport>& reports,
                           std::uint64_t seed) {
    ordered_json doc;
    doc["format"] = "strokeminer-report v1";
    doc["seed"] = seed;
    ordered_json entries = ordered_json::array();
    for (const EvaluationReport& report : reports) {
        ordered_json entry;
        entry["learner"] = report.learner;
        entry["seed"] = report.seed;
        entry["folds"] = report.folds;
        entry["grouped_by_recording"] = report.grouped;
        ordered_json rates;
        rates["cross_validation"] =
            report.rate_cv ? ordered_json(*report.rate_cv) : ordered_json(nullptr);
        rates["learning_data"] =
            report.rate_train ? ordered_json(*report.rate_train) : ordered_json(nullptr);
        rates["evaluation_data"] =
            report.rate_eval ? ordered_json(*report.rate_eval) : ordered_json(nullptr);
        entry["recognition_rate"] = std::move(rates);
        ordered_json confusions;
        if (report.confusion_cv) {
            confusions["cross_validation"] = confusion_to_json(*report.confusion_cv);
        }
        if (report.confusion_train) {
            confusions["learning_data"] = confusion_to_json(*report.confusion_train);
        }
        if (report.confusion_eval) {
            confusions["evaluation_data"] = confusion_to_json(*report.confusion_eval);
        }
        entry["confusion"] = std::move(confusions);
        entries.push_back(std::move(entry));
    }
    doc["reports"] = std::move(entries);
    return doc.dump(2) + "\n";
}

std::string report_to_text(const std::vector<EvaluationReport>& reports) {
    std::ostringstream out;
    out << "Recognition rate (%)\n";
    out << "learner\tcross-valid.\tlearn. data\teval. data\n";
    for (const EvaluationReport& report : reports) {
        out << report.learner << "\t"
            << (report.rate_cv ? format_rate(*report.rate_cv) : "-") << "\t"
            << (report.rate_train ? format_rate(*report.rate_train) : "-") << "\t"
            << (report.rate_eval ? format_rate(*report.rate_eval) : "-") << "\n";
    }
    for (const EvaluationReport& report : reports) {
        if (report.confusion_cv) {
            out << "\n";
            render_confusion(out, "Discrimination of classes (" + report.learner +
                                      ", cross-validation)", *report.confusion_cv);
        }
        if (report.confusion_train) {
            out << "\n";
            render_confusion(out, "Discrimination of classes (" + report.learner +
                                      ", learning data)", *report.confusion_train);
        }
        if (report.confusion_eval) {
            out << "\n";
            render_confusion(out, "Discrimination of classes (" + report.learner +
                                      ", evaluation data)", *report.confusion_eval);
        }
    }
    return out.str();
}

}  // namespace strokeminer
