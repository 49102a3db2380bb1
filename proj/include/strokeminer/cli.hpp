#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "strokeminer/classifiers.hpp"
#include "strokeminer/stroke_data.hpp"

namespace strokeminer::cli {

// Stable exit-code contract: 0 success, 1 completed with evaluation-level
// warnings (e.g. a requested report section omitted for lack of data),
// 2 hard errors.
inline constexpr int kExitOk = 0;
inline constexpr int kExitWarnings = 1;
inline constexpr int kExitError = 2;

struct ManifestEntry {
    std::filesystem::path recording;
    std::filesystem::path metadata;
};

// Manifest: one entry per line, `recording.csv,metadata.json` (the sidecar
// path may be omitted; it then defaults to the recording path with a .json
// extension). Blank lines and lines starting with '#' are skipped. Relative
// paths resolve against the manifest's directory.
std::vector<ManifestEntry> parse_manifest(const std::filesystem::path& path);

// Canonical recording store: a directory of <subject_id>.csv plus
// <subject_id>.json sidecars. Loading orders recordings by file name.
std::vector<StrokeRecording> load_store(const std::filesystem::path& dir);
void write_store(const std::vector<StrokeRecording>& recs,
                 const std::filesystem::path& dir);

struct IngestOptions {
    std::filesystem::path manifest;
    std::filesystem::path out;
    double max_jump = 100.0;
    bool quiet = false;
};
int cmd_ingest(const IngestOptions& opts);

struct AnalyzeOptions {
    std::filesystem::path store;
    std::filesystem::path out;  // empty: extrema/correlations to stdout
    std::vector<int> markers = {1, 4, 9};
    int resample_n = 100;
    bool impact_anchored = false;
    bool marker_pairs = false;
    bool quiet = false;
};
int cmd_analyze(const AnalyzeOptions& opts);

struct WindowsOptions {
    std::filesystem::path manifest;  // exactly one of manifest/store
    std::filesystem::path store;
    std::filesystem::path out;  // empty: dataset CSV to stdout
    int window_len = 5;
    int overlap = 3;
    std::vector<std::string> classes = {"expert", "novice"};
    bool differenced = false;
};
int cmd_windows(const WindowsOptions& opts);

struct TrainOptions {
    std::filesystem::path dataset;
    std::filesystem::path out;
    std::string learner = "c45";
    bool no_prune = false;
    double cf = 0.25;
    int min_leaf = 2;
    int cv_folds = 5;
    double min_split_gain = 0.05;
    int min_node = 30;
    std::uint64_t seed = 0;
};
int cmd_train(const TrainOptions& opts);

struct EvaluateOptions {
    std::filesystem::path dataset;             // window-level input
    std::filesystem::path store;               // alternative: recordings, enables grouping
    std::vector<std::filesystem::path> holdout;  // [train.csv, eval.csv]
    std::filesystem::path out;  // empty: text report to stdout
    std::string learner = "c45";
    int folds = 10;
    std::uint64_t seed = 0;
    bool group_by_recording = false;
    int window_len = 5;
    int overlap = 3;
    std::vector<std::string> classes = {"expert", "novice"};
    bool no_prune = false;
    double cf = 0.25;
    int min_leaf = 2;
    int cv_folds = 5;
    double min_split_gain = 0.05;
    int min_node = 30;
};
int cmd_evaluate(const EvaluateOptions& opts);

struct SynthOptions {
    std::string preset = "paper-cohort";
    int count = 5;  // recordings per single-class preset
    std::uint64_t seed = 0;
    std::filesystem::path out;
};
int cmd_synth(const SynthOptions& opts);

struct ReportOptions {
    std::filesystem::path store;
    std::vector<std::filesystem::path> eval_json;
    std::filesystem::path out;  // empty: stdout
    std::vector<int> markers = {1, 4, 9};
    int resample_n = 100;
    bool quiet = false;
};
int cmd_report(const ReportOptions& opts);

struct PipelineOptions {
    std::string synth_preset;        // empty when a manifest drives the run
    std::filesystem::path manifest;
    std::filesystem::path out;
    std::string learner = "both";    // c45 | nbtree | both
    std::uint64_t seed = 42;
    int window_len = 5;
    int overlap = 3;
    std::vector<std::string> classes = {"expert", "novice"};
    int folds = 10;
    bool group_by_recording = false;
    int holdout_class_experts = 0;  // 0 disables the hold-out split
    bool no_prune = false;
    double cf = 0.25;
    int min_leaf = 2;
    int cv_folds = 5;
    double min_split_gain = 0.05;
    int min_node = 30;
    bool quiet = false;
};
int cmd_pipeline(const PipelineOptions& opts);

}  // namespace strokeminer::cli
