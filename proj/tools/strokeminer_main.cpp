// strokeminer: skill analysis for table-tennis forehand strokes.
// Subcommands cover the full pipeline: ingest, analyze, windows, train,
// evaluate, synth, report, pipeline.

#include <iostream>

#include <CLI11.hpp>

#include "strokeminer/cli.hpp"

using namespace strokeminer;

int main(int argc, char** argv) {
    CLI::App app{"strokeminer: marker-trajectory skill analysis pipeline"};
    app.require_subcommand(1);

    cli::IngestOptions ingest;
    auto* ingest_cmd =
        app.add_subcommand("ingest", "Parse, validate and normalize recordings");
    ingest_cmd->add_option("--manifest", ingest.manifest, "Manifest file")->required();
    ingest_cmd->add_option("--out", ingest.out, "Output store directory")->required();
    ingest_cmd->add_option("--max-jump", ingest.max_jump,
                           "Glitch threshold in px per frame");
    ingest_cmd->add_flag("--quiet", ingest.quiet, "Suppress warnings");

    cli::AnalyzeOptions analyze;
    auto* analyze_cmd =
        app.add_subcommand("analyze", "Kinematic analytics: extrema, correlations, speeds");
    analyze_cmd->add_option("--store", analyze.store, "Canonical store directory")
        ->required();
    analyze_cmd->add_option("--out", analyze.out,
                            "Output directory (default: stdout, no speed files)");
    analyze_cmd->add_option("--markers", analyze.markers, "Marker ordinals (default 1,4,9)")
        ->delimiter(',');
    analyze_cmd->add_option("--resample-n", analyze.resample_n,
                            "Resampled points for correlation");
    analyze_cmd->add_flag("--impact-anchored", analyze.impact_anchored,
                          "Anchor trajectory alignment at the impact frame");
    analyze_cmd->add_flag("--marker-pairs", analyze.marker_pairs,
                          "Also emit within-recording marker-pair correlations");
    analyze_cmd->add_flag("--quiet", analyze.quiet, "Suppress notices");

    cli::WindowsOptions windows;
    auto* windows_cmd =
        app.add_subcommand("windows", "Build the overlapping-window dataset CSV");
    windows_cmd->add_option("--manifest", windows.manifest, "Manifest file");
    windows_cmd->add_option("--store", windows.store, "Canonical store directory");
    windows_cmd->add_option("--out", windows.out, "Dataset CSV path (default stdout)");
    windows_cmd->add_option("--window-len", windows.window_len, "Frames per window");
    windows_cmd->add_option("--overlap", windows.overlap, "Shared frames between windows");
    windows_cmd->add_option("--classes", windows.classes,
                            "Class subset (default expert,novice)")
        ->delimiter(',');
    windows_cmd->add_flag("--differenced", windows.differenced,
                          "Window frame-to-frame deltas instead of positions");

    cli::TrainOptions train;
    auto* train_cmd = app.add_subcommand("train", "Train a classifier on a dataset CSV");
    train_cmd->add_option("--dataset", train.dataset, "Dataset CSV")->required();
    train_cmd->add_option("--out", train.out, "Model file path")->required();
    train_cmd->add_option("--learner", train.learner, "c45 or nbtree");
    train_cmd->add_flag("--no-prune", train.no_prune, "Disable C4.5 pruning");
    train_cmd->add_option("--cf", train.cf, "Pruning confidence factor");
    train_cmd->add_option("--min-leaf", train.min_leaf, "Minimum leaf size");
    train_cmd->add_option("--cv-folds", train.cv_folds, "NBTree CV folds");
    train_cmd->add_option("--min-split-gain", train.min_split_gain,
                          "NBTree relative error-reduction gate");
    train_cmd->add_option("--min-node", train.min_node, "NBTree minimum node size");
    train_cmd->add_option("--seed", train.seed, "Seed for NBTree CV shuffles");

    cli::EvaluateOptions evaluate;
    auto* evaluate_cmd =
        app.add_subcommand("evaluate", "Cross-validation or hold-out evaluation");
    evaluate_cmd->add_option("--dataset", evaluate.dataset, "Dataset CSV");
    evaluate_cmd->add_option("--store", evaluate.store,
                             "Canonical store (enables --group-by-recording)");
    evaluate_cmd->add_option("--holdout", evaluate.holdout,
                             "Two dataset CSVs: train eval")->expected(2);
    evaluate_cmd->add_option("--out", evaluate.out,
                             "Report directory (default: text to stdout)");
    evaluate_cmd->add_option("--learner", evaluate.learner, "c45 or nbtree");
    evaluate_cmd->add_option("--folds", evaluate.folds, "CV fold count");
    evaluate_cmd->add_option("--seed", evaluate.seed, "Fold-shuffle seed");
    evaluate_cmd->add_flag("--group-by-recording", evaluate.group_by_recording,
                           "Keep each recording's windows in one fold");
    evaluate_cmd->add_option("--window-len", evaluate.window_len, "Frames per window");
    evaluate_cmd->add_option("--overlap", evaluate.overlap, "Shared frames");
    evaluate_cmd->add_option("--classes", evaluate.classes, "Class subset")
        ->delimiter(',');
    evaluate_cmd->add_flag("--no-prune", evaluate.no_prune, "Disable C4.5 pruning");
    evaluate_cmd->add_option("--cf", evaluate.cf, "Pruning confidence factor");
    evaluate_cmd->add_option("--min-leaf", evaluate.min_leaf, "Minimum leaf size");
    evaluate_cmd->add_option("--cv-folds", evaluate.cv_folds, "NBTree CV folds");
    evaluate_cmd->add_option("--min-split-gain", evaluate.min_split_gain,
                             "NBTree relative error-reduction gate");
    evaluate_cmd->add_option("--min-node", evaluate.min_node, "NBTree minimum node size");

    cli::SynthOptions synth;
    auto* synth_cmd = app.add_subcommand("synth", "Generate synthetic recordings");
    synth_cmd->add_option("--preset", synth.preset,
                          "expert|intermediate|novice|paper-cohort");
    synth_cmd->add_option("--count", synth.count, "Recordings per single-class preset");
    synth_cmd->add_option("--seed", synth.seed, "Master seed");
    synth_cmd->add_option("--out", synth.out, "Output store directory")->required();

    cli::ReportOptions report;
    auto* report_cmd =
        app.add_subcommand("report", "Analytics bundle plus evaluation tables");
    report_cmd->add_option("--store", report.store, "Canonical store directory")
        ->required();
    report_cmd->add_option("--eval-json", report.eval_json,
                           "Evaluation report JSON files to merge");
    report_cmd->add_option("--out", report.out, "Output directory (default stdout)");
    report_cmd->add_option("--markers", report.markers, "Marker ordinals")
        ->delimiter(',');
    report_cmd->add_option("--resample-n", report.resample_n,
                           "Resampled points for correlation");
    report_cmd->add_flag("--quiet", report.quiet, "Suppress notices");

    cli::PipelineOptions pipeline;
    auto* pipeline_cmd =
        app.add_subcommand("pipeline", "End-to-end run: ingest to report");
    pipeline_cmd->add_option("--synth", pipeline.synth_preset,
                             "Generate input: expert|novice|paper-cohort");
    pipeline_cmd->add_option("--manifest", pipeline.manifest, "Manifest of recordings");
    pipeline_cmd->add_option("--out", pipeline.out, "Output directory")->required();
    pipeline_cmd->add_option("--learner", pipeline.learner, "c45|nbtree|both");
    pipeline_cmd->add_option("--seed", pipeline.seed, "Master seed");
    pipeline_cmd->add_option("--window-len", pipeline.window_len, "Frames per window");
    pipeline_cmd->add_option("--overlap", pipeline.overlap, "Shared frames");
    pipeline_cmd->add_option("--classes", pipeline.classes, "Class subset")
        ->delimiter(',');
    pipeline_cmd->add_option("--folds", pipeline.folds, "CV fold count");
    pipeline_cmd->add_flag("--group-by-recording", pipeline.group_by_recording,
                           "Keep each recording's windows in one fold");
    pipeline_cmd->add_option("--holdout-class-experts", pipeline.holdout_class_experts,
                             "Per-class training recordings chosen by correlation");
    pipeline_cmd->add_flag("--no-prune", pipeline.no_prune, "Disable C4.5 pruning");
    pipeline_cmd->add_option("--cf", pipeline.cf, "Pruning confidence factor");
    pipeline_cmd->add_option("--min-leaf", pipeline.min_leaf, "Minimum leaf size");
    pipeline_cmd->add_option("--cv-folds", pipeline.cv_folds, "NBTree CV folds");
    pipeline_cmd->add_option("--min-split-gain", pipeline.min_split_gain,
                             "NBTree relative error-reduction gate");
    pipeline_cmd->add_option("--min-node", pipeline.min_node, "NBTree minimum node size");
    pipeline_cmd->add_flag("--quiet", pipeline.quiet, "Suppress progress output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? cli::kExitOk : cli::kExitError;
    }

    try {
        if (*ingest_cmd) return cli::cmd_ingest(ingest);
        if (*analyze_cmd) return cli::cmd_analyze(analyze);
        if (*windows_cmd) return cli::cmd_windows(windows);
        if (*train_cmd) return cli::cmd_train(train);
        if (*evaluate_cmd) return cli::cmd_evaluate(evaluate);
        if (*synth_cmd) return cli::cmd_synth(synth);
        if (*report_cmd) return cli::cmd_report(report);
        if (*pipeline_cmd) return cli::cmd_pipeline(pipeline);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kExitError;
    }
    return cli::kExitError;
}
