#include "strokeminer/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "strokeminer/evaluation.hpp"
#include "strokeminer/kinematics.hpp"
#include "strokeminer/rng.hpp"
#include "strokeminer/synthgen.hpp"
#include "strokeminer/windowing.hpp"

namespace strokeminer::cli {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path.string());
    out << content;
}

template <typename F>
auto stage(const char* name, F&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        throw Error(std::string(name) + ": " + e.what());
    } catch (const std::exception& e) {
        throw Error(std::string(name) + ": " + e.what());
    }
}

std::vector<SkillClass> parse_classes(const std::vector<std::string>& names) {
    std::vector<SkillClass> classes;
    for (const std::string& name : names) classes.push_back(skill_from_string(name));
    return classes;
}

std::vector<MarkerId> parse_markers(const std::vector<int>& ordinals) {
    std::vector<MarkerId> markers;
    for (int m : ordinals) markers.emplace_back(m);
    return markers;
}

void print_findings(const StrokeRecording& rec, const std::vector<Finding>& findings,
                    bool quiet) {
    if (quiet) return;
    for (const Finding& f : findings) {
        std::cerr << "warning: " << rec.subject_id << ": " << f.message << "\n";
    }
}

// ---------------------------------------------------------------------------
// Analytics CSV emission (shared by analyze, report, pipeline)
// ---------------------------------------------------------------------------

std::string extrema_csv(const std::vector<StrokeRecording>& recs,
                        const std::vector<MarkerId>& markers) {
    ExtremaTable table = extrema_report(recs, markers);
    std::string out = "class,marker,min_x,max_x\n";
    for (const ExtremaRow& row : table.rows) {
        out += std::string(to_string(row.skill)) + ",m" +
               std::to_string(row.marker_ordinal) + "," + format_double(row.min_x) +
               "," + format_double(row.max_x) + "\n";
    }
    return out;
}

std::string correlations_csv(const std::vector<StrokeRecording>& recs,
                             const std::vector<MarkerId>& markers, int resample_n,
                             TrajectoryAlignment alignment, bool quiet,
                             int& warnings) {
    std::string out = "subject_a,class_a,subject_b,class_b,marker,r_x,r_y,n\n";
    for (MarkerId marker : markers) {
        for (std::size_t i = 0; i < recs.size(); ++i) {
            for (std::size_t j = i + 1; j < recs.size(); ++j) {
                try {
                    CorrelationResult r = trajectory_correlation(
                        recs[i], recs[j], marker, resample_n, alignment);
                    out += recs[i].subject_id + "," +
                           std::string(to_string(recs[i].skill)) + "," +
                           recs[j].subject_id + "," +
                           std::string(to_string(recs[j].skill)) + ",m" +
                           std::to_string(marker.ordinal()) + "," +
                           format_double(r.r_x) + "," + format_double(r.r_y) + "," +
                           std::to_string(r.n) + "\n";
                } catch (const DegenerateSeries& e) {
                    ++warnings;
                    if (!quiet) {
                        std::cerr << "notice: skipping pair " << recs[i].subject_id
                                  << "/" << recs[j].subject_id << " marker "
                                  << marker.ordinal() << ": " << e.what() << "\n";
                    }
                }
            }
        }
    }
    return out;
}

std::string speeds_csv(const StrokeRecording& rec) {
    std::string out = "step";
    for (int m = 1; m <= kMarkerCount; ++m) {
        out += ",m" + std::to_string(m) + "_vx,m" + std::to_string(m) + "_vy";
    }
    out += "\n";
    std::array<SpeedSeries, kMarkerCount> vx_series, vy_series;
    for (int m = 1; m <= kMarkerCount; ++m) {
        vx_series[m - 1] = speed_series(rec, MarkerId(m), Axis::X);
        vy_series[m - 1] = speed_series(rec, MarkerId(m), Axis::Y);
    }
    for (std::size_t t = 0; t < vx_series[0].values.size(); ++t) {
        out += std::to_string(t);
        for (int m = 0; m < kMarkerCount; ++m) {
            out += "," + format_double(vx_series[m].values[t]) + "," +
                   format_double(vy_series[m].values[t]);
        }
        out += "\n";
    }
    return out;
}

std::string marker_pairs_csv(const std::vector<StrokeRecording>& recs,
                             const std::vector<MarkerId>& markers, bool quiet,
                             int& warnings) {
    std::string out = "subject,marker_a,marker_b,r_x,r_y,n\n";
    for (const StrokeRecording& rec : recs) {
        for (std::size_t a = 0; a < markers.size(); ++a) {
            for (std::size_t b = a + 1; b < markers.size(); ++b) {
                try {
                    CorrelationResult r =
                        marker_pair_correlation(rec, markers[a], markers[b]);
                    out += rec.subject_id + ",m" +
                           std::to_string(markers[a].ordinal()) + ",m" +
                           std::to_string(markers[b].ordinal()) + "," +
                           format_double(r.r_x) + "," + format_double(r.r_y) + "," +
                           std::to_string(r.n) + "\n";
                } catch (const DegenerateSeries& e) {
                    ++warnings;
                    if (!quiet) {
                        std::cerr << "notice: skipping " << rec.subject_id
                                  << " markers " << markers[a].ordinal() << "/"
                                  << markers[b].ordinal() << ": " << e.what() << "\n";
                    }
                }
            }
        }
    }
    return out;
}

LearnerConfig c45_config(bool no_prune, double cf, int min_leaf) {
    LearnerConfig config;
    config.kind = LearnerConfig::Kind::C45;
    config.c45.prune = !no_prune;
    config.c45.cf = cf;
    config.c45.min_leaf = min_leaf;
    return config;
}

LearnerConfig nbtree_config(int cv_folds, double min_split_gain, int min_node,
                            std::uint64_t seed) {
    LearnerConfig config;
    config.kind = LearnerConfig::Kind::NBTree;
    config.nbtree.cv_folds = cv_folds;
    config.nbtree.min_split_gain = min_split_gain;
    config.nbtree.min_node = min_node;
    config.nbtree.seed = seed;
    return config;
}

EvaluationReport report_from_json(const nlohmann::json& entry) {
    EvaluationReport report;
    report.learner = entry.at("learner").get<std::string>();
    report.seed = entry.at("seed").get<std::uint64_t>();
    report.folds = entry.value("folds", 0);
    report.grouped = entry.value("grouped_by_recording", false);
    const auto& rates = entry.at("recognition_rate");
    auto rate = [&](const char* key) -> std::optional<double> {
        if (!rates.contains(key) || rates.at(key).is_null()) return std::nullopt;
        return rates.at(key).get<double>();
    };
    report.rate_cv = rate("cross_validation");
    report.rate_train = rate("learning_data");
    report.rate_eval = rate("evaluation_data");
    auto confusion = [&](const char* key) -> std::optional<ConfusionMatrix> {
        if (!entry.contains("confusion") || !entry.at("confusion").contains(key)) {
            return std::nullopt;
        }
        const auto& doc = entry.at("confusion").at(key);
        std::vector<SkillClass> classes;
        for (const auto& name : doc.at("classes")) {
            classes.push_back(skill_from_string(name.get<std::string>()));
        }
        ConfusionMatrix cm(classes);
        cm.counts = doc.at("counts").get<std::vector<std::vector<long>>>();
        return cm;
    };
    report.confusion_cv = confusion("cross_validation");
    report.confusion_train = confusion("learning_data");
    report.confusion_eval = confusion("evaluation_data");
    return report;
}

}  // namespace

// ---------------------------------------------------------------------------
// Manifest and store
// ---------------------------------------------------------------------------

std::vector<ManifestEntry> parse_manifest(const fs::path& path) {
    std::string text = read_file(path);
    fs::path base = path.has_parent_path() ? path.parent_path() : fs::path(".");
    std::vector<ManifestEntry> entries;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        ManifestEntry entry;
        std::size_t comma = line.find(',');
        if (comma == std::string::npos) {
            entry.recording = line;
            entry.metadata = fs::path(line).replace_extension(".json");
        } else {
            entry.recording = line.substr(0, comma);
            entry.metadata = line.substr(comma + 1);
        }
        if (entry.recording.is_relative()) entry.recording = base / entry.recording;
        if (entry.metadata.is_relative()) entry.metadata = base / entry.metadata;
        entries.push_back(std::move(entry));
    }
    if (entries.empty()) throw FormatError("manifest has no entries: " + path.string());
    return entries;
}

std::vector<StrokeRecording> load_store(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw Error("store is not a directory: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".csv") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<StrokeRecording> recs;
    for (const fs::path& file : files) {
        fs::path sidecar = fs::path(file).replace_extension(".json");
        if (!fs::exists(sidecar)) {
            throw Error("missing metadata sidecar: " + sidecar.string());
        }
        RecordingMetadata meta = parse_metadata(read_file(sidecar));
        StrokeRecording rec = parse_recording(read_file(file), meta);
        // The canonical store keeps shoulder-normalized data; it is
        // recognizable by its own fixpoint (marker 1, frame 0 at the origin).
        const Point& origin = rec.frames.front().positions.front();
        rec.normalized = origin.x == 0.0 && origin.y == 0.0;
        recs.push_back(std::move(rec));
    }
    if (recs.empty()) throw Error("store has no recordings: " + dir.string());
    return recs;
}

void write_store(const std::vector<StrokeRecording>& recs, const fs::path& dir) {
    fs::create_directories(dir);
    for (const StrokeRecording& rec : recs) {
        RecordingMetadata meta{rec.subject_id, rec.skill, rec.fps, rec.resolution};
        write_file(dir / (rec.subject_id + ".csv"), serialize_recording(rec));
        write_file(dir / (rec.subject_id + ".json"), serialize_metadata(meta));
    }
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

int cmd_ingest(const IngestOptions& opts) {
    auto entries = parse_manifest(opts.manifest);
    ValidationPolicy policy;
    policy.max_jump = opts.max_jump;

    std::vector<StrokeRecording> recs;
    std::map<std::string, int> seen;
    for (const ManifestEntry& entry : entries) {
        RecordingMetadata meta = parse_metadata(read_file(entry.metadata));
        StrokeRecording rec = parse_recording(read_file(entry.recording), meta);
        if (++seen[rec.subject_id] > 1) {
            throw Error("duplicate subject_id in manifest: " + rec.subject_id);
        }
        print_findings(rec, validate_recording(rec, policy), opts.quiet);
        recs.push_back(normalize_origin(rec));
    }
    write_store(recs, opts.out);
    if (!opts.quiet) {
        std::cout << "ingested " << recs.size() << " recordings into "
                  << opts.out.string() << "\n";
    }
    return kExitOk;
}

int cmd_analyze(const AnalyzeOptions& opts) {
    std::vector<StrokeRecording> recs = load_store(opts.store);
    for (StrokeRecording& rec : recs) {
        if (!rec.normalized) rec = normalize_origin(rec);
    }
    auto markers = parse_markers(opts.markers);
    auto alignment = opts.impact_anchored ? TrajectoryAlignment::ImpactAnchored
                                          : TrajectoryAlignment::Duration;

    int warnings = 0;
    std::string extrema_text = extrema_csv(recs, markers);
    std::string correlation_text;
    if (recs.size() >= 2) {
        correlation_text = correlations_csv(recs, markers, opts.resample_n,
                                            alignment, opts.quiet, warnings);
    } else {
        ++warnings;
        if (!opts.quiet) {
            std::cerr << "notice: correlation matrix needs >= 2 recordings, "
                         "section omitted\n";
        }
    }
    std::string pairs_text;
    if (opts.marker_pairs) {
        pairs_text = marker_pairs_csv(recs, markers, opts.quiet, warnings);
    }

    if (opts.out.empty()) {
        std::cout << "# extrema\n" << extrema_text;
        if (!correlation_text.empty()) {
            std::cout << "\n# correlations\n" << correlation_text;
        }
        if (!pairs_text.empty()) {
            std::cout << "\n# marker_pairs\n" << pairs_text;
        }
    } else {
        write_file(opts.out / "extrema.csv", extrema_text);
        if (!correlation_text.empty()) {
            write_file(opts.out / "correlations.csv", correlation_text);
        }
        if (!pairs_text.empty()) {
            write_file(opts.out / "marker_pairs.csv", pairs_text);
        }
        for (const StrokeRecording& rec : recs) {
            write_file(opts.out / "speeds" / (rec.subject_id + ".csv"),
                       speeds_csv(rec));
        }
    }
    return warnings > 0 ? kExitWarnings : kExitOk;
}

namespace {

std::vector<StrokeRecording> normalized_input(const fs::path& manifest,
                                              const fs::path& store) {
    if (!manifest.empty() && !store.empty()) {
        throw Error("give either a manifest or a store, not both");
    }
    std::vector<StrokeRecording> recs;
    if (!manifest.empty()) {
        for (const ManifestEntry& entry : parse_manifest(manifest)) {
            RecordingMetadata meta = parse_metadata(read_file(entry.metadata));
            recs.push_back(normalize_origin(parse_recording(read_file(entry.recording), meta)));
        }
    } else if (!store.empty()) {
        recs = load_store(store);
        for (StrokeRecording& rec : recs) {
            if (!rec.normalized) rec = normalize_origin(rec);
        }
    } else {
        throw Error("an input manifest or store is required");
    }
    return recs;
}

}  // namespace

int cmd_windows(const WindowsOptions& opts) {
    std::vector<StrokeRecording> recs = normalized_input(opts.manifest, opts.store);
    WindowSpec spec{opts.window_len, opts.overlap};
    Dataset ds = build_dataset(recs, spec, parse_classes(opts.classes), opts.differenced);
    std::string text = export_dataset(ds);
    if (opts.out.empty()) {
        std::cout << text;
    } else {
        write_file(opts.out, text);
    }
    return kExitOk;
}

int cmd_train(const TrainOptions& opts) {
    Dataset ds = import_dataset(read_file(opts.dataset));
    LearnerConfig config =
        opts.learner == "nbtree"
            ? nbtree_config(opts.cv_folds, opts.min_split_gain, opts.min_node, opts.seed)
            : c45_config(opts.no_prune, opts.cf, opts.min_leaf);
    Model model = config.train(ds);
    write_file(opts.out, serialize_model(model));
    return kExitOk;
}

int cmd_evaluate(const EvaluateOptions& opts) {
    LearnerConfig config =
        opts.learner == "nbtree"
            ? nbtree_config(opts.cv_folds, opts.min_split_gain, opts.min_node, opts.seed)
            : c45_config(opts.no_prune, opts.cf, opts.min_leaf);

    EvaluationReport report;
    if (!opts.holdout.empty()) {
        if (opts.holdout.size() != 2) {
            throw Error("--holdout needs exactly two dataset files (train, eval)");
        }
        Dataset train = import_dataset(read_file(opts.holdout[0]));
        Dataset eval = import_dataset(read_file(opts.holdout[1]));
        report = holdout_evaluate(train, eval, config);
    } else if (!opts.store.empty()) {
        std::vector<StrokeRecording> recs = normalized_input({}, opts.store);
        WindowSpec spec{opts.window_len, opts.overlap};
        Dataset ds = build_dataset(recs, spec, parse_classes(opts.classes));
        report = kfold_cross_validate(ds, opts.folds, config, opts.seed,
                                      opts.group_by_recording);
    } else if (!opts.dataset.empty()) {
        if (opts.group_by_recording) {
            throw Error("--group-by-recording requires --store input; a dataset "
                        "CSV carries no recording provenance");
        }
        Dataset ds = import_dataset(read_file(opts.dataset));
        report = kfold_cross_validate(ds, opts.folds, config, opts.seed, false);
    } else {
        throw Error("an input dataset, store, or holdout pair is required");
    }

    std::vector<EvaluationReport> reports{std::move(report)};
    if (opts.out.empty()) {
        std::cout << report_to_text(reports);
    } else {
        write_file(opts.out / "report.json", report_to_json(reports, opts.seed));
        write_file(opts.out / "report.txt", report_to_text(reports));
    }
    return kExitOk;
}

int cmd_synth(const SynthOptions& opts) {
    CohortSpec spec;
    if (opts.preset == "paper-cohort") {
        spec = paper_cohort_spec();
    } else if (opts.preset == "expert") {
        spec.groups.emplace_back(expert_profile(), opts.count);
    } else if (opts.preset == "intermediate") {
        spec.groups.emplace_back(intermediate_profile(), opts.count);
    } else if (opts.preset == "novice") {
        spec.groups.emplace_back(novice_profile(), opts.count);
    } else {
        throw Error("unknown preset '" + opts.preset + "'");
    }
    std::vector<StrokeRecording> recs = generate_cohort(spec, opts.seed);
    write_store(recs, opts.out);
    return kExitOk;
}

int cmd_report(const ReportOptions& opts) {
    std::vector<StrokeRecording> recs = load_store(opts.store);
    for (StrokeRecording& rec : recs) {
        if (!rec.normalized) rec = normalize_origin(rec);
    }
    auto markers = parse_markers(opts.markers);

    int warnings = 0;
    std::string extrema_text = extrema_csv(recs, markers);
    std::string correlation_text;
    if (recs.size() >= 2) {
        correlation_text = correlations_csv(recs, markers, opts.resample_n,
                                            TrajectoryAlignment::Duration,
                                            opts.quiet, warnings);
    } else {
        ++warnings;
        if (!opts.quiet) {
            std::cerr << "notice: correlation matrix needs >= 2 recordings, "
                         "section omitted\n";
        }
    }

    std::vector<EvaluationReport> reports;
    std::uint64_t seed = 0;
    for (const fs::path& file : opts.eval_json) {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(read_file(file));
        } catch (const nlohmann::json::exception& e) {
            throw FormatError(file.string() + ": " + e.what());
        }
        if (doc.value("format", "") != "strokeminer-report v1") {
            throw FormatError(file.string() + ": not a strokeminer report");
        }
        if (reports.empty()) seed = doc.value("seed", 0ULL);
        for (const auto& entry : doc.at("reports")) {
            reports.push_back(report_from_json(entry));
        }
    }

    if (opts.out.empty()) {
        std::cout << "# extrema\n" << extrema_text;
        if (!correlation_text.empty()) {
            std::cout << "\n# correlations\n" << correlation_text;
        }
        if (!reports.empty()) {
            std::cout << "\n" << report_to_text(reports);
        }
    } else {
        write_file(opts.out / "extrema.csv", extrema_text);
        if (!correlation_text.empty()) {
            write_file(opts.out / "correlations.csv", correlation_text);
        }
        for (const StrokeRecording& rec : recs) {
            write_file(opts.out / "speeds" / (rec.subject_id + ".csv"),
                       speeds_csv(rec));
        }
        if (!reports.empty()) {
            write_file(opts.out / "report.json", report_to_json(reports, seed));
            write_file(opts.out / "report.txt", report_to_text(reports));
        }
    }
    return warnings > 0 ? kExitWarnings : kExitOk;
}

int cmd_pipeline(const PipelineOptions& opts) {
    if (opts.out.empty()) throw Error("pipeline: --out directory is required");

    // Stage 1: obtain recordings.
    std::vector<StrokeRecording> raw = stage("ingest", [&] {
        std::vector<StrokeRecording> recs;
        if (!opts.synth_preset.empty()) {
            if (opts.synth_preset == "paper-cohort") {
                recs = generate_cohort(paper_cohort_spec(), opts.seed);
            } else if (opts.synth_preset == "expert") {
                CohortSpec spec;
                spec.groups.emplace_back(expert_profile(), 5);
                recs = generate_cohort(spec, opts.seed);
            } else if (opts.synth_preset == "intermediate") {
                CohortSpec spec;
                spec.groups.emplace_back(intermediate_profile(), 5);
                recs = generate_cohort(spec, opts.seed);
            } else if (opts.synth_preset == "novice") {
                CohortSpec spec;
                spec.groups.emplace_back(novice_profile(), 5);
                recs = generate_cohort(spec, opts.seed);
            } else {
                throw Error("unknown synth preset '" + opts.synth_preset + "'");
            }
        } else if (!opts.manifest.empty()) {
            for (const ManifestEntry& entry : parse_manifest(opts.manifest)) {
                RecordingMetadata meta = parse_metadata(read_file(entry.metadata));
                recs.push_back(parse_recording(read_file(entry.recording), meta));
            }
        } else {
            throw Error("either --synth or --manifest is required");
        }
        for (const StrokeRecording& rec : recs) {
            print_findings(rec, validate_recording(rec), opts.quiet);
        }
        return recs;
    });

    std::vector<StrokeRecording> recs = stage("normalize", [&] {
        std::vector<StrokeRecording> out;
        out.reserve(raw.size());
        for (const StrokeRecording& rec : raw) out.push_back(normalize_origin(rec));
        return out;
    });
    write_store(recs, opts.out / "recordings");

    // Stage 2: analytics bundle.
    int warnings = 0;
    stage("analyze", [&] {
        auto markers = parse_markers({1, 4, 9});
        write_file(opts.out / "analytics" / "extrema.csv", extrema_csv(recs, markers));
        if (recs.size() >= 2) {
            write_file(opts.out / "analytics" / "correlations.csv",
                       correlations_csv(recs, markers, 100,
                                        TrajectoryAlignment::Duration, opts.quiet,
                                        warnings));
        } else {
            ++warnings;
        }
        for (const StrokeRecording& rec : recs) {
            write_file(opts.out / "analytics" / "speeds" / (rec.subject_id + ".csv"),
                       speeds_csv(rec));
        }
        return 0;
    });

    // Stage 3: feature windows.
    WindowSpec spec{opts.window_len, opts.overlap};
    std::vector<SkillClass> classes = parse_classes(opts.classes);
    Dataset ds = stage("windows", [&] { return build_dataset(recs, spec, classes); });
    write_file(opts.out / "dataset.csv", export_dataset(ds));

    std::vector<LearnerConfig> learners;
    if (opts.learner == "c45" || opts.learner == "both") {
        learners.push_back(c45_config(opts.no_prune, opts.cf, opts.min_leaf));
    }
    if (opts.learner == "nbtree" || opts.learner == "both") {
        learners.push_back(nbtree_config(opts.cv_folds, opts.min_split_gain,
                                         opts.min_node, opts.seed));
    }
    if (learners.empty()) {
        throw Error("unknown learner '" + opts.learner + "' (c45|nbtree|both)");
    }

    // Stage 4: optional correlation-selected hold-out split.
    Dataset cv_ds = ds;
    std::optional<Dataset> holdout_train, holdout_eval;
    if (opts.holdout_class_experts > 0) {
        stage("holdout-split", [&] {
            std::vector<std::string> train_ids;
            std::vector<StrokeRecording> train_recs, eval_recs;
            for (SkillClass cls : classes) {
                auto [train, eval] = select_training_recordings(
                    recs, cls, opts.holdout_class_experts, MarkerId(9));
                train_ids.insert(train_ids.end(), train.begin(), train.end());
                (void)eval;
            }
            for (const StrokeRecording& rec : recs) {
                if (std::find(classes.begin(), classes.end(), rec.skill) ==
                    classes.end()) {
                    continue;
                }
                bool in_train = std::find(train_ids.begin(), train_ids.end(),
                                          rec.subject_id) != train_ids.end();
                (in_train ? train_recs : eval_recs).push_back(rec);
            }
            holdout_train = build_dataset(train_recs, spec, classes);
            holdout_eval = build_dataset(eval_recs, spec, classes);
            cv_ds = *holdout_train;
            if (!opts.quiet) {
                std::cout << "holdout: training on";
                for (const std::string& id : train_ids) std::cout << " " << id;
                std::cout << "\n";
            }
            return 0;
        });
    }

    // Stage 5: train the selected learners on the CV dataset and save.
    stage("train", [&] {
        for (const LearnerConfig& config : learners) {
            write_file(opts.out / ("model_" + config.name() + ".model"),
                       serialize_model(config.train(cv_ds)));
        }
        return 0;
    });

    // Stage 6: evaluation per learner: k-fold CV, plus hold-out when split.
    std::vector<EvaluationReport> reports = stage("evaluate", [&] {
        std::vector<EvaluationReport> out;
        for (const LearnerConfig& config : learners) {
            EvaluationReport report = kfold_cross_validate(
                cv_ds, opts.folds, config, opts.seed, opts.group_by_recording);
            if (holdout_train) {
                EvaluationReport holdout =
                    holdout_evaluate(*holdout_train, *holdout_eval, config);
                report.rate_eval = holdout.rate_eval;
                report.confusion_eval = std::move(holdout.confusion_eval);
            }
            out.push_back(std::move(report));
        }
        return out;
    });

    write_file(opts.out / "report.json", report_to_json(reports, opts.seed));
    write_file(opts.out / "report.txt", report_to_text(reports));

    if (!opts.quiet) {
        std::cout << "pipeline: " << recs.size() << " recordings, " << ds.size()
                  << " windows, seed " << opts.seed << "\n";
        for (const EvaluationReport& report : reports) {
            std::cout << report.learner << ": cv "
                      << (report.rate_cv ? *report.rate_cv : 0.0) << "%, train "
                      << (report.rate_train ? *report.rate_train : 0.0) << "%";
            if (report.rate_eval) std::cout << ", eval " << *report.rate_eval << "%";
            std::cout << "\n";
        }
    }
    return warnings > 0 ? kExitWarnings : kExitOk;
}

}  // namespace strokeminer::cli
