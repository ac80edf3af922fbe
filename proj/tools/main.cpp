// texkit command line tool: feature extraction, experiment runs, synthetic
// dataset generation, and config scaffolding.
//
// Exit codes: 0 success, 1 usage error, 2 data or runtime error.

#include <texkit/error.hpp>
#include <texkit/model_io.hpp>
#include <texkit/pipeline.hpp>
#include <texkit/svg_report.hpp>
#include <texkit/synth.hpp>

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct UsageError {
    std::string message;
};

// ---------------------------------------------------------------------------
// Flag parsing helpers
// ---------------------------------------------------------------------------

void apply_tau_overrides(texkit::PipelineConfig& cfg,
                         const std::vector<std::string>& specs) {
    for (const std::string& spec : specs) {
        const std::size_t eq = spec.find('=');
        if (eq == std::string::npos) {
            throw UsageError{"--tau expects CLASSIFIER=VALUE, got '" + spec + "'"};
        }
        texkit::ClassifierKind kind;
        try {
            kind = texkit::classifier_from_id(spec.substr(0, eq));
        } catch (const texkit::Error&) {
            throw UsageError{"--tau: unknown classifier '" + spec.substr(0, eq) +
                             "' (use rf, svm, knn, nb, dt)"};
        }
        const std::string value_text = spec.substr(eq + 1);
        double value = 0.0;
        const char* end = value_text.data() + value_text.size();
        const auto [ptr, ec] = std::from_chars(value_text.data(), end, value);
        if (ec != std::errc{} || ptr != end || !(value >= 0.0) || !(value <= 1.0)) {
            throw UsageError{"--tau: '" + value_text + "' is not a number in [0, 1]"};
        }
        cfg.tau[static_cast<std::size_t>(kind)] = value;
    }
}

std::vector<std::string> parse_only(const std::string& only) {
    std::vector<std::string> ids;
    if (only.empty()) return ids;
    std::size_t start = 0;
    while (start <= only.size()) {
        const std::size_t comma = only.find(',', start);
        const std::string id = only.substr(
            start, comma == std::string::npos ? std::string::npos : comma - start);
        static const std::vector<std::string> known = {"rf", "svm", "knn", "nb",
                                                       "dt", "ve",  "cc"};
        if (std::find(known.begin(), known.end(), id) == known.end()) {
            throw UsageError{"--only: unknown classifier '" + id +
                             "' (use rf, svm, knn, nb, dt, ve, cc)"};
        }
        ids.push_back(id);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return ids;
}

texkit::PipelineConfig resolve_config(const std::string& config_path) {
    if (config_path.empty()) return texkit::PipelineConfig{};
    return texkit::load_config(config_path);
}

// ---------------------------------------------------------------------------
// Summary table
// ---------------------------------------------------------------------------

struct SummaryRow {
    std::string id;
    double accuracy;
    double precision;
    double recall;
    double f1;
};

std::vector<SummaryRow> summary_rows(const texkit::ExperimentResult& result,
                                     const std::vector<std::string>& only, bool micro) {
    std::vector<SummaryRow> rows;
    for (const texkit::ClassifierRun& run : result.runs) {
        if (!only.empty() &&
            std::find(only.begin(), only.end(), run.id) == only.end()) {
            continue;
        }
        const texkit::MetricsReport& m = run.report;
        rows.push_back(SummaryRow{run.id, m.accuracy,
                                  micro ? m.micro_precision : m.macro_precision,
                                  micro ? m.micro_recall : m.macro_recall,
                                  micro ? m.micro_f1 : m.macro_f1});
    }
    return rows;
}

void print_summary(const std::vector<SummaryRow>& rows, const std::string& format) {
    if (format == "csv") {
        std::printf("classifier,accuracy,precision,recall,f1\n");
        for (const SummaryRow& r : rows) {
            std::printf("%s,%.6f,%.6f,%.6f,%.6f\n", r.id.c_str(), r.accuracy, r.precision,
                        r.recall, r.f1);
        }
        return;
    }
    std::printf("%-12s%10s%11s%9s%9s\n", "classifier", "accuracy", "precision", "recall",
                "f1");
    for (const SummaryRow& r : rows) {
        std::printf("%-12s%10.4f%11.4f%9.4f%9.4f\n", r.id.c_str(), r.accuracy, r.precision,
                    r.recall, r.f1);
    }
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int cmd_extract(const std::string& manifest_path, const std::string& config_path,
                const std::string& out_path, int threads, bool skip_bad) {
    const texkit::DatasetManifest manifest = texkit::load_manifest(manifest_path);
    const texkit::PipelineConfig cfg = resolve_config(config_path);

    texkit::ExtractOptions opts;
    opts.threads = threads;
    opts.skip_bad = skip_bad;
    texkit::SkipReport skips;
    const texkit::FeatureTable table =
        texkit::extract_features(manifest, cfg, opts, &skips);
    texkit::write_features_csv(table, out_path);

    for (const auto& [path, reason] : skips) {
        std::cerr << "texkit: skipped " << path << ": " << reason << '\n';
    }
    std::printf("wrote %zu rows x %zu features to %s", table.size(),
                table.schema.dim(), out_path.c_str());
    if (!skips.empty()) std::printf(" (%zu skipped)", skips.size());
    std::printf("\n");
    return 0;
}

int cmd_run(const std::string& manifest_path, const std::string& config_path,
            const std::string& out_dir, std::optional<std::uint64_t> seed, int threads,
            const std::vector<std::string>& tau_specs, const std::string& only_spec,
            const std::string& format, bool micro) {
    const std::vector<std::string> only = parse_only(only_spec);
    texkit::PipelineConfig cfg = resolve_config(config_path);
    if (seed.has_value()) cfg.seed = *seed;
    apply_tau_overrides(cfg, tau_specs);
    texkit::validate_config(cfg);

    const texkit::DatasetManifest manifest = texkit::load_manifest(manifest_path);
    std::filesystem::create_directories(std::filesystem::path(out_dir) / "models");

    texkit::ExtractOptions opts;
    opts.threads = threads;
    opts.cache_path = (std::filesystem::path(out_dir) / "features.csv").string();
    const texkit::FeatureTable table = texkit::extract_features(manifest, cfg, opts);

    const texkit::ExperimentResult result = texkit::run_experiment(table, cfg, threads);

    const std::filesystem::path out(out_dir);
    texkit::write_result(result, (out / "result.json").string());
    for (const texkit::TrainedModel& model : result.models) {
        const std::string id(texkit::algorithm_id(model));
        texkit::save_model(model, (out / "models" / (id + ".json")).string());
    }
    for (const texkit::ClassifierRun& run : result.runs) {
        texkit::render_confusion_svg(run.cm, result.class_names,
                                     "Confusion matrix (" + run.id + ")",
                                     (out / ("confusion_" + run.id + ".svg")).string());
    }
    texkit::render_class_bars_svg(result.runs, result.class_names,
                                  (out / "class_recall.svg").string());

    print_summary(summary_rows(result, only, micro), format);
    return 0;
}

int cmd_synth(const std::string& out_dir, std::uint64_t seed, int per_class, int side) {
    const std::string manifest = texkit::write_synthetic_dataset(out_dir, seed, per_class, side);
    texkit::PipelineConfig cfg = texkit::benchmark_config();
    cfg.seed = seed;
    const std::string config_path =
        (std::filesystem::path(out_dir) / "config.json").string();
    std::ofstream config_file(config_path, std::ios::binary | std::ios::trunc);
    if (!config_file || !(config_file << texkit::config_to_json(cfg))) {
        texkit::raise(texkit::Errc::IoError, "cannot write '" + config_path + "'");
    }
    std::printf("wrote %s and %s\n", manifest.c_str(), config_path.c_str());
    return 0;
}

int cmd_config(const std::string& preset, const std::string& out_path) {
    texkit::PipelineConfig cfg;
    if (preset == "benchmark") cfg = texkit::benchmark_config();
    const std::string text = texkit::config_to_json(cfg);
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text)) {
        texkit::raise(texkit::Errc::IoError, "cannot write '" + out_path + "'");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Texture-based image classification toolkit"};
    app.require_subcommand(1);

    // extract
    auto* extract = app.add_subcommand("extract", "Extract features into a CSV table");
    std::string ex_manifest, ex_config, ex_out;
    int ex_threads = 1;
    bool ex_skip_bad = false;
    extract->add_option("--manifest", ex_manifest, "Dataset manifest CSV")->required();
    extract->add_option("--config", ex_config, "Pipeline config JSON (defaults apply)");
    extract->add_option("--out", ex_out, "Output feature CSV path")->required();
    extract->add_option("--threads", ex_threads, "Worker threads (does not change output)")
        ->check(CLI::PositiveNumber);
    extract->add_flag("--skip-bad", ex_skip_bad, "Skip unreadable images, report them");

    // run
    auto* run = app.add_subcommand("run", "Train all classifiers and evaluate");
    std::string run_manifest, run_config, run_out, run_only, run_format = "text";
    std::optional<std::uint64_t> run_seed;
    int run_threads = 1;
    bool run_micro = false;
    std::vector<std::string> run_tau;
    run->add_option("--manifest", run_manifest, "Dataset manifest CSV")->required();
    run->add_option("--config", run_config, "Pipeline config JSON (defaults apply)");
    run->add_option("--seed", run_seed, "Master seed (overrides config)");
    run->add_option("--out", run_out, "Output directory")->required();
    run->add_option("--threads", run_threads, "Worker threads (does not change output)")
        ->check(CLI::PositiveNumber);
    run->add_option("--tau", run_tau, "Abstention threshold, e.g. rf=0.8 (repeatable)");
    run->add_option("--only", run_only, "Comma list of summary rows (rf,svm,knn,nb,dt,ve,cc)");
    run->add_option("--format", run_format, "Summary format")
        ->check(CLI::IsMember({"text", "csv"}));
    run->add_flag("--micro", run_micro, "Report micro-averaged precision/recall/F1");

    // synth
    auto* synth = app.add_subcommand("synth", "Generate the synthetic texture benchmark");
    std::string sy_out;
    std::uint64_t sy_seed = 42;
    int sy_per_class = 100;
    int sy_side = 64;
    synth->add_option("--out", sy_out, "Output directory")->required();
    synth->add_option("--seed", sy_seed, "Master seed");
    synth->add_option("--per-class", sy_per_class, "Images per class")
        ->check(CLI::PositiveNumber);
    synth->add_option("--side", sy_side, "Image side length")->check(CLI::Range(4, 4096));

    // config
    auto* config = app.add_subcommand("config", "Print or write a config file");
    std::string cf_preset = "default", cf_out;
    config->add_option("--preset", cf_preset, "Config preset")
        ->check(CLI::IsMember({"default", "benchmark"}));
    config->add_option("--out", cf_out, "Write here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (extract->parsed()) {
            return cmd_extract(ex_manifest, ex_config, ex_out, ex_threads, ex_skip_bad);
        }
        if (run->parsed()) {
            return cmd_run(run_manifest, run_config, run_out, run_seed, run_threads,
                           run_tau, run_only, run_format, run_micro);
        }
        if (synth->parsed()) return cmd_synth(sy_out, sy_seed, sy_per_class, sy_side);
        if (config->parsed()) return cmd_config(cf_preset, cf_out);
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "texkit: " << e.message << '\n';
        return kExitUsage;
    } catch (const texkit::Error& e) {
        std::cerr << "texkit: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "texkit: " << e.what() << '\n';
        return kExitData;
    }
}
