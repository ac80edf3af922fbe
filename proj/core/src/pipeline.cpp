#include <texkit/pipeline.hpp>

#include <texkit/error.hpp>
#include <texkit/image_io.hpp>
#include <texkit/parallel.hpp>
#include <texkit/rng.hpp>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <utility>

namespace texkit {

namespace {

using nlohmann::json;

std::string raw_message(const Error& e) {
    std::string_view what = e.what();
    const std::string_view prefix = errc_name(e.code());
    if (what.substr(0, prefix.size()) == prefix &&
        what.substr(prefix.size(), 2) == ": ") {
        return std::string(what.substr(prefix.size() + 2));
    }
    return std::string(what);
}

std::optional<FeatureTable> try_cache(const std::string& cache_path,
                                      const PipelineConfig& cfg) {
    if (cache_path.empty() || !std::filesystem::exists(cache_path)) return std::nullopt;
    FeatureTable cached;
    try {
        cached = read_features_csv(cache_path);
    } catch (const Error&) {
        return std::nullopt; // unreadable cache is rebuilt, not fatal
    }
    const FeatureSchema schema = feature_schema(cfg);
    if (cached.config_fingerprint != config_fingerprint(cfg) ||
        cached.schema.fingerprint != schema.fingerprint ||
        cached.schema.names != schema.names) {
        return std::nullopt;
    }
    return cached;
}

json confusion_json(const ConfusionMatrix& cm) {
    json rows = json::array();
    for (std::size_t t = 0; t < cm.class_count; ++t) {
        json row = json::array();
        for (std::size_t p = 0; p < cm.col_count(); ++p) row.push_back(cm.at(t, p));
        rows.push_back(std::move(row));
    }
    return json{{"class_count", cm.class_count},
                {"counts", std::move(rows)},
                {"has_unknown", cm.has_unknown}};
}

json metrics_json(const MetricsReport& r) {
    json per_class = json::array();
    for (std::size_t c = 0; c < r.precision.size(); ++c) {
        per_class.push_back({{"f1", r.f1[c]},
                             {"precision", r.precision[c]},
                             {"recall", r.recall[c]}});
    }
    return json{
        {"accuracy", r.accuracy},
        {"macro", {{"f1", r.macro_f1}, {"precision", r.macro_precision}, {"recall", r.macro_recall}}},
        {"micro", {{"f1", r.micro_f1}, {"precision", r.micro_precision}, {"recall", r.micro_recall}}},
        {"per_class", std::move(per_class)},
    };
}

} // namespace

FeatureTable extract_features(const DatasetManifest& manifest, const PipelineConfig& cfg,
                              const ExtractOptions& opts, SkipReport* skips) {
    if (std::optional<FeatureTable> cached = try_cache(opts.cache_path, cfg)) {
        return *std::move(cached);
    }

    struct Slot {
        std::vector<double> row;
        std::string error;
        Errc code = Errc::IoError;
        bool failed = false;
    };
    std::vector<Slot> slots(manifest.size());

    parallel_for(manifest.size(), opts.threads, [&](std::size_t i) {
        try {
            const GrayImage img = load_image(manifest.resolved_path(i));
            try {
                slots[i].row = image_features(img, cfg);
            } catch (const Error& e) {
                // loader errors already name the file; add it for feature errors
                raise(e.code(), raw_message(e) + " [" + manifest.resolved_path(i) + "]");
            }
        } catch (const Error& e) {
            slots[i].failed = true;
            slots[i].error = raw_message(e);
            slots[i].code = e.code();
        }
    });

    FeatureTable table;
    table.config_fingerprint = config_fingerprint(cfg);
    table.schema = feature_schema(cfg);
    for (std::size_t i = 0; i < manifest.size(); ++i) {
        Slot& slot = slots[i];
        if (slot.failed) {
            if (!opts.skip_bad) {
                raise(slot.code, slot.error); // first failure in manifest order
            }
            if (skips != nullptr) {
                skips->emplace_back(manifest.entries[i].path,
                                    std::string(errc_name(slot.code)) + ": " + slot.error);
            }
            continue;
        }
        table.paths.push_back(manifest.entries[i].path);
        table.labels.push_back(manifest.entries[i].label);
        table.x.push_back(std::move(slot.row));
    }

    if (!opts.cache_path.empty()) {
        write_features_csv(table, opts.cache_path);
    }
    return table;
}

ExperimentResult run_experiment(const FeatureTable& features, const PipelineConfig& cfg,
                                int threads) {
    const FeatureSchema schema = feature_schema(cfg);
    if (features.schema.fingerprint != schema.fingerprint) {
        raise(Errc::SchemaMismatch, "feature table was extracted under fingerprint " +
                                        features.schema.fingerprint +
                                        " but the config produces " + schema.fingerprint);
    }
    LabeledView view = to_labeled(features);

    ExperimentResult result;
    result.seed = cfg.seed;
    result.config_json = config_to_json(cfg);
    result.class_names = view.class_names;

    const SeedTree seeds(cfg.seed);
    const SplitIndices split =
        stratified_split(view.data.y, cfg.test_fraction, seeds.child("split"));
    result.n_train = split.train.size();
    result.n_test = split.test.size();

    LabeledDataset train;
    train.schema_id = view.data.schema_id;
    for (std::size_t i : split.train) {
        train.x.push_back(view.data.x[i]);
        train.y.push_back(view.data.y[i]);
    }
    std::vector<int> y_test;
    std::vector<std::vector<double>> x_test;
    for (std::size_t i : split.test) {
        x_test.push_back(view.data.x[i]);
        y_test.push_back(view.data.y[i]);
    }

    result.models.reserve(kClassifierCount);
    result.models.emplace_back(fit_rf(train, cfg.forest, seeds.child("rf"), threads));
    result.models.emplace_back(fit_svm(train, cfg.svm, seeds.child("svm")));
    result.models.emplace_back(fit_knn(train, cfg.knn));
    result.models.emplace_back(fit_nb(train));
    result.models.emplace_back(fit_tree(train, cfg.tree));
    for (TrainedModel& model : result.models) {
        set_threshold(model,
                      cfg.tau[static_cast<std::size_t>(algorithm_kind(model))]);
    }

    PredictionMatrix pm;
    pm.model_order = cfg.model_order;
    pm.rows.resize(x_test.size());
    std::vector<std::vector<Prediction>> base(kClassifierCount);
    for (const TrainedModel& model : result.models) {
        const auto kind = static_cast<std::size_t>(algorithm_kind(model));
        base[kind].resize(x_test.size());
        for (std::size_t i = 0; i < x_test.size(); ++i) {
            base[kind][i] = predict(model, x_test[i]);
        }
    }
    for (std::size_t i = 0; i < x_test.size(); ++i) {
        pm.rows[i].reserve(pm.model_order.size());
        for (ClassifierKind kind : pm.model_order) {
            pm.rows[i].push_back(base[static_cast<std::size_t>(kind)][i]);
        }
    }

    const std::size_t k = view.class_names.size();
    for (ClassifierKind kind : cfg.model_order) {
        ClassifierRun run;
        run.id = std::string(classifier_id(kind));
        run.cm = confusion(y_test, base[static_cast<std::size_t>(kind)], k);
        run.report = metrics(run.cm);
        result.runs.push_back(std::move(run));
    }
    const std::vector<Prediction> ve = voting_ensemble(pm);
    const std::vector<Prediction> cc = combined_classifier(pm);
    for (const auto& [id, preds] :
         {std::pair<const char*, const std::vector<Prediction>&>{"ve", ve},
          std::pair<const char*, const std::vector<Prediction>&>{"cc", cc}}) {
        ClassifierRun run;
        run.id = id;
        run.cm = confusion(y_test, preds, k);
        run.report = metrics(run.cm);
        result.runs.push_back(std::move(run));
    }
    return result;
}

std::string result_to_json(const ExperimentResult& result) {
    json runs = json::array();
    for (const ClassifierRun& run : result.runs) {
        runs.push_back({{"confusion", confusion_json(run.cm)},
                        {"id", run.id},
                        {"metrics", metrics_json(run.report)}});
    }
    const json doc{
        {"classes", result.class_names},
        {"config", json::parse(result.config_json)},
        {"n_test", result.n_test},
        {"n_train", result.n_train},
        {"results", std::move(runs)},
        {"seed", result.seed},
        {"version", 1},
    };
    return doc.dump(2) + "\n";
}

void write_result(const ExperimentResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << result_to_json(result)) || !out.flush()) {
        raise(Errc::IoError, "cannot write result file '" + path + "'");
    }
}

} // namespace texkit
