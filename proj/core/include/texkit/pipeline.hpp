#pragma once

#include <texkit/classifiers.hpp>
#include <texkit/dataset.hpp>
#include <texkit/ensemble.hpp>
#include <texkit/evaluation.hpp>
#include <texkit/glcm.hpp>
#include <texkit/histogram.hpp>
#include <texkit/image.hpp>

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace texkit {

// ---------------------------------------------------------------------------
// Dataset manifest
// ---------------------------------------------------------------------------

struct ManifestEntry {
    std::string path; ///< as written in the manifest, relative to `root`
    std::string label;
};

/// Image list with labels mapped to dense class ids (sorted label order).
struct DatasetManifest {
    std::string root; ///< directory of the manifest file
    std::vector<ManifestEntry> entries;
    std::vector<std::string> class_names; ///< index = dense class id
    std::vector<int> labels;              ///< dense id per entry

    std::size_t size() const { return entries.size(); }
    std::string resolved_path(std::size_t i) const;
};

/// Reads a `path,label` CSV. Paths are taken relative to the manifest's
/// directory, must be unique, and must cover at least two distinct labels.
DatasetManifest load_manifest(const std::string& path);

// ---------------------------------------------------------------------------
// Pipeline configuration
// ---------------------------------------------------------------------------

struct PipelineConfig {
    int resize_w = 64;
    int resize_h = 64;
    QuantizeMode quantize = QuantizeMode::Uniform;
    GlcmConfig glcm;
    int hist_bins = 16;

    KnnParams knn;
    SvmParams svm;
    TreeParams tree;
    ForestParams forest;

    /// Abstention threshold per classifier, indexed by ClassifierKind.
    std::array<double, kClassifierCount> tau{};
    std::vector<ClassifierKind> model_order = PredictionMatrix::default_model_order();
    double test_fraction = 0.2;
    std::uint64_t seed = 42;

    bool operator==(const PipelineConfig&) const = default;
};

/// Canonical JSON serialization (sorted keys); the inverse of parse_config.
std::string config_to_json(const PipelineConfig& cfg);
PipelineConfig parse_config(const std::string& json_text);
PipelineConfig load_config(const std::string& path);

/// Raises unless every field is usable (ranges, nonempty angle list, unique
/// model_order, ...). parse_config validates implicitly; callers mutating a
/// config directly can re-check here.
void validate_config(const PipelineConfig& cfg);

/// 16-hex-digit digest of the full canonical serialization. Any field change
/// changes the fingerprint; it keys the feature cache.
std::string config_fingerprint(const PipelineConfig& cfg);

/// Ordered feature names with a digest of the extraction settings only
/// (resize, quantization, GLCM, histogram). Models bind to this fingerprint.
FeatureSchema feature_schema(const PipelineConfig& cfg);

/// Feature vector of one already-loaded image: GLCM block then histogram
/// block, as described by feature_schema(cfg).
std::vector<double> image_features(const GrayImage& img, const PipelineConfig& cfg);

// ---------------------------------------------------------------------------
// Feature extraction and caching
// ---------------------------------------------------------------------------

/// Extracted feature rows, aligned with the manifest order.
struct FeatureTable {
    std::string config_fingerprint;
    FeatureSchema schema;
    std::vector<std::string> paths;  ///< as written in the manifest
    std::vector<std::string> labels; ///< original label strings
    std::vector<std::vector<double>> x;

    std::size_t size() const { return x.size(); }
};

/// Dense-id view of a feature table, class ids in sorted label order.
struct LabeledView {
    LabeledDataset data;
    std::vector<std::string> class_names;
};
LabeledView to_labeled(const FeatureTable& table);

void write_features_csv(const FeatureTable& table, const std::string& path);
FeatureTable read_features_csv(const std::string& path);

struct ExtractOptions {
    int threads = 1;
    bool skip_bad = false;   ///< skip unreadable images instead of failing fast
    std::string cache_path;  ///< reused when fingerprint matches, else rewritten
};

/// (manifest path, reason) per skipped image, in manifest order.
using SkipReport = std::vector<std::pair<std::string, std::string>>;

FeatureTable extract_features(const DatasetManifest& manifest, const PipelineConfig& cfg,
                              const ExtractOptions& opts = {},
                              SkipReport* skips = nullptr);

// ---------------------------------------------------------------------------
// Experiment
// ---------------------------------------------------------------------------

/// One evaluated classifier: the five base ids plus "ve" and "cc".
struct ClassifierRun {
    std::string id;
    ConfusionMatrix cm;
    MetricsReport report;
};

struct ExperimentResult {
    std::uint64_t seed = 0;
    std::string config_json; ///< canonical echo of the config
    std::vector<std::string> class_names;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    std::vector<ClassifierRun> runs; ///< model_order, then ve, then cc
    std::vector<TrainedModel> models; ///< fixed order rf, svm, knn, nb, dt
};

/// Split, train the five classifiers, evaluate them and both combiners.
/// `threads` only parallelizes forest training; outputs do not depend on it.
ExperimentResult run_experiment(const FeatureTable& features, const PipelineConfig& cfg,
                                int threads = 1);

/// Versioned JSON document with config echo, seed, class names, split sizes,
/// confusion matrices, and metric reports. Byte-stable for fixed inputs.
std::string result_to_json(const ExperimentResult& result);
void write_result(const ExperimentResult& result, const std::string& path);

} // namespace texkit
