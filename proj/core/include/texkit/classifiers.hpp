#pragma once

#include <texkit/dataset.hpp>
#include <texkit/prediction.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace texkit {

// ---------------------------------------------------------------------------
// Shared pieces
// ---------------------------------------------------------------------------

/// Per-dimension z-score normalizer fitted on training data. Dimensions whose
/// standard deviation is below 1e-12 are centered but not scaled. A
/// passthrough standardizer (empty vectors) leaves inputs untouched; it is
/// used by the algorithms that are not scale-sensitive.
struct Standardizer {
    std::vector<double> mean;
    std::vector<double> stddev;

    static Standardizer fit(const std::vector<std::vector<double>>& rows);
    static Standardizer passthrough();

    bool is_passthrough() const { return mean.empty(); }
    std::vector<double> transform(std::span<const double> x) const;
};

/// Sorted distinct class ids in a training set. Negative labels are rejected
/// (kUnknownLabel is reserved).
std::vector<int> class_universe(const std::vector<int>& labels);

// ---------------------------------------------------------------------------
// k-nearest neighbors
// ---------------------------------------------------------------------------

struct KnnParams {
    int k = 5;

    bool operator==(const KnnParams&) const = default;
};

struct KnnModel {
    KnnParams params;
    Standardizer standardizer;
    std::vector<std::vector<double>> train_x; ///< standardized
    std::vector<int> train_y;
    std::vector<int> classes;
    double tau = 0.0;
    std::string schema_id;

    /// Majority label among the k nearest by Euclidean distance. Distance
    /// ties resolve by ascending training ordinal, vote ties by smallest
    /// class id. Confidence is the winning vote fraction.
    Prediction predict_raw(std::span<const double> x) const;
};

KnnModel fit_knn(const LabeledDataset& train, const KnnParams& params = {});

// ---------------------------------------------------------------------------
// Gaussian naive Bayes
// ---------------------------------------------------------------------------

struct NaiveBayesModel {
    Standardizer standardizer; ///< passthrough
    std::vector<int> classes;
    std::vector<double> log_prior;             ///< per class
    std::vector<std::vector<double>> mean;     ///< per class, per dimension
    std::vector<std::vector<double>> variance; ///< smoothed
    double tau = 0.0;
    std::string schema_id;

    /// Argmax of log prior + sum of log Gaussian densities; confidence is the
    /// softmax-normalized posterior. Ties go to the smallest class id.
    Prediction predict_raw(std::span<const double> x) const;

    /// Full posterior vector (sums to 1), ordered as `classes`.
    std::vector<double> posterior(std::span<const double> x) const;
};

NaiveBayesModel fit_nb(const LabeledDataset& train);

// ---------------------------------------------------------------------------
// CART decision tree
// ---------------------------------------------------------------------------

struct TreeParams {
    int max_depth = 12;
    int min_leaf = 2;

    bool operator==(const TreeParams&) const = default;
};

/// Nodes stored as a flat array; feature < 0 marks a leaf. Samples with
/// x[feature] <= threshold go left.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    std::vector<std::uint32_t> counts; ///< leaf class distribution, ordered as classes
};

struct DecisionTreeModel {
    TreeParams params;
    Standardizer standardizer; ///< passthrough
    std::vector<int> classes;
    std::vector<TreeNode> nodes; ///< nodes[0] is the root
    double tau = 0.0;
    std::string schema_id;

    Prediction predict_raw(std::span<const double> x) const;
};

DecisionTreeModel fit_tree(const LabeledDataset& train, const TreeParams& params = {});

// ---------------------------------------------------------------------------
// Random forest
// ---------------------------------------------------------------------------

enum class FeatureSubsample {
    Sqrt, ///< ceil(sqrt(d)) candidate features per split, falling back to a
          ///< full scan when no candidate yields a valid split
    All,
};

struct ForestParams {
    int n_trees = 100;
    TreeParams tree;
    bool bootstrap = true;
    FeatureSubsample max_features = FeatureSubsample::Sqrt;

    bool operator==(const ForestParams&) const = default;
};

struct RandomForestModel {
    ForestParams params;
    std::uint64_t seed = 0;
    Standardizer standardizer; ///< passthrough
    std::vector<int> classes;
    std::vector<DecisionTreeModel> trees;
    double tau = 0.0;
    std::string schema_id;

    /// Majority vote over trees; confidence is the vote fraction; ties go to
    /// the smallest class id.
    Prediction predict_raw(std::span<const double> x) const;
};

/// Trains `params.n_trees` trees on bootstrap resamples. Tree t draws its
/// randomness from child(seed, "tree", t), so results do not depend on the
/// thread count.
RandomForestModel fit_rf(const LabeledDataset& train, const ForestParams& params = {},
                         std::uint64_t seed = 0, int threads = 1);

// ---------------------------------------------------------------------------
// Linear SVM (one-vs-rest, Pegasos-style subgradient descent)
// ---------------------------------------------------------------------------

struct SvmParams {
    int epochs = 200;
    double lambda = 1e-3;

    bool operator==(const SvmParams&) const = default;
};

struct LinearSvmModel {
    SvmParams params;
    std::uint64_t seed = 0;
    Standardizer standardizer;
    std::vector<int> classes;
    std::vector<std::vector<double>> weights; ///< per class
    std::vector<double> bias;                 ///< per class
    double tau = 0.0;
    std::string schema_id;

    /// Argmax over per-class margins w_c . x + b_c; confidence is the softmax
    /// over margins; ties go to the smallest class id.
    Prediction predict_raw(std::span<const double> x) const;

    /// Raw per-class margins on the standardized input, ordered as `classes`.
    std::vector<double> margins(std::span<const double> x) const;
};

/// Hinge-loss subgradient training with step 1/(lambda * t); the sample order
/// of epoch e is shuffled with child(seed, "epoch", e).
LinearSvmModel fit_svm(const LabeledDataset& train, const SvmParams& params = {},
                       std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Uniform handle over the five algorithms
// ---------------------------------------------------------------------------

using TrainedModel = std::variant<RandomForestModel, LinearSvmModel, KnnModel,
                                  NaiveBayesModel, DecisionTreeModel>;

std::string_view algorithm_id(const TrainedModel& model);
ClassifierKind algorithm_kind(const TrainedModel& model);
double threshold_of(const TrainedModel& model);
void set_threshold(TrainedModel& model, double tau);
const std::string& schema_of_model(const TrainedModel& model);
const std::vector<int>& classes_of(const TrainedModel& model);

/// Raw prediction without the abstention gate.
Prediction predict_raw(const TrainedModel& model, std::span<const double> x);

/// Prediction with the model's tau applied (see apply_threshold).
Prediction predict(const TrainedModel& model, std::span<const double> x);

} // namespace texkit
