#include <texkit/classifiers.hpp>

#include <texkit/error.hpp>

#include <algorithm>
#include <cmath>

namespace texkit {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;

} // namespace

NaiveBayesModel fit_nb(const LabeledDataset& train) {
    if (train.size() == 0) {
        raise(Errc::EmptyTrainingSet, "naive Bayes needs at least one training sample");
    }
    const std::size_t dim = train.dim();
    NaiveBayesModel model;
    model.standardizer = Standardizer::passthrough();
    model.classes = class_universe(train.y);
    model.schema_id = train.schema_id;

    const std::size_t n_classes = model.classes.size();
    std::vector<std::size_t> class_index(train.size());
    std::vector<std::uint64_t> class_n(n_classes, 0);
    for (std::size_t i = 0; i < train.size(); ++i) {
        const auto it =
            std::lower_bound(model.classes.begin(), model.classes.end(), train.y[i]);
        class_index[i] = static_cast<std::size_t>(it - model.classes.begin());
        class_n[class_index[i]] += 1;
    }

    model.mean.assign(n_classes, std::vector<double>(dim, 0.0));
    model.variance.assign(n_classes, std::vector<double>(dim, 0.0));
    for (std::size_t i = 0; i < train.size(); ++i) {
        auto& m = model.mean[class_index[i]];
        for (std::size_t d = 0; d < dim; ++d) m[d] += train.x[i][d];
    }
    for (std::size_t c = 0; c < n_classes; ++c) {
        for (std::size_t d = 0; d < dim; ++d) {
            model.mean[c][d] /= static_cast<double>(class_n[c]);
        }
    }
    for (std::size_t i = 0; i < train.size(); ++i) {
        const std::size_t c = class_index[i];
        for (std::size_t d = 0; d < dim; ++d) {
            const double diff = train.x[i][d] - model.mean[c][d];
            model.variance[c][d] += diff * diff;
        }
    }

    // Smoothing: 1e-9 times the largest overall feature variance, so sharp
    // per-class spikes cannot degenerate the densities.
    const Standardizer overall = Standardizer::fit(train.x);
    double max_var = 0.0;
    for (double s : overall.stddev) max_var = std::max(max_var, s * s);
    const double eps = 1e-9 * max_var;

    for (std::size_t c = 0; c < n_classes; ++c) {
        for (std::size_t d = 0; d < dim; ++d) {
            model.variance[c][d] =
                std::max(model.variance[c][d] / static_cast<double>(class_n[c]) + eps,
                         1e-300);
        }
    }

    model.log_prior.resize(n_classes);
    for (std::size_t c = 0; c < n_classes; ++c) {
        model.log_prior[c] = std::log(static_cast<double>(class_n[c]) /
                                      static_cast<double>(train.size()));
    }
    return model;
}

std::vector<double> NaiveBayesModel::posterior(std::span<const double> x) const {
    const std::size_t n_classes = classes.size();
    std::vector<double> log_joint(n_classes);
    for (std::size_t c = 0; c < n_classes; ++c) {
        double lj = log_prior[c];
        for (std::size_t d = 0; d < x.size() && d < mean[c].size(); ++d) {
            const double diff = x[d] - mean[c][d];
            lj -= 0.5 * (kLog2Pi + std::log(variance[c][d]) + diff * diff / variance[c][d]);
        }
        log_joint[c] = lj;
    }
    const double peak = *std::max_element(log_joint.begin(), log_joint.end());
    double sum = 0.0;
    std::vector<double> post(n_classes);
    for (std::size_t c = 0; c < n_classes; ++c) {
        post[c] = std::exp(log_joint[c] - peak);
        sum += post[c];
    }
    for (double& p : post) p /= sum;
    return post;
}

Prediction NaiveBayesModel::predict_raw(std::span<const double> x) const {
    const std::vector<double> post = posterior(x);
    std::size_t best = 0;
    for (std::size_t c = 1; c < post.size(); ++c) {
        if (post[c] > post[best]) best = c; // ties keep the smaller class id
    }
    return Prediction{classes[best], post[best]};
}

} // namespace texkit
