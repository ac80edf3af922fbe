#include <texkit/classifiers.hpp>

#include <texkit/error.hpp>
#include <texkit/rng.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace texkit {

LinearSvmModel fit_svm(const LabeledDataset& train, const SvmParams& params,
                       std::uint64_t seed) {
    if (train.size() == 0) {
        raise(Errc::EmptyTrainingSet, "SVM needs at least one training sample");
    }
    if (params.epochs < 1 || !(params.lambda > 0.0)) {
        raise(Errc::InvalidArgument, "SVM requires epochs >= 1 and lambda > 0");
    }
    LinearSvmModel model;
    model.params = params;
    model.seed = seed;
    model.classes = class_universe(train.y);
    model.schema_id = train.schema_id;
    if (model.classes.size() < 2) {
        raise(Errc::SingleClass, "one-vs-rest SVM needs at least two classes");
    }

    model.standardizer = Standardizer::fit(train.x);
    std::vector<std::vector<double>> x(train.size());
    for (std::size_t i = 0; i < train.size(); ++i) {
        x[i] = model.standardizer.transform(train.x[i]);
    }

    const std::size_t n_classes = model.classes.size();
    const std::size_t dim = train.dim();
    model.weights.assign(n_classes, std::vector<double>(dim, 0.0));
    model.bias.assign(n_classes, 0.0);

    // sign[c][i]: +1 when sample i belongs to class c, else -1
    std::vector<std::vector<double>> sign(n_classes, std::vector<double>(train.size(), -1.0));
    for (std::size_t i = 0; i < train.size(); ++i) {
        const auto it = std::lower_bound(model.classes.begin(), model.classes.end(), train.y[i]);
        sign[static_cast<std::size_t>(it - model.classes.begin())][i] = 1.0;
    }

    const SeedTree seeds(seed);
    std::vector<std::size_t> order(train.size());
    std::uint64_t t = 0;
    for (int epoch = 0; epoch < params.epochs; ++epoch) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        Rng rng = seeds.rng("epoch", static_cast<std::uint64_t>(epoch));
        rng.shuffle(order);
        for (std::size_t i : order) {
            t += 1;
            const double eta = 1.0 / (params.lambda * static_cast<double>(t));
            const double decay = 1.0 - eta * params.lambda;
            for (std::size_t c = 0; c < n_classes; ++c) {
                std::vector<double>& w = model.weights[c];
                double margin = model.bias[c];
                for (std::size_t d = 0; d < dim; ++d) margin += w[d] * x[i][d];
                const double y = sign[c][i];
                if (y * margin < 1.0) {
                    for (std::size_t d = 0; d < dim; ++d) {
                        w[d] = decay * w[d] + eta * y * x[i][d];
                    }
                    model.bias[c] += eta * y; // bias stays unregularized
                } else {
                    for (std::size_t d = 0; d < dim; ++d) w[d] *= decay;
                }
            }
        }
    }
    return model;
}

std::vector<double> LinearSvmModel::margins(std::span<const double> x) const {
    const std::vector<double> z = standardizer.transform(x);
    std::vector<double> out(classes.size());
    for (std::size_t c = 0; c < classes.size(); ++c) {
        double m = bias[c];
        for (std::size_t d = 0; d < z.size(); ++d) m += weights[c][d] * z[d];
        out[c] = m;
    }
    return out;
}

Prediction LinearSvmModel::predict_raw(std::span<const double> x) const {
    const std::vector<double> m = margins(x);
    std::size_t best = 0;
    for (std::size_t c = 1; c < m.size(); ++c) {
        if (m[c] > m[best]) best = c; // ties keep the smaller class id
    }
    const double peak = m[best];
    double sum = 0.0;
    for (double v : m) sum += std::exp(v - peak);
    return Prediction{classes[best], 1.0 / sum};
}

} // namespace texkit
