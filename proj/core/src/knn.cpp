#include <texkit/classifiers.hpp>

#include <texkit/error.hpp>

#include <algorithm>
#include <iostream>
#include <numeric>

namespace texkit {

KnnModel fit_knn(const LabeledDataset& train, const KnnParams& params) {
    if (train.size() == 0) {
        raise(Errc::EmptyTrainingSet, "k-NN needs at least one training sample");
    }
    if (params.k < 1) {
        raise(Errc::InvalidArgument, "k must be >= 1");
    }
    KnnModel model;
    model.params = params;
    if (params.k > static_cast<int>(train.size())) {
        std::cerr << "texkit: warning: k=" << params.k << " exceeds training size "
                  << train.size() << "; clamped\n";
        model.params.k = static_cast<int>(train.size());
    }
    model.classes = class_universe(train.y);
    model.standardizer = Standardizer::fit(train.x);
    model.train_x.reserve(train.size());
    for (const auto& row : train.x) {
        model.train_x.push_back(model.standardizer.transform(row));
    }
    model.train_y = train.y;
    model.schema_id = train.schema_id;
    return model;
}

Prediction KnnModel::predict_raw(std::span<const double> x) const {
    const std::vector<double> q = standardizer.transform(x);
    const std::size_t n = train_x.size();

    std::vector<std::pair<double, std::size_t>> by_distance(n);
    for (std::size_t i = 0; i < n; ++i) {
        double d2 = 0.0;
        const std::vector<double>& t = train_x[i];
        for (std::size_t f = 0; f < q.size(); ++f) {
            const double diff = q[f] - t[f];
            d2 += diff * diff;
        }
        by_distance[i] = {d2, i};
    }
    // Ordinal tiebreak comes free from the pair ordering.
    const std::size_t k = static_cast<std::size_t>(params.k);
    std::partial_sort(by_distance.begin(), by_distance.begin() + k, by_distance.end());

    std::vector<int> votes(classes.size(), 0);
    for (std::size_t i = 0; i < k; ++i) {
        const int label = train_y[by_distance[i].second];
        const auto it = std::lower_bound(classes.begin(), classes.end(), label);
        votes[static_cast<std::size_t>(it - classes.begin())] += 1;
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < votes.size(); ++c) {
        if (votes[c] > votes[best]) best = c; // ties keep the smaller class id
    }
    return Prediction{classes[best],
                      static_cast<double>(votes[best]) / static_cast<double>(k)};
}

} // namespace texkit
