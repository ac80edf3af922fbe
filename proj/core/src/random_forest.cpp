#include <texkit/classifiers.hpp>

#include <texkit/error.hpp>
#include <texkit/parallel.hpp>
#include <texkit/rng.hpp>

#include "tree_builder.hpp"

#include <numeric>

namespace texkit {

namespace detail {
std::vector<std::size_t> class_indices(const std::vector<int>& labels,
                                       const std::vector<int>& classes);
} // namespace detail

RandomForestModel fit_rf(const LabeledDataset& train, const ForestParams& params,
                         std::uint64_t seed, int threads) {
    if (train.size() == 0) {
        raise(Errc::EmptyTrainingSet, "random forest needs at least one training sample");
    }
    if (params.n_trees < 1) {
        raise(Errc::InvalidArgument, "random forest requires n_trees >= 1");
    }
    if (params.tree.max_depth < 0 || params.tree.min_leaf < 1) {
        raise(Errc::InvalidArgument, "tree requires max_depth >= 0 and min_leaf >= 1");
    }
    RandomForestModel model;
    model.params = params;
    model.seed = seed;
    model.standardizer = Standardizer::passthrough();
    model.classes = class_universe(train.y);
    model.schema_id = train.schema_id;
    model.trees.resize(static_cast<std::size_t>(params.n_trees));

    const std::vector<std::size_t> class_of = detail::class_indices(train.y, model.classes);
    const std::size_t n = train.size();
    const SeedTree seeds(seed);

    // Each tree draws bootstrap picks and candidate features from its own
    // derived stream, so the result is independent of the worker count.
    parallel_for(model.trees.size(), threads, [&](std::size_t t) {
        Rng rng(seeds.child("tree", t));
        std::vector<std::size_t> samples(n);
        if (params.bootstrap) {
            for (std::size_t i = 0; i < n; ++i) samples[i] = rng.uniform_index(n);
        } else {
            std::iota(samples.begin(), samples.end(), std::size_t{0});
        }
        Rng* feature_rng = params.max_features == FeatureSubsample::Sqrt ? &rng : nullptr;
        detail::TreeGrower grower(train.x, class_of, model.classes.size(), params.tree,
                                  feature_rng);
        DecisionTreeModel& tree = model.trees[t];
        tree.params = params.tree;
        tree.standardizer = Standardizer::passthrough();
        tree.classes = model.classes;
        tree.schema_id = train.schema_id;
        tree.nodes = grower.grow(std::move(samples));
    });
    return model;
}

Prediction RandomForestModel::predict_raw(std::span<const double> x) const {
    std::vector<std::uint32_t> votes(classes.size(), 0);
    for (const DecisionTreeModel& tree : trees) {
        const Prediction p = tree.predict_raw(x);
        const auto it = std::lower_bound(classes.begin(), classes.end(), p.label);
        votes[static_cast<std::size_t>(it - classes.begin())] += 1;
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < votes.size(); ++c) {
        if (votes[c] > votes[best]) best = c; // ties keep the smaller class id
    }
    return Prediction{classes[best],
                      static_cast<double>(votes[best]) / static_cast<double>(trees.size())};
}

} // namespace texkit
