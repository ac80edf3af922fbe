#include <texkit/classifiers.hpp>

#include <texkit/error.hpp>

#include "tree_builder.hpp"

#include <algorithm>
#include <numeric>

namespace texkit {

namespace detail {

std::vector<std::size_t> class_indices(const std::vector<int>& labels,
                                       const std::vector<int>& classes) {
    std::vector<std::size_t> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto it = std::lower_bound(classes.begin(), classes.end(), labels[i]);
        out[i] = static_cast<std::size_t>(it - classes.begin());
    }
    return out;
}

} // namespace detail

DecisionTreeModel fit_tree(const LabeledDataset& train, const TreeParams& params) {
    if (train.size() == 0) {
        raise(Errc::EmptyTrainingSet, "decision tree needs at least one training sample");
    }
    if (params.max_depth < 0 || params.min_leaf < 1) {
        raise(Errc::InvalidArgument, "tree requires max_depth >= 0 and min_leaf >= 1");
    }
    DecisionTreeModel model;
    model.params = params;
    model.standardizer = Standardizer::passthrough();
    model.classes = class_universe(train.y);
    model.schema_id = train.schema_id;

    const std::vector<std::size_t> class_of = detail::class_indices(train.y, model.classes);
    detail::TreeGrower grower(train.x, class_of, model.classes.size(), params, nullptr);
    std::vector<std::size_t> samples(train.size());
    std::iota(samples.begin(), samples.end(), std::size_t{0});
    model.nodes = grower.grow(std::move(samples));
    return model;
}

Prediction DecisionTreeModel::predict_raw(std::span<const double> x) const {
    const TreeNode* node = &nodes.front();
    while (node->feature >= 0) {
        const int next =
            x[static_cast<std::size_t>(node->feature)] <= node->threshold ? node->left
                                                                          : node->right;
        node = &nodes[static_cast<std::size_t>(next)];
    }
    std::size_t best = 0;
    std::uint64_t total = 0;
    for (std::size_t c = 0; c < node->counts.size(); ++c) {
        total += node->counts[c];
        if (node->counts[c] > node->counts[best]) best = c;
    }
    return Prediction{classes[best],
                      static_cast<double>(node->counts[best]) / static_cast<double>(total)};
}

} // namespace texkit
