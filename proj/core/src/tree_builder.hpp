#pragma once

// Internal CART grower shared by fit_tree and fit_rf. Not installed.

#include <texkit/classifiers.hpp>
#include <texkit/rng.hpp>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace texkit::detail {

struct SplitChoice {
    int feature = -1;
    double threshold = 0.0;
    double impurity = 0.0; // weighted Gini of the two children
    std::size_t n_left = 0;
};

class TreeGrower {
public:
    /// `class_of[i]` maps sample i to its index in the sorted class universe.
    /// A null `feature_rng` scans every feature at each node; otherwise
    /// ceil(sqrt(d)) features are drawn per node, with a full scan as
    /// fallback when none of the drawn features admits a valid split.
    TreeGrower(const std::vector<std::vector<double>>& x,
               const std::vector<std::size_t>& class_of, std::size_t n_classes,
               const TreeParams& params, Rng* feature_rng);

    /// Consumes `samples` (indices into x, duplicates allowed) and returns the
    /// grown node array with the root at index 0.
    std::vector<TreeNode> grow(std::vector<std::size_t> samples);

private:
    int build(std::vector<std::size_t>& samples, int depth);
    int make_leaf(const std::vector<std::uint32_t>& counts);
    bool find_best_split(const std::vector<std::size_t>& samples,
                         const std::vector<std::size_t>& features, SplitChoice& best) const;

    const std::vector<std::vector<double>>& x_;
    const std::vector<std::size_t>& class_of_;
    std::size_t n_classes_;
    TreeParams params_;
    Rng* feature_rng_;
    std::size_t n_candidates_;
    std::vector<TreeNode> nodes_;
};

} // namespace texkit::detail
