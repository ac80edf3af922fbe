#include "tree_builder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

namespace texkit::detail {

namespace {

double gini(const std::vector<std::uint64_t>& counts, std::uint64_t total) {
    double sum_sq = 0.0;
    for (std::uint64_t c : counts) {
        const double p = static_cast<double>(c) / static_cast<double>(total);
        sum_sq += p * p;
    }
    return 1.0 - sum_sq;
}

} // namespace

TreeGrower::TreeGrower(const std::vector<std::vector<double>>& x,
                       const std::vector<std::size_t>& class_of, std::size_t n_classes,
                       const TreeParams& params, Rng* feature_rng)
    : x_(x),
      class_of_(class_of),
      n_classes_(n_classes),
      params_(params),
      feature_rng_(feature_rng) {
    const std::size_t dim = x.empty() ? 0 : x.front().size();
    n_candidates_ =
        static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(dim))));
    n_candidates_ = std::min(std::max<std::size_t>(n_candidates_, 1), dim);
}

std::vector<TreeNode> TreeGrower::grow(std::vector<std::size_t> samples) {
    nodes_.clear();
    build(samples, 0);
    return std::move(nodes_);
}

int TreeGrower::make_leaf(const std::vector<std::uint32_t>& counts) {
    TreeNode leaf;
    leaf.counts = counts;
    nodes_.push_back(std::move(leaf));
    return static_cast<int>(nodes_.size() - 1);
}

int TreeGrower::build(std::vector<std::size_t>& samples, int depth) {
    std::vector<std::uint32_t> counts(n_classes_, 0);
    for (std::size_t s : samples) counts[class_of_[s]] += 1;
    const std::size_t n = samples.size();

    const bool pure =
        std::count(counts.begin(), counts.end(), 0u) + 1 >= static_cast<long>(n_classes_);
    if (pure || depth >= params_.max_depth ||
        n < 2 * static_cast<std::size_t>(params_.min_leaf)) {
        return make_leaf(counts);
    }

    const std::size_t dim = x_.front().size();
    SplitChoice best;
    bool found = false;
    if (feature_rng_ != nullptr && n_candidates_ < dim) {
        // Partial Fisher-Yates draw of candidate features, scanned in
        // ascending order so the (feature, threshold) tie rule stays fixed.
        std::vector<std::size_t> pool(dim);
        std::iota(pool.begin(), pool.end(), std::size_t{0});
        for (std::size_t j = 0; j < n_candidates_; ++j) {
            const std::size_t pick = j + feature_rng_->uniform_index(dim - j);
            std::swap(pool[j], pool[pick]);
        }
        std::vector<std::size_t> chosen(pool.begin(),
                                        pool.begin() + static_cast<long>(n_candidates_));
        std::sort(chosen.begin(), chosen.end());
        found = find_best_split(samples, chosen, best);
    }
    if (!found) {
        std::vector<std::size_t> all(dim);
        std::iota(all.begin(), all.end(), std::size_t{0});
        found = find_best_split(samples, all, best);
    }
    if (!found) return make_leaf(counts);

    std::vector<std::size_t> left, right;
    left.reserve(best.n_left);
    right.reserve(n - best.n_left);
    for (std::size_t s : samples) {
        (x_[s][static_cast<std::size_t>(best.feature)] <= best.threshold ? left : right)
            .push_back(s);
    }
    samples.clear();
    samples.shrink_to_fit();

    const int self = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    nodes_[static_cast<std::size_t>(self)].feature = best.feature;
    nodes_[static_cast<std::size_t>(self)].threshold = best.threshold;
    const int left_id = build(left, depth + 1);
    const int right_id = build(right, depth + 1);
    nodes_[static_cast<std::size_t>(self)].left = left_id;
    nodes_[static_cast<std::size_t>(self)].right = right_id;
    return self;
}

bool TreeGrower::find_best_split(const std::vector<std::size_t>& samples,
                                 const std::vector<std::size_t>& features,
                                 SplitChoice& best) const {
    const std::size_t n = samples.size();
    const auto min_leaf = static_cast<std::size_t>(params_.min_leaf);
    best.impurity = std::numeric_limits<double>::infinity();
    bool found = false;

    std::vector<std::pair<double, std::size_t>> ordered(n); // (value, class index)
    std::vector<std::uint64_t> left(n_classes_);
    std::vector<std::uint64_t> right(n_classes_);

    for (std::size_t f : features) {
        for (std::size_t i = 0; i < n; ++i) {
            ordered[i] = {x_[samples[i]][f], class_of_[samples[i]]};
        }
        std::sort(ordered.begin(), ordered.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        if (ordered.front().first == ordered.back().first) continue; // constant feature

        std::fill(left.begin(), left.end(), 0);
        std::fill(right.begin(), right.end(), 0);
        for (const auto& [value, cls] : ordered) right[cls] += 1;

        for (std::size_t i = 0; i + 1 < n; ++i) {
            left[ordered[i].second] += 1;
            right[ordered[i].second] -= 1;
            if (ordered[i].first == ordered[i + 1].first) continue; // mid-run
            const std::size_t n_left = i + 1;
            const std::size_t n_right = n - n_left;
            if (n_left < min_leaf || n_right < min_leaf) continue;

            const double weighted =
                (static_cast<double>(n_left) * gini(left, n_left) +
                 static_cast<double>(n_right) * gini(right, n_right)) /
                static_cast<double>(n);
            if (weighted < best.impurity) { // strict: first (feature, threshold) wins
                const double lo = ordered[i].first;
                const double hi = ordered[i + 1].first;
                double mid = lo + (hi - lo) * 0.5;
                if (mid >= hi) mid = lo; // gap below one ulp; keep boundary on the left
                best.feature = static_cast<int>(f);
                best.threshold = mid;
                best.impurity = weighted;
                best.n_left = n_left;
                found = true;
            }
        }
    }
    return found;
}

} // namespace texkit::detail
