#pragma once

#include <texkit/prediction.hpp>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace texkit {

/// Disjoint train/test index sets, each sorted ascending.
struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Per class, shuffles the class's sample indices with a seed derived from
/// `seed` and sends round(n_c * test_fraction) of them to test, clamped to
/// [1, n_c - 1] so both sides keep every class.
SplitIndices stratified_split(const std::vector<int>& labels, double test_fraction,
                              std::uint64_t seed);

/// Row = true class, column = predicted class, both in dense id order. When
/// any prediction is Unknown an extra final column collects those samples.
struct ConfusionMatrix {
    std::size_t class_count = 0;
    bool has_unknown = false;
    std::vector<std::uint64_t> counts; ///< class_count x col_count(), row-major

    std::size_t col_count() const { return class_count + (has_unknown ? 1 : 0); }
    std::uint64_t& at(std::size_t t, std::size_t p) { return counts[t * col_count() + p]; }
    std::uint64_t at(std::size_t t, std::size_t p) const {
        return counts[t * col_count() + p];
    }
    std::uint64_t total() const;
};

/// Tally of predictions against ground truth. `y_pred` may contain
/// kUnknownLabel; `y_true` must not. Both must hold ids below class_count.
ConfusionMatrix confusion(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                          std::size_t class_count);
ConfusionMatrix confusion(const std::vector<int>& y_true,
                          const std::vector<Prediction>& y_pred, std::size_t class_count);

struct MetricsReport {
    double accuracy = 0.0;
    std::vector<double> precision; ///< per class
    std::vector<double> recall;
    std::vector<double> f1;
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double macro_f1 = 0.0;
    double micro_precision = 0.0;
    double micro_recall = 0.0;
    double micro_f1 = 0.0;
};

/// Accuracy is trace/total. Per-class metrics use the 0-when-denominator-is-0
/// convention; macro values average over true classes only (the Unknown
/// column counts against recall and accuracy but is not a class).
MetricsReport metrics(const ConfusionMatrix& cm);

} // namespace texkit
