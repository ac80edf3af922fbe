#pragma once

#include <texkit/prediction.hpp>

#include <cstddef>
#include <vector>

namespace texkit {

/// Aligned per-sample predictions from several classifiers. Row r holds one
/// Prediction per entry of model_order, in that order.
struct PredictionMatrix {
    std::vector<ClassifierKind> model_order = default_model_order();
    std::vector<std::vector<Prediction>> rows;

    static std::vector<ClassifierKind> default_model_order();

    std::size_t size() const { return rows.size(); }
};

/// Per sample, the most frequent non-Unknown label. Confidence is the winning
/// vote count over the number of voters. Ties go to the label voted by the
/// earliest model in model_order among the tied labels; a row of only Unknown
/// votes stays Unknown.
std::vector<Prediction> voting_ensemble(const PredictionMatrix& pm);

/// Per sample, the first non-Unknown prediction scanning model_order. The last
/// model is accepted unconditionally, Unknown included. With strict=true an
/// all-Unknown row raises UnknownExhausted instead.
std::vector<Prediction> combined_classifier(const PredictionMatrix& pm, bool strict = false);

} // namespace texkit
