#pragma once

#include <string_view>

namespace texkit {

/// Label reserved for abstention.
inline constexpr int kUnknownLabel = -1;

/// A class decision with its confidence. `label == kUnknownLabel` marks an
/// abstention; the confidence that triggered it is preserved.
struct Prediction {
    int label = kUnknownLabel;
    double confidence = 0.0;

    bool is_unknown() const { return label == kUnknownLabel; }

    bool operator==(const Prediction&) const = default;
};

/// The five base algorithms, in the canonical priority order the cascade
/// scans them.
enum class ClassifierKind { Rf = 0, Svm = 1, Knn = 2, Nb = 3, Dt = 4 };

inline constexpr int kClassifierCount = 5;

std::string_view classifier_id(ClassifierKind kind);

/// Parses "rf", "svm", "knn", "nb", "dt". Throws InvalidArgument otherwise.
ClassifierKind classifier_from_id(std::string_view id);

/// Abstention gate: confidence below tau turns the prediction into Unknown
/// (confidence preserved). tau = 0 never abstains. tau must lie in [0, 1].
Prediction apply_threshold(Prediction p, double tau);

} // namespace texkit
