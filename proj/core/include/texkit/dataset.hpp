#pragma once

#include <string>
#include <vector>

namespace texkit {

/// Ordered feature names plus a fingerprint of the extraction configuration.
/// Models refuse to mix with features produced under a different fingerprint.
struct FeatureSchema {
    std::vector<std::string> names;
    std::string fingerprint;

    std::size_t dim() const { return names.size(); }

    bool operator==(const FeatureSchema&) const = default;
};

/// Feature rows with integer class labels (dense ids >= 0).
struct LabeledDataset {
    std::vector<std::vector<double>> x;
    std::vector<int> y;
    std::string schema_id;

    std::size_t size() const { return x.size(); }
    std::size_t dim() const { return x.empty() ? 0 : x.front().size(); }
};

} // namespace texkit
