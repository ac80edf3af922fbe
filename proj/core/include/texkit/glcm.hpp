#pragma once

#include <texkit/image.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace texkit {

/// Pixel-pair displacement. (dx, dy) pairs pixel (x, y) with (x+dx, y+dy);
/// y grows downward, so dy = -1 points one row up.
struct Offset {
    int dx = 0;
    int dy = 0;

    bool operator==(const Offset&) const = default;
};

/// Normalized co-occurrence matrix P(i, j) over `levels` gray levels.
struct CooccurrenceMatrix {
    int levels = 0;
    std::vector<double> probs;    ///< levels x levels, row-major
    std::uint64_t pair_count = 0; ///< raw pairs counted before normalization

    double at(int i, int j) const { return probs[static_cast<std::size_t>(i) * levels + j]; }
};

/// Index-weighted marginal statistics of a co-occurrence matrix.
struct MarginalStats {
    double mu_x = 0.0;
    double mu_y = 0.0;
    double sigma_x = 0.0;
    double sigma_y = 0.0;
};

enum class GlcmAggregation { Mean, Concatenate };

struct GlcmConfig {
    int levels = 16;
    int distance = 1;
    /// 0, 45, 90, 135 degrees.
    std::vector<Offset> angles{{1, 0}, {1, -1}, {0, -1}, {-1, -1}};
    bool symmetric = true;
    GlcmAggregation aggregation = GlcmAggregation::Mean;

    bool operator==(const GlcmConfig&) const = default;
};

/// Counts every pixel pair (p, p + off) lying fully inside the image; with
/// `symmetric` the reversed pair is counted as well, making P exactly equal
/// to its transpose. Raises NoValidPairs when the offset exceeds the image.
CooccurrenceMatrix cooccurrence(const QuantizedImage& img, Offset off, bool symmetric);

double energy(const CooccurrenceMatrix& P);
double contrast(const CooccurrenceMatrix& P);
double homogeneity(const CooccurrenceMatrix& P);
/// Base-2 entropy with the 0 log 0 = 0 convention.
double entropy(const CooccurrenceMatrix& P);
MarginalStats marginals(const CooccurrenceMatrix& P);
/// Returns 0 when sigma_x * sigma_y < 1e-12 (no measurable linear dependence).
double correlation(const CooccurrenceMatrix& P);

/// Per-offset feature order inside every block.
inline constexpr const char* kGlcmFeatureNames[5] = {"energy", "contrast", "homogeneity",
                                                     "entropy", "correlation"};

/// Extracts the five features for every offset in cfg.angles (each scaled by
/// cfg.distance) and aggregates: Mean averages each feature over offsets
/// (5 values), Concatenate emits one 5-feature block per offset.
std::vector<double> glcm_features(const QuantizedImage& img, const GlcmConfig& cfg);

/// Ordered names matching glcm_features output.
std::vector<std::string> glcm_feature_names(const GlcmConfig& cfg);

} // namespace texkit
