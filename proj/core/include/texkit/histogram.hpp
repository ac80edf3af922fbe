#pragma once

#include <texkit/image.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace texkit {

/// Intensity histogram over the fixed range [0, 255].
struct Histogram {
    std::vector<std::uint64_t> bins;
    int bin_count = 0;
    int range_lo = 0;
    int range_hi = 255;

    std::uint64_t total() const;
};

/// Single pass over the pixels; intensity p lands in bin floor(p * N / 256).
Histogram histogram(const GrayImage& img, int bin_count);

/// Normalizes bin counts by the pixel total. The result sums to 1.
std::vector<double> hist_features(const Histogram& h);

std::vector<std::string> hist_feature_names(int bin_count);

} // namespace texkit
