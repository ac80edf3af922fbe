#pragma once

#include <cstdint>
#include <vector>

namespace texkit {

/// 8-bit grayscale raster, row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    std::uint8_t at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    std::size_t pixel_count() const { return data.size(); }

    bool operator==(const GrayImage&) const = default;
};

/// Gray-level-binned raster; every value is < levels.
struct QuantizedImage {
    int width = 0;
    int height = 0;
    int levels = 0;
    std::vector<std::uint8_t> data;

    std::uint8_t at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }

    bool operator==(const QuantizedImage&) const = default;
};

GrayImage make_gray(int width, int height, std::uint8_t fill = 0);

/// Rec.601 luma, rounded to nearest: round(0.299 R + 0.587 G + 0.114 B).
std::uint8_t luma601(std::uint8_t r, std::uint8_t g, std::uint8_t b);

/// Bilinear resize with half-pixel-center sampling; source coordinates are
/// clamped at the border and results rounded to the nearest integer.
/// Resizing to the input geometry reproduces the input exactly.
GrayImage resize(const GrayImage& img, int out_w, int out_h);

enum class QuantizeMode {
    Uniform,        ///< bin = floor(intensity * levels / 256)
    MinMaxStretch,  ///< per-image [min, max] stretched onto the bin range
};

/// Bins intensities into `levels` gray levels (2 <= levels <= 256).
QuantizedImage quantize(const GrayImage& img, int levels,
                        QuantizeMode mode = QuantizeMode::Uniform);

} // namespace texkit
