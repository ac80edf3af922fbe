#include <texkit/image.hpp>

#include <texkit/error.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace texkit {

GrayImage make_gray(int width, int height, std::uint8_t fill) {
    if (width < 1 || height < 1) {
        raise(Errc::InvalidDimensions,
              "image dimensions must be positive, got " + std::to_string(width) + "x" +
                  std::to_string(height));
    }
    GrayImage img;
    img.width = width;
    img.height = height;
    img.data.assign(static_cast<std::size_t>(width) * height, fill);
    return img;
}

std::uint8_t luma601(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    const double y = 0.299 * r + 0.587 * g + 0.114 * b;
    const long rounded = std::lround(y);
    return static_cast<std::uint8_t>(std::clamp(rounded, 0L, 255L));
}

GrayImage resize(const GrayImage& img, int out_w, int out_h) {
    if (out_w < 1 || out_h < 1) {
        raise(Errc::InvalidDimensions, "resize target must be at least 1x1");
    }
    if (img.width < 1 || img.height < 1) {
        raise(Errc::InvalidDimensions, "cannot resize an empty image");
    }
    if (out_w == img.width && out_h == img.height) {
        return img;
    }

    GrayImage out = make_gray(out_w, out_h);
    const double x_scale = static_cast<double>(img.width) / out_w;
    const double y_scale = static_cast<double>(img.height) / out_h;

    for (int oy = 0; oy < out_h; ++oy) {
        double sy = (oy + 0.5) * y_scale - 0.5;
        sy = std::clamp(sy, 0.0, static_cast<double>(img.height - 1));
        const int y0 = static_cast<int>(sy);
        const int y1 = std::min(y0 + 1, img.height - 1);
        const double fy = sy - y0;
        for (int ox = 0; ox < out_w; ++ox) {
            double sx = (ox + 0.5) * x_scale - 0.5;
            sx = std::clamp(sx, 0.0, static_cast<double>(img.width - 1));
            const int x0 = static_cast<int>(sx);
            const int x1 = std::min(x0 + 1, img.width - 1);
            const double fx = sx - x0;

            const double top = (1.0 - fx) * img.at(x0, y0) + fx * img.at(x1, y0);
            const double bottom = (1.0 - fx) * img.at(x0, y1) + fx * img.at(x1, y1);
            const double value = (1.0 - fy) * top + fy * bottom;
            out.at(ox, oy) =
                static_cast<std::uint8_t>(std::clamp(std::lround(value), 0L, 255L));
        }
    }
    return out;
}

QuantizedImage quantize(const GrayImage& img, int levels, QuantizeMode mode) {
    if (levels < 2 || levels > 256) {
        raise(Errc::InvalidLevels,
              "levels must be in [2, 256], got " + std::to_string(levels));
    }
    QuantizedImage out;
    out.width = img.width;
    out.height = img.height;
    out.levels = levels;
    out.data.resize(img.data.size());

    if (mode == QuantizeMode::Uniform) {
        for (std::size_t i = 0; i < img.data.size(); ++i) {
            out.data[i] = static_cast<std::uint8_t>(img.data[i] * levels / 256);
        }
        return out;
    }

    // Min-max stretch: map [lo, hi] onto the full bin range. A constant image
    // has no range; it lands in bin 0.
    const auto [lo_it, hi_it] = std::minmax_element(img.data.begin(), img.data.end());
    const int lo = img.data.empty() ? 0 : *lo_it;
    const int hi = img.data.empty() ? 0 : *hi_it;
    if (hi == lo) {
        std::fill(out.data.begin(), out.data.end(), std::uint8_t{0});
        return out;
    }
    const int span = hi - lo + 1;
    for (std::size_t i = 0; i < img.data.size(); ++i) {
        out.data[i] = static_cast<std::uint8_t>((img.data[i] - lo) * levels / span);
    }
    return out;
}

} // namespace texkit
