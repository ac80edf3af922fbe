#include <texkit/histogram.hpp>

#include <texkit/error.hpp>

#include <numeric>
#include <string>

namespace texkit {

std::uint64_t Histogram::total() const {
    return std::accumulate(bins.begin(), bins.end(), std::uint64_t{0});
}

Histogram histogram(const GrayImage& img, int bin_count) {
    if (bin_count < 1 || bin_count > 256) {
        raise(Errc::InvalidBinCount,
              "bin count must be in [1, 256], got " + std::to_string(bin_count));
    }
    Histogram h;
    h.bin_count = bin_count;
    h.bins.assign(static_cast<std::size_t>(bin_count), 0);
    for (std::uint8_t p : img.data) {
        h.bins[p * bin_count / 256] += 1;
    }
    return h;
}

std::vector<double> hist_features(const Histogram& h) {
    const std::uint64_t total = h.total();
    if (total == 0) {
        raise(Errc::EmptyHistogram, "histogram holds no pixels");
    }
    std::vector<double> out(h.bins.size());
    const double norm = 1.0 / static_cast<double>(total);
    for (std::size_t i = 0; i < h.bins.size(); ++i) {
        out[i] = static_cast<double>(h.bins[i]) * norm;
    }
    return out;
}

std::vector<std::string> hist_feature_names(int bin_count) {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(bin_count));
    for (int i = 0; i < bin_count; ++i) {
        std::string idx = std::to_string(i);
        if (idx.size() < 2) idx.insert(idx.begin(), '0');
        names.push_back("hist_" + idx);
    }
    return names;
}

} // namespace texkit
