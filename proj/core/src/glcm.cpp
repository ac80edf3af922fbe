#include <texkit/glcm.hpp>

#include <texkit/error.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace texkit {

namespace {

void require_normalized(const CooccurrenceMatrix& P) {
    if (P.levels < 1 || P.probs.size() != static_cast<std::size_t>(P.levels) * P.levels) {
        raise(Errc::InvalidArgument, "co-occurrence matrix has inconsistent shape");
    }
}

void validate_config(const GlcmConfig& cfg) {
    if (cfg.levels < 2 || cfg.levels > 256) {
        raise(Errc::InvalidLevels, "GLCM levels must be in [2, 256]");
    }
    if (cfg.distance < 1) {
        raise(Errc::InvalidArgument, "GLCM distance must be >= 1");
    }
    if (cfg.angles.empty()) {
        raise(Errc::InvalidArgument, "GLCM angle set must be nonempty");
    }
    for (const Offset& off : cfg.angles) {
        if (off.dx == 0 && off.dy == 0) {
            raise(Errc::InvalidArgument, "GLCM offset (0, 0) is not allowed");
        }
    }
}

} // namespace

CooccurrenceMatrix cooccurrence(const QuantizedImage& img, Offset off, bool symmetric) {
    if (img.width < 1 || img.height < 1) {
        raise(Errc::InvalidArgument, "co-occurrence input image is empty");
    }
    if (off.dx == 0 && off.dy == 0) {
        raise(Errc::InvalidArgument, "GLCM offset (0, 0) is not allowed");
    }
    const int levels = img.levels;

    // Valid anchor range so that both (x, y) and (x+dx, y+dy) are in bounds.
    const int x_begin = std::max(0, -off.dx);
    const int x_end = img.width - std::max(0, off.dx);
    const int y_begin = std::max(0, -off.dy);
    const int y_end = img.height - std::max(0, off.dy);
    if (x_begin >= x_end || y_begin >= y_end) {
        raise(Errc::NoValidPairs, "offset (" + std::to_string(off.dx) + ", " +
                                      std::to_string(off.dy) + ") exceeds image extent " +
                                      std::to_string(img.width) + "x" +
                                      std::to_string(img.height));
    }

    // Integer counts first; symmetry is exact on the count table.
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(levels) * levels, 0);
    const std::size_t stride = static_cast<std::size_t>(img.width);
    const std::ptrdiff_t pair_step = static_cast<std::ptrdiff_t>(off.dy) * img.width + off.dx;
    for (int y = y_begin; y < y_end; ++y) {
        const std::uint8_t* row = img.data.data() + y * stride;
        for (int x = x_begin; x < x_end; ++x) {
            const std::uint8_t a = row[x];
            const std::uint8_t b = *(row + x + pair_step);
            counts[static_cast<std::size_t>(a) * levels + b] += 1;
            if (symmetric) {
                counts[static_cast<std::size_t>(b) * levels + a] += 1;
            }
        }
    }

    CooccurrenceMatrix out;
    out.levels = levels;
    out.pair_count = static_cast<std::uint64_t>(x_end - x_begin) *
                     static_cast<std::uint64_t>(y_end - y_begin) * (symmetric ? 2u : 1u);
    out.probs.resize(counts.size());
    const double norm = 1.0 / static_cast<double>(out.pair_count);
    for (std::size_t i = 0; i < counts.size(); ++i) {
        out.probs[i] = static_cast<double>(counts[i]) * norm;
    }
    return out;
}

double energy(const CooccurrenceMatrix& P) {
    require_normalized(P);
    double sum = 0.0;
    for (double p : P.probs) sum += p * p;
    return sum;
}

double contrast(const CooccurrenceMatrix& P) {
    require_normalized(P);
    const int g = P.levels;
    double sum = 0.0;
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
            const double d = static_cast<double>(i - j);
            sum += d * d * P.at(i, j);
        }
    }
    return sum;
}

double homogeneity(const CooccurrenceMatrix& P) {
    require_normalized(P);
    const int g = P.levels;
    double sum = 0.0;
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
            const double d = static_cast<double>(i - j);
            sum += P.at(i, j) / (1.0 + d * d);
        }
    }
    return sum;
}

double entropy(const CooccurrenceMatrix& P) {
    require_normalized(P);
    double sum = 0.0;
    for (double p : P.probs) {
        if (p > 0.0) sum -= p * std::log2(p);
    }
    return sum;
}

MarginalStats marginals(const CooccurrenceMatrix& P) {
    require_normalized(P);
    const int g = P.levels;
    std::vector<double> px(g, 0.0), py(g, 0.0);
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
            const double p = P.at(i, j);
            px[i] += p;
            py[j] += p;
        }
    }
    MarginalStats m;
    for (int i = 0; i < g; ++i) {
        m.mu_x += i * px[i];
        m.mu_y += i * py[i];
    }
    double vx = 0.0, vy = 0.0;
    for (int i = 0; i < g; ++i) {
        vx += (i - m.mu_x) * (i - m.mu_x) * px[i];
        vy += (i - m.mu_y) * (i - m.mu_y) * py[i];
    }
    m.sigma_x = std::sqrt(std::max(vx, 0.0));
    m.sigma_y = std::sqrt(std::max(vy, 0.0));
    return m;
}

double correlation(const CooccurrenceMatrix& P) {
    require_normalized(P);
    const MarginalStats m = marginals(P);
    const double denom = m.sigma_x * m.sigma_y;
    if (denom < 1e-12) {
        return 0.0;
    }
    const int g = P.levels;
    double cross = 0.0;
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
            cross += static_cast<double>(i) * j * P.at(i, j);
        }
    }
    return (cross - m.mu_x * m.mu_y) / denom;
}

std::vector<double> glcm_features(const QuantizedImage& img, const GlcmConfig& cfg) {
    validate_config(cfg);
    if (img.levels != cfg.levels) {
        raise(Errc::InvalidLevels, "image quantized to " + std::to_string(img.levels) +
                                       " levels but config expects " +
                                       std::to_string(cfg.levels));
    }

    const std::size_t n_angles = cfg.angles.size();
    std::vector<double> per_offset(n_angles * 5);
    for (std::size_t a = 0; a < n_angles; ++a) {
        const Offset scaled{cfg.angles[a].dx * cfg.distance, cfg.angles[a].dy * cfg.distance};
        const CooccurrenceMatrix P = cooccurrence(img, scaled, cfg.symmetric);
        per_offset[a * 5 + 0] = energy(P);
        per_offset[a * 5 + 1] = contrast(P);
        per_offset[a * 5 + 2] = homogeneity(P);
        per_offset[a * 5 + 3] = entropy(P);
        per_offset[a * 5 + 4] = correlation(P);
    }

    if (cfg.aggregation == GlcmAggregation::Concatenate) {
        return per_offset;
    }
    std::vector<double> mean(5, 0.0);
    for (std::size_t a = 0; a < n_angles; ++a) {
        for (int f = 0; f < 5; ++f) mean[f] += per_offset[a * 5 + f];
    }
    for (double& v : mean) v /= static_cast<double>(n_angles);
    return mean;
}

std::vector<std::string> glcm_feature_names(const GlcmConfig& cfg) {
    validate_config(cfg);
    std::vector<std::string> names;
    if (cfg.aggregation == GlcmAggregation::Mean) {
        for (const char* f : kGlcmFeatureNames) {
            names.push_back(std::string("glcm_") + f);
        }
        return names;
    }
    for (const Offset& off : cfg.angles) {
        const std::string suffix =
            "_dx" + std::to_string(off.dx * cfg.distance) + "_dy" +
            std::to_string(off.dy * cfg.distance);
        for (const char* f : kGlcmFeatureNames) {
            names.push_back(std::string("glcm_") + f + suffix);
        }
    }
    return names;
}

} // namespace texkit
