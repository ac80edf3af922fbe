#include <texkit/classifiers.hpp>

#include <texkit/error.hpp>

#include <algorithm>
#include <cmath>

namespace texkit {

Standardizer Standardizer::fit(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) {
        raise(Errc::EmptyTrainingSet, "cannot fit a standardizer on no rows");
    }
    const std::size_t dim = rows.front().size();
    Standardizer s;
    s.mean.assign(dim, 0.0);
    s.stddev.assign(dim, 0.0);
    const double inv_n = 1.0 / static_cast<double>(rows.size());
    for (const auto& row : rows) {
        for (std::size_t d = 0; d < dim; ++d) s.mean[d] += row[d];
    }
    for (std::size_t d = 0; d < dim; ++d) s.mean[d] *= inv_n;
    for (const auto& row : rows) {
        for (std::size_t d = 0; d < dim; ++d) {
            const double c = row[d] - s.mean[d];
            s.stddev[d] += c * c;
        }
    }
    for (std::size_t d = 0; d < dim; ++d) s.stddev[d] = std::sqrt(s.stddev[d] * inv_n);
    return s;
}

Standardizer Standardizer::passthrough() {
    return Standardizer{};
}

std::vector<double> Standardizer::transform(std::span<const double> x) const {
    std::vector<double> out(x.begin(), x.end());
    if (is_passthrough()) {
        return out;
    }
    for (std::size_t d = 0; d < out.size() && d < mean.size(); ++d) {
        out[d] -= mean[d];
        if (stddev[d] >= 1e-12) {
            out[d] /= stddev[d];
        }
    }
    return out;
}

std::vector<int> class_universe(const std::vector<int>& labels) {
    std::vector<int> classes(labels);
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    if (!classes.empty() && classes.front() < 0) {
        raise(Errc::InvalidArgument, "negative class labels are reserved");
    }
    return classes;
}

} // namespace texkit
