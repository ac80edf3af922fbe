#include <texkit/evaluation.hpp>

#include <texkit/classifiers.hpp>
#include <texkit/error.hpp>
#include <texkit/rng.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace texkit {

SplitIndices stratified_split(const std::vector<int>& labels, double test_fraction,
                              std::uint64_t seed) {
    if (!(test_fraction > 0.0) || !(test_fraction < 1.0)) {
        raise(Errc::InvalidArgument, "test_fraction must lie strictly between 0 and 1");
    }
    const std::vector<int> classes = class_universe(labels);
    const SeedTree seeds(seed);

    SplitIndices split;
    for (int cls : classes) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == cls) members.push_back(i);
        }
        if (members.size() < 2) {
            raise(Errc::ClassTooSmall, "class " + std::to_string(cls) +
                                           " has fewer than 2 samples; cannot split");
        }
        Rng rng = seeds.rng("class", static_cast<std::uint64_t>(cls));
        rng.shuffle(members);

        const auto n = members.size();
        auto n_test = static_cast<std::size_t>(
            std::llround(static_cast<double>(n) * test_fraction));
        n_test = std::clamp<std::size_t>(n_test, 1, n - 1);
        split.test.insert(split.test.end(), members.begin(),
                          members.begin() + static_cast<long>(n_test));
        split.train.insert(split.train.end(), members.begin() + static_cast<long>(n_test),
                           members.end());
    }
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.test.begin(), split.test.end());
    return split;
}

std::uint64_t ConfusionMatrix::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

ConfusionMatrix confusion(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                          std::size_t class_count) {
    if (y_true.size() != y_pred.size()) {
        raise(Errc::LengthMismatch, "got " + std::to_string(y_true.size()) +
                                        " true labels vs " + std::to_string(y_pred.size()) +
                                        " predictions");
    }
    ConfusionMatrix cm;
    cm.class_count = class_count;
    cm.has_unknown = std::find(y_pred.begin(), y_pred.end(), kUnknownLabel) != y_pred.end();
    cm.counts.assign(class_count * cm.col_count(), 0);
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const int t = y_true[i];
        const int p = y_pred[i];
        if (t < 0 || static_cast<std::size_t>(t) >= class_count) {
            raise(Errc::UnknownTrueLabel,
                  "true label " + std::to_string(t) + " is outside the class universe");
        }
        if (p != kUnknownLabel && (p < 0 || static_cast<std::size_t>(p) >= class_count)) {
            raise(Errc::InvalidArgument,
                  "predicted label " + std::to_string(p) + " is outside the class universe");
        }
        const std::size_t col =
            p == kUnknownLabel ? class_count : static_cast<std::size_t>(p);
        cm.at(static_cast<std::size_t>(t), col) += 1;
    }
    return cm;
}

ConfusionMatrix confusion(const std::vector<int>& y_true,
                          const std::vector<Prediction>& y_pred, std::size_t class_count) {
    std::vector<int> labels(y_pred.size());
    std::transform(y_pred.begin(), y_pred.end(), labels.begin(),
                   [](const Prediction& p) { return p.label; });
    return confusion(y_true, labels, class_count);
}

MetricsReport metrics(const ConfusionMatrix& cm) {
    const std::uint64_t total = cm.total();
    if (cm.class_count == 0 || total == 0) {
        raise(Errc::EmptyMatrix, "confusion matrix has no samples");
    }
    const std::size_t k = cm.class_count;
    MetricsReport report;
    report.precision.resize(k);
    report.recall.resize(k);
    report.f1.resize(k);

    const auto ratio = [](std::uint64_t num, std::uint64_t den) {
        return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
    };

    std::uint64_t trace = 0;
    std::uint64_t tp_sum = 0;
    std::uint64_t fp_sum = 0;
    std::uint64_t fn_sum = 0;
    for (std::size_t c = 0; c < k; ++c) {
        const std::uint64_t tp = cm.at(c, c);
        std::uint64_t row = 0;
        std::uint64_t col = 0;
        for (std::size_t p = 0; p < cm.col_count(); ++p) row += cm.at(c, p);
        for (std::size_t t = 0; t < k; ++t) col += cm.at(t, c);
        const std::uint64_t fp = col - tp;
        const std::uint64_t fn = row - tp;

        report.precision[c] = ratio(tp, tp + fp);
        report.recall[c] = ratio(tp, tp + fn);
        const double pr = report.precision[c] + report.recall[c];
        report.f1[c] = pr == 0.0 ? 0.0 : 2.0 * report.precision[c] * report.recall[c] / pr;

        trace += tp;
        tp_sum += tp;
        fp_sum += fp;
        fn_sum += fn;
    }
    report.accuracy = ratio(trace, total);
    report.macro_precision =
        std::accumulate(report.precision.begin(), report.precision.end(), 0.0) /
        static_cast<double>(k);
    report.macro_recall = std::accumulate(report.recall.begin(), report.recall.end(), 0.0) /
                          static_cast<double>(k);
    report.macro_f1 =
        std::accumulate(report.f1.begin(), report.f1.end(), 0.0) / static_cast<double>(k);
    report.micro_precision = ratio(tp_sum, tp_sum + fp_sum);
    report.micro_recall = ratio(tp_sum, tp_sum + fn_sum);
    const double mpr = report.micro_precision + report.micro_recall;
    report.micro_f1 =
        mpr == 0.0 ? 0.0 : 2.0 * report.micro_precision * report.micro_recall / mpr;
    return report;
}

} // namespace texkit
