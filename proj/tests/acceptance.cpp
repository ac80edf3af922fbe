// Acceptance gate: one line per criterion, "PASS <name>" or
// "FAIL <name>: <detail>". The exit code is the number of failed criteria,
// so the harness can run this binary directly.

#include <texkit/classifiers.hpp>
#include <texkit/ensemble.hpp>
#include <texkit/error.hpp>
#include <texkit/evaluation.hpp>
#include <texkit/glcm.hpp>
#include <texkit/image.hpp>
#include <texkit/model_io.hpp>
#include <texkit/pipeline.hpp>
#include <texkit/prediction.hpp>
#include <texkit/rng.hpp>
#include <texkit/svg_report.hpp>
#include <texkit/synth.hpp>

#include "support/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using texkit::ClassifierKind;
using texkit::ClassifierRun;
using texkit::CooccurrenceMatrix;
using texkit::ConfusionMatrix;
using texkit::ExperimentResult;
using texkit::FeatureTable;
using texkit::GrayImage;
using texkit::MetricsReport;
using texkit::Offset;
using texkit::PipelineConfig;
using texkit::Prediction;
using texkit::PredictionMatrix;
using texkit::QuantizedImage;
using texkit::Rng;
using texkit::SyntheticDataset;
using texkit::TrainedModel;

/// A criterion reports failure by returning a message; nullopt means pass.
using Criterion = std::function<std::optional<std::string>()>;

struct Check {
    std::string name;
    double budget_seconds;
    Criterion run;
};

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

QuantizedImage random_quant(Rng& rng, int w, int h, int levels) {
    QuantizedImage img;
    img.width = w;
    img.height = h;
    img.levels = levels;
    img.data.resize(static_cast<std::size_t>(w) * h);
    for (auto& p : img.data) {
        p = static_cast<std::uint8_t>(rng.uniform_index(static_cast<std::uint64_t>(levels)));
    }
    return img;
}

std::array<double, 5> library_features(const CooccurrenceMatrix& P) {
    return {texkit::energy(P), texkit::contrast(P), texkit::homogeneity(P),
            texkit::entropy(P), texkit::correlation(P)};
}

bool reports_equal(const MetricsReport& a, const MetricsReport& b) {
    return a.accuracy == b.accuracy && a.precision == b.precision && a.recall == b.recall &&
           a.f1 == b.f1 && a.macro_precision == b.macro_precision &&
           a.macro_recall == b.macro_recall && a.macro_f1 == b.macro_f1 &&
           a.micro_precision == b.micro_precision && a.micro_recall == b.micro_recall &&
           a.micro_f1 == b.micro_f1;
}

const ClassifierRun& run_by_id(const ExperimentResult& result, const std::string& id) {
    for (const ClassifierRun& run : result.runs) {
        if (run.id == id) return run;
    }
    throw std::runtime_error("missing run '" + id + "'");
}

// ---------------------------------------------------------------------------
// Criterion bodies
// ---------------------------------------------------------------------------

std::optional<std::string> cascade_identity() {
    PipelineConfig cfg;
    cfg.resize_w = 24;
    cfg.resize_h = 24;
    cfg.forest.n_trees = 15;
    cfg.seed = 42;
    const FeatureTable features =
        texkit::synthetic_features(texkit::make_synthetic_dataset(42, 10, 24), cfg, 2);
    const ExperimentResult result = texkit::run_experiment(features, cfg, 2);

    const ClassifierRun& rf = run_by_id(result, "rf");
    const ClassifierRun& cc = run_by_id(result, "cc");
    if (cc.cm.counts != rf.cm.counts || cc.cm.has_unknown != rf.cm.has_unknown) {
        return "confusion matrices differ between cc and rf at tau=0";
    }
    if (!reports_equal(cc.report, rf.report)) {
        return "metric reports differ between cc and rf at tau=0";
    }
    return std::nullopt;
}

std::optional<std::string> glcm_oracle_suite() {
    Rng meta(20240816);
    const Offset offsets[] = {{1, 0}, {1, -1}, {0, -1}, {-1, -1}};
    const int level_choices[] = {2, 4, 8};
    for (int trial = 0; trial < 100; ++trial) {
        const int w = 2 + static_cast<int>(meta.uniform_index(15)); // 2..16
        const int h = 2 + static_cast<int>(meta.uniform_index(15));
        const int levels = level_choices[meta.uniform_index(3)];
        const QuantizedImage img = random_quant(meta, w, h, levels);
        for (const Offset& off : offsets) {
            for (bool symmetric : {false, true}) {
                CooccurrenceMatrix P;
                try {
                    P = texkit::cooccurrence(img, off, symmetric);
                } catch (const texkit::Error&) {
                    continue; // offset larger than the image: nothing to compare
                }
                const oracle::PairCounts counts =
                    oracle::enumerate_pairs(img, off.dx, off.dy, symmetric);
                if (P.pair_count != counts.total) {
                    return "pair count mismatch on trial " + std::to_string(trial);
                }
                const std::array<double, 5> expect = oracle::glcm_features(counts);
                const std::array<double, 5> got = library_features(P);
                for (int f = 0; f < 5; ++f) {
                    if (!close_rel(got[static_cast<std::size_t>(f)],
                                   expect[static_cast<std::size_t>(f)], 1e-12)) {
                        return std::string(texkit::kGlcmFeatureNames[f]) + " trial " +
                               std::to_string(trial) + ": got " +
                               fmt(got[static_cast<std::size_t>(f)]) + ", oracle " +
                               fmt(expect[static_cast<std::size_t>(f)]);
                    }
                }
            }
        }
    }
    return std::nullopt;
}

std::optional<std::string> analytic_fixtures() {
    const auto check = [](const char* what, const QuantizedImage& img, Offset off,
                          const std::array<double, 5>& expect)
        -> std::optional<std::string> {
        const CooccurrenceMatrix P = texkit::cooccurrence(img, off, true);
        const std::array<double, 5> got = library_features(P);
        for (int f = 0; f < 5; ++f) {
            if (std::abs(got[static_cast<std::size_t>(f)] -
                         expect[static_cast<std::size_t>(f)]) > 1e-12) {
                return std::string(what) + ": " + texkit::kGlcmFeatureNames[f] + " = " +
                       fmt(got[static_cast<std::size_t>(f)]) + ", expected " +
                       fmt(expect[static_cast<std::size_t>(f)]);
            }
        }
        return std::nullopt;
    };

    QuantizedImage constant;
    constant.width = 6;
    constant.height = 6;
    constant.levels = 4;
    constant.data.assign(36, 3);
    if (auto fail = check("constant", constant, {1, 0}, {1, 0, 1, 0, 0})) return fail;

    QuantizedImage stripes; // columns alternate 0, 1, 0, 1, ...
    stripes.width = 8;
    stripes.height = 8;
    stripes.levels = 2;
    stripes.data.resize(64);
    for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 8; ++x) {
            stripes.data[static_cast<std::size_t>(y) * 8 + x] =
                static_cast<std::uint8_t>(x % 2);
        }
    }
    // Across the stripes every pair straddles the two levels; along them every
    // pair stays inside one level.
    if (auto fail = check("stripes across", stripes, {1, 0}, {0.5, 1.0, 0.5, 1.0, -1.0})) {
        return fail;
    }
    if (auto fail = check("stripes along", stripes, {0, -1}, {0.5, 0.0, 1.0, 1.0, 1.0})) {
        return fail;
    }
    return std::nullopt;
}

std::optional<std::string> combiner_truth_tables() {
    const auto pred = [](int label, std::size_t position) {
        return Prediction{label, 0.55 + 0.05 * static_cast<double>(position)};
    };

    // Voting: every assignment of 3 labels to 5 models.
    for (int code = 0; code < 243; ++code) {
        PredictionMatrix pm;
        pm.rows.emplace_back();
        int rest = code;
        for (std::size_t m = 0; m < 5; ++m) {
            pm.rows[0].push_back(pred(rest % 3, m));
            rest /= 3;
        }
        const Prediction got = texkit::voting_ensemble(pm)[0];
        const Prediction want = oracle::vote_reference(pm.rows[0]);
        if (got.label != want.label || got.confidence != want.confidence) {
            return "voting case " + std::to_string(code) + ": got label " +
                   std::to_string(got.label) + ", oracle " + std::to_string(want.label);
        }
    }

    // Cascade: every assignment of {3 labels + Unknown} to 5 models; the
    // voting combiner is checked on the same rows for good measure.
    for (int code = 0; code < 1024; ++code) {
        PredictionMatrix pm;
        pm.rows.emplace_back();
        int rest = code;
        for (std::size_t m = 0; m < 5; ++m) {
            const int symbol = rest % 4;
            rest /= 4;
            if (symbol == 3) {
                pm.rows[0].push_back(Prediction{texkit::kUnknownLabel, 0.25});
            } else {
                pm.rows[0].push_back(pred(symbol, m));
            }
        }
        const Prediction got = texkit::combined_classifier(pm)[0];
        const Prediction want = oracle::cascade_reference(pm.rows[0]);
        if (got.label != want.label || got.confidence != want.confidence) {
            return "cascade case " + std::to_string(code) + ": got label " +
                   std::to_string(got.label) + ", oracle " + std::to_string(want.label);
        }
        const Prediction vote = texkit::voting_ensemble(pm)[0];
        const Prediction vote_want = oracle::vote_reference(pm.rows[0]);
        if (vote.label != vote_want.label || vote.confidence != vote_want.confidence) {
            return "voting-with-unknown case " + std::to_string(code);
        }
    }
    return std::nullopt;
}

std::optional<std::string> metric_identities() {
    Rng rng(7777);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto classes = 2 + rng.uniform_index(5); // 2..6
        ConfusionMatrix cm;
        cm.class_count = classes;
        cm.has_unknown = trial % 3 == 0;
        cm.counts.assign(classes * cm.col_count(), 0);
        for (auto& c : cm.counts) c = rng.uniform_index(101);
        cm.counts[0] += 1; // guarantee a nonzero total

        const MetricsReport m = texkit::metrics(cm);

        std::uint64_t trace = 0;
        std::uint64_t total = 0;
        for (std::size_t t = 0; t < classes; ++t) {
            trace += cm.at(t, t);
            for (std::size_t p = 0; p < cm.col_count(); ++p) total += cm.at(t, p);
        }
        if (m.accuracy != static_cast<double>(trace) / static_cast<double>(total)) {
            return "accuracy is not trace/total on trial " + std::to_string(trial);
        }

        for (std::size_t c = 0; c < classes; ++c) {
            const double p = m.precision[c];
            const double r = m.recall[c];
            const double expected_f1 = p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
            if (std::abs(m.f1[c] - expected_f1) > 1e-15) {
                return "f1 is not the harmonic mean on trial " + std::to_string(trial);
            }
            for (double v : {p, r, m.f1[c]}) {
                if (!(v >= 0.0 && v <= 1.0)) {
                    return "metric out of [0,1] on trial " + std::to_string(trial);
                }
            }
        }
        if (!(m.accuracy >= 0.0 && m.accuracy <= 1.0)) {
            return "accuracy out of [0,1] on trial " + std::to_string(trial);
        }

        // Permutation equivariance: relabel classes by a random permutation.
        std::vector<std::size_t> perm(classes);
        for (std::size_t i = 0; i < classes; ++i) perm[i] = i;
        rng.shuffle(perm);
        ConfusionMatrix permuted;
        permuted.class_count = classes;
        permuted.has_unknown = cm.has_unknown;
        permuted.counts.assign(cm.counts.size(), 0);
        for (std::size_t t = 0; t < classes; ++t) {
            for (std::size_t p = 0; p < cm.col_count(); ++p) {
                const std::size_t tp = perm[t];
                const std::size_t pp = p < classes ? perm[p] : p;
                permuted.counts[tp * cm.col_count() + pp] = cm.at(t, p);
            }
        }
        const MetricsReport mp = texkit::metrics(permuted);
        if (std::abs(mp.accuracy - m.accuracy) > 1e-12 ||
            std::abs(mp.macro_f1 - m.macro_f1) > 1e-12) {
            return "aggregate metrics changed under permutation on trial " +
                   std::to_string(trial);
        }
        for (std::size_t c = 0; c < classes; ++c) {
            if (std::abs(mp.precision[perm[c]] - m.precision[c]) > 1e-12 ||
                std::abs(mp.recall[perm[c]] - m.recall[c]) > 1e-12) {
                return "per-class metrics did not follow the permutation on trial " +
                       std::to_string(trial);
            }
        }
    }
    return std::nullopt;
}

// Shared by the benchmark and determinism criteria.
struct BenchmarkContext {
    SyntheticDataset data;
    PipelineConfig cfg;
    FeatureTable features;
    ExperimentResult result;
};
std::optional<BenchmarkContext> g_benchmark;

std::optional<std::string> synthetic_benchmark() {
    BenchmarkContext ctx;
    ctx.data = texkit::make_synthetic_dataset(42, 100, 64);
    ctx.cfg = texkit::benchmark_config(); // seed 42, 80/20 split, tau = 0
    ctx.features = texkit::synthetic_features(ctx.data, ctx.cfg, 4);
    ctx.result = texkit::run_experiment(ctx.features, ctx.cfg, 4);

    const double rf = run_by_id(ctx.result, "rf").report.accuracy;
    const double ve = run_by_id(ctx.result, "ve").report.accuracy;
    const double svm = run_by_id(ctx.result, "svm").report.accuracy;
    const double nb = run_by_id(ctx.result, "nb").report.accuracy;
    const ClassifierRun& cc = run_by_id(ctx.result, "cc");
    const ClassifierRun& rf_run = run_by_id(ctx.result, "rf");

    std::ostringstream have;
    have << "rf=" << rf << " ve=" << ve << " svm=" << svm << " nb=" << nb;
    if (rf < 0.95) return "rf accuracy below 0.95 (" + have.str() + ")";
    if (cc.cm.counts != rf_run.cm.counts || !reports_equal(cc.report, rf_run.report)) {
        return "cc does not reproduce rf at tau=0 (" + have.str() + ")";
    }
    if (ve < 0.85) return "ve accuracy below 0.85 (" + have.str() + ")";
    if (svm < 0.50) return "svm accuracy below 0.50 (" + have.str() + ")";
    if (nb < 0.50) return "nb accuracy below 0.50 (" + have.str() + ")";

    g_benchmark = std::move(ctx);
    return std::nullopt;
}

std::optional<std::string> determinism() {
    if (!g_benchmark.has_value()) {
        return "benchmark context unavailable (synthetic-benchmark failed)";
    }
    const BenchmarkContext& ctx = *g_benchmark;

    const FeatureTable serial = texkit::synthetic_features(ctx.data, ctx.cfg, 1);
    const FeatureTable threaded = texkit::synthetic_features(ctx.data, ctx.cfg, 8);
    if (serial.x != threaded.x || serial.x != ctx.features.x) {
        return "feature extraction depends on the thread count";
    }

    const ExperimentResult one = texkit::run_experiment(serial, ctx.cfg, 1);
    const ExperimentResult eight = texkit::run_experiment(threaded, ctx.cfg, 8);
    const std::string json_one = texkit::result_to_json(one);
    if (json_one != texkit::result_to_json(eight)) {
        return "result JSON differs between --threads 1 and --threads 8";
    }
    if (json_one != texkit::result_to_json(ctx.result)) {
        return "result JSON differs between repeat runs";
    }

    for (std::size_t i = 0; i < one.runs.size(); ++i) {
        const std::string a = texkit::confusion_svg(one.runs[i].cm, one.class_names,
                                                    "Confusion matrix (" + one.runs[i].id + ")");
        const std::string b = texkit::confusion_svg(eight.runs[i].cm, eight.class_names,
                                                    "Confusion matrix (" + eight.runs[i].id + ")");
        if (a != b) return "confusion SVG differs for run " + one.runs[i].id;
    }
    if (texkit::class_bars_svg(one.runs, one.class_names) !=
        texkit::class_bars_svg(eight.runs, eight.class_names)) {
        return "per-class recall SVG differs between runs";
    }
    return std::nullopt;
}

std::optional<std::string> model_persistence() {
    // Three separable clusters in 6 dimensions.
    Rng rng(4242);
    texkit::LabeledDataset train;
    train.schema_id = "0123456789abcdef";
    for (int c = 0; c < 3; ++c) {
        for (int i = 0; i < 30; ++i) {
            std::vector<double> x(6);
            for (std::size_t d = 0; d < 6; ++d) x[d] = 8.0 * c + rng.normal();
            train.x.push_back(std::move(x));
            train.y.push_back(c);
        }
    }

    texkit::ForestParams forest;
    forest.n_trees = 12;
    texkit::SvmParams svm;
    svm.epochs = 40;

    std::vector<TrainedModel> models;
    models.push_back(texkit::fit_rf(train, forest, 9, 2));
    models.push_back(texkit::fit_svm(train, svm, 10));
    models.push_back(texkit::fit_knn(train, texkit::KnnParams{3}));
    models.push_back(texkit::fit_nb(train));
    models.push_back(texkit::fit_tree(train, texkit::TreeParams{8, 2}));

    std::vector<std::vector<double>> queries;
    for (int i = 0; i < 100; ++i) {
        std::vector<double> x(6);
        for (std::size_t d = 0; d < 6; ++d) x[d] = rng.uniform_real() * 24.0 - 4.0;
        queries.push_back(std::move(x));
    }

    const std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "texkit_acceptance_models";
    std::filesystem::create_directories(dir);
    std::optional<std::string> failure;
    for (const TrainedModel& model : models) {
        const std::string id(texkit::algorithm_id(model));
        const std::string path = (dir / (id + ".json")).string();
        texkit::save_model(model, path);
        const TrainedModel loaded = texkit::load_model(path);
        for (const std::vector<double>& q : queries) {
            const Prediction a = texkit::predict(model, q);
            const Prediction b = texkit::predict(loaded, q);
            if (a.label != b.label || a.confidence != b.confidence) {
                failure = id + " predictions changed across save/load";
                break;
            }
        }
        if (failure.has_value()) break;
    }
    std::filesystem::remove_all(dir);
    return failure;
}

} // namespace

int main() {
    const std::vector<Check> checks = {
        {"cascade-identity", 1.0, cascade_identity},
        {"glcm-oracle-suite", 5.0, glcm_oracle_suite},
        {"analytic-fixtures", 1.0, analytic_fixtures},
        {"combiner-truth-tables", 1.0, combiner_truth_tables},
        {"metric-identities", 5.0, metric_identities},
        {"synthetic-benchmark", 60.0, synthetic_benchmark},
        {"determinism", 120.0, determinism},
        {"model-persistence", 5.0, model_persistence},
    };

    int failures = 0;
    for (const Check& check : checks) {
        std::optional<std::string> failure;
        const auto start = std::chrono::steady_clock::now();
        try {
            failure = check.run();
        } catch (const std::exception& e) {
            failure = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!failure.has_value() && elapsed > check.budget_seconds) {
            failure = "took " + fmt(elapsed) + "s, budget " + fmt(check.budget_seconds) + "s";
        }
        if (failure.has_value()) {
            std::printf("FAIL %s: %s\n", check.name.c_str(), failure->c_str());
            failures += 1;
        } else {
            std::printf("PASS %s (%.2fs)\n", check.name.c_str(), elapsed);
        }
    }
    return failures;
}
