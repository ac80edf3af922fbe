#include <doctest.h>

#include "support/oracle.hpp"

#include <texkit/error.hpp>
#include <texkit/glcm.hpp>
#include <texkit/image.hpp>
#include <texkit/rng.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

using namespace texkit;

namespace {

QuantizedImage quant(int w, int h, int levels, std::vector<std::uint8_t> data) {
    QuantizedImage img;
    img.width = w;
    img.height = h;
    img.levels = levels;
    img.data = std::move(data);
    return img;
}

QuantizedImage random_quant(int w, int h, int levels, std::uint64_t seed) {
    QuantizedImage img = quant(w, h, levels, std::vector<std::uint8_t>(static_cast<std::size_t>(w) * h));
    Rng rng(seed);
    for (auto& p : img.data) p = static_cast<std::uint8_t>(rng.uniform_index(static_cast<std::uint64_t>(levels)));
    return img;
}

// Two-column stripes: pixel value is x mod 2.
QuantizedImage stripes(int w, int h) {
    QuantizedImage img = quant(w, h, 2, std::vector<std::uint8_t>(static_cast<std::size_t>(w) * h));
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            img.data[static_cast<std::size_t>(y) * w + x] = static_cast<std::uint8_t>(x % 2);
        }
    }
    return img;
}

bool close_rel(double a, double b, double tol = 1e-12) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

std::array<double, 5> five_features(const CooccurrenceMatrix& P) {
    return {energy(P), contrast(P), homogeneity(P), entropy(P), correlation(P)};
}

} // namespace

TEST_SUITE("glcm") {

TEST_CASE("horizontal pairs of a two-row image") {
    // rows: 0 0 / 1 1 -> horizontal pairs are (0,0) and (1,1)
    const QuantizedImage img = quant(2, 2, 2, {0, 0, 1, 1});
    const CooccurrenceMatrix P = cooccurrence(img, {1, 0}, true);
    CHECK(P.levels == 2);
    CHECK(P.pair_count == 4);
    CHECK(P.at(0, 0) == 0.5);
    CHECK(P.at(1, 1) == 0.5);
    CHECK(P.at(0, 1) == 0.0);
    CHECK(P.at(1, 0) == 0.0);

    const CooccurrenceMatrix A = cooccurrence(img, {1, 0}, false);
    CHECK(A.pair_count == 2);
    CHECK(A.at(0, 0) == 0.5);
    CHECK(A.at(1, 1) == 0.5);
}

TEST_CASE("checkerboard horizontal pairs are anti-diagonal") {
    const QuantizedImage img = quant(2, 2, 2, {0, 1, 1, 0});
    const CooccurrenceMatrix P = cooccurrence(img, {1, 0}, true);
    CHECK(P.at(0, 1) == 0.5);
    CHECK(P.at(1, 0) == 0.5);
    CHECK(P.at(0, 0) == 0.0);
    CHECK(P.at(1, 1) == 0.0);
}

TEST_CASE("asymmetric counting keeps direction") {
    // single row 0 1: offset (1,0) sees only the ordered pair (0,1)
    const QuantizedImage img = quant(2, 1, 2, {0, 1});
    const CooccurrenceMatrix A = cooccurrence(img, {1, 0}, false);
    CHECK(A.pair_count == 1);
    CHECK(A.at(0, 1) == 1.0);
    CHECK(A.at(1, 0) == 0.0);
    const CooccurrenceMatrix S = cooccurrence(img, {1, 0}, true);
    CHECK(S.at(0, 1) == 0.5);
    CHECK(S.at(1, 0) == 0.5);
}

TEST_CASE("pair_count equals anchor span times symmetry factor") {
    const QuantizedImage img = random_quant(5, 4, 4, 1);
    // dx=1: anchors x in [0,4); dy=-1: anchors y in [1,4)
    CHECK(cooccurrence(img, {1, -1}, true).pair_count == 4u * 3u * 2u);
    CHECK(cooccurrence(img, {1, -1}, false).pair_count == 4u * 3u);
}

TEST_CASE("feature values of the diagonal matrix") {
    const QuantizedImage img = quant(2, 2, 2, {0, 0, 1, 1});
    const CooccurrenceMatrix P = cooccurrence(img, {1, 0}, true);
    CHECK(energy(P) == 0.5);
    CHECK(contrast(P) == 0.0);
    CHECK(homogeneity(P) == 1.0);
    CHECK(entropy(P) == 1.0);
    const MarginalStats m = marginals(P);
    CHECK(m.mu_x == 0.5);
    CHECK(m.mu_y == 0.5);
    CHECK(m.sigma_x == 0.5);
    CHECK(m.sigma_y == 0.5);
    CHECK(correlation(P) == 1.0);
}

TEST_CASE("feature values of the anti-diagonal matrix") {
    const QuantizedImage img = quant(2, 2, 2, {0, 1, 1, 0});
    const CooccurrenceMatrix P = cooccurrence(img, {1, 0}, true);
    CHECK(energy(P) == 0.5);
    CHECK(contrast(P) == 1.0);
    CHECK(homogeneity(P) == 0.5);
    CHECK(entropy(P) == 1.0);
    CHECK(correlation(P) == -1.0);
}

TEST_CASE("feature values of the uniform 2x2 matrix") {
    CooccurrenceMatrix P;
    P.levels = 2;
    P.probs = {0.25, 0.25, 0.25, 0.25};
    P.pair_count = 4;
    CHECK(energy(P) == 0.25);
    CHECK(contrast(P) == 0.5);
    CHECK(homogeneity(P) == 0.75);
    CHECK(entropy(P) == 2.0);
    CHECK(correlation(P) == 0.0);
}

TEST_CASE("correlation of an asymmetric hand-built matrix") {
    CooccurrenceMatrix P;
    P.levels = 2;
    P.probs = {0.4, 0.1, 0.2, 0.3};
    P.pair_count = 10;
    const MarginalStats m = marginals(P);
    CHECK(m.mu_x == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m.mu_y == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(m.sigma_x == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m.sigma_y == doctest::Approx(std::sqrt(0.24)).epsilon(1e-12));
    // (E[ij] - mu_x mu_y) / (sigma_x sigma_y) = (0.3 - 0.2) / (0.5 sqrt(0.24))
    CHECK(correlation(P) == doctest::Approx(0.1 / (0.5 * std::sqrt(0.24))).epsilon(1e-12));
}

TEST_CASE("degenerate marginals force correlation to zero") {
    CooccurrenceMatrix P;
    P.levels = 2;
    P.probs = {1.0, 0.0, 0.0, 0.0};
    P.pair_count = 1;
    CHECK(correlation(P) == 0.0);
}

TEST_CASE("constant image features are [1, 0, 1, 0, 0]") {
    const GrayImage img = make_gray(16, 16, 128);
    const std::vector<double> f = glcm_features(quantize(img, 16), GlcmConfig{});
    REQUIRE(f.size() == 5);
    CHECK(f[0] == 1.0);
    CHECK(f[1] == 0.0);
    CHECK(f[2] == 1.0);
    CHECK(f[3] == 0.0);
    CHECK(f[4] == 0.0);
}

TEST_CASE("stripe image across the stripes") {
    const QuantizedImage img = stripes(8, 8);
    const CooccurrenceMatrix P = cooccurrence(img, {1, 0}, true);
    const auto f = five_features(P);
    CHECK(close_rel(f[0], 0.5));
    CHECK(close_rel(f[1], 1.0));
    CHECK(close_rel(f[2], 0.5));
    CHECK(close_rel(f[3], 1.0));
    CHECK(close_rel(f[4], -1.0));
}

TEST_CASE("stripe image along the stripes") {
    // Pairs along a stripe always see equal values, half of them 0 and half 1,
    // so P is diag(0.5, 0.5): energy 0.5, perfectly homogeneous, one bit of
    // entropy, correlation 1.
    const QuantizedImage img = stripes(8, 8);
    const CooccurrenceMatrix P = cooccurrence(img, {0, -1}, true);
    const auto f = five_features(P);
    CHECK(close_rel(f[0], 0.5));
    CHECK(f[1] == 0.0);
    CHECK(close_rel(f[2], 1.0));
    CHECK(close_rel(f[3], 1.0));
    CHECK(close_rel(f[4], 1.0));
}

TEST_CASE("random images agree with the pair-enumeration reference") {
    const Offset offsets[4] = {{1, 0}, {1, -1}, {0, -1}, {-1, -1}};
    Rng meta(2024);
    int compared = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int w = 2 + static_cast<int>(meta.uniform_index(15));
        const int h = 2 + static_cast<int>(meta.uniform_index(15));
        const int levels = 1 << (1 + meta.uniform_index(3)); // 2, 4, 8
        const QuantizedImage img = random_quant(w, h, levels, meta.next_u64());
        for (const Offset& off : offsets) {
            for (bool sym : {true, false}) {
                const CooccurrenceMatrix P = cooccurrence(img, off, sym);
                const auto ref_counts = oracle::enumerate_pairs(img, off.dx, off.dy, sym);
                REQUIRE(P.pair_count == ref_counts.total);
                double prob_sum = 0.0;
                for (int i = 0; i < levels; ++i) {
                    for (int j = 0; j < levels; ++j) {
                        const double ref_p =
                            static_cast<double>(ref_counts.table[static_cast<std::size_t>(i)]
                                                                [static_cast<std::size_t>(j)]) /
                            static_cast<double>(ref_counts.total);
                        REQUIRE(close_rel(P.at(i, j), ref_p));
                        prob_sum += P.at(i, j);
                        if (sym) REQUIRE(P.at(i, j) == P.at(j, i));
                    }
                }
                REQUIRE(close_rel(prob_sum, 1.0));
                const auto got = five_features(P);
                const auto want = oracle::glcm_features(ref_counts);
                for (int f = 0; f < 5; ++f) REQUIRE(close_rel(got[static_cast<std::size_t>(f)], want[static_cast<std::size_t>(f)]));
                ++compared;
            }
        }
    }
    CHECK(compared == 800);
}

TEST_CASE("feature ranges hold on random inputs") {
    Rng meta(77);
    for (int trial = 0; trial < 50; ++trial) {
        const int levels = 2 + static_cast<int>(meta.uniform_index(15));
        const QuantizedImage img = random_quant(12, 12, levels, meta.next_u64());
        const CooccurrenceMatrix P = cooccurrence(img, {1, 0}, true);
        CHECK(energy(P) > 0.0);
        CHECK(energy(P) <= 1.0 + 1e-12);
        CHECK(contrast(P) >= 0.0);
        CHECK(homogeneity(P) > 0.0);
        CHECK(homogeneity(P) <= 1.0 + 1e-12);
        CHECK(entropy(P) >= 0.0);
        CHECK(entropy(P) <= 2.0 * std::log2(static_cast<double>(levels)) + 1e-12);
        CHECK(correlation(P) >= -1.0 - 1e-9);
        CHECK(correlation(P) <= 1.0 + 1e-9);
    }
}

TEST_CASE("gray-level shift leaves difference-based features unchanged") {
    QuantizedImage a = random_quant(10, 10, 8, 99);
    for (auto& p : a.data) p = static_cast<std::uint8_t>(p % 4); // values in [0, 4)
    QuantizedImage b = a;
    for (auto& p : b.data) p = static_cast<std::uint8_t>(p + 4); // shift by 4
    const CooccurrenceMatrix Pa = cooccurrence(a, {1, 0}, true);
    const CooccurrenceMatrix Pb = cooccurrence(b, {1, 0}, true);
    CHECK(close_rel(energy(Pa), energy(Pb)));
    CHECK(close_rel(contrast(Pa), contrast(Pb)));
    CHECK(close_rel(homogeneity(Pa), homogeneity(Pb)));
    CHECK(close_rel(entropy(Pa), entropy(Pb)));
    CHECK(close_rel(correlation(Pa), correlation(Pb)));
    const MarginalStats ma = marginals(Pa);
    const MarginalStats mb = marginals(Pb);
    CHECK(close_rel(ma.mu_x + 4.0, mb.mu_x));
    CHECK(close_rel(ma.sigma_x, mb.sigma_x));
}

TEST_CASE("offsets beyond the image raise NoValidPairs") {
    const QuantizedImage img = random_quant(4, 4, 4, 3);
    CHECK_THROWS_AS(cooccurrence(img, {4, 0}, true), Error);
    CHECK_THROWS_AS(cooccurrence(img, {0, -4}, true), Error);
    CHECK_THROWS_AS(cooccurrence(img, {5, -1}, true), Error);
    try {
        cooccurrence(img, {4, 0}, true);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NoValidPairs);
    }
    // one-pixel overlap still works
    CHECK(cooccurrence(img, {3, -3}, true).pair_count == 2);
}

TEST_CASE("zero offset is rejected") {
    const QuantizedImage img = random_quant(4, 4, 4, 3);
    CHECK_THROWS_AS(cooccurrence(img, {0, 0}, true), Error);
}

TEST_CASE("mean aggregation averages the concatenated blocks") {
    const QuantizedImage img = random_quant(14, 9, 16, 11);
    GlcmConfig mean_cfg;
    GlcmConfig cat_cfg;
    cat_cfg.aggregation = GlcmAggregation::Concatenate;
    const std::vector<double> mean_f = glcm_features(img, mean_cfg);
    const std::vector<double> cat_f = glcm_features(img, cat_cfg);
    REQUIRE(mean_f.size() == 5);
    REQUIRE(cat_f.size() == 20);
    for (int f = 0; f < 5; ++f) {
        double avg = 0.0;
        for (int a = 0; a < 4; ++a) avg += cat_f[static_cast<std::size_t>(a * 5 + f)];
        avg /= 4.0;
        CHECK(close_rel(mean_f[static_cast<std::size_t>(f)], avg));
    }
}

TEST_CASE("distance scales every offset") {
    const QuantizedImage img = random_quant(12, 12, 8, 13);
    GlcmConfig cfg;
    cfg.levels = 8;
    cfg.distance = 2;
    cfg.angles = {{1, 0}, {0, -1}};
    cfg.aggregation = GlcmAggregation::Concatenate;
    const std::vector<double> f = glcm_features(img, cfg);
    const CooccurrenceMatrix P0 = cooccurrence(img, {2, 0}, true);
    const CooccurrenceMatrix P1 = cooccurrence(img, {0, -2}, true);
    const auto f0 = five_features(P0);
    const auto f1 = five_features(P1);
    REQUIRE(f.size() == 10);
    for (int i = 0; i < 5; ++i) {
        CHECK(f[static_cast<std::size_t>(i)] == f0[static_cast<std::size_t>(i)]);
        CHECK(f[static_cast<std::size_t>(i) + 5] == f1[static_cast<std::size_t>(i)]);
    }
}

TEST_CASE("feature names follow the aggregation") {
    GlcmConfig cfg; // mean
    CHECK(glcm_feature_names(cfg) ==
          std::vector<std::string>{"glcm_energy", "glcm_contrast", "glcm_homogeneity",
                                   "glcm_entropy", "glcm_correlation"});
    cfg.aggregation = GlcmAggregation::Concatenate;
    const auto names = glcm_feature_names(cfg);
    REQUIRE(names.size() == 20);
    CHECK(names[0] == "glcm_energy_dx1_dy0");
    CHECK(names[5] == "glcm_energy_dx1_dy-1");
    CHECK(names[14] == "glcm_correlation_dx0_dy-1");
    CHECK(names[19] == "glcm_correlation_dx-1_dy-1");
    cfg.distance = 3;
    CHECK(glcm_feature_names(cfg)[0] == "glcm_energy_dx3_dy0");
}

TEST_CASE("glcm_features rejects a levels mismatch") {
    const QuantizedImage img = random_quant(8, 8, 8, 2);
    GlcmConfig cfg; // expects 16 levels
    CHECK_THROWS_AS(glcm_features(img, cfg), Error);
    try {
        glcm_features(img, cfg);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InvalidLevels);
    }
}

TEST_CASE("config validation rejects degenerate settings") {
    const QuantizedImage img = random_quant(8, 8, 16, 2);
    GlcmConfig cfg;
    cfg.angles.clear();
    CHECK_THROWS_AS(glcm_features(img, cfg), Error);
    cfg = GlcmConfig{};
    cfg.angles.push_back({0, 0});
    CHECK_THROWS_AS(glcm_features(img, cfg), Error);
    cfg = GlcmConfig{};
    cfg.distance = 0;
    CHECK_THROWS_AS(glcm_features(img, cfg), Error);
}

} // TEST_SUITE("glcm")
