// Microbenchmarks for the extraction hot path: co-occurrence counting, the
// five matrix features, and the full per-image feature vector.
//
// Run: build/benchmarks/texkit_bench [--benchmark_filter=...]

#include <texkit/glcm.hpp>
#include <texkit/histogram.hpp>
#include <texkit/image.hpp>
#include <texkit/pipeline.hpp>
#include <texkit/rng.hpp>

#include <benchmark/benchmark.h>

#include <cstdint>

namespace {

texkit::GrayImage random_gray(std::uint64_t seed, int side) {
    texkit::Rng rng(seed);
    texkit::GrayImage img = texkit::make_gray(side, side);
    for (std::uint8_t& p : img.data) {
        p = static_cast<std::uint8_t>(rng.uniform_index(256));
    }
    return img;
}

texkit::QuantizedImage random_quantized(std::uint64_t seed, int side, int levels) {
    return texkit::quantize(random_gray(seed, side), levels,
                            texkit::QuantizeMode::Uniform);
}

// state.range(0) = image side, state.range(1) = gray levels
void BM_Cooccurrence(benchmark::State& state) {
    const texkit::QuantizedImage img = random_quantized(
        1, static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(texkit::cooccurrence(img, {1, 0}, true));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_Cooccurrence)->Args({64, 16})->Args({256, 16})->Args({256, 64});

void BM_MatrixFeatures(benchmark::State& state) {
    const texkit::QuantizedImage img =
        random_quantized(2, 64, static_cast<int>(state.range(0)));
    const texkit::CooccurrenceMatrix P = texkit::cooccurrence(img, {1, 0}, true);
    for (auto _ : state) {
        benchmark::DoNotOptimize(texkit::energy(P));
        benchmark::DoNotOptimize(texkit::contrast(P));
        benchmark::DoNotOptimize(texkit::homogeneity(P));
        benchmark::DoNotOptimize(texkit::entropy(P));
        benchmark::DoNotOptimize(texkit::correlation(P));
    }
}
BENCHMARK(BM_MatrixFeatures)->Arg(16)->Arg(64)->Arg(256);

// Four offsets, mean aggregation: the default extraction kernel.
void BM_GlcmFeatures(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    const texkit::QuantizedImage img = random_quantized(3, side, 16);
    const texkit::GlcmConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(texkit::glcm_features(img, cfg));
    }
    state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_GlcmFeatures)->Arg(64)->Arg(256);

void BM_Histogram(benchmark::State& state) {
    const texkit::GrayImage img = random_gray(4, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(texkit::histogram(img, 16));
    }
}
BENCHMARK(BM_Histogram)->Arg(64)->Arg(256);

void BM_Resize(benchmark::State& state) {
    const texkit::GrayImage img = random_gray(5, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(texkit::resize(img, 64, 64));
    }
}
BENCHMARK(BM_Resize)->Arg(256)->Arg(1024);

// Whole per-image pipeline: resize, quantize, GLCM block, histogram block.
void BM_ImageFeatures(benchmark::State& state) {
    const texkit::GrayImage img = random_gray(6, static_cast<int>(state.range(0)));
    texkit::PipelineConfig cfg;
    cfg.glcm.aggregation = state.range(1) == 0 ? texkit::GlcmAggregation::Mean
                                               : texkit::GlcmAggregation::Concatenate;
    for (auto _ : state) {
        benchmark::DoNotOptimize(texkit::image_features(img, cfg));
    }
}
BENCHMARK(BM_ImageFeatures)->Args({64, 0})->Args({64, 1})->Args({256, 1});

} // namespace

BENCHMARK_MAIN();
