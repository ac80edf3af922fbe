#pragma once

#include <texkit/image.hpp>
#include <texkit/pipeline.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace texkit {

/// Four-class synthetic texture benchmark (100 images per class, 64x64):
/// c0 low-variance noise, c1 vertical stripes (period 4), c2 horizontal
/// stripes (period 4), c3 checkerboard (period 2). Labels sort in class-id
/// order, so dense ids match the generation classes everywhere.
struct SyntheticDataset {
    std::vector<GrayImage> images;
    std::vector<int> labels;
    std::vector<std::string> class_names;
};

SyntheticDataset make_synthetic_dataset(std::uint64_t seed, int per_class = 100,
                                        int side = 64);

/// Writes the images as PGM files in per-class subdirectories of `dir` plus a
/// `manifest.csv`; returns the manifest path.
std::string write_synthetic_dataset(const std::string& dir, std::uint64_t seed,
                                    int per_class = 100, int side = 64);

/// Extracts features of an in-memory dataset (no files involved).
FeatureTable synthetic_features(const SyntheticDataset& data, const PipelineConfig& cfg,
                                int threads = 1);

/// Benchmark configuration: defaults with concatenated per-offset GLCM
/// features. Mean aggregation over the default four angles is blind to
/// stripe orientation (the angle set maps onto itself under a 90-degree
/// rotation), so the benchmark keeps the offsets separate.
PipelineConfig benchmark_config();

} // namespace texkit
