#include <texkit/synth.hpp>

#include <texkit/error.hpp>
#include <texkit/image_io.hpp>
#include <texkit/parallel.hpp>
#include <texkit/rng.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace texkit {

namespace {

std::uint8_t clamp_byte(double v) {
    return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

GrayImage noise_image(Rng& rng, int side) {
    GrayImage img = make_gray(side, side);
    for (std::uint8_t& p : img.data) p = clamp_byte(128.0 + 10.0 * rng.normal());
    return img;
}

GrayImage stripe_image(Rng& rng, int side, bool vertical) {
    const std::uint64_t phase = rng.uniform_index(4);
    const double dark = 64.0 + 8.0 * rng.normal();
    const double light = 192.0 + 8.0 * rng.normal();
    GrayImage img = make_gray(side, side);
    for (int y = 0; y < side; ++y) {
        for (int x = 0; x < side; ++x) {
            const std::uint64_t along = static_cast<std::uint64_t>(vertical ? x : y) + phase;
            const double base = along % 4 < 2 ? dark : light;
            img.at(x, y) = clamp_byte(base + 12.0 * rng.normal());
        }
    }
    return img;
}

GrayImage checker_image(Rng& rng, int side) {
    const std::uint64_t phase = rng.uniform_index(2);
    const double dark = 64.0 + 8.0 * rng.normal();
    const double light = 192.0 + 8.0 * rng.normal();
    GrayImage img = make_gray(side, side);
    for (int y = 0; y < side; ++y) {
        for (int x = 0; x < side; ++x) {
            const std::uint64_t parity = (static_cast<std::uint64_t>(x + y) + phase) % 2;
            const double base = parity == 0 ? dark : light;
            img.at(x, y) = clamp_byte(base + 12.0 * rng.normal());
        }
    }
    return img;
}

} // namespace

SyntheticDataset make_synthetic_dataset(std::uint64_t seed, int per_class, int side) {
    if (per_class < 1 || side < 4) {
        raise(Errc::InvalidArgument, "need per_class >= 1 and side >= 4");
    }
    SyntheticDataset data;
    data.class_names = {"c0_noise", "c1_vstripe", "c2_hstripe", "c3_checker"};
    const SeedTree root(seed);
    for (int cls = 0; cls < 4; ++cls) {
        const SeedTree per_class_seeds(root.child("class", static_cast<std::uint64_t>(cls)));
        for (int i = 0; i < per_class; ++i) {
            Rng rng = per_class_seeds.rng("image", static_cast<std::uint64_t>(i));
            switch (cls) {
                case 0: data.images.push_back(noise_image(rng, side)); break;
                case 1: data.images.push_back(stripe_image(rng, side, true)); break;
                case 2: data.images.push_back(stripe_image(rng, side, false)); break;
                default: data.images.push_back(checker_image(rng, side)); break;
            }
            data.labels.push_back(cls);
        }
    }
    return data;
}

std::string write_synthetic_dataset(const std::string& dir, std::uint64_t seed,
                                    int per_class, int side) {
    const SyntheticDataset data = make_synthetic_dataset(seed, per_class, side);
    const std::filesystem::path root(dir);
    std::error_code ec;
    std::filesystem::create_directories(root, ec);
    if (ec) {
        raise(Errc::IoError, "cannot create directory '" + dir + "': " + ec.message());
    }

    std::string manifest = "path,label\n";
    int index_in_class = 0;
    int last_class = -1;
    for (std::size_t i = 0; i < data.images.size(); ++i) {
        const int cls = data.labels[i];
        if (cls != last_class) {
            index_in_class = 0;
            last_class = cls;
            std::filesystem::create_directories(
                root / data.class_names[static_cast<std::size_t>(cls)], ec);
            if (ec) {
                raise(Errc::IoError, "cannot create class directory: " + ec.message());
            }
        }
        char name[16];
        std::snprintf(name, sizeof(name), "%03d.pgm", index_in_class);
        index_in_class += 1;
        const std::string rel =
            data.class_names[static_cast<std::size_t>(cls)] + "/" + name;
        save_pgm(data.images[i], (root / rel).string());
        manifest += rel + "," + data.class_names[static_cast<std::size_t>(cls)] + "\n";
    }

    const std::string manifest_path = (root / "manifest.csv").string();
    std::ofstream out(manifest_path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << manifest) || !out.flush()) {
        raise(Errc::IoError, "cannot write manifest '" + manifest_path + "'");
    }
    return manifest_path;
}

FeatureTable synthetic_features(const SyntheticDataset& data, const PipelineConfig& cfg,
                                int threads) {
    FeatureTable table;
    table.config_fingerprint = config_fingerprint(cfg);
    table.schema = feature_schema(cfg);
    table.paths.resize(data.images.size());
    table.labels.resize(data.images.size());
    table.x.resize(data.images.size());
    std::vector<int> counter(data.class_names.size(), 0);
    for (std::size_t i = 0; i < data.images.size(); ++i) {
        const auto cls = static_cast<std::size_t>(data.labels[i]);
        char name[16];
        std::snprintf(name, sizeof(name), "%03d.pgm", counter[cls]);
        counter[cls] += 1;
        table.paths[i] = data.class_names[cls] + "/" + name;
        table.labels[i] = data.class_names[cls];
    }
    parallel_for(data.images.size(), threads,
                 [&](std::size_t i) { table.x[i] = image_features(data.images[i], cfg); });
    return table;
}

PipelineConfig benchmark_config() {
    PipelineConfig cfg;
    cfg.glcm.aggregation = GlcmAggregation::Concatenate;
    return cfg;
}

} // namespace texkit
