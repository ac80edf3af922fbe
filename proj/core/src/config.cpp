#include <texkit/pipeline.hpp>

#include <texkit/error.hpp>
#include <texkit/rng.hpp>

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace texkit {

namespace {

using nlohmann::json;

constexpr int kConfigVersion = 1;

std::string aggregation_name(GlcmAggregation a) {
    return a == GlcmAggregation::Mean ? "mean" : "concatenate";
}

std::string quantize_name(QuantizeMode m) {
    return m == QuantizeMode::Uniform ? "uniform" : "minmax_stretch";
}

std::string max_features_name(FeatureSubsample f) {
    return f == FeatureSubsample::Sqrt ? "sqrt" : "all";
}

json feature_section(const PipelineConfig& cfg) {
    json angles = json::array();
    for (const Offset& o : cfg.glcm.angles) angles.push_back({o.dx, o.dy});
    return json{
        {"glcm",
         {{"aggregation", aggregation_name(cfg.glcm.aggregation)},
          {"angles", angles},
          {"distance", cfg.glcm.distance},
          {"levels", cfg.glcm.levels},
          {"symmetric", cfg.glcm.symmetric}}},
        {"hist_bins", cfg.hist_bins},
        {"quantize", quantize_name(cfg.quantize)},
        {"resize", {cfg.resize_w, cfg.resize_h}},
    };
}

json config_json(const PipelineConfig& cfg) {
    json order = json::array();
    for (ClassifierKind k : cfg.model_order) order.push_back(std::string(classifier_id(k)));
    json tau = json::object();
    for (int k = 0; k < kClassifierCount; ++k) {
        tau[std::string(classifier_id(static_cast<ClassifierKind>(k)))] =
            cfg.tau[static_cast<std::size_t>(k)];
    }
    return json{
        {"feature", feature_section(cfg)},
        {"model_order", order},
        {"models",
         {{"forest",
           {{"bootstrap", cfg.forest.bootstrap},
            {"max_depth", cfg.forest.tree.max_depth},
            {"max_features", max_features_name(cfg.forest.max_features)},
            {"min_leaf", cfg.forest.tree.min_leaf},
            {"n_trees", cfg.forest.n_trees}}},
          {"knn", {{"k", cfg.knn.k}}},
          {"svm", {{"epochs", cfg.svm.epochs}, {"lambda", cfg.svm.lambda}}},
          {"tree",
           {{"max_depth", cfg.tree.max_depth}, {"min_leaf", cfg.tree.min_leaf}}}}},
        {"seed", cfg.seed},
        {"tau", tau},
        {"test_fraction", cfg.test_fraction},
        {"version", kConfigVersion},
    };
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (!known.contains(key)) {
            raise(Errc::InvalidArgument, "unknown config key '" + where + key + "'");
        }
    }
}

} // namespace

void validate_config(const PipelineConfig& cfg) {
    if (cfg.resize_w < 1 || cfg.resize_h < 1) {
        raise(Errc::InvalidDimensions, "resize target must be at least 1x1");
    }
    if (cfg.glcm.levels < 2 || cfg.glcm.levels > 256) {
        raise(Errc::InvalidLevels, "glcm levels must lie in [2, 256]");
    }
    if (cfg.glcm.distance < 1) {
        raise(Errc::InvalidArgument, "glcm distance must be at least 1");
    }
    if (cfg.glcm.angles.empty()) {
        raise(Errc::InvalidArgument, "glcm needs at least one angle offset");
    }
    for (const Offset& o : cfg.glcm.angles) {
        if (o.dx == 0 && o.dy == 0) {
            raise(Errc::InvalidArgument, "glcm offset (0, 0) pairs pixels with themselves");
        }
    }
    if (cfg.hist_bins < 1 || cfg.hist_bins > 256) {
        raise(Errc::InvalidBinCount, "histogram bin count must lie in [1, 256]");
    }
    if (cfg.knn.k < 1) raise(Errc::InvalidArgument, "knn k must be at least 1");
    if (cfg.svm.epochs < 1 || !(cfg.svm.lambda > 0.0)) {
        raise(Errc::InvalidArgument, "svm requires epochs >= 1 and lambda > 0");
    }
    if (cfg.tree.max_depth < 0 || cfg.tree.min_leaf < 1 || cfg.forest.tree.max_depth < 0 ||
        cfg.forest.tree.min_leaf < 1) {
        raise(Errc::InvalidArgument, "trees require max_depth >= 0 and min_leaf >= 1");
    }
    if (cfg.forest.n_trees < 1) {
        raise(Errc::InvalidArgument, "forest requires n_trees >= 1");
    }
    for (double t : cfg.tau) {
        if (!(t >= 0.0) || !(t <= 1.0)) {
            raise(Errc::InvalidArgument, "tau must lie in [0, 1]");
        }
    }
    if (!(cfg.test_fraction > 0.0) || !(cfg.test_fraction < 1.0)) {
        raise(Errc::InvalidArgument, "test_fraction must lie strictly between 0 and 1");
    }
    if (cfg.model_order.empty()) {
        raise(Errc::InvalidArgument, "model_order must list at least one classifier");
    }
    std::set<ClassifierKind> seen;
    for (ClassifierKind k : cfg.model_order) {
        if (!seen.insert(k).second) {
            raise(Errc::InvalidArgument, "model_order lists a classifier twice");
        }
    }
}

std::string config_to_json(const PipelineConfig& cfg) {
    return config_json(cfg).dump(2) + "\n";
}

PipelineConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        raise(Errc::CorruptFile, std::string("config is not valid JSON: ") + e.what());
    }
    PipelineConfig cfg;
    try {
        if (!doc.is_object()) raise(Errc::CorruptFile, "config root must be an object");
        reject_unknown_keys(doc,
                            {"feature", "model_order", "models", "seed", "tau",
                             "test_fraction", "version"},
                            "");
        if (doc.contains("version") && doc["version"].get<int>() != kConfigVersion) {
            raise(Errc::VersionMismatch,
                  "config version " + doc["version"].dump() + " is not supported");
        }
        if (doc.contains("feature")) {
            const json& f = doc["feature"];
            reject_unknown_keys(f, {"glcm", "hist_bins", "quantize", "resize"}, "feature.");
            if (f.contains("resize")) {
                cfg.resize_w = f["resize"].at(0).get<int>();
                cfg.resize_h = f["resize"].at(1).get<int>();
            }
            if (f.contains("quantize")) {
                const std::string q = f["quantize"].get<std::string>();
                if (q == "uniform") {
                    cfg.quantize = QuantizeMode::Uniform;
                } else if (q == "minmax_stretch") {
                    cfg.quantize = QuantizeMode::MinMaxStretch;
                } else {
                    raise(Errc::InvalidArgument, "unknown quantize mode '" + q + "'");
                }
            }
            if (f.contains("hist_bins")) cfg.hist_bins = f["hist_bins"].get<int>();
            if (f.contains("glcm")) {
                const json& g = f["glcm"];
                reject_unknown_keys(
                    g, {"aggregation", "angles", "distance", "levels", "symmetric"},
                    "feature.glcm.");
                if (g.contains("levels")) cfg.glcm.levels = g["levels"].get<int>();
                if (g.contains("distance")) cfg.glcm.distance = g["distance"].get<int>();
                if (g.contains("symmetric")) cfg.glcm.symmetric = g["symmetric"].get<bool>();
                if (g.contains("aggregation")) {
                    const std::string a = g["aggregation"].get<std::string>();
                    if (a == "mean") {
                        cfg.glcm.aggregation = GlcmAggregation::Mean;
                    } else if (a == "concatenate") {
                        cfg.glcm.aggregation = GlcmAggregation::Concatenate;
                    } else {
                        raise(Errc::InvalidArgument, "unknown glcm aggregation '" + a + "'");
                    }
                }
                if (g.contains("angles")) {
                    cfg.glcm.angles.clear();
                    for (const json& pair : g["angles"]) {
                        cfg.glcm.angles.push_back(
                            Offset{pair.at(0).get<int>(), pair.at(1).get<int>()});
                    }
                }
            }
        }
        if (doc.contains("models")) {
            const json& m = doc["models"];
            reject_unknown_keys(m, {"forest", "knn", "svm", "tree"}, "models.");
            if (m.contains("knn")) {
                reject_unknown_keys(m["knn"], {"k"}, "models.knn.");
                if (m["knn"].contains("k")) cfg.knn.k = m["knn"]["k"].get<int>();
            }
            if (m.contains("svm")) {
                const json& s = m["svm"];
                reject_unknown_keys(s, {"epochs", "lambda"}, "models.svm.");
                if (s.contains("epochs")) cfg.svm.epochs = s["epochs"].get<int>();
                if (s.contains("lambda")) cfg.svm.lambda = s["lambda"].get<double>();
            }
            if (m.contains("tree")) {
                const json& t = m["tree"];
                reject_unknown_keys(t, {"max_depth", "min_leaf"}, "models.tree.");
                if (t.contains("max_depth")) cfg.tree.max_depth = t["max_depth"].get<int>();
                if (t.contains("min_leaf")) cfg.tree.min_leaf = t["min_leaf"].get<int>();
            }
            if (m.contains("forest")) {
                const json& fo = m["forest"];
                reject_unknown_keys(
                    fo, {"bootstrap", "max_depth", "max_features", "min_leaf", "n_trees"},
                    "models.forest.");
                if (fo.contains("n_trees")) cfg.forest.n_trees = fo["n_trees"].get<int>();
                if (fo.contains("bootstrap")) {
                    cfg.forest.bootstrap = fo["bootstrap"].get<bool>();
                }
                if (fo.contains("max_depth")) {
                    cfg.forest.tree.max_depth = fo["max_depth"].get<int>();
                }
                if (fo.contains("min_leaf")) {
                    cfg.forest.tree.min_leaf = fo["min_leaf"].get<int>();
                }
                if (fo.contains("max_features")) {
                    const std::string mf = fo["max_features"].get<std::string>();
                    if (mf == "sqrt") {
                        cfg.forest.max_features = FeatureSubsample::Sqrt;
                    } else if (mf == "all") {
                        cfg.forest.max_features = FeatureSubsample::All;
                    } else {
                        raise(Errc::InvalidArgument, "unknown max_features '" + mf + "'");
                    }
                }
            }
        }
        if (doc.contains("tau")) {
            for (const auto& [key, value] : doc["tau"].items()) {
                const ClassifierKind kind = classifier_from_id(key);
                cfg.tau[static_cast<std::size_t>(kind)] = value.get<double>();
            }
        }
        if (doc.contains("model_order")) {
            cfg.model_order.clear();
            for (const json& id : doc["model_order"]) {
                cfg.model_order.push_back(classifier_from_id(id.get<std::string>()));
            }
        }
        if (doc.contains("test_fraction")) {
            cfg.test_fraction = doc["test_fraction"].get<double>();
        }
        if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
    } catch (const json::exception& e) {
        raise(Errc::CorruptFile, std::string("malformed config: ") + e.what());
    }
    validate_config(cfg);
    return cfg;
}

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        raise(Errc::IoError, "cannot open config '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string config_fingerprint(const PipelineConfig& cfg) {
    return fingerprint_hex(config_json(cfg).dump());
}

FeatureSchema feature_schema(const PipelineConfig& cfg) {
    FeatureSchema schema;
    schema.names = glcm_feature_names(cfg.glcm);
    const std::vector<std::string> hist = hist_feature_names(cfg.hist_bins);
    schema.names.insert(schema.names.end(), hist.begin(), hist.end());
    schema.fingerprint = fingerprint_hex(feature_section(cfg).dump());
    return schema;
}

std::vector<double> image_features(const GrayImage& img, const PipelineConfig& cfg) {
    const GrayImage resized = resize(img, cfg.resize_w, cfg.resize_h);
    const QuantizedImage q = quantize(resized, cfg.glcm.levels, cfg.quantize);
    std::vector<double> row = glcm_features(q, cfg.glcm);
    const std::vector<double> hist = hist_features(histogram(resized, cfg.hist_bins));
    row.insert(row.end(), hist.begin(), hist.end());
    return row;
}

} // namespace texkit
