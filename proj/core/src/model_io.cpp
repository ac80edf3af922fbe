#include <texkit/model_io.hpp>

#include <texkit/error.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace texkit {

namespace {

using nlohmann::json;

constexpr int kModelVersion = 1;

json standardizer_json(const Standardizer& s) {
    if (s.is_passthrough()) return nullptr;
    return json{{"mean", s.mean}, {"stddev", s.stddev}};
}

Standardizer standardizer_from(const json& j) {
    if (j.is_null()) return Standardizer::passthrough();
    Standardizer s;
    s.mean = j.at("mean").get<std::vector<double>>();
    s.stddev = j.at("stddev").get<std::vector<double>>();
    if (s.mean.size() != s.stddev.size()) {
        raise(Errc::CorruptModel, "standardizer mean/stddev lengths differ");
    }
    return s;
}

json nodes_json(const std::vector<TreeNode>& nodes) {
    json arr = json::array();
    for (const TreeNode& n : nodes) {
        arr.push_back({{"counts", n.counts},
                       {"feature", n.feature},
                       {"left", n.left},
                       {"right", n.right},
                       {"threshold", n.threshold}});
    }
    return arr;
}

std::vector<TreeNode> nodes_from(const json& arr) {
    std::vector<TreeNode> nodes;
    nodes.reserve(arr.size());
    for (const json& j : arr) {
        TreeNode n;
        n.feature = j.at("feature").get<int>();
        n.threshold = j.at("threshold").get<double>();
        n.left = j.at("left").get<int>();
        n.right = j.at("right").get<int>();
        n.counts = j.at("counts").get<std::vector<std::uint32_t>>();
        nodes.push_back(std::move(n));
    }
    if (nodes.empty()) raise(Errc::CorruptModel, "tree has no nodes");
    for (const TreeNode& n : nodes) {
        const bool is_leaf = n.feature < 0;
        const auto size = static_cast<int>(nodes.size());
        if (!is_leaf && (n.left < 0 || n.left >= size || n.right < 0 || n.right >= size)) {
            raise(Errc::CorruptModel, "tree node references a missing child");
        }
    }
    return nodes;
}

json params_json(const TrainedModel& model) {
    struct Visitor {
        json operator()(const RandomForestModel& m) const {
            return {{"bootstrap", m.params.bootstrap},
                    {"max_depth", m.params.tree.max_depth},
                    {"max_features",
                     m.params.max_features == FeatureSubsample::Sqrt ? "sqrt" : "all"},
                    {"min_leaf", m.params.tree.min_leaf},
                    {"n_trees", m.params.n_trees}};
        }
        json operator()(const LinearSvmModel& m) const {
            return {{"epochs", m.params.epochs}, {"lambda", m.params.lambda}};
        }
        json operator()(const KnnModel& m) const { return {{"k", m.params.k}}; }
        json operator()(const NaiveBayesModel&) const { return json::object(); }
        json operator()(const DecisionTreeModel& m) const {
            return {{"max_depth", m.params.max_depth}, {"min_leaf", m.params.min_leaf}};
        }
    };
    return std::visit(Visitor{}, model);
}

json state_json(const TrainedModel& model) {
    struct Visitor {
        json operator()(const RandomForestModel& m) const {
            json trees = json::array();
            for (const DecisionTreeModel& t : m.trees) trees.push_back(nodes_json(t.nodes));
            return {{"seed", m.seed}, {"trees", std::move(trees)}};
        }
        json operator()(const LinearSvmModel& m) const {
            return {{"bias", m.bias}, {"seed", m.seed}, {"weights", m.weights}};
        }
        json operator()(const KnnModel& m) const {
            return {{"train_x", m.train_x}, {"train_y", m.train_y}};
        }
        json operator()(const NaiveBayesModel& m) const {
            return {{"log_prior", m.log_prior}, {"mean", m.mean}, {"variance", m.variance}};
        }
        json operator()(const DecisionTreeModel& m) const {
            return {{"nodes", nodes_json(m.nodes)}};
        }
    };
    return std::visit(Visitor{}, model);
}

TrainedModel model_from(const json& doc) {
    const std::string algorithm = doc.at("algorithm").get<std::string>();
    const json& params = doc.at("params");
    const json& state = doc.at("state");

    TrainedModel model;
    if (algorithm == "rf") {
        RandomForestModel m;
        m.params.n_trees = params.at("n_trees").get<int>();
        m.params.bootstrap = params.at("bootstrap").get<bool>();
        m.params.tree.max_depth = params.at("max_depth").get<int>();
        m.params.tree.min_leaf = params.at("min_leaf").get<int>();
        m.params.max_features = params.at("max_features").get<std::string>() == "all"
                                    ? FeatureSubsample::All
                                    : FeatureSubsample::Sqrt;
        m.seed = state.at("seed").get<std::uint64_t>();
        for (const json& t : state.at("trees")) {
            DecisionTreeModel tree;
            tree.params = m.params.tree;
            tree.standardizer = Standardizer::passthrough();
            tree.nodes = nodes_from(t);
            m.trees.push_back(std::move(tree));
        }
        if (m.trees.empty()) raise(Errc::CorruptModel, "forest has no trees");
        model = std::move(m);
    } else if (algorithm == "svm") {
        LinearSvmModel m;
        m.params.epochs = params.at("epochs").get<int>();
        m.params.lambda = params.at("lambda").get<double>();
        m.seed = state.at("seed").get<std::uint64_t>();
        m.weights = state.at("weights").get<std::vector<std::vector<double>>>();
        m.bias = state.at("bias").get<std::vector<double>>();
        model = std::move(m);
    } else if (algorithm == "knn") {
        KnnModel m;
        m.params.k = params.at("k").get<int>();
        m.train_x = state.at("train_x").get<std::vector<std::vector<double>>>();
        m.train_y = state.at("train_y").get<std::vector<int>>();
        if (m.train_x.size() != m.train_y.size()) {
            raise(Errc::CorruptModel, "knn training rows and labels differ in length");
        }
        model = std::move(m);
    } else if (algorithm == "nb") {
        NaiveBayesModel m;
        m.log_prior = state.at("log_prior").get<std::vector<double>>();
        m.mean = state.at("mean").get<std::vector<std::vector<double>>>();
        m.variance = state.at("variance").get<std::vector<std::vector<double>>>();
        model = std::move(m);
    } else if (algorithm == "dt") {
        DecisionTreeModel m;
        m.params.max_depth = params.at("max_depth").get<int>();
        m.params.min_leaf = params.at("min_leaf").get<int>();
        m.nodes = nodes_from(state.at("nodes"));
        model = std::move(m);
    } else {
        raise(Errc::CorruptModel, "unknown algorithm id '" + algorithm + "'");
    }
    return model;
}

void fill_common(TrainedModel& model, const json& doc) {
    const auto classes = doc.at("classes").get<std::vector<int>>();
    const auto tau = doc.at("tau").get<double>();
    const auto schema = doc.at("schema_fingerprint").get<std::string>();
    const Standardizer standardizer = standardizer_from(doc.at("standardizer"));
    std::visit(
        [&](auto& m) {
            m.classes = classes;
            m.tau = tau;
            m.schema_id = schema;
            m.standardizer = standardizer;
        },
        model);
    if (auto* forest = std::get_if<RandomForestModel>(&model)) {
        // Trained forests stamp the shared class list and schema onto every
        // tree; the file stores them once, so restore them the same way.
        for (DecisionTreeModel& tree : forest->trees) {
            tree.classes = classes;
            tree.schema_id = schema;
        }
    }
    if (classes.empty()) raise(Errc::CorruptModel, "model lists no classes");
}

} // namespace

void save_model(const TrainedModel& model, const std::string& path) {
    const json doc{
        {"algorithm", std::string(algorithm_id(model))},
        {"classes", classes_of(model)},
        {"params", params_json(model)},
        {"schema_fingerprint", schema_of_model(model)},
        {"standardizer",
         standardizer_json(std::visit([](const auto& m) { return m.standardizer; }, model))},
        {"state", state_json(model)},
        {"tau", threshold_of(model)},
        {"version", kModelVersion},
    };
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << doc.dump(2) << '\n') || !out.flush()) {
        raise(Errc::IoError, "cannot write model file '" + path + "'");
    }
}

TrainedModel load_model(const std::string& path, const std::string& expected_schema) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        raise(Errc::IoError, "cannot open model file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();

    json doc;
    try {
        doc = json::parse(buf.str());
    } catch (const json::exception& e) {
        raise(Errc::CorruptModel, "'" + path + "' is not valid JSON: " + e.what());
    }
    try {
        if (!doc.is_object()) raise(Errc::CorruptModel, "model root must be an object");
        const int version = doc.at("version").get<int>();
        if (version != kModelVersion) {
            raise(Errc::VersionMismatch, "'" + path + "' has model version " +
                                             std::to_string(version) + ", expected " +
                                             std::to_string(kModelVersion));
        }
        TrainedModel model = model_from(doc);
        fill_common(model, doc);
        if (!expected_schema.empty() && schema_of_model(model) != expected_schema) {
            raise(Errc::SchemaMismatch, "'" + path + "' was trained under fingerprint " +
                                            schema_of_model(model) + ", expected " +
                                            expected_schema);
        }
        return model;
    } catch (const json::exception& e) {
        raise(Errc::CorruptModel, "'" + path + "' is malformed: " + e.what());
    }
}

} // namespace texkit
