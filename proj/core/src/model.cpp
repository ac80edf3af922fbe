#include <texkit/classifiers.hpp>

namespace texkit {

namespace {

template <typename Model>
constexpr ClassifierKind kind_of() {
    if constexpr (std::is_same_v<Model, RandomForestModel>) return ClassifierKind::Rf;
    if constexpr (std::is_same_v<Model, LinearSvmModel>) return ClassifierKind::Svm;
    if constexpr (std::is_same_v<Model, KnnModel>) return ClassifierKind::Knn;
    if constexpr (std::is_same_v<Model, NaiveBayesModel>) return ClassifierKind::Nb;
    if constexpr (std::is_same_v<Model, DecisionTreeModel>) return ClassifierKind::Dt;
}

} // namespace

ClassifierKind algorithm_kind(const TrainedModel& model) {
    return std::visit([](const auto& m) { return kind_of<std::decay_t<decltype(m)>>(); },
                      model);
}

std::string_view algorithm_id(const TrainedModel& model) {
    return classifier_id(algorithm_kind(model));
}

double threshold_of(const TrainedModel& model) {
    return std::visit([](const auto& m) { return m.tau; }, model);
}

void set_threshold(TrainedModel& model, double tau) {
    std::visit([tau](auto& m) { m.tau = tau; }, model);
}

const std::string& schema_of_model(const TrainedModel& model) {
    return std::visit([](const auto& m) -> const std::string& { return m.schema_id; },
                      model);
}

const std::vector<int>& classes_of(const TrainedModel& model) {
    return std::visit([](const auto& m) -> const std::vector<int>& { return m.classes; },
                      model);
}

Prediction predict_raw(const TrainedModel& model, std::span<const double> x) {
    return std::visit([x](const auto& m) { return m.predict_raw(x); }, model);
}

Prediction predict(const TrainedModel& model, std::span<const double> x) {
    return apply_threshold(predict_raw(model, x), threshold_of(model));
}

} // namespace texkit
