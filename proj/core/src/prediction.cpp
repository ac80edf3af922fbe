#include <texkit/prediction.hpp>

#include <texkit/error.hpp>

#include <string>

namespace texkit {

std::string_view classifier_id(ClassifierKind kind) {
    switch (kind) {
        case ClassifierKind::Rf: return "rf";
        case ClassifierKind::Svm: return "svm";
        case ClassifierKind::Knn: return "knn";
        case ClassifierKind::Nb: return "nb";
        case ClassifierKind::Dt: return "dt";
    }
    return "?";
}

ClassifierKind classifier_from_id(std::string_view id) {
    if (id == "rf") return ClassifierKind::Rf;
    if (id == "svm") return ClassifierKind::Svm;
    if (id == "knn") return ClassifierKind::Knn;
    if (id == "nb") return ClassifierKind::Nb;
    if (id == "dt") return ClassifierKind::Dt;
    raise(Errc::InvalidArgument, "unknown classifier id '" + std::string(id) + "'");
}

Prediction apply_threshold(Prediction p, double tau) {
    if (tau < 0.0 || tau > 1.0) {
        raise(Errc::InvalidArgument, "threshold must lie in [0, 1]");
    }
    if (!p.is_unknown() && p.confidence < tau) {
        p.label = kUnknownLabel;
    }
    return p;
}

} // namespace texkit
