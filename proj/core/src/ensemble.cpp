#include <texkit/ensemble.hpp>

#include <texkit/error.hpp>

#include <algorithm>
#include <string>

namespace texkit {

namespace {

void validate(const PredictionMatrix& pm) {
    if (pm.rows.empty() || pm.model_order.empty()) {
        raise(Errc::EmptyMatrix, "prediction matrix has no rows or no models");
    }
    for (std::size_t r = 0; r < pm.rows.size(); ++r) {
        if (pm.rows[r].size() != pm.model_order.size()) {
            raise(Errc::RaggedRow, "row " + std::to_string(r) + " has " +
                                       std::to_string(pm.rows[r].size()) +
                                       " predictions, expected " +
                                       std::to_string(pm.model_order.size()));
        }
    }
}

} // namespace

std::vector<ClassifierKind> PredictionMatrix::default_model_order() {
    return {ClassifierKind::Rf, ClassifierKind::Svm, ClassifierKind::Knn,
            ClassifierKind::Nb, ClassifierKind::Dt};
}

std::vector<Prediction> voting_ensemble(const PredictionMatrix& pm) {
    validate(pm);
    const std::size_t voters = pm.model_order.size();
    std::vector<Prediction> out;
    out.reserve(pm.rows.size());

    std::vector<int> labels;
    std::vector<std::size_t> tally;
    for (const std::vector<Prediction>& row : pm.rows) {
        labels.clear();
        tally.clear();
        for (const Prediction& p : row) {
            if (p.is_unknown()) continue;
            const auto it = std::find(labels.begin(), labels.end(), p.label);
            if (it == labels.end()) {
                labels.push_back(p.label);
                tally.push_back(1);
            } else {
                tally[static_cast<std::size_t>(it - labels.begin())] += 1;
            }
        }
        if (labels.empty()) {
            out.push_back(Prediction{kUnknownLabel, 0.0});
            continue;
        }
        const std::size_t top = *std::max_element(tally.begin(), tally.end());
        // labels[] is in first-vote order, so the first label reaching the top
        // count is the one backed by the earliest model among the tied labels.
        std::size_t win = 0;
        while (tally[win] != top) ++win;
        out.push_back(Prediction{labels[win],
                                 static_cast<double>(top) / static_cast<double>(voters)});
    }
    return out;
}

std::vector<Prediction> combined_classifier(const PredictionMatrix& pm, bool strict) {
    validate(pm);
    std::vector<Prediction> out;
    out.reserve(pm.rows.size());
    for (std::size_t r = 0; r < pm.rows.size(); ++r) {
        const std::vector<Prediction>& row = pm.rows[r];
        const Prediction* chosen = &row.back();
        for (const Prediction& p : row) {
            if (!p.is_unknown()) {
                chosen = &p;
                break;
            }
        }
        if (strict && chosen->is_unknown()) {
            raise(Errc::UnknownExhausted,
                  "sample " + std::to_string(r) + ": every stage abstained");
        }
        out.push_back(*chosen);
    }
    return out;
}

} // namespace texkit
