#pragma once

#include <texkit/classifiers.hpp>

#include <string>

namespace texkit {

/// Writes a versioned, self-describing JSON document holding the algorithm
/// id, hyperparameters, standardizer, learned state (full precision), tau,
/// and the feature schema fingerprint the model was trained under.
void save_model(const TrainedModel& model, const std::string& path);

/// Inverse of save_model; the loaded model predicts identically. A nonempty
/// `expected_schema` must match the stored fingerprint (SchemaMismatch
/// otherwise). Raises VersionMismatch for foreign versions and CorruptModel
/// for anything structurally wrong.
TrainedModel load_model(const std::string& path, const std::string& expected_schema = "");

} // namespace texkit
