#pragma once

#include <texkit/evaluation.hpp>
#include <texkit/pipeline.hpp>

#include <string>
#include <vector>

namespace texkit {

/// Standalone SVG heatmap of a confusion matrix: one shaded cell per
/// (true, predicted) pair with the count annotated, class labels on both
/// axes, and an extra "unknown" column when the matrix carries one. Output
/// bytes depend only on the inputs.
std::string confusion_svg(const ConfusionMatrix& cm,
                          const std::vector<std::string>& class_names,
                          const std::string& title);
void render_confusion_svg(const ConfusionMatrix& cm,
                          const std::vector<std::string>& class_names,
                          const std::string& title, const std::string& path);

/// Grouped bar chart of per-class recall, one bar per classifier run within
/// each class group, with a legend. Output bytes depend only on the inputs.
std::string class_bars_svg(const std::vector<ClassifierRun>& runs,
                           const std::vector<std::string>& class_names);
void render_class_bars_svg(const std::vector<ClassifierRun>& runs,
                           const std::vector<std::string>& class_names,
                           const std::string& path);

} // namespace texkit
