#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "pboost/adaboost.hpp"
#include "pboost/ptree.hpp"
#include "pboost/weak_learner.hpp"

namespace pboost {

inline constexpr int kModelFormatVersion = 1;

/// A trained model with its provenance. `kind` is adaboost, ptree or
/// matryoshka; adaboost models fill `adaboost`, the others fill `tree`.
struct ModelRecord {
  std::string kind;
  nlohmann::json metadata = nlohmann::json::object();
  std::optional<AdaboostModel> adaboost;
  std::optional<TreeModel> tree;
};

/// Rebuilds a classifier from ProbClassifier::to_json output.
ClassifierPtr classifier_from_json(const nlohmann::json& j);

/// Nodes keyed by path string ("" is the root); classifiers are stored once
/// in a table and referenced by index.
nlohmann::json tree_to_json(const TreeModel& tree);
TreeModel tree_from_json(const nlohmann::json& j);

nlohmann::json adaboost_to_json(const AdaboostModel& model);
AdaboostModel adaboost_from_json(const nlohmann::json& j);

/// Sorted keys, exact doubles; deserialize(serialize(m)) serializes to the same bytes.
std::string serialize_model(const ModelRecord& record);
ModelRecord deserialize_model(std::string_view text);

void save_model(const ModelRecord& record, const std::filesystem::path& path);
ModelRecord load_model(const std::filesystem::path& path);

}  // namespace pboost
