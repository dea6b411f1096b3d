#include "pboost/persistence.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "pboost/matryoshka.hpp"

namespace pboost {
namespace {

using nlohmann::json;

class ClassifierTable {
 public:
  std::size_t index_of(const ClassifierPtr& h) {
    auto it = index_.find(h.get());
    if (it != index_.end()) return it->second;
    entries_.push_back(h->to_json());
    index_.emplace(h.get(), entries_.size() - 1);
    return entries_.size() - 1;
  }
  json entries() const { return entries_; }

 private:
  std::map<const ProbClassifier*, std::size_t> index_;
  json entries_ = json::array();
};

std::vector<ClassifierPtr> read_table(const json& j) {
  std::vector<ClassifierPtr> out;
  for (const auto& e : j.at("classifiers")) out.push_back(classifier_from_json(e));
  return out;
}

const ClassifierPtr& table_entry(const std::vector<ClassifierPtr>& table, const json& index) {
  const auto i = index.get<std::size_t>();
  if (i >= table.size()) throw std::runtime_error("model: classifier index " + std::to_string(i) + " out of range");
  return table[i];
}

double finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::runtime_error(std::string("model: non-finite ") + what);
  return v;
}

}  // namespace

ClassifierPtr classifier_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "stump") {
    return std::make_shared<NoisyStumpClassifier>(j.at("feature").get<int>(), j.at("threshold").get<double>(),
                                                  j.at("polarity").get<int>(), j.at("p_flip").get<double>());
  }
  if (type == "constant_edge") {
    std::map<std::vector<double>, int> memory;
    for (const auto& p : j.at("memory")) memory.emplace(p.at("x").get<std::vector<double>>(), p.at("y").get<int>());
    return std::make_shared<ConstantEdgeClassifier>(j.at("epsilon").get<double>(), std::move(memory));
  }
  if (type == "constant_probability") {
    return std::make_shared<ConstantProbabilityClassifier>(j.at("q_plus").get<double>());
  }
  if (type == "composite") return collect_leaves(tree_from_json(j.at("tree")));
  throw std::runtime_error("model: unknown classifier type '" + type + "'");
}

json tree_to_json(const TreeModel& tree) {
  ClassifierTable table;
  json nodes = json::object();
  for (const auto& [s, node] : tree.nodes()) {
    json n = {{"alpha", finite(node.alpha, "alpha")},
              {"z", finite(node.z, "Z")},
              {"product", node.product},
              {"dead", node.dead},
              {"order", node.order}};
    if (!node.is_leaf()) {
      n["classifier"] = table.index_of(node.classifier);
      n["q_plus"] = node.q_plus;
      n["rounds"] = node.rounds;
    }
    nodes[s.to_string()] = std::move(n);
  }
  return {{"level", tree.level()},
          {"trajectory", tree.trajectory()},
          {"classifiers", table.entries()},
          {"nodes", std::move(nodes)}};
}

TreeModel tree_from_json(const json& j) {
  const auto table = read_table(j);
  std::map<PathIndex, TreeNode> nodes;
  for (const auto& [key, n] : j.at("nodes").items()) {
    TreeNode node;
    node.alpha = n.at("alpha").get<double>();
    node.z = n.at("z").get<double>();
    node.product = n.at("product").get<double>();
    node.dead = n.at("dead").get<bool>();
    node.order = n.at("order").get<std::int64_t>();
    if (n.contains("classifier")) {
      node.classifier = table_entry(table, n.at("classifier"));
      node.q_plus = n.at("q_plus").get<std::vector<double>>();
      node.rounds = n.at("rounds").get<std::int64_t>();
    }
    nodes.emplace(PathIndex::parse(key), std::move(node));
  }
  TreeModel tree = TreeModel::from_parts(std::move(nodes), j.at("trajectory").get<std::vector<double>>());
  if (j.at("level").get<int>() != tree.level()) throw std::runtime_error("model: stored level does not match nesting");
  return tree;
}

json adaboost_to_json(const AdaboostModel& model) {
  ClassifierTable table;
  json stages = json::array();
  for (const auto& s : model.stages) {
    stages.push_back({{"classifier", table.index_of(s.classifier)},
                      {"alpha_plus", finite(s.alphas.plus, "alpha")},
                      {"alpha_minus", finite(s.alphas.minus, "alpha")},
                      {"z", finite(s.z, "Z")},
                      {"w", {{"pp", s.w.pp}, {"pm", s.w.pm}, {"mp", s.w.mp}, {"mm", s.w.mm}}},
                      {"q_plus", s.q_plus},
                      {"rounds", s.rounds}});
  }
  return {{"classifiers", table.entries()}, {"stages", std::move(stages)}};
}

AdaboostModel adaboost_from_json(const json& j) {
  const auto table = read_table(j);
  AdaboostModel model;
  for (const auto& s : j.at("stages")) {
    AdaboostStage stage;
    stage.classifier = table_entry(table, s.at("classifier"));
    stage.alphas = {finite(s.at("alpha_plus").get<double>(), "alpha"), finite(s.at("alpha_minus").get<double>(), "alpha")};
    stage.z = s.at("z").get<double>();
    const auto& w = s.at("w");
    stage.w = {w.at("pp").get<double>(), w.at("pm").get<double>(), w.at("mp").get<double>(), w.at("mm").get<double>()};
    stage.q_plus = s.at("q_plus").get<std::vector<double>>();
    stage.rounds = s.at("rounds").get<std::int64_t>();
    model.stages.push_back(std::move(stage));
  }
  return model;
}

std::string serialize_model(const ModelRecord& record) {
  json structure;
  if (record.kind == "adaboost") {
    if (!record.adaboost) throw std::invalid_argument("model record: adaboost kind without a model");
    structure = adaboost_to_json(*record.adaboost);
  } else if (record.kind == "ptree" || record.kind == "matryoshka") {
    if (!record.tree) throw std::invalid_argument("model record: tree kind without a tree");
    structure = tree_to_json(*record.tree);
  } else {
    throw std::invalid_argument("model record: unknown kind '" + record.kind + "'");
  }
  json doc = {{"version", kModelFormatVersion},
              {"kind", record.kind},
              {"metadata", record.metadata},
              {"structure", std::move(structure)}};
  return doc.dump(1) + "\n";
}

ModelRecord deserialize_model(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("model: not valid JSON: ") + e.what());
  }
  try {
    if (doc.at("version").get<int>() != kModelFormatVersion) {
      throw std::runtime_error("model: unsupported format version " + doc.at("version").dump());
    }
    ModelRecord record;
    record.kind = doc.at("kind").get<std::string>();
    record.metadata = doc.at("metadata");
    if (record.kind == "adaboost") {
      record.adaboost = adaboost_from_json(doc.at("structure"));
    } else if (record.kind == "ptree" || record.kind == "matryoshka") {
      record.tree = tree_from_json(doc.at("structure"));
    } else {
      throw std::runtime_error("model: unknown kind '" + record.kind + "'");
    }
    return record;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("model: malformed document: ") + e.what());
  }
}

void save_model(const ModelRecord& record, const std::filesystem::path& path) {
  const std::string text = serialize_model(record);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write model '" + path.string() + "'");
  out << text;
}

ModelRecord load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read model '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize_model(buf.str());
}

}  // namespace pboost
