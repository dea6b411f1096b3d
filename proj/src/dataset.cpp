#include "pboost/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

#include "pboost/random_stream.hpp"

namespace pboost {
namespace {

constexpr double kNormalizedTolerance = 1e-12;

std::uint64_t fnv_mix(std::uint64_t h, const void* data, std::size_t bytes) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < bytes; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    const auto first = cell.find_first_not_of(" \t\r");
    const auto last = cell.find_last_not_of(" \t\r");
    cells.push_back(first == std::string::npos ? std::string() : cell.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_number(const std::string& cell, std::size_t line_no) {
  double value = 0.0;
  const char* begin = cell.data();
  if (!cell.empty() && cell.front() == '+') ++begin;
  const char* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || cell.empty() || !std::isfinite(value)) {
    throw std::runtime_error("line " + std::to_string(line_no) + ": cannot parse number '" + cell + "'");
  }
  return value;
}

}  // namespace

std::vector<double> normalize_weights(std::span<const double> raw) {
  if (raw.empty()) throw std::invalid_argument("normalize_weights: empty weight vector");
  double largest = 0.0;
  for (double w : raw) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("normalize_weights: weights must be finite and nonnegative");
    }
    largest = std::max(largest, w);
  }
  if (largest == 0.0) throw std::invalid_argument("normalize_weights: all weights are zero");

  // Already normalized input is returned untouched, which makes the map idempotent.
  const double direct_sum = std::accumulate(raw.begin(), raw.end(), 0.0);
  if (std::abs(direct_sum - 1.0) <= kNormalizedTolerance) return {raw.begin(), raw.end()};

  std::vector<double> out(raw.begin(), raw.end());
  for (double& w : out) w /= largest;
  const double sum = std::accumulate(out.begin(), out.end(), 0.0);
  for (double& w : out) w /= sum;
  return out;
}

Dataset::Dataset(std::vector<double> features, std::size_t dimension, std::vector<int> labels,
                 std::vector<double> weights)
    : features_(std::move(features)), dimension_(dimension), labels_(std::move(labels)) {
  if (labels_.empty()) throw std::invalid_argument("Dataset: no examples");
  if (dimension_ == 0) throw std::invalid_argument("Dataset: feature dimension must be >= 1");
  if (features_.size() != labels_.size() * dimension_) {
    throw std::invalid_argument("Dataset: feature matrix does not match examples x dimension");
  }
  for (double v : features_) {
    if (!std::isfinite(v)) throw std::invalid_argument("Dataset: features must be finite");
  }
  for (std::size_t n = 0; n < labels_.size(); ++n) {
    if (labels_[n] != 1 && labels_[n] != -1) {
      throw std::invalid_argument("Dataset: label of example " + std::to_string(n) + " is not +1/-1");
    }
  }
  if (weights.empty()) {
    weights_.assign(labels_.size(), 1.0 / static_cast<double>(labels_.size()));
  } else {
    if (weights.size() != labels_.size()) throw std::invalid_argument("Dataset: weight count mismatch");
    weights_ = normalize_weights(weights);
  }
}

std::uint64_t Dataset::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const std::uint64_t dims[2] = {dimension_, labels_.size()};
  h = fnv_mix(h, dims, sizeof(dims));
  h = fnv_mix(h, features_.data(), features_.size() * sizeof(double));
  h = fnv_mix(h, labels_.data(), labels_.size() * sizeof(int));
  h = fnv_mix(h, weights_.data(), weights_.size() * sizeof(double));
  return h;
}

Dataset load_csv(const std::filesystem::path& path, bool weight_column) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset '" + path.string() + "'");

  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    header = split_commas(line);
    break;
  }
  if (header.empty()) throw std::runtime_error("dataset '" + path.string() + "' is empty");

  const std::size_t trailing = weight_column ? 2 : 1;
  if (header.size() < trailing + 1) {
    throw std::runtime_error("line " + std::to_string(line_no) + ": header needs feature columns, label" +
                             (weight_column ? ", weight" : ""));
  }
  const std::size_t dimension = header.size() - trailing;
  for (std::size_t j = 0; j < dimension; ++j) {
    if (header[j] != "f" + std::to_string(j)) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected column 'f" + std::to_string(j) +
                               "', found '" + header[j] + "'");
    }
  }
  if (header[dimension] != "label" || (weight_column && header[dimension + 1] != "weight")) {
    throw std::runtime_error("line " + std::to_string(line_no) + ": expected trailing columns label" +
                             (weight_column ? ",weight" : ""));
  }

  std::vector<double> features;
  std::vector<int> labels;
  std::vector<double> weights;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_commas(line);
    if (cells.size() != header.size()) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                               " columns, found " + std::to_string(cells.size()));
    }
    for (std::size_t j = 0; j < dimension; ++j) features.push_back(parse_number(cells[j], line_no));
    const double label = parse_number(cells[dimension], line_no);
    if (label != 1.0 && label != -1.0) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": label must be +1 or -1, found '" +
                               cells[dimension] + "'");
    }
    labels.push_back(static_cast<int>(label));
    if (weight_column) {
      const double w = parse_number(cells[dimension + 1], line_no);
      if (w < 0.0) throw std::runtime_error("line " + std::to_string(line_no) + ": negative weight");
      weights.push_back(w);
    }
  }
  if (labels.empty()) throw std::runtime_error("dataset '" + path.string() + "' has no data rows");
  return Dataset(std::move(features), dimension, std::move(labels), std::move(weights));
}

void save_csv(const Dataset& data, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write dataset '" + path.string() + "'");
  for (std::size_t j = 0; j < data.dimension(); ++j) out << 'f' << j << ',';
  out << "label,weight\n";
  char buffer[64];
  auto put = [&](double v) {
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
    out.write(buffer, ptr - buffer);
  };
  for (std::size_t n = 0; n < data.size(); ++n) {
    for (double v : data.row(n)) {
      put(v);
      out << ',';
    }
    out << data.label(n) << ',';
    put(data.weights()[n]);
    out << '\n';
  }
}

Dataset make_synthetic_dataset(std::size_t size, std::size_t dimension, std::uint64_t seed) {
  if (size == 0 || dimension == 0) throw std::invalid_argument("make_synthetic_dataset: empty shape");
  const std::uint64_t tag = purpose_tag("synthetic-dataset");
  std::vector<double> features;
  features.reserve(size * dimension);
  std::vector<int> labels;
  labels.reserve(size);
  for (std::size_t n = 0; n < size; ++n) {
    RandomStream stream(seed, tag, n, 0);
    for (std::size_t j = 0; j < dimension; ++j) features.push_back(stream.next_uniform());
    labels.push_back(n % 2 == 0 ? 1 : -1);
  }
  return Dataset(std::move(features), dimension, std::move(labels));
}

}  // namespace pboost
