#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace pboost {

/// Rescales a nonnegative vector to sum to one.
///
/// The input is first divided by its maximum so that vectors of tiny entries
/// (1e-300 and below) normalize without underflow. Throws
/// std::invalid_argument if any entry is negative or non-finite, or if all
/// entries are zero.
std::vector<double> normalize_weights(std::span<const double> raw);

/// Weighted labelled examples. Immutable once built.
///
/// Invariants: at least one example, one shared feature dimension, labels
/// in {-1, +1}, weights nonnegative and summing to one within 1e-12.
class Dataset {
 public:
  /// `features` is row-major with `dimension` columns. Weights are normalized;
  /// an empty weight vector means uniform weights.
  Dataset(std::vector<double> features, std::size_t dimension, std::vector<int> labels,
          std::vector<double> weights = {});

  std::size_t size() const { return labels_.size(); }
  std::size_t dimension() const { return dimension_; }

  std::span<const double> row(std::size_t n) const {
    return {features_.data() + n * dimension_, dimension_};
  }
  int label(std::size_t n) const { return labels_[n]; }
  const std::vector<int>& labels() const { return labels_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& features() const { return features_; }

  /// Stable 64-bit digest of features, labels and weights. Used to check that
  /// a model is evaluated on the data it recorded estimates for.
  std::uint64_t fingerprint() const;

 private:
  std::vector<double> features_;
  std::size_t dimension_;
  std::vector<int> labels_;
  std::vector<double> weights_;
};

/// Reads `f0,...,f{d-1},label[,weight]` with a header row.
///
/// With `weight_column` set the last column holds raw nonnegative weights,
/// otherwise weights are uniform. Errors name the 1-based file line.
Dataset load_csv(const std::filesystem::path& path, bool weight_column);

/// Inverse of load_csv; always writes a weight column.
void save_csv(const Dataset& data, const std::filesystem::path& path);

/// Balanced synthetic dataset: distinct points uniform in [0,1)^dimension,
/// labels alternate +1/-1, uniform weights.
Dataset make_synthetic_dataset(std::size_t size, std::size_t dimension, std::uint64_t seed);

}  // namespace pboost
