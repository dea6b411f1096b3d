#include "pboost/weighted_stats.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "pboost/dataset.hpp"

namespace pboost {
namespace {

void check_sizes(std::size_t weights, std::size_t labels, std::size_t q) {
  if (weights != labels || weights != q) throw std::invalid_argument("weights, labels and q table differ in length");
}

}  // namespace

WStatistics w_statistics(std::span<const double> weights, std::span<const int> labels,
                         std::span<const double> q_plus) {
  check_sizes(weights.size(), labels.size(), q_plus.size());
  WStatistics w;
  for (std::size_t n = 0; n < weights.size(); ++n) {
    const double q = q_plus[n];
    if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("q estimate outside [0, 1]");
    if (labels[n] > 0) {
      w.pp += weights[n] * q;
      w.mp += weights[n] * (1.0 - q);
    } else {
      w.pm += weights[n] * q;
      w.mm += weights[n] * (1.0 - q);
    }
  }
  return w;
}

Alphas optimal_alphas(const WStatistics& w) {
  const double d = kAlphaSmoothing;
  return {0.5 * std::log((w.pp + d) / (w.pm + d)), 0.5 * std::log((w.mm + d) / (w.mp + d))};
}

std::pair<double, double> z_branches(const WStatistics& w, const Alphas& a) {
  return {w.pp * std::exp(-a.plus) + w.pm * std::exp(a.plus), w.mp * std::exp(a.minus) + w.mm * std::exp(-a.minus)};
}

double z_value(const WStatistics& w, const Alphas& alphas) {
  const auto [zp, zm] = z_branches(w, alphas);
  return zp + zm;
}

WeightUpdate update_weights(std::span<const double> weights, std::span<const int> labels,
                            std::span<const double> q_plus, const Alphas& alphas) {
  check_sizes(weights.size(), labels.size(), q_plus.size());
  std::vector<double> raw(weights.size());
  for (std::size_t n = 0; n < weights.size(); ++n) {
    const double y = labels[n];
    raw[n] = weights[n] * (q_plus[n] * std::exp(-alphas.plus * y) + (1.0 - q_plus[n]) * std::exp(alphas.minus * y));
  }
  WeightUpdate out;
  for (double v : raw) out.z += v;
  out.weights = normalize_weights(raw);
  return out;
}

}  // namespace pboost
