#pragma once

#include <span>
#include <utility>
#include <vector>

namespace pboost {

/// Smoothing added to both sides of the alpha log-ratio.
inline constexpr double kAlphaSmoothing = 1e-8;

/// W^{ab} = sum over examples with label b of D(n) q(a, X_n); a is the
/// classifier output, b the label.
struct WStatistics {
  double pp = 0.0;  // W^{++}
  double pm = 0.0;  // W^{+-}
  double mp = 0.0;  // W^{-+}
  double mm = 0.0;  // W^{--}

  double total() const { return pp + pm + mp + mm; }
};

struct Alphas {
  double plus = 0.0;
  double minus = 0.0;
};

WStatistics w_statistics(std::span<const double> weights, std::span<const int> labels,
                         std::span<const double> q_plus);

/// alpha_+ = 1/2 log((W^{++}+d)/(W^{+-}+d)), alpha_- = 1/2 log((W^{--}+d)/(W^{-+}+d)).
Alphas optimal_alphas(const WStatistics& w);

/// Normalizer at arbitrary alphas:
/// W^{++} e^{-a+} + W^{+-} e^{a+} + W^{-+} e^{a-} + W^{--} e^{-a-}.
double z_value(const WStatistics& w, const Alphas& alphas);

/// Per-branch parts of z_value: (W^{++} e^{-a+} + W^{+-} e^{a+}, W^{-+} e^{a-} + W^{--} e^{-a-}).
std::pair<double, double> z_branches(const WStatistics& w, const Alphas& alphas);

struct WeightUpdate {
  std::vector<double> weights;
  double z = 0.0;
};

/// D'(n) proportional to D(n) (q(+,X_n) e^{-a+ y_n} + q(-,X_n) e^{a- y_n}); z is the normalizer.
WeightUpdate update_weights(std::span<const double> weights, std::span<const int> labels,
                            std::span<const double> q_plus, const Alphas& alphas);

}  // namespace pboost
