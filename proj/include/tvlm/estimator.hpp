#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tvlm/asymptotics.hpp"
#include "tvlm/scalogram.hpp"
#include "tvlm/weights.hpp"

namespace tvlm {

// Regression weights w_0..w_ell with  sum w_i = 0  and  2 log(2) sum i w_i = 1.
struct RegressionWeights {
  int ell = 0;
  std::vector<double> w;
};

// Unweighted-OLS slope weights: w_i = (i - ell/2) / (2 log 2 sum_m (m - ell/2)^2).
RegressionWeights ols_regression_weights(int ell);
// User-supplied weights, validated against the two constraints.
RegressionWeights custom_regression_weights(std::vector<double> w);

struct EstimationPlan {
  int L = 2;
  int ell = 2;
  WeightScheme scheme = WeightScheme::rectangle(0.25);
  double level = 0.95;
  RegressionWeights weights;  // empty -> OLS weights for ell

  const RegressionWeights& effective_weights() const;
};

namespace estflag {
constexpr std::uint8_t kBoundaryDropped = 1;
constexpr std::uint8_t kZeroScalogram = 2;
constexpr std::uint8_t kCiUnavailable = 4;
}  // namespace estflag

struct PointEstimate {
  double u = 0.0;
  double d_hat = 0.0;
  double se = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::uint8_t flags = 0;
  bool valid() const {
    return (flags & (estflag::kBoundaryDropped | estflag::kZeroScalogram)) == 0;
  }
};

struct MemoryEstimate {
  int L = 0;
  int ell = 0;
  double level = 0.95;
  std::string scheme_tag;
  std::vector<PointEstimate> points;
};

// d_hat(u) = sum_{i=0}^{ell} w_i log sigma_hat^2_{L+i,T}(u), evaluated as
// log-ratios against scale L so that rescaling the input cancels exactly.
MemoryEstimate estimate_d(const LocalScalogram& scalogram, const EstimationPlan& plan);

// Plug-in intervals: se = sqrt(delta_{L,T}(u) * V(d_hat)), d_hat +- z se.
void attach_confidence(MemoryEstimate& est, const LocalScalogram& scalogram,
                       const EstimationPlan& plan, const VarianceCache& cache);

// Inverse standard normal CDF (rational approximation, |error| < 1e-9).
double gaussian_quantile(double p);

struct TuningAdvice {
  int L = 1;
  double bandwidth = 0.1;
  double rate_exponent = 0.0;  // estimation-error rate T^{rate_exponent}
};

// Rate-balance advisor: 2^L ~ T^{2/(3+6 beta-2 d+2 p)},
// b ~ T^{(2 d-2 p-2 beta-1)/(3+6 beta-2 d+2 p)}, clamped to T_L b >= 16.
TuningAdvice advise_tuning(std::int64_t T, double d_prior, double beta, int p,
                           const WaveletBank& bank);

}  // namespace tvlm
