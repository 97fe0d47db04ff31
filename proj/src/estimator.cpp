#include "tvlm/estimator.hpp"

#include <cmath>
#include <limits>

#include "tvlm/errors.hpp"
#include "tvlm/summation.hpp"

namespace tvlm {

RegressionWeights ols_regression_weights(int ell) {
  if (ell < 1) throw ConfigError("regression needs ell >= 1 (slope undefined)");
  RegressionWeights rw;
  rw.ell = ell;
  rw.w.resize(static_cast<std::size_t>(ell + 1));
  const double ibar = 0.5 * ell;
  double ss = 0.0;
  for (int i = 0; i <= ell; ++i) ss += (i - ibar) * (i - ibar);
  const double denom = 2.0 * std::log(2.0) * ss;
  for (int i = 0; i <= ell; ++i) {
    rw.w[static_cast<std::size_t>(i)] = (i - ibar) / denom;
  }
  return rw;
}

RegressionWeights custom_regression_weights(std::vector<double> w) {
  if (w.size() < 2) throw ConfigError("regression weights need length >= 2");
  Accumulator s0, s1;
  for (std::size_t i = 0; i < w.size(); ++i) {
    s0.add(w[i]);
    s1.add(static_cast<double>(i) * w[i]);
  }
  if (std::abs(s0.value()) > 1e-12 ||
      std::abs(2.0 * std::log(2.0) * s1.value() - 1.0) > 1e-12) {
    throw ConfigError("regression weights must satisfy sum w = 0 and "
                      "2 log(2) sum i w_i = 1");
  }
  RegressionWeights rw;
  rw.ell = static_cast<int>(w.size()) - 1;
  rw.w = std::move(w);
  return rw;
}

const RegressionWeights& EstimationPlan::effective_weights() const {
  static thread_local RegressionWeights cached;
  if (!weights.w.empty()) {
    if (weights.ell != ell) {
      throw ConfigError("regression weight length does not match ell");
    }
    return weights;
  }
  if (cached.ell != ell || cached.w.empty()) cached = ols_regression_weights(ell);
  return cached;
}

MemoryEstimate estimate_d(const LocalScalogram& sc, const EstimationPlan& plan) {
  if (sc.L != plan.L || sc.ell < plan.ell) {
    throw ConfigError("scalogram does not cover scales L.." +
                      std::to_string(plan.L + plan.ell));
  }
  const RegressionWeights& rw = plan.effective_weights();
  MemoryEstimate est;
  est.L = plan.L;
  est.ell = plan.ell;
  est.level = plan.level;
  est.scheme_tag = sc.scheme_tag;
  est.points.resize(sc.u_grid.size());
  for (std::size_t iu = 0; iu < sc.u_grid.size(); ++iu) {
    PointEstimate& pt = est.points[iu];
    pt.u = sc.u_grid[iu];
    pt.d_hat = std::numeric_limits<double>::quiet_NaN();
    pt.se = pt.lo = pt.hi = std::numeric_limits<double>::quiet_NaN();
    bool zero = false, boundary = false;
    for (int i = 0; i <= plan.ell; ++i) {
      const std::uint8_t f = sc.flags[static_cast<std::size_t>(i)][iu];
      if (f & (scalflag::kBoundary | scalflag::kError)) boundary = true;
      if (f & scalflag::kZero) zero = true;
    }
    if (boundary) {
      pt.flags |= estflag::kBoundaryDropped;
      continue;
    }
    if (zero) {
      pt.flags |= estflag::kZeroScalogram;
      continue;
    }
    const double base = sc.values[0][iu];
    Accumulator acc;
    for (int i = 1; i <= plan.ell; ++i) {
      acc.add(rw.w[static_cast<std::size_t>(i)] *
              std::log(sc.values[static_cast<std::size_t>(i)][iu] / base));
    }
    pt.d_hat = acc.value();
  }
  return est;
}

void attach_confidence(MemoryEstimate& est, const LocalScalogram& sc,
                       const EstimationPlan& plan, const VarianceCache& cache) {
  const double z = gaussian_quantile(1.0 - 0.5 * (1.0 - plan.level));
  for (std::size_t iu = 0; iu < est.points.size(); ++iu) {
    PointEstimate& pt = est.points[iu];
    if (!pt.valid()) continue;
    const double V = cache.value(pt.d_hat);
    if (std::isnan(V)) {
      pt.flags |= estflag::kCiUnavailable;
      continue;
    }
    const double delta = sc.delta[0][iu];  // exact sup weight at scale L
    pt.se = std::sqrt(delta * V);
    pt.lo = pt.d_hat - z * pt.se;
    pt.hi = pt.d_hat + z * pt.se;
  }
}

double gaussian_quantile(double p) {
  // Wichura's PPND16 (AS 241)
  if (!(p > 0.0 && p < 1.0)) throw ConfigError("quantile needs p in (0,1)");
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
               1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
             1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
               5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
             4.2313330701600911252e1) * r + 1.0);
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
              3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
            4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
          (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
              6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
            2.05319162663775882187e0) * r + 1.0);
  } else {
    r -= 5.0;
    val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
              2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
            5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
          (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
              1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
            5.99832206555887937690e-1) * r + 1.0);
  }
  return (q < 0.0) ? -val : val;
}

TuningAdvice advise_tuning(std::int64_t T, double d_prior, double beta, int p,
                           const WaveletBank& bank) {
  if (!(beta > 0.0 && beta <= 2.0)) throw ConfigError("beta must lie in (0,2]");
  if (!(d_prior < p + 0.5)) throw ConfigError("d_prior must satisfy d < p + 1/2");
  if (T < 4) throw ConfigError("series too short to advise");
  const double den = 3.0 + 6.0 * beta - 2.0 * d_prior + 2.0 * static_cast<double>(p);
  const double log2T = std::log2(static_cast<double>(T));
  TuningAdvice adv;
  adv.rate_exponent = -2.0 * beta / den;
  int L = static_cast<int>(std::lround(log2T * 2.0 / den));
  L = std::max(L, 1);
  const double b_exp = (2.0 * d_prior - 2.0 * p - 2.0 * beta - 1.0) / den;
  double b = std::pow(static_cast<double>(T), b_exp);
  // feasibility: at least ~16 coefficients in the window at scale L
  for (; L >= 1; --L) {
    const std::int64_t TL = bank.coeff_count(T, std::min(L, bank.max_scale()));
    if (TL < 1) continue;
    const double b_min = 16.0 / static_cast<double>(TL);
    if (b_min < 1.0) {
      adv.L = L;
      adv.bandwidth = std::min(std::max(b, b_min), 0.5);
      return adv;
    }
  }
  throw ConfigError("series too short: no scale satisfies T_L * b >= 16");
}

}  // namespace tvlm
