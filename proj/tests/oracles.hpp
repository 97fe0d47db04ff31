#pragma once

// Test-only oracles, kept independent of the library's computation paths.

#include <cmath>
#include <complex>
#include <random>
#include <span>
#include <vector>

#include "tvlm/wavelet.hpp"

namespace oracle {

// W_{j,k} by brute-force evaluation of the defining convolution.
inline std::vector<double> direct_dwt_scale(std::span<const double> x,
                                            const tvlm::WaveletBank& bank, int j) {
  const auto& f = bank.filter(j).taps;
  const auto T = static_cast<std::int64_t>(x.size());
  const auto S = static_cast<std::int64_t>(f.size());
  const std::int64_t Tj = T >= S ? (T - S) / (std::int64_t{1} << j) + 1 : 0;
  std::vector<double> out(static_cast<std::size_t>(Tj), 0.0);
  for (std::int64_t k = 0; k < Tj; ++k) {
    long double acc = 0.0L;
    for (std::int64_t s = 0; s < S; ++s) {
      acc += static_cast<long double>(f[static_cast<std::size_t>(s)]) *
             x[static_cast<std::size_t>((std::int64_t{1} << j) * k + s)];
    }
    out[static_cast<std::size_t>(k)] = static_cast<double>(acc);
  }
  return out;
}

// trapezoid rule on a uniform grid
template <typename F>
double trapezoid(F&& f, double a, double b, int n) {
  double acc = 0.5 * (f(a) + f(b));
  for (int i = 1; i < n; ++i) acc += f(a + (b - a) * i / n);
  return acc * (b - a) / n;
}

// classical D4 low-pass from the closed form with sqrt(3)
inline std::vector<double> d4_lowpass_closed_form() {
  const double s3 = std::sqrt(3.0);
  const double c = 1.0 / (4.0 * std::sqrt(2.0));
  return {(1.0 + s3) * c, (3.0 + s3) * c, (3.0 - s3) * c, (1.0 - s3) * c};
}

// |psi_hat|^2 of the Haar wavelet: 16 sin^4(xi/4) / xi^2
inline double haar_psi_hat_sq(double xi) {
  const double s = std::sin(0.25 * xi);
  return 16.0 * s * s * s * s / (xi * xi);
}

// power series of 1/poly via long division (poly[0] != 0), n terms
inline std::vector<double> series_reciprocal(const std::vector<double>& poly,
                                             std::size_t n) {
  std::vector<double> out(n, 0.0);
  out[0] = 1.0 / poly[0];
  for (std::size_t k = 1; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t i = 1; i <= k && i < poly.size(); ++i) {
      acc += poly[i] * out[k - i];
    }
    out[k] = -acc / poly[0];
  }
  return out;
}

// coefficients of (1-z)^{-delta} via direct lgamma ratios
inline std::vector<double> frac_series_lgamma(double delta, std::size_t n) {
  std::vector<double> out(n, 0.0);
  out[0] = 1.0;
  for (std::size_t k = 1; k < n; ++k) {
    // Gamma(k+delta)/(Gamma(delta) Gamma(k+1)), sign-safe for delta<0 via
    // the reflection into a product over small k
    if (delta > 0.0) {
      out[k] = std::exp(std::lgamma(static_cast<double>(k) + delta) -
                        std::lgamma(delta) - std::lgamma(static_cast<double>(k) + 1.0));
    } else {
      // fall back to the product (still independent of the library path,
      // which uses the ratio recurrence on the previous value)
      long double acc = 1.0L;
      for (std::size_t m = 0; m < k; ++m) {
        acc *= (static_cast<long double>(m) + delta) / (static_cast<long double>(m) + 1.0L);
      }
      out[k] = static_cast<double>(acc);
    }
  }
  return out;
}

inline std::vector<double> convolve(const std::vector<double>& a,
                                    const std::vector<double>& b, std::size_t n) {
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j) {
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

inline std::vector<double> random_series(std::size_t n, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = dist(gen);
  return x;
}

inline double mean(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m += v;
  return m / static_cast<double>(x.size());
}

inline double variance(std::span<const double> x) {
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size() - 1);
}

}  // namespace oracle
