#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace tvlm {

// Daubechies family; Haar is order 1. The order equals the number of
// vanishing moments M.
struct WaveletSpec {
  int order = 2;
  int diff_order = 0;  // p; must satisfy p <= M

  int vanishing_moments() const { return order; }
  double fourier_decay() const;  // tabulated alpha
  void validate() const;         // throws ConfigError on bad configuration
};

// Detail filter at one scale. Taps are stored so that
//   W_{j,k} = sum_s taps[s] * x[2^j k + s]   (x 0-based)
// which keeps the support of the analysis filter inside the sample
// exactly for k = 0 .. T_j - 1 with T_j = floor((T - support)/2^j) + 1.
struct ScaleFilter {
  int scale = 1;
  std::vector<double> taps;

  std::int64_t support_length() const {
    return static_cast<std::int64_t>(taps.size());
  }
  // H_j(lambda) = sum_m h_{j,m} e^{-i m lambda} with h_{j,m} = taps[-m-1]
  std::complex<double> transfer(double lambda) const;
};

class WaveletBank {
 public:
  WaveletBank(WaveletSpec spec, int max_scale);

  const WaveletSpec& spec() const { return spec_; }
  int max_scale() const { return static_cast<int>(filters_.size()); }
  const ScaleFilter& filter(int j) const;

  const std::vector<double>& lowpass() const { return lowpass_; }
  const std::vector<double>& highpass() const { return highpass_; }
  int base_length() const { return static_cast<int>(lowpass_.size()); }

  // Number of wavelet coefficients available at scale j from T samples.
  std::int64_t coeff_count(std::int64_t T, int j) const;
  int max_feasible_scale(std::int64_t T) const;

  // Fourier transform of the wavelet by the truncated infinite product of
  // the low-pass symbol, with a first-order phase tail correction.
  std::complex<double> psi_hat(double xi) const;
  double psi_hat_sq(double xi) const;

  int product_depth() const { return product_depth_; }
  void set_product_depth(int depth) { product_depth_ = depth; }

 private:
  std::complex<double> symbol(const std::vector<double>& taps, double lambda) const;

  WaveletSpec spec_;
  std::vector<double> lowpass_;   // h, sum = sqrt(2)
  std::vector<double> highpass_;  // g_n = (-1)^n h_{L-1-n}
  std::vector<ScaleFilter> filters_;
  double mean_delay_ = 0.0;  // sum n h_n / sqrt(2), for the product tail
  int product_depth_ = 25;
};

WaveletBank build_bank(const WaveletSpec& spec, int max_scale);

// Classical scaling coefficients (sum = sqrt(2)), orders 1..10.
std::vector<double> daubechies_lowpass(int order);

}  // namespace tvlm
