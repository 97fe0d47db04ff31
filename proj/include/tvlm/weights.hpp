#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace tvlm {

// Localization weights gamma_{j,T}(k), k = 0..T_j-1, stored as a dense
// nonzero block at offset `first` (O(b T_j) memory).
struct WeightVector {
  std::int64_t first = 0;
  std::vector<double> values;
  std::int64_t domain = 0;  // T_j

  double at(std::int64_t k) const {
    const std::int64_t i = k - first;
    if (i < 0 || i >= static_cast<std::int64_t>(values.size())) return 0.0;
    return values[i];
  }
  std::int64_t last() const {
    return first + static_cast<std::int64_t>(values.size()) - 1;
  }
  double delta() const;  // sup_k |gamma(k)|
  double sum() const;    // compensated
};

// Two-sided kernel K: rectangle 1_[-1/2,1/2], or uniform samples of a
// nonnegative symmetric compactly supported function on [-half, half]
// (linear interpolation between samples).
struct Kernel {
  bool rectangle = true;
  std::vector<double> samples;
  double half = 0.5;

  double operator()(double s) const;
  double norm_inf() const;
  double norm_1() const;
  void validate() const;
};

// gamma(k) = rho^{-1} K((u T_j - k)/(b T_j)), normalized to sum 1.
// Throws BoundaryError when the kernel support misses the sample entirely.
WeightVector kernel_weights(double u, std::int64_t Tj, double b, const Kernel& K);

// One-sided exponential-forgetting weights:
// gamma(k) = rho^{-1} exp(-(floor(u T_j)-1-k)/(b T_j)) for 0 <= k < floor(u T_j).
// Throws BoundaryError when floor(u T_j) < 1.
WeightVector recursive_weights(double u, std::int64_t Tj, double b);

// Normalizing constant of the recursive weights (geometric closed form).
double recursive_rho(std::int64_t uj, double bTj);

struct WeightDiagnostics {
  double delta = 0.0;     // sup_k |gamma(k)|
  double gamma[3] = {0, 0, 0};  // Gamma_q(u; j, T), q = 0,1,2
};

// Gamma_q centers at T u 2^{-j} (rescaled-time position in coefficient index).
WeightDiagnostics diagnostics(const WeightVector& w, double u, std::int64_t T, int j);

// Phi_{j,T}(lambda; i, v) = sum_{l : 0 <= 2^i l + v < T_{j-i}} gamma_{j-i,T}(2^i l + v) e^{i l lambda},
// where `w` holds the scale-(j-i) weights.
std::vector<std::complex<double>> weight_fourier(const WeightVector& w, int i, int v,
                                                 std::span<const double> lambdas);

// Exact value of  int_{-pi}^{pi} Phi(.;i,v) conj(Phi(.;i',v')) dlambda
// = 2 pi sum_l gamma_{j-i}(2^i l + v) gamma_{j-i'}(2^{i'} l + v').
double phi_inner(const WeightVector& wa, int i, int v,
                 const WeightVector& wb, int ip, int vp);

enum class WeightKind { kernel, recursive };

class WeightScheme {
 public:
  static WeightScheme rectangle(double bandwidth);
  static WeightScheme custom_kernel(double bandwidth, Kernel k);
  static WeightScheme recursive(double bandwidth);

  WeightKind kind() const { return kind_; }
  double bandwidth() const { return bandwidth_; }
  const Kernel& kernel() const { return kernel_; }
  std::string tag() const;

  WeightVector weights(double u, std::int64_t Tj) const;

  // Limit constant V(i,v;i',v'): 2pi 2^{-i-i'} for the rectangle,
  // pi 2^{-i-i'} for recursive weights, numeric (from phi_inner at a
  // reference size) for custom kernels.
  double limit_V(int i, int v, int ip, int vp) const;
  // Constant c with delta_{j,T} ~ c/(b T_j).
  double limit_delta_rate() const;

  // Estimator boundary policy: two-sided kernels drop u < b/2 and
  // u > 1 - b/2; recursive weights allow u in (0, 1].
  bool interior(double u) const;

 private:
  WeightScheme(WeightKind kind, double b, Kernel k);

  WeightKind kind_;
  double bandwidth_;
  Kernel kernel_;
  mutable std::map<std::tuple<int, int, int, int>, double> numeric_V_;
};

}  // namespace tvlm
