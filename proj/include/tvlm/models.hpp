#pragma once

#include <functional>
#include <string>
#include <vector>

namespace tvlm {

// Time-varying memory parameter u in [0,1] -> d(u).
struct MemoryCurve {
  std::function<double(double)> d;
  double d_min = 0.0;
  double d_max = 0.0;
  double lipschitz_hint = 0.0;
};

MemoryCurve constant_memory(double d);
// d(u) = (1 - cos(pi u / 2)) / 3
MemoryCurve cosine_ramp_memory();
MemoryCurve piecewise_memory(double d_left, double d_right, double split = 0.5);

// tvARFIMA(q, d, r): A(u,lambda) = (1-e^{-i lambda})^{-d(u)+p} * sigma(u)/sqrt(2 pi)
//                      * (1 + sum theta_k(u) e^{-ik lambda}) / (1 - sum phi_k(u) e^{-ik lambda}).
// Construction validates, on a dense u-grid: causality of the AR part
// (all roots of 1 - sum phi_k z^k outside the closed unit disk),
// sigma(u) > 0, and d_max < p + 1/2.
class TvArfimaModel {
 public:
  TvArfimaModel(MemoryCurve memory,
                std::function<std::vector<double>(double)> ar_coeffs, int q,
                std::function<std::vector<double>(double)> ma_coeffs, int r,
                std::function<double(double)> innovation_scale, int p);

  // stationary ARFIMA(q, d, r) with fixed coefficients
  static TvArfimaModel stationary(double d, std::vector<double> phi,
                                  std::vector<double> theta, double sigma,
                                  int p = 0);

  const MemoryCurve& memory() const { return memory_; }
  double d(double u) const { return memory_.d(u); }
  std::vector<double> phi(double u) const { return ar_(u); }
  std::vector<double> theta(double u) const { return ma_(u); }
  double sigma(double u) const { return sigma_(u); }
  int p() const { return p_; }
  int q() const { return q_; }
  int r() const { return r_; }
  static constexpr double beta = 2.0;  // smoothness exponent of f*

  // f*(u, lambda) = sigma^2/(2 pi) |Theta|^2 / |Phi|^2
  double smooth_part(double u, double lambda) const;
  std::string tag() const;
  // all parameter curves constant on the check grid
  bool constant_params() const { return constant_; }

 private:
  MemoryCurve memory_;
  std::function<std::vector<double>(double)> ar_;
  std::function<std::vector<double>(double)> ma_;
  std::function<double(double)> sigma_;
  int q_, r_, p_;
  bool constant_ = false;
};

// tvFGN: p = 0, d(u) = H(u) - 1/2, f*(u,lambda) = f_FBM(lambda; H(u)).
class TvFgnModel {
 public:
  explicit TvFgnModel(std::function<double(double)> hurst);
  double H(double u) const { return hurst_(u); }
  double d(double u) const { return hurst_(u) - 0.5; }
  int p() const { return 0; }
  double smooth_part(double u, double lambda) const;
  bool constant_hurst() const { return constant_; }
  std::string tag() const;

 private:
  std::function<double(double)> hurst_;
  bool constant_ = false;
};

// tvFBM: p = 1, d(u) = H(u) + 1/2; spectral evaluation only.
class TvFbmModel {
 public:
  explicit TvFbmModel(std::function<double(double)> hurst);
  double H(double u) const { return hurst_(u); }
  double d(double u) const { return hurst_(u) + 0.5; }
  int p() const { return 1; }
  double smooth_part(double u, double lambda) const;
  std::string tag() const;

 private:
  std::function<double(double)> hurst_;
};

// Smooth part of the FBM/FGN spectral density:
//   |2 sin(l/2)/l|^{2H+1} + |2 sin(l/2)|^{2H+1} sum_{k != 0} |l + 2 k pi|^{-2H-1}
// lattice sum truncated at |k| <= trunc with an integral-comparison tail.
double fgn_smooth_part(double lambda, double H, int trunc = 10000);

// Generalized local spectral density f(u, lambda) = |1-e^{-i lambda}|^{-2 d(u)} f*(u, lambda).
// lambda = 0: throws DomainError when d(u) > 0, returns the limit otherwise.
double local_spectral_density(const TvArfimaModel& m, double u, double lambda);
double local_spectral_density(const TvFgnModel& m, double u, double lambda);
double local_spectral_density(const TvFbmModel& m, double u, double lambda);

// |1 - e^{-i lambda}|^2 = (2 sin(lambda/2))^2
double one_minus_exp_sq(double lambda);

}  // namespace tvlm
