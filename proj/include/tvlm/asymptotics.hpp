#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "tvlm/models.hpp"
#include "tvlm/wavelet.hpp"
#include "tvlm/weights.hpp"

namespace tvlm {

struct AsymptoticConfig {
  int nodes_per_cell = 8;     // Gauss-Legendre nodes per mesh cell
  int singular_cells = 48;    // geometric cells grading into a singularity
  double grade_ratio = 0.55;
  double xi_max = 32768.0;    // |xi| truncation of the K(d) integral
  int lattice_bound = 256;    // D_infinity lattice sum over |l| <= bound
  int sigma_cells = 48;       // lambda cells for the |D|^2 integrals
  double tail_tol = 1e-3;     // certified relative tail tolerance
  int min_nodes = 256;
};

// K(d) = int |xi|^{-2d} |psi_hat(xi)|^2 dxi on 1/2 - alpha < d < M + 1/2.
// Nodes and |psi_hat|^2 are cached so repeated evaluation over a d-grid is
// cheap; the truncation tail is certified with the alpha-decay envelope.
class KEvaluator {
 public:
  KEvaluator(const WaveletBank& bank, AsymptoticConfig cfg = {});
  double operator()(double d) const;  // throws DomainError / PrecisionError

 private:
  const WaveletBank* bank_;
  AsymptoticConfig cfg_;
  std::vector<double> log_xi_, wpsi_;  // log nodes, weight * |psi_hat|^2
};

double K_of_d(double d, const WaveletBank& bank, const AsymptoticConfig& cfg = {});

// sigma_j^2(u) = int_{-pi}^{pi} |H_j(lambda)|^2 f(u, lambda) dlambda with a
// graded mesh into the lambda = 0 singularity.
double local_wavelet_spectrum(const std::function<double(double)>& f_u, double d_u,
                              int j, const WaveletBank& bank,
                              const AsymptoticConfig& cfg = {});
double local_wavelet_spectrum(const TvArfimaModel& m, double u, int j,
                              const WaveletBank& bank, const AsymptoticConfig& cfg = {});
double local_wavelet_spectrum(const TvFgnModel& m, double u, int j,
                              const WaveletBank& bank, const AsymptoticConfig& cfg = {});
double local_wavelet_spectrum(const TvFbmModel& m, double u, int j,
                              const WaveletBank& bank, const AsymptoticConfig& cfg = {});

// D_{infinity, m, v}(lambda; d) =
//   2^{-m/2} sum_l |lambda+2 l pi|^{-2d} e^{-i v 2^{-m}(lambda+2 l pi)}
//            conj(psi_hat(lambda+2 l pi)) psi_hat(2^{-m}(lambda+2 l pi)).
std::complex<double> cross_spectral_D(double lambda, int i_diff, int v, double d,
                                      const WaveletBank& bank,
                                      const AsymptoticConfig& cfg = {});

// Caches the psi-hat lattice products on the quadrature nodes so that
// integral(|D_{m,v}|^2) and Sigma(d) are cheap per d.
class SigmaEvaluator {
 public:
  SigmaEvaluator(const WaveletBank& bank, int ell, AsymptoticConfig cfg = {});

  double D_sq_integral(int m, int v, double d) const;
  // Sigma_{i,i'} = 2 * 2^{(1+4d)i} sum_v V(0,0;i-i',v) int |D_{i-i',v}|^2,
  // lower triangle, mirrored.
  Eigen::MatrixXd sigma(double d, const WeightScheme& scheme) const;
  double estimator_variance(double d, const std::vector<double>& w,
                            const WeightScheme& scheme) const;
  const KEvaluator& K() const { return K_; }
  int ell() const { return ell_; }

 private:
  void powers(double d, std::vector<double>& pw) const;  // |xi|^{-2d} per (node,l)

  const WaveletBank* bank_;
  int ell_;
  AsymptoticConfig cfg_;
  KEvaluator K_;
  std::vector<double> lam_w_;                 // quadrature weights per node
  std::vector<double> log_abs_;               // log|lambda+2 l pi| per (node,l)
  std::vector<std::vector<std::complex<double>>> prod_;  // per (m,v): node x l
  std::size_t n_nodes_ = 0, n_lat_ = 0;
};

// One-shot wrappers; prefer SigmaEvaluator when sweeping d.
Eigen::MatrixXd sigma_matrix(double d, int ell, const WeightScheme& scheme,
                             const WaveletBank& bank, const AsymptoticConfig& cfg = {});
double estimator_variance(double d, int ell, const std::vector<double>& w,
                          const WeightScheme& scheme, const WaveletBank& bank,
                          const AsymptoticConfig& cfg = {});

struct VarianceReport {
  double K_value = 0.0;
  Eigen::MatrixXd Sigma;
  double V_value = 0.0;
  std::string scheme_tag;
  double d = 0.0;
  std::vector<double> w;
};

VarianceReport variance_report(double d, int ell, const std::vector<double>& w,
                               const WeightScheme& scheme, const WaveletBank& bank,
                               const AsymptoticConfig& cfg = {});

// V(d_hat) on a 0.01-step grid with linear interpolation, for plug-in
// confidence intervals. Grid points where the certified evaluation fails
// are NaN (callers flag the interval unavailable).
class VarianceCache {
 public:
  VarianceCache(const WaveletBank& bank, const WeightScheme& scheme, int ell,
                const std::vector<double>& w, AsymptoticConfig cfg = {});
  // NaN when d is outside the domain or the grid failed there
  double value(double d) const;
  double d_lo() const { return lo_; }
  double d_hi() const { return lo_ + step_ * static_cast<double>(values_.size() - 1); }

 private:
  double lo_ = 0.0;
  double step_ = 0.01;
  std::vector<double> values_;
};

}  // namespace tvlm
