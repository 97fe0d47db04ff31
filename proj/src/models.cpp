#include "tvlm/models.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "tvlm/errors.hpp"
#include "tvlm/summation.hpp"

namespace tvlm {

namespace {

constexpr int kCheckGrid = 201;

// largest modulus among roots of 1 - sum_{k=1}^q phi_k z^k mapped to 1/|root|;
// causality needs every root strictly outside the closed unit disk.
double max_inverse_root(const std::vector<double>& phi) {
  int q = static_cast<int>(phi.size());
  while (q > 0 && phi[q - 1] == 0.0) --q;
  if (q == 0) return 0.0;
  if (q == 1) return std::abs(phi[0]);
  // roots of p(z) = 1 - phi_1 z - ... - phi_q z^q via the companion matrix
  // of the reversed polynomial in w = 1/z: w^q - phi_1 w^{q-1} - ... - phi_q,
  // whose roots are exactly the inverse roots of p.
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(q, q);
  for (int k = 0; k < q; ++k) comp(0, k) = phi[k];
  for (int k = 1; k < q; ++k) comp(k, k - 1) = 1.0;
  const auto ev = comp.eigenvalues();
  double m = 0.0;
  for (int k = 0; k < q; ++k) m = std::max(m, std::abs(ev[k]));
  return m;
}

std::complex<double> poly_at(const std::vector<double>& c, int n,
                             std::complex<double> z, double lead) {
  // lead + c_1 z + ... + c_n z^n
  std::complex<double> acc(lead, 0.0);
  std::complex<double> zp(1.0, 0.0);
  for (int k = 0; k < n; ++k) {
    zp *= z;
    acc += c[static_cast<std::size_t>(k)] * zp;
  }
  return acc;
}

}  // namespace

MemoryCurve constant_memory(double d) {
  return MemoryCurve{[d](double) { return d; }, d, d, 0.0};
}

MemoryCurve cosine_ramp_memory() {
  auto f = [](double u) { return (1.0 - std::cos(M_PI * u / 2.0)) / 3.0; };
  return MemoryCurve{f, 0.0, 1.0 / 3.0, M_PI / 6.0};
}

MemoryCurve piecewise_memory(double d_left, double d_right, double split) {
  auto f = [=](double u) { return u < split ? d_left : d_right; };
  return MemoryCurve{f, std::min(d_left, d_right), std::max(d_left, d_right), 0.0};
}

TvArfimaModel::TvArfimaModel(MemoryCurve memory,
                             std::function<std::vector<double>(double)> ar_coeffs,
                             int q,
                             std::function<std::vector<double>(double)> ma_coeffs,
                             int r, std::function<double(double)> innovation_scale,
                             int p)
    : memory_(std::move(memory)),
      ar_(std::move(ar_coeffs)),
      ma_(std::move(ma_coeffs)),
      sigma_(std::move(innovation_scale)),
      q_(q),
      r_(r),
      p_(p) {
  if (p_ < 0) throw ConfigError("differencing order p must be >= 0");
  if (q_ < 0 || r_ < 0) throw ConfigError("ARMA orders must be >= 0");
  double dmax = -1e300;
  double spread = 0.0;
  const double d0 = memory_.d(0.0);
  const double s0 = sigma_(0.0);
  const auto phi0 = ar_(0.0);
  const auto th0 = ma_(0.0);
  for (int i = 0; i < kCheckGrid; ++i) {
    const double u = static_cast<double>(i) / (kCheckGrid - 1);
    dmax = std::max(dmax, memory_.d(u));
    spread = std::max(spread, std::abs(memory_.d(u) - d0));
    if (!(sigma_(u) > 0.0)) {
      throw ConfigError("innovation scale sigma(u) must be positive (u=" +
                        std::to_string(u) + ")");
    }
    spread = std::max(spread, std::abs(sigma_(u) - s0));
    const auto phi = ar_(u);
    const auto th = ma_(u);
    if (static_cast<int>(phi.size()) != q_) {
      throw ConfigError("ar_coeffs(u) must have length q");
    }
    if (static_cast<int>(th.size()) != r_) {
      throw ConfigError("ma_coeffs(u) must have length r");
    }
    for (int k = 0; k < q_; ++k) spread = std::max(spread, std::abs(phi[k] - phi0[k]));
    for (int k = 0; k < r_; ++k) spread = std::max(spread, std::abs(th[k] - th0[k]));
    if (q_ > 0 && max_inverse_root(phi) >= 1.0) {
      throw ConfigError("AR polynomial has a root inside the closed unit disk at u=" +
                        std::to_string(u) + " (model not causal)");
    }
  }
  if (!(dmax < p_ + 0.5)) {
    throw ConfigError("memory curve must satisfy d(u) < p + 1/2");
  }
  constant_ = spread < 1e-15;
}

TvArfimaModel TvArfimaModel::stationary(double d, std::vector<double> phi,
                                        std::vector<double> theta, double sigma,
                                        int p) {
  const int q = static_cast<int>(phi.size());
  const int r = static_cast<int>(theta.size());
  return TvArfimaModel(
      constant_memory(d), [phi](double) { return phi; }, q,
      [theta](double) { return theta; }, r, [sigma](double) { return sigma; }, p);
}

double TvArfimaModel::smooth_part(double u, double lambda) const {
  const double s = sigma_(u);
  const std::complex<double> z(std::cos(lambda), -std::sin(lambda));
  const double num = std::norm(poly_at(theta(u), r_, z, 1.0));
  auto neg = phi(u);
  for (double& c : neg) c = -c;
  const double den = std::norm(poly_at(neg, q_, z, 1.0));
  return s * s / (2.0 * M_PI) * num / den;
}

std::string TvArfimaModel::tag() const {
  return "tvarfima(" + std::to_string(q_) + ",d," + std::to_string(r_) +
         ")p" + std::to_string(p_);
}

TvFgnModel::TvFgnModel(std::function<double(double)> hurst)
    : hurst_(std::move(hurst)) {
  double lo = 1e300, hi = -1e300;
  for (int i = 0; i < kCheckGrid; ++i) {
    const double u = static_cast<double>(i) / (kCheckGrid - 1);
    const double h = hurst_(u);
    if (!(h > 0.0 && h < 1.0)) {
      throw ConfigError("Hurst index must lie in (0,1) (u=" + std::to_string(u) +
                        ", H=" + std::to_string(h) + ")");
    }
    lo = std::min(lo, h);
    hi = std::max(hi, h);
  }
  constant_ = (hi - lo) < 1e-15;
}

double TvFgnModel::smooth_part(double u, double lambda) const {
  return fgn_smooth_part(lambda, hurst_(u));
}

std::string TvFgnModel::tag() const { return "tvfgn"; }

TvFbmModel::TvFbmModel(std::function<double(double)> hurst)
    : hurst_(std::move(hurst)) {
  for (int i = 0; i < kCheckGrid; ++i) {
    const double u = static_cast<double>(i) / (kCheckGrid - 1);
    const double h = hurst_(u);
    if (!(h > 0.0 && h < 1.0)) {
      throw ConfigError("Hurst index must lie in (0,1)");
    }
  }
}

double TvFbmModel::smooth_part(double u, double lambda) const {
  return fgn_smooth_part(lambda, hurst_(u));
}

std::string TvFbmModel::tag() const { return "tvfbm"; }

double fgn_smooth_part(double lambda, double H, int trunc) {
  const double a = std::abs(lambda);
  const double e = 2.0 * H + 1.0;
  const double s2 = 2.0 * std::sin(0.5 * a);  // |2 sin(l/2)|
  double first;
  if (a < 1e-8) {
    first = 1.0;  // |2 sin(l/2)/l| -> 1
  } else {
    first = std::pow(s2 / a, e);
  }
  Accumulator lattice;
  for (int k = trunc; k >= 1; --k) {
    lattice.add(std::pow(std::abs(a + 2.0 * M_PI * k), -e));
    lattice.add(std::pow(std::abs(a - 2.0 * M_PI * k), -e));
  }
  // tail over |k| > trunc: midpoint integral comparison plus the first
  // Euler-Maclaurin derivative term
  const double edge = 2.0 * M_PI * (trunc + 0.5);
  const double tail =
      (std::pow(edge + a, -2.0 * H) + std::pow(edge - a, -2.0 * H)) /
      (2.0 * M_PI * 2.0 * H) +
      (2.0 * M_PI * e / 24.0) *
          (std::pow(edge + a, -e - 1.0) + std::pow(edge - a, -e - 1.0));
  return first + std::pow(s2, e) * (lattice.value() + tail);
}

double one_minus_exp_sq(double lambda) {
  const double s = 2.0 * std::sin(0.5 * lambda);
  return s * s;
}

namespace {

double density_from_parts(double d, double fstar, double lambda) {
  if (lambda == 0.0) {
    if (d > 0.0) {
      throw DomainError("local spectral density is singular at lambda=0 for d>0");
    }
    return d == 0.0 ? fstar : 0.0;
  }
  return std::pow(one_minus_exp_sq(lambda), -d) * fstar;
}

}  // namespace

double local_spectral_density(const TvArfimaModel& m, double u, double lambda) {
  return density_from_parts(m.d(u), m.smooth_part(u, lambda), lambda);
}

double local_spectral_density(const TvFgnModel& m, double u, double lambda) {
  return density_from_parts(m.d(u), m.smooth_part(u, lambda), lambda);
}

double local_spectral_density(const TvFbmModel& m, double u, double lambda) {
  return density_from_parts(m.d(u), m.smooth_part(u, lambda), lambda);
}

}  // namespace tvlm
