#include "tvlm/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "tvlm/errors.hpp"
#include "tvlm/parallel.hpp"
#include "tvlm/quadrature.hpp"
#include "tvlm/summation.hpp"

namespace tvlm {

namespace {

void check_K_domain(double d, const WaveletBank& bank) {
  const double alpha = bank.spec().fourier_decay();
  const double M = bank.spec().vanishing_moments();
  if (!(d > 0.5 - alpha && d < M + 0.5)) {
    throw DomainError("d=" + std::to_string(d) + " outside (1/2-alpha, M+1/2) = (" +
                      std::to_string(0.5 - alpha) + ", " + std::to_string(M + 0.5) +
                      ")");
  }
}

// Measured sups of |psi_hat| over the dyadic blocks [2^r pi, 2^{r+1} pi);
// beyond the table the alpha-decay extrapolates from the last block. This
// keeps truncation-tail certificates within a small factor of the truth,
// where a single global envelope constant is orders of magnitude loose.
struct DyadicEnvelope {
  int r_lo = -8;
  int r_hi = 26;
  double alpha = 1.0;
  std::vector<double> sup;

  double at(int r) const {
    if (r < r_lo) r = r_lo;  // |psi_hat| is bounded; low blocks only shrink
    if (r <= r_hi) return sup[static_cast<std::size_t>(r - r_lo)];
    return sup.back() * std::pow(2.0, -alpha * static_cast<double>(r - r_hi));
  }
};

const DyadicEnvelope& dyadic_envelope(const WaveletBank& bank) {
  static std::map<std::pair<int, int>, DyadicEnvelope> cache;
  static std::mutex mu;
  const auto key = std::make_pair(bank.spec().order, bank.product_depth());
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  DyadicEnvelope env;
  env.alpha = bank.spec().fourier_decay();
  env.sup.resize(static_cast<std::size_t>(env.r_hi - env.r_lo + 1), 0.0);
  const int samples = 2048;
  for (int r = env.r_lo; r <= env.r_hi; ++r) {
    const double lo = std::ldexp(M_PI, r);
    double m = 0.0;
    for (int i = 0; i <= samples; ++i) {
      const double xi = lo * (1.0 + static_cast<double>(i) / samples);
      m = std::max(m, std::abs(bank.psi_hat(xi)));
    }
    env.sup[static_cast<std::size_t>(r - env.r_lo)] = m;
  }
  return cache.emplace(key, std::move(env)).first->second;
}

// bound on 2 * int_X^inf xi^{-2d} |psi_hat|^2 dxi via block sups
double K_tail_bound(const DyadicEnvelope& env, double X, double d) {
  const int r0 = static_cast<int>(std::floor(std::log2(X / M_PI)));
  double acc = 0.0;
  for (int r = std::max(r0, env.r_lo); r < 96; ++r) {
    const double lo = std::ldexp(M_PI, r), hi = 2.0 * lo;
    const double width = lo;
    const double pw = std::pow(d >= 0.0 ? lo : hi, -2.0 * d);
    const double m = env.at(r);
    const double term = 2.0 * width * pw * m * m;
    acc += term;
    if (term < 1e-6 * acc && r > r0 + 4) break;
  }
  return acc;
}

// bound on the |l| > B remainder of the D_infinity lattice sum (without the
// 2^{-m/2} prefactor): terms |xi|^{-2d} |psi_hat(xi)| |psi_hat(2^-m xi)|
double lattice_tail_bound(const DyadicEnvelope& env, int B, int m, double d) {
  // first omitted term has |xi| >= 2 pi (B+1): start at its block
  const int r0 = static_cast<int>(std::floor(std::log2(2.0 * (B + 1.0))));
  double acc = 0.0;
  for (int r = std::max(r0, env.r_lo); r < 96; ++r) {
    const double lo = std::ldexp(M_PI, r), hi = 2.0 * lo;
    const double count = std::ldexp(1.0, std::max(r - 1, 0));  // l with 2 pi l in block
    const double pw = std::pow(d >= 0.0 ? lo : hi, -2.0 * d);
    const double term = 2.0 * count * pw * env.at(r) * env.at(r - m);
    acc += term;
    if (term < 1e-6 * acc && r > r0 + 4) break;
  }
  return acc;
}

}  // namespace

KEvaluator::KEvaluator(const WaveletBank& bank, AsymptoticConfig cfg)
    : bank_(&bank), cfg_(cfg) {
  // graded cells on [0,1] for the |xi|^{-2d} singularity, then uniform cells
  // of width ~ pi/2 resolving the |psi_hat|^2 oscillations up to xi_max
  std::vector<double> mesh = quad::graded_mesh(0.0, 1.0, cfg_.singular_cells, 0,
                                               cfg_.grade_ratio);
  const int tail_cells =
      std::max(32, static_cast<int>(std::ceil((cfg_.xi_max - 1.0) / (M_PI / 2.0))));
  for (int i = 1; i <= tail_cells; ++i) {
    mesh.push_back(1.0 + (cfg_.xi_max - 1.0) * static_cast<double>(i) / tail_cells);
  }
  const auto& rule = quad::gauss_legendre(cfg_.nodes_per_cell);
  for (std::size_t c = 0; c + 1 < mesh.size(); ++c) {
    const double mid = 0.5 * (mesh[c] + mesh[c + 1]);
    const double half = 0.5 * (mesh[c + 1] - mesh[c]);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double xi = mid + half * rule.nodes[i];
      log_xi_.push_back(std::log(xi));
      wpsi_.push_back(half * rule.weights[i] * bank.psi_hat_sq(xi));
    }
  }
  (void)dyadic_envelope(bank);  // warm the shared envelope table
}

double KEvaluator::operator()(double d) const {
  check_K_domain(d, *bank_);
  Accumulator acc;
  for (std::size_t i = 0; i < log_xi_.size(); ++i) {
    acc.add(wpsi_[i] * std::exp(-2.0 * d * log_xi_[i]));
  }
  const double value = 2.0 * acc.value();  // even integrand
  const double tail = K_tail_bound(dyadic_envelope(*bank_), cfg_.xi_max, d);
  if (!(tail <= cfg_.tail_tol * std::max(value, 1e-12))) {
    throw PrecisionError("K(d) truncation tail bound " + std::to_string(tail) +
                         " exceeds tolerance at d=" + std::to_string(d) +
                         "; increase xi_max");
  }
  return value;
}

double K_of_d(double d, const WaveletBank& bank, const AsymptoticConfig& cfg) {
  return KEvaluator(bank, cfg)(d);
}

double local_wavelet_spectrum(const std::function<double(double)>& f_u, double d_u,
                              int j, const WaveletBank& bank,
                              const AsymptoticConfig& cfg) {
  if (j < 1) throw ConfigError("scale index j must be >= 1");
  const double M = bank.spec().vanishing_moments();
  if (!(d_u < M + 0.5)) {
    throw DomainError("sigma_j^2 integrand not integrable: d(u)=" +
                      std::to_string(d_u) + " >= M + 1/2");
  }
  const ScaleFilter& flt = bank.filter(j);
  // graded cells into 0 over [0, span], uniform cells resolving the ~2^-j
  // oscillation of |H_j|^2 on [span, pi]
  const double span = std::min(0.25, 4.0 * std::ldexp(1.0, -j));
  std::vector<double> mesh =
      quad::graded_mesh(0.0, span, cfg.singular_cells, 0, cfg.grade_ratio);
  const int osc_cells = std::max(
      cfg.min_nodes / cfg.nodes_per_cell,
      static_cast<int>(std::ceil((M_PI - span) / (M_PI * std::ldexp(1.0, -j) / 5.0))));
  for (int i = 1; i <= osc_cells; ++i) {
    mesh.push_back(span + (M_PI - span) * static_cast<double>(i) / osc_cells);
  }
  const double v = quad::integrate_mesh(
      [&](double lam) { return std::norm(flt.transfer(lam)) * f_u(lam); }, mesh,
      cfg.nodes_per_cell);
  return 2.0 * v;
}

double local_wavelet_spectrum(const TvArfimaModel& m, double u, int j,
                              const WaveletBank& bank, const AsymptoticConfig& cfg) {
  return local_wavelet_spectrum(
      [&](double lam) { return local_spectral_density(m, u, lam); }, m.d(u), j,
      bank, cfg);
}

double local_wavelet_spectrum(const TvFgnModel& m, double u, int j,
                              const WaveletBank& bank, const AsymptoticConfig& cfg) {
  const double H = m.H(u), d = m.d(u);
  return local_wavelet_spectrum(
      [H, d](double lam) {
        return std::pow(one_minus_exp_sq(lam), -d) * fgn_smooth_part(lam, H, 512);
      },
      d, j, bank, cfg);
}

double local_wavelet_spectrum(const TvFbmModel& m, double u, int j,
                              const WaveletBank& bank, const AsymptoticConfig& cfg) {
  const double H = m.H(u), d = m.d(u);
  return local_wavelet_spectrum(
      [H, d](double lam) {
        return std::pow(one_minus_exp_sq(lam), -d) * fgn_smooth_part(lam, H, 512);
      },
      d, j, bank, cfg);
}

std::complex<double> cross_spectral_D(double lambda, int i_diff, int v, double d,
                                      const WaveletBank& bank,
                                      const AsymptoticConfig& cfg) {
  if (i_diff < 0 || v < 0 || v >= (1 << i_diff)) {
    throw ConfigError("cross_spectral_D: need 0 <= v < 2^i_diff");
  }
  check_K_domain(d, bank);
  const double scale = std::ldexp(1.0, -i_diff);
  std::complex<double> acc(0.0, 0.0);
  double abs_sum = 0.0;
  for (int l = -cfg.lattice_bound; l <= cfg.lattice_bound; ++l) {
    const double xi = lambda + 2.0 * M_PI * l;
    const double a = std::abs(xi);
    if (a == 0.0) continue;  // psi_hat(0) = 0 cancels the pole
    const double pw = std::pow(a, -2.0 * d);
    const std::complex<double> term = pw *
                                      std::conj(bank.psi_hat(xi)) *
                                      bank.psi_hat(scale * xi) *
                                      std::polar(1.0, -v * scale * xi);
    acc += term;
    abs_sum += std::abs(term);
  }
  // alpha-decay tail over |l| > bound via the measured block envelope
  const double alpha = bank.spec().fourier_decay();
  if (2.0 * d + 2.0 * alpha <= 1.0) {
    throw DomainError("lattice sum diverges for this d");
  }
  const double tail =
      lattice_tail_bound(dyadic_envelope(bank), cfg.lattice_bound, i_diff, d);
  if (!(tail <= cfg.tail_tol * std::max(abs_sum, 1e-300))) {
    throw PrecisionError("D_infinity lattice tail bound above tolerance; "
                         "increase lattice_bound beyond " +
                         std::to_string(cfg.lattice_bound));
  }
  return std::sqrt(scale) * acc;
}

SigmaEvaluator::SigmaEvaluator(const WaveletBank& bank, int ell, AsymptoticConfig cfg)
    : bank_(&bank), ell_(ell), cfg_(cfg), K_(bank, cfg) {
  if (ell < 0) throw ConfigError("ell must be >= 0");
  check_K_domain(0.0, bank);  // sanity: the bank supports the domain machinery
  const auto& rule = quad::gauss_legendre(cfg_.nodes_per_cell);
  const auto mesh = quad::uniform_mesh(-M_PI, M_PI, cfg_.sigma_cells);
  std::vector<double> lam;
  for (std::size_t c = 0; c + 1 < mesh.size(); ++c) {
    const double mid = 0.5 * (mesh[c] + mesh[c + 1]);
    const double half = 0.5 * (mesh[c + 1] - mesh[c]);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      lam.push_back(mid + half * rule.nodes[i]);
      lam_w_.push_back(half * rule.weights[i]);
    }
  }
  n_nodes_ = lam.size();
  n_lat_ = static_cast<std::size_t>(2 * cfg_.lattice_bound + 1);
  log_abs_.resize(n_nodes_ * n_lat_);
  prod_.resize(static_cast<std::size_t>((2 << ell_) - 1));
  // cache conj(psi_hat(xi)) psi_hat(2^-m xi) 2^{-m/2} e^{-i v 2^-m xi}
  for (int m = 0; m <= ell_; ++m) {
    for (int v = 0; v < (1 << m); ++v) {
      prod_[static_cast<std::size_t>((1 << m) - 1 + v)].resize(n_nodes_ * n_lat_);
    }
  }
  for (std::size_t t = 0; t < n_nodes_; ++t) {
    for (std::size_t il = 0; il < n_lat_; ++il) {
      const int l = static_cast<int>(il) - cfg_.lattice_bound;
      const double xi = lam[t] + 2.0 * M_PI * l;
      const double a = std::abs(xi);
      log_abs_[t * n_lat_ + il] = (a == 0.0) ? 0.0 : std::log(a);
      const std::complex<double> base =
          (a == 0.0) ? std::complex<double>(0.0, 0.0) : std::conj(bank.psi_hat(xi));
      for (int m = 0; m <= ell_; ++m) {
        const double scale = std::ldexp(1.0, -m);
        const std::complex<double> pm =
            base * bank.psi_hat(scale * xi) * std::sqrt(scale);
        for (int v = 0; v < (1 << m); ++v) {
          prod_[static_cast<std::size_t>((1 << m) - 1 + v)][t * n_lat_ + il] =
              pm * std::polar(1.0, -v * scale * xi);
        }
      }
    }
  }
  (void)dyadic_envelope(bank);
}

void SigmaEvaluator::powers(double d, std::vector<double>& pw) const {
  pw.resize(n_nodes_ * n_lat_);
  for (std::size_t i = 0; i < pw.size(); ++i) {
    pw[i] = std::exp(-2.0 * d * log_abs_[i]);
  }
}

double SigmaEvaluator::D_sq_integral(int m, int v, double d) const {
  if (m < 0 || m > ell_ || v < 0 || v >= (1 << m)) {
    throw ConfigError("D_sq_integral: need 0 <= v < 2^m <= 2^ell");
  }
  check_K_domain(d, *bank_);
  std::vector<double> pw;
  powers(d, pw);
  const auto& P = prod_[static_cast<std::size_t>((1 << m) - 1 + v)];
  Accumulator acc;
  for (std::size_t t = 0; t < n_nodes_; ++t) {
    std::complex<double> D(0.0, 0.0);
    for (std::size_t il = 0; il < n_lat_; ++il) {
      D += pw[t * n_lat_ + il] * P[t * n_lat_ + il];
    }
    acc.add(lam_w_[t] * std::norm(D));
  }
  return acc.value();
}

Eigen::MatrixXd SigmaEvaluator::sigma(double d, const WeightScheme& scheme) const {
  check_K_domain(d, *bank_);
  const double M = bank_->spec().vanishing_moments();
  if (d > M) {
    throw DomainError("Sigma(d) requires d <= M (cross-spectral density domain)");
  }
  // lattice tail certification (worst scale difference)
  {
    const double alpha = bank_->spec().fourier_decay();
    if (2.0 * d + 2.0 * alpha <= 1.0) {
      throw DomainError("lattice sum diverges for this d");
    }
    const double tail =
        lattice_tail_bound(dyadic_envelope(*bank_), cfg_.lattice_bound, ell_, d);
    // compare against the coarsest diagonal magnitude
    const double ref = std::sqrt(D_sq_integral(0, 0, d) / (2.0 * M_PI));
    if (!(tail <= cfg_.tail_tol * std::max(ref, 1e-300))) {
      throw PrecisionError("D_infinity lattice tail above tolerance; increase "
                           "lattice_bound");
    }
  }
  std::vector<double> pw;
  powers(d, pw);
  // int |D_{m,v}|^2 once per (m, v)
  std::vector<std::vector<double>> dsq(static_cast<std::size_t>(ell_ + 1));
  for (int m = 0; m <= ell_; ++m) {
    dsq[static_cast<std::size_t>(m)].resize(static_cast<std::size_t>(1) << m);
    for (int v = 0; v < (1 << m); ++v) {
      const auto& P = prod_[static_cast<std::size_t>((1 << m) - 1 + v)];
      Accumulator acc;
      for (std::size_t t = 0; t < n_nodes_; ++t) {
        std::complex<double> D(0.0, 0.0);
        for (std::size_t il = 0; il < n_lat_; ++il) {
          D += pw[t * n_lat_ + il] * P[t * n_lat_ + il];
        }
        acc.add(lam_w_[t] * std::norm(D));
      }
      dsq[static_cast<std::size_t>(m)][static_cast<std::size_t>(v)] = acc.value();
    }
  }
  Eigen::MatrixXd S(ell_ + 1, ell_ + 1);
  for (int i = 0; i <= ell_; ++i) {
    for (int ip = 0; ip <= i; ++ip) {
      const int m = i - ip;
      Accumulator sum_v;
      for (int v = 0; v < (1 << m); ++v) {
        sum_v.add(scheme.limit_V(0, 0, m, v) *
                  dsq[static_cast<std::size_t>(m)][static_cast<std::size_t>(v)]);
      }
      const double val =
          2.0 * std::pow(2.0, (1.0 + 4.0 * d) * static_cast<double>(i)) * sum_v.value();
      S(i, ip) = val;
      S(ip, i) = val;
    }
  }
  return S;
}

double SigmaEvaluator::estimator_variance(double d, const std::vector<double>& w,
                                          const WeightScheme& scheme) const {
  if (static_cast<int>(w.size()) != ell_ + 1) {
    throw ConfigError("regression weight length must be ell+1");
  }
  const Eigen::MatrixXd S = sigma(d, scheme);
  const double Kd = K_(d);
  Accumulator acc;
  for (int i = 0; i <= ell_; ++i) {
    for (int ip = 0; ip <= ell_; ++ip) {
      acc.add(S(i, ip) * std::pow(2.0, -2.0 * d * static_cast<double>(i + ip)) *
              w[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(ip)]);
    }
  }
  return acc.value() / (Kd * Kd);
}

Eigen::MatrixXd sigma_matrix(double d, int ell, const WeightScheme& scheme,
                             const WaveletBank& bank, const AsymptoticConfig& cfg) {
  return SigmaEvaluator(bank, ell, cfg).sigma(d, scheme);
}

double estimator_variance(double d, int ell, const std::vector<double>& w,
                          const WeightScheme& scheme, const WaveletBank& bank,
                          const AsymptoticConfig& cfg) {
  return SigmaEvaluator(bank, ell, cfg).estimator_variance(d, w, scheme);
}

VarianceReport variance_report(double d, int ell, const std::vector<double>& w,
                               const WeightScheme& scheme, const WaveletBank& bank,
                               const AsymptoticConfig& cfg) {
  SigmaEvaluator ev(bank, ell, cfg);
  VarianceReport rep;
  rep.d = d;
  rep.w = w;
  rep.scheme_tag = scheme.tag();
  rep.K_value = ev.K()(d);
  rep.Sigma = ev.sigma(d, scheme);
  rep.V_value = ev.estimator_variance(d, w, scheme);
  // structural checks: symmetry is by construction; PSD up to roundoff
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rep.Sigma);
  const double min_ev = es.eigenvalues().minCoeff();
  if (min_ev < -1e-10 * rep.Sigma.trace()) {
    throw PrecisionError("Sigma(d) failed the positive-semidefinite check");
  }
  return rep;
}

VarianceCache::VarianceCache(const WaveletBank& bank, const WeightScheme& scheme,
                             int ell, const std::vector<double>& w,
                             AsymptoticConfig cfg) {
  const double alpha = bank.spec().fourier_decay();
  const double M = bank.spec().vanishing_moments();
  // practical CI domain; outside it the tail certifications get hopeless
  lo_ = std::max(0.5 - alpha + 0.05, -1.2);
  const double hi = M;
  const auto n = static_cast<std::size_t>(std::floor((hi - lo_) / step_)) + 1;
  values_.assign(n, std::numeric_limits<double>::quiet_NaN());
  cfg.tail_tol = std::max(cfg.tail_tol, 1e-2);  // CI use is MC-tolerance bound
  SigmaEvaluator ev(bank, ell, cfg);
  parallel_for(n, [&](std::size_t i) {
    const double d = lo_ + step_ * static_cast<double>(i);
    try {
      values_[i] = ev.estimator_variance(d, w, scheme);
    } catch (const std::exception&) {
      // leave NaN: CI flagged unavailable at this d
    }
  });
}

double VarianceCache::value(double d) const {
  if (values_.empty() || std::isnan(d)) return std::numeric_limits<double>::quiet_NaN();
  if (d < lo_ || d > d_hi()) return std::numeric_limits<double>::quiet_NaN();
  const double x = (d - lo_) / step_;
  const auto i0 = std::min(static_cast<std::size_t>(x), values_.size() - 1);
  const auto i1 = std::min(i0 + 1, values_.size() - 1);
  const double f = x - static_cast<double>(i0);
  const double a = values_[i0], b = values_[i1];
  if (std::isnan(a) || std::isnan(b)) return std::numeric_limits<double>::quiet_NaN();
  return a * (1.0 - f) + b * f;
}

}  // namespace tvlm
