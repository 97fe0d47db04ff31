#include "tvlm/simulate.hpp"

#include <cmath>
#include <complex>

#include "tvlm/errors.hpp"

namespace tvlm {

namespace {

std::vector<double> draw_noise(std::uint64_t seed, NoiseKind kind,
                               std::int64_t n) {
  NoiseStream stream(seed);
  std::vector<double> eps(static_cast<std::size_t>(n));
  if (kind == NoiseKind::gaussian) {
    for (auto& e : eps) e = stream.gaussian();
  } else {
    for (auto& e : eps) e = stream.uniform_unit_var();
  }
  return eps;
}

// a_k(u) for the frozen-u ARFIMA:
//   a_k = sigma * (pi(delta) conv theta)_k + sum_m phi_m a_{k-m}
void arfima_taps(const TvArfimaModel& m, double u, std::int64_t n,
                 std::vector<double>& a) {
  const double delta = m.d(u) - m.p();
  if (delta >= 0.5) {
    throw DomainError(
        "d(u) - p >= 1/2 at u=" + std::to_string(u) +
        ": MA representation of the p-th increment is not square-summable");
  }
  const double sig = m.sigma(u);
  const auto phi = m.phi(u);
  const auto theta = m.theta(u);
  const int q = m.q(), r = m.r();
  a.assign(static_cast<std::size_t>(n), 0.0);
  // fractional-integration weights by the multiplicative recurrence
  static thread_local std::vector<double> frac;
  frac.assign(static_cast<std::size_t>(n), 0.0);
  double pik = 1.0;
  for (std::int64_t k = 0; k < n; ++k) {
    frac[static_cast<std::size_t>(k)] = pik;
    pik *= (static_cast<double>(k) + delta) / (static_cast<double>(k) + 1.0);
  }
  for (std::int64_t k = 0; k < n; ++k) {
    double conv = frac[static_cast<std::size_t>(k)];  // theta_0 = 1
    for (int i = 1; i <= r && i <= k; ++i) {
      conv += theta[static_cast<std::size_t>(i - 1)] *
              frac[static_cast<std::size_t>(k - i)];
    }
    double ak = sig * conv;
    for (int mm = 1; mm <= q && mm <= k; ++mm) {
      ak += phi[static_cast<std::size_t>(mm - 1)] * a[static_cast<std::size_t>(k - mm)];
    }
    a[static_cast<std::size_t>(k)] = ak;
  }
}

// Estimated relative tail mass of the truncated MA sequence, using the
// k^{delta-1} continuation of the fractional part.
double tail_mass_estimate(const std::vector<double>& a, double delta) {
  if (a.size() < 8) return 0.0;
  double head = 0.0;
  for (double v : a) head += v * v;
  if (head <= 0.0) return 0.0;
  const double aN = std::abs(a.back());
  const double N = static_cast<double>(a.size());
  if (2.0 * delta - 1.0 >= 0.0) return 1.0;
  const double tail = aN * aN * N / (1.0 - 2.0 * delta);
  return tail / (head + tail);
}

void integrate_p_times(std::vector<double>& x, int p) {
  for (int rep = 0; rep < p; ++rep) {
    double acc = 0.0;
    for (auto& v : x) {
      acc += v;
      v = acc;
    }
  }
}

void warn_if_truncated(SimulatedPath& path, double tail, double tol,
                       std::int64_t trunc) {
  if (tail > tol) {
    path.warnings.push_back(
        "MA truncation N=" + std::to_string(trunc) +
        " leaves estimated relative tail spectral mass " + std::to_string(tail) +
        " (> " + std::to_string(tol) + "); increase trunc for large d");
  }
}

}  // namespace

std::vector<double> ma_coefficients(const TvArfimaModel& m, double u,
                                    std::int64_t n_taps) {
  if (n_taps < 1) throw ConfigError("n_taps must be >= 1");
  std::vector<double> a;
  arfima_taps(m, u, n_taps, a);
  return a;
}

SimulatedPath simulate(const TvArfimaModel& m, const SimConfig& cfg) {
  if (cfg.T < 1) throw ConfigError("T must be >= 1");
  const std::int64_t N = cfg.trunc;
  const std::int64_t T = cfg.T;
  const auto eps = draw_noise(cfg.seed, cfg.noise, T + N);

  SimulatedPath path;
  path.T = T;
  path.seed = cfg.seed;
  path.model_tag = m.tag();
  path.values.resize(static_cast<std::size_t>(T));

  std::vector<double> taps;
  double worst_tail = 0.0;
  const bool frozen = m.constant_params();
  if (frozen) arfima_taps(m, 1.0, N + 1, taps);
  for (std::int64_t t = 1; t <= T; ++t) {
    const double u = static_cast<double>(t) / static_cast<double>(T);
    if (!frozen) arfima_taps(m, u, N + 1, taps);
    if (t == T || t == 1 || t == T / 2) {
      worst_tail = std::max(worst_tail, tail_mass_estimate(taps, m.d(u) - m.p()));
    }
    // eps index of time s is s - 1 + N
    const double* e = eps.data() + (t - 1 + N);
    double acc = 0.0;
    for (std::int64_t k = 0; k <= N; ++k) acc += taps[static_cast<std::size_t>(k)] * e[-k];
    path.values[static_cast<std::size_t>(t - 1)] = acc;
  }
  integrate_p_times(path.values, m.p());
  warn_if_truncated(path, worst_tail, cfg.tail_warn_tol, N);
  return path;
}

SimulatedPath simulate_tangent(const TvArfimaModel& m, double u,
                               const SimConfig& cfg) {
  if (cfg.T < 1) throw ConfigError("T must be >= 1");
  const std::int64_t N = cfg.trunc;
  const std::int64_t T = cfg.T;
  const auto eps = draw_noise(cfg.seed, cfg.noise, T + N);

  SimulatedPath path;
  path.T = T;
  path.seed = cfg.seed;
  path.model_tag = m.tag() + "@u=" + std::to_string(u);
  path.values.resize(static_cast<std::size_t>(T));

  std::vector<double> taps;
  arfima_taps(m, u, N + 1, taps);
  for (std::int64_t t = 1; t <= T; ++t) {
    const double* e = eps.data() + (t - 1 + N);
    double acc = 0.0;
    for (std::int64_t k = 0; k <= N; ++k) acc += taps[static_cast<std::size_t>(k)] * e[-k];
    path.values[static_cast<std::size_t>(t - 1)] = acc;
  }
  integrate_p_times(path.values, m.p());
  warn_if_truncated(path, tail_mass_estimate(taps, m.d(u) - m.p()),
                    cfg.tail_warn_tol, N);
  return path;
}

namespace {

// iterative radix-2 FFT, in place; size must be a power of two
void fft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * M_PI / static_cast<double>(len);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const auto even = a[i + k];
        const auto odd = a[i + k + len / 2] * w;
        a[i + k] = even + odd;
        a[i + k + len / 2] = even - odd;
        w *= wl;
      }
    }
  }
  if (inverse) {
    for (auto& v : a) v /= static_cast<double>(n);
  }
}

constexpr std::size_t kFgnFftSize = std::size_t{1} << 16;

// Fourier coefficients c_k = (2 pi)^{-1} int sqrt(2 pi f(u,.)) e^{ik lambda} dlambda
// by the midpoint rule on kFgnFftSize cells (midpoints dodge the lambda=0
// singularity), evaluated with one FFT.
std::vector<double> fgn_taps_fft(const TvFgnModel& m, double u, std::int64_t n_side) {
  const std::size_t M = kFgnFftSize;
  if (static_cast<std::size_t>(2 * n_side + 1) > M / 4) {
    throw ConfigError("fgn trunc too large for the internal transform size");
  }
  std::vector<std::complex<double>> grid(M);
  const double H = m.H(u);
  const double d = m.d(u);
  for (std::size_t mm = 0; mm < M; ++mm) {
    const double lam = -M_PI + (2.0 * static_cast<double>(mm) + 1.0) * M_PI /
                                   static_cast<double>(M);
    // Euler-Maclaurin-corrected short lattice keeps this grid fill cheap
    const double f =
        std::pow(one_minus_exp_sq(lam), -d) * fgn_smooth_part(lam, H, 128);
    grid[mm] = std::sqrt(2.0 * M_PI * f);
  }
  // c_k = (1/M) sum_m A(lam_m) e^{ik lam_m},   lam_m = -pi + (2m+1) pi / M
  //     = e^{ik pi (1/M - 1)} (1/M) sum_m A_m e^{2 pi i k m / M}
  fft_inplace(grid, true);  // inverse transform gives (1/M) sum A_m e^{+2pi i km/M}
  std::vector<double> taps(static_cast<std::size_t>(2 * n_side + 1));
  for (std::int64_t k = -n_side; k <= n_side; ++k) {
    const std::size_t idx = static_cast<std::size_t>((k % static_cast<std::int64_t>(M) +
                                                      static_cast<std::int64_t>(M)) %
                                                     static_cast<std::int64_t>(M));
    const double phase = static_cast<double>(k) * M_PI * (1.0 / static_cast<double>(M) - 1.0);
    const std::complex<double> c =
        grid[idx] * std::complex<double>(std::cos(phase), std::sin(phase));
    taps[static_cast<std::size_t>(k + n_side)] = c.real();
  }
  return taps;
}

}  // namespace

std::vector<double> fgn_ma_coefficients(const TvFgnModel& m, double u,
                                        std::int64_t n_side) {
  if (n_side < 1) throw ConfigError("n_side must be >= 1");
  return fgn_taps_fft(m, u, n_side);
}

namespace {

SimulatedPath simulate_fgn_impl(const TvFgnModel& m, const SimConfig& cfg,
                                bool tangent, double u_frozen) {
  if (cfg.T < 1) throw ConfigError("T must be >= 1");
  const std::int64_t T = cfg.T;
  const std::int64_t N = std::min<std::int64_t>(cfg.trunc, 4096);
  const auto eps = draw_noise(cfg.seed, cfg.noise, T + 2 * N);

  SimulatedPath path;
  path.T = T;
  path.seed = cfg.seed;
  path.model_tag = m.tag() + (tangent ? "@u=" + std::to_string(u_frozen) : "");
  path.values.resize(static_cast<std::size_t>(T));

  std::vector<double> taps;
  const bool fixed = tangent || m.constant_hurst();
  if (fixed) taps = fgn_taps_fft(m, tangent ? u_frozen : 0.5, N);
  for (std::int64_t t = 1; t <= T; ++t) {
    if (!fixed) {
      taps = fgn_taps_fft(m, static_cast<double>(t) / static_cast<double>(T), N);
    }
    // X_t = sum_{k=-N..N} c_k eps_{t-k}; eps index of time s is s - 1 + 2N...
    // time s ranges t-N..t+N -> indices (t-1+N)-N .. (t-1+N)+N with offset N
    const double* e = eps.data() + (t - 1 + N);
    double acc = 0.0;
    for (std::int64_t k = -N; k <= N; ++k) {
      acc += taps[static_cast<std::size_t>(k + N)] * e[-k];
    }
    path.values[static_cast<std::size_t>(t - 1)] = acc;
  }
  // relative tail mass of the two-sided taps
  double head = 0.0;
  for (double v : taps) head += v * v;
  const double cN = std::max(std::abs(taps.front()), std::abs(taps.back()));
  const double dmax = m.d(tangent ? u_frozen : 0.5);
  if (2.0 * dmax - 1.0 < 0.0 && head > 0.0) {
    const double tail = 2.0 * cN * cN * static_cast<double>(N) / (1.0 - 2.0 * dmax);
    if (tail / (head + tail) > cfg.tail_warn_tol) {
      path.warnings.push_back("two-sided MA truncation leaves estimated tail mass " +
                              std::to_string(tail / (head + tail)));
    }
  }
  return path;
}

}  // namespace

SimulatedPath simulate(const TvFgnModel& m, const SimConfig& cfg) {
  return simulate_fgn_impl(m, cfg, false, 0.0);
}

SimulatedPath simulate_tangent(const TvFgnModel& m, double u, const SimConfig& cfg) {
  return simulate_fgn_impl(m, cfg, true, u);
}

}  // namespace tvlm
