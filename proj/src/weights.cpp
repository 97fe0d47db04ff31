#include "tvlm/weights.hpp"

#include <algorithm>
#include <cmath>

#include "tvlm/errors.hpp"
#include "tvlm/summation.hpp"

namespace tvlm {

double WeightVector::delta() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double WeightVector::sum() const {
  return neumaier_sum(values.begin(), values.end());
}

double Kernel::operator()(double s) const {
  if (rectangle) return (s >= -0.5 && s <= 0.5) ? 1.0 : 0.0;
  if (s < -half || s > half) return 0.0;
  const double x = (s + half) / (2.0 * half) * (samples.size() - 1);
  const auto i = static_cast<std::size_t>(x);
  if (i + 1 >= samples.size()) return samples.back();
  const double f = x - static_cast<double>(i);
  return samples[i] * (1.0 - f) + samples[i + 1] * f;
}

double Kernel::norm_inf() const {
  if (rectangle) return 1.0;
  double m = 0.0;
  for (double v : samples) m = std::max(m, v);
  return m;
}

double Kernel::norm_1() const {
  if (rectangle) return 1.0;
  // trapezoid over the sample grid
  Accumulator acc;
  const double dx = 2.0 * half / (samples.size() - 1);
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    acc.add(0.5 * (samples[i] + samples[i + 1]) * dx);
  }
  return acc.value();
}

void Kernel::validate() const {
  if (rectangle) return;
  if (samples.size() < 2) throw ConfigError("custom kernel needs >= 2 samples");
  if (!(half > 0.0)) throw ConfigError("custom kernel support must be positive");
  double m = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i] < 0.0) throw ConfigError("kernel must be non-negative");
    const double sym = samples[samples.size() - 1 - i];
    if (std::abs(samples[i] - sym) > 1e-12 * std::max(1.0, norm_inf())) {
      throw ConfigError("kernel must be symmetric");
    }
    m = std::max(m, samples[i]);
  }
  if (m == 0.0) throw ConfigError("kernel is identically zero");
}

WeightVector kernel_weights(double u, std::int64_t Tj, double b, const Kernel& K) {
  if (!(b > 0.0)) throw ConfigError("bandwidth must be positive");
  b = std::min(b, 1.0);  // b >= 1 clamps to the full (global-scalogram) window
  if (Tj < 1) throw ConfigError("kernel_weights: T_j must be >= 1");
  const double center = u * static_cast<double>(Tj);
  const double width = b * static_cast<double>(Tj);
  const double hs = K.rectangle ? 0.5 : K.half;
  // closed support ends: half-integer boundary ties include the point
  std::int64_t lo = static_cast<std::int64_t>(std::ceil(center - hs * width));
  std::int64_t hi = static_cast<std::int64_t>(std::floor(center + hs * width));
  lo = std::max<std::int64_t>(lo, 0);
  hi = std::min<std::int64_t>(hi, Tj - 1);
  if (lo > hi) {
    throw BoundaryError(
        "kernel support does not reach the sample at u=" + std::to_string(u) +
        "; drop u < b/2 or u > 1 - b/2");
  }
  WeightVector w;
  w.first = lo;
  w.domain = Tj;
  w.values.resize(static_cast<std::size_t>(hi - lo + 1));
  Accumulator norm;
  for (std::int64_t k = lo; k <= hi; ++k) {
    const double v = K((center - static_cast<double>(k)) / width);
    w.values[static_cast<std::size_t>(k - lo)] = v;
    norm.add(v);
  }
  const double rho = norm.value();
  if (rho <= 0.0) {
    throw BoundaryError("all kernel evaluations vanish at u=" + std::to_string(u));
  }
  for (double& v : w.values) v /= rho;
  // trim zero edges so the stored block is the true support
  std::size_t a = 0, z = w.values.size();
  while (a < z && w.values[a] == 0.0) ++a;
  while (z > a && w.values[z - 1] == 0.0) --z;
  if (a > 0 || z < w.values.size()) {
    w.values = std::vector<double>(w.values.begin() + a, w.values.begin() + z);
    w.first += static_cast<std::int64_t>(a);
  }
  return w;
}

double recursive_rho(std::int64_t uj, double bTj) {
  // (1 - e^{-uj/(bTj)}) / (1 - e^{-1/(bTj)})
  const double c = 1.0 / bTj;
  return std::expm1(-static_cast<double>(uj) * c) / std::expm1(-c);
}

WeightVector recursive_weights(double u, std::int64_t Tj, double b) {
  if (!(b > 0.0 && b < 1.0)) throw ConfigError("bandwidth must lie in (0,1)");
  if (Tj < 1) throw ConfigError("recursive_weights: T_j must be >= 1");
  const auto uj = static_cast<std::int64_t>(std::floor(u * static_cast<double>(Tj)));
  if (uj < 1) {
    throw BoundaryError("recursive weights need floor(u T_j) >= 1 (u=" +
                        std::to_string(u) + ", T_j=" + std::to_string(Tj) + ")");
  }
  const double bTj = b * static_cast<double>(Tj);
  const double rho = recursive_rho(uj, bTj);
  // ages l = uj-1-k beyond ~45 bandwidths carry weight < 3e-20: cut there
  const auto lmax = std::min<std::int64_t>(
      uj - 1, static_cast<std::int64_t>(std::ceil(45.0 * bTj)));
  WeightVector w;
  w.domain = Tj;
  w.first = uj - 1 - lmax;
  w.values.resize(static_cast<std::size_t>(lmax + 1));
  for (std::int64_t k = w.first; k <= uj - 1; ++k) {
    const double age = static_cast<double>(uj - 1 - k);
    w.values[static_cast<std::size_t>(k - w.first)] = std::exp(-age / bTj) / rho;
  }
  return w;
}

WeightDiagnostics diagnostics(const WeightVector& w, double u, std::int64_t T, int j) {
  WeightDiagnostics out;
  out.delta = w.delta();
  const double center = static_cast<double>(T) * u / std::ldexp(1.0, j);
  Accumulator g0, g1, g2;
  for (std::size_t i = 0; i < w.values.size(); ++i) {
    const double gk = std::abs(w.values[i]);
    const double dist = std::abs(static_cast<double>(w.first + static_cast<std::int64_t>(i)) - center);
    g0.add(gk);
    g1.add(gk * dist);
    g2.add(gk * dist * dist);
  }
  out.gamma[0] = g0.value();
  out.gamma[1] = g1.value();
  out.gamma[2] = g2.value();
  return out;
}

namespace {

// Range of l with 0 <= l, 2^i l + v inside the stored block and < domain.
struct LRange {
  std::int64_t lo, hi;
};

LRange l_range(const WeightVector& w, std::int64_t step, std::int64_t v) {
  LRange r{0, -1};
  if (w.last() < v) return r;
  r.lo = (w.first > v) ? (w.first - v + step - 1) / step : 0;
  r.hi = std::min((w.domain - 1 - v) / step, (w.last() - v) / step);
  return r;
}

}  // namespace

std::vector<std::complex<double>> weight_fourier(const WeightVector& w, int i, int v,
                                                 std::span<const double> lambdas) {
  if (i < 0 || v < 0 || v >= (1 << i)) {
    throw ConfigError("weight_fourier: need 0 <= v < 2^i");
  }
  const std::int64_t step = std::int64_t{1} << i;
  const LRange r = l_range(w, step, v);
  std::vector<std::complex<double>> out;
  out.reserve(lambdas.size());
  for (double lam : lambdas) {
    std::complex<double> acc(0.0, 0.0);
    for (std::int64_t l = r.lo; l <= r.hi; ++l) {
      const double g = w.at(step * l + v);
      if (g != 0.0) {
        const double a = static_cast<double>(l) * lam;
        acc += g * std::complex<double>(std::cos(a), std::sin(a));
      }
    }
    out.push_back(acc);
  }
  return out;
}

double phi_inner(const WeightVector& wa, int i, int v,
                 const WeightVector& wb, int ip, int vp) {
  const std::int64_t sa = std::int64_t{1} << i;
  const std::int64_t sb = std::int64_t{1} << ip;
  // l ranges over T_j(i,v) ∩ T_j(i',v'); outside the stored blocks the
  // weights vanish, so iterate the overlap of the blocks in l.
  const LRange ra = l_range(wa, sa, v);
  const LRange rb = l_range(wb, sb, vp);
  const std::int64_t l_lo = std::max(ra.lo, rb.lo);
  const std::int64_t l_hi = std::min(ra.hi, rb.hi);
  Accumulator acc;
  for (std::int64_t l = l_lo; l <= l_hi; ++l) {
    acc.add(wa.at(sa * l + v) * wb.at(sb * l + vp));
  }
  return 2.0 * M_PI * acc.value();
}

WeightScheme::WeightScheme(WeightKind kind, double b, Kernel k)
    : kind_(kind), bandwidth_(b), kernel_(std::move(k)) {
  if (kind == WeightKind::kernel) {
    if (!(b > 0.0)) throw ConfigError("bandwidth must be positive");
    bandwidth_ = std::min(b, 1.0);
  } else if (!(b > 0.0 && b < 1.0)) {
    throw ConfigError("recursive bandwidth must lie in (0,1)");
  }
  kernel_.validate();
}

WeightScheme WeightScheme::rectangle(double bandwidth) {
  return WeightScheme(WeightKind::kernel, bandwidth, Kernel{});
}

WeightScheme WeightScheme::custom_kernel(double bandwidth, Kernel k) {
  k.rectangle = false;
  return WeightScheme(WeightKind::kernel, bandwidth, std::move(k));
}

WeightScheme WeightScheme::recursive(double bandwidth) {
  return WeightScheme(WeightKind::recursive, bandwidth, Kernel{});
}

std::string WeightScheme::tag() const {
  if (kind_ == WeightKind::recursive) return "recursive";
  return kernel_.rectangle ? "kernel:rectangle" : "kernel:custom";
}

WeightVector WeightScheme::weights(double u, std::int64_t Tj) const {
  if (kind_ == WeightKind::recursive) return recursive_weights(u, Tj, bandwidth_);
  return kernel_weights(u, Tj, bandwidth_, kernel_);
}

double WeightScheme::limit_delta_rate() const {
  if (kind_ == WeightKind::recursive) return 1.0;
  return kernel_.norm_inf() / kernel_.norm_1();
}

double WeightScheme::limit_V(int i, int v, int ip, int vp) const {
  const double pow2 = std::ldexp(1.0, -(i + ip));
  if (kind_ == WeightKind::recursive) return M_PI * pow2;
  if (kernel_.rectangle) return 2.0 * M_PI * pow2;
  // custom kernel: numeric limit via the exact discrete identity at a
  // reference size (memoized per index tuple)
  const auto key = std::make_tuple(i, v, ip, vp);
  auto it = numeric_V_.find(key);
  if (it != numeric_V_.end()) return it->second;
  const std::int64_t Tj_ref = 100000;
  const double b_ref = 0.01, u_ref = 0.5;
  const WeightVector base = kernel_weights(u_ref, Tj_ref, b_ref, kernel_);
  const WeightVector wa =
      kernel_weights(u_ref, Tj_ref << i, b_ref, kernel_);
  const WeightVector wb =
      kernel_weights(u_ref, Tj_ref << ip, b_ref, kernel_);
  const double val = phi_inner(wa, i, v, wb, ip, vp) / base.delta();
  numeric_V_.emplace(key, val);
  return val;
}

bool WeightScheme::interior(double u) const {
  if (kind_ == WeightKind::recursive) return u > 0.0 && u <= 1.0;
  return u >= 0.5 * bandwidth_ && u <= 1.0 - 0.5 * bandwidth_;
}

}  // namespace tvlm
