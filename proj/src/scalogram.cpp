#include "tvlm/scalogram.hpp"

#include <cmath>
#include <limits>

#include "tvlm/errors.hpp"
#include "tvlm/summation.hpp"

namespace tvlm {

WaveletPyramid dwt(std::span<const double> x, const WaveletBank& bank, int J) {
  const auto T = static_cast<std::int64_t>(x.size());
  if (J < 1) throw ConfigError("J must be >= 1");
  if (J > bank.max_scale()) {
    throw ConfigError("bank holds scales up to " + std::to_string(bank.max_scale()) +
                      ", requested J=" + std::to_string(J));
  }
  if (bank.coeff_count(T, J) < 1) {
    throw ConfigError("series too short for scale " + std::to_string(J) +
                      "; maximum feasible scale for T=" + std::to_string(T) +
                      " is " + std::to_string(bank.max_feasible_scale(T)));
  }
  const auto& lp = bank.lowpass();
  const auto& hp = bank.highpass();
  const std::size_t L0 = lp.size();

  WaveletPyramid pyr;
  pyr.bank = &bank;
  pyr.T = T;
  for (double v : x) pyr.input_scale = std::max(pyr.input_scale, std::abs(v));
  pyr.detail.resize(static_cast<std::size_t>(J));

  std::vector<double> approx(x.begin(), x.end());
  std::vector<double> next;
  for (int j = 1; j <= J; ++j) {
    const std::size_t n_in = approx.size();
    const std::size_t n_out = n_in >= L0 ? (n_in - L0) / 2 + 1 : 0;
    auto& det = pyr.detail[static_cast<std::size_t>(j - 1)];
    det.resize(n_out);
    next.resize(n_out);
    for (std::size_t k = 0; k < n_out; ++k) {
      const double* in = approx.data() + 2 * k;
      double a = 0.0, d = 0.0;
      for (std::size_t s = 0; s < L0; ++s) {
        a += lp[s] * in[s];
        d += hp[s] * in[s];
      }
      next[k] = a;
      det[k] = d;
    }
    approx.swap(next);
  }
  return pyr;
}

LocalScalogram local_scalogram(const WaveletPyramid& pyr, const WeightScheme& scheme,
                               std::span<const double> u_grid, int L, int ell) {
  if (L < 1 || ell < 0) throw ConfigError("need L >= 1 and ell >= 0");
  if (L + ell > pyr.depth()) {
    throw ConfigError("pyramid holds scales up to " + std::to_string(pyr.depth()) +
                      ", requested L+ell=" + std::to_string(L + ell));
  }
  LocalScalogram out;
  out.L = L;
  out.ell = ell;
  out.u_grid.assign(u_grid.begin(), u_grid.end());
  out.scheme_tag = scheme.tag();
  out.bandwidth = scheme.bandwidth();
  out.T = pyr.T;
  out.input_scale = pyr.input_scale;
  const std::size_t n_u = u_grid.size();
  const double zero_floor = scalflag::kZeroRelTol * pyr.input_scale;
  out.values.assign(static_cast<std::size_t>(ell + 1), std::vector<double>(n_u, 0.0));
  out.flags.assign(static_cast<std::size_t>(ell + 1), std::vector<std::uint8_t>(n_u, 0));
  out.delta.assign(static_cast<std::size_t>(ell + 1), std::vector<double>(n_u, 0.0));

  for (int idx = 0; idx <= ell; ++idx) {
    const int j = L + idx;
    const auto W = pyr.coeffs(j);
    const auto Tj = static_cast<std::int64_t>(W.size());
    for (std::size_t iu = 0; iu < n_u; ++iu) {
      const double u = u_grid[iu];
      auto& flag = out.flags[static_cast<std::size_t>(idx)][iu];
      if (!scheme.interior(u)) flag |= scalflag::kBoundary;
      try {
        const WeightVector w = scheme.weights(u, Tj);
        Accumulator acc;
        for (std::size_t i = 0; i < w.values.size(); ++i) {
          const auto k = static_cast<std::size_t>(w.first + static_cast<std::int64_t>(i));
          acc.add(w.values[i] * W[k] * W[k]);
        }
        const double v = acc.value();
        out.values[static_cast<std::size_t>(idx)][iu] = v;
        out.delta[static_cast<std::size_t>(idx)][iu] = w.delta();
        if (v <= zero_floor * zero_floor) flag |= scalflag::kZero;
      } catch (const BoundaryError&) {
        out.values[static_cast<std::size_t>(idx)][iu] =
            std::numeric_limits<double>::quiet_NaN();
        flag |= scalflag::kError | scalflag::kBoundary;
      }
    }
  }
  return out;
}

StreamingScalogram::StreamingScalogram(const WaveletBank& bank, int L, int ell,
                                       double bandwidth, std::int64_t T,
                                       std::span<const double> u_grid)
    : bank_(&bank), L_(L), ell_(ell), b_(bandwidth), T_(T),
      u_grid_(u_grid.begin(), u_grid.end()) {
  if (L < 1 || ell < 0) throw ConfigError("need L >= 1 and ell >= 0");
  if (!(bandwidth > 0.0 && bandwidth < 1.0)) {
    throw ConfigError("bandwidth must lie in (0,1)");
  }
  if (L + ell > bank.max_scale()) {
    throw ConfigError("bank holds scales up to " + std::to_string(bank.max_scale()));
  }
  if (bank.coeff_count(T, L + ell) < 1) {
    throw ConfigError("series too short for scale " + std::to_string(L + ell) +
                      "; maximum feasible scale is " +
                      std::to_string(bank.max_feasible_scale(T)));
  }
  levels_.resize(static_cast<std::size_t>(L + ell));
  for (int j = 1; j <= L + ell; ++j) {
    Level& lv = levels_[static_cast<std::size_t>(j - 1)];
    lv.window.assign(bank.base_length(), 0.0);
    lv.Tj = bank.coeff_count(T, j);
    lv.forget = std::exp(-1.0 / (b_ * static_cast<double>(lv.Tj)));
    lv.snapshots.assign(u_grid_.size(), std::numeric_limits<double>::quiet_NaN());
    lv.targets.resize(u_grid_.size());
    for (std::size_t i = 0; i < u_grid_.size(); ++i) {
      lv.targets[i] = static_cast<std::int64_t>(
                          std::floor(u_grid_[i] * static_cast<double>(lv.Tj))) -
                      1;
    }
  }
}

void StreamingScalogram::feed(int level_idx, double value) {
  Level& lv = levels_[static_cast<std::size_t>(level_idx)];
  const auto L0 = static_cast<std::int64_t>(lv.window.size());
  // sliding window of the last L0 inputs
  if (lv.seen < L0) {
    lv.window[static_cast<std::size_t>(lv.seen)] = value;
  } else {
    // shift left by one; L0 is small (<= 20)
    for (std::size_t s = 0; s + 1 < lv.window.size(); ++s) lv.window[s] = lv.window[s + 1];
    lv.window.back() = value;
  }
  ++lv.seen;
  if (lv.seen < L0 || (lv.seen - L0) % 2 != 0) return;

  const auto& lp = bank_->lowpass();
  const auto& hp = bank_->highpass();
  double a = 0.0, d = 0.0;
  for (std::size_t s = 0; s < lv.window.size(); ++s) {
    a += lp[s] * lv.window[s];
    d += hp[s] * lv.window[s];
  }
  const int j = level_idx + 1;
  lv.state = lv.forget * lv.state + d * d;
  const std::int64_t k = lv.emitted;
  ++lv.emitted;
  for (std::size_t i = 0; i < lv.targets.size(); ++i) {
    if (lv.targets[i] == k) lv.snapshots[i] = lv.state;
  }
  if (j < L_ + ell_) feed(level_idx + 1, a);
}

void StreamingScalogram::push(double x) {
  if (consumed_ >= T_) throw DataError("stream longer than the declared T");
  ++consumed_;
  input_scale_ = std::max(input_scale_, std::abs(x));
  feed(0, x);
}

std::int64_t StreamingScalogram::emitted(int j) const {
  return levels_[static_cast<std::size_t>(j - 1)].emitted;
}

double StreamingScalogram::current(int j) const {
  const Level& lv = levels_[static_cast<std::size_t>(j - 1)];
  if (lv.emitted < 1) {
    throw BoundaryError("no coefficients emitted yet at scale " + std::to_string(j));
  }
  return lv.state / recursive_rho(lv.emitted, b_ * static_cast<double>(lv.Tj));
}

double StreamingScalogram::finalize(double u, int j) const {
  const Level& lv = levels_[static_cast<std::size_t>(j - 1)];
  const auto uj = static_cast<std::int64_t>(std::floor(u * static_cast<double>(lv.Tj)));
  if (uj < 1) {
    throw BoundaryError("finalize needs floor(u T_j) >= 1 at scale " + std::to_string(j));
  }
  if (uj > lv.emitted) {
    throw BoundaryError("finalize(" + std::to_string(u) + ") needs " +
                        std::to_string(uj) + " coefficients at scale " +
                        std::to_string(j) + ", only " + std::to_string(lv.emitted) +
                        " emitted");
  }
  if (uj == lv.emitted) {
    return lv.state / recursive_rho(uj, b_ * static_cast<double>(lv.Tj));
  }
  for (std::size_t i = 0; i < u_grid_.size(); ++i) {
    if (u_grid_[i] == u) {
      const double s = lv.snapshots[i];
      if (std::isnan(s)) {
        throw BoundaryError("no snapshot captured for u=" + std::to_string(u));
      }
      return s / recursive_rho(uj, b_ * static_cast<double>(lv.Tj));
    }
  }
  throw ConfigError("finalize(u) supports the constructor grid or the stream head");
}

LocalScalogram StreamingScalogram::to_scalogram() const {
  LocalScalogram out;
  out.L = L_;
  out.ell = ell_;
  out.u_grid = u_grid_;
  out.scheme_tag = "recursive";
  out.bandwidth = b_;
  out.T = T_;
  out.input_scale = input_scale_;
  const double zero_floor = scalflag::kZeroRelTol * input_scale_;
  const std::size_t n_u = u_grid_.size();
  out.values.assign(static_cast<std::size_t>(ell_ + 1),
                    std::vector<double>(n_u, std::numeric_limits<double>::quiet_NaN()));
  out.flags.assign(static_cast<std::size_t>(ell_ + 1), std::vector<std::uint8_t>(n_u, 0));
  out.delta.assign(static_cast<std::size_t>(ell_ + 1), std::vector<double>(n_u, 0.0));
  for (int idx = 0; idx <= ell_; ++idx) {
    const int j = L_ + idx;
    const Level& lv = levels_[static_cast<std::size_t>(j - 1)];
    for (std::size_t iu = 0; iu < n_u; ++iu) {
      auto& flag = out.flags[static_cast<std::size_t>(idx)][iu];
      try {
        const double v = finalize(u_grid_[iu], j);
        out.values[static_cast<std::size_t>(idx)][iu] = v;
        const auto uj = static_cast<std::int64_t>(
            std::floor(u_grid_[iu] * static_cast<double>(lv.Tj)));
        out.delta[static_cast<std::size_t>(idx)][iu] =
            1.0 / recursive_rho(uj, b_ * static_cast<double>(lv.Tj));
        if (v <= zero_floor * zero_floor) flag |= scalflag::kZero;
      } catch (const BoundaryError&) {
        flag |= scalflag::kError | scalflag::kBoundary;
      }
    }
  }
  return out;
}

std::vector<double> tangent_scalogram(const TvArfimaModel& model, double u,
                                      const SimConfig& cfg, const WeightScheme& scheme,
                                      const WaveletBank& bank, int L, int ell) {
  const SimulatedPath path = simulate_tangent(model, u, cfg);
  const WaveletPyramid pyr = dwt(path.values, bank, L + ell);
  const double ug[1] = {u};
  const LocalScalogram sc = local_scalogram(pyr, scheme, ug, L, ell);
  std::vector<double> out(static_cast<std::size_t>(ell + 1));
  for (int i = 0; i <= ell; ++i) out[static_cast<std::size_t>(i)] = sc.values[static_cast<std::size_t>(i)][0];
  return out;
}

}  // namespace tvlm
