#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tvlm/simulate.hpp"
#include "tvlm/wavelet.hpp"
#include "tvlm/weights.hpp"

namespace tvlm {

// Triangular array of wavelet coefficients W_{j,k;T}, j = 1..J, k = 0..T_j-1.
// Strict "valid" convolution: every coefficient uses only samples inside
// the observed series, no padding.
struct WaveletPyramid {
  const WaveletBank* bank = nullptr;
  std::int64_t T = 0;
  double input_scale = 0.0;  // max |x_t|, the reference for zero detection
  std::vector<std::vector<double>> detail;  // detail[j-1]

  int depth() const { return static_cast<int>(detail.size()); }
  std::int64_t Tj(int j) const {
    return static_cast<std::int64_t>(detail[static_cast<std::size_t>(j - 1)].size());
  }
  std::span<const double> coeffs(int j) const { return detail[static_cast<std::size_t>(j - 1)]; }
};

// Pyramid recursion (per-level low-pass cascade + detail filter); equals the
// direct convolution sum_t h_{j,2^j k - t} X_t coefficient for coefficient.
WaveletPyramid dwt(std::span<const double> x, const WaveletBank& bank, int J);

namespace scalflag {
// a value below (kZeroRelTol * input_scale)^2 is annihilation residue, not
// signal; it is flagged rather than clamped
constexpr double kZeroRelTol = 1e-12;
constexpr std::uint8_t kZero = 1;      // scalogram value is numerically zero
constexpr std::uint8_t kBoundary = 2;  // u outside the scheme's interior range
constexpr std::uint8_t kError = 4;     // weights not constructible at (u, T_j)
}  // namespace scalflag

struct LocalScalogram {
  int L = 1;
  int ell = 0;  // scales L .. L+ell
  std::vector<double> u_grid;
  std::vector<std::vector<double>> values;  // [ell+1][n_u]
  std::vector<std::vector<std::uint8_t>> flags;
  std::vector<std::vector<double>> delta;   // sup weight per (scale, u)
  std::string scheme_tag;
  double bandwidth = 0.0;
  std::int64_t T = 0;
  double input_scale = 0.0;

  int scale(int idx) const { return L + idx; }
  int n_scales() const { return ell + 1; }
};

// sigma_hat^2_{j,T}(u) = sum_k gamma_{j,T}(k) W^2_{j,k;T} on the (j, u) grid.
LocalScalogram local_scalogram(const WaveletPyramid& pyr, const WeightScheme& scheme,
                               std::span<const double> u_grid, int L, int ell);

// Online recursive scalogram: per scale j,
//   s_{j,t} = exp(-1/(b T_j)) s_{j,t-1} + W^2_{j,t},   s_{j,-1} = 0,
// finalized as rho^{-1} s_{j,floor(u T_j)-1}. Snapshot indices for the
// requested u grid are fixed up front; sample buffering stays O(J * L0).
class StreamingScalogram {
 public:
  StreamingScalogram(const WaveletBank& bank, int L, int ell, double bandwidth,
                     std::int64_t T, std::span<const double> u_grid);

  void push(double x);
  std::int64_t consumed() const { return consumed_; }
  std::int64_t emitted(int j) const;

  // rho^{-1}-normalized value at the latest emitted coefficient of scale j
  double current(int j) const;
  // finalized value at grid point u; throws BoundaryError if the stream has
  // not yet reached floor(u T_j) coefficients or u is not a grid point
  double finalize(double u, int j) const;

  LocalScalogram to_scalogram() const;

 private:
  struct Level {
    std::vector<double> window;  // last L0 inputs from the level below
    std::int64_t seen = 0;       // inputs consumed
    std::int64_t emitted = 0;    // coefficients produced
    double state = 0.0;          // s_{j,t}
    double forget = 0.0;         // exp(-1/(b T_j))
    std::int64_t Tj = 0;
    std::vector<double> snapshots;      // per grid u
    std::vector<std::int64_t> targets;  // floor(u T_j) - 1 per grid u
  };

  void feed(int level_idx, double value);

  const WaveletBank* bank_;
  int L_, ell_;
  double b_;
  std::int64_t T_;
  std::vector<double> u_grid_;
  std::vector<Level> levels_;  // levels 1..L+ell
  std::int64_t consumed_ = 0;
  double input_scale_ = 0.0;
};

// Scalogram of the coupled tangent path at rescaled time u (test oracle).
std::vector<double> tangent_scalogram(const TvArfimaModel& model, double u,
                                      const SimConfig& cfg, const WeightScheme& scheme,
                                      const WaveletBank& bank, int L, int ell);

}  // namespace tvlm
