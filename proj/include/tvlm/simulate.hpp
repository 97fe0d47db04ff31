#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tvlm/models.hpp"
#include "tvlm/rng.hpp"

namespace tvlm {

struct SimulatedPath {
  std::vector<double> values;  // X_{1,T} .. X_{T,T}
  std::int64_t T = 0;
  std::uint64_t seed = 0;
  std::string model_tag;
  std::vector<std::string> warnings;
};

struct SimConfig {
  std::int64_t T = 4096;
  std::uint64_t seed = 1;
  NoiseKind noise = NoiseKind::gaussian;
  std::int64_t trunc = 4096;     // MA(inf) truncation length N
  double tail_warn_tol = 0.05;   // warn when est. truncated tail mass exceeds this
};

// First n_taps MA(inf) coefficients of the stationary ARFIMA(q, d(u)-p, r)
// frozen at u: fractional weights pi_k(delta), delta = d(u)-p, by the
// multiplicative recurrence, pushed through the ARMA recursion, scaled by
// sigma(u) so the process driven by unit-variance noise has spectral
// density exactly f(u,.) |1-e^{-i lambda}|^{2p}.
// Throws DomainError when d(u) - p >= 1/2 (non-summable variance).
std::vector<double> ma_coefficients(const TvArfimaModel& m, double u,
                                    std::int64_t n_taps);

// Delta^p X_{t,T} = sum_{k=0}^{N} a_k(t/T) eps_{t-k}, then p cumulative
// integrations from zero. Pre-sample noise of length N comes from the same
// stream, so X_{1,T} is fully formed. Bit-reproducible for a fixed seed.
SimulatedPath simulate(const TvArfimaModel& m, const SimConfig& cfg);

// Same machinery and the same noise stream with parameters frozen at u,
// realizing the coupled tangent process sample-wise.
SimulatedPath simulate_tangent(const TvArfimaModel& m, double u, const SimConfig& cfg);

// tvFGN simulation through a two-sided symmetric MA filter whose taps are
// the Fourier coefficients of sqrt(2 pi f(u,.)).
SimulatedPath simulate(const TvFgnModel& m, const SimConfig& cfg);
SimulatedPath simulate_tangent(const TvFgnModel& m, double u, const SimConfig& cfg);

// Two-sided taps c_{-N}..c_N (returned as c[0..2N], center at index N).
std::vector<double> fgn_ma_coefficients(const TvFgnModel& m, double u,
                                        std::int64_t n_side);

}  // namespace tvlm
