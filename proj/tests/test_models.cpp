#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "tvlm/errors.hpp"
#include "tvlm/models.hpp"
#include "tvlm/rng.hpp"
#include "tvlm/simulate.hpp"

using namespace tvlm;

namespace {

TvArfimaModel sec51_model() {
  return TvArfimaModel(cosine_ramp_memory(), [](double) { return std::vector<double>{0.8}; }, 1,
                       [](double) { return std::vector<double>{}; }, 0,
                       [](double) { return 1.0; }, 0);
}

}  // namespace

TEST_CASE("model validation rejects non-causal, bad sigma, bad memory") {
  CHECK_THROWS_AS(TvArfimaModel::stationary(0.2, {1.05}, {}, 1.0), ConfigError);
  CHECK_THROWS_AS(TvArfimaModel::stationary(0.2, {0.5, 0.6}, {}, 1.0), ConfigError);
  CHECK_NOTHROW(TvArfimaModel::stationary(0.2, {0.5, 0.3}, {}, 1.0));
  CHECK_THROWS_AS(TvArfimaModel::stationary(0.2, {}, {}, 0.0), ConfigError);
  CHECK_THROWS_AS(TvArfimaModel::stationary(0.6, {}, {}, 1.0), ConfigError);  // d >= p+1/2
  CHECK_NOTHROW(TvArfimaModel::stationary(1.2, {}, {}, 1.0, 1));
  CHECK_THROWS_AS(TvFgnModel([](double) { return 1.2; }), ConfigError);
  CHECK_NOTHROW(TvFgnModel([](double) { return 0.7; }));
}

TEST_CASE("flat spectrum: white noise has f = 1/(2 pi)") {
  const auto m = TvArfimaModel::stationary(0.0, {}, {}, 1.0);
  for (double lam : {0.1, 1.0, 3.0, -2.0}) {
    CHECK(local_spectral_density(m, 0.3, lam) ==
          doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-14));
  }
  CHECK(local_spectral_density(m, 0.3, 0.0) ==
        doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-14));
}

TEST_CASE("ARFIMA(1,d,0) spectral identity") {
  const auto m = sec51_model();
  for (double u : {0.1, 0.5, 0.9}) {
    const double d = m.d(u);
    for (double lam : {0.05, 0.7, 2.2, M_PI}) {
      const double f = local_spectral_density(m, u, lam);
      const double ar = 1.0 - 2.0 * 0.8 * std::cos(lam) + 0.64;  // |1-0.8 e^{-il}|^2
      CHECK(f * std::pow(one_minus_exp_sq(lam), d) * ar ==
            doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-12));
    }
  }
}

TEST_CASE("spectral density at lambda = 0") {
  const auto pos = TvArfimaModel::stationary(0.2, {}, {}, 1.0);
  CHECK_THROWS_AS(local_spectral_density(pos, 0.5, 0.0), DomainError);
  const auto neg = TvArfimaModel::stationary(-0.3, {}, {}, 1.0);
  CHECK(local_spectral_density(neg, 0.5, 0.0) == 0.0);
}

TEST_CASE("FGN smooth part against a brute-force high-truncation sum") {
  const double H = 0.7, lam = M_PI / 2.0;
  // oracle: direct lattice sum truncated at |k| <= 1e6, no tail correction
  const double e = 2.0 * H + 1.0;
  long double lattice = 0.0L;
  for (int k = 1000000; k >= 1; --k) {
    lattice += std::pow(std::abs(lam + 2.0 * M_PI * k), -e);
    lattice += std::pow(std::abs(lam - 2.0 * M_PI * k), -e);
  }
  const double s2 = 2.0 * std::sin(0.5 * lam);
  const double brute =
      std::pow(s2 / lam, e) + std::pow(s2, e) * static_cast<double>(lattice);
  CHECK(fgn_smooth_part(lam, H) == doctest::Approx(brute).epsilon(1e-8));

  const TvFgnModel fgn([](double) { return 0.7; });
  CHECK(fgn.d(0.2) == doctest::Approx(0.2));
  CHECK(local_spectral_density(fgn, 0.2, lam) ==
        doctest::Approx(std::pow(one_minus_exp_sq(lam), -0.2) * brute).epsilon(1e-8));
}

TEST_CASE("tvFBM spectral evaluation (p=1)") {
  const TvFbmModel fbm([](double u) { return 0.4 + 0.2 * u; });
  CHECK(fbm.d(0.0) == doctest::Approx(0.9));
  CHECK(fbm.p() == 1);
  CHECK(local_spectral_density(fbm, 0.5, 1.0) > 0.0);
}

TEST_CASE("ma_coefficients: white noise, binomial ratios, long-division oracle") {
  const auto wn = TvArfimaModel::stationary(0.0, {}, {}, 1.0);
  const auto a0 = ma_coefficients(wn, 0.5, 8);
  CHECK(a0[0] == doctest::Approx(1.0).epsilon(1e-15));
  for (std::size_t k = 1; k < a0.size(); ++k) CHECK(a0[k] == 0.0);

  const auto frac = TvArfimaModel::stationary(0.4, {}, {}, 1.0);
  const auto a1 = ma_coefficients(frac, 0.5, 8);
  CHECK(a1[1] / a1[0] == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(a1[2] / a1[1] == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(a1[3] / a1[2] == doctest::Approx(0.8).epsilon(1e-14));

  const auto arf = TvArfimaModel::stationary(0.3, {0.8}, {}, 1.0);
  const auto a2 = ma_coefficients(arf, 0.5, 50);
  const auto oracle_taps = oracle::convolve(oracle::frac_series_lgamma(0.3, 50),
                                            oracle::series_reciprocal({1.0, -0.8}, 50), 50);
  for (std::size_t k = 0; k < 50; ++k) {
    CHECK(a2[k] == doctest::Approx(oracle_taps[k]).epsilon(1e-10));
  }
}

TEST_CASE("ma_coefficients rejects non-summable increments") {
  // spiky memory curve that evades the construction check grid
  MemoryCurve spiky{[](double u) { return std::abs(u - 0.1234567) < 1e-4 ? 0.7 : 0.2; },
                    0.2, 0.7, 0.0};
  const TvArfimaModel m(spiky, [](double) { return std::vector<double>{}; }, 0,
                        [](double) { return std::vector<double>{}; }, 0,
                        [](double) { return 1.0; }, 0);
  CHECK_NOTHROW(ma_coefficients(m, 0.5, 16));
  CHECK_THROWS_AS(ma_coefficients(m, 0.1234567, 16), DomainError);
}

TEST_CASE("simulation: white noise identity and bit reproducibility") {
  const auto wn = TvArfimaModel::stationary(0.0, {}, {}, 1.0);
  SimConfig cfg;
  cfg.T = 256;
  cfg.seed = 42;
  cfg.trunc = 64;
  const auto path = simulate(wn, cfg);
  // with sigma = 1 the filter is the identity: X_t equals the noise stream
  NoiseStream stream(42);
  std::vector<double> eps(static_cast<std::size_t>(cfg.T + cfg.trunc));
  for (auto& e : eps) e = stream.gaussian();
  for (std::int64_t t = 1; t <= cfg.T; ++t) {
    CHECK(path.values[static_cast<std::size_t>(t - 1)] ==
          eps[static_cast<std::size_t>(t - 1 + cfg.trunc)]);
  }
  const auto path2 = simulate(wn, cfg);
  CHECK(path.values == path2.values);
  cfg.seed = 43;
  const auto path3 = simulate(wn, cfg);
  CHECK(path.values != path3.values);
}

TEST_CASE("tangent equals the path for constant parameters, differs otherwise") {
  SimConfig cfg;
  cfg.T = 512;
  cfg.seed = 7;
  cfg.trunc = 256;
  const auto constant = TvArfimaModel::stationary(0.3, {0.5}, {0.2}, 1.3);
  CHECK(simulate(constant, cfg).values == simulate_tangent(constant, 0.25, cfg).values);
  CHECK(simulate(constant, cfg).values == simulate_tangent(constant, 0.9, cfg).values);

  const auto varying = sec51_model();
  const auto t0 = simulate_tangent(varying, 0.0, cfg);
  const auto t1 = simulate_tangent(varying, 1.0, cfg);
  CHECK(t0.values != t1.values);
}

TEST_CASE("the section-5.1 model simulates") {
  SimConfig cfg;
  cfg.T = 4096;
  cfg.seed = 1;
  const auto path = simulate(sec51_model(), cfg);
  CHECK(path.values.size() == 4096);
  CHECK(path.warnings.empty());
  double mx = 0.0;
  for (double v : path.values) mx = std::max(mx, std::abs(v));
  CHECK(mx > 0.0);
  CHECK(mx < 1e3);  // sane magnitude
}

TEST_CASE("p >= 1 integrates cumulatively from zero") {
  const auto rw = TvArfimaModel::stationary(1.0, {}, {}, 1.0, 1);  // d=1: unit root
  SimConfig cfg;
  cfg.T = 128;
  cfg.seed = 5;
  cfg.trunc = 32;
  const auto path = simulate(rw, cfg);
  // d - p = 0: increments are the white noise itself; X_t = sum_{s<=t} eps_s
  NoiseStream stream(5);
  std::vector<double> eps(static_cast<std::size_t>(cfg.T + cfg.trunc));
  for (auto& e : eps) e = stream.gaussian();
  double acc = 0.0;
  for (std::int64_t t = 1; t <= cfg.T; ++t) {
    acc += eps[static_cast<std::size_t>(t - 1 + cfg.trunc)];
    CHECK(path.values[static_cast<std::size_t>(t - 1)] == doctest::Approx(acc).epsilon(1e-12));
  }
}

TEST_CASE("truncation warning fires when N is too small for large d") {
  const auto longmem = TvArfimaModel::stationary(0.45, {}, {}, 1.0);
  SimConfig cfg;
  cfg.T = 64;
  cfg.seed = 2;
  cfg.trunc = 32;  // far too short for d = 0.45
  const auto path = simulate(longmem, cfg);
  CHECK(!path.warnings.empty());
}

TEST_CASE("uniform-iid driver is reproducible with unit variance") {
  const auto wn = TvArfimaModel::stationary(0.0, {}, {}, 1.0);
  SimConfig cfg;
  cfg.T = 1 << 14;
  cfg.seed = 11;
  cfg.trunc = 16;
  cfg.noise = NoiseKind::uniform_iid;
  const auto path = simulate(wn, cfg);
  CHECK(oracle::variance(path.values) == doctest::Approx(1.0).epsilon(0.05));
  for (double v : path.values) CHECK(std::abs(v) <= std::sqrt(3.0) + 1e-12);
}

TEST_CASE("tvFGN two-sided taps: symmetry and spectral mass") {
  const TvFgnModel fgn([](double) { return 0.7; });
  const auto taps = fgn_ma_coefficients(fgn, 0.5, 512);
  REQUIRE(taps.size() == 1025);
  for (std::size_t k = 0; k < 64; ++k) {
    CHECK(taps[512 - k] == doctest::Approx(taps[512 + k]).epsilon(1e-9));
  }
  // Parseval: sum c_k^2 = int f  (demands most of the mass inside the window)
  double mass = 0.0;
  for (double c : taps) mass += c * c;
  // oracle: trapezoid of f on a graded grid away from the singularity plus
  // the analytic singular head int_0^eps c lam^{-2d} with d = 0.2
  const double d = 0.2, eps = 1e-4;
  const double fstar0 = fgn_smooth_part(0.0, 0.7);
  double head = 2.0 * fstar0 * std::pow(eps, 1.0 - 2.0 * d) / (1.0 - 2.0 * d);
  double body = 2.0 * oracle::trapezoid(
                          [&](double lam) {
                            return std::pow(one_minus_exp_sq(lam), -d) *
                                   fgn_smooth_part(lam, 0.7, 2000);
                          },
                          eps, M_PI, 40000);
  CHECK(mass == doctest::Approx(head + body).epsilon(0.01));
}

TEST_CASE("tvFGN simulation is reproducible and couples the tangent") {
  const TvFgnModel fgn([](double) { return 0.7; });
  SimConfig cfg;
  cfg.T = 256;
  cfg.seed = 3;
  cfg.trunc = 256;
  const auto a = simulate(fgn, cfg);
  const auto b = simulate(fgn, cfg);
  CHECK(a.values == b.values);
  // constant H: tangent path coincides with the nonstationary path
  const auto t = simulate_tangent(fgn, 0.3, cfg);
  CHECK(a.values == t.values);
}
