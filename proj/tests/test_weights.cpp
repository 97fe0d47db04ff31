#include "doctest.h"

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "tvlm/errors.hpp"
#include "tvlm/weights.hpp"

using namespace tvlm;

TEST_CASE("rectangle window at u=0.5, Tj=100, b=0.25") {
  const WeightVector w = kernel_weights(0.5, 100, 0.25, Kernel{});
  CHECK(w.first == 38);
  CHECK(w.last() == 62);
  for (double v : w.values) CHECK(v == doctest::Approx(1.0 / 25.0).epsilon(1e-12));
  CHECK(std::abs(w.sum() - 1.0) < 1e-14);
}

TEST_CASE("kernel weights normalize exactly for many configurations") {
  for (double u : {0.2, 0.5, 0.77}) {
    for (std::int64_t Tj : {53ll, 1024ll, 100001ll}) {
      for (double b : {0.05, 0.25}) {
        const WeightVector w = kernel_weights(u, Tj, b, Kernel{});
        CHECK(std::abs(w.sum() - 1.0) <= 1e-14);
        for (double v : w.values) CHECK(v >= 0.0);
      }
    }
  }
}

TEST_CASE("rectangle delta times window width tends to one") {
  double prev_gap = 1.0;
  for (std::int64_t Tj : {1000ll, 10000ll, 100000ll}) {
    const double b = 0.01;
    const WeightVector w = kernel_weights(0.5, Tj, b, Kernel{});
    const double gap = std::abs(w.delta() * b * static_cast<double>(Tj) - 1.0);
    CHECK(gap <= prev_gap + 1e-12);
    prev_gap = gap;
  }
  CHECK(prev_gap < 0.01);
}

TEST_CASE("kernel support missing the sample raises a boundary error") {
  CHECK_THROWS_AS(kernel_weights(-0.5, 1000, 0.25, Kernel{}), BoundaryError);
  CHECK_THROWS_AS(kernel_weights(1.5, 1000, 0.25, Kernel{}), BoundaryError);
}

TEST_CASE("recursive weights match the closed-form example") {
  // floor(u Tj) = 3 with b Tj = 1
  const WeightVector w = recursive_weights(0.1, 30, 1.0 / 30.0);
  const double rho = 1.0 + std::exp(-1.0) + std::exp(-2.0);
  CHECK(rho == doctest::Approx(1.503214724408055).epsilon(1e-12));
  REQUIRE(w.values.size() == 3);
  CHECK(w.first == 0);
  CHECK(w.at(0) == doctest::Approx(std::exp(-2.0) / rho).epsilon(1e-12));
  CHECK(w.at(1) == doctest::Approx(std::exp(-1.0) / rho).epsilon(1e-12));
  CHECK(w.at(2) == doctest::Approx(1.0 / rho).epsilon(1e-12));
  CHECK(std::abs(w.sum() - 1.0) < 1e-14);
  // largest weight sits at floor(u Tj) - 1 and equals delta = 1/rho
  CHECK(w.delta() == doctest::Approx(1.0 / rho).epsilon(1e-12));
  CHECK(w.at(2) == w.delta());
}

TEST_CASE("recursive weights are one-sided and normalized") {
  for (double u : {0.3, 0.8, 1.0}) {
    for (std::int64_t Tj : {100ll, 4096ll, 65536ll}) {
      const WeightVector w = recursive_weights(u, Tj, 0.1);
      const auto uj = static_cast<std::int64_t>(std::floor(u * static_cast<double>(Tj)));
      CHECK(w.last() == uj - 1);
      CHECK(w.at(uj) == 0.0);
      CHECK(w.at(uj + 5) == 0.0);
      CHECK(std::abs(w.sum() - 1.0) <= 1e-14);
    }
  }
  CHECK_THROWS_AS(recursive_weights(0.0001, 100, 0.1), BoundaryError);
}

TEST_CASE("diagnostics: Gamma_0 is one, rectangle Gamma_1 is the window MAD") {
  const std::int64_t Tj = 10000;
  const int j = 3;
  const std::int64_t T = Tj << j;
  const WeightVector w = kernel_weights(0.5, Tj, 0.2, Kernel{});
  const WeightDiagnostics diag = diagnostics(w, 0.5, T, j);
  CHECK(diag.gamma[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(diag.delta == doctest::Approx(w.delta()).epsilon(1e-15));
  // uniform window of n points: mean absolute deviation ~ n/4 = b Tj / 4
  CHECK(diag.gamma[1] == doctest::Approx(0.2 * Tj / 4.0).epsilon(0.01));
}

TEST_CASE("diagnostics: recursive Gamma_1 approaches the bandwidth window") {
  for (double bTj : {100.0, 1000.0}) {
    const std::int64_t Tj = 100000;
    const double b = bTj / static_cast<double>(Tj);
    const int j = 2;
    const WeightVector w = recursive_weights(1.0, Tj, b);
    const WeightDiagnostics diag = diagnostics(w, 1.0, Tj << j, j);
    CHECK(diag.gamma[1] / bTj == doctest::Approx(1.0).epsilon(0.05));
  }
}

TEST_CASE("weight Fourier object at lambda=0 and the Dirichlet modulus") {
  const WeightVector w = kernel_weights(0.5, 2000, 0.1, Kernel{});
  const double grid0[] = {0.0};
  const auto phi0 = weight_fourier(w, 0, 0, grid0);
  CHECK(phi0[0].real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(phi0[0].imag() == doctest::Approx(0.0).epsilon(1e-12));

  const auto N = static_cast<double>(w.values.size());
  for (double lam : {0.013, 0.2, 1.7}) {
    const double grid[] = {lam};
    const auto phi = weight_fourier(w, 0, 0, grid);
    const double dirichlet = std::abs(std::sin(0.5 * N * lam) / std::sin(0.5 * lam));
    CHECK(std::abs(phi[0]) ==
          doctest::Approx(dirichlet / N).epsilon(1e-10));
  }
}

TEST_CASE("discrete identity matches the lambda integral of Phi Phi-bar") {
  const WeightVector w = kernel_weights(0.5, 512, 0.125, Kernel{});
  // dense trapezoid of |Phi|^2 over [-pi, pi]
  const int n = 1 << 14;
  double acc = 0.0;
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)] = -M_PI + 2.0 * M_PI * i / n;
  const auto phi = weight_fourier(w, 0, 0, grid);
  for (const auto& p : phi) acc += std::norm(p);
  acc *= 2.0 * M_PI / n;
  CHECK(acc == doctest::Approx(phi_inner(w, 0, 0, w, 0, 0)).epsilon(1e-10));
}

TEST_CASE("limit V oracle: rectangle reaches 2 pi 2^{-m}, recursive pi 2^{-m}") {
  const std::int64_t Tj = 20000;
  const double b = 0.01, u = 0.5;
  for (int m : {0, 1}) {
    {
      const WeightVector wj = kernel_weights(u, Tj, b, Kernel{});
      const WeightVector wjm = kernel_weights(u, Tj << m, b, Kernel{});
      const double V = phi_inner(wj, 0, 0, wjm, m, 0) / wj.delta();
      CHECK(V == doctest::Approx(2.0 * M_PI * std::ldexp(1.0, -m)).epsilon(0.05));
    }
    {
      const WeightVector wj = recursive_weights(u, Tj, b);
      const WeightVector wjm = recursive_weights(u, Tj << m, b);
      const double V = phi_inner(wj, 0, 0, wjm, m, 0) / wj.delta();
      CHECK(V == doctest::Approx(M_PI * std::ldexp(1.0, -m)).epsilon(0.05));
    }
  }
}

TEST_CASE("delta doubles from scale to scale") {
  for (std::int64_t T : {1 << 16, 1 << 18, 1 << 20}) {
    const double b = 0.02;
    // idealized T_j = T 2^{-j}
    const WeightVector w3 = kernel_weights(0.5, T >> 3, b, Kernel{});
    const WeightVector w4 = kernel_weights(0.5, T >> 4, b, Kernel{});
    CHECK(w4.delta() / w3.delta() == doctest::Approx(2.0).epsilon(0.05));
    const WeightVector r3 = recursive_weights(0.5, T >> 3, b);
    const WeightVector r4 = recursive_weights(0.5, T >> 4, b);
    CHECK(r4.delta() / r3.delta() == doctest::Approx(2.0).epsilon(0.05));
  }
}

TEST_CASE("weight scheme dispatch, tags, limits, boundary policy") {
  const WeightScheme rect = WeightScheme::rectangle(0.25);
  CHECK(rect.tag() == "kernel:rectangle");
  CHECK(rect.limit_V(0, 0, 0, 0) == doctest::Approx(2.0 * M_PI));
  CHECK(rect.limit_V(1, 0, 2, 1) == doctest::Approx(2.0 * M_PI / 8.0));
  CHECK(rect.limit_delta_rate() == 1.0);
  CHECK(rect.interior(0.5));
  CHECK(rect.interior(0.125));
  CHECK(!rect.interior(0.1249));
  CHECK(!rect.interior(0.876));

  const WeightScheme rec = WeightScheme::recursive(0.25);
  CHECK(rec.tag() == "recursive");
  CHECK(rec.limit_V(0, 0, 1, 0) == doctest::Approx(M_PI / 2.0));
  CHECK(rec.interior(1.0));
  CHECK(rec.interior(0.01));
  CHECK(!rec.interior(0.0));

  // b >= 1 clamps to the uniform (global-scalogram) window
  const WeightScheme uni = WeightScheme::rectangle(1.5);
  CHECK(uni.bandwidth() == 1.0);
  const WeightVector w = uni.weights(0.5, 200);
  CHECK(w.values.size() == 200);
  CHECK(w.at(0) == doctest::Approx(1.0 / 200.0).epsilon(1e-14));
  CHECK_THROWS_AS(WeightScheme::rectangle(-0.1), ConfigError);
  CHECK_THROWS_AS(WeightScheme::recursive(1.5), ConfigError);
}

TEST_CASE("custom triangle kernel: numeric V matches the kernel-norm formula") {
  Kernel tri;
  tri.rectangle = false;
  tri.half = 0.5;
  tri.samples.resize(201);
  for (int i = 0; i <= 200; ++i) {
    const double s = -0.5 + static_cast<double>(i) / 200.0;
    tri.samples[static_cast<std::size_t>(i)] = 1.0 - 2.0 * std::abs(s);
  }
  const WeightScheme scheme = WeightScheme::custom_kernel(0.1, tri);
  const WeightVector w = scheme.weights(0.5, 5000);
  CHECK(std::abs(w.sum() - 1.0) <= 1e-14);
  // ||K||_1 = 1/2, ||K||_inf = 1, ||K||_2^2 = 1/3 -> V(0,0;0,0) = 4 pi / 3
  CHECK(scheme.limit_V(0, 0, 0, 0) ==
        doctest::Approx(4.0 * M_PI / 3.0).epsilon(0.02));
  CHECK(scheme.limit_delta_rate() == doctest::Approx(2.0).epsilon(0.01));

  Kernel bad = tri;
  bad.samples[3] = -0.1;
  CHECK_THROWS_AS(WeightScheme::custom_kernel(0.1, bad), ConfigError);
}
