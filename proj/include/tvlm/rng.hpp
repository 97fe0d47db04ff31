#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace tvlm {

// Deterministic samplers on top of mt19937_64. std::normal_distribution is
// implementation-defined, so the transforms are spelled out here to keep
// simulated paths bit-reproducible for a given seed.
class NoiseStream {
 public:
  explicit NoiseStream(std::uint64_t seed) : gen_(seed) {}

  // uniform on (0,1]
  double uniform01() {
    return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
  }

  // standard normal, Box-Muller (caches the second deviate)
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  // zero-mean unit-variance uniform on (-sqrt(3), sqrt(3)]
  double uniform_unit_var() {
    return (2.0 * uniform01() - 1.0) * 1.7320508075688772935274463415059;
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

enum class NoiseKind { gaussian, uniform_iid };

}  // namespace tvlm
