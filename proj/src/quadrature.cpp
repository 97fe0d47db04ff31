#include "tvlm/quadrature.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace tvlm::quad {

namespace {

GLRule make_rule(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1 required");
  GLRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  // Newton on P_n with the Chebyshev-based initial guess.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p0 = 0.0, p1 = 0.0;
    for (int it = 0; it < 100; ++it) {
      p0 = 1.0;
      p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    p0 = 1.0;
    p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.weights[i] = w;
    r.nodes[n - 1 - i] = x;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

}  // namespace

const GLRule& gauss_legendre(int n) {
  static std::map<int, GLRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_rule(n)).first;
  return it->second;
}

std::vector<double> uniform_mesh(double a, double b, int cells) {
  std::vector<double> m(cells + 1);
  for (int i = 0; i <= cells; ++i) m[i] = a + (b - a) * i / cells;
  m.back() = b;
  return m;
}

std::vector<double> graded_mesh(double a, double b, int geometric, int uniform,
                                double ratio) {
  if (geometric <= 0) return uniform_mesh(a, b, uniform > 0 ? uniform : 1);
  // graded region spans the first half (or all of [a,b] if uniform == 0)
  const double span = (uniform > 0) ? 0.5 * (b - a) : (b - a);
  std::vector<double> m;
  m.reserve(geometric + uniform + 2);
  m.push_back(a);
  // cell widths r^{geometric-1}, ..., r, 1 scaled to fill `span`
  double scale = 0.0;
  for (int i = 0; i < geometric; ++i) scale += std::pow(ratio, i);
  double x = a;
  for (int i = geometric - 1; i >= 1; --i) {
    x += span * std::pow(ratio, i) / scale;
    m.push_back(x);
  }
  m.push_back(a + span);
  if (uniform > 0) {
    for (int i = 1; i <= uniform; ++i) {
      m.push_back(a + span + (b - a - span) * i / uniform);
    }
    m.back() = b;
  }
  return m;
}

}  // namespace tvlm::quad
