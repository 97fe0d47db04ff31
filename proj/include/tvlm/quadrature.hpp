#pragma once

#include <cmath>
#include <vector>

namespace tvlm::quad {

struct GLRule {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;  // sum to 2
};

// n-point Gauss-Legendre rule, cached per n.
const GLRule& gauss_legendre(int n);

// Partition of [a,b]: `geometric` cells grading toward a with the given
// ratio (smallest cell adjacent to a), then `uniform` equal cells over the
// remainder starting where the graded part ends. Either count may be 0.
std::vector<double> graded_mesh(double a, double b, int geometric, int uniform,
                                double ratio = 0.5);

std::vector<double> uniform_mesh(double a, double b, int cells);

// Composite Gauss-Legendre over a mesh. F: double -> double or complex.
template <typename F>
auto integrate_mesh(F&& f, const std::vector<double>& mesh, int nodes_per_cell)
    -> decltype(f(0.0)) {
  const GLRule& rule = gauss_legendre(nodes_per_cell);
  decltype(f(0.0)) total{};
  for (std::size_t c = 0; c + 1 < mesh.size(); ++c) {
    const double a = mesh[c], b = mesh[c + 1];
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    decltype(f(0.0)) cell{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      cell += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    total += half * cell;
  }
  return total;
}

template <typename F>
auto integrate(F&& f, double a, double b, int cells, int nodes_per_cell)
    -> decltype(f(0.0)) {
  return integrate_mesh(f, uniform_mesh(a, b, cells), nodes_per_cell);
}

}  // namespace tvlm::quad
