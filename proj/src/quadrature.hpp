#pragma once

#include <cstddef>
#include <vector>

namespace qlg::detail {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// Gauss-Legendre rule of the given order; 16-point rule is cached.
const GaussRule& gauss_legendre16();
GaussRule gauss_legendre(int order);

// Panels are summed in order so the result does not depend on scheduling.
template <typename F>
double integrate_panel(F&& f, double a, double b, const GaussRule& rule) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return acc * half;
}

template <typename F>
double integrate_uniform(F&& f, double a, double b, std::size_t panels, const GaussRule& rule) {
  const double width = (b - a) / static_cast<double>(panels);
  double acc = 0.0;
  for (std::size_t p = 0; p < panels; ++p)
    acc += integrate_panel(f, a + width * static_cast<double>(p),
                           a + width * static_cast<double>(p + 1), rule);
  return acc;
}

}  // namespace qlg::detail
