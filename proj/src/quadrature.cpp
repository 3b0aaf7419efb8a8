#include "quadrature.hpp"

#include <boost/math/special_functions/legendre.hpp>

namespace qlg::detail {

GaussRule gauss_legendre(int order) {
  GaussRule rule;
  const auto zeros = boost::math::legendre_p_zeros<double>(order);
  for (double x : zeros) {
    const double dp = boost::math::legendre_p_prime(order, x);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    if (x == 0.0) {
      rule.nodes.push_back(0.0);
      rule.weights.push_back(w);
    } else {
      rule.nodes.push_back(-x);
      rule.weights.push_back(w);
      rule.nodes.push_back(x);
      rule.weights.push_back(w);
    }
  }
  return rule;
}

const GaussRule& gauss_legendre16() {
  static const GaussRule rule = gauss_legendre(16);
  return rule;
}

}  // namespace qlg::detail
