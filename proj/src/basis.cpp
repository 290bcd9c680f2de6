#include "ryd/basis.hpp"

#include <cmath>
#include <cstdlib>

#include "ryd/errors.hpp"

namespace ryd {

std::vector<double> h0_diagonal(const BasisSpec& spec) {
  const int a = std::abs(spec.m);
  std::vector<double> d(spec.per_oscillator_size());
  for (int n = 0; n <= spec.n_max; ++n) d[n] = 2.0 * n + a + 1.0;
  return d;
}

RadialOperator radial_power_matrix(const BasisSpec& spec, int power) {
  if (power != 2 && power != 4)
    throw BadInput("radial_power_matrix supports rho^2 and rho^4 only");
  const int size = spec.per_oscillator_size();
  const double a = std::abs(spec.m);

  RadialOperator op;
  op.power = power;
  op.bandwidth = power / 2;
  op.dense = Eigen::MatrixXd::Zero(size, size);

  // In t = rho^2 the ladder acts through t L_n = (2n+a+1) L_n
  // - (n+1) L_{n+1} - (n+a) L_{n-1}; normalization folds into square roots.
  for (int n = 0; n < size; ++n) {
    if (power == 2) {
      op.dense(n, n) = 2.0 * n + a + 1.0;
      if (n + 1 < size) {
        const double v = -std::sqrt((n + 1.0) * (n + 1.0 + a));
        op.dense(n + 1, n) = v;
        op.dense(n, n + 1) = v;
      }
    } else {
      op.dense(n, n) = (2.0 * n + a + 1.0) * (2.0 * n + a + 1.0) +
                       (n + 1.0) * (n + 1.0 + a) + n * (n + a);
      if (n + 1 < size) {
        const double v = -2.0 * (2.0 * n + a + 2.0) * std::sqrt((n + 1.0) * (n + 1.0 + a));
        op.dense(n + 1, n) = v;
        op.dense(n, n + 1) = v;
      }
      if (n + 2 < size) {
        const double v =
            std::sqrt((n + 1.0) * (n + 2.0) * (n + 1.0 + a) * (n + 2.0 + a));
        op.dense(n + 2, n) = v;
        op.dense(n, n + 2) = v;
      }
    }
  }
  return op;
}

ProductBasisMap product_basis_map(const BasisSpec& spec) {
  ProductBasisMap map;
  const int size = spec.per_oscillator_size();
  map.states.reserve(spec.dimension());
  map.index = Eigen::MatrixXi::Constant(size, size, -1);
  for (int s = 0; s <= spec.n_max; ++s) {
    for (int n_mu = s; n_mu >= 0; --n_mu) {
      const int n_nu = s - n_mu;
      map.index(n_mu, n_nu) = static_cast<int>(map.states.size());
      map.states.emplace_back(n_mu, n_nu);
    }
  }
  return map;
}

}  // namespace ryd
