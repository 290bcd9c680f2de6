#include "support/oracles.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <stdexcept>

namespace oracle {

Quadrature gauss_laguerre(int n) {
  // Jacobi matrix for the monic Laguerre recurrence: alpha_k = 2k+1,
  // beta_k = k^2; symmetrized off-diagonal sqrt(beta_k) = k.
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    j(k, k) = 2 * k + 1;
    if (k > 0) {
      j(k, k - 1) = k;
      j(k - 1, k) = k;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  Quadrature q;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    q.nodes[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    q.weights[i] = v0 * v0;  // mu0 = integral of e^{-t} = 1
  }
  return q;
}

double laguerre(int n, int a, double x) {
  if (n == 0) return 1.0;
  double lm1 = 1.0;
  double l = 1.0 + a - x;
  for (int k = 1; k < n; ++k) {
    const double lp1 = ((2.0 * k + 1.0 + a - x) * l - (k + a) * lm1) / (k + 1.0);
    lm1 = l;
    l = lp1;
  }
  return l;
}

double laguerre_series(int n, int a, double x) {
  return laguerre_series(n, a, cplx(x, 0.0)).real();
}

cplx laguerre_series(int n, int a, cplx x) {
  // sum_k (-1)^k binom(n+a, n-k) x^k / k!
  cplx sum = 0.0;
  double sign = 1.0;
  for (int k = 0; k <= n; ++k) {
    const double log_binom = std::lgamma(n + a + 1.0) -
                             std::lgamma(n - k + 1.0) -
                             std::lgamma(a + k + 1.0);
    const double coeff = std::exp(log_binom - std::lgamma(k + 1.0));
    sum += sign * coeff * std::pow(x, k);
    sign = -sign;
  }
  return sum;
}

double radial_element_quad(int n1, int n2, int m, int p) {
  const int a = std::abs(m);
  // integrand in t = rho^2 is a polynomial of degree n1 + n2 + a + p times
  // e^{-t}. A rule sized just past exactness keeps the Jacobi matrix small;
  // oversized rules trade nothing for extra node roundoff.
  const int degree = n1 + n2 + a + p;
  const int count = std::max(12, (degree + 1) / 2 + 6);
  static std::map<int, Quadrature> cache;
  auto it = cache.find(count);
  if (it == cache.end()) it = cache.emplace(count, gauss_laguerre(count)).first;
  const Quadrature& q = it->second;
  const double log_norm1 =
      0.5 * (std::log(2.0) + std::lgamma(n1 + 1.0) - std::lgamma(n1 + a + 1.0));
  const double log_norm2 =
      0.5 * (std::log(2.0) + std::lgamma(n2 + 1.0) - std::lgamma(n2 + a + 1.0));
  const double norm = std::exp(log_norm1 + log_norm2);
  double sum = 0.0;
  for (size_t i = 0; i < q.nodes.size(); ++i) {
    const double t = q.nodes[i];
    sum += q.weights[i] * std::pow(t, a + p) * laguerre(n1, a, t) *
           laguerre(n2, a, t);
  }
  return 0.5 * norm * sum;
}

bool newton2d_quadratic(cplx d, cplx e, cplx f, cplx g, cplx h, cplx i,
                        double& x, double& y, int max_iter, double tol) {
  for (int it = 0; it < max_iter; ++it) {
    const cplx val = d + e * x + f * y + g * x * x + h * x * y + i * y * y;
    const cplx dx = e + 2.0 * g * x + h * y;
    const cplx dy = f + h * x + 2.0 * i * y;
    const double det = dx.real() * dy.imag() - dy.real() * dx.imag();
    if (det == 0.0) return false;
    const double sx = (val.real() * dy.imag() - dy.real() * val.imag()) / det;
    const double sy = (dx.real() * val.imag() - val.real() * dx.imag()) / det;
    x -= sx;
    y -= sy;
    if (std::abs(sx) + std::abs(sy) < tol * (1.0 + std::abs(x) + std::abs(y)))
      return true;
  }
  return false;
}

}  // namespace oracle
