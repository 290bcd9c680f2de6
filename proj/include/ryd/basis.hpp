#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace ryd {

// Radial ladder |n, m> of the 2D isotropic harmonic oscillator in one
// semiparabolic coordinate (energy 2n + |m| + 1, hbar*omega = 1). The product
// of two such ladders, truncated by n_mu + n_nu <= n_max, carries the
// regularized parallel-field Hamiltonian.
struct BasisSpec {
  int n_max = 0;
  int m = 0;

  int per_oscillator_size() const { return n_max + 1; }
  int dimension() const { return (n_max + 1) * (n_max + 2) / 2; }
};

// Banded symmetric representation of rho^2 (bandwidth 1) or rho^4
// (bandwidth 2) in one radial ladder.
struct RadialOperator {
  int power = 0;
  int bandwidth = 0;
  Eigen::MatrixXd dense;  // (n_max+1) x (n_max+1)
};

// Oscillator energies 2n + |m| + 1, n = 0..n_max.
std::vector<double> h0_diagonal(const BasisSpec& spec);

// Closed-form matrix elements from the Laguerre three-term recurrence.
RadialOperator radial_power_matrix(const BasisSpec& spec, int power);

// Diagonal-major flattening of the truncated product basis: states grouped by
// s = n_mu + n_nu ascending, n_mu descending inside a group. For n_max = 1 the
// order is (0,0), (1,0), (0,1).
struct ProductBasisMap {
  std::vector<std::pair<int, int>> states;  // flat index -> (n_mu, n_nu)
  Eigen::MatrixXi index;                    // (n_mu, n_nu) -> flat index, -1 outside

  int dimension() const { return static_cast<int>(states.size()); }
};

ProductBasisMap product_basis_map(const BasisSpec& spec);

}  // namespace ryd
