#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>

#include "ryd/basis.hpp"
#include "ryd/units.hpp"

namespace ryd {

using cplx = std::complex<double>;

// Complex dilation b = |b| e^{i alpha} of the semiparabolic coordinates.
// Rotating the coordinates uncovers resonances as discrete complex
// eigenvalues; alpha stays below pi/4 so e^{-rho^2/2} keeps decaying.
struct DilationParameter {
  double modulus = 1.0;
  double angle = 0.0;

  DilationParameter() = default;
  DilationParameter(double modulus_, double angle_);

  cplx b() const { return std::polar(modulus, angle); }
};

// |b| = sqrt(32/35) * gamma^(-1/6): balances the diamagnetic and oscillator
// length scales of the regularized Hamiltonian.
double default_b_modulus(double gamma);

// Generalized eigenproblem  A psi = lambda S psi  with
//   A = 2(H_mu + H_nu) - 4 b^2
//       + (1/4) b^8 gamma^2 (rho4 x rho2 + rho2 x rho4)
//       + b^6 f (rho4 x 1 - 1 x rho4)
//   S = rho2 x 1 + 1 x rho2
// on the truncated product basis; lambda = 1 + 2 b^4 E.
// A is complex symmetric, S real symmetric positive definite.
struct SpectralPencil {
  BasisSpec basis;
  FieldPoint fields;
  DilationParameter dilation;
  Eigen::SparseMatrix<cplx> lhs;    // A
  Eigen::SparseMatrix<double> rhs;  // S
};

SpectralPencil assemble(const BasisSpec& basis, const FieldPoint& fields,
                        const DilationParameter& dilation);

cplx lambda_from_energy(cplx energy, const DilationParameter& dilation);
cplx energy_from_lambda(cplx lambda, const DilationParameter& dilation);

}  // namespace ryd
