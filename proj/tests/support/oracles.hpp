#pragma once

// Independent cross-check routes used only by tests. These deliberately avoid
// the library's own closed forms: matrix elements come from numerical
// quadrature, polynomial roots from Newton iterations, windings from signed
// zero counts, and so on.

#include <complex>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

// Gauss-Laguerre rule for weight e^{-t} on [0, inf), exact for polynomials
// of degree <= 2n - 1 (Golub-Welsch on the Jacobi matrix).
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};
Quadrature gauss_laguerre(int n);

// Generalized Laguerre polynomial by three-term recurrence.
double laguerre(int n, int a, double x);
// ... and by the explicit binomial series (independent route, n small).
double laguerre_series(int n, int a, double x);
cplx laguerre_series(int n, int a, cplx x);

// <n1 m| rho^(2p) |n2 m> for the 2D oscillator radial states, p in {1, 2},
// by numerical integration of e^{-rho^2} rho^(2|m|) L_n1 L_n2 rho^(2p+1).
double radial_element_quad(int n1, int n2, int m, int p);

// Newton iteration on the two real equations Re(P) = Im(P) = 0 for the
// complex quadratic P(x,y) = d + e x + f y + g x^2 + h xy + i y^2.
// Returns true on convergence; (x, y) is updated in place.
bool newton2d_quadratic(cplx d, cplx e, cplx f, cplx g, cplx h, cplx i,
                        double& x, double& y, int max_iter = 60,
                        double tol = 1e-14);

}  // namespace oracle
