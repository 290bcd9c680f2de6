#pragma once

#include <Eigen/Dense>
#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "ryd/basis.hpp"
#include "ryd/pencil.hpp"
#include "ryd/solver.hpp"
#include "ryd/units.hpp"

namespace ryd {

// Rectangular evaluation grid in the real semiparabolic coordinates
// (mu_r, nu_r >= 0) at a fixed angle phi. The dilated oscillator arguments
// are mu = mu_r / b and nu = nu_r / b with the complex b of the run.
struct WaveGridSpec {
  Eigen::VectorXd mu;
  Eigen::VectorXd nu;
  double phi = 0.0;
};

// Uniform points x points grid covering [0, extent] on both axes.
WaveGridSpec default_grid(double extent = 60.0, int points = 256);

// Psi and its partner Psi*. The star conjugates only the intrinsically
// complex e^{i m phi} factor; the complexity coming through the dilated
// radial arguments is kept as is, so Psi* Psi stays complex. Row index runs
// over mu, column index over nu.
struct StateEvaluation {
  Eigen::MatrixXcd psi;
  Eigen::MatrixXcd psi_star;
};

StateEvaluation evaluate_state(const Eigen::VectorXcd& coefficients,
                               const BasisSpec& spec,
                               const DilationParameter& dilation,
                               const WaveGridSpec& grid);

// |Psi* Psi| pointwise; taking the modulus turns the complex product into
// the plotted probability density.
Eigen::MatrixXd density_from_coefficients(const Eigen::VectorXcd& coefficients,
                                          const BasisSpec& spec,
                                          const DilationParameter& dilation,
                                          const WaveGridSpec& grid);

// Densities of one or two resonances on a common grid, with the run
// metadata needed to label the output.
struct WaveGrid {
  Eigen::VectorXd mu_values;
  Eigen::VectorXd nu_values;
  double phi = 0.0;
  FieldPoint fields;
  BasisSpec spec;
  DilationParameter dilation;
  std::vector<cplx> energies;              // one per density
  std::vector<Eigen::MatrixXd> densities;  // mu rows, nu columns
};

WaveGrid density_grid(const std::vector<Resonance>& states,
                      const BasisSpec& spec, const DilationParameter& dilation,
                      const FieldPoint& fields, const WaveGridSpec& grid);

// Plain coefficient-space bilinear sum_i v_i w_i, no conjugation.
cplx c_product(const Eigen::VectorXcd& v, const Eigen::VectorXcd& w);

// v^T S v with the volume-element weight S = rho^2 x 1 + 1 x rho^2. The
// weight is dilation independent; the value tends to zero as a resonance
// pair coalesces, which makes |c_norm| a proximity indicator.
cplx c_norm(const Eigen::VectorXcd& v, const BasisSpec& spec);

// Mean (v1 + u v2) / 2 with u the unit factor bringing u v2 closest to v1,
// i.e. the phase of the conjugated overlap <v1, v2>, so both inputs enter in
// a common gauge. Throws GaugeMismatch when that overlap is too small to
// define a phase. The result is left unnormalized deliberately: at a
// coalescence the self product vanishes, so no c-product normalization
// exists.
Eigen::VectorXcd averaged_vector(const Eigen::VectorXcd& v1,
                                 const Eigen::VectorXcd& v2);

// Header of "key = value" lines (gamma, f, energies, n_max, |b|, alpha,
// phi), then one "mu TAB nu TAB density..." row per grid point with one
// density column per stored state.
void write_wave_grid(std::ostream& out, const WaveGrid& grid);
void write_wave_grid(const std::string& path, const WaveGrid& grid);

}  // namespace ryd
