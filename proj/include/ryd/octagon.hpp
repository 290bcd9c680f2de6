#pragma once

#include <array>

#include "ryd/solver.hpp"

namespace ryd {

// Nine-point stencil: the center plus eight points on the ellipse
// gamma = g0 + h_gamma cos(phi), f = f0 + h_f sin(phi), phi = 0, pi/4, ...
// Indices: [0] center, [1..8] counterclockwise from the +gamma axis.
struct OctagonStencil {
  FieldPoint center;
  double h_gamma = 0.0;
  double h_f = 0.0;

  std::array<FieldPoint, 9> points() const;
};

// Tracked pair at every stencil point plus the derived symmetric functions
// kappa = E1 + E2 and eta = (E1 - E2)^2, which are analytic through the EP.
struct OctagonSamples {
  std::array<ResonancePair, 9> pairs;
  std::array<cplx, 9> kappa;
  std::array<cplx, 9> eta;
};

// Solves the pair at the center (tracked from `reference`) and then at the
// eight ring points, each tracked from the center pair.
OctagonSamples sample_octagon(PairSolver& solver, const OctagonStencil& stencil,
                              const ResonancePair& reference);

// Local expansion around the stencil center in offsets x = gamma - g0,
// y = f - f0:
//   kappa(x, y) ~ a + b x + c y
//   eta(x, y)   ~ d + e x + f y + g x^2 + h x y + i y^2
struct OctagonModel {
  cplx a, b, c;
  cplx d, e, f, g, h, i;
  FieldPoint center;
  double h_gamma = 0.0;
  double h_f = 0.0;
  // Largest |model eta - sampled eta| over the four diagonal points. The fit
  // interpolates the center and axis samples and only one alternating
  // combination of the diagonals, so this measures how far the surface
  // deviates from a quadratic on the stencil scale.
  double eta_defect = 0.0;
};

// Finite-difference fit; interpolatory for exact affine kappa and exact
// quadratic eta data on the stencil.
OctagonModel fit_octagon_model(const OctagonSamples& samples,
                               const OctagonStencil& stencil);

cplx eval_kappa(const OctagonModel& model, double x, double y);
cplx eval_eta(const OctagonModel& model, double x, double y);

// Root of the model eta in stencil offsets. When the homotopy ends on a
// complex root, real_root is false and (x, y) is its real projection.
struct ModelRoot {
  double x = 0.0;
  double y = 0.0;
  bool real_root = true;
  double residual = 0.0;        // |eta_model(x, y)|
  double final_epsilon = 1.0;   // homotopy parameter actually reached
};

// Degeneracy-normalizing step: Re(eta) = Im(eta) = 0 is reduced to a real
// quartic by eliminating one variable, and the relevant quartic root is
// selected by continuation in eps from eta - d to eta (the constant term is
// scaled by eps, so (0, 0) solves the eps = 0 system). A Newton polish
// tightens the accepted root.
ModelRoot ep_candidate(const OctagonModel& model);

}  // namespace ryd
