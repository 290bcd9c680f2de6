#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "ryd/basis.hpp"
#include "ryd/octagon.hpp"
#include "ryd/verification.hpp"

namespace ryd {

struct EpSearchOptions {
  double initial_step_fraction = 0.05;  // first stencil radius per axis
  double step_growth = 1.5;             // radius c * |last step|
  double floor_fraction = 1e-9;         // radius floor relative to the center
  int max_iterations = 40;
  double degeneracy_floor = 1e-9;       // |E1 - E2| that ends the search
  double step_tolerance = 1e-9;         // relative displacement that ends it
  int max_halvings = 4;                 // stencil shrink on ambiguous tracking
  int diverge_patience = 3;             // growing steps before giving up
  bool with_winding = true;
  WindingOptions winding{};

  // Invoked with every new stencil center before it is sampled; the
  // pencil-backed driver uses this to re-dilate the basis.
  std::function<void(const FieldPoint&)> on_recenter;

  // Pencil-backed route only.
  double rotation_angle = 0.15;
  bool adapt_dilation = true;  // per-center b from default_b_modulus(gamma)
  EigensolveOptions eigensolve{};
};

struct EpIteration {
  int index = 0;
  OctagonStencil stencil;
  OctagonModel model;
  ModelRoot root;            // model zero in offsets from the stencil center
  ResonancePair center_pair;
  double energy_split = 0.0;     // |E1 - E2| at the center
  cplx ep_estimate{};            // kappa at the root, halved
  double coefficients_digest = 0.0;  // Euclidean norm of the nine coefficients
  int winding = 0;
  double winding_diagnostic = 0.0;
  bool winding_valid = false;  // false when the loop integral was unusable
  double step_gamma = 0.0;  // applied recenter displacement
  double step_f = 0.0;
};

enum class SearchStatus { Converged, CapReached, Diverged };

struct EPRecord {
  SearchStatus status = SearchStatus::CapReached;
  bool converged = false;
  FieldPoint position{};
  cplx energy{};
  int winding = 0;
  double winding_diagnostic = 0.0;
  double energy_split = 0.0;      // |E1 - E2| at the last sampled center
  double degeneracy_floor = 0.0;  // best |E1 - E2| achieved along the run
  int iterations = 0;
  ResonancePair final_pair;
  std::vector<EpIteration> history;
};

// Mean of the two model energies at a candidate point, the degenerate-energy
// estimate that stabilizes well before the raw splitting does.
cplx ep_energy_estimate(const OctagonModel& model, const FieldPoint& ep);

// Next stencil radii from the last recenter displacement:
// h = clamp(step_growth * |step|, floor_fraction * center, h_max) per axis.
std::pair<double, double> step_size_update(double step_x, double step_y,
                                           const FieldPoint& center,
                                           double h_max_gamma, double h_max_f,
                                           const EpSearchOptions& opt = {});

// Drives octagon sampling, model fitting, and recentering until the tracked
// pair degenerates or the displacement stalls. Never throws for a search
// that merely fails to land (cap or divergence); the returned status and the
// per-iteration history carry the whole run.
EPRecord find_ep(PairSolver& solver, const FieldPoint& initial,
                 const ResonancePair& reference,
                 const EpSearchOptions& opt = {});

// Pencil-backed entry: seeds the tracked pair from the spectrum nearest
// energy_guess at the initial point and re-dilates the basis as the center
// moves.
EPRecord find_ep(const FieldPoint& initial, cplx energy_guess,
                 const BasisSpec& spec, const EpSearchOptions& opt = {});

// Complex-rotation angle whose tracked pair is the most stationary under a
// small angle change, chosen among the candidates by solving at the seed.
double stable_rotation_angle(const FieldPoint& seed, cplx energy_guess,
                             const BasisSpec& spec,
                             const std::vector<double>& candidates,
                             const EigensolveOptions& opt = {});

}  // namespace ryd
