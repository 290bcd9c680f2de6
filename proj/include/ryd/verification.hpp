#pragma once

#include <vector>

#include "ryd/octagon.hpp"

namespace ryd {

struct WindingOptions {
  int samples = 512;
  double diagnostic_tol = 0.05;  // accepted deviation from an integer
  int max_doublings = 4;         // resolution growth when the sum is noisy
};

struct WindingResult {
  int winding = 0;
  double diagnostic = 0.0;  // |raw sum - winding| at the accepted resolution
  int samples_used = 0;
};

// Winding of eta around zero along the stencil ellipse,
//   W = Re[(1 / 2 pi i) sum_k (eta_{k+1} - eta_{k-1}) / (2 eta_k)],
// rounded to the nearest integer. A simple exceptional point strictly inside
// the ellipse gives |W| = 1; no zeros give W = 0. Throws ZeroOnLoop when a
// sample falls below 1e-14 of the model constant term, and NonIntegerWinding
// when the sum stays away from an integer after all refinements.
WindingResult winding_number(const OctagonModel& model,
                             const WindingOptions& opt = {});

struct PathResult {
  bool closed = false;     // both energies returned to their start
  bool exchanged = false;  // the pair swapped along the loop
  std::vector<cplx> first;
  std::vector<cplx> second;
};

// The two model energies (kappa +- w) / 2 along the loop, with w a branch
// of sqrt(eta) kept continuous by sign selection. A step where both sign
// choices land within 1% of each other is ambiguous; the loop is resampled
// at doubled resolution a few times before BranchAmbiguity is thrown.
// Endpoints are compared at 1e-10 of the largest |w|.
PathResult resonance_paths(const OctagonModel& model, int samples = 512);

// Endpoint permutation read off the paths.
bool exchange_detected(const PathResult& paths);

struct VerificationReport {
  WindingResult winding;
  PathResult paths;
  bool certificate = false;  // winding == 1, i.e. one simple zero enclosed
};

// Winding and path consistency for one fitted model. The pair exchanges
// along the loop exactly when the certificate holds; disagreement throws
// InconsistentCertificate.
VerificationReport verify_model(const OctagonModel& model,
                                const WindingOptions& opt = {});

struct HardVerification {
  WindingResult winding;          // from re-solved eta samples
  bool energies_exchanged = false;
  bool vectors_exchanged = false;
  // Worst disagreement between the model energies and the re-solved pair
  // over the loop, against the bound 1e-3 * max |sqrt(eta)|. A model that
  // fails this bound certifies nothing outside its own validity region.
  double max_energy_deviation = 0.0;
  double deviation_bound = 0.0;
  bool model_consistent = false;
};

// Independent route around the model's own loop: the pair is re-solved and
// tracked point to point, the exchange is read off the actual eigenvectors
// after a full turn, and the model is compared against the solved energies.
// Much more expensive than the model check.
HardVerification hard_verify(PairSolver& solver, const OctagonModel& model,
                             const ResonancePair& reference, int samples = 16);

}  // namespace ryd
