#pragma once

#include <cstdint>
#include <vector>

#include "ryd/pencil.hpp"

namespace ryd {

struct EigensolveOptions {
  int count = 8;            // resonances requested around the target
  double tol = 1e-10;       // scaled residual bound for acceptance
  int max_subspace = 0;     // Krylov width, 0 = automatic
  int max_restarts = 8;
  std::uint64_t seed = 0x00c0ffeeULL;  // start-vector seed, fixed for determinism

  enum class Mode { Auto, Arnoldi, Dense } mode = Mode::Auto;
  int dense_cutoff = 1500;  // dense fallback allowed up to this dimension

  double degeneracy_floor = 1e-9;  // |E1 - E2| regarded as numerically degenerate
};

struct Resonance {
  cplx lambda;
  cplx energy;
  Eigen::VectorXcd coefficients;  // l2-normalized, largest entry rotated to Re > 0
  double residual = 0.0;  // ||A v - lambda S v|| / (||A|| + |lambda| ||S||)
  cplx c_norm{0.0, 0.0};  // v^T S v without conjugation; -> 0 approaching an EP
};

// Resonances with lambda nearest to the target energy's lambda, via
// shift-invert Arnoldi on the factorized pencil (dense fallback for small
// dimensions). Deterministic for fixed inputs and options.
std::vector<Resonance> eigensolve_near(const SpectralPencil& pencil,
                                       cplx target_energy,
                                       const EigensolveOptions& opt = {});

// Full spectrum through the real Cholesky reduction, small dimensions only.
// Used as an independent route by tests and diagnostics.
std::vector<cplx> eigensolve_all_energies(const SpectralPencil& pencil);

struct ResonancePair {
  Resonance first;
  Resonance second;
  bool degenerate = false;  // ordering no longer resolvable by overlaps

  cplx kappa() const { return first.energy + second.energy; }
  cplx eta() const {
    const cplx d = first.energy - second.energy;
    return d * d;
  }
};

// |v_a^T v_b| (no conjugation) after projecting both to unit Euclidean norm.
// Stays below 1 even for a vector against itself when the vector is
// genuinely complex; use it only to compare alternatives, never as an
// absolute identity score.
double tracking_overlap(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

// |<v_a, v_b>| (conjugated) on unit vectors: 1 exactly when the two states
// are the same ray. Use for identity and duplicate checks.
double hermitian_overlap(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

// Assign two of the candidates to the reference states by c-product overlap;
// falls back to nearest complex energy when overlaps are uninformative and
// throws AmbiguousTracking when a third state competes for a slot.
ResonancePair select_pair(const std::vector<Resonance>& candidates,
                          const ResonancePair& reference,
                          const EigensolveOptions& opt = {});

// The two candidates nearest a target energy, seeding a fresh track.
ResonancePair initial_pair(const std::vector<Resonance>& candidates,
                           cplx target_energy,
                           const EigensolveOptions& opt = {});

// Produces the tracked resonance pair at a field point. The production
// implementation solves the assembled pencil; synthetic implementations back
// the model-level tests.
class PairSolver {
 public:
  virtual ~PairSolver() = default;
  virtual ResonancePair solve(const FieldPoint& point,
                              const ResonancePair& reference) = 0;
};

class PencilPairSolver : public PairSolver {
 public:
  PencilPairSolver(BasisSpec basis, DilationParameter dilation,
                   EigensolveOptions options = {});

  void set_dilation(const DilationParameter& dilation) { dilation_ = dilation; }
  const DilationParameter& dilation() const { return dilation_; }
  const EigensolveOptions& options() const { return options_; }

  ResonancePair solve(const FieldPoint& point,
                      const ResonancePair& reference) override;

 private:
  BasisSpec basis_;
  DilationParameter dilation_;
  EigensolveOptions options_;
};

}  // namespace ryd
