#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "ryd/solver.hpp"

namespace ryd {

// Spectrum scan along the ray gamma / f = ratio. At every grid point the
// resonances inside the energy window are solved with the per-point dilation
// rule and attached to continuous tracks by c-product overlap.
struct ScanConfig {
  double ratio = 120.0;                          // gamma / f along the ray
  std::pair<double, double> gamma_range{0.0, 0.0};
  int steps = 0;
  BasisSpec spec;
  std::pair<double, double> energy_window{0.0, 0.0};  // on Re E
  int track_count = 8;            // levels kept per point, nearest the window center
  double rotation_angle = 0.15;   // complex-rotation angle for the solves
  double overlap_threshold = 0.5; // smallest c-product overlap that continues a track
  EigensolveOptions eigensolve{};
};

struct TrackPoint {
  double gamma = 0.0;
  double f = 0.0;
  cplx energy{};
  double overlap = 1.0;  // c-product overlap with the previous point
};

struct Track {
  int id = 0;
  std::vector<TrackPoint> points;
};

// A level whose best continuation overlap fell below the threshold; the old
// track ends here and any unclaimed state starts a fresh id.
struct TrackBreak {
  double gamma = 0.0;
  double f = 0.0;
  int track_id = 0;
  double best_overlap = 0.0;
};

struct ScanResult {
  std::vector<Track> tracks;  // ordered by id, ids dense from zero
  std::vector<TrackBreak> breaks;
};

// States at one grid point, any provider: the production route solves the
// assembled pencil, tests inject synthetic spectra.
using StateSolver =
    std::function<std::vector<Resonance>(double gamma, double f)>;

// Scan with an injected state provider. `metric` weights the c-product
// overlap (the pencil right-hand side in production); an empty matrix means
// the identity.
ScanResult scan_spectrum(const ScanConfig& config, const StateSolver& states,
                         const Eigen::SparseMatrix<double>& metric);

// Production scan: per-point pencil assembly with |b| from the field
// strength rule and the configured rotation angle.
ScanResult scan_spectrum(const ScanConfig& config);

// Local minimum of |Re E_a - Re E_b| between two tracks adjacent in energy,
// kept when the dip falls below a quarter of the pair's mean spacing. The
// location is refined by a parabola through the squared gap at the three
// points around the minimum, which is exact for a hyperbolic avoided
// crossing.
struct AvoidedCrossing {
  double gamma0 = 0.0;
  double f0 = 0.0;
  cplx energy_guess{};   // mean of the two levels at the discrete minimum
  double gap = 0.0;      // |E_a - E_b| there
  double re_gap = 0.0;   // |Re E_a - Re E_b|
  double im_gap = 0.0;   // |Im E_a - Im E_b|
  int first_track = 0;
  int second_track = 0;
};

// Crossing candidates from the assembled tracks, sorted by ascending gap.
// Tracks with fewer than three points cannot hold an interior minimum and
// are skipped.
std::vector<AvoidedCrossing> detect_avoided_crossings(
    const std::vector<Track>& tracks);

}  // namespace ryd
