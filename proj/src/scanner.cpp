#include "ryd/scanner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

#include "ryd/errors.hpp"

namespace ryd {

namespace {

struct Candidate {
  Resonance state;
  Eigen::VectorXcd svec;  // metric times the coefficient vector
  double cnorm = 0.0;     // sqrt |v^T S v|, the c-norm magnitude
};

struct ActiveTrack {
  int track_index = 0;  // position in ScanResult::tracks
  Eigen::VectorXcd vec;
  double cnorm = 0.0;
};

// |a^T S b| / sqrt(|a^T S a| |b^T S b|): exactly one for a state against
// itself, near one along a continued level, and small across distinct
// levels. The c-norm normalization is the right one for the complex
// symmetric problem; a Hermitian norm would dilute every overlap by the
// state's own self-orthogonality.
double c_overlap(const ActiveTrack& track, const Candidate& cand) {
  if (!(track.cnorm > 0.0) || !(cand.cnorm > 0.0)) return 0.0;
  const cplx bilinear = track.vec.cwiseProduct(cand.svec).sum();
  return std::abs(bilinear) / (track.cnorm * cand.cnorm);
}

void validate(const ScanConfig& config) {
  if (!(config.ratio > 0.0)) throw BadInput("field ratio must be positive");
  if (!(config.gamma_range.first < config.gamma_range.second))
    throw BadInput("gamma range must be increasing");
  if (config.steps < 2) throw BadInput("a scan needs at least two steps");
  if (config.track_count < 1)
    throw BadInput("at least one level must be tracked");
  if (!(config.energy_window.first < config.energy_window.second))
    throw BadInput("energy window must be increasing");
  if (!(config.overlap_threshold > 0.0) || config.overlap_threshold > 1.0)
    throw BadInput("overlap threshold must lie in (0, 1]");
}

std::vector<Candidate> prepare_candidates(
    std::vector<Resonance> states, const ScanConfig& config,
    const Eigen::SparseMatrix<cplx>* metric) {
  const double lo = config.energy_window.first;
  const double hi = config.energy_window.second;
  const double center = 0.5 * (lo + hi);

  std::erase_if(states, [&](const Resonance& r) {
    return r.energy.real() < lo || r.energy.real() > hi;
  });
  std::stable_sort(states.begin(), states.end(),
                   [&](const Resonance& a, const Resonance& b) {
                     const double da = std::abs(a.energy.real() - center);
                     const double db = std::abs(b.energy.real() - center);
                     if (da != db) return da < db;
                     if (a.energy.real() != b.energy.real())
                       return a.energy.real() < b.energy.real();
                     return a.energy.imag() < b.energy.imag();
                   });
  if (static_cast<int>(states.size()) > config.track_count)
    states.resize(static_cast<std::size_t>(config.track_count));
  std::stable_sort(states.begin(), states.end(),
                   [](const Resonance& a, const Resonance& b) {
                     if (a.energy.real() != b.energy.real())
                       return a.energy.real() < b.energy.real();
                     return a.energy.imag() < b.energy.imag();
                   });

  std::vector<Candidate> out;
  out.reserve(states.size());
  for (Resonance& r : states) {
    Candidate c;
    c.svec = metric ? Eigen::VectorXcd(*metric * r.coefficients)
                    : r.coefficients;
    c.cnorm =
        std::sqrt(std::abs(r.coefficients.cwiseProduct(c.svec).sum()));
    c.state = std::move(r);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

ScanResult scan_spectrum(const ScanConfig& config, const StateSolver& states,
                         const Eigen::SparseMatrix<double>& metric) {
  validate(config);
  if (!states) throw BadInput("state provider is empty");

  const bool weighted = metric.rows() > 0;
  Eigen::SparseMatrix<cplx> metric_c;
  if (weighted) metric_c = metric.cast<cplx>();

  ScanResult result;
  std::vector<ActiveTrack> active;
  int next_id = 0;

  for (int j = 0; j < config.steps; ++j) {
    const double gamma =
        config.gamma_range.first +
        (config.gamma_range.second - config.gamma_range.first) * j /
            (config.steps - 1);
    const double f = gamma / config.ratio;

    std::vector<Candidate> cands = prepare_candidates(
        states(gamma, f), config, weighted ? &metric_c : nullptr);

    const std::size_t nt = active.size();
    const std::size_t nc = cands.size();
    std::vector<std::vector<double>> ov(nt, std::vector<double>(nc, 0.0));
    for (std::size_t i = 0; i < nt; ++i)
      for (std::size_t k = 0; k < nc; ++k)
        ov[i][k] = c_overlap(active[i], cands[k]);

    std::vector<int> track_match(nt, -1);
    std::vector<int> cand_match(nc, -1);
    while (true) {
      double best = config.overlap_threshold;
      std::size_t bi = nt, bk = nc;
      for (std::size_t i = 0; i < nt; ++i) {
        if (track_match[i] >= 0) continue;
        for (std::size_t k = 0; k < nc; ++k) {
          if (cand_match[k] >= 0) continue;
          if (ov[i][k] > best) {
            best = ov[i][k];
            bi = i;
            bk = k;
          }
        }
      }
      if (bi == nt) break;
      track_match[bi] = static_cast<int>(bk);
      cand_match[bk] = static_cast<int>(bi);
    }

    std::vector<ActiveTrack> still_active;
    still_active.reserve(nc);
    for (std::size_t i = 0; i < nt; ++i) {
      if (track_match[i] < 0) {
        double best_seen = 0.0;
        for (std::size_t k = 0; k < nc; ++k)
          best_seen = std::max(best_seen, ov[i][k]);
        result.breaks.push_back(
            {gamma, f, result.tracks[static_cast<std::size_t>(
                                         active[i].track_index)]
                           .id,
             best_seen});
        continue;
      }
      const std::size_t k = static_cast<std::size_t>(track_match[i]);
      Track& tr =
          result.tracks[static_cast<std::size_t>(active[i].track_index)];
      tr.points.push_back({gamma, f, cands[k].state.energy, ov[i][k]});
      ActiveTrack next = active[i];
      next.vec = cands[k].state.coefficients;
      next.cnorm = cands[k].cnorm;
      still_active.push_back(std::move(next));
    }
    for (std::size_t k = 0; k < nc; ++k) {
      if (cand_match[k] >= 0) continue;
      Track tr;
      tr.id = next_id++;
      tr.points.push_back({gamma, f, cands[k].state.energy, 1.0});
      result.tracks.push_back(std::move(tr));
      ActiveTrack fresh;
      fresh.track_index = static_cast<int>(result.tracks.size()) - 1;
      fresh.vec = cands[k].state.coefficients;
      fresh.cnorm = cands[k].cnorm;
      still_active.push_back(std::move(fresh));
    }
    active = std::move(still_active);
  }
  return result;
}

ScanResult scan_spectrum(const ScanConfig& config) {
  validate(config);
  if (!(config.gamma_range.first > 0.0))
    throw BadInput("field strengths must be positive");

  const double target =
      0.5 * (config.energy_window.first + config.energy_window.second);
  EigensolveOptions opt = config.eigensolve;
  opt.count = std::max(opt.count, config.track_count + 4);

  StateSolver states = [&config, target, opt](double gamma, double f) {
    const DilationParameter dilation(default_b_modulus(gamma),
                                     config.rotation_angle);
    const SpectralPencil pencil =
        assemble(config.spec, FieldPoint{gamma, f}, dilation);
    return eigensolve_near(pencil, cplx(target, 0.0), opt);
  };

  // the metric depends only on the basis, so any assembly provides it
  const DilationParameter dilation(
      default_b_modulus(config.gamma_range.first), config.rotation_angle);
  const SpectralPencil first = assemble(
      config.spec,
      FieldPoint{config.gamma_range.first,
                 config.gamma_range.first / config.ratio},
      dilation);
  return scan_spectrum(config, states, first.rhs);
}

std::vector<AvoidedCrossing> detect_avoided_crossings(
    const std::vector<Track>& tracks) {
  // levels present per grid value of gamma
  struct Level {
    int track = 0;
    cplx energy{};
    double f = 0.0;
  };
  std::map<double, std::vector<Level>> grid;
  for (const Track& tr : tracks) {
    if (tr.points.size() < 3) continue;
    for (const TrackPoint& p : tr.points)
      grid[p.gamma].push_back({tr.id, p.energy, p.f});
  }

  struct GapSample {
    int index = 0;  // position in the ordered grid
    double gamma = 0.0;
    double f = 0.0;
    double re_gap = 0.0;
    double im_gap = 0.0;
    double abs_gap = 0.0;
    cplx mean{};
  };
  std::map<std::pair<int, int>, std::vector<GapSample>> pairs;
  int index = 0;
  for (auto& [gamma, levels] : grid) {
    std::sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) {
      if (a.energy.real() != b.energy.real())
        return a.energy.real() < b.energy.real();
      return a.track < b.track;
    });
    for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
      const Level& lo = levels[k];
      const Level& hi = levels[k + 1];
      const std::pair<int, int> key{std::min(lo.track, hi.track),
                                    std::max(lo.track, hi.track)};
      const cplx diff = hi.energy - lo.energy;
      pairs[key].push_back({index, gamma, lo.f, std::abs(diff.real()),
                            std::abs(diff.imag()), std::abs(diff),
                            0.5 * (lo.energy + hi.energy)});
    }
    ++index;
  }

  std::vector<AvoidedCrossing> out;
  for (const auto& [key, samples] : pairs) {
    if (samples.size() < 3) continue;
    double mean = 0.0;
    for (const GapSample& s : samples) mean += s.re_gap;
    mean /= static_cast<double>(samples.size());

    for (std::size_t p = 1; p + 1 < samples.size(); ++p) {
      const GapSample& a = samples[p - 1];
      const GapSample& b = samples[p];
      const GapSample& c = samples[p + 1];
      if (a.index != b.index - 1 || c.index != b.index + 1) continue;
      if (!(b.re_gap < a.re_gap && b.re_gap < c.re_gap)) continue;
      if (!(b.re_gap < 0.25 * mean)) continue;

      // vertex of the parabola through the squared gaps; exact when the
      // crossing is hyperbolic
      const double y1 = a.re_gap * a.re_gap;
      const double y2 = b.re_gap * b.re_gap;
      const double y3 = c.re_gap * c.re_gap;
      const double dx1 = b.gamma - a.gamma;
      const double dx3 = b.gamma - c.gamma;
      const double den = dx1 * (y2 - y3) - dx3 * (y2 - y1);
      double gamma0 = b.gamma;
      if (den != 0.0)
        gamma0 = b.gamma -
                 0.5 * (dx1 * dx1 * (y2 - y3) - dx3 * dx3 * (y2 - y1)) / den;
      gamma0 = std::clamp(gamma0, a.gamma, c.gamma);
      const double slope = (c.f - a.f) / (c.gamma - a.gamma);
      const double f0 = b.f + (gamma0 - b.gamma) * slope;

      AvoidedCrossing ac;
      ac.gamma0 = gamma0;
      ac.f0 = f0;
      ac.energy_guess = b.mean;
      ac.gap = b.abs_gap;
      ac.re_gap = b.re_gap;
      ac.im_gap = b.im_gap;
      ac.first_track = key.first;
      ac.second_track = key.second;
      out.push_back(ac);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const AvoidedCrossing& a, const AvoidedCrossing& b) {
              if (a.gap != b.gap) return a.gap < b.gap;
              return a.gamma0 < b.gamma0;
            });
  return out;
}

}  // namespace ryd
