#include "ryd/ep_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ryd/errors.hpp"
#include "ryd/solver.hpp"

namespace ryd {

namespace {

double model_digest(const OctagonModel& m) {
  const cplx cs[] = {m.a, m.b, m.c, m.d, m.e, m.f, m.g, m.h, m.i};
  double s = 0.0;
  for (const cplx& c : cs) s += std::norm(c);
  return std::sqrt(s);
}

void close_record(EPRecord& record, const EpIteration& it, SearchStatus status,
                  const FieldPoint& position, cplx energy, int iterations) {
  record.status = status;
  record.converged = (status == SearchStatus::Converged);
  record.position = position;
  record.energy = energy;
  record.winding = it.winding;
  record.winding_diagnostic = it.winding_diagnostic;
  record.energy_split = it.energy_split;
  record.final_pair = it.center_pair;
  record.iterations = iterations;
}

}  // namespace

cplx ep_energy_estimate(const OctagonModel& model, const FieldPoint& ep) {
  return 0.5 * eval_kappa(model, ep.gamma - model.center.gamma,
                          ep.f - model.center.f);
}

std::pair<double, double> step_size_update(double step_x, double step_y,
                                           const FieldPoint& center,
                                           double h_max_gamma, double h_max_f,
                                           const EpSearchOptions& opt) {
  if (!(h_max_gamma > 0.0) || !(h_max_f > 0.0))
    throw BadInput("stencil radius caps must be positive");
  // one step length in stencil units, applied to both axes: the ring keeps
  // its aspect ratio, which keeps the fit and the winding loop conditioned
  const double sigma =
      std::hypot(step_x / h_max_gamma, step_y / h_max_f);
  const double floor_g = opt.floor_fraction * std::abs(center.gamma);
  const double floor_f = opt.floor_fraction * std::abs(center.f);
  const double hg = std::min(
      h_max_gamma, std::max(floor_g, opt.step_growth * sigma * h_max_gamma));
  const double hf = std::min(
      h_max_f, std::max(floor_f, opt.step_growth * sigma * h_max_f));
  return {hg, hf};
}

EPRecord find_ep(PairSolver& solver, const FieldPoint& initial,
                 const ResonancePair& reference, const EpSearchOptions& opt) {
  if (!(initial.gamma > 0.0) || !(initial.f > 0.0))
    throw BadInput("search must start at positive field strengths");
  if (opt.max_iterations < 1)
    throw BadInput("iteration cap must allow at least one octagon");
  if (!(opt.initial_step_fraction > 0.0))
    throw BadInput("initial stencil fraction must be positive");

  EPRecord record;
  record.degeneracy_floor = std::numeric_limits<double>::infinity();

  FieldPoint center = initial;
  ResonancePair tracked = reference;

  const double h_max_g = opt.initial_step_fraction * initial.gamma;
  const double h_max_f = opt.initial_step_fraction * initial.f;
  double hg = h_max_g;
  double hf = h_max_f;

  double prev_step_norm = std::numeric_limits<double>::infinity();
  int growth_streak = 0;

  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    if (opt.on_recenter) opt.on_recenter(center);

    // tracking ambiguity means the ring strayed too far from the reference
    // pair: shrink the stencil and retry the same center
    OctagonSamples samples;
    for (int halvings = 0;; ++halvings) {
      try {
        samples =
            sample_octagon(solver, OctagonStencil{center, hg, hf}, tracked);
        break;
      } catch (const AmbiguousTracking&) {
        if (halvings >= opt.max_halvings) throw;
        hg *= 0.5;
        hf *= 0.5;
      }
    }

    EpIteration it;
    it.index = iter;
    it.stencil = OctagonStencil{center, hg, hf};
    it.model = fit_octagon_model(samples, it.stencil);
    it.center_pair = samples.pairs[0];
    it.energy_split =
        std::abs(it.center_pair.first.energy - it.center_pair.second.energy);
    it.coefficients_digest = model_digest(it.model);
    if (opt.with_winding) {
      // diagnostic only: a loop that grazes a zero of eta mid-search must
      // not abort the descent
      try {
        const WindingResult w = winding_number(it.model, opt.winding);
        it.winding = w.winding;
        it.winding_diagnostic = w.diagnostic;
        it.winding_valid = true;
      } catch (const ZeroOnLoop&) {
        it.winding_diagnostic = std::numeric_limits<double>::infinity();
      } catch (const NonIntegerWinding&) {
        it.winding_diagnostic = std::numeric_limits<double>::infinity();
      }
    }
    record.degeneracy_floor =
        std::min(record.degeneracy_floor, it.energy_split);

    if (it.energy_split <= opt.degeneracy_floor) {
      it.ep_estimate = 0.5 * it.center_pair.kappa();
      record.history.push_back(it);
      close_record(record, it, SearchStatus::Converged, center,
                   it.ep_estimate, iter + 1);
      return record;
    }

    it.root = ep_candidate(it.model);
    const FieldPoint candidate{center.gamma + it.root.x, center.f + it.root.y};
    it.ep_estimate = ep_energy_estimate(it.model, candidate);
    it.step_gamma = it.root.x;
    it.step_f = it.root.y;
    record.history.push_back(it);

    // seed-normalized displacement, for the runaway guard and the stall test
    const double step_norm =
        std::hypot(it.root.x / initial.gamma, it.root.y / initial.f);
    growth_streak =
        (step_norm > prev_step_norm * (1.0 + 1e-12)) ? growth_streak + 1 : 0;
    prev_step_norm = step_norm;
    if (growth_streak >= opt.diverge_patience) {
      // leave the center where it was: the runaway step is not applied
      close_record(record, it, SearchStatus::Diverged, center,
                   0.5 * it.center_pair.kappa(), iter + 1);
      return record;
    }

    // recenter exactly onto the model zero
    center = candidate;
    tracked = samples.pairs[0];

    const double tiny = 1e-300;
    const double rel =
        std::max(std::abs(it.root.x) / std::max(std::abs(center.gamma), tiny),
                 std::abs(it.root.y) / std::max(std::abs(center.f), tiny));
    // a partial (backed-off) estimate can have a tiny step without the model
    // having a zero here; only a real root qualifies for step convergence
    if (it.root.real_root && rel <= opt.step_tolerance) {
      close_record(record, it, SearchStatus::Converged, center,
                   it.ep_estimate, iter + 1);
      return record;
    }

    const auto next = step_size_update(it.root.x, it.root.y, center, h_max_g,
                                       h_max_f, opt);
    hg = next.first;
    hf = next.second;
  }

  const EpIteration& last = record.history.back();
  close_record(record, last, SearchStatus::CapReached, center,
               last.ep_estimate, opt.max_iterations);
  return record;
}

EPRecord find_ep(const FieldPoint& initial, cplx energy_guess,
                 const BasisSpec& spec, const EpSearchOptions& opt) {
  if (!(initial.gamma > 0.0) || !(initial.f > 0.0))
    throw BadInput("search must start at positive field strengths");
  if (!std::isfinite(energy_guess.real()) ||
      !std::isfinite(energy_guess.imag()))
    throw BadInput("energy guess must be finite");

  PencilPairSolver solver(
      spec,
      DilationParameter{default_b_modulus(initial.gamma), opt.rotation_angle},
      opt.eigensolve);

  const SpectralPencil pencil =
      assemble(spec, initial, solver.dilation());
  const std::vector<Resonance> candidates =
      eigensolve_near(pencil, energy_guess, opt.eigensolve);
  const ResonancePair reference =
      initial_pair(candidates, energy_guess, opt.eigensolve);

  EpSearchOptions engine = opt;
  if (opt.adapt_dilation) {
    engine.on_recenter = [&solver, angle = opt.rotation_angle,
                          outer = opt.on_recenter](const FieldPoint& c) {
      const double g = std::max(std::abs(c.gamma), 1e-300);
      solver.set_dilation(DilationParameter{default_b_modulus(g), angle});
      if (outer) outer(c);
    };
  }
  return find_ep(solver, initial, reference, engine);
}

double stable_rotation_angle(const FieldPoint& seed, cplx energy_guess,
                             const BasisSpec& spec,
                             const std::vector<double>& candidates,
                             const EigensolveOptions& opt) {
  if (candidates.empty()) throw BadInput("no candidate rotation angles");
  const double delta = 0.01;

  auto pair_at = [&](double angle) {
    const DilationParameter dilation{default_b_modulus(seed.gamma), angle};
    const SpectralPencil pencil = assemble(spec, seed, dilation);
    const std::vector<Resonance> found =
        eigensolve_near(pencil, energy_guess, opt);
    return initial_pair(found, energy_guess, opt);
  };

  double best_angle = candidates.front();
  double best_move = std::numeric_limits<double>::infinity();
  for (const double angle : candidates) {
    const double probe =
        (angle + delta < 0.75) ? angle + delta : angle - delta;
    const ResonancePair a = pair_at(angle);
    const ResonancePair b = pair_at(probe);
    // resonances are stationary under rotation when converged; compare the
    // pair as a set since the energy ordering may differ between angles
    const double direct = std::abs(a.first.energy - b.first.energy) +
                          std::abs(a.second.energy - b.second.energy);
    const double crossed = std::abs(a.first.energy - b.second.energy) +
                           std::abs(a.second.energy - b.first.energy);
    const double move = std::min(direct, crossed);
    if (move < best_move) {
      best_move = move;
      best_angle = angle;
    }
  }
  return best_angle;
}

}  // namespace ryd
