#include "ryd/verification.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "ryd/errors.hpp"

namespace ryd {

namespace {

constexpr int kMinLoopSamples = 16;

// eta sampled on the stencil ellipse, endpoint excluded.
std::vector<cplx> eta_loop(const OctagonModel& model, int samples) {
  std::vector<cplx> out(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    const double t = 2.0 * std::numbers::pi * k / samples;
    const double x = model.h_gamma * std::cos(t);
    const double y = model.h_f * std::sin(t);
    out[static_cast<std::size_t>(k)] = eval_eta(model, x, y);
  }
  return out;
}

// A loop sample indistinguishable from a zero of eta poisons the winding
// sum. `scale` is the natural size of eta for the loop at hand.
void guard_zero_on_loop(const std::vector<cplx>& eta, double scale) {
  double top = 0.0;
  double bottom = std::numeric_limits<double>::infinity();
  for (const cplx& v : eta) {
    top = std::max(top, std::abs(v));
    bottom = std::min(bottom, std::abs(v));
  }
  if (!(top > 0.0) || bottom < 1e-14 * scale)
    throw ZeroOnLoop(
        "eta vanishes on the verification loop; shrink or shift it");
}

WindingResult winding_from_samples(const std::vector<cplx>& eta) {
  const int n = static_cast<int>(eta.size());
  cplx sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const cplx& prev = eta[static_cast<std::size_t>((k + n - 1) % n)];
    const cplx& next = eta[static_cast<std::size_t>((k + 1) % n)];
    sum += (next - prev) / (2.0 * eta[static_cast<std::size_t>(k)]);
  }
  const cplx raw = sum / cplx(0.0, 2.0 * std::numbers::pi);
  WindingResult result;
  result.winding = static_cast<int>(std::lround(raw.real()));
  result.diagnostic = std::abs(raw - cplx(static_cast<double>(result.winding)));
  result.samples_used = n;
  return result;
}

}  // namespace

WindingResult winding_number(const OctagonModel& model,
                             const WindingOptions& opt) {
  if (opt.samples < kMinLoopSamples)
    throw BadInput("winding loop needs at least 16 samples");
  const double zero_scale = std::abs(model.d);
  int n = opt.samples;
  std::vector<cplx> eta = eta_loop(model, n);
  guard_zero_on_loop(eta, zero_scale);
  WindingResult result = winding_from_samples(eta);
  for (int round = 0;
       round < opt.max_doublings && result.diagnostic > opt.diagnostic_tol;
       ++round) {
    n *= 2;
    eta = eta_loop(model, n);
    guard_zero_on_loop(eta, zero_scale);
    result = winding_from_samples(eta);
  }
  if (result.diagnostic > opt.diagnostic_tol)
    throw NonIntegerWinding(
        "winding sum stayed away from an integer at the highest resolution");
  return result;
}

PathResult resonance_paths(const OctagonModel& model, int samples) {
  if (samples < kMinLoopSamples)
    throw BadInput("energy paths need at least 16 samples");

  int n = samples;
  const int max_refinements = 3;
  for (int attempt = 0; attempt <= max_refinements; ++attempt, n *= 2) {
    PathResult result;
    result.first.reserve(static_cast<std::size_t>(n) + 1);
    result.second.reserve(static_cast<std::size_t>(n) + 1);

    std::vector<cplx> w(static_cast<std::size_t>(n) + 1);
    double w_scale = 0.0;
    bool ambiguous = false;
    for (int k = 0; k <= n && !ambiguous; ++k) {
      const double t = 2.0 * std::numbers::pi * k / n;
      const double x = model.h_gamma * std::cos(t);
      const double y = model.h_f * std::sin(t);
      const cplx kappa = eval_kappa(model, x, y);
      const cplx root = std::sqrt(eval_eta(model, x, y));
      cplx& wk = w[static_cast<std::size_t>(k)];
      wk = root;
      if (k > 0) {
        const cplx& prev = w[static_cast<std::size_t>(k - 1)];
        const double keep = std::abs(root - prev);
        const double flip = std::abs(root + prev);
        // both sign choices nearly equidistant: the step cannot decide the
        // branch, so resample the loop more finely
        if (std::abs(keep - flip) <= 0.01 * std::max(keep, flip)) {
          ambiguous = true;
          break;
        }
        if (flip < keep) wk = -root;
      }
      w_scale = std::max(w_scale, std::abs(wk));
      result.first.push_back(0.5 * (kappa + wk));
      result.second.push_back(0.5 * (kappa - wk));
    }
    if (ambiguous) continue;

    const double tol = 1e-10 * w_scale;
    const cplx start = w.front();
    const cplx finish = w.back();
    if (std::abs(finish - start) <= tol)
      result.closed = true;
    else if (std::abs(finish + start) <= tol)
      result.exchanged = true;
    else
      throw BranchAmbiguity(
          "sqrt(eta) branch neither closes nor swaps over the loop");
    return result;
  }
  throw BranchAmbiguity(
      "branch selection stayed ambiguous after refining the loop");
}

bool exchange_detected(const PathResult& paths) { return paths.exchanged; }

VerificationReport verify_model(const OctagonModel& model,
                                const WindingOptions& opt) {
  VerificationReport report;
  report.winding = winding_number(model, opt);
  report.paths = resonance_paths(model, std::max(opt.samples, 64));
  report.certificate = (report.winding.winding == 1);
  if (exchange_detected(report.paths) != report.certificate)
    throw InconsistentCertificate(
        "winding and branch exchange disagree on the enclosed point");
  return report;
}

HardVerification hard_verify(PairSolver& solver, const OctagonModel& model,
                             const ResonancePair& reference, int samples) {
  if (samples < 8)
    throw BadInput("hard verification needs at least 8 loop points");
  if (!(model.h_gamma > 0.0) || !(model.h_f > 0.0))
    throw BadInput("model loop radii must be positive");

  std::vector<ResonancePair> loop;
  loop.reserve(static_cast<std::size_t>(samples));
  ResonancePair tracked = reference;
  HardVerification result;
  cplx w_prev = 0.0;
  double w_max = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double t = 2.0 * std::numbers::pi * k / samples;
    const double x = model.h_gamma * std::cos(t);
    const double y = model.h_f * std::sin(t);
    FieldPoint p = model.center;
    p.gamma += x;
    p.f += y;
    tracked = solver.solve(p, tracked);
    loop.push_back(tracked);

    // model prediction at the same point, branch kept continuous
    const cplx kappa = eval_kappa(model, x, y);
    cplx w = std::sqrt(eval_eta(model, x, y));
    if (k > 0 && std::abs(-w - w_prev) < std::abs(w - w_prev)) w = -w;
    w_prev = w;
    w_max = std::max(w_max, std::abs(w));
    const cplx plus = 0.5 * (kappa + w);
    const cplx minus = 0.5 * (kappa - w);
    const cplx e1 = tracked.first.energy;
    const cplx e2 = tracked.second.energy;
    const double direct = std::max(std::abs(e1 - plus), std::abs(e2 - minus));
    const double crossed = std::max(std::abs(e1 - minus), std::abs(e2 - plus));
    result.max_energy_deviation =
        std::max(result.max_energy_deviation, std::min(direct, crossed));
  }
  result.deviation_bound = 1e-3 * w_max;
  result.model_consistent =
      result.max_energy_deviation <= result.deviation_bound;

  // Close the loop at the starting point and compare against the first pass.
  FieldPoint p0 = model.center;
  p0.gamma += model.h_gamma;
  const ResonancePair final_pair = solver.solve(p0, tracked);
  const ResonancePair& initial = loop.front();

  std::vector<cplx> eta(static_cast<std::size_t>(samples));
  double eta_scale = 0.0;
  for (int k = 0; k < samples; ++k) {
    eta[static_cast<std::size_t>(k)] = loop[static_cast<std::size_t>(k)].eta();
    eta_scale =
        std::max(eta_scale, std::abs(eta[static_cast<std::size_t>(k)]));
  }
  guard_zero_on_loop(eta, eta_scale);
  result.winding = winding_from_samples(eta);

  const double direct = std::abs(final_pair.first.energy - initial.first.energy) +
                        std::abs(final_pair.second.energy - initial.second.energy);
  const double crossed = std::abs(final_pair.first.energy - initial.second.energy) +
                         std::abs(final_pair.second.energy - initial.first.energy);
  result.energies_exchanged = crossed < direct;

  // identity question, not a tracking step: use the conjugated overlap
  const double keep =
      hermitian_overlap(final_pair.first.coefficients, initial.first.coefficients) +
      hermitian_overlap(final_pair.second.coefficients, initial.second.coefficients);
  const double swap =
      hermitian_overlap(final_pair.first.coefficients, initial.second.coefficients) +
      hermitian_overlap(final_pair.second.coefficients, initial.first.coefficients);
  result.vectors_exchanged = swap > keep;
  return result;
}

}  // namespace ryd
