#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "ryd/errors.hpp"
#include "ryd/verification.hpp"
#include "support/synthetic.hpp"

using ryd::cplx;
using ryd::FieldPoint;
using ryd::OctagonModel;
using ryd::OctagonStencil;
using ryd::ResonancePair;

namespace {

const FieldPoint kCenter{2e-3, 3e-5};
constexpr double kHg = 1e-4;
constexpr double kHf = 2e-6;

// One affine factor alpha x + beta y + delta in normalized stencil offsets.
// Its zero is a branch point of sqrt(eta); the sign of Im(conj(alpha) beta)
// is the orientation the winding integral counts.
struct AffineFactor {
  cplx alpha, beta, delta;
};

AffineFactor factor_with_zero(double xs, double ys, double orientation) {
  // alpha = 1, beta = +-i gives Im(conj(alpha) beta) = +-1
  AffineFactor f;
  f.alpha = 1.0;
  f.beta = cplx(0.0, orientation);
  f.delta = -(f.alpha * xs + f.beta * ys);
  return f;
}

// eta = product of two affine factors, expanded to the quadratic model in
// physical offsets. kappa is a fixed generic affine surface.
OctagonModel product_model(const AffineFactor& p, const AffineFactor& q) {
  OctagonModel m;
  m.center = kCenter;
  m.h_gamma = kHg;
  m.h_f = kHf;
  m.a = cplx(-1.2e-2, -4e-6);
  m.b = cplx(1.7, -0.4) / kHg * 1e-3;
  m.c = cplx(-0.9, 0.6) / kHf * 1e-3;
  m.d = p.delta * q.delta;
  m.e = (p.alpha * q.delta + q.alpha * p.delta) / kHg;
  m.f = (p.beta * q.delta + q.beta * p.delta) / kHf;
  m.g = (p.alpha * q.alpha) / (kHg * kHg);
  m.h = (p.alpha * q.beta + q.alpha * p.beta) / (kHg * kHf);
  m.i = (p.beta * q.beta) / (kHf * kHf);
  return m;
}

// the trivial second factor 0 x + 0 y + 1 leaves a single affine zero
const AffineFactor kUnitFactor{0.0, 0.0, 1.0};

synth::QuadraticSurface generic_surface() {
  synth::QuadraticSurface s;
  s.center = kCenter;
  s.a = cplx(-1.2e-2, -4e-6);
  s.b = cplx(1.7, -0.4) / kHg * 1e-3;
  s.c = cplx(-0.9, 0.6) / kHf * 1e-3;
  s.e = cplx(1.0, 0.0) / kHg;
  s.f = cplx(0.0, 1.0) / kHf;
  return s;
}

OctagonModel fitted_model(ryd::PairSolver& solver, const ResonancePair& ref) {
  const OctagonStencil stencil{kCenter, kHg, kHf};
  const auto samples = ryd::sample_octagon(solver, stencil, ref);
  return ryd::fit_octagon_model(samples, stencil);
}

}  // namespace

TEST_SUITE("verification") {
  TEST_CASE("one enclosed branch point: winding one and branch exchange") {
    const OctagonModel m = product_model(factor_with_zero(0.3, -0.2, +1.0),
                                         factor_with_zero(5.0, 4.0, +1.0));
    const auto w = ryd::winding_number(m);
    CHECK(w.winding == 1);
    CHECK(w.diagnostic <= 0.05);

    const auto paths = ryd::resonance_paths(m);
    CHECK(paths.exchanged);
    CHECK_FALSE(paths.closed);
    CHECK(ryd::exchange_detected(paths));
    CHECK(paths.first.size() == paths.second.size());
    // after one turn each energy lands on the other branch
    const double scale = std::abs(paths.first.front() - paths.second.front());
    CHECK(std::abs(paths.first.back() - paths.second.front()) <= 1e-9 * scale);
    CHECK(std::abs(paths.second.back() - paths.first.front()) <= 1e-9 * scale);

    const auto report = ryd::verify_model(m);
    CHECK(report.certificate);
    CHECK(report.winding.winding == 1);
    CHECK(report.paths.exchanged);
  }

  TEST_CASE("no enclosed zero: winding zero and closed paths") {
    const OctagonModel m = product_model(factor_with_zero(2.0, -1.5, +1.0),
                                         factor_with_zero(-3.0, 2.5, +1.0));
    const auto w = ryd::winding_number(m);
    CHECK(w.winding == 0);
    CHECK(w.diagnostic <= 0.05);

    const auto paths = ryd::resonance_paths(m);
    CHECK(paths.closed);
    CHECK_FALSE(paths.exchanged);
    CHECK_FALSE(ryd::exchange_detected(paths));

    const auto report = ryd::verify_model(m);
    CHECK_FALSE(report.certificate);
  }

  TEST_CASE("two enclosed zeros: winding two, paths close again") {
    const OctagonModel m = product_model(factor_with_zero(0.4, 0.1, +1.0),
                                         factor_with_zero(-0.35, -0.25, +1.0));
    const auto w = ryd::winding_number(m);
    CHECK(w.winding == 2);

    const auto paths = ryd::resonance_paths(m);
    CHECK(paths.closed);
    CHECK_FALSE(paths.exchanged);

    // two enclosed points are consistent (not a single-EP certificate)
    const auto report = ryd::verify_model(m);
    CHECK_FALSE(report.certificate);
  }

  TEST_CASE("oppositely oriented zeros cancel in the winding") {
    const OctagonModel m = product_model(factor_with_zero(0.3, -0.2, +1.0),
                                         factor_with_zero(-0.4, 0.1, -1.0));
    const auto w = ryd::winding_number(m);
    CHECK(w.winding == 0);
    const auto paths = ryd::resonance_paths(m);
    CHECK(paths.closed);
  }

  TEST_CASE("negatively oriented single zero trips the consistency check") {
    const OctagonModel m = product_model(factor_with_zero(0.3, -0.2, -1.0),
                                         factor_with_zero(5.0, 4.0, +1.0));
    const auto w = ryd::winding_number(m);
    CHECK(w.winding == -1);
    // the branch still swaps, but the +1 certificate fails: inconsistent
    const auto paths = ryd::resonance_paths(m);
    CHECK(paths.exchanged);
    CHECK_THROWS_AS(ryd::verify_model(m), ryd::InconsistentCertificate);
  }

  TEST_CASE("zero sitting on a loop sample is rejected") {
    const OctagonModel m = product_model(factor_with_zero(1.0, 0.0, +1.0),
                                         factor_with_zero(4.0, -3.0, +1.0));
    CHECK_THROWS_AS(ryd::winding_number(m), ryd::ZeroOnLoop);
  }

  TEST_CASE("resolution doubles until the integral settles") {
    const OctagonModel m = product_model(factor_with_zero(0.5, 0.2, +1.0),
                                         factor_with_zero(6.0, 5.0, +1.0));
    ryd::WindingOptions opt;
    opt.samples = 16;
    opt.diagnostic_tol = 1e-3;
    opt.max_doublings = 4;
    const auto w = ryd::winding_number(m, opt);
    CHECK(w.winding == 1);
    CHECK(w.diagnostic <= 1e-3);
    CHECK(w.samples_used > 16);
  }

  TEST_CASE("a sum that never settles is reported, not rounded") {
    const OctagonModel m = product_model(factor_with_zero(0.5, 0.2, +1.0),
                                         factor_with_zero(6.0, 5.0, +1.0));
    ryd::WindingOptions opt;
    opt.samples = 16;
    opt.diagnostic_tol = 1e-16;  // unreachable by the midpoint rule
    opt.max_doublings = 0;
    CHECK_THROWS_AS(ryd::winding_number(m, opt), ryd::NonIntegerWinding);
  }

  TEST_CASE("persistently ambiguous branch steps are reported") {
    // eta real along the loop with a sign change exactly between samples:
    // sqrt(eta) turns by 90 degrees in one step, and every refinement lands
    // a sample on the zero itself
    AffineFactor p;
    p.alpha = 1.0;
    p.beta = 0.0;
    p.delta = -std::cos(std::numbers::pi / 16.0);
    const OctagonModel m = product_model(p, kUnitFactor);
    CHECK_THROWS_AS(ryd::resonance_paths(m, 16), ryd::BranchAmbiguity);
  }

  TEST_CASE("certificate equivalence on 200 random single-zero models") {
    std::mt19937 rng(424242u);
    std::uniform_real_distribution<double> angle(0.0,
                                                 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> chi(-1.2, 1.2);
    std::uniform_real_distribution<double> mag(0.5, 2.0);
    std::uniform_real_distribution<double> inside_rho(0.1, 0.85);
    std::uniform_real_distribution<double> outside_rho(1.15, 5.0);

    int agreements = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const bool inside = trial % 2 == 0;
      const double rho = inside ? inside_rho(rng) : outside_rho(rng);
      const double tz = angle(rng);

      AffineFactor p;
      p.alpha = std::polar(1.0, angle(rng));
      // beta = i alpha e^{i chi} keeps Im(conj(alpha) beta) = cos(chi) > 0
      p.beta = cplx(0.0, 1.0) * p.alpha * std::polar(mag(rng), chi(rng));
      const double xs = rho * std::cos(tz);
      const double ys = rho * std::sin(tz);
      p.delta = -(p.alpha * xs + p.beta * ys);

      const OctagonModel m = product_model(p, kUnitFactor);
      const auto w = ryd::winding_number(m);
      const auto paths = ryd::resonance_paths(m);
      const bool expected = inside;
      if (w.winding == (expected ? 1 : 0) &&
          ryd::exchange_detected(paths) == expected)
        ++agreements;

      const auto report = ryd::verify_model(m);
      CHECK(report.certificate == expected);
    }
    CHECK(agreements == 200);
  }

  TEST_CASE("winding is stable from 256 to 2048 samples") {
    const OctagonModel m = product_model(factor_with_zero(0.3, -0.2, +1.0),
                                         factor_with_zero(5.0, 4.0, +1.0));
    for (int n = 256; n <= 2048; n *= 2) {
      ryd::WindingOptions opt;
      opt.samples = n;
      opt.max_doublings = 0;
      const auto w = ryd::winding_number(m, opt);
      CHECK(w.winding == 1);
      CHECK(w.samples_used == n);
    }
  }

  TEST_CASE("hard verification sees the vector exchange") {
    synth::QuadraticSurface s = generic_surface();
    s.g = cplx(0.12, -0.08) / (kHg * kHg);
    s.h = cplx(-0.05, 0.1) / (kHg * kHf);
    s.i = cplx(0.06, 0.04) / (kHf * kHf);
    s.plant_zero(kCenter.gamma + 0.3 * kHg, kCenter.f - 0.2 * kHf);

    synth::TwoLevelPairSolver solver(s.kappa_fn(), s.eta_fn());
    const ResonancePair reference = solver.solve(kCenter, ResonancePair{});
    const OctagonModel model = fitted_model(solver, reference);

    const auto hard = ryd::hard_verify(solver, model, reference, 16);
    CHECK(hard.winding.winding == 1);
    CHECK(hard.energies_exchanged);
    CHECK(hard.vectors_exchanged);
    // the surface is exactly quadratic, so the fitted model is trusted
    CHECK(hard.model_consistent);
    CHECK(hard.deviation_bound > 0.0);
    CHECK(hard.max_energy_deviation <= hard.deviation_bound);
  }

  TEST_CASE("hard verification on an empty loop stays closed") {
    synth::QuadraticSurface s = generic_surface();
    s.plant_zero(kCenter.gamma + 4.0 * kHg, kCenter.f + 3.0 * kHf);

    synth::TwoLevelPairSolver solver(s.kappa_fn(), s.eta_fn());
    const ResonancePair reference = solver.solve(kCenter, ResonancePair{});
    const OctagonModel model = fitted_model(solver, reference);

    const auto hard = ryd::hard_verify(solver, model, reference, 16);
    CHECK(hard.winding.winding == 0);
    CHECK_FALSE(hard.energies_exchanged);
    CHECK_FALSE(hard.vectors_exchanged);
    CHECK(hard.model_consistent);
  }

  TEST_CASE("hard verification flags a model that fails off the stencil") {
    // add a ring term that vanishes at all nine stencil points: the fit
    // still reproduces the quadratic part exactly, but the solved energies
    // depart from the model between the stencil nodes
    synth::QuadraticSurface s = generic_surface();
    s.plant_zero(kCenter.gamma + 0.3 * kHg, kCenter.f - 0.2 * kHf);
    auto base_eta = s.eta_fn();
    auto eta = [base_eta](double gamma, double ff) {
      const double xs = (gamma - kCenter.gamma) / kHg;
      const double ys = (ff - kCenter.f) / kHf;
      return base_eta(gamma, ff) +
             cplx(0.4) * xs * ys * (xs * xs - ys * ys);
    };
    synth::TwoLevelPairSolver solver(s.kappa_fn(), eta);
    const ResonancePair reference = solver.solve(kCenter, ResonancePair{});
    const OctagonModel model = fitted_model(solver, reference);
    CHECK(model.eta_defect <= 1e-12);  // invisible on the stencil itself

    const auto hard = ryd::hard_verify(solver, model, reference, 16);
    CHECK_FALSE(hard.model_consistent);
    CHECK(hard.max_energy_deviation > hard.deviation_bound);
    // the zero count is untouched by the ripple
    CHECK(hard.winding.winding == 1);
    CHECK(hard.energies_exchanged);
  }

  TEST_CASE("input validation") {
    const OctagonModel m = product_model(factor_with_zero(0.3, -0.2, +1.0),
                                         factor_with_zero(5.0, 4.0, +1.0));
    ryd::WindingOptions opt;
    opt.samples = 12;
    CHECK_THROWS_AS(ryd::winding_number(m, opt), ryd::BadInput);
    CHECK_THROWS_AS(ryd::resonance_paths(m, 12), ryd::BadInput);

    synth::ModelPairSolver solver([](double, double) { return cplx(1.0); },
                                  [](double, double) { return cplx(1.0); });
    ResonancePair ref;
    CHECK_THROWS_AS(ryd::hard_verify(solver, m, ref, 4), ryd::BadInput);
    OctagonModel flat = m;
    flat.h_gamma = 0.0;
    CHECK_THROWS_AS(ryd::hard_verify(solver, flat, ref, 16), ryd::BadInput);
  }
}
