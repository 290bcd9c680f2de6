#include "ryd/octagon.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

#include "ryd/errors.hpp"

namespace ryd {

namespace {

constexpr double kQuarterPi = 0.78539816339744831;

double wedge(cplx u, cplx v) { return u.imag() * v.real() - u.real() * v.imag(); }

using Poly = std::vector<double>;  // ascending degree

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

void poly_axpy(Poly& acc, double scale, const Poly& p) {
  if (acc.size() < p.size()) acc.resize(p.size(), 0.0);
  for (size_t i = 0; i < p.size(); ++i) acc[i] += scale * p[i];
}

std::vector<cplx> poly_roots(Poly p) {
  double top = 0.0;
  for (const double c : p) top = std::max(top, std::abs(c));
  if (top == 0.0) return {};
  while (p.size() > 1 && std::abs(p.back()) <= 1e-13 * top) p.pop_back();
  const int deg = static_cast<int>(p.size()) - 1;
  if (deg < 1) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 0; i < deg - 1; ++i) companion(i + 1, i) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -p[i] / p[deg];
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
  std::vector<cplx> roots(deg);
  for (int i = 0; i < deg; ++i) roots[i] = es.eigenvalues()(i);
  return roots;
}

// Model coefficients rescaled to stencil units, where the ring points sit at
// radius one and the root is expected within a few units.
struct NormalizedModel {
  cplx d, e, f, g, h, i;
  double scale = 0.0;

  cplx eta(cplx x, cplx y, double eps = 1.0) const {
    return eps * d + e * x + f * y + g * x * x + h * x * y + i * y * y;
  }
};

NormalizedModel normalize(const OctagonModel& m) {
  NormalizedModel n;
  n.d = m.d;
  n.e = m.e * m.h_gamma;
  n.f = m.f * m.h_f;
  n.g = m.g * m.h_gamma * m.h_gamma;
  n.h = m.h * m.h_gamma * m.h_f;
  n.i = m.i * m.h_f * m.h_f;
  n.scale = std::max({std::abs(n.d), std::abs(n.e), std::abs(n.f),
                      std::abs(n.g), std::abs(n.h), std::abs(n.i)});
  return n;
}

NormalizedModel swap_variables(const NormalizedModel& m) {
  NormalizedModel s = m;
  std::swap(s.e, s.f);
  std::swap(s.g, s.i);
  return s;
}

// Reduction of Re(eta) = Im(eta) = 0 to one real polynomial in x. The kept
// variable may be the swapped one; the caller undoes the swap.
struct Reduction {
  bool swapped = false;
  std::function<Poly(double)> polynomial;        // coefficients at given eps
  std::function<cplx(cplx, double)> partner_y;   // y recovered from x
};

// Full case: eta genuinely quadratic in y. The combination
// Im(eta) Re(i) - Re(eta) Im(i) is linear in y,
//   R(x) + y T(x) = 0,
//   R = eps W(d,i) + W(e,i) x + W(g,i) x^2,  T = W(f,i) + W(h,i) x,
// and substituting y = -R/T into the larger real component of eta gives
//   P T^2 - Q R T + i_sel R^2 = 0
// with P = eps d_sel + e_sel x + g_sel x^2, Q = f_sel + h_sel x.
Reduction quadratic_reduction(const NormalizedModel& m, bool swapped) {
  const bool use_re = std::abs(m.i.real()) >= std::abs(m.i.imag());
  auto pick = [use_re](cplx z) { return use_re ? z.real() : z.imag(); };

  auto polynomial = [m, pick](double eps) {
    const Poly r = {eps * wedge(m.d, m.i), wedge(m.e, m.i), wedge(m.g, m.i)};
    const Poly t = {wedge(m.f, m.i), wedge(m.h, m.i)};
    const Poly p = {eps * pick(m.d), pick(m.e), pick(m.g)};
    const Poly q = {pick(m.f), pick(m.h)};
    Poly out = poly_mul(p, poly_mul(t, t));
    poly_axpy(out, -1.0, poly_mul(q, poly_mul(r, t)));
    poly_axpy(out, pick(m.i), poly_mul(r, r));
    return out;
  };

  auto partner = [m, pick](cplx x, double eps) -> cplx {
    const cplx tv = wedge(m.f, m.i) + wedge(m.h, m.i) * x;
    const cplx rv =
        eps * wedge(m.d, m.i) + wedge(m.e, m.i) * x + wedge(m.g, m.i) * x * x;
    const double tscale =
        std::abs(wedge(m.f, m.i)) + std::abs(wedge(m.h, m.i) * x) + 1e-300;
    if (std::abs(tv) > 1e-12 * tscale) return -rv / tv;
    // T vanished here: fall back to the scalar quadratic in y
    const double a2 = pick(m.i);
    const cplx a1 = pick(m.f) + pick(m.h) * x;
    const cplx a0 = eps * pick(m.d) + pick(m.e) * x + pick(m.g) * x * x;
    if (std::abs(a2) <= 1e-14 * (std::abs(a1) + std::abs(a0) + 1e-300))
      return std::abs(a1) > 0.0 ? -a0 / a1 : cplx(0.0, 0.0);
    const cplx disc = std::sqrt(a1 * a1 - 4.0 * a2 * a0);
    const cplx y1 = (-a1 + disc) / (2.0 * a2);
    const cplx y2 = (-a1 - disc) / (2.0 * a2);
    return std::abs(m.eta(x, y1, eps)) <= std::abs(m.eta(x, y2, eps)) ? y1 : y2;
  };

  return Reduction{swapped, polynomial, partner};
}

// Thin case: eta linear in y (i negligible). y = -R/T with complex
// R = eps d + e x + g x^2, T = f + h x, and realness of y demands
// W(R, T)(x) = 0, a real cubic.
Reduction linear_reduction(const NormalizedModel& m, bool swapped) {
  auto polynomial = [m](double eps) {
    return Poly{eps * wedge(m.d, m.f),
                eps * wedge(m.d, m.h) + wedge(m.e, m.f),
                wedge(m.e, m.h) + wedge(m.g, m.f), wedge(m.g, m.h)};
  };
  auto partner = [m](cplx x, double eps) -> cplx {
    const cplx tv = m.f + m.h * x;
    const cplx rv = eps * m.d + m.e * x + m.g * x * x;
    const double tscale = std::abs(m.f) + std::abs(m.h * x) + 1e-300;
    if (std::abs(tv) > 1e-12 * tscale) return -rv / tv;
    return cplx(0.0, 0.0);
  };
  return Reduction{swapped, polynomial, partner};
}

// Two Newton steps on the full complex model, kept only while the residual
// shrinks.
void polish_root(const NormalizedModel& m, double& x, double& y) {
  for (int it = 0; it < 2; ++it) {
    const cplx val = m.eta(x, y);
    const cplx dx = m.e + 2.0 * m.g * x + m.h * y;
    const cplx dy = m.f + m.h * x + 2.0 * m.i * y;
    const double det = dx.real() * dy.imag() - dy.real() * dx.imag();
    if (det == 0.0) return;
    const double sx = (val.real() * dy.imag() - dy.real() * val.imag()) / det;
    const double sy = (dx.real() * val.imag() - val.real() * dx.imag()) / det;
    if (!std::isfinite(sx) || !std::isfinite(sy)) return;
    if (std::abs(m.eta(x - sx, y - sy)) >= std::abs(val)) return;
    x -= sx;
    y -= sy;
  }
}

}  // namespace

std::array<FieldPoint, 9> OctagonStencil::points() const {
  std::array<FieldPoint, 9> out;
  out[0] = center;
  for (int k = 1; k <= 8; ++k) {
    const double phi = (k - 1) * kQuarterPi;
    out[k] = FieldPoint{center.gamma + h_gamma * std::cos(phi),
                        center.f + h_f * std::sin(phi)};
  }
  return out;
}

OctagonSamples sample_octagon(PairSolver& solver, const OctagonStencil& stencil,
                              const ResonancePair& reference) {
  if (!(stencil.h_gamma > 0.0) || !(stencil.h_f > 0.0))
    throw BadInput("stencil extents must be positive");
  const auto pts = stencil.points();
  OctagonSamples s;
  s.pairs[0] = solver.solve(pts[0], reference);
  for (int k = 1; k <= 8; ++k) s.pairs[k] = solver.solve(pts[k], s.pairs[0]);
  for (int k = 0; k < 9; ++k) {
    s.kappa[k] = s.pairs[k].kappa();
    s.eta[k] = s.pairs[k].eta();
  }
  return s;
}

OctagonModel fit_octagon_model(const OctagonSamples& s,
                               const OctagonStencil& stencil) {
  const double hg = stencil.h_gamma;
  const double hf = stencil.h_f;
  if (!(hg > 0.0) || !(hf > 0.0))
    throw BadInput("stencil extents must be positive");
  OctagonModel m;
  m.center = stencil.center;
  m.h_gamma = hg;
  m.h_f = hf;
  m.a = s.kappa[0];
  m.b = (s.kappa[1] - s.kappa[5]) / (2.0 * hg);
  m.c = (s.kappa[3] - s.kappa[7]) / (2.0 * hf);
  m.d = s.eta[0];
  m.e = (s.eta[1] - s.eta[5]) / (2.0 * hg);
  m.f = (s.eta[3] - s.eta[7]) / (2.0 * hf);
  m.g = (s.eta[1] + s.eta[5] - 2.0 * s.eta[0]) / (2.0 * hg * hg);
  m.i = (s.eta[3] + s.eta[7] - 2.0 * s.eta[0]) / (2.0 * hf * hf);
  m.h = (s.eta[2] - s.eta[4] + s.eta[6] - s.eta[8]) / (2.0 * hg * hf);
  const double r = std::numbers::sqrt2 / 2.0;
  const std::array<std::pair<double, double>, 4> diag = {
      {{r, r}, {-r, r}, {-r, -r}, {r, -r}}};
  for (int k = 0; k < 4; ++k) {
    const auto [cx, cy] = diag[static_cast<std::size_t>(k)];
    const cplx predicted = eval_eta(m, cx * hg, cy * hf);
    m.eta_defect = std::max(
        m.eta_defect,
        std::abs(predicted - s.eta[static_cast<std::size_t>(2 * k + 2)]));
  }
  return m;
}

cplx eval_kappa(const OctagonModel& m, double x, double y) {
  return m.a + m.b * x + m.c * y;
}

cplx eval_eta(const OctagonModel& m, double x, double y) {
  return m.d + m.e * x + m.f * y + m.g * x * x + m.h * x * y + m.i * y * y;
}

ModelRoot ep_candidate(const OctagonModel& model) {
  const NormalizedModel nm = normalize(model);
  if (nm.scale == 0.0)
    throw DegenerateElimination("eta model is identically zero");
  const NormalizedModel sm = swap_variables(nm);
  const double tiny_wedge = 1e-13 * nm.scale * nm.scale;
  const double tiny_coeff = 1e-11 * nm.scale;

  // pick the best-conditioned reduction
  const double wy =
      std::max(std::abs(wedge(nm.f, nm.i)), std::abs(wedge(nm.h, nm.i)));
  const double wx =
      std::max(std::abs(wedge(sm.f, sm.i)), std::abs(wedge(sm.h, sm.i)));
  // a thin reduction built from numerically parallel real and imaginary
  // parts collapses to roundoff noise; its wedge coefficients must rise
  // above the coefficient scale squared
  auto checked_linear = [&](const NormalizedModel& m, bool swapped) {
    Reduction red = linear_reduction(m, swapped);
    double top = 0.0;
    for (const double c : red.polynomial(1.0)) top = std::max(top, std::abs(c));
    if (top <= 1e-12 * nm.scale * nm.scale)
      throw DegenerateElimination(
          "eliminated polynomial vanishes to roundoff; the model zeros are "
          "not isolated");
    return red;
  };

  Reduction red;
  if (wy > tiny_wedge || wx > tiny_wedge) {
    red = wy >= wx ? quadratic_reduction(nm, false)
                   : quadratic_reduction(sm, true);
  } else if (std::abs(nm.i) <= tiny_coeff &&
             std::max(std::abs(nm.f), std::abs(nm.h)) > tiny_coeff) {
    red = checked_linear(nm, false);
  } else if (std::abs(sm.i) <= tiny_coeff &&
             std::max(std::abs(sm.f), std::abs(sm.h)) > tiny_coeff) {
    red = checked_linear(sm, true);
  } else {
    throw DegenerateElimination(
        "real and imaginary parts of the eta model do not give independent "
        "equations");
  }

  // homotopy from eta - d to eta; (0, 0) solves the eps = 0 system exactly.
  // The imaginary-part floor of 1e-6 stencil units absorbs roundoff that the
  // back-substitution amplifies for roots far outside the ring; a branch
  // that genuinely leaves the real plane grows like sqrt(eps - eps*) and
  // clears the floor almost immediately.
  auto is_real = [](cplx z) {
    return std::abs(z.imag()) <=
           std::max(1e-9 * std::max(1.0, std::abs(z.real())), 1e-6);
  };
  cplx xc(0.0, 0.0);
  double eps = 0.0;
  double step = 0.01;
  // last point of the continuation where the tracked root (and its partner)
  // were still real; the fallback estimate when the root ends complex
  double real_eps = 0.0;
  double real_x = 0.0;
  double real_y = 0.0;
  bool had_real = false;
  constexpr double kJump = 0.35;  // in stencil units
  while (eps < 1.0) {
    const double next = std::min(eps + step, 1.0);
    const auto roots = poly_roots(red.polynomial(next));
    if (roots.empty())
      throw ContinuationFailed("eliminated polynomial lost all roots");
    cplx best = roots[0];
    for (const cplx r : roots)
      if (std::abs(r - xc) < std::abs(best - xc)) best = r;
    if (std::abs(best - xc) > kJump) {
      if (step > 1e-6) {
        step *= 0.5;
        continue;
      }
      throw TrackingJump("root continuation jumped between branches");
    }
    xc = best;
    eps = next;
    step = std::min(2.0 * step, 0.01);
    if (is_real(xc)) {
      const cplx yp = red.partner_y(xc, eps);
      if (is_real(yp)) {
        real_eps = eps;
        real_x = xc.real();
        real_y = yp.real();
        had_real = true;
      }
    }
  }

  const cplx yc = red.partner_y(xc, 1.0);
  const bool real_root = is_real(xc) && is_real(yc);

  ModelRoot out;
  if (real_root) {
    double rx = red.swapped ? yc.real() : xc.real();
    double ry = red.swapped ? xc.real() : yc.real();
    polish_root(nm, rx, ry);
    out.x = rx * model.h_gamma;
    out.y = ry * model.h_f;
    out.real_root = true;
    out.residual = std::abs(nm.eta(rx, ry));
    out.final_epsilon = 1.0;
    return out;
  }

  // root complex at eps = 1: back off to the last eps with a real root and
  // report that position as a partial estimate (no polish: the full system
  // has no real solution to polish towards)
  const double rx = red.swapped ? real_y : real_x;
  const double ry = red.swapped ? real_x : real_y;
  out.x = had_real ? rx * model.h_gamma : 0.0;
  out.y = had_real ? ry * model.h_f : 0.0;
  out.real_root = false;
  out.residual = std::abs(nm.eta(rx, ry));
  out.final_epsilon = had_real ? real_eps : 0.0;
  return out;
}

}  // namespace ryd
