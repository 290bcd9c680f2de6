#include "ryd/solver.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "ryd/errors.hpp"

namespace ryd {

// conjugated cosine; 1 exactly when the vectors span the same direction.
// tracking_overlap is a different product and stays below 1 for genuinely
// complex vectors, so it cannot detect duplicates or identity.
double hermitian_overlap(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (!(na > 0.0) || !(nb > 0.0)) return 0.0;
  return std::abs(a.dot(b)) / (na * nb);
}

namespace {

using SolveFn = std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>;

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double unit_double(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * (1.0 / 9007199254740992.0);
}

// Fixed pseudo-random start vector; std::normal_distribution is avoided
// because its sequence is implementation defined.
Eigen::VectorXcd start_vector(int dim, std::uint64_t seed) {
  Eigen::VectorXcd v(dim);
  std::uint64_t s = seed;
  for (int k = 0; k < dim; ++k) {
    const double re = unit_double(splitmix64(s)) - 0.5;
    const double im = unit_double(splitmix64(s)) - 0.5;
    v(k) = cplx(re, im);
  }
  v.normalize();
  return v;
}

template <typename Scalar>
double matrix_scale(const Eigen::SparseMatrix<Scalar>& m) {
  Eigen::VectorXd rowsum = Eigen::VectorXd::Zero(m.rows());
  for (int k = 0; k < m.outerSize(); ++k)
    for (typename Eigen::SparseMatrix<Scalar>::InnerIterator it(m, k); it; ++it)
      rowsum(it.row()) += std::abs(it.value());
  return rowsum.maxCoeff();
}

void fix_phase(Eigen::VectorXcd& v) {
  int imax = 0;
  double best = -1.0;
  for (int k = 0; k < v.size(); ++k) {
    const double a = std::norm(v(k));
    if (a > best) {
      best = a;
      imax = k;
    }
  }
  const double mag = std::abs(v(imax));
  if (mag > 0.0) v *= std::conj(v(imax)) / mag;
}

struct PencilWork {
  const SpectralPencil* pencil = nullptr;
  Eigen::SparseMatrix<cplx> s_complex;
  double norm_a = 0.0;
  double norm_s = 0.0;
  cplx sigma;

  Eigen::VectorXcd apply_a(const Eigen::VectorXcd& v) const {
    return pencil->lhs * v;
  }
  Eigen::VectorXcd apply_s(const Eigen::VectorXcd& v) const {
    return s_complex * v;
  }
  double scaled_residual(const Eigen::VectorXcd& v, cplx lambda) const {
    return (apply_a(v) - lambda * apply_s(v)).norm() /
           (v.norm() * (norm_a + std::abs(lambda) * norm_s));
  }
  // lambda minimizing ||A v - lambda S v||; robust even where v^T S v ~ 0
  cplx least_squares_lambda(const Eigen::VectorXcd& v) const {
    const Eigen::VectorXcd sv = apply_s(v);
    return sv.dot(apply_a(v)) / sv.squaredNorm();
  }
  // c-product Rayleigh quotient: stationary at eigenvectors of the complex
  // symmetric pencil, hence quadratically accurate; unusable when the state
  // is nearly self-orthogonal (close to an EP)
  cplx best_lambda(const Eigen::VectorXcd& v) const {
    const Eigen::VectorXcd sv = apply_s(v);
    const cplx vs = v.cwiseProduct(sv).sum();
    if (std::abs(vs) > 1e-3 * v.norm() * sv.norm()) {
      const cplx va = v.cwiseProduct(apply_a(v)).sum();
      return va / vs;
    }
    return sv.dot(apply_a(v)) / sv.squaredNorm();
  }
};

Resonance finish_eigenpair(const PencilWork& work, const SolveFn& solve,
                           Eigen::VectorXcd v, double tol) {
  v.normalize();
  cplx lambda = work.least_squares_lambda(v);
  double res = work.scaled_residual(v, lambda);
  for (int it = 0; it < 5 && res > tol; ++it) {
    Eigen::VectorXcd w = solve(work.apply_s(v));
    const double n = w.norm();
    if (!(n > 0.0) || !std::isfinite(n)) break;
    w /= n;
    const cplx lam = work.least_squares_lambda(w);
    const double r = work.scaled_residual(w, lam);
    if (r >= res) break;
    v = w;
    lambda = lam;
    res = r;
  }
  lambda = work.best_lambda(v);
  res = work.scaled_residual(v, lambda);
  fix_phase(v);

  Resonance out;
  out.lambda = lambda;
  out.energy = energy_from_lambda(lambda, work.pencil->dilation);
  out.c_norm = v.cwiseProduct(work.apply_s(v)).sum();
  out.coefficients = std::move(v);
  out.residual = res;
  return out;
}

struct RankedEigenpair {
  cplx theta;  // eigenvalue of the shift-inverted operator
  Eigen::VectorXcd vector;
};

// One Arnoldi factorization of op = (A - sigma S)^{-1} S with full
// reorthogonalization; returns true when the leading `want` Ritz pairs pass
// the residual estimate.
template <typename Op>
bool arnoldi_sweep(const Op& op, const Eigen::VectorXcd& v0, int ncv, int want,
                   double inner_tol, std::vector<RankedEigenpair>& out,
                   Eigen::VectorXcd& restart) {
  const int dim = static_cast<int>(v0.size());
  ncv = std::min(ncv, dim);
  Eigen::MatrixXcd basis(dim, ncv + 1);
  Eigen::MatrixXcd hess = Eigen::MatrixXcd::Zero(ncv + 1, ncv);
  basis.col(0) = v0;
  int m = ncv;
  bool exact_subspace = false;
  for (int k = 0; k < ncv; ++k) {
    Eigen::VectorXcd w = op(basis.col(k));
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i <= k; ++i) {
        const cplx h = basis.col(i).dot(w);
        hess(i, k) += h;
        w -= h * basis.col(i);
      }
    }
    const double beta = w.norm();
    hess(k + 1, k) = beta;
    if (!(beta > 1e-14)) {
      m = k + 1;
      exact_subspace = true;  // Krylov space closed early
      break;
    }
    basis.col(k + 1) = w / beta;
  }

  const Eigen::MatrixXcd hm = hess.topLeftCorner(m, m);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(hm);
  if (ces.info() != Eigen::Success) return false;
  const double beta_last = exact_subspace ? 0.0 : std::abs(hess(m, m - 1));

  std::vector<int> order(m);
  for (int i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(ces.eigenvalues()(a)) > std::abs(ces.eigenvalues()(b));
  });

  out.clear();
  restart = Eigen::VectorXcd::Zero(dim);
  bool converged = true;
  const int top = std::min(want, m);
  for (int r = 0; r < top; ++r) {
    const int i = order[r];
    const cplx theta = ces.eigenvalues()(i);
    const Eigen::VectorXcd y = ces.eigenvectors().col(i);
    const double est = beta_last * std::abs(y(m - 1));
    if (est > inner_tol * std::max(std::abs(theta), 1e-30)) converged = false;
    const Eigen::VectorXcd v = basis.leftCols(m) * y;
    out.push_back({theta, v});
    restart += v;
  }
  const double rn = restart.norm();
  if (rn > 0.0) restart /= rn;
  return converged;
}

std::vector<Resonance> finalize_candidates(const PencilWork& work,
                                           const SolveFn& solve,
                                           std::vector<RankedEigenpair>& raw,
                                           int count, double tol) {
  std::vector<Resonance> result;
  for (auto& cand : raw) {
    if (!cand.vector.allFinite()) continue;
    Resonance r = finish_eigenpair(work, solve, cand.vector, tol);
    if (r.residual <= tol && std::isfinite(r.residual))
      result.push_back(std::move(r));
  }
  std::sort(result.begin(), result.end(),
            [&](const Resonance& a, const Resonance& b) {
              return std::abs(a.lambda - work.sigma) <
                     std::abs(b.lambda - work.sigma);
            });
  // restarts can converge the same state twice
  std::vector<Resonance> unique;
  for (auto& r : result) {
    bool dup = false;
    for (const auto& u : unique) {
      if (std::abs(r.lambda - u.lambda) <=
              1e-8 * (std::abs(r.lambda) + std::abs(u.lambda) + 1e-30) &&
          hermitian_overlap(r.coefficients, u.coefficients) > 0.9999) {
        dup = true;
        break;
      }
    }
    if (!dup) unique.push_back(std::move(r));
  }
  if (static_cast<int>(unique.size()) > count) unique.resize(count);
  return unique;
}

std::vector<Resonance> solve_dense(const SpectralPencil& pencil,
                                   const EigensolveOptions& opt,
                                   const PencilWork& work) {
  const int dim = static_cast<int>(pencil.lhs.rows());
  const Eigen::MatrixXcd a = Eigen::MatrixXcd(pencil.lhs);
  const Eigen::MatrixXcd s = Eigen::MatrixXcd(work.s_complex);
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(a - work.sigma * s);
  if (!lu.isInvertible())
    throw SingularShift("shift collides with an eigenvalue; perturb the target");
  const Eigen::MatrixXcd t = lu.solve(s);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(t);
  if (ces.info() != Eigen::Success)
    throw NoConvergence("dense eigensolver failed");

  std::vector<int> order(dim);
  for (int i = 0; i < dim; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    return std::abs(ces.eigenvalues()(x)) > std::abs(ces.eigenvalues()(y));
  });
  std::vector<RankedEigenpair> raw;
  const int take = std::min(dim, opt.count + 4);
  for (int r = 0; r < take; ++r) {
    const int i = order[r];
    raw.push_back({ces.eigenvalues()(i), ces.eigenvectors().col(i)});
  }
  const SolveFn solve = [&lu](const Eigen::VectorXcd& x) {
    return Eigen::VectorXcd(lu.solve(x));
  };
  auto out = finalize_candidates(work, solve, raw, opt.count, opt.tol);
  if (static_cast<int>(out.size()) < opt.count)
    throw NoConvergence("dense path yielded fewer converged states than requested");
  return out;
}

}  // namespace

double tracking_overlap(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (!(na > 0.0) || !(nb > 0.0)) return 0.0;
  const int n = static_cast<int>(std::min(a.size(), b.size()));
  cplx s = 0.0;
  for (int k = 0; k < n; ++k) s += a(k) * b(k);
  return std::abs(s) / (na * nb);
}

std::vector<Resonance> eigensolve_near(const SpectralPencil& pencil,
                                       cplx target_energy,
                                       const EigensolveOptions& opt) {
  const int dim = static_cast<int>(pencil.lhs.rows());
  if (opt.count < 1) throw BadInput("eigensolve count must be positive");
  if (dim < opt.count + 1)
    throw BadInput("basis dimension too small for the requested count");

  PencilWork work;
  work.pencil = &pencil;
  work.s_complex = pencil.rhs.cast<cplx>();
  work.norm_a = matrix_scale(pencil.lhs);
  work.norm_s = matrix_scale(pencil.rhs);
  work.sigma = lambda_from_energy(target_energy, pencil.dilation);

  const bool dense_first =
      opt.mode == EigensolveOptions::Mode::Dense ||
      (opt.mode == EigensolveOptions::Mode::Auto &&
       (dim <= 64 || dim <= 3 * opt.count));
  if (dense_first) {
    if (dim > opt.dense_cutoff)
      throw BadInput("dense mode requested beyond the dense cutoff");
    return solve_dense(pencil, opt, work);
  }

  Eigen::SparseMatrix<cplx> shifted = pencil.lhs - work.sigma * work.s_complex;
  Eigen::SparseLU<Eigen::SparseMatrix<cplx>> lu;
  lu.compute(shifted);
  if (lu.info() != Eigen::Success)
    throw SingularShift("pencil factorization failed at the shift");

  auto op = [&](const Eigen::VectorXcd& x) -> Eigen::VectorXcd {
    return lu.solve(work.s_complex * x);
  };
  const SolveFn solve = [&lu](const Eigen::VectorXcd& x) {
    return Eigen::VectorXcd(lu.solve(x));
  };

  int ncv = opt.max_subspace > 0 ? opt.max_subspace
                                 : std::max(3 * opt.count + 20, 40);
  ncv = std::min(ncv, dim);
  Eigen::VectorXcd v0 = start_vector(dim, opt.seed);
  std::vector<RankedEigenpair> raw;
  std::vector<Resonance> best;
  for (int attempt = 0; attempt <= opt.max_restarts; ++attempt) {
    Eigen::VectorXcd restart;
    const bool ok =
        arnoldi_sweep(op, v0, ncv, opt.count + 2, 1e-11, raw, restart);
    auto result = finalize_candidates(work, solve, raw, opt.count, opt.tol);
    if (result.size() > best.size()) best = std::move(result);
    if (static_cast<int>(best.size()) >= opt.count && ok) break;
    if (static_cast<int>(best.size()) >= opt.count) break;
    if (restart.size() == dim && restart.norm() > 0.0) v0 = restart;
    ncv = std::min({dim, std::max(ncv + ncv / 2, ncv + 8), 400});
  }

  if (static_cast<int>(best.size()) < opt.count) {
    if (opt.mode == EigensolveOptions::Mode::Auto && dim <= opt.dense_cutoff)
      return solve_dense(pencil, opt, work);
    throw NoConvergence(
        "shift-invert iteration did not converge the requested resonances; "
        "adjust the dilation angle, basis size, or target");
  }
  if (static_cast<int>(best.size()) > opt.count) best.resize(opt.count);
  return best;
}

std::vector<cplx> eigensolve_all_energies(const SpectralPencil& pencil) {
  const Eigen::MatrixXd s = Eigen::MatrixXd(pencil.rhs);
  Eigen::LLT<Eigen::MatrixXd> llt(s);
  if (llt.info() != Eigen::Success)
    throw NoConvergence("volume-element matrix is not positive definite");
  const Eigen::MatrixXcd l = Eigen::MatrixXd(llt.matrixL()).cast<cplx>();
  const Eigen::MatrixXcd a = Eigen::MatrixXcd(pencil.lhs);
  // T = L^{-1} A L^{-T}, similar to the pencil
  const Eigen::MatrixXcd x = l.triangularView<Eigen::Lower>().solve(a);
  const Eigen::MatrixXcd t =
      l.triangularView<Eigen::Lower>().solve(x.transpose()).transpose();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(t, false);
  if (ces.info() != Eigen::Success)
    throw NoConvergence("dense full-spectrum eigensolver failed");
  std::vector<cplx> energies(ces.eigenvalues().size());
  for (int i = 0; i < ces.eigenvalues().size(); ++i)
    energies[i] = energy_from_lambda(ces.eigenvalues()(i), pencil.dilation);
  std::sort(energies.begin(), energies.end(), [](cplx u, cplx v) {
    if (u.real() != v.real()) return u.real() < v.real();
    return u.imag() < v.imag();
  });
  return energies;
}

ResonancePair select_pair(const std::vector<Resonance>& candidates,
                          const ResonancePair& reference,
                          const EigensolveOptions& opt) {
  const int n = static_cast<int>(candidates.size());
  if (n < 2) throw BadInput("select_pair needs at least two candidates");

  Eigen::MatrixXd score(n, 2);
  for (int i = 0; i < n; ++i) {
    score(i, 0) = tracking_overlap(candidates[i].coefficients,
                                   reference.first.coefficients);
    score(i, 1) = tracking_overlap(candidates[i].coefficients,
                                   reference.second.coefficients);
  }

  int first = -1, second = -1;
  double best = -1.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double s = score(i, 0) + score(j, 1);
      if (s > best) {
        best = s;
        first = i;
        second = j;
      }
    }

  constexpr double kWeakOverlap = 0.40;
  constexpr double kAmbiguityRatio = 0.99;

  // overlap failure: fall back to nearest complex energy for that slot
  auto nearest_by_energy = [&](cplx target, int exclude) {
    int arg = -1;
    double dist = std::numeric_limits<double>::max();
    for (int i = 0; i < n; ++i) {
      if (i == exclude) continue;
      const double d = std::abs(candidates[i].energy - target);
      if (d < dist) {
        dist = d;
        arg = i;
      }
    }
    return arg;
  };
  if (score(first, 0) < kWeakOverlap)
    first = nearest_by_energy(reference.first.energy, second);
  if (score(second, 1) < kWeakOverlap)
    second = nearest_by_energy(reference.second.energy, first);
  if (first < 0 || second < 0 || first == second)
    throw AmbiguousTracking("reference states cannot be matched to distinct candidates");

  const double split =
      std::abs(candidates[first].energy - candidates[second].energy);
  const bool degenerate = split <= 10.0 * opt.degeneracy_floor;

  // A third state competing for a slot is an intruder. A contest between the
  // two selected states themselves is harmless (kappa and eta are symmetric
  // under the swap) and surfaces through the degeneracy flag instead.
  for (int slot = 0; slot < 2; ++slot) {
    const int chosen = slot == 0 ? first : second;
    const int partner = slot == 0 ? second : first;
    if (score(chosen, slot) < kWeakOverlap) continue;
    for (int i = 0; i < n; ++i) {
      if (i == chosen || i == partner) continue;
      if (score(i, slot) >= kAmbiguityRatio * score(chosen, slot)) {
        const double esplit =
            std::abs(candidates[i].energy - candidates[chosen].energy);
        if (esplit > 10.0 * opt.degeneracy_floor)
          throw AmbiguousTracking("intruder state competes for a tracked slot");
      }
    }
  }

  ResonancePair out;
  out.first = candidates[first];
  out.second = candidates[second];
  out.degenerate = degenerate;
  return out;
}

ResonancePair initial_pair(const std::vector<Resonance>& candidates,
                           cplx target_energy, const EigensolveOptions& opt) {
  const int n = static_cast<int>(candidates.size());
  if (n < 2) throw BadInput("initial_pair needs at least two candidates");
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(candidates[a].energy - target_energy) <
           std::abs(candidates[b].energy - target_energy);
  });
  ResonancePair out;
  out.first = candidates[order[0]];
  out.second = candidates[order[1]];
  out.degenerate = std::abs(out.first.energy - out.second.energy) <=
                   10.0 * opt.degeneracy_floor;
  return out;
}

PencilPairSolver::PencilPairSolver(BasisSpec basis, DilationParameter dilation,
                                   EigensolveOptions options)
    : basis_(basis), dilation_(dilation), options_(options) {}

ResonancePair PencilPairSolver::solve(const FieldPoint& point,
                                      const ResonancePair& reference) {
  const cplx target = 0.5 * (reference.first.energy + reference.second.energy);
  const SpectralPencil pencil = assemble(basis_, point, dilation_);
  std::vector<Resonance> candidates;
  try {
    candidates = eigensolve_near(pencil, target, options_);
  } catch (const SingularShift&) {
    // nudge the shift off the eigenvalue and retry once
    const cplx nudged = target * (1.0 + 1e-10) + cplx(0.0, 1e-12);
    candidates = eigensolve_near(pencil, nudged, options_);
  }
  return select_pair(candidates, reference, options_);
}

}  // namespace ryd
