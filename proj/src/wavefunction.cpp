#include "ryd/wavefunction.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "ryd/errors.hpp"

namespace ryd {

namespace {

// Values of the normalized radial oscillator functions
//   R_{n,a}(z) = sqrt(2 n! / (n+a)!) z^a e^{-z^2/2} L_n^a(z^2)
// at z = value / b for every grid value (rows) and n = 0..n_max (columns).
// The exponential is folded into the Laguerre three-term recurrence, so the
// iterates stay on the scale of the final function values.
Eigen::MatrixXcd radial_table(const Eigen::VectorXd& values,
                              const BasisSpec& spec, cplx b) {
  const int count = spec.per_oscillator_size();
  const int a = std::abs(spec.m);

  std::vector<double> root_norm(static_cast<std::size_t>(count));
  double norm = 2.0;
  for (int j = 1; j <= a; ++j) norm /= static_cast<double>(j);
  root_norm[0] = std::sqrt(norm);
  for (int n = 1; n < count; ++n) {
    norm *= static_cast<double>(n) / static_cast<double>(n + a);
    root_norm[static_cast<std::size_t>(n)] = std::sqrt(norm);
  }

  Eigen::MatrixXcd table(values.size(), count);
  const cplx binv = 1.0 / b;
  for (Eigen::Index p = 0; p < values.size(); ++p) {
    const cplx z = values(p) * binv;
    const cplx x = z * z;
    cplx za = 1.0;
    for (int j = 0; j < a; ++j) za *= z;

    cplx prev = std::exp(-x / 2.0);  // e^{-x/2} L_0
    table(p, 0) = root_norm[0] * za * prev;
    if (count == 1) continue;
    cplx cur = (cplx(1.0 + a) - x) * prev;  // e^{-x/2} L_1
    table(p, 1) = root_norm[1] * za * cur;
    for (int n = 1; n + 1 < count; ++n) {
      const cplx next = ((cplx(2.0 * n + 1.0 + a) - x) * cur -
                         cplx(static_cast<double>(n + a)) * prev) /
                        cplx(static_cast<double>(n + 1));
      prev = cur;
      cur = next;
      table(p, static_cast<Eigen::Index>(n) + 1) =
          root_norm[static_cast<std::size_t>(n) + 1] * za * cur;
    }
  }
  return table;
}

void check_grid(const WaveGridSpec& grid) {
  if (grid.mu.size() < 1 || grid.nu.size() < 1)
    throw BadInput("evaluation grid is empty");
  if (grid.mu.minCoeff() < 0.0 || grid.nu.minCoeff() < 0.0)
    throw BadInput("semiparabolic grid coordinates must be nonnegative");
}

void check_coefficients(const Eigen::VectorXcd& coefficients,
                        const BasisSpec& spec) {
  if (coefficients.size() != spec.dimension())
    throw BadInput("coefficient vector does not match the basis dimension");
}

}  // namespace

WaveGridSpec default_grid(double extent, int points) {
  if (!(extent > 0.0) || points < 2)
    throw BadInput("grid needs a positive extent and at least two points");
  WaveGridSpec g;
  g.mu = Eigen::VectorXd::LinSpaced(points, 0.0, extent);
  g.nu = g.mu;
  g.phi = 0.0;
  return g;
}

StateEvaluation evaluate_state(const Eigen::VectorXcd& coefficients,
                               const BasisSpec& spec,
                               const DilationParameter& dilation,
                               const WaveGridSpec& grid) {
  check_coefficients(coefficients, spec);
  check_grid(grid);

  const int count = spec.per_oscillator_size();
  const ProductBasisMap map = product_basis_map(spec);
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(count, count);
  for (int i = 0; i < map.dimension(); ++i) {
    const auto [nm, nn] = map.states[static_cast<std::size_t>(i)];
    c(nm, nn) = coefficients(i);
  }

  const Eigen::MatrixXcd f_mu = radial_table(grid.mu, spec, dilation.b());
  const Eigen::MatrixXcd f_nu = radial_table(grid.nu, spec, dilation.b());
  const Eigen::MatrixXcd core = f_mu * c * f_nu.transpose();

  const double front = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  const cplx phase = std::polar(1.0, spec.m * grid.phi);

  StateEvaluation out;
  out.psi = core * (front * phase);
  out.psi_star = core * (front * std::conj(phase));
  return out;
}

Eigen::MatrixXd density_from_coefficients(const Eigen::VectorXcd& coefficients,
                                          const BasisSpec& spec,
                                          const DilationParameter& dilation,
                                          const WaveGridSpec& grid) {
  const StateEvaluation ev = evaluate_state(coefficients, spec, dilation, grid);
  return ev.psi.cwiseProduct(ev.psi_star).cwiseAbs();
}

WaveGrid density_grid(const std::vector<Resonance>& states,
                      const BasisSpec& spec, const DilationParameter& dilation,
                      const FieldPoint& fields, const WaveGridSpec& grid) {
  if (states.empty() || states.size() > 2)
    throw BadInput("density grid expects one or two states");
  WaveGrid out;
  out.mu_values = grid.mu;
  out.nu_values = grid.nu;
  out.phi = grid.phi;
  out.fields = fields;
  out.spec = spec;
  out.dilation = dilation;
  for (const Resonance& state : states) {
    out.energies.push_back(state.energy);
    out.densities.push_back(
        density_from_coefficients(state.coefficients, spec, dilation, grid));
  }
  return out;
}

cplx c_product(const Eigen::VectorXcd& v, const Eigen::VectorXcd& w) {
  if (v.size() != w.size()) throw BadInput("c-product of unequal lengths");
  return v.cwiseProduct(w).sum();
}

cplx c_norm(const Eigen::VectorXcd& v, const BasisSpec& spec) {
  check_coefficients(v, spec);
  const RadialOperator rho2 = radial_power_matrix(spec, 2);
  const ProductBasisMap map = product_basis_map(spec);

  // quadratic form with S = rho^2 x 1 + 1 x rho^2, assembled on the fly from
  // the tridiagonal single-oscillator blocks
  cplx acc = 0.0;
  for (int i = 0; i < map.dimension(); ++i) {
    const auto [nm, nn] = map.states[static_cast<std::size_t>(i)];
    cplx row = (rho2.dense(nm, nm) + rho2.dense(nn, nn)) * v(i);
    if (nm > 0 && map.index(nm - 1, nn) >= 0)
      row += rho2.dense(nm, nm - 1) * v(map.index(nm - 1, nn));
    if (nm + 1 < spec.per_oscillator_size() && map.index(nm + 1, nn) >= 0)
      row += rho2.dense(nm, nm + 1) * v(map.index(nm + 1, nn));
    if (nn > 0 && map.index(nm, nn - 1) >= 0)
      row += rho2.dense(nn, nn - 1) * v(map.index(nm, nn - 1));
    if (nn + 1 < spec.per_oscillator_size() && map.index(nm, nn + 1) >= 0)
      row += rho2.dense(nn, nn + 1) * v(map.index(nm, nn + 1));
    acc += v(i) * row;
  }
  return acc;
}

Eigen::VectorXcd averaged_vector(const Eigen::VectorXcd& v1,
                                 const Eigen::VectorXcd& v2) {
  if (v1.size() != v2.size())
    throw BadInput("cannot average vectors of unequal length");
  const cplx overlap = v1.dot(v2);  // conjugated: the identity-type overlap
  const double scale = v1.norm() * v2.norm();
  if (std::abs(overlap) <= 1e-12 * scale || scale == 0.0)
    throw GaugeMismatch("overlap too small to define a common gauge");
  const cplx u = std::conj(overlap) / std::abs(overlap);
  return (v1 + u * v2) / 2.0;
}

void write_wave_grid(std::ostream& out, const WaveGrid& grid) {
  char buf[512];
  auto line = [&](const char* fmt, auto... args) {
    std::snprintf(buf, sizeof(buf), fmt, args...);
    out << buf << '\n';
  };
  line("# gamma = %.16e", grid.fields.gamma);
  line("# f = %.16e", grid.fields.f);
  line("# n_max = %d", grid.spec.n_max);
  line("# m = %d", grid.spec.m);
  line("# b_modulus = %.16e", grid.dilation.modulus);
  line("# b_angle = %.16e", grid.dilation.angle);
  line("# phi = %.16e", grid.phi);
  for (std::size_t k = 0; k < grid.energies.size(); ++k)
    line("# energy_%zu = %.16e %.16e", k, grid.energies[k].real(),
         grid.energies[k].imag());
  out << "# mu\tnu";
  for (std::size_t k = 0; k < grid.densities.size(); ++k)
    out << "\tdensity_" << k;
  out << '\n';

  for (Eigen::Index i = 0; i < grid.mu_values.size(); ++i)
    for (Eigen::Index j = 0; j < grid.nu_values.size(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.16e\t%.16e", grid.mu_values(i),
                    grid.nu_values(j));
      out << buf;
      for (const Eigen::MatrixXd& d : grid.densities) {
        std::snprintf(buf, sizeof(buf), "\t%.16e", d(i, j));
        out << buf;
      }
      out << '\n';
    }
}

void write_wave_grid(const std::string& path, const WaveGrid& grid) {
  std::ofstream out(path);
  if (!out) throw BadInput("cannot open output file: " + path);
  write_wave_grid(out, grid);
}

}  // namespace ryd
