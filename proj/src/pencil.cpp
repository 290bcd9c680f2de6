#include "ryd/pencil.hpp"

#include <cmath>
#include <vector>

#include "ryd/errors.hpp"

namespace ryd {

namespace {
constexpr double kPi4 = 0.78539816339744831;
}

DilationParameter::DilationParameter(double modulus_, double angle_)
    : modulus(modulus_), angle(angle_) {
  if (!(modulus > 0.0)) throw BadInput("dilation modulus must be positive");
  if (!(angle >= 0.0 && angle < kPi4))
    throw BadInput("dilation angle must lie in [0, pi/4)");
}

double default_b_modulus(double gamma) {
  if (!(gamma > 0.0)) throw BadInput("default |b| rule needs gamma > 0");
  return std::sqrt(32.0 / 35.0) * std::pow(gamma, -1.0 / 6.0);
}

SpectralPencil assemble(const BasisSpec& basis, const FieldPoint& fields,
                        const DilationParameter& dilation) {
  const auto map = product_basis_map(basis);
  const auto h0 = h0_diagonal(basis);
  const auto rho2 = radial_power_matrix(basis, 2);
  const auto rho4 = radial_power_matrix(basis, 4);
  const int dim = map.dimension();
  const int size = basis.per_oscillator_size();

  const cplx b = dilation.b();
  const cplx b2 = b * b;
  const cplx b4 = b2 * b2;
  const cplx b6 = b4 * b2;
  const cplx b8 = b4 * b4;
  const cplx diamag = 0.25 * b8 * fields.gamma * fields.gamma;
  const cplx stark = b6 * fields.f;

  std::vector<Eigen::Triplet<cplx>> ta;
  std::vector<Eigen::Triplet<double>> ts;
  ta.reserve(static_cast<size_t>(dim) * 21);
  ts.reserve(static_cast<size_t>(dim) * 3);

  for (int i = 0; i < dim; ++i) {
    const auto [nm, nn] = map.states[i];
    for (int dm = -2; dm <= 2; ++dm) {
      const int pm = nm + dm;
      if (pm < 0 || pm >= size) continue;
      for (int dn = -2; dn <= 2; ++dn) {
        const int pn = nn + dn;
        if (pn < 0 || pn >= size) continue;
        const int j = map.index(pm, pn);
        if (j < 0) continue;

        const double r2m = rho2.dense(nm, pm);
        const double r2n = rho2.dense(nn, pn);
        const double r4m = rho4.dense(nm, pm);
        const double r4n = rho4.dense(nn, pn);
        const double dmm = dm == 0 ? 1.0 : 0.0;
        const double dnn = dn == 0 ? 1.0 : 0.0;

        cplx a = diamag * (r4m * r2n + r2m * r4n) +
                 stark * (r4m * dnn - dmm * r4n);
        if (dm == 0 && dn == 0)
          a += 2.0 * (h0[nm] + h0[nn]) - 4.0 * b2;
        if (a != 0.0) ta.emplace_back(i, j, a);

        const double s = r2m * dnn + dmm * r2n;
        if (s != 0.0) ts.emplace_back(i, j, s);
      }
    }
  }

  SpectralPencil pencil;
  pencil.basis = basis;
  pencil.fields = fields;
  pencil.dilation = dilation;
  pencil.lhs.resize(dim, dim);
  pencil.lhs.setFromTriplets(ta.begin(), ta.end());
  pencil.rhs.resize(dim, dim);
  pencil.rhs.setFromTriplets(ts.begin(), ts.end());
  pencil.lhs.makeCompressed();
  pencil.rhs.makeCompressed();
  return pencil;
}

cplx lambda_from_energy(cplx energy, const DilationParameter& dilation) {
  const cplx b2 = dilation.b() * dilation.b();
  return 1.0 + 2.0 * b2 * b2 * energy;
}

cplx energy_from_lambda(cplx lambda, const DilationParameter& dilation) {
  const cplx b2 = dilation.b() * dilation.b();
  return (lambda - 1.0) / (2.0 * b2 * b2);
}

}  // namespace ryd
