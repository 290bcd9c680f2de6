#include "ryd/units.hpp"

#include <algorithm>
#include <cctype>

#include "ryd/errors.hpp"

namespace ryd {

namespace {

// Unit tables. Hydrogen uses the standard atomic-unit field strengths; the
// Cu2O exciton values follow from mu = 0.38 m0 and eps_r = 7.50.
constexpr MaterialConstants kHydrogen{
    2.350517e5,    // B0 [T]
    5.142206e11,   // F0 [V/m]
    4.359744e-18,  // hartree [J]
    0.529177e-10,  // bohr [m]
    0.0,           // no gap
};

constexpr MaterialConstants kCuprousOxide{
    6.034e2,     // B0 [T]
    1.760e8,     // F0 [V/m]
    2.945e-20,   // effective hartree [J]
    1.044e-9,    // effective bohr [m]
    2.17208,     // band gap [eV]
};

}  // namespace

const MaterialConstants& material_constants(Material m) {
  switch (m) {
    case Material::Hydrogen: return kHydrogen;
    case Material::CuprousOxide: return kCuprousOxide;
  }
  throw BadInput("unknown material");
}

const char* material_name(Material m) {
  return m == Material::Hydrogen ? "hydrogen" : "cu2o";
}

Material material_from_name(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (s == "hydrogen" || s == "h") return Material::Hydrogen;
  if (s == "cu2o" || s == "cuprous-oxide" || s == "cuprousoxide")
    return Material::CuprousOxide;
  throw BadInput("unknown material '" + name + "' (expected hydrogen|cu2o)");
}

FieldPoint si_to_reduced(Material m, const SIFields& si) {
  const auto& c = material_constants(m);
  return FieldPoint{si.b_tesla / c.b0_tesla,
                    si.f_volt_per_cm * 100.0 / c.f0_volt_per_m};
}

SIFields reduced_to_si(Material m, const FieldPoint& p) {
  const auto& c = material_constants(m);
  return SIFields{p.gamma * c.b0_tesla, p.f * c.f0_volt_per_m / 100.0};
}

double energy_scale_ev(Material m) {
  return material_constants(m).hartree_joule / kElementaryChargeC;
}

std::complex<double> energy_reduced_to_ev(Material m, std::complex<double> e_reduced) {
  const double scale = energy_scale_ev(m);
  return {e_reduced.real() * scale + material_constants(m).gap_ev,
          e_reduced.imag() * scale};
}

std::complex<double> energy_ev_to_reduced(Material m, std::complex<double> e_ev) {
  const double scale = energy_scale_ev(m);
  return {(e_ev.real() - material_constants(m).gap_ev) / scale,
          e_ev.imag() / scale};
}

}  // namespace ryd
