#pragma once

#include <complex>
#include <string>

namespace ryd {

// Hydrogen-like Rydberg systems in parallel electric and magnetic fields are
// described by one reduced Hamiltonian once fields and energies are expressed
// in material-specific units: gamma = B/B0, f = F/F0, E in units of the
// effective hartree. The same reduced spectrum therefore serves hydrogen and
// the Cu2O exciton alike; only the unit table differs.

enum class Material { Hydrogen, CuprousOxide };

struct MaterialConstants {
  double b0_tesla;       // magnetic field unit B0
  double f0_volt_per_m;  // electric field unit F0
  double hartree_joule;  // effective hartree
  double bohr_m;         // effective Bohr radius
  double gap_ev;         // band gap added to Re(E) for absolute energies
};

const MaterialConstants& material_constants(Material m);
const char* material_name(Material m);
Material material_from_name(const std::string& name);  // "hydrogen"/"h", "cu2o", ...

// Reduced (dimensionless) field strengths of the parallel-field Hamiltonian.
struct FieldPoint {
  double gamma = 0.0;
  double f = 0.0;
};

// Laboratory fields. Electric field strength is quoted in V/cm at interfaces;
// all internal unit constants are per meter.
struct SIFields {
  double b_tesla = 0.0;
  double f_volt_per_cm = 0.0;
};

FieldPoint si_to_reduced(Material m, const SIFields& si);
SIFields reduced_to_si(Material m, const FieldPoint& p);

// eV per reduced energy unit.
double energy_scale_ev(Material m);

// Absolute energy: Re picks up the material band gap, Im is a plain rescale.
std::complex<double> energy_reduced_to_ev(Material m, std::complex<double> e_reduced);
std::complex<double> energy_ev_to_reduced(Material m, std::complex<double> e_ev);

// SI constants used to cross-check the unit table.
inline constexpr double kElementaryChargeC = 1.602176634e-19;
inline constexpr double kHbarJs = 1.054571817e-34;

}  // namespace ryd
