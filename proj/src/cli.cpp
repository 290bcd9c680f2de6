#include "ryd/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "CLI11.hpp"
#include "ryd/ep_search.hpp"
#include "ryd/errors.hpp"
#include "ryd/record_io.hpp"
#include "ryd/scanner.hpp"
#include "ryd/units.hpp"
#include "ryd/verification.hpp"
#include "ryd/wavefunction.hpp"

namespace ryd {
namespace {

namespace fs = std::filesystem;
using Manifest = std::vector<std::pair<std::string, std::string>>;

std::string fmt16(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string fmt16(cplx v) { return fmt16(v.real()) + " " + fmt16(v.imag()); }

// Human-oriented precision for the unit-conversion lines.
std::string fmt_si(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

int default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  const int cores = hw == 0 ? 1 : static_cast<int>(hw);
  return std::min(cores, 9);
}

// Common output/runtime options shared by every subcommand.
struct Common {
  std::string out = ".";
  int threads = default_threads();
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out,
                  "output directory for result files and manifest.txt")
      ->capture_default_str();
  cmd->add_option("--threads", c.threads,
                  "worker threads, capped at 9 (one per stencil point)")
      ->capture_default_str();
}

fs::path prepare_out_dir(Common& c) {
  c.threads = std::clamp(c.threads, 1, 9);
  Eigen::setNbThreads(c.threads);
  fs::path dir(c.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw BadInput("cannot create output directory '" + c.out + "': " + ec.message());
  return dir;
}

void write_text_file(const fs::path& path,
                     const std::function<void(std::ostream&)>& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw BadInput("cannot open '" + path.string() + "' for writing");
  body(f);
  f.flush();
  if (!f) throw BadInput("failed while writing '" + path.string() + "'");
}

void emit_manifest(const fs::path& dir, const Manifest& entries) {
  write_text_file(dir / "manifest.txt",
                  [&](std::ostream& f) { write_manifest(f, entries); });
}

void append_common(Manifest& m, const Common& c) {
  m.emplace_back("out", c.out);
  m.emplace_back("threads", std::to_string(c.threads));
}

// ---------------------------------------------------------------- convert

struct ConvertArgs {
  Common common;
  std::string material;
  std::optional<double> gamma;
  std::optional<double> f;
  std::optional<double> energy_re;
  std::optional<double> energy_im;
};

int do_convert(const ConvertArgs& a, std::ostream& out) {
  Common common = a.common;
  const Material mat = material_from_name(a.material);
  if (a.energy_im && !a.energy_re)
    throw BadInput("--energy-im needs --energy-re");
  if (!a.gamma && !a.f && !a.energy_re)
    throw BadInput("nothing to convert: pass --gamma, --f, or --energy-re");

  const fs::path dir = prepare_out_dir(common);
  Manifest m{{"command", "convert"}, {"material", material_name(mat)}};
  if (a.gamma) m.emplace_back("gamma", fmt16(*a.gamma));
  if (a.f) m.emplace_back("f", fmt16(*a.f));
  if (a.energy_re) m.emplace_back("energy_re", fmt16(*a.energy_re));
  if (a.energy_im) m.emplace_back("energy_im", fmt16(*a.energy_im));
  append_common(m, common);
  emit_manifest(dir, m);

  const SIFields si =
      reduced_to_si(mat, FieldPoint{a.gamma.value_or(0.0), a.f.value_or(0.0)});
  if (a.gamma) out << "B = " << fmt_si(si.b_tesla) << " T\n";
  if (a.f) out << "F = " << fmt_si(si.f_volt_per_cm) << " V/cm\n";
  if (a.energy_re)
    out << "E_re = "
        << fmt_si(energy_reduced_to_ev(mat, cplx(*a.energy_re, 0.0)).real())
        << " eV\n";
  if (a.energy_im)
    out << "E_im = "
        << fmt_si(energy_reduced_to_ev(mat, cplx(*a.energy_im, 0.0)).real())
        << " eV\n";
  return 0;
}

// ------------------------------------------------------------------- scan

struct ScanArgs {
  Common common;
  double ratio = 0.0;
  double gamma_min = 0.0;
  double gamma_max = 0.0;
  int steps = 0;
  int n_max = 0;
  int m = 0;
  std::vector<double> window;  // empty or {min, max} on Re E
  int tracks = 8;
  double rotation = 0.15;
  double overlap_threshold = 0.5;
  double tol = 1e-10;
  unsigned long long seed = EigensolveOptions{}.seed;
};

int do_scan(const ScanArgs& a, std::ostream& out) {
  Common common = a.common;
  ScanConfig config;
  config.ratio = a.ratio;
  config.gamma_range = {a.gamma_min, a.gamma_max};
  config.steps = a.steps;
  config.spec = BasisSpec{a.n_max, a.m};
  config.energy_window = a.window.empty()
                             ? std::pair<double, double>{-1.5e-2, -0.9e-2}
                             : std::pair<double, double>{a.window[0], a.window[1]};
  if (!(config.energy_window.first < config.energy_window.second))
    throw BadInput("--window needs min < max");
  config.track_count = a.tracks;
  config.rotation_angle = a.rotation;
  config.overlap_threshold = a.overlap_threshold;
  config.eigensolve.tol = a.tol;
  config.eigensolve.seed = a.seed;

  const fs::path dir = prepare_out_dir(common);
  Manifest m{{"command", "scan"},
             {"ratio", fmt16(config.ratio)},
             {"gamma_min", fmt16(config.gamma_range.first)},
             {"gamma_max", fmt16(config.gamma_range.second)},
             {"steps", std::to_string(config.steps)},
             {"nmax", std::to_string(a.n_max)},
             {"m", std::to_string(a.m)},
             {"window_min", fmt16(config.energy_window.first)},
             {"window_max", fmt16(config.energy_window.second)},
             {"tracks", std::to_string(config.track_count)},
             {"rotation_angle", fmt16(config.rotation_angle)},
             {"overlap_threshold", fmt16(config.overlap_threshold)},
             {"tol", fmt16(config.eigensolve.tol)},
             {"seed", std::to_string(config.eigensolve.seed)}};
  append_common(m, common);
  emit_manifest(dir, m);

  const ScanResult result = scan_spectrum(config);
  const auto crossings = detect_avoided_crossings(result.tracks);

  write_text_file(dir / "spectrum.tsv",
                  [&](std::ostream& f) { write_scan_tsv(f, result); });
  write_text_file(dir / "crossings.tsv",
                  [&](std::ostream& f) { write_crossings_tsv(f, crossings); });

  out << "tracks = " << result.tracks.size() << "\n"
      << "breaks = " << result.breaks.size() << "\n"
      << "crossings = " << crossings.size() << "\n";
  return 0;
}

// ---------------------------------------------------------------- find-ep

struct FindEpArgs {
  Common common;
  double gamma = 0.0;
  double f = 0.0;
  double energy_re = 0.0;
  double energy_im = 0.0;
  int n_max = 0;
  int m = 0;
  double rotation = 0.15;
  bool fixed_dilation = false;
  int max_iterations = EpSearchOptions{}.max_iterations;
  double degeneracy_floor = EpSearchOptions{}.degeneracy_floor;
  double step_tolerance = EpSearchOptions{}.step_tolerance;
  double initial_step = EpSearchOptions{}.initial_step_fraction;
  int winding_samples = WindingOptions{}.samples;
  double tol = 1e-10;
  unsigned long long seed = EigensolveOptions{}.seed;
};

int do_find_ep(const FindEpArgs& a, std::ostream& out) {
  Common common = a.common;
  const BasisSpec spec{a.n_max, a.m};
  const FieldPoint seed_point{a.gamma, a.f};
  const cplx seed_energy{a.energy_re, a.energy_im};

  EpSearchOptions opt;
  opt.initial_step_fraction = a.initial_step;
  opt.max_iterations = a.max_iterations;
  opt.degeneracy_floor = a.degeneracy_floor;
  opt.step_tolerance = a.step_tolerance;
  opt.winding.samples = a.winding_samples;
  opt.rotation_angle = a.rotation;
  opt.adapt_dilation = !a.fixed_dilation;
  opt.eigensolve.tol = a.tol;
  opt.eigensolve.seed = a.seed;

  const fs::path dir = prepare_out_dir(common);
  Manifest m{{"command", "find-ep"},
             {"gamma", fmt16(a.gamma)},
             {"f", fmt16(a.f)},
             {"energy_re", fmt16(a.energy_re)},
             {"energy_im", fmt16(a.energy_im)},
             {"nmax", std::to_string(a.n_max)},
             {"m", std::to_string(a.m)},
             {"rotation_angle", fmt16(a.rotation)},
             {"adapt_dilation", a.fixed_dilation ? "0" : "1"},
             {"max_iterations", std::to_string(a.max_iterations)},
             {"degeneracy_floor", fmt16(a.degeneracy_floor)},
             {"step_tolerance", fmt16(a.step_tolerance)},
             {"initial_step", fmt16(a.initial_step)},
             {"winding_samples", std::to_string(a.winding_samples)},
             {"tol", fmt16(a.tol)},
             {"seed", std::to_string(a.seed)}};
  append_common(m, common);
  emit_manifest(dir, m);

  const EPRecord record = find_ep(seed_point, seed_energy, spec, opt);

  const StoredEpRun run{spec,       a.rotation, !a.fixed_dilation, a.seed,
                        seed_point, seed_energy, record};
  write_ep_run((dir / "ep_record.txt").string(), run);
  write_text_file(dir / "iterations.tsv",
                  [&](std::ostream& f) { write_iteration_tsv(f, record); });

  if (!record.history.empty()) {
    const OctagonModel& model = record.history.back().model;
    try {
      const PathResult paths = resonance_paths(model, a.winding_samples);
      write_text_file(dir / "final_loop.tsv",
                      [&](std::ostream& f) { write_path_tsv(f, paths); });
    } catch (const Error& e) {
      out << "final_loop = unavailable (" << e.code() << ")\n";
    }
    try {
      WindingOptions wopt;
      wopt.samples = a.winding_samples;
      const VerificationReport report = verify_model(model, wopt);
      write_text_file(dir / "certificate.txt",
                      [&](std::ostream& f) { write_certificate(f, report); });
    } catch (const Error& e) {
      out << "certificate = unavailable (" << e.code() << ")\n";
    }
  }

  out << "status = " << search_status_name(record.status) << "\n"
      << "gamma_ep = " << fmt16(record.position.gamma) << "\n"
      << "f_ep = " << fmt16(record.position.f) << "\n"
      << "energy = " << fmt16(record.energy) << "\n"
      << "winding = " << record.winding << "\n"
      << "energy_split = " << fmt16(record.energy_split) << "\n"
      << "iterations = " << record.iterations << "\n";

  if (record.status == SearchStatus::CapReached)
    throw NoConvergence("iteration cap " + std::to_string(a.max_iterations) +
                        " reached before degeneracy; best split " +
                        fmt16(record.degeneracy_floor));
  if (record.status == SearchStatus::Diverged)
    throw Diverged("recenter steps kept growing; last center gamma = " +
                   fmt16(record.position.gamma) +
                   ", f = " + fmt16(record.position.f));
  return 0;
}

// ----------------------------------------------------------------- verify

struct VerifyArgs {
  Common common;
  std::string record_path;
  bool hard = false;
  int winding_samples = WindingOptions{}.samples;
  int hard_samples = 16;
};

double dilation_modulus_for(const StoredEpRun& run, const FieldPoint& center) {
  return run.adapt_dilation ? default_b_modulus(center.gamma)
                            : default_b_modulus(run.seed_point.gamma);
}

int do_verify(const VerifyArgs& a, std::ostream& out) {
  Common common = a.common;
  const StoredEpRun run = read_ep_run_file(a.record_path);
  if (run.record.history.empty())
    throw BadInput("record has no iterations to verify");
  const OctagonModel& model = run.record.history.back().model;

  const fs::path dir = prepare_out_dir(common);
  Manifest m{{"command", "verify"},
             {"record", a.record_path},
             {"hard", a.hard ? "1" : "0"},
             {"winding_samples", std::to_string(a.winding_samples)},
             {"hard_samples", std::to_string(a.hard_samples)}};
  append_common(m, common);
  emit_manifest(dir, m);

  WindingOptions wopt;
  wopt.samples = a.winding_samples;
  const VerificationReport report = verify_model(model, wopt);
  write_text_file(dir / "certificate.txt",
                  [&](std::ostream& f) { write_certificate(f, report); });
  write_text_file(dir / "loop.tsv",
                  [&](std::ostream& f) { write_path_tsv(f, report.paths); });

  out << "winding = " << report.winding.winding << "\n"
      << "winding_diagnostic = " << fmt16(report.winding.diagnostic) << "\n"
      << "paths_closed = " << (report.paths.closed ? 1 : 0) << "\n"
      << "paths_exchanged = " << (report.paths.exchanged ? 1 : 0) << "\n"
      << "certificate = " << (report.certificate ? 1 : 0) << "\n";

  if (a.hard) {
    EigensolveOptions eopt;
    eopt.seed = run.solver_seed;
    PencilPairSolver solver(
        run.spec, DilationParameter{dilation_modulus_for(run, model.center),
                                    run.rotation_angle},
        eopt);
    const SpectralPencil pencil =
        assemble(run.spec, model.center, solver.dilation());
    const cplx target = run.record.energy;
    const auto candidates = eigensolve_near(pencil, target, eopt);
    const ResonancePair reference = initial_pair(candidates, target, eopt);
    const HardVerification hard =
        hard_verify(solver, model, reference, a.hard_samples);
    write_text_file(dir / "hard_certificate.txt", [&](std::ostream& f) {
      Manifest lines{
          {"hard_winding", std::to_string(hard.winding.winding)},
          {"hard_winding_diagnostic", fmt16(hard.winding.diagnostic)},
          {"hard_samples", std::to_string(a.hard_samples)},
          {"energies_exchanged", hard.energies_exchanged ? "1" : "0"},
          {"vectors_exchanged", hard.vectors_exchanged ? "1" : "0"},
          {"max_energy_deviation", fmt16(hard.max_energy_deviation)},
          {"deviation_bound", fmt16(hard.deviation_bound)},
          {"model_consistent", hard.model_consistent ? "1" : "0"}};
      write_manifest(f, lines);
    });
    out << "hard_winding = " << hard.winding.winding << "\n"
        << "energies_exchanged = " << (hard.energies_exchanged ? 1 : 0) << "\n"
        << "vectors_exchanged = " << (hard.vectors_exchanged ? 1 : 0) << "\n"
        << "max_energy_deviation = " << fmt16(hard.max_energy_deviation) << "\n"
        << "deviation_bound = " << fmt16(hard.deviation_bound) << "\n"
        << "model_consistent = " << (hard.model_consistent ? 1 : 0) << "\n";
  }
  return 0;
}

// ------------------------------------------------------------ wavefunction

struct WaveArgs {
  Common common;
  std::string record_path;
  bool average = false;
  double extent = 60.0;
  int points = 256;
  double phi = 0.0;
  std::optional<double> b_modulus;
};

int do_wavefunction(const WaveArgs& a, std::ostream& out) {
  Common common = a.common;
  const StoredEpRun run = read_ep_run_file(a.record_path);
  const FieldPoint position = run.record.position;
  const cplx target = run.record.energy;

  double modulus;
  if (a.b_modulus) {
    modulus = *a.b_modulus;
  } else {
    if (!(position.gamma > 0.0))
      throw BadInput("record has gamma <= 0; pass --b-modulus explicitly");
    modulus = dilation_modulus_for(run, position);
  }
  const DilationParameter dilation{modulus, run.rotation_angle};

  const fs::path dir = prepare_out_dir(common);
  Manifest m{{"command", "wavefunction"},
             {"record", a.record_path},
             {"average", a.average ? "1" : "0"},
             {"extent", fmt16(a.extent)},
             {"points", std::to_string(a.points)},
             {"phi", fmt16(a.phi)},
             {"b_modulus", fmt16(modulus)}};
  append_common(m, common);
  emit_manifest(dir, m);

  SpectralPencil pencil = assemble(run.spec, position, dilation);
  EigensolveOptions eopt;
  eopt.seed = run.solver_seed;
  std::vector<Resonance> candidates = eigensolve_near(pencil, target, eopt);
  if (candidates.size() < 2)
    throw NoConvergence("need two states near the recorded energy, got " +
                        std::to_string(candidates.size()));
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](const Resonance& x, const Resonance& y) {
                     return std::abs(x.energy - target) <
                            std::abs(y.energy - target);
                   });
  candidates.resize(2);

  WaveGridSpec grid = default_grid(a.extent, a.points);
  grid.phi = a.phi;
  WaveGrid wg = density_grid(candidates, run.spec, dilation, position, grid);
  if (a.average) {
    const Eigen::VectorXcd avg = averaged_vector(candidates[0].coefficients,
                                                 candidates[1].coefficients);
    wg.energies.push_back(0.5 * (candidates[0].energy + candidates[1].energy));
    wg.densities.push_back(
        density_from_coefficients(avg, run.spec, dilation, grid));
  }
  write_wave_grid((dir / "density.tsv").string(), wg);

  out << "first_energy = " << fmt16(candidates[0].energy) << "\n"
      << "second_energy = " << fmt16(candidates[1].energy) << "\n"
      << "first_c_norm = " << fmt16(std::abs(candidates[0].c_norm)) << "\n"
      << "second_c_norm = " << fmt16(std::abs(candidates[1].c_norm)) << "\n";
  for (std::size_t k = 0; k < wg.densities.size(); ++k) {
    const char* label = k == 0 ? "first_peak" : k == 1 ? "second_peak" : "average_peak";
    out << label << " = " << fmt16(wg.densities[k].maxCoeff()) << "\n";
  }
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"resonance spectra and exceptional points of Rydberg systems "
               "in parallel electric and magnetic fields",
               "rydep"};
  app.require_subcommand(1);

  ConvertArgs convert_args;
  CLI::App* convert = app.add_subcommand(
      "convert", "translate reduced field strengths and energies to SI values");
  convert->add_option("--material", convert_args.material,
                      "material name: h, hydrogen, or cu2o")
      ->required();
  convert->add_option("--gamma", convert_args.gamma, "reduced magnetic field");
  convert->add_option("--f", convert_args.f, "reduced electric field");
  convert->add_option("--energy-re", convert_args.energy_re,
                      "reduced energy real part");
  convert->add_option("--energy-im", convert_args.energy_im,
                      "reduced energy imaginary part");
  add_common(convert, convert_args.common);

  ScanArgs scan_args;
  CLI::App* scan = app.add_subcommand(
      "scan", "trace the resonance spectrum along a fixed gamma/f ray");
  scan->add_option("--ratio", scan_args.ratio, "gamma / f along the ray")
      ->required();
  scan->add_option("--gamma-min", scan_args.gamma_min, "first gamma value")
      ->required();
  scan->add_option("--gamma-max", scan_args.gamma_max, "last gamma value")
      ->required();
  scan->add_option("--steps", scan_args.steps, "number of grid points")
      ->required();
  scan->add_option("--nmax", scan_args.n_max, "basis size in each oscillator")
      ->required();
  scan->add_option("--m", scan_args.m, "azimuthal quantum number")
      ->capture_default_str();
  scan->add_option("--window", scan_args.window,
                   "Re E window as min,max (default -1.5e-2,-0.9e-2)")
      ->delimiter(',')
      ->expected(2);
  scan->add_option("--tracks", scan_args.tracks, "levels kept per grid point")
      ->capture_default_str();
  scan->add_option("--rotation", scan_args.rotation, "complex-rotation angle")
      ->capture_default_str();
  scan->add_option("--overlap-threshold", scan_args.overlap_threshold,
                   "smallest c-product overlap continuing a track")
      ->capture_default_str();
  scan->add_option("--tol", scan_args.tol, "eigensolver residual tolerance")
      ->capture_default_str();
  scan->add_option("--seed", scan_args.seed, "eigensolver start-vector seed")
      ->capture_default_str();
  add_common(scan, scan_args.common);

  FindEpArgs find_args;
  CLI::App* find = app.add_subcommand(
      "find-ep", "iterate the nine-point stencil search to an exceptional point");
  find->add_option("--gamma", find_args.gamma, "seed gamma")->required();
  find->add_option("--f", find_args.f, "seed f")->required();
  find->add_option("--energy-re", find_args.energy_re,
                   "seed energy real part")
      ->required();
  find->add_option("--energy-im", find_args.energy_im,
                   "seed energy imaginary part")
      ->capture_default_str();
  find->add_option("--nmax", find_args.n_max, "basis size in each oscillator")
      ->required();
  find->add_option("--m", find_args.m, "azimuthal quantum number")
      ->capture_default_str();
  find->add_option("--rotation", find_args.rotation, "complex-rotation angle")
      ->capture_default_str();
  find->add_flag("--fixed-dilation", find_args.fixed_dilation,
                 "freeze |b| at the seed value instead of re-dilating per center");
  find->add_option("--max-iterations", find_args.max_iterations,
                   "stencil iteration cap")
      ->capture_default_str();
  find->add_option("--degeneracy-floor", find_args.degeneracy_floor,
                   "|E1 - E2| that counts as coalesced")
      ->capture_default_str();
  find->add_option("--step-tolerance", find_args.step_tolerance,
                   "relative recenter displacement that ends the search")
      ->capture_default_str();
  find->add_option("--initial-step", find_args.initial_step,
                   "first stencil radius as a fraction of the seed fields")
      ->capture_default_str();
  find->add_option("--winding-samples", find_args.winding_samples,
                   "loop samples for the winding certificate")
      ->capture_default_str();
  find->add_option("--tol", find_args.tol, "eigensolver residual tolerance")
      ->capture_default_str();
  find->add_option("--seed", find_args.seed, "eigensolver start-vector seed")
      ->capture_default_str();
  add_common(find, find_args.common);

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand(
      "verify", "recompute winding and exchange certificates from a stored record");
  verify->add_option("--record", verify_args.record_path, "ep_record.txt path")
      ->required();
  verify->add_flag("--hard", verify_args.hard,
                   "re-solve the pencil around the loop instead of trusting the model");
  verify->add_option("--winding-samples", verify_args.winding_samples,
                     "loop samples for the model certificate")
      ->capture_default_str();
  verify->add_option("--hard-samples", verify_args.hard_samples,
                     "re-solved points on the loop with --hard")
      ->capture_default_str();
  add_common(verify, verify_args.common);

  WaveArgs wave_args;
  CLI::App* wave = app.add_subcommand(
      "wavefunction", "density grids of the two states recorded at a search point");
  wave->add_option("--record", wave_args.record_path, "ep_record.txt path")
      ->required();
  wave->add_flag("--average", wave_args.average,
                 "add the density of the phase-aligned average vector");
  wave->add_option("--extent", wave_args.extent, "grid reach in mu and nu")
      ->capture_default_str();
  wave->add_option("--points", wave_args.points, "grid points per axis")
      ->capture_default_str();
  wave->add_option("--phi", wave_args.phi, "azimuthal angle of the section")
      ->capture_default_str();
  wave->add_option("--b-modulus", wave_args.b_modulus,
                   "override the dilation modulus used for the solve");
  add_common(wave, wave_args.common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "ERROR BadInput: " << e.what() << "\n";
    return 2;
  }

  try {
    if (convert->parsed()) return do_convert(convert_args, out);
    if (scan->parsed()) return do_scan(scan_args, out);
    if (find->parsed()) return do_find_ep(find_args, out);
    if (verify->parsed()) return do_verify(verify_args, out);
    if (wave->parsed()) return do_wavefunction(wave_args, out);
  } catch (const Error& e) {
    err << "ERROR " << e.code() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "ERROR Internal: " << e.what() << "\n";
    return 1;
  }
  err << "ERROR BadInput: no subcommand given\n";
  return 2;
}

}  // namespace ryd
