#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "ryd/cli.hpp"
#include "ryd/record_io.hpp"
#include "ryd/units.hpp"

namespace fs = std::filesystem;
using namespace ryd;

namespace {

struct CliRun {
  int status = -1;
  std::string out;
  std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliRun r;
  r.status = run_command(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("rydep_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  REQUIRE(f.good());
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

// Value following "key = " on its own line; empty when absent.
std::string value_of(const std::string& text, const std::string& key) {
  const std::string needle = key + " = ";
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind(needle, 0) == 0) return line.substr(needle.size());
  return {};
}

int data_rows(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int rows = 0;
  while (std::getline(in, line))
    if (!line.empty() && line.front() != '#') ++rows;
  return rows;
}

// A one-iteration record whose final model has an exactly known simple zero
// of eta inside the stencil ellipse: eta = e(x - x0) + i q (y - y0) winds
// once around the loop, so verification must certify it.
StoredEpRun planted_run() {
  OctagonModel model;
  model.center = FieldPoint{8.6e-4, 2.0e-5};
  model.h_gamma = 4.0e-5;
  model.h_f = 6.0e-7;
  model.a = cplx(-1.53e-2, -1.6e-6);
  model.b = cplx(5.0e-2, 1.0e-2);
  model.c = cplx(-25.0, 4.0);
  const double x0 = 1.2e-5, y0 = -1.5e-7;
  model.e = cplx(2.0e-4, 0.0);
  model.f = cplx(0.0, 3.0e-3);
  model.d = -(model.e * x0 + model.f * y0);
  model.g = model.h = model.i = cplx(0.0, 0.0);
  model.eta_defect = 0.0;

  EpIteration it;
  it.index = 0;
  it.stencil = OctagonStencil{model.center, model.h_gamma, model.h_f};
  it.model = model;
  it.root = ModelRoot{x0, y0, true, 0.0, 1.0};
  it.energy_split = 3.0e-10;
  it.ep_estimate = cplx(-7.65e-3, -8.5e-7);
  it.winding = 1;
  it.winding_diagnostic = 1.0e-4;
  it.winding_valid = true;

  EPRecord rec;
  rec.status = SearchStatus::Converged;
  rec.converged = true;
  rec.position = FieldPoint{model.center.gamma + x0, model.center.f + y0};
  rec.energy = it.ep_estimate;
  rec.winding = 1;
  rec.winding_diagnostic = 1.0e-4;
  rec.energy_split = 3.0e-10;
  rec.degeneracy_floor = 3.0e-10;
  rec.iterations = 1;
  rec.final_pair.first.energy = cplx(-7.65e-3, -8.4e-7);
  rec.final_pair.second.energy = cplx(-7.65e-3, -8.6e-7);
  rec.final_pair.first.c_norm = cplx(2.0e-5, -1.0e-5);
  rec.final_pair.second.c_norm = cplx(-2.0e-5, 1.0e-5);
  rec.final_pair.degenerate = true;
  rec.history.push_back(it);

  StoredEpRun run;
  run.spec = BasisSpec{12, 0};
  run.rotation_angle = 0.15;
  run.adapt_dilation = true;
  run.solver_seed = 0x00c0ffeeULL;
  run.seed_point = FieldPoint{1.481e-3, 1.851e-5};
  run.seed_energy = cplx(-6.9e-3, 0.0);
  run.record = rec;
  return run;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("convert reproduces the caption field strengths") {
  const fs::path dir = fresh_dir("convert");
  const CliRun cu = run_cli({"convert", "--material", "cu2o", "--gamma",
                             "3e-3", "--out", dir.string()});
  CHECK(cu.status == 0);
  CHECK(cu.err.empty());
  const std::string b_line = value_of(cu.out, "B");
  REQUIRE(!b_line.empty());
  const double b_tesla = std::strtod(b_line.c_str(), nullptr);
  CHECK(std::round(b_tesla * 10.0) / 10.0 == doctest::Approx(1.8));
  CHECK(b_line.find(" T") != std::string::npos);

  const CliRun h = run_cli({"convert", "--material", "h", "--gamma", "3e-3",
                            "--f", "1e-4", "--energy-re", "-6.9e-3", "--out",
                            dir.string()});
  CHECK(h.status == 0);
  const double b_h = std::strtod(value_of(h.out, "B").c_str(), nullptr);
  CHECK(std::round(b_h) == doctest::Approx(705.0));
  CHECK(value_of(h.out, "F").find(" V/cm") != std::string::npos);
  const double e_ev = std::strtod(value_of(h.out, "E_re").c_str(), nullptr);
  const double e_ref =
      energy_reduced_to_ev(Material::Hydrogen, cplx(-6.9e-3, 0.0)).real();
  CHECK(e_ev == doctest::Approx(e_ref).epsilon(1e-9));

  const std::string manifest = slurp(dir / "manifest.txt");
  CHECK(manifest.find("command = convert") != std::string::npos);
  CHECK(manifest.find("material = ") != std::string::npos);
  CHECK(manifest.find("threads = ") != std::string::npos);
}

TEST_CASE("convert rejects unusable requests") {
  CliRun r = run_cli({"convert", "--gamma", "1e-3"});
  CHECK(r.status != 0);
  CHECK(r.err.rfind("ERROR BadInput: ", 0) == 0);

  r = run_cli({"convert", "--material", "xenon", "--gamma", "1e-3"});
  CHECK(r.status != 0);
  CHECK(r.err.rfind("ERROR BadInput: ", 0) == 0);

  const fs::path dir = fresh_dir("convert_bad");
  r = run_cli({"convert", "--material", "h", "--out", dir.string()});
  CHECK(r.status != 0);
  CHECK(r.err.find("nothing to convert") != std::string::npos);

  r = run_cli({"convert", "--material", "h", "--energy-im", "1e-6", "--out",
               dir.string()});
  CHECK(r.status != 0);
  CHECK(r.err.find("--energy-im needs --energy-re") != std::string::npos);
}

TEST_CASE("two-point scan writes a two-row spectrum and no crossings") {
  const fs::path dir = fresh_dir("scan");
  const CliRun r = run_cli({"scan", "--ratio", "120", "--gamma-min", "1e-4",
                            "--gamma-max", "1.2e-4", "--steps", "2", "--nmax",
                            "16", "--tracks", "1", "--window",
                            "-0.033,-0.030", "--out", dir.string()});
  INFO(r.err);
  CHECK(r.status == 0);
  CHECK(value_of(r.out, "crossings") == "0");
  CHECK(value_of(r.out, "breaks") == "0");

  const std::string spectrum = slurp(dir / "spectrum.tsv");
  CHECK(spectrum.rfind("# gamma", 0) == 0);
  CHECK(data_rows(spectrum) == 2);
  std::istringstream rows(spectrum);
  std::string line;
  std::getline(rows, line);  // header
  double g0 = 0.0, g1 = 0.0;
  rows >> g0;
  std::getline(rows, line);
  rows >> g1;
  CHECK(g0 == doctest::Approx(1e-4));
  CHECK(g1 == doctest::Approx(1.2e-4));

  CHECK(data_rows(slurp(dir / "crossings.tsv")) == 0);
  const std::string manifest = slurp(dir / "manifest.txt");
  CHECK(manifest.find("command = scan") != std::string::npos);
  CHECK(manifest.find("steps = 2") != std::string::npos);
}

TEST_CASE("missing required flags fail with a parse error") {
  CliRun r = run_cli({"scan", "--ratio", "120"});
  CHECK(r.status == 2);
  CHECK(r.err.rfind("ERROR BadInput: ", 0) == 0);

  r = run_cli({});
  CHECK(r.status == 2);
  CHECK(r.err.rfind("ERROR BadInput: ", 0) == 0);

  r = run_cli({"scan", "--bogus", "1"});
  CHECK(r.status == 2);

  r = run_cli({"--help"});
  CHECK(r.status == 0);
  CHECK(r.out.find("find-ep") != std::string::npos);
  CHECK(r.out.find("wavefunction") != std::string::npos);
}

TEST_CASE("capped search still writes its record and fails loudly") {
  const fs::path dir = fresh_dir("findep");
  const CliRun r = run_cli({"find-ep", "--gamma", "1.5e-3", "--f", "1.8e-5",
                            "--energy-re", "-6.9e-3", "--nmax", "12",
                            "--max-iterations", "1", "--out", dir.string()});
  CHECK(r.status != 0);
  CHECK(r.err.rfind("ERROR ", 0) == 0);
  CHECK(r.err.find("NoConvergence") != std::string::npos);
  CHECK(value_of(r.out, "status") == "cap-reached");
  CHECK(value_of(r.out, "iterations") == "1");

  const StoredEpRun stored = read_ep_run_file((dir / "ep_record.txt").string());
  CHECK(!stored.record.converged);
  CHECK(stored.record.status == SearchStatus::CapReached);
  CHECK(stored.record.iterations == 1);
  CHECK(stored.spec.n_max == 12);
  CHECK(stored.seed_point.gamma == doctest::Approx(1.5e-3));

  CHECK(data_rows(slurp(dir / "iterations.tsv")) == 1);
  const std::string manifest = slurp(dir / "manifest.txt");
  CHECK(manifest.find("command = find-ep") != std::string::npos);
  CHECK(manifest.find("max_iterations = 1") != std::string::npos);
}

TEST_CASE("stored records re-verify from the document alone") {
  const fs::path dir = fresh_dir("verify");
  const fs::path record = dir / "ep_record.txt";
  write_ep_run(record.string(), planted_run());

  const CliRun r =
      run_cli({"verify", "--record", record.string(), "--out", dir.string()});
  INFO(r.err);
  CHECK(r.status == 0);
  CHECK(value_of(r.out, "winding") == "1");
  CHECK(value_of(r.out, "certificate") == "1");
  // one enclosed simple zero: the pair swaps, so neither path closes on its
  // own start
  CHECK(value_of(r.out, "paths_closed") == "0");
  CHECK(value_of(r.out, "paths_exchanged") == "1");

  const std::string certificate = slurp(dir / "certificate.txt");
  CHECK(certificate.find("winding = 1") != std::string::npos);
  CHECK(certificate.find("certificate = 1") != std::string::npos);
  const std::string loop = slurp(dir / "loop.tsv");
  CHECK(loop.rfind("# index", 0) == 0);
  CHECK(data_rows(loop) >= 500);

  const CliRun missing = run_cli({"verify", "--record",
                                  (dir / "absent.txt").string(), "--out",
                                  dir.string()});
  CHECK(missing.status != 0);
  CHECK(missing.err.rfind("ERROR BadInput: ", 0) == 0);
}

TEST_CASE("wavefunction grids the recorded pair") {
  const fs::path dir = fresh_dir("wave");
  StoredEpRun run = planted_run();
  // Re-point the record at a cheap physical configuration; the grid command
  // re-solves from position, energy, and basis alone.
  run.record.position = FieldPoint{1.0e-3, 1.0e-5};
  run.record.energy = cplx(-5.5e-2, 0.0);
  run.record.history.clear();
  run.record.iterations = 0;
  const fs::path record = dir / "ep_record.txt";
  write_ep_run(record.string(), run);

  const CliRun r = run_cli({"wavefunction", "--record", record.string(),
                            "--average", "--points", "24", "--extent", "20",
                            "--out", dir.string()});
  INFO(r.err);
  CHECK(r.status == 0);
  CHECK(!value_of(r.out, "first_energy").empty());
  CHECK(!value_of(r.out, "second_energy").empty());
  const double peak0 =
      std::strtod(value_of(r.out, "first_peak").c_str(), nullptr);
  const double peak1 =
      std::strtod(value_of(r.out, "second_peak").c_str(), nullptr);
  const double peak_avg =
      std::strtod(value_of(r.out, "average_peak").c_str(), nullptr);
  CHECK(peak0 > 0.0);
  CHECK(peak1 > 0.0);
  CHECK(peak_avg > 0.0);

  const std::string density = slurp(dir / "density.tsv");
  CHECK(density.find("# n_max = 12") != std::string::npos);
  CHECK(density.find("# mu\tnu\tdensity_0\tdensity_1\tdensity_2") !=
        std::string::npos);
  CHECK(data_rows(density) == 24 * 24);
  // first data row: mu, nu, then one column per density
  std::istringstream in(density);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line.front() != '#') break;
  CHECK(std::count(line.begin(), line.end(), '\t') == 4);

  const CliRun missing = run_cli({"wavefunction", "--record",
                                  (dir / "absent.txt").string(), "--out",
                                  dir.string()});
  CHECK(missing.status != 0);
  CHECK(missing.err.rfind("ERROR BadInput: ", 0) == 0);
}

TEST_SUITE_END();
