#include "ryd/record_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "ryd/errors.hpp"

namespace ryd {

namespace {

constexpr const char* kFormatTag = "ep-record-1";

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.16e", x);
  return buf;
}

std::string fmt(cplx z) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%.16e %.16e", z.real(), z.imag());
  return buf;
}

std::string trimmed(const std::string& s) {
  const std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

using KvMap = std::map<std::string, std::string>;

const std::string& need(const KvMap& kv, const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end())
    throw BadInput("record is missing the key '" + key + "'");
  return it->second;
}

double parse_double(const std::string& text, const std::string& key) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  while (end && (*end == ' ' || *end == '\t')) ++end;
  if (end == text.c_str() || !end || *end != '\0' || errno == ERANGE)
    throw BadInput("unreadable number for '" + key + "': " + text);
  return v;
}

cplx parse_complex(const std::string& text, const std::string& key) {
  const std::size_t split = text.find(' ');
  if (split == std::string::npos)
    throw BadInput("expected two numbers for '" + key + "': " + text);
  return {parse_double(trimmed(text.substr(0, split)), key),
          parse_double(trimmed(text.substr(split + 1)), key)};
}

long long parse_int(const std::string& text, const std::string& key) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(text.c_str(), &end, 10);
  if (end == text.c_str() || !end || *end != '\0' || errno == ERANGE)
    throw BadInput("unreadable integer for '" + key + "': " + text);
  return v;
}

bool parse_bool(const std::string& text, const std::string& key) {
  if (text == "0") return false;
  if (text == "1") return true;
  throw BadInput("expected 0 or 1 for '" + key + "': " + text);
}

double kv_double(const KvMap& kv, const std::string& key) {
  return parse_double(need(kv, key), key);
}
cplx kv_complex(const KvMap& kv, const std::string& key) {
  return parse_complex(need(kv, key), key);
}
long long kv_int(const KvMap& kv, const std::string& key) {
  return parse_int(need(kv, key), key);
}
bool kv_bool(const KvMap& kv, const std::string& key) {
  return parse_bool(need(kv, key), key);
}
FieldPoint kv_point(const KvMap& kv, const std::string& key) {
  const cplx pair = kv_complex(kv, key);
  return {pair.real(), pair.imag()};
}

void put(std::ostream& out, const std::string& key, const std::string& value,
         int indent = 0) {
  for (int k = 0; k < indent; ++k) out << ' ';
  out << key << " = " << value << '\n';
}

void write_iteration_block(std::ostream& out, const EpIteration& it) {
  char head[64];
  std::snprintf(head, sizeof(head), "iteration %d {", it.index);
  out << head << '\n';
  const int ind = 2;
  put(out, "index", std::to_string(it.index), ind);
  put(out, "center",
      fmt(cplx(it.stencil.center.gamma, it.stencil.center.f)), ind);
  put(out, "h", fmt(cplx(it.stencil.h_gamma, it.stencil.h_f)), ind);
  put(out, "kappa_a", fmt(it.model.a), ind);
  put(out, "kappa_b", fmt(it.model.b), ind);
  put(out, "kappa_c", fmt(it.model.c), ind);
  put(out, "eta_d", fmt(it.model.d), ind);
  put(out, "eta_e", fmt(it.model.e), ind);
  put(out, "eta_f", fmt(it.model.f), ind);
  put(out, "eta_g", fmt(it.model.g), ind);
  put(out, "eta_h", fmt(it.model.h), ind);
  put(out, "eta_i", fmt(it.model.i), ind);
  put(out, "model_center",
      fmt(cplx(it.model.center.gamma, it.model.center.f)), ind);
  put(out, "model_h", fmt(cplx(it.model.h_gamma, it.model.h_f)), ind);
  put(out, "eta_defect", fmt(it.model.eta_defect), ind);
  put(out, "root", fmt(cplx(it.root.x, it.root.y)), ind);
  put(out, "root_real", it.root.real_root ? "1" : "0", ind);
  put(out, "root_residual", fmt(it.root.residual), ind);
  put(out, "root_epsilon", fmt(it.root.final_epsilon), ind);
  put(out, "first_energy", fmt(it.center_pair.first.energy), ind);
  put(out, "second_energy", fmt(it.center_pair.second.energy), ind);
  put(out, "first_c_norm", fmt(it.center_pair.first.c_norm), ind);
  put(out, "second_c_norm", fmt(it.center_pair.second.c_norm), ind);
  put(out, "degenerate", it.center_pair.degenerate ? "1" : "0", ind);
  put(out, "energy_split", fmt(it.energy_split), ind);
  put(out, "ep_estimate", fmt(it.ep_estimate), ind);
  put(out, "coefficients_digest", fmt(it.coefficients_digest), ind);
  put(out, "winding", std::to_string(it.winding), ind);
  put(out, "winding_diagnostic", fmt(it.winding_diagnostic), ind);
  put(out, "winding_valid", it.winding_valid ? "1" : "0", ind);
  put(out, "step", fmt(cplx(it.step_gamma, it.step_f)), ind);
  out << "}\n";
}

EpIteration read_iteration_block(const KvMap& kv) {
  EpIteration it;
  it.index = static_cast<int>(kv_int(kv, "index"));
  it.stencil.center = kv_point(kv, "center");
  const FieldPoint h = kv_point(kv, "h");
  it.stencil.h_gamma = h.gamma;
  it.stencil.h_f = h.f;
  it.model.a = kv_complex(kv, "kappa_a");
  it.model.b = kv_complex(kv, "kappa_b");
  it.model.c = kv_complex(kv, "kappa_c");
  it.model.d = kv_complex(kv, "eta_d");
  it.model.e = kv_complex(kv, "eta_e");
  it.model.f = kv_complex(kv, "eta_f");
  it.model.g = kv_complex(kv, "eta_g");
  it.model.h = kv_complex(kv, "eta_h");
  it.model.i = kv_complex(kv, "eta_i");
  it.model.center = kv_point(kv, "model_center");
  const FieldPoint mh = kv_point(kv, "model_h");
  it.model.h_gamma = mh.gamma;
  it.model.h_f = mh.f;
  it.model.eta_defect = kv_double(kv, "eta_defect");
  const FieldPoint root = kv_point(kv, "root");
  it.root.x = root.gamma;
  it.root.y = root.f;
  it.root.real_root = kv_bool(kv, "root_real");
  it.root.residual = kv_double(kv, "root_residual");
  it.root.final_epsilon = kv_double(kv, "root_epsilon");
  it.center_pair.first.energy = kv_complex(kv, "first_energy");
  it.center_pair.second.energy = kv_complex(kv, "second_energy");
  it.center_pair.first.c_norm = kv_complex(kv, "first_c_norm");
  it.center_pair.second.c_norm = kv_complex(kv, "second_c_norm");
  it.center_pair.degenerate = kv_bool(kv, "degenerate");
  it.energy_split = kv_double(kv, "energy_split");
  it.ep_estimate = kv_complex(kv, "ep_estimate");
  it.coefficients_digest = kv_double(kv, "coefficients_digest");
  it.winding = static_cast<int>(kv_int(kv, "winding"));
  it.winding_diagnostic = kv_double(kv, "winding_diagnostic");
  it.winding_valid = kv_bool(kv, "winding_valid");
  const FieldPoint step = kv_point(kv, "step");
  it.step_gamma = step.gamma;
  it.step_f = step.f;
  return it;
}

}  // namespace

const char* search_status_name(SearchStatus status) {
  switch (status) {
    case SearchStatus::Converged:
      return "converged";
    case SearchStatus::CapReached:
      return "cap-reached";
    case SearchStatus::Diverged:
      return "diverged";
  }
  return "cap-reached";
}

SearchStatus search_status_from_name(const std::string& name) {
  if (name == "converged") return SearchStatus::Converged;
  if (name == "cap-reached") return SearchStatus::CapReached;
  if (name == "diverged") return SearchStatus::Diverged;
  throw BadInput("unknown search status: " + name);
}

void write_ep_run(std::ostream& out, const StoredEpRun& run) {
  put(out, "format", kFormatTag);
  put(out, "status", search_status_name(run.record.status));
  put(out, "converged", run.record.converged ? "1" : "0");
  put(out, "n_max", std::to_string(run.spec.n_max));
  put(out, "m", std::to_string(run.spec.m));
  put(out, "rotation_angle", fmt(run.rotation_angle));
  put(out, "adapt_dilation", run.adapt_dilation ? "1" : "0");
  put(out, "solver_seed", std::to_string(run.solver_seed));
  put(out, "seed_gamma", fmt(run.seed_point.gamma));
  put(out, "seed_f", fmt(run.seed_point.f));
  put(out, "seed_energy", fmt(run.seed_energy));
  put(out, "gamma", fmt(run.record.position.gamma));
  put(out, "f", fmt(run.record.position.f));
  put(out, "energy", fmt(run.record.energy));
  put(out, "winding", std::to_string(run.record.winding));
  put(out, "winding_diagnostic", fmt(run.record.winding_diagnostic));
  put(out, "energy_split", fmt(run.record.energy_split));
  put(out, "degeneracy_floor", fmt(run.record.degeneracy_floor));
  put(out, "iterations", std::to_string(run.record.iterations));
  put(out, "final_first_energy", fmt(run.record.final_pair.first.energy));
  put(out, "final_second_energy", fmt(run.record.final_pair.second.energy));
  put(out, "final_first_c_norm", fmt(run.record.final_pair.first.c_norm));
  put(out, "final_second_c_norm", fmt(run.record.final_pair.second.c_norm));
  put(out, "final_degenerate", run.record.final_pair.degenerate ? "1" : "0");
  for (const EpIteration& it : run.record.history)
    write_iteration_block(out, it);
}

void write_ep_run(const std::string& path, const StoredEpRun& run) {
  std::ofstream out(path);
  if (!out) throw BadInput("cannot open output file: " + path);
  write_ep_run(out, run);
}

StoredEpRun read_ep_run(std::istream& in) {
  KvMap top;
  std::vector<KvMap> blocks;
  std::string line;
  bool in_block = false;
  KvMap block;
  while (std::getline(in, line)) {
    const std::string text = trimmed(line);
    if (text.empty()) continue;
    if (!in_block && text.rfind("iteration ", 0) == 0 &&
        text.back() == '{') {
      in_block = true;
      block.clear();
      continue;
    }
    if (in_block && text == "}") {
      in_block = false;
      blocks.push_back(block);
      continue;
    }
    const std::size_t eq = text.find(" = ");
    if (eq == std::string::npos)
      throw BadInput("unparsable record line: " + text);
    const std::string key = text.substr(0, eq);
    const std::string value = text.substr(eq + 3);
    (in_block ? block : top)[key] = value;
  }
  if (in_block) throw BadInput("record ends inside an iteration block");
  if (top.count("format") == 0 || top.at("format") != kFormatTag)
    throw BadInput("not a search record document");

  StoredEpRun run;
  run.spec.n_max = static_cast<int>(kv_int(top, "n_max"));
  run.spec.m = static_cast<int>(kv_int(top, "m"));
  run.rotation_angle = kv_double(top, "rotation_angle");
  run.adapt_dilation = kv_bool(top, "adapt_dilation");
  run.solver_seed =
      static_cast<unsigned long long>(kv_int(top, "solver_seed"));
  run.seed_point.gamma = kv_double(top, "seed_gamma");
  run.seed_point.f = kv_double(top, "seed_f");
  run.seed_energy = kv_complex(top, "seed_energy");
  run.record.status = search_status_from_name(need(top, "status"));
  run.record.converged = kv_bool(top, "converged");
  run.record.position.gamma = kv_double(top, "gamma");
  run.record.position.f = kv_double(top, "f");
  run.record.energy = kv_complex(top, "energy");
  run.record.winding = static_cast<int>(kv_int(top, "winding"));
  run.record.winding_diagnostic = kv_double(top, "winding_diagnostic");
  run.record.energy_split = kv_double(top, "energy_split");
  run.record.degeneracy_floor = kv_double(top, "degeneracy_floor");
  run.record.iterations = static_cast<int>(kv_int(top, "iterations"));
  run.record.final_pair.first.energy = kv_complex(top, "final_first_energy");
  run.record.final_pair.second.energy =
      kv_complex(top, "final_second_energy");
  run.record.final_pair.first.c_norm = kv_complex(top, "final_first_c_norm");
  run.record.final_pair.second.c_norm =
      kv_complex(top, "final_second_c_norm");
  run.record.final_pair.degenerate = kv_bool(top, "final_degenerate");
  for (const KvMap& kv : blocks)
    run.record.history.push_back(read_iteration_block(kv));
  return run;
}

StoredEpRun read_ep_run_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadInput("cannot open record file: " + path);
  return read_ep_run(in);
}

void write_iteration_tsv(std::ostream& out, const EPRecord& record) {
  out << "# iteration\tgamma\tf\th_gamma\th_f\tenergy_split\t"
         "ep_estimate_re\tep_estimate_im\tstep_gamma\tstep_f\twinding\t"
         "winding_valid\twinding_diagnostic\teta_defect\t"
         "first_c_norm_abs\tsecond_c_norm_abs\n";
  for (const EpIteration& it : record.history) {
    out << it.index << '\t' << fmt(it.stencil.center.gamma) << '\t'
        << fmt(it.stencil.center.f) << '\t' << fmt(it.stencil.h_gamma) << '\t'
        << fmt(it.stencil.h_f) << '\t' << fmt(it.energy_split) << '\t'
        << fmt(it.ep_estimate.real()) << '\t' << fmt(it.ep_estimate.imag())
        << '\t' << fmt(it.step_gamma) << '\t' << fmt(it.step_f) << '\t'
        << it.winding << '\t' << (it.winding_valid ? 1 : 0) << '\t'
        << fmt(it.winding_diagnostic) << '\t' << fmt(it.model.eta_defect)
        << '\t' << fmt(std::abs(it.center_pair.first.c_norm)) << '\t'
        << fmt(std::abs(it.center_pair.second.c_norm)) << '\n';
  }
}

void write_path_tsv(std::ostream& out, const PathResult& paths) {
  out << "# index\tphi\tfirst_re\tfirst_im\tsecond_re\tsecond_im\n";
  const std::size_t n = paths.first.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double phi =
        n > 1 ? 2.0 * std::numbers::pi * static_cast<double>(k) /
                    static_cast<double>(n - 1)
              : 0.0;
    out << k << '\t' << fmt(phi) << '\t' << fmt(paths.first[k].real()) << '\t'
        << fmt(paths.first[k].imag()) << '\t' << fmt(paths.second[k].real())
        << '\t' << fmt(paths.second[k].imag()) << '\n';
  }
}

void write_scan_tsv(std::ostream& out, const ScanResult& scan) {
  out << "# gamma\tf\ttrack\tenergy_re\tenergy_im\toverlap\n";
  for (const Track& track : scan.tracks)
    for (const TrackPoint& p : track.points)
      out << fmt(p.gamma) << '\t' << fmt(p.f) << '\t' << track.id << '\t'
          << fmt(p.energy.real()) << '\t' << fmt(p.energy.imag()) << '\t'
          << fmt(p.overlap) << '\n';
}

void write_crossings_tsv(std::ostream& out,
                         const std::vector<AvoidedCrossing>& crossings) {
  out << "# gamma0\tf0\tgap\tre_gap\tim_gap\tenergy_re\tenergy_im\t"
         "first_track\tsecond_track\n";
  for (const AvoidedCrossing& c : crossings)
    out << fmt(c.gamma0) << '\t' << fmt(c.f0) << '\t' << fmt(c.gap) << '\t'
        << fmt(c.re_gap) << '\t' << fmt(c.im_gap) << '\t'
        << fmt(c.energy_guess.real()) << '\t' << fmt(c.energy_guess.imag())
        << '\t' << c.first_track << '\t' << c.second_track << '\n';
}

void write_certificate(std::ostream& out, const VerificationReport& report) {
  put(out, "winding", std::to_string(report.winding.winding));
  put(out, "winding_diagnostic", fmt(report.winding.diagnostic));
  put(out, "samples", std::to_string(report.winding.samples_used));
  put(out, "paths_closed", report.paths.closed ? "1" : "0");
  put(out, "paths_exchanged", report.paths.exchanged ? "1" : "0");
  put(out, "certificate", report.certificate ? "1" : "0");
}

void write_manifest(
    std::ostream& out,
    const std::vector<std::pair<std::string, std::string>>& entries) {
  for (const auto& [key, value] : entries) put(out, key, value);
}

}  // namespace ryd
