#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ryd/ep_search.hpp"
#include "ryd/scanner.hpp"
#include "ryd/verification.hpp"

namespace ryd {

// A degeneracy search together with the configuration needed to re-drive
// it: enough to recompute winding certificates, loop paths, and density
// grids without the original command line. Serialized as a line-oriented
// "key = value" document with one nested block per iteration; numbers carry
// 17 significant digits so every double round-trips exactly.
struct StoredEpRun {
  BasisSpec spec;
  double rotation_angle = 0.15;
  bool adapt_dilation = true;
  unsigned long long solver_seed = 0;
  FieldPoint seed_point{};
  cplx seed_energy{};
  EPRecord record;
};

void write_ep_run(std::ostream& out, const StoredEpRun& run);
void write_ep_run(const std::string& path, const StoredEpRun& run);

// Throws BadInput on malformed documents (wrong format tag, missing keys,
// unparsable numbers, truncated iteration blocks).
StoredEpRun read_ep_run(std::istream& in);
StoredEpRun read_ep_run_file(const std::string& path);

const char* search_status_name(SearchStatus status);
SearchStatus search_status_from_name(const std::string& name);

// Tab-separated tables: one "#"-prefixed header line naming the columns,
// then one row per entry, 17 significant digits throughout.
void write_iteration_tsv(std::ostream& out, const EPRecord& record);
void write_path_tsv(std::ostream& out, const PathResult& paths);
void write_scan_tsv(std::ostream& out, const ScanResult& scan);
void write_crossings_tsv(std::ostream& out,
                         const std::vector<AvoidedCrossing>& crossings);

// Winding and path summary of a model check, "key = value" lines.
void write_certificate(std::ostream& out, const VerificationReport& report);

// Ordered echo of the full effective configuration of a run.
void write_manifest(
    std::ostream& out,
    const std::vector<std::pair<std::string, std::string>>& entries);

}  // namespace ryd
