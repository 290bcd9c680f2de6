#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ryd {

// Parses and executes one command line (without the program name) and
// returns the process exit status. Normal results go to `out`, failures are
// printed on `err` as a single machine-parsable line
//   ERROR <code>: <message>
// with a nonzero return. Every subcommand writes a manifest.txt into its
// output directory echoing the full effective configuration, so a run can be
// reproduced from its output files alone.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace ryd
