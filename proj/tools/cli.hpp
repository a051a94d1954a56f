#ifndef BTSURF_TOOLS_CLI_HPP_
#define BTSURF_TOOLS_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace btsurf::cli {

inline constexpr const char* kSchema = "btsurf-report/1";

enum Exit { kPass = 0, kInputError = 1, kCheckFailure = 2 };

struct RunConfig {
  std::string mode;     // validate | cover | corollary | detect | character | building
  std::string submode;  // building: dist | adjacent | type
  std::string triangulation, surface, coorientation, perm, psi, presentation, subgroups;
  std::vector<std::string> matrices;  // building operands
  std::vector<std::string> words;     // extra words
  std::string report;                 // empty: stdout
  std::string cover_out;              // cover: write the cover triangulation here
  std::string gauge = "0";            // "<corner>" or "<tet>.<corner>"
  std::uint64_t seed = 0;
  bool cross_check = false;
  int verbosity = 0;
};

/* Runs one subcommand, writes the JSON report and returns the exit status.
 * Human-readable notes go to `log` when verbosity > 0. */
int run(const RunConfig& cfg, std::ostream& out, std::ostream& log);

/* Parses argv into a config and runs it; usage errors exit 1. */
int main_entry(int argc, char** argv);

}  // namespace btsurf::cli

#endif  // BTSURF_TOOLS_CLI_HPP_
