#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace duallim {

struct RunConfig {
  std::string subcommand;
  std::string input_path;
  std::optional<std::string> mode;  // overrides the file's mode key
  long precision_bits = 256;
  bool precision_given = false;
  std::optional<int> trunc_override;
  bool json = false;
  bool check = false;       // disc-limit --check
  bool verify_truncation = false;  // type --verify-truncation
  int trials = 30;
  uint64_t seed = 20240331;
};

// Dispatches one subcommand on a family file (or on every file of a
// directory, name-sorted). Writes the report to `out`, returns the exit code:
// 0 ok, 1 hypothesis violation, 2 parse error, 3 resource limit, 4 internal
// cross-check mismatch.
int run(const RunConfig& config, std::ostream& out);

}  // namespace duallim
