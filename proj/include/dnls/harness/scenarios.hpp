#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dnls/harness/config.hpp"

namespace dnls::harness {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kOutEnv = "DNLS_LAB_OUT";

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitPrecondition = 3,
  kExitAbort = 4,
};

const std::vector<std::string>& scenario_names();

struct RunOptions {
  std::string scenario;
  ConfigMap config;
  std::optional<std::filesystem::path> out;  // --out
  std::optional<std::size_t> workers;        // --workers
  std::optional<std::uint64_t> seed;         // --seed
};

/// --out, then the config's `out`, then $DNLS_LAB_OUT/<scenario>, then ./dnls-out/<scenario>.
std::filesystem::path resolve_out_dir(const RunOptions& opts);

/// Runs one scenario, writes its artifacts and returns the exit status.
/// Config errors map to 2, precondition violations to 3, drift or blowup
/// aborts to 4 (after writing the partial artifacts). Messages go to `err`.
int run(const RunOptions& opts, std::ostream& err);

}  // namespace dnls::harness
