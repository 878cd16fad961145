#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "stopgame/enumeration.hpp"

namespace stopgame {

/// Exit codes of the batch front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitCapacity = 3;
inline constexpr int kExitVerification = 4;

struct RunConfig {
  enum class Command { kSolve, kOracle, kVerify, kCounterexample, kRefine, kReport };
  enum class Format { kJson, kCsv };

  Command command = Command::kSolve;
  std::string instance_path;               // solve/oracle/verify
  std::vector<std::string> report_inputs;  // report
  bool rational_mode = true;
  std::size_t cap_stopping_times = kDefaultStopTimeCap;
  std::size_t cap_maps = kDefaultMapCap;
  uint64_t seed = 0;
  std::string out_path;  // empty: write to the stream passed to run()
  Format format = Format::kJson;
  std::string refine_payoff = "abs_time_diff";
  int refine_levels = 3;
};

/// Executes one command and writes the report (JSON or CSV) to out_path or,
/// when out_path is empty, to `fallback`. Returns kExitOk or
/// kExitVerification; data, capacity, and usage conditions surface as
/// exceptions for the caller to map to exit codes. Reports are byte-identical
/// for identical (config, instance, seed).
int run(const RunConfig& config, std::ostream& fallback);

}  // namespace stopgame
