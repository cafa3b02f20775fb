#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "nonlocal/config.hpp"
#include "nonlocal/report.hpp"

namespace nonlocal {

inline constexpr const char* kVersion = "0.3.0";

/// Command-line overrides applied on top of the config file.
struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<int> quad_order;
  std::string out;
  std::string dump_matrix;
  int threads = 0;
};

/// Runs one experiment and returns its report; errors propagate.
ExperimentReport run_experiment(const ExperimentConfig& config, const std::string& dump_matrix = {});

/// Runs, writes the CSV and maps the outcome onto the exit-code contract:
/// 0 every check passed, 1 a check failed, 2 error (one line on `err`).
int run(ExperimentConfig config, const RunOptions& options, std::ostream& out, std::ostream& err);

}  // namespace nonlocal
