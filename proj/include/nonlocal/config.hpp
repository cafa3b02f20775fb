#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nonlocal/errors.hpp"
#include "nonlocal/kernel.hpp"

namespace nonlocal {

/// Syntax error at a 1-based line of the config text.
class ParseError : public Error {
 public:
  ParseError(int line, std::string reason);
  const char* kind() const noexcept override { return "ParseError"; }
  int line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  int line_;
  std::string reason_;
};

struct Violation {
  std::string field;
  std::string constraint;
};

/// Every semantic violation found in a config, not just the first.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const char* kind() const noexcept override { return "ValidationError"; }
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

enum class Command {
  KernelInfo,
  Apply,
  Convergence,
  WeakConvergence,
  Ibp,
  Spectrum,
  Compactness,
  Poincare,
  Oscillation,
  Figure,
  DivergenceTheorem,
  DeformationGradient
};

std::string_view to_string(Command c);
Command command_from_string(std::string_view name);

struct KernelBlock {
  std::string label;  // "kernel" or "kernel.N"
  KernelFamily family = KernelFamily::PotentialSector;
  int dimension = 1;
  std::optional<double> delta;
  std::optional<double> beta;
  AngularProfile theta;
  std::vector<double> coefficients;
  std::vector<double> values;
  int dic_cells = 0;
  bool normalize = true;
  double scale = 1.0;

  /// Kernel at the given horizon (or the block's own delta).
  KernelSpec build(std::optional<double> delta_override = std::nullopt) const;
};

struct DomainBlock {
  std::vector<double> lo;
  std::vector<double> hi;
  int n_per_delta = 16;
};

struct SweepBlock {
  std::vector<double> deltas;
  std::vector<int> n_per_delta;
};

/// Study parameters; which ones apply depends on the command.
struct StudyBlock {
  std::string u;
  std::string phi = "bump";
  double p = 2.0;
  std::string which = "absval";
  std::string expect = "auto";
  std::string subspace = "zero_on_collar";
  std::string evaluation = "reference";
  int trials = 0;
  std::optional<double> min_order;
  std::optional<double> max_order;
  std::optional<double> max_error;
  std::optional<double> bound_h2;
  std::optional<double> expect_normalization;
  double rtol = 1e-3;
  double tolerance = 0.0;
};

struct ExperimentConfig {
  Command command = Command::KernelInfo;
  std::uint64_t seed = 1;
  int quad_order = 1;
  std::string output;
  std::vector<KernelBlock> kernels;
  DomainBlock domain;
  SweepBlock sweep;
  StudyBlock study;
};

/// Strict `key = value` text with `[section]` headers. Throws ParseError on
/// the first syntax problem (unknown key or section, duplicate, bad value)
/// and ValidationError listing every semantic violation.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

/// Fully resolved config, one `key = value` line per entry, defaults included.
std::vector<std::string> echo_config(const ExperimentConfig& config);

}  // namespace nonlocal
