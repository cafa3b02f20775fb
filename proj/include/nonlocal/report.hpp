#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace nonlocal {

/// One CSV cell: numbers print as %.15e, integers and text verbatim.
using Cell = std::variant<double, long long, std::string>;

/// Table of sweep rows plus named scalar results and pass/fail checks.
class ExperimentReport {
 public:
  explicit ExperimentReport(std::vector<std::string> columns);

  void add_row(std::vector<Cell> row);
  void set_result(const std::string& key, Cell value);
  /// Records a named assertion; the run fails if any check fails.
  void check(const std::string& name, bool ok);

  bool passed() const noexcept;
  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }

  /// `#` header lines, column row, data rows, then `# result.*`, `# check.*`
  /// and a final `# status` line.
  void write(std::ostream& out, const std::vector<std::string>& header) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::pair<std::string, Cell>> results_;
  std::vector<std::pair<std::string, bool>> checks_;
};

std::string format_cell(const Cell& c);

}  // namespace nonlocal
