#include "nonlocal/report.hpp"

#include <cmath>
#include <cstdio>

#include "nonlocal/errors.hpp"

namespace nonlocal {

std::string format_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) {
    if (std::isnan(*d)) return "nan";
    if (std::isinf(*d)) return *d > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15e", *d);
    return buf;
  }
  if (const long long* i = std::get_if<long long>(&c)) return std::to_string(*i);
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

ExperimentReport::ExperimentReport(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void ExperimentReport::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) throw LengthMismatch("report row does not match its columns");
  rows_.push_back(std::move(row));
}

void ExperimentReport::set_result(const std::string& key, Cell value) {
  for (auto& [k, v] : results_)
    if (k == key) {
      v = std::move(value);
      return;
    }
  results_.emplace_back(key, std::move(value));
}

void ExperimentReport::check(const std::string& name, bool ok) { checks_.emplace_back(name, ok); }

bool ExperimentReport::passed() const noexcept {
  for (const auto& [name, ok] : checks_)
    if (!ok) return false;
  return true;
}

void ExperimentReport::write(std::ostream& out, const std::vector<std::string>& header) const {
  for (const auto& h : header) out << "# " << h << '\n';
  for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
    out << '\n';
  }
  for (const auto& [k, v] : results_) out << "# result." << k << " = " << format_cell(v) << '\n';
  for (const auto& [k, ok] : checks_) out << "# check." << k << " = " << (ok ? "pass" : "fail") << '\n';
  out << "# status = " << (passed() ? "pass" : "fail") << '\n';
}

}  // namespace nonlocal
