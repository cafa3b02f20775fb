#include <doctest.h>

#include <algorithm>
#include <string>

#include "nonlocal/config.hpp"
#include "nonlocal/report.hpp"

using namespace nonlocal;

namespace {

const char* kMinimal = R"(command = convergence

[kernel]
family = potential
beta = 0.5
theta = 0, 1

[sweep]
deltas = 0.2, 0.1
)";

bool has_field(const ValidationError& e, const std::string& field) {
  return std::any_of(e.violations().begin(), e.violations().end(),
                     [&](const Violation& v) { return v.field == field; });
}

}  // namespace

TEST_CASE("minimal config resolves defaults") {
  auto c = parse_config(kMinimal);
  CHECK(c.command == Command::Convergence);
  CHECK(c.seed == 1u);
  CHECK(c.quad_order == 1);
  REQUIRE(c.kernels.size() == 1);
  CHECK(c.kernels[0].family == KernelFamily::PotentialSector);
  CHECK(c.kernels[0].theta.minus == 0.0);
  CHECK(c.kernels[0].theta.plus == 1.0);
  CHECK(c.sweep.deltas == std::vector<double>{0.2, 0.1});
  CHECK(c.study.u == "sin3x");
  CHECK(c.domain.lo == std::vector<double>{0.0});
  CHECK(c.domain.hi == std::vector<double>{1.0});
  auto k = c.kernels[0].build(0.1);
  CHECK(k.delta() == 0.1);
  CHECK(k.beta() == 0.5);
}

TEST_CASE("echo lists every resolved key") {
  auto lines = echo_config(parse_config(kMinimal));
  auto has = [&](const std::string& s) {
    return std::find(lines.begin(), lines.end(), s) != lines.end();
  };
  CHECK(has("command = convergence"));
  CHECK(has("seed = 1"));
  CHECK(has("[study]"));
  CHECK(has("u = sin3x"));
  CHECK(has("deltas = 0.2, 0.1"));
}

TEST_CASE("non-integrable exponent is a validation error") {
  std::string text = R"(command = convergence
[kernel]
family = potential
beta = -1.5
[sweep]
deltas = 0.1
)";
  CHECK_THROWS_AS(parse_config(text), ValidationError);
  try {
    parse_config(text);
  } catch (const ValidationError& e) {
    CHECK(has_field(e, "kernel.beta"));
  }
}

TEST_CASE("every violation is reported") {
  std::string text = R"(command = convergence
quad_order = 3
[kernel]
family = potential
beta = -1.5
[sweep]
deltas = 0.1, 0.2
)";
  try {
    parse_config(text);
    FAIL("expected a ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.violations().size() >= 3);
    CHECK(has_field(e, "quad_order"));
    CHECK(has_field(e, "sweep.deltas"));
  }
}

TEST_CASE("syntax errors carry the line number") {
  std::string dup = "command = ibp\n[kernel]\nfamily = pcs\nfamily = pcs\n";
  try {
    parse_config(dup);
    FAIL("expected a ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  CHECK_THROWS_AS(parse_config("command = ibp\nbogus = 1\n"), ParseError);
  CHECK_THROWS_AS(parse_config("command = ibp\n[nowhere]\n"), ParseError);
  CHECK_THROWS_AS(parse_config("command = ibp\n[kernel]\ndelta = abc\n"), ParseError);
  CHECK_THROWS_AS(parse_config("command = ibp\nno equals sign\n"), ParseError);
  CHECK_THROWS_AS(parse_config("command = warp\n"), ParseError);
}

TEST_CASE("command names round trip") {
  for (auto c : {Command::KernelInfo, Command::Apply, Command::Oscillation,
                 Command::DeformationGradient})
    CHECK(command_from_string(to_string(c)) == c);
}

TEST_CASE("report formatting") {
  ExperimentReport r({"a", "b", "c"});
  r.add_row({1.5, 2LL, std::string("x,y")});
  CHECK_THROWS(r.add_row({1.0}));
  r.set_result("fitted", 0.25);
  r.check("ok", true);
  CHECK(r.passed());
  r.check("bad", false);
  CHECK_FALSE(r.passed());
  CHECK(format_cell(Cell{std::string("x,y")}) == "\"x,y\"");
  CHECK(format_cell(Cell{3LL}) == "3");
  CHECK(format_cell(Cell{0.5}) == "5.000000000000000e-01");
}
