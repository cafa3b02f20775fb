#include "nonlocal/test_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "nonlocal/errors.hpp"

namespace nonlocal {

namespace {

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

double bump(double x) {
  const double s = (x - 0.5) / 0.25;
  if (std::abs(s) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - s * s));
}

double bump_dx(double x) {
  const double s = (x - 0.5) / 0.25;
  if (std::abs(s) >= 1.0) return 0.0;
  const double q = 1.0 - s * s;
  return std::exp(-1.0 / q) * (-2.0 * s / (q * q)) / 0.25;
}

}  // namespace

std::vector<std::string> test_function_names() {
  return {"affine", "sin3x", "absval", "cusp", "oscillating",
          "zero_mode", "step", "affine_xy", "bump", "zero"};
}

TestFunction test_function(std::string_view name, double delta) {
  TestFunction f;
  f.name = std::string(name);
  auto zero = [](double, double) { return 0.0; };
  f.dy = zero;
  if (name == "affine") {
    f.value = [](double x, double) { return 2.0 * x - 0.75; };
    f.dx = [](double, double) { return 2.0; };
    f.affine = true;
  } else if (name == "sin3x") {
    f.value = [](double x, double) { return std::sin(3.0 * x); };
    f.dx = [](double x, double) { return 3.0 * std::cos(3.0 * x); };
  } else if (name == "absval") {
    f.value = [](double x, double) { return std::abs(x - 0.5); };
    f.dx = [](double x, double) { return x > 0.5 ? 1.0 : (x < 0.5 ? -1.0 : nan()); };
    f.breakpoints = {0.5};
  } else if (name == "cusp") {
    f.value = [](double x, double) { return std::cbrt((x - 0.5) * (x - 0.5)); };
    f.dx = [](double x, double) {
      const double t = x - 0.5;
      if (t == 0.0) return nan();
      return (2.0 / 3.0) / std::cbrt(t);
    };
    f.breakpoints = {0.5};
  } else if (name == "oscillating") {
    f.value = [](double x, double) { return x == 0.0 ? 0.0 : x * x * std::sin(1.0 / x); };
    f.dx = [](double x, double) {
      return x == 0.0 ? 0.0 : 2.0 * x * std::sin(1.0 / x) - std::cos(1.0 / x);
    };
    f.breakpoints = {0.0};
  } else if (name == "zero_mode") {
    if (!(delta > 0.0)) throw InvalidArgument("zero_mode needs a positive delta");
    const double k = 2.0 * std::numbers::pi / delta;
    f.value = [k](double x, double) { return std::sin(k * x); };
    f.dx = [k](double x, double) { return k * std::cos(k * x); };
  } else if (name == "step") {
    f.value = [](double x, double) { return (x > 0.5 && x < 1.0) ? 1.0 : 0.0; };
    f.dx = [](double x, double) { return (x == 0.5 || x == 1.0) ? nan() : 0.0; };
    f.breakpoints = {0.5, 1.0};
  } else if (name == "affine_xy") {
    f.value = [](double x, double y) { return x + y; };
    f.dx = [](double, double) { return 1.0; };
    f.dy = [](double, double) { return 1.0; };
    f.affine = true;
  } else if (name == "bump") {
    f.value = [](double x, double) { return bump(x); };
    f.dx = [](double x, double) { return bump_dx(x); };
  } else if (name == "zero") {
    f.value = zero;
    f.dx = zero;
    f.affine = true;
  } else {
    throw InvalidArgument("unknown test function '" + std::string(name) + "'");
  }
  return f;
}

}  // namespace nonlocal
