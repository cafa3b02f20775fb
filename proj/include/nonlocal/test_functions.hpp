#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace nonlocal {

/// Named scalar field with its classical partial derivatives where defined.
struct TestFunction {
  std::string name;
  std::function<double(double, double)> value;
  std::function<double(double, double)> dx;
  std::function<double(double, double)> dy;
  /// x-locations where the function or its derivative is not smooth.
  std::vector<double> breakpoints;
  bool affine = false;
};

/// affine, sin3x, absval, cusp, oscillating, zero_mode, step, affine_xy, bump, zero.
/// `delta` sets the period of zero_mode; bump is centered at 0.5 with radius 0.25.
TestFunction test_function(std::string_view name, double delta = 0.1);
std::vector<std::string> test_function_names();

}  // namespace nonlocal
