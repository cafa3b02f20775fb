#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "nonlocal/geometry.hpp"
#include "nonlocal/kernel.hpp"

namespace nonlocal {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached n-point rule; safe to call from several threads.
const GaussRule& gauss_legendre(int n);

/// Fixed n-point Gauss-Legendre on [a, b].
double gauss(const std::function<double(double)>& f, double a, double b, int n = 20);

/// Adaptive bisection with a 20-point rule per panel. Throws QuadratureFailure
/// when the evaluation budget runs out.
double adaptive_gauss(const std::function<double(double)>& f, double a, double b, double tol,
                      long budget = 4'000'000);

/// int f(z) mu(z) dz over the support of a one-dimensional kernel, graded
/// geometrically (ratio 1/2) toward a singular origin. `noise` is the size of
/// the terms that cancel inside f (e.g. |u(x)| for u(x+z) - u(x)); it bounds
/// the accuracy requested from panels near the origin.
double reference_integrate(const KernelSpec& kernel, const std::function<double(double)>& f,
                           double tol = 1e-14, std::span<const double> extra_breakpoints = {},
                           double noise = 0.0);

/// int f(z) mu(z) dz for a two-dimensional sector kernel, in polar coordinates.
double reference_integrate_2d(const KernelSpec& kernel,
                              const std::function<double(double, double)>& f, double tol = 1e-13);

/// Translation-invariant weights w_k = int L_k(z) mu(z) dz, where L_k is the
/// piecewise linear (order 1) or piecewise quadratic (order 2) nodal basis
/// function at lattice offset k. Offsets run over -n..n per axis.
struct Stencil {
  int dimension = 1;
  int n = 0;  // delta / h
  int order = 1;
  double h = 0.0;
  /// Dense weights over the (2n+1)^d offset box, x fastest.
  std::vector<double> dense;
  /// Offsets carrying a nonzero weight, with their weights.
  std::vector<std::array<int, 2>> offsets;
  std::vector<double> weights;
  /// Sum of all weights, accumulated in +-k pairs.
  double zeroth_sum = 0.0;

  int width() const noexcept { return 2 * n + 1; }
  double weight(int kx, int ky = 0) const;
  /// sum_k w_k (k_x h)^p (k_y h)^q.
  double moment(int p, int q = 0) const;
  double first_moment(int axis = 0) const;
  double abs_sum() const;
};

Stencil build_stencil(const KernelSpec& kernel, double h, int order);
Stencil build_stencil(const KernelSpec& kernel, const Grid& grid, int order);

}  // namespace nonlocal
