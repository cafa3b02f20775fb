#include "nonlocal/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "nonlocal/errors.hpp"

namespace nonlocal {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = 2.220446049250313e-16;

GaussRule compute_rule(int n) {
  GaussRule r;
  r.nodes.resize(static_cast<std::size_t>(n));
  r.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    r.nodes[lo] = -x;
    r.nodes[hi] = x;
    r.weights[lo] = w;
    r.weights[hi] = w;
  }
  if (n % 2 == 1) r.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return r;
}

struct Estimate {
  double value;
  double magnitude;
};

Estimate gl_panel(const std::function<double(double)>& f, double a, double b, long& budget) {
  const auto& rule = gauss_legendre(20);
  budget -= 20;
  if (budget < 0) throw QuadratureFailure("adaptive quadrature exhausted its evaluation budget");
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  double s = 0.0, m = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double v = f(mid + half * rule.nodes[i]);
    s += rule.weights[i] * v;
    m += rule.weights[i] * std::abs(v);
  }
  return {s * half, m * std::abs(half)};
}

double adaptive_step(const std::function<double(double)>& f, double a, double b,
                     const Estimate& whole, double tol, int depth, long& budget) {
  const double mid = 0.5 * (a + b);
  const Estimate left = gl_panel(f, a, mid, budget);
  const Estimate right = gl_panel(f, mid, b, budget);
  const double fine = left.value + right.value;
  const double floor = 64.0 * kEps * (left.magnitude + right.magnitude);
  if (std::abs(fine - whole.value) <= std::max(tol, floor) || mid == a || mid == b) return fine;
  if (depth >= 60) throw QuadratureFailure("adaptive quadrature exceeded its depth limit");
  return adaptive_step(f, a, mid, left, 0.5 * tol, depth + 1, budget) +
         adaptive_step(f, mid, b, right, 0.5 * tol, depth + 1, budget);
}

double adaptive_impl(const std::function<double(double)>& f, double a, double b, double tol,
                     long& budget) {
  if (a == b) return 0.0;
  const Estimate whole = gl_panel(f, a, b, budget);
  return adaptive_step(f, a, b, whole, tol, 0, budget);
}

// int_0^tb g(t) t^(e-1) dt for e > 0, panels [tb/2^(k+1), tb/2^k] plus an
// analytic tail.
double graded(const std::function<double(double)>& g, double tb, double e, double tol,
              double noise, long& budget) {
  double total = 0.0;
  double hi = tb;
  auto integrand = [&g, e](double t) { return g(t) * std::pow(t, e - 1.0); };
  for (int k = 0; k < 2000; ++k) {
    const double lo = 0.5 * hi;
    const double floor = 16.0 * kEps * noise * (std::pow(hi, e) - std::pow(lo, e)) / e;
    total += adaptive_impl(integrand, lo, hi, std::max(tol * (hi - lo) / tb, floor), budget);
    hi = lo;
    if (hi < 1e-300) break;
    if (k >= 16) {
      const double mass = std::pow(hi, e) / e;
      const double variation = std::abs(g(hi) - g(0.5 * hi)) * mass;
      const double limit = std::max(1e-3 * tol, 4.0 * kEps * (std::abs(total) + noise * mass));
      if (variation <= limit) break;
    }
  }
  return total + g(0.5 * hi) * std::pow(hi, e) / e;
}

double piece_power_law(const KernelSpec& k, const std::function<double(double)>& f, double a,
                       double b, double tol, double noise, long& budget) {
  const double sign = (a + b) > 0.0 ? 1.0 : -1.0;
  const double th = k.theta_at_sign(sign);
  if (th == 0.0) return 0.0;
  const double ta = std::min(std::abs(a), std::abs(b));
  const double tb = std::max(std::abs(a), std::abs(b));
  auto g = [&f, sign](double t) { return f(sign * t); };
  const double e = k.beta();
  double v;
  if (ta == 0.0) {
    v = graded(g, tb, e, tol, noise, budget);
  } else {
    v = adaptive_impl([&g, e](double t) { return g(t) * std::pow(t, e - 1.0); }, ta, tb, tol,
                      budget);
  }
  return k.normalization() * th * v;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw InvalidArgument("Gauss-Legendre rule needs at least one node");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussRule>(compute_rule(n));
  return *slot;
}

double gauss(const std::function<double(double)>& f, double a, double b, int n) {
  const auto& rule = gauss_legendre(n);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return s * half;
}

double adaptive_gauss(const std::function<double(double)>& f, double a, double b, double tol,
                      long budget) {
  return adaptive_impl(f, a, b, tol, budget);
}

double reference_integrate(const KernelSpec& kernel, const std::function<double(double)>& f,
                           double tol, std::span<const double> extra_breakpoints, double noise) {
  if (kernel.dimension() != 1)
    throw InvalidArgument("reference_integrate expects a one-dimensional kernel");
  if (kernel.normalization() == 0.0) return 0.0;
  const double d = kernel.delta();
  std::vector<double> pts = kernel.breakpoints();
  for (double x : extra_breakpoints)
    if (x > -d && x < d) pts.push_back(x);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  long budget = 20'000'000;
  const double piece_tol = tol / static_cast<double>(pts.size());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = pts[i], b = pts[i + 1];
    if (kernel.is_power_law()) {
      total += piece_power_law(kernel, f, a, b, piece_tol, noise, budget);
    } else {
      total += adaptive_impl([&](double z) { return f(z) * kernel(z); }, a, b, piece_tol, budget);
    }
  }
  return total;
}

double reference_integrate_2d(const KernelSpec& kernel,
                              const std::function<double(double, double)>& f, double tol) {
  if (kernel.dimension() != 2 || !kernel.is_power_law())
    throw InvalidArgument("reference_integrate_2d expects a two-dimensional sector kernel");
  if (kernel.normalization() == 0.0) return 0.0;
  const auto& th = kernel.theta();
  const double phi0 = std::acos(th.half_angle);
  const double alpha = th.axis == 0 ? 0.0 : 0.5 * kPi;
  const double d = kernel.delta();
  const double e = kernel.beta() + 1.0;
  long budget = 400'000'000;
  double total = 0.0;
  const double arcs[2][2] = {{alpha - phi0, th.plus}, {alpha + kPi - phi0, th.minus}};
  for (const auto& arc : arcs) {
    if (arc[1] == 0.0) continue;
    auto angular = [&](double phi) {
      const double c = std::cos(phi), s = std::sin(phi);
      return graded([&](double r) { return f(r * c, r * s); }, d, e, 0.1 * tol, 0.0, budget);
    };
    total += arc[1] * adaptive_impl(angular, arc[0], arc[0] + 2.0 * phi0, tol, budget);
  }
  return kernel.normalization() * total;
}

// ---------------------------------------------------------------------------
// stencils

double Stencil::weight(int kx, int ky) const {
  if (std::abs(kx) > n || std::abs(ky) > n || (dimension == 1 && ky != 0)) return 0.0;
  const int w = width();
  const int row = dimension == 1 ? 0 : ky + n;
  return dense[static_cast<std::size_t>(row * w + kx + n)];
}

double Stencil::moment(int p, int q) const {
  double s = 0.0;
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    s += weights[i] * std::pow(offsets[i][0] * h, p) * std::pow(offsets[i][1] * h, q);
  }
  return s;
}

double Stencil::first_moment(int axis) const { return axis == 0 ? moment(1, 0) : moment(0, 1); }

double Stencil::abs_sum() const {
  double s = 0.0;
  for (double w : weights) s += std::abs(w);
  return s;
}

namespace {

// Coefficients of the local nodal basis in powers of t = s - base.
// order 1: nodes {0, 1}; order 2: nodes {0, 1, 2}.
const double kLinear[2][3] = {{1.0, -1.0, 0.0}, {0.0, 1.0, 0.0}};
const double kQuadratic[3][3] = {{1.0, -1.5, 0.5}, {0.0, 2.0, -1.0}, {0.0, -0.5, 0.5}};

double basis_coef(int order, int i, int p) { return order == 1 ? kLinear[i][p] : kQuadratic[i][p]; }

// Lowest node of the basis patch serving interval [j, j+1] (in units of h).
int patch_base(int j, int n, int order) {
  if (order == 1) return j;
  if (j >= 0) return (j % 2 == 0 && j + 2 <= n) ? j : j - 1;
  const int jp = -j - 1;
  const int ap = (jp % 2 == 0 && jp + 2 <= n) ? jp : jp - 1;
  return -ap - 2;
}

int resolve_n(const KernelSpec& kernel, double h) {
  if (!(h > 0.0)) throw InvalidArgument("grid spacing must be positive");
  const double ratio = kernel.delta() / h;
  const double n = std::round(ratio);
  if (std::abs(ratio - n) > 1e-9 * std::max(1.0, ratio))
    throw IncompatibleHorizon("delta / h is not an integer");
  if (n < 2) throw ResolutionTooCoarse("stencil needs at least two offsets per direction");
  return static_cast<int>(n);
}

// Contributions of one side (sign = +1 or -1) of a 1D kernel to the nodes
// 0..n on that side.
std::vector<double> half_weights_1d(const KernelSpec& k, double h, int n, int order, double sign) {
  std::vector<double> w(static_cast<std::size_t>(n + 1), 0.0);
  const bool power = k.is_power_law();
  const double th = power ? k.theta_at_sign(sign) : 1.0;
  if (th == 0.0 || k.normalization() == 0.0) return w;

  std::vector<double> bps;
  for (double b : k.breakpoints()) bps.push_back(sign * b / h);

  for (int j = 0; j < n; ++j) {
    const int a = patch_base(j, n, order);
    double q[3] = {0.0, 0.0, 0.0};
    if (power && j == 0) {
      const double c = k.normalization() * th * std::pow(h, k.beta());
      for (int p = 0; p <= order; ++p) q[p] = c / (p + k.beta());
    } else {
      std::vector<double> cuts{static_cast<double>(j), static_cast<double>(j + 1)};
      for (double b : bps)
        if (b > j && b < j + 1) cuts.push_back(b);
      std::sort(cuts.begin(), cuts.end());
      for (int p = 0; p <= order; ++p) {
        auto integrand = [&, p](double s) {
          const double t = s - a;
          double tp = 1.0;
          for (int i = 0; i < p; ++i) tp *= t;
          return tp * k(sign * h * s) * h;
        };
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
          if (k.family() == KernelFamily::MollifierDerivative) {
            q[p] += adaptive_gauss(integrand, cuts[c], cuts[c + 1], 1e-17);
          } else {
            q[p] += gauss(integrand, cuts[c], cuts[c + 1], 20);
          }
        }
      }
    }
    for (int i = 0; i <= order; ++i) {
      double v = 0.0;
      for (int p = 0; p <= order; ++p) v += basis_coef(order, i, p) * q[p];
      w[static_cast<std::size_t>(a + i)] += v;
    }
  }
  return w;
}

Stencil build_1d(const KernelSpec& k, double h, int order) {
  Stencil st;
  st.dimension = 1;
  st.order = order;
  st.h = h;
  st.n = resolve_n(k, h);
  const int n = st.n;
  st.dense.assign(static_cast<std::size_t>(2 * n + 1), 0.0);
  auto at = [&](int kk) -> double& { return st.dense[static_cast<std::size_t>(kk + n)]; };

  const std::vector<double> plus = half_weights_1d(k, h, n, order, 1.0);
  if (k.is_antisymmetric()) {
    for (int kk = 1; kk <= n; ++kk) {
      at(kk) = plus[static_cast<std::size_t>(kk)];
      at(-kk) = -plus[static_cast<std::size_t>(kk)];
    }
    at(0) = 0.0;
  } else if (k.is_symmetric()) {
    for (int kk = 1; kk <= n; ++kk) {
      at(kk) = plus[static_cast<std::size_t>(kk)];
      at(-kk) = plus[static_cast<std::size_t>(kk)];
    }
    at(0) = plus[0] + plus[0];
  } else {
    const std::vector<double> minus = half_weights_1d(k, h, n, order, -1.0);
    for (int kk = 1; kk <= n; ++kk) {
      at(kk) = plus[static_cast<std::size_t>(kk)];
      at(-kk) = minus[static_cast<std::size_t>(kk)];
    }
    at(0) = plus[0] + minus[0];
  }
  return st;
}

// Product of two polynomials given by coefficient lists.
std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

double wrap_near(double angle, double center) {
  double d = std::remainder(angle - center, 2.0 * kPi);
  return center + d;
}

// Integrals over the cell [x0, x0+1] x [y0, y0+1] (units of h), clipped to the
// disk of radius n, of (s_x - bx)^p (s_y - by)^q theta(phi) |s|^(beta-1), for
// p, q <= order.
void cell_moments(const KernelSpec& k, int n, int x0, int y0, int bx, int by, int order,
                  double out[3][3]) {
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q) out[p][q] = 0.0;

  const double xs[2] = {static_cast<double>(x0), static_cast<double>(x0 + 1)};
  const double ys[2] = {static_cast<double>(y0), static_cast<double>(y0 + 1)};
  // Nearest point of the cell to the origin.
  const double nx = std::clamp(0.0, xs[0], xs[1]);
  const double ny = std::clamp(0.0, ys[0], ys[1]);
  if (std::hypot(nx, ny) >= n) return;

  const bool origin_corner = (x0 == 0 || x0 == -1) && (y0 == 0 || y0 == -1);
  const double center = std::atan2(y0 + 0.5, x0 + 0.5);

  std::vector<double> angles;
  for (double x : xs)
    for (double y : ys) {
      if (x == 0.0 && y == 0.0) continue;
      angles.push_back(wrap_near(std::atan2(y, x), center));
    }
  const double lo = *std::min_element(angles.begin(), angles.end());
  const double hi = *std::max_element(angles.begin(), angles.end());

  std::vector<double> cuts = angles;
  auto add_cut = [&](double a) {
    const double w = wrap_near(a, center);
    if (w > lo && w < hi) cuts.push_back(w);
  };
  const auto& th = k.theta();
  const double phi0 = std::acos(th.half_angle);
  const double alpha = th.axis == 0 ? 0.0 : 0.5 * kPi;
  for (double a : {alpha - phi0, alpha + phi0, alpha + kPi - phi0, alpha + kPi + phi0}) add_cut(a);
  const double rr = static_cast<double>(n) * n;
  for (double x : xs) {
    const double y2 = rr - x * x;
    if (y2 <= 0.0) continue;
    const double y = std::sqrt(y2);
    for (double yy : {y, -y})
      if (yy > ys[0] && yy < ys[1]) add_cut(std::atan2(yy, x));
  }
  for (double y : ys) {
    const double x2 = rr - y * y;
    if (x2 <= 0.0) continue;
    const double x = std::sqrt(x2);
    for (double xx : {x, -x})
      if (xx > xs[0] && xx < xs[1]) add_cut(std::atan2(y, xx));
  }
  std::sort(cuts.begin(), cuts.end());

  const auto& ang_rule = gauss_legendre(20);
  const auto& rad_rule = gauss_legendre(16);
  const double beta = k.beta();
  const int deg = order;

  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double pa = cuts[c], pb = cuts[c + 1];
    if (pb - pa <= 0.0) continue;
    const double th_val = k.theta_at_angle(0.5 * (pa + pb));
    if (th_val == 0.0) continue;
    const double half = 0.5 * (pb - pa), mid = 0.5 * (pa + pb);
    for (std::size_t ia = 0; ia < ang_rule.nodes.size(); ++ia) {
      const double phi = mid + half * ang_rule.nodes[ia];
      const double cs = std::cos(phi), sn = std::sin(phi);
      double r_in = 0.0, r_out = static_cast<double>(n);
      auto slab = [&](double dir, double a, double b) {
        if (dir > 0.0) {
          r_in = std::max(r_in, a / dir);
          r_out = std::min(r_out, b / dir);
        } else if (dir < 0.0) {
          r_in = std::max(r_in, b / dir);
          r_out = std::min(r_out, a / dir);
        } else if (a > 0.0 || b < 0.0) {
          r_out = -1.0;
        }
      };
      slab(cs, xs[0], xs[1]);
      slab(sn, ys[0], ys[1]);
      if (origin_corner) r_in = 0.0;
      if (!(r_out > r_in)) continue;
      const double wphi = ang_rule.weights[ia] * half * th_val;

      if (r_in == 0.0) {
        // (r cs - bx)^p (r sn - by)^q r^beta integrated analytically.
        std::vector<double> px{1.0}, py{1.0};
        std::vector<std::vector<double>> powx{px}, powy{py};
        for (int p = 1; p <= deg; ++p) {
          px = poly_mul(px, {-static_cast<double>(bx), cs});
          py = poly_mul(py, {-static_cast<double>(by), sn});
          powx.push_back(px);
          powy.push_back(py);
        }
        for (int p = 0; p <= deg; ++p)
          for (int q = 0; q <= deg; ++q) {
            const auto poly = poly_mul(powx[static_cast<std::size_t>(p)], powy[static_cast<std::size_t>(q)]);
            double v = 0.0;
            for (std::size_t m = 0; m < poly.size(); ++m) {
              const double e = static_cast<double>(m) + beta + 1.0;
              v += poly[m] * std::pow(r_out, e) / e;
            }
            out[p][q] += wphi * v;
          }
      } else {
        const double rh = 0.5 * (r_out - r_in), rm = 0.5 * (r_out + r_in);
        for (std::size_t ir = 0; ir < rad_rule.nodes.size(); ++ir) {
          const double r = rm + rh * rad_rule.nodes[ir];
          const double wr = wphi * rad_rule.weights[ir] * rh * std::pow(r, beta);
          const double tx = r * cs - bx, ty = r * sn - by;
          double ppx = 1.0;
          for (int p = 0; p <= deg; ++p) {
            double ppy = 1.0;
            for (int q = 0; q <= deg; ++q) {
              out[p][q] += wr * ppx * ppy;
              ppy *= ty;
            }
            ppx *= tx;
          }
        }
      }
    }
  }
}

Stencil build_2d(const KernelSpec& k, double h, int order) {
  if (!k.is_power_law()) throw InvalidArgument("two-dimensional stencils need a sector kernel");
  Stencil st;
  st.dimension = 2;
  st.order = order;
  st.h = h;
  st.n = resolve_n(k, h);
  const int n = st.n;
  const int w = 2 * n + 1;
  st.dense.assign(static_cast<std::size_t>(w * w), 0.0);
  auto at = [&](int kx, int ky) -> double& {
    return st.dense[static_cast<std::size_t>((ky + n) * w + kx + n)];
  };
  if (k.normalization() == 0.0) return st;

  const double scale = k.normalization() * std::pow(h, k.beta() + 1.0);
  double mom[3][3];
  for (int cy = -n; cy < n; ++cy) {
    for (int cx = -n; cx < n; ++cx) {
      const int bx = patch_base(cx, n, order), by = patch_base(cy, n, order);
      cell_moments(k, n, cx, cy, bx, by, order, mom);
      for (int i = 0; i <= order; ++i)
        for (int j = 0; j <= order; ++j) {
          double v = 0.0;
          for (int p = 0; p <= order; ++p)
            for (int q = 0; q <= order; ++q)
              v += basis_coef(order, i, p) * basis_coef(order, j, q) * mom[p][q];
          at(bx + i, by + j) += scale * v;
        }
    }
  }

  // Reflection about the sector axis leaves theta unchanged.
  const int ax = k.theta().axis;
  for (int a = -n; a <= n; ++a) {
    for (int b = 1; b <= n; ++b) {
      double& p = ax == 0 ? at(a, b) : at(b, a);
      double& m = ax == 0 ? at(a, -b) : at(-b, a);
      const double avg = 0.5 * (p + m);
      p = avg;
      m = avg;
    }
  }
  const bool anti = k.is_antisymmetric();
  const bool sym = k.is_symmetric();
  if (anti || sym) {
    for (int ky = -n; ky <= n; ++ky)
      for (int kx = -n; kx <= n; ++kx) {
        if (ky < 0 || (ky == 0 && kx <= 0)) continue;
        double& p = at(kx, ky);
        double& m = at(-kx, -ky);
        if (anti) {
          const double v = 0.5 * (p - m);
          p = v;
          m = -v;
        } else {
          const double v = 0.5 * (p + m);
          p = v;
          m = v;
        }
      }
    if (anti) at(0, 0) = 0.0;
  }
  return st;
}

void finish(Stencil& st) {
  const int n = st.n;
  const int w = st.width();
  const int rows = st.dimension == 1 ? 1 : w;
  st.offsets.clear();
  st.weights.clear();
  for (int r = 0; r < rows; ++r) {
    const int ky = st.dimension == 1 ? 0 : r - n;
    for (int kx = -n; kx <= n; ++kx) {
      const double v = st.weight(kx, ky);
      if (v != 0.0) {
        st.offsets.push_back({kx, ky});
        st.weights.push_back(v);
      }
    }
  }
  // Pairwise accumulation keeps the sum exactly zero for odd weights.
  double s = st.weight(0, 0);
  for (int r = 0; r < rows; ++r) {
    const int ky = st.dimension == 1 ? 0 : r - n;
    for (int kx = -n; kx <= n; ++kx) {
      if (ky < 0 || (ky == 0 && kx <= 0)) continue;
      s += st.weight(kx, ky) + st.weight(-kx, -ky);
    }
  }
  st.zeroth_sum = s;
}

}  // namespace

Stencil build_stencil(const KernelSpec& kernel, double h, int order) {
  if (order != 1 && order != 2) throw InvalidArgument("quadrature order must be 1 or 2");
  Stencil st = kernel.dimension() == 1 ? build_1d(kernel, h, order) : build_2d(kernel, h, order);
  finish(st);
  return st;
}

Stencil build_stencil(const KernelSpec& kernel, const Grid& grid, int order) {
  if (kernel.dimension() != grid.dimension())
    throw GridMismatch("kernel and grid dimensions differ");
  const double gd = grid.domain().delta();
  if (std::abs(kernel.delta() - gd) > 1e-12 * gd)
    throw IncompatibleHorizon("kernel horizon does not match the grid's delta");
  return build_stencil(kernel, grid.spacing(), order);
}

}  // namespace nonlocal
