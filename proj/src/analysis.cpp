#include "nonlocal/analysis.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "nonlocal/errors.hpp"
#include "nonlocal/parallel.hpp"
#include "nonlocal/quadrature.hpp"

namespace nonlocal {

// ---------------------------------------------------------------------------
// random data

Rng::Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

double Rng::uniform(double lo, double hi) {
  // splitmix64 step
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  z ^= z >> 31;
  const double u = static_cast<double>(z >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

GridFunction random_function(const GridPtr& grid, Rng& rng, SupportTag tag) {
  GridFunction f = GridFunction::zeros(grid, tag);
  if (tag == SupportTag::OnOmega) {
    for (double& x : f.values) x = rng.uniform();
    return f;
  }
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const double v = rng.uniform();
    if (tag == SupportTag::ZeroOnCollar && !grid->in_omega(i)) continue;
    f.values[i] = v;
  }
  return f;
}

// ---------------------------------------------------------------------------
// convergence

double fit_order(const std::vector<double>& deltas, const std::vector<double>& errors) {
  if (deltas.size() != errors.size()) throw LengthMismatch("deltas and errors differ in length");
  const std::size_t n = deltas.size();
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  const std::size_t first = n > 4 ? n - 4 : 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(n - first);
  for (std::size_t i = first; i < n; ++i) {
    if (!(errors[i] > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    const double x = std::log(deltas[i]), y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

double predicted_order(const KernelSpec& kernel) {
  const KernelMoments m = moments(kernel, 5);
  const double ref = std::max(first_absolute_moment(kernel), 1e-300);
  for (int order = 2; order <= 5; ++order) {
    double v = 0.0;
    for (const auto& [idx, val] : m.higher)
      if (idx[0] + idx[1] == order) v = std::max(v, std::abs(val));
    // Moments scale like delta^(order-1) relative to the first moment, except
    // the even part of the polynomial family, which carries one more power.
    if (v > 1e-10 * ref * std::pow(kernel.delta(), order - 1)) {
      if (kernel.family() == KernelFamily::Polynomial && order % 2 == 0) return order;
      return order - 1.0;
    }
  }
  return kernel.family() == KernelFamily::Polynomial ? 6.0 : 5.0;
}

int default_n_per_delta(double delta) {
  return std::max(8, static_cast<int>(std::lround(0.4 / delta)));
}

namespace {

void require_decreasing(const std::vector<double>& deltas) {
  if (deltas.empty()) throw InvalidArgument("delta sweep is empty");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0)) throw InvalidArgument("deltas must be positive");
    if (i > 0 && !(deltas[i] < deltas[i - 1]))
      throw InvalidArgument("deltas must be strictly decreasing");
  }
}

double omega_norm(const Grid& g, const std::vector<double>& e, double p) {
  double s = 0.0;
  if (std::isinf(p)) {
    for (double v : e) s = std::max(s, std::abs(v));
    return s;
  }
  for (double v : e) s += std::pow(std::abs(v), p);
  return std::pow(s * g.cell_volume(), 1.0 / p);
}

// int_lo^hi f, split at the given breakpoints.
double integrate_pieces(const std::function<double(double)>& f, double lo, double hi,
                        const std::vector<double>& breaks) {
  std::vector<double> pts{lo, hi};
  for (double b : breaks)
    if (b > lo && b < hi) pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) s += adaptive_gauss(f, pts[i], pts[i + 1], 1e-14);
  return s;
}

}  // namespace

double nonlocal_derivative_at(const KernelSpec& kernel, const TestFunction& u, double x) {
  if (kernel.dimension() != 1) throw InvalidArgument("pointwise evaluation is one-dimensional");
  const double ux = u.value(x, 0.0);
  std::vector<double> extra;
  for (double b : u.breakpoints) extra.push_back(b - x);
  return reference_integrate(
      kernel, [&](double z) { return u.value(x + z, 0.0) - ux; }, 1e-13, extra, std::abs(ux));
}

ConvergenceReport strong_convergence_study(const TestFunction& u, const KernelFactory& family,
                                           const std::vector<double>& deltas,
                                           const StudyOptions& options) {
  require_decreasing(deltas);
  ConvergenceReport r;
  r.norm = std::isinf(options.p) ? NormKind::Pointwise : NormKind::Lp;
  r.p = options.p;
  r.predicted_order = predicted_order(family(deltas.front()));
  for (double delta : deltas) {
    const KernelSpec k = family(delta);
    if (k.dimension() != 1) throw InvalidArgument("strong convergence study is one-dimensional");
    const int n = options.n_per_delta > 0 ? options.n_per_delta : default_n_per_delta(delta);
    const GridPtr grid = build_grid(Domain::interval(options.lo, options.hi, delta), n);
    const auto& nodes = grid->omega_nodes();
    const double a = k.direction()[0];
    std::vector<double> err(nodes.size());
    if (options.evaluation == Evaluation::Reference) {
      parallel_for(nodes.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
          const double x = grid->coordinate(nodes[i], 0);
          err[i] = nonlocal_derivative_at(k, u, x) - a * u.dx(x, 0.0);
        }
      });
    } else {
      const NonlocalOperator op = assemble(k, grid, options.quad_order);
      const GridFunction d = apply(op, GridFunction::sample(grid, u.value));
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double x = grid->coordinate(nodes[i], 0);
        err[i] = d.values[nodes[i]] - a * u.dx(x, 0.0);
      }
    }
    r.deltas.push_back(delta);
    r.n_per_delta.push_back(n);
    r.errors.push_back(omega_norm(*grid, err, options.p));
  }
  r.fitted_order = fit_order(r.deltas, r.errors);
  return r;
}

ConvergenceReport weak_convergence_study(const TestFunction& u, const TestFunction& phi,
                                         const KernelFactory& family,
                                         const std::vector<double>& deltas,
                                         const StudyOptions& options) {
  require_decreasing(deltas);
  ConvergenceReport r;
  r.norm = NormKind::Duality;
  r.predicted_order = predicted_order(family(deltas.front()));
  for (double delta : deltas) {
    const KernelSpec k = family(delta);
    if (k.dimension() != 1) throw InvalidArgument("weak convergence study is one-dimensional");
    const int n = options.n_per_delta > 0 ? options.n_per_delta : default_n_per_delta(delta);
    const GridPtr grid = build_grid(Domain::interval(options.lo, options.hi, delta), n);
    const double a = k.direction()[0];
    const NonlocalOperator op = assemble(k, grid, options.quad_order);
    const GridFunction du = apply(op, GridFunction::sample(grid, u.value));
    const GridFunction ph = GridFunction::sample(grid, phi.value);
    const double lhs = pairing(du, ph);
    std::vector<double> breaks = u.breakpoints;
    breaks.insert(breaks.end(), phi.breakpoints.begin(), phi.breakpoints.end());
    const double rhs = integrate_pieces(
        [&](double x) { return u.value(x, 0.0) * a * phi.dx(x, 0.0); }, options.lo, options.hi,
        breaks);
    r.deltas.push_back(delta);
    r.n_per_delta.push_back(n);
    r.errors.push_back(std::abs(lhs + rhs));
  }
  r.fitted_order = fit_order(r.deltas, r.errors);
  return r;
}

// ---------------------------------------------------------------------------
// integration by parts

double adjoint_residual(const NonlocalOperator& op, const GridFunction& u, const GridFunction& v) {
  const NonlocalOperator t = adjoint(op);
  const double left = pairing(apply(op, u), v);
  const double right = pairing(u, apply(t, v));
  const double denom = lp_norm(u, 2.0) * lp_norm(v, 2.0);
  if (denom == 0.0) return std::abs(left - right);
  return std::abs(left - right) / denom;
}

IbpResiduals ibp_residual(const GridFunction& u, const GridFunction& v, const KernelSpec& kernel,
                          const GridPtr& grid, int quad_order) {
  const Stencil w = build_stencil(kernel, *grid, quad_order);
  const Stencil ws = symmetric_part(w);
  const Stencil wa = antisymmetric_part(w);
  const KernelParts parts = decompose(kernel);
  const NonlocalOperator d = assemble_from_stencil(kernel, grid, w);
  const NonlocalOperator ds = assemble_from_stencil(parts.symmetric, grid, ws);
  const NonlocalOperator da = assemble_from_stencil(parts.antisymmetric, grid, wa);

  const GridFunction du = apply(d, u), dv = apply(d, v);
  const GridFunction dsu = apply(ds, u), dsv = apply(ds, v);
  const GridFunction dau = apply(da, u), dav = apply(da, v);

  const Grid& g = *grid;
  const int n = w.n;
  const int ylo = w.dimension == 1 ? 0 : -n, yhi = w.dimension == 1 ? 0 : n;
  double c_sym = 0.0, c_anti = 0.0, c_comb = 0.0;
  for (std::size_t x : g.omega_nodes()) {
    if (g.region(x) != Region::InnerCollar) continue;
    for (int ky = ylo; ky <= yhi; ++ky)
      for (int kx = -n; kx <= n; ++kx) {
        const double wk = w.weight(kx, ky);
        const double wsk = ws.weight(kx, ky);
        const double wak = wa.weight(kx, ky);
        if (wk == 0.0 && wsk == 0.0 && wak == 0.0) continue;
        const auto y = static_cast<std::size_t>(g.neighbor(x, kx, ky));
        if (g.region(y) != Region::OuterCollar) continue;
        const double uy_vx = u.values[y] * v.values[x];
        const double ux_vy = u.values[x] * v.values[y];
        c_sym += (uy_vx - ux_vy) * wsk;
        c_anti += (uy_vx + ux_vy) * wak;
        c_comb += (uy_vx + ux_vy) * wk - 2.0 * ux_vy * wsk;
      }
  }
  const double vol = g.cell_volume();
  c_sym *= vol;
  c_anti *= vol;
  c_comb *= vol;

  IbpResiduals r;
  r.sym = std::abs(pairing(dsu, v) - pairing(u, dsv) - c_sym);
  r.antisym = std::abs(pairing(dau, v) + pairing(u, dav) - c_anti);
  r.combined = std::abs(pairing(du, v) + pairing(u, dv) - (c_comb + 2.0 * pairing(u, dsv)));
  r.scale = lp_norm(u, 2.0) * lp_norm(v, 2.0) * operator_norm_2(d.matrix());
  return r;
}

// ---------------------------------------------------------------------------
// spectra

double sigma_min(const NonlocalOperator& op) {
  const Eigen::MatrixXd m = op.omega_block();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues().minCoeff();
}

SpectralReport spectrum_probe(const KernelSpec& kernel, const GridPtr& grid, Subspace subspace,
                              int quad_order) {
  if (grid->omega_size() > 4096) throw InvalidArgument("spectrum probe limited to 4096 Omega nodes");
  const NonlocalOperator op = assemble(kernel, grid, quad_order);
  const Eigen::MatrixXd m =
      subspace == Subspace::ZeroOnCollar ? op.omega_block() : Eigen::MatrixXd(op.matrix());
  SpectralReport r;
  r.kernel_mean = op.mean();
  r.grid_sizes.push_back(static_cast<int>(grid->omega_size()));
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  r.norm2 = svd.singularValues().maxCoeff();
  r.min_singular_values.push_back(svd.singularValues().minCoeff());
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  if (es.info() != Eigen::Success) throw QuadratureFailure("eigenvalue iteration did not converge");
  const auto ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    r.spectrum_sample.push_back(ev(i));
    r.max_abs_real = std::max(r.max_abs_real, std::abs(ev(i).real()));
    r.max_abs_imag = std::max(r.max_abs_imag, std::abs(ev(i).imag()));
  }
  return r;
}

SpectralReport compactness_decay(const KernelSpec& kernel, const Domain& domain,
                                 const std::vector<int>& n_per_delta, int quad_order) {
  SpectralReport r;
  for (std::size_t i = 0; i < n_per_delta.size(); ++i) {
    if (i > 0 && n_per_delta[i] <= n_per_delta[i - 1])
      throw InvalidArgument("grid sizes must increase");
    const GridPtr grid = build_grid(domain, n_per_delta[i]);
    if (grid->omega_size() > 4096) throw InvalidArgument("compactness probe limited to 4096 Omega nodes");
    const NonlocalOperator op = assemble(kernel, grid, quad_order);
    r.kernel_mean = op.mean();
    r.grid_sizes.push_back(static_cast<int>(grid->omega_size()));
    r.min_singular_values.push_back(sigma_min(op));
  }
  return r;
}

double poincare_ratio(const KernelSpec& kernel, const GridPtr& grid, int quad_order) {
  if (grid->omega_size() > 4096) throw InvalidArgument("Poincare probe limited to 4096 Omega nodes");
  return sigma_min(assemble(kernel, grid, quad_order));
}

double witness_ratio(const NonlocalOperator& op, const TestFunction& h) {
  const GridPtr& g = op.grid();
  const GridFunction f = GridFunction::sample(g, h.value);
  const GridFunction d = apply(op, f);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < g->size(); ++i) {
    if (g->region(i) == Region::InteriorCore) num += d.values[i] * d.values[i];
    if (g->in_omega(i)) den += f.values[i] * f.values[i];
  }
  if (den == 0.0) return 0.0;
  return std::sqrt(num / den);
}

// ---------------------------------------------------------------------------
// oscillation and figures

double oscillation_value(const KernelSpec& kernel, const TestFunction& u) {
  if (u.name == "zero") return 0.0;
  if (u.name != "oscillating") throw InvalidArgument("oscillation check expects x^2 sin(1/x)");
  if (!kernel.is_power_law() || kernel.dimension() != 1)
    throw InvalidArgument("oscillation check needs a one-dimensional power-law kernel");
  // int_0^delta t^(1+beta) sin(1/t) dt = int_{1/delta}^inf sin(s) s^(-3-beta) ds.
  const double e = 3.0 + kernel.beta();
  auto f = [e](double s) { return std::sin(s) * std::pow(s, -e); };
  const double pi = std::numbers::pi;
  const double s0 = 1.0 / kernel.delta();
  double k = std::ceil(s0 / pi);
  double total = 0.0;
  if (k * pi > s0) total += adaptive_gauss(f, s0, k * pi, 1e-20);
  for (long it = 0; it < 50'000'000; ++it) {
    const double a = k * pi;
    total += gauss(f, a, a + pi, 20);
    k += 1.0;
    const double s = k * pi;
    // Remainder is cos(s) s^-e + O(s^-(e+2)).
    const double next = e * (e + 1.0) * std::pow(s, -e - 2.0);
    if (next <= 1e-15 * std::abs(total)) {
      total += std::cos(s) * std::pow(s, -e);
      break;
    }
  }
  const auto& th = kernel.theta();
  return kernel.normalization() * (th.plus - th.minus) * total;
}

FigureTable reproduce_figure(FigureKind which, const KernelSpec& kernel, const GridPtr& grid,
                             int quad_order) {
  if (grid->dimension() != 1) throw InvalidArgument("figures are one-dimensional");
  const TestFunction u = test_function(which == FigureKind::AbsVal ? "absval" : "cusp");
  const NonlocalOperator op = assemble(kernel, grid, quad_order);
  const GridFunction du = apply(op, GridFunction::sample(grid, u.value));
  const double delta = kernel.delta();
  FigureTable t;
  double below = -1.0, above = -1.0, xb = -1e300, xa = 1e300, at = 0.0;
  bool exact = false;
  for (std::size_t i : grid->omega_nodes()) {
    const double x = grid->coordinate(i, 0);
    const double d = du.values[i];
    t.x.push_back(x);
    t.u.push_back(u.value(x, 0.0));
    t.du.push_back(u.dx(x, 0.0));
    t.Du.push_back(d);
    t.overall_max = std::max(t.overall_max, std::abs(d));
    if (std::abs(x - 0.5) > 2.0 * delta) {
      t.smooth_max = std::max(t.smooth_max, std::abs(d));
      t.smooth_max_error = std::max(t.smooth_max_error, std::abs(d - u.dx(x, 0.0)));
    }
    if (x == 0.5) {
      exact = true;
      at = d;
    } else if (x < 0.5 && x > xb) {
      xb = x;
      below = d;
    } else if (x > 0.5 && x < xa) {
      xa = x;
      above = d;
    }
  }
  t.value_at_kink = exact ? at : 0.5 * (below + above);
  return t;
}

}  // namespace nonlocal
