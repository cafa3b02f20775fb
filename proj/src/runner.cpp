#include "nonlocal/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nonlocal/analysis.hpp"
#include "nonlocal/operator.hpp"
#include "nonlocal/parallel.hpp"
#include "nonlocal/quadrature.hpp"
#include "nonlocal/test_functions.hpp"

namespace nonlocal {

namespace {

using Row = std::vector<Cell>;

long long as_ll(std::size_t v) { return static_cast<long long>(v); }

Domain make_domain(const ExperimentConfig& c, double delta) {
  const int d = static_cast<int>(c.domain.lo.size());
  return Domain(d, c.domain.lo, c.domain.hi, delta);
}

std::vector<double> delta_list(const ExperimentConfig& c, const KernelBlock& k) {
  if (!c.sweep.deltas.empty()) return c.sweep.deltas;
  return {*k.delta};
}

std::string symmetry(const KernelSpec& k) {
  if (k.is_antisymmetric()) return "antisymmetric";
  if (k.is_symmetric()) return "symmetric";
  return "mixed";
}

bool is_mean_free(const KernelSpec& k) {
  const double l1 = l1_norm(k);
  return std::abs(moments(k, 0).zeroth) <= 1e-12 * std::max(l1, 1e-300);
}

double along(const std::array<double, 2>& a, double x, double y) { return a[0] * x + a[1] * y; }

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Holds the first assembled operator for --dump-matrix.
struct Dumper {
  std::string path;
  bool done = false;
  void offer(const NonlocalOperator& op) {
    if (path.empty() || done) return;
    dump_matrix_coo(op, path);
    done = true;
  }
};

// ---------------------------------------------------------------------------

ExperimentReport kernel_info(const ExperimentConfig& c, Dumper&) {
  ExperimentReport r({"kernel", "family", "delta", "normalization", "ref_zeroth", "ref_first",
                      "ref_m2", "ref_m3", "ref_m4", "ref_l1", "l1_norm", "m2_sym", "stencil_zeroth",
                      "stencil_first", "stencil_l1", "stencil_m2_sym", "n_per_delta"});
  const int n = c.domain.n_per_delta;
  for (const auto& kb : c.kernels) {
    for (double delta : delta_list(c, kb)) {
      const KernelSpec k = kb.build(delta);
      const auto a = k.direction();
      auto power = [&](int m) {
        if (k.dimension() == 1)
          return reference_integrate(k, [&](double z) { return std::pow(a[0] * z, m); }, 1e-15);
        return reference_integrate_2d(
            k, [&](double x, double y) { return std::pow(along(a, x, y), m); }, 1e-14);
      };
      auto sign = [&k](double x, double y) {
        const std::array<double, 2> z{x, y};
        const double v = k.dimension() == 1 ? k(x) : k(std::span<const double>(z));
        return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
      };
      const double ref_l1 =
          k.dimension() == 1
              ? reference_integrate(k, [&sign](double z) { return sign(z, 0.0); }, 1e-15,
                                    sign_change_points(k))
              : reference_integrate_2d(k, sign, 1e-14);
      const Stencil st = build_stencil(k, delta / n, c.quad_order);
      const Stencil ss = symmetric_part(st);
      const double st_first = a[0] * st.first_moment(0) + (st.dimension == 2 ? a[1] * st.first_moment(1) : 0.0);
      const double st_m2 = st.dimension == 1 ? ss.moment(2) : ss.moment(2, 0) + ss.moment(0, 2);
      const std::string family = kb.family == KernelFamily::Tabulated && kb.dic_cells > 0
                                     ? "dic"
                                     : std::string(to_string(k.family()));
      r.add_row({kb.label, family, delta, k.normalization(), power(0), power(1), power(2),
                 power(3), power(4), ref_l1, l1_norm(k), second_moment_of_symmetric_part(k),
                 st.zeroth_sum, st_first, st.abs_sum(), st_m2, static_cast<long long>(n)});
      if (c.study.expect_normalization) {
        const double e = *c.study.expect_normalization;
        r.check("normalization." + kb.label,
                std::abs(k.normalization() - e) <= c.study.rtol * std::abs(e));
      }
    }
  }
  return r;
}

ExperimentReport apply_study(const ExperimentConfig& c, Dumper& dump) {
  const KernelBlock& kb = c.kernels.front();
  const KernelSpec k = kb.build();
  const double delta = k.delta();
  const TestFunction u = test_function(c.study.u, delta);
  std::string target = c.study.expect;
  if (target == "auto") target = c.study.u == "zero_mode" ? "zero" : "derivative";
  if (target != "zero" && target != "derivative")
    throw InvalidArgument("apply expects zero or derivative");

  ExperimentReport r({"n_per_delta", "h", "omega_nodes", "max_abs_Du_interior",
                      "max_err_interior", "l2_err_omega"});
  std::vector<double> hs, vals;
  const auto a = k.direction();
  for (int n : c.sweep.n_per_delta) {
    const GridPtr grid = build_grid(make_domain(c, delta), n);
    const NonlocalOperator op = assemble(k, grid, c.quad_order);
    dump.offer(op);
    const GridFunction du = apply(op, GridFunction::sample(grid, u.value));
    double max_du = 0.0, max_err = 0.0, l2 = 0.0;
    for (std::size_t i : grid->omega_nodes()) {
      const auto p = grid->point(i);
      const double exact = along(a, u.dx(p[0], p[1]), u.dy(p[0], p[1]));
      const double e = du.values[i] - exact;
      l2 += e * e;
      if (grid->region(i) == Region::InteriorCore) {
        max_du = std::max(max_du, std::abs(du.values[i]));
        max_err = std::max(max_err, std::abs(e));
      }
    }
    l2 = std::sqrt(l2 * grid->cell_volume());
    const double h = grid->spacing();
    r.add_row({static_cast<long long>(n), h, as_ll(grid->omega_size()), max_du, max_err, l2});
    hs.push_back(h);
    vals.push_back(target == "zero" ? max_du : max_err);
  }
  r.set_result("target", target == "zero" ? "max_abs_Du_interior" : "max_err_interior");
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (c.study.bound_h2)
      r.check("bound_h2.n" + std::to_string(c.sweep.n_per_delta[i]),
              vals[i] <= *c.study.bound_h2 * hs[i] * hs[i]);
    if (c.study.max_error)
      r.check("max_error.n" + std::to_string(c.sweep.n_per_delta[i]), vals[i] <= *c.study.max_error);
  }
  for (std::size_t i = 1; i < vals.size(); ++i) {
    const double order = std::log(vals[i - 1] / vals[i]) / std::log(hs[i - 1] / hs[i]);
    r.set_result("observed_order.n" + std::to_string(c.sweep.n_per_delta[i]), order);
    if (c.study.bound_h2) {
      // Second-order decrease, unless both values already sit at roundoff.
      const double ratio = (hs[i] / hs[i - 1]) * (hs[i] / hs[i - 1]);
      const bool floor = vals[i] <= 1e-13 && vals[i - 1] <= 1e-13;
      r.check("second_order.n" + std::to_string(c.sweep.n_per_delta[i]),
              floor || vals[i] <= vals[i - 1] * ratio * (4.0 / 3.5));
    }
  }
  return r;
}

ExperimentReport convergence(const ExperimentConfig& c, Dumper&) {
  const KernelBlock& kb = c.kernels.front();
  const TestFunction u = test_function(c.study.u, c.sweep.deltas.front());
  StudyOptions o;
  o.lo = c.domain.lo[0];
  o.hi = c.domain.hi[0];
  o.p = c.study.p;
  o.quad_order = c.quad_order;
  o.evaluation = c.study.evaluation == "assembled" ? Evaluation::Assembled : Evaluation::Reference;
  if (c.sweep.n_per_delta.size() == 1) o.n_per_delta = c.sweep.n_per_delta.front();
  const ConvergenceReport rep =
      strong_convergence_study(u, [&kb](double d) { return kb.build(d); }, c.sweep.deltas, o);
  ExperimentReport r({"delta", "n_per_delta", "h", "error"});
  for (std::size_t i = 0; i < rep.deltas.size(); ++i)
    r.add_row({rep.deltas[i], static_cast<long long>(rep.n_per_delta[i]),
               rep.deltas[i] / rep.n_per_delta[i], rep.errors[i]});
  r.set_result("fitted_order", rep.fitted_order);
  r.set_result("predicted_order", rep.predicted_order);
  r.set_result("norm", std::isinf(rep.p) ? std::string("pointwise") : "L" + short_number(rep.p));
  r.set_result("omega", rep.omega);
  if (c.study.min_order) r.check("min_order", rep.fitted_order >= *c.study.min_order);
  if (c.study.max_order) r.check("max_order", rep.fitted_order <= *c.study.max_order);
  if (c.study.max_error) {
    const double worst = *std::max_element(rep.errors.begin(), rep.errors.end());
    r.check("max_error", worst <= *c.study.max_error);
  }
  return r;
}

ExperimentReport weak_convergence(const ExperimentConfig& c, Dumper&) {
  const KernelBlock& kb = c.kernels.front();
  const TestFunction u = test_function(c.study.u, c.sweep.deltas.front());
  const TestFunction phi = test_function(c.study.phi, c.sweep.deltas.front());
  StudyOptions o;
  o.lo = c.domain.lo[0];
  o.hi = c.domain.hi[0];
  o.quad_order = c.quad_order;
  if (c.sweep.n_per_delta.size() == 1) o.n_per_delta = c.sweep.n_per_delta.front();
  const ConvergenceReport rep = weak_convergence_study(
      u, phi, [&kb](double d) { return kb.build(d); }, c.sweep.deltas, o);
  ExperimentReport r({"delta", "n_per_delta", "residual"});
  for (std::size_t i = 0; i < rep.deltas.size(); ++i)
    r.add_row({rep.deltas[i], static_cast<long long>(rep.n_per_delta[i]), rep.errors[i]});
  r.set_result("fitted_order", rep.fitted_order);
  r.set_result("predicted_order", rep.predicted_order);
  if (c.study.expect == "auto" || c.study.expect == "decreasing") {
    bool ok = true;
    for (std::size_t i = 1; i < rep.errors.size(); ++i) ok = ok && rep.errors[i] < rep.errors[i - 1];
    r.check("decreasing", ok);
  }
  if (c.study.max_error) {
    const double worst = *std::max_element(rep.errors.begin(), rep.errors.end());
    r.check("max_error", worst <= *c.study.max_error);
  }
  return r;
}

ExperimentReport ibp(const ExperimentConfig& c, Dumper& dump) {
  ExperimentReport r({"kernel", "family", "symmetry", "trials", "omega_nodes", "max_adjoint",
                      "max_sym", "max_antisym", "max_combined", "max_zero_collar"});
  Rng rng(c.seed);
  const double tol = c.study.tolerance;
  for (const auto& kb : c.kernels) {
    const KernelSpec k = kb.build();
    const GridPtr grid = build_grid(make_domain(c, k.delta()), c.domain.n_per_delta);
    const NonlocalOperator op = assemble(k, grid, c.quad_order);
    dump.offer(op);
    const double norm = operator_norm_2(op.matrix());
    const std::string sym = symmetry(k);
    double adj = 0, s = 0, a = 0, comb = 0, zc = 0;
    for (int t = 0; t < c.study.trials; ++t) {
      const GridFunction u = random_function(grid, rng);
      const GridFunction v = random_function(grid, rng);
      adj = std::max(adj, adjoint_residual(op, u, v));
      const IbpResiduals res = ibp_residual(u, v, k, grid, c.quad_order);
      const double scale = res.scale > 0.0 ? res.scale : 1.0;
      s = std::max(s, res.sym / scale);
      a = std::max(a, res.antisym / scale);
      comb = std::max(comb, res.combined / scale);
      if (sym != "mixed") {
        const GridFunction u0 = random_function(grid, rng, SupportTag::ZeroOnCollar);
        const GridFunction v0 = random_function(grid, rng, SupportTag::ZeroOnCollar);
        const double left = pairing(apply(op, u0), v0);
        const double right = pairing(u0, apply(op, v0));
        const double z = sym == "antisymmetric" ? left + right : left - right;
        const double sc = lp_norm(u0, 2.0) * lp_norm(v0, 2.0) * (norm > 0.0 ? norm : 1.0);
        zc = std::max(zc, std::abs(z) / sc);
      }
    }
    const double zcell = sym == "mixed" ? std::numeric_limits<double>::quiet_NaN() : zc;
    r.add_row({kb.label, std::string(to_string(k.family())), sym,
               static_cast<long long>(c.study.trials), as_ll(grid->omega_size()), adj, s, a, comb,
               zcell});
    r.check("adjoint." + kb.label, adj <= 1e-12);
    r.check("ibp." + kb.label, s <= tol && a <= tol && comb <= tol);
    if (sym != "mixed") r.check("zero_collar." + kb.label, zc <= tol);
  }
  return r;
}

ExperimentReport spectrum(const ExperimentConfig& c, Dumper& dump) {
  ExperimentReport r({"kernel", "index", "re", "im"});
  const Subspace sub = c.study.subspace == "full" ? Subspace::Full : Subspace::ZeroOnCollar;
  for (const auto& kb : c.kernels) {
    const KernelSpec k = kb.build();
    const GridPtr grid = build_grid(make_domain(c, k.delta()), c.domain.n_per_delta);
    if (!dump.path.empty() && !dump.done) dump.offer(assemble(k, grid, c.quad_order));
    const SpectralReport rep = spectrum_probe(k, grid, sub, c.quad_order);
    auto ev = rep.spectrum_sample;
    std::sort(ev.begin(), ev.end(), [](const auto& x, const auto& y) {
      return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    for (std::size_t i = 0; i < ev.size(); ++i)
      r.add_row({kb.label, as_ll(i), ev[i].real(), ev[i].imag()});
    const std::string p = kb.label + ".";
    r.set_result(p + "symmetry", symmetry(k));
    r.set_result(p + "omega_nodes", as_ll(grid->omega_size()));
    r.set_result(p + "norm2", rep.norm2);
    r.set_result(p + "max_abs_real", rep.max_abs_real);
    r.set_result(p + "max_abs_imag", rep.max_abs_imag);
    r.set_result(p + "kernel_mean", rep.kernel_mean);
    std::string expect = c.study.expect;
    if (expect == "auto") {
      if (k.is_antisymmetric()) expect = "imaginary";
      else if (k.is_symmetric()) expect = "real";
      else expect = "report";
    }
    const double bound = c.study.tolerance * rep.norm2;
    if (expect == "imaginary") r.check("imaginary." + kb.label, rep.max_abs_real <= bound);
    else if (expect == "real") r.check("real." + kb.label, rep.max_abs_imag <= bound);
    else if (expect != "report") throw InvalidArgument("spectrum expects auto, real, imaginary or report");
  }
  return r;
}

ExperimentReport compactness(const ExperimentConfig& c, Dumper& dump) {
  ExperimentReport r({"kernel", "n_per_delta", "omega_nodes", "sigma_min"});
  for (const auto& kb : c.kernels) {
    const KernelSpec k = kb.build();
    const Domain domain = make_domain(c, k.delta());
    if (!dump.path.empty() && !dump.done)
      dump.offer(assemble(k, build_grid(domain, c.sweep.n_per_delta.front()), c.quad_order));
    const SpectralReport rep = compactness_decay(k, domain, c.sweep.n_per_delta, c.quad_order);
    const auto& s = rep.min_singular_values;
    for (std::size_t i = 0; i < s.size(); ++i)
      r.add_row({kb.label, static_cast<long long>(c.sweep.n_per_delta[i]),
                 static_cast<long long>(rep.grid_sizes[i]), s[i]});
    const std::string p = kb.label + ".";
    const bool mean_free = is_mean_free(k);
    const double ratio = s.back() / s.front();
    const double smallest = *std::min_element(s.begin(), s.end());
    r.set_result(p + "mean_free", mean_free ? "true" : "false");
    r.set_result(p + "kernel_mean", rep.kernel_mean);
    r.set_result(p + "ratio", ratio);
    r.set_result(p + "min_over_first", smallest / s.front());
    r.set_result(p + "stable", smallest >= 0.1 * s.front() ? "true" : "false");
    std::string expect = c.study.expect;
    if (expect == "auto") expect = mean_free ? "decay" : "report";
    if (expect == "decay") {
      bool mono = true;
      for (std::size_t i = 1; i < s.size(); ++i) mono = mono && s[i] <= s[i - 1];
      r.check("non_increasing." + kb.label, mono);
      r.check("ratio." + kb.label, ratio <= 0.5);
    } else if (expect != "report") {
      throw InvalidArgument("compactness expects auto, decay or report");
    }
  }
  return r;
}

ExperimentReport poincare(const ExperimentConfig& c, Dumper& dump) {
  const KernelBlock& kb = c.kernels.front();
  const KernelSpec k = kb.build();
  const TestFunction w = test_function(c.study.u, k.delta());
  ExperimentReport r({"n_per_delta", "h", "omega_nodes", "sigma_min", "poincare_constant",
                      "witness_ratio"});
  std::vector<double> sig;
  for (int n : c.sweep.n_per_delta) {
    const GridPtr grid = build_grid(make_domain(c, k.delta()), n);
    const NonlocalOperator op = assemble(k, grid, c.quad_order);
    dump.offer(op);
    const double s = sigma_min(op);
    sig.push_back(s);
    r.add_row({static_cast<long long>(n), grid->spacing(), as_ll(grid->omega_size()), s,
               s > 0.0 ? 1.0 / s : std::numeric_limits<double>::infinity(), witness_ratio(op, w)});
  }
  std::string expect = c.study.expect;
  if (expect == "auto") expect = is_mean_free(k) ? "decay" : "report";
  if (expect == "decay") {
    bool mono = true;
    for (std::size_t i = 1; i < sig.size(); ++i) mono = mono && sig[i] <= sig[i - 1];
    r.check("non_increasing", mono);
  } else if (expect != "report") {
    throw InvalidArgument("poincare expects auto, decay or report");
  }
  return r;
}

ExperimentReport oscillation(const ExperimentConfig& c, Dumper&) {
  const KernelBlock& kb = c.kernels.front();
  const TestFunction u = test_function(c.study.u);
  ExperimentReport r({"delta", "value", "abs_value", "bound"});
  for (double delta : delta_list(c, kb)) {
    const double v = oscillation_value(kb.build(delta), u);
    const double bound = 2.0 / 3.0 * delta;
    r.add_row({delta, v, std::abs(v), bound});
    r.check("bound.delta" + short_number(delta), std::abs(v) <= bound);
  }
  return r;
}

ExperimentReport figure(const ExperimentConfig& c, Dumper& dump) {
  const KernelSpec k = c.kernels.front().build();
  const GridPtr grid = build_grid(make_domain(c, k.delta()), c.domain.n_per_delta);
  if (!dump.path.empty()) dump.offer(assemble(k, grid, c.quad_order));
  const bool abs = c.study.which == "absval";
  const FigureTable t = reproduce_figure(abs ? FigureKind::AbsVal : FigureKind::Cusp, k, grid,
                                         c.quad_order);
  ExperimentReport r({"x", "u", "du", "Du"});
  bool finite = true;
  for (std::size_t i = 0; i < t.x.size(); ++i) {
    r.add_row({t.x[i], t.u[i], t.du[i], t.Du[i]});
    finite = finite && std::isfinite(t.Du[i]);
  }
  const double h = grid->spacing();
  r.set_result("h", h);
  r.set_result("value_at_kink", t.value_at_kink);
  r.set_result("smooth_max_error", t.smooth_max_error);
  r.set_result("smooth_max", t.smooth_max);
  r.set_result("overall_max", t.overall_max);
  r.check("finite", finite);
  r.check("smooth_agreement", t.smooth_max_error <= c.study.tolerance);
  if (abs) r.check("kink", std::abs(t.value_at_kink) <= 10.0 * h);
  else r.check("bounded", t.overall_max <= 2.0 * t.smooth_max);
  return r;
}

VectorOperator vector_operator(const ExperimentConfig& c, VectorKind kind, GridPtr& grid) {
  std::vector<KernelSpec> ks;
  for (const auto& kb : c.kernels) ks.push_back(kb.build());
  for (const auto& k : ks)
    if (k.delta() != ks.front().delta()) throw IncompatibleHorizon("vector kernels must share delta");
  grid = build_grid(make_domain(c, ks.front().delta()), c.domain.n_per_delta);
  return build_vector_operator(ks, std::vector<double>(ks.size(), 1.0), kind, grid, c.quad_order);
}

ExperimentReport divergence(const ExperimentConfig& c, Dumper& dump) {
  GridPtr grid;
  const VectorOperator op = vector_operator(c, VectorKind::Divergence, grid);
  dump.offer(op.components.front());
  Rng rng(c.seed);
  ExperimentReport r({"trial", "lhs", "rhs", "residual", "scale", "relative"});
  double worst = 0.0;
  for (int t = 0; t < c.study.trials; ++t) {
    std::vector<GridFunction> v;
    for (std::size_t j = 0; j < op.components.size(); ++j) v.push_back(random_function(grid, rng));
    const DivergenceCheck d = divergence_theorem_check(op, v);
    const double rel = d.scale > 0.0 ? d.residual / d.scale : d.residual;
    worst = std::max(worst, rel);
    r.add_row({static_cast<long long>(t), d.lhs, d.rhs, d.residual, d.scale, rel});
  }
  r.set_result("omega_nodes", as_ll(grid->omega_size()));
  r.set_result("max_relative", worst);
  r.check("divergence_theorem", worst <= c.study.tolerance);
  return r;
}

ExperimentReport deformation(const ExperimentConfig& c, Dumper& dump) {
  GridPtr grid;
  const VectorOperator op = vector_operator(c, VectorKind::Gradient, grid);
  dump.offer(op.components.front());
  const Eigen::Matrix2d shape = shape_tensor(op.components);
  Rng rng(c.seed);
  ExperimentReport r({"trial", "a11", "a12", "a21", "a22", "max_error", "nodes"});
  double worst = 0.0;
  for (int t = 0; t < c.study.trials; ++t) {
    Eigen::Matrix2d A;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) A(i, j) = rng.uniform();
    std::vector<GridFunction> y;
    for (int j = 0; j < 2; ++j)
      y.push_back(GridFunction::sample(
          grid, [&A, j](double x0, double x1) { return A(j, 0) * x0 + A(j, 1) * x1; }));
    double err = 0.0;
    std::size_t count = 0;
    for (std::size_t i : grid->omega_nodes()) {
      if (grid->region(i) != Region::InteriorCore) continue;
      const Eigen::MatrixXd F = approximate_deformation_gradient(op.components, y, i);
      err = std::max(err, (F - A).cwiseAbs().maxCoeff());
      ++count;
    }
    worst = std::max(worst, err);
    r.add_row({static_cast<long long>(t), A(0, 0), A(0, 1), A(1, 0), A(1, 1), err, as_ll(count)});
  }
  r.set_result("shape_00", shape(0, 0));
  r.set_result("shape_01", shape(0, 1));
  r.set_result("shape_10", shape(1, 0));
  r.set_result("shape_11", shape(1, 1));
  r.set_result("max_error", worst);
  r.check("deformation_gradient", worst <= c.study.tolerance);
  return r;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& c, const std::string& dump_matrix) {
  Dumper dump{dump_matrix};
  switch (c.command) {
    case Command::KernelInfo: return kernel_info(c, dump);
    case Command::Apply: return apply_study(c, dump);
    case Command::Convergence: return convergence(c, dump);
    case Command::WeakConvergence: return weak_convergence(c, dump);
    case Command::Ibp: return ibp(c, dump);
    case Command::Spectrum: return spectrum(c, dump);
    case Command::Compactness: return compactness(c, dump);
    case Command::Poincare: return poincare(c, dump);
    case Command::Oscillation: return oscillation(c, dump);
    case Command::Figure: return figure(c, dump);
    case Command::DivergenceTheorem: return divergence(c, dump);
    case Command::DeformationGradient: return deformation(c, dump);
  }
  throw InvalidArgument("unhandled command");
}

int run(ExperimentConfig config, const RunOptions& options, std::ostream& out, std::ostream& err) {
  try {
    if (options.seed) config.seed = *options.seed;
    if (options.quad_order) {
      if (*options.quad_order != 1 && *options.quad_order != 2)
        throw ValidationError(std::vector<Violation>{{"quad_order", "must be 1 or 2"}});
      config.quad_order = *options.quad_order;
    }
    if (options.threads > 0) set_thread_count(options.threads);
    const std::string path = !options.out.empty() ? options.out : config.output;

    const ExperimentReport report = run_experiment(config, options.dump_matrix);

    std::vector<std::string> header{std::string("nonlocal ") + kVersion};
    for (const auto& line : echo_config(config)) header.push_back(line);
    std::ostringstream csv;
    report.write(csv, header);
    if (path.empty() || path == "-") {
      out << csv.str();
      out.flush();
    } else {
      std::ofstream f(path, std::ios::binary);
      if (!f) throw InvalidArgument("cannot write '" + path + "'");
      f << csv.str();
      if (!f) throw InvalidArgument("failed writing '" + path + "'");
    }
    return report.passed() ? 0 : 1;
  } catch (const Error& e) {
    err << "error: " << e.kind() << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace nonlocal
