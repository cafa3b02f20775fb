#include <doctest.h>

#include <cmath>
#include <limits>

#include "nonlocal/analysis.hpp"
#include "nonlocal/errors.hpp"

using namespace nonlocal;

namespace {

// int_a^b sin(s) s^-e ds by composite Simpson
double tail_integral(double a, double b, double e) {
  const int n = 2'000'000;
  double h = (b - a) / n;
  auto f = [e](double s) { return std::sin(s) * std::pow(s, -e); };
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return acc * h / 3.0;
}

KernelFactory potential_01() {
  return [](double d) { return normalized(KernelSpec::potential(1, d, 1.0 / 3.0, {0.0, 1.0})); };
}

}  // namespace

TEST_CASE("rng is deterministic and bounded") {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x >= -1.0);
    CHECK(x < 1.0);
    differs = differs || x != c.uniform();
  }
  CHECK(differs);
  Rng r(1);
  for (int i = 0; i < 100; ++i) {
    double x = r.uniform(2.0, 3.0);
    CHECK(x >= 2.0);
    CHECK(x < 3.0);
  }
}

TEST_CASE("random zero-collar functions vanish off omega") {
  auto g = build_grid(Domain::interval(0.0, 1.0, 0.1), 4);
  Rng rng(9);
  auto u = random_function(g, rng, SupportTag::ZeroOnCollar);
  for (std::size_t i = 0; i < g->size(); ++i)
    if (!g->in_omega(i)) CHECK(u[i] == 0.0);
}

TEST_CASE("fit_order recovers a power law") {
  std::vector<double> d{0.4, 0.2, 0.1, 0.05, 0.025};
  std::vector<double> e;
  for (double x : d) e.push_back(3.0 * std::pow(x, 2.5));
  CHECK(fit_order(d, e) == doctest::Approx(2.5).epsilon(1e-12));
  e.back() = 0.0;
  CHECK(std::isnan(fit_order(d, e)));
}

TEST_CASE("predicted orders") {
  CHECK(predicted_order(normalized(KernelSpec::potential(1, 0.1, 1.0 / 3.0, {0.0, 1.0}))) == 1.0);
  CHECK(predicted_order(normalized(KernelSpec::piecewise_constant_sign(0.1))) == 2.0);
  CHECK(predicted_order(normalized(KernelSpec::one_sided(0.1))) == 1.0);
  CHECK(default_n_per_delta(0.1) == 8);
  CHECK(default_n_per_delta(0.01) == 40);
}

TEST_CASE("strong study is exact on affine data") {
  auto u = test_function("affine");
  std::vector<KernelFactory> families{
      potential_01(),
      [](double d) { return normalized(KernelSpec::piecewise_constant_sign(d)); },
      [](double d) { return normalized(KernelSpec::one_sided(d)); },
      [](double d) { return KernelSpec::polynomial(d); },
      [](double d) { return normalized(KernelSpec::mollifier_derivative(d)); }};
  for (auto eval : {Evaluation::Reference, Evaluation::Assembled}) {
    StudyOptions opt;
    opt.evaluation = eval;
    for (const auto& f : families) {
      auto rep = strong_convergence_study(u, f, {0.2, 0.1}, opt);
      for (double e : rep.errors) CHECK(e <= 1e-9);
    }
  }
}

TEST_CASE("strong study on a smooth function converges at first order") {
  auto rep = strong_convergence_study(test_function("sin3x"), potential_01(),
                                      {0.1, 0.05, 0.025, 0.0125});
  CHECK(rep.predicted_order == 1.0);
  CHECK(rep.fitted_order == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("weak study of the zero function is zero") {
  auto rep = weak_convergence_study(test_function("zero"), test_function("bump"), potential_01(),
                                    {0.2, 0.1});
  for (double r : rep.errors) CHECK(r == 0.0);
}

TEST_CASE("weak study of the step function decreases") {
  auto rep = weak_convergence_study(test_function("step"), test_function("bump"),
                                    [](double d) { return normalized(KernelSpec::piecewise_constant_sign(d)); },
                                    {0.1, 0.05, 0.025});
  CHECK(rep.errors[1] < rep.errors[0]);
  CHECK(rep.errors[2] < rep.errors[1]);
}

TEST_CASE("integration by parts residuals") {
  auto g = build_grid(Domain::interval(0.0, 1.0, 0.125), 8);
  auto k = normalized(KernelSpec::potential(1, 0.125, 0.5, {-1.0, 2.0}));
  Rng rng(5);
  auto u = random_function(g, rng);
  auto zero = GridFunction::zeros(g);
  auto r0 = ibp_residual(u, zero, k, g);
  CHECK(r0.sym == 0.0);
  CHECK(r0.antisym == 0.0);
  CHECK(r0.combined == 0.0);
  auto v = random_function(g, rng);
  auto r = ibp_residual(u, v, k, g);
  CHECK(r.sym <= 1e-12 * r.scale);
  CHECK(r.antisym <= 1e-12 * r.scale);
  CHECK(r.combined <= 1e-12 * r.scale);
}

TEST_CASE("zero kernel has zero spectrum") {
  auto g = build_grid(Domain::interval(0.0, 1.0, 0.125), 4);
  auto k = normalized(KernelSpec::piecewise_constant_sign(0.125)).scaled(0.0);
  auto rep = spectrum_probe(k, g, Subspace::ZeroOnCollar);
  CHECK(rep.norm2 == 0.0);
  for (auto z : rep.spectrum_sample) CHECK(std::abs(z) == 0.0);
}

TEST_CASE("antisymmetric spectrum is imaginary") {
  auto g = build_grid(Domain::interval(0.0, 1.0, 0.125), 8);
  auto rep = spectrum_probe(normalized(KernelSpec::piecewise_constant_sign(0.125)), g,
                            Subspace::ZeroOnCollar);
  CHECK(rep.max_abs_real <= 1e-10 * rep.norm2);
  CHECK(rep.max_abs_imag > 0.0);
}

TEST_CASE("sigma_min scales with the kernel") {
  auto dom = Domain::interval(0.0, 0.8, 0.1);
  auto k = normalized(KernelSpec::one_sided(0.1));
  auto g = build_grid(dom, 8);
  double s1 = poincare_ratio(k, g);
  double s2 = poincare_ratio(k.scaled(-2.5), g);
  CHECK(s2 == doctest::Approx(2.5 * s1).epsilon(1e-12));
  auto rep = compactness_decay(k, dom, {8});
  CHECK(rep.min_singular_values.at(0) == s1);
}

TEST_CASE("oscillation value against an independent quadrature") {
  auto k = normalized(KernelSpec::piecewise_constant_sign(0.1));
  // D u(0) = (2 / delta^2) int_{1/delta}^inf sin(s) s^-4 ds; the tail past 1e4 is below 1e-12
  double expect = 2.0 / 0.01 * tail_integral(10.0, 1e4, 4.0);
  double v = oscillation_value(k, test_function("oscillating"));
  CHECK(v == doctest::Approx(expect).epsilon(1e-8));
  CHECK(std::abs(v) <= 2.0 / 3.0 * 0.1);
  CHECK(oscillation_value(k, test_function("zero")) == 0.0);
}

TEST_CASE("figure for the absolute value") {
  double delta = 0.05;
  auto g = build_grid(Domain::interval(0.0, 1.0, delta), 16);
  auto k = normalized(KernelSpec::potential(1, delta, 1.0 / 3.0, {-1.0, 1.0}));
  auto t = reproduce_figure(FigureKind::AbsVal, k, g);
  CHECK(t.x.size() == g->omega_size());
  CHECK(t.smooth_max_error <= 1e-12);
  CHECK(std::abs(t.value_at_kink) <= 10.0 * g->spacing());
}

TEST_CASE("nonlocal derivative at a point") {
  auto k = normalized(KernelSpec::one_sided(0.05));
  auto u = test_function("affine");
  CHECK(nonlocal_derivative_at(k, u, 0.3) == doctest::Approx(u.dx(0.3, 0.0)).epsilon(1e-12));
}
