#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nonlocal/errors.hpp"
#include "nonlocal/quadrature.hpp"

using namespace nonlocal;

TEST_CASE("gauss-legendre rules integrate polynomials exactly") {
  for (int n : {2, 5, 10, 20}) {
    const auto& r = gauss_legendre(n);
    REQUIRE(r.nodes.size() == static_cast<std::size_t>(n));
    double wsum = 0.0;
    for (double w : r.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    int deg = 2 * n - 1;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i] + 1.0, deg);
    CHECK(s == doctest::Approx(std::pow(2.0, deg + 1) / (deg + 1)).epsilon(1e-13));
  }
}

TEST_CASE("adaptive gauss handles endpoint singularities") {
  double v = adaptive_gauss([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-12);
  CHECK(v == doctest::Approx(2.0 / 3.0).epsilon(1e-11));
  CHECK_THROWS_AS(adaptive_gauss([](double x) { return 1.0 / x; }, 0.0, 1.0, 1e-12, 2000),
                  QuadratureFailure);
}

TEST_CASE("reference integration of singular kernels") {
  double delta = 0.1, beta = 0.25;
  auto k = KernelSpec::potential(1, delta, beta, {-1.0, 2.0});
  // int_0^delta z^(beta-1) = delta^beta / beta, weighted 2 on the right and -1 on the left
  double base = std::pow(delta, beta) / beta;
  CHECK(reference_integrate(k, [](double) { return 1.0; }) ==
        doctest::Approx(base).epsilon(1e-12));
  double first = std::pow(delta, 1.0 + beta) / (1.0 + beta);
  CHECK(reference_integrate(k, [](double z) { return z; }) ==
        doctest::Approx(3.0 * first).epsilon(1e-12));
  CHECK(reference_integrate(k, [](double z) { return std::cos(z); }) ==
        doctest::Approx(moments(k, 0).at(0) - moments(k, 2).at(2) / 2 + moments(k, 4).at(4) / 24)
            .epsilon(1e-10));
}

TEST_CASE("reference integration in two dimensions") {
  auto k = KernelSpec::potential(2, 0.2, 0.5, {-1.0, 1.0, 0.0, 0});
  // half disks x > 0 and x < 0 with opposite signs: each gives int cos * int r^(beta+1) dr
  double v = reference_integrate_2d(k, [](double x, double) { return x; });
  double expect = 2.0 * 2.0 * std::pow(0.2, 2.5) / 2.5;
  CHECK(v == doctest::Approx(expect).epsilon(1e-10));
  double m = reference_integrate_2d(k, [](double, double) { return 1.0; });
  CHECK(std::abs(m) < 1e-12);
}

TEST_CASE("sign kernel stencil weights") {
  auto k = normalized(KernelSpec::piecewise_constant_sign(0.1));
  auto s = build_stencil(k, 0.025, 1);
  REQUIRE(s.n == 4);
  // hat functions against 1/delta^2: h/delta^2 inside, half of it at the edge
  double w = 0.025 / 0.01;
  CHECK(s.weight(0) == 0.0);
  for (int j = 1; j < 4; ++j) {
    CHECK(s.weight(j) == doctest::Approx(w).epsilon(1e-13));
    CHECK(s.weight(-j) == doctest::Approx(-w).epsilon(1e-13));
  }
  CHECK(s.weight(4) == doctest::Approx(w / 2).epsilon(1e-13));
  CHECK(s.first_moment() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(s.zeroth_sum == 0.0);
}

TEST_CASE("stencil moments reproduce low kernel moments") {
  for (int order : {1, 2}) {
    CAPTURE(order);
    auto k = normalized(KernelSpec::one_sided(0.1, 0.5));
    auto s = build_stencil(k, 0.1 / 32, order);
    auto m = moments(k, 3);
    CHECK(s.moment(0) == doctest::Approx(m.at(0)).epsilon(1e-12));
    CHECK(s.moment(1) == doctest::Approx(1.0).epsilon(1e-12));
    if (order == 2) CHECK(s.moment(2) == doctest::Approx(m.at(2)).epsilon(1e-12));
  }
}

TEST_CASE("two-dimensional stencil moments") {
  auto k = normalized(KernelSpec::potential(2, 0.1, 0.5, {-1.0, 1.0, 0.5, 0}));
  auto s = build_stencil(k, 0.025, 1);
  CHECK(s.dense.size() == 81u);
  CHECK(s.first_moment(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(s.first_moment(1)) < 1e-12);
  CHECK(std::abs(s.zeroth_sum) < 1e-12);
}

TEST_CASE("stencil requires delta to be a multiple of h") {
  auto k = normalized(KernelSpec::piecewise_constant_sign(0.1));
  CHECK_THROWS(build_stencil(k, 0.03, 1));
}
