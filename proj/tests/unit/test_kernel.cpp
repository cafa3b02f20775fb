#include <doctest.h>

#include <cmath>
#include <functional>

#include "nonlocal/errors.hpp"
#include "nonlocal/kernel.hpp"

using namespace nonlocal;

namespace {

// composite Simpson on [a, b]; only used on smooth integrands
double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  double h = (b - a) / n, s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("piecewise constant sign kernel evaluates to 1/delta^2") {
  auto k = normalized(KernelSpec::piecewise_constant_sign(0.1));
  CHECK(k(0.05) == doctest::Approx(100.0).epsilon(1e-14));
  CHECK(k(-0.05) == doctest::Approx(-100.0).epsilon(1e-14));
  CHECK(k(0.2) == 0.0);
  CHECK(k(0.0) == 0.0);
  CHECK(k.is_antisymmetric());
}

TEST_CASE("potential normalization matches closed form") {
  double delta = 0.05, beta = 1.0 / 3.0;
  auto k = normalized(KernelSpec::potential(1, delta, beta, {-1.0, 1.0}));
  // int z mu = 2 C delta^(1+beta) / (1+beta)
  double c = (1.0 + beta) / (2.0 * std::pow(delta, 1.0 + beta));
  CHECK(k.normalization() == doctest::Approx(c).epsilon(1e-13));
  CHECK(k.normalization() == doctest::Approx(36.1922).epsilon(1e-5));
}

TEST_CASE("non-integrable exponents are rejected") {
  CHECK_THROWS_AS(KernelSpec::potential(1, 0.1, 0.0), NonIntegrableExponent);
  CHECK_THROWS_AS(KernelSpec::potential(1, 0.1, -1.5), NonIntegrableExponent);
  CHECK_THROWS_AS(KernelSpec::potential(2, 0.1, -1.0, {-1, 1, 0.5, 0}), NonIntegrableExponent);
  CHECK_NOTHROW(KernelSpec::potential(2, 0.1, -0.5, {-1, 1, 0.5, 0}));
  CHECK_NOTHROW(KernelSpec::potential(1, 0.1, 0.01));
}

TEST_CASE("one-sided moments") {
  for (double delta : {0.1, 0.05, 0.01}) {
    auto k = normalized(KernelSpec::one_sided(delta, 0.5));
    auto m = moments(k, 4);
    CAPTURE(delta);
    // mu = C z^(-1/2) on (0, delta), C = 3 / (2 delta^(3/2))
    double c = 1.5 / std::pow(delta, 1.5);
    CHECK(k.normalization() == doctest::Approx(c).epsilon(1e-13));
    CHECK(m.at(1) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(m.at(0) == doctest::Approx(3.0 / delta).epsilon(1e-13));
    CHECK(m.at(2) == doctest::Approx(0.6 * delta).epsilon(1e-13));
    CHECK(m.at(3) == doctest::Approx(3.0 / 7.0 * delta * delta).epsilon(1e-13));
  }
}

TEST_CASE("default polynomial moments are 1, 1, 0, 0, 0") {
  for (double delta : {1.0, 0.25}) {
    auto k = KernelSpec::polynomial(delta);
    CAPTURE(delta);
    // independent check of the closed forms
    for (int p = 0; p <= 4; ++p) {
      double ref = simpson([&](double z) { return std::pow(z, p) * k(z); }, -delta, delta);
      double expect = p <= 1 ? 1.0 : 0.0;
      CHECK(ref == doctest::Approx(expect).epsilon(1e-9).scale(1.0));
      CHECK(moments(k, 4).at(p) == doctest::Approx(expect).epsilon(1e-13).scale(1.0));
    }
  }
}

TEST_CASE("mollifier derivative has unit first moment") {
  auto k = normalized(KernelSpec::mollifier_derivative(0.3));
  auto m = moments(k, 5);
  CHECK(m.at(0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(m.at(1) == doctest::Approx(1.0).epsilon(1e-10));
  double m3 = simpson([&](double z) { return z * z * z * k(z); }, -0.3, 0.3);
  CHECK(m.at(3) == doctest::Approx(m3).epsilon(1e-8));
  CHECK(m.at(2) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("antisymmetric kernels have vanishing even moments") {
  auto k = normalized(KernelSpec::potential(1, 0.2, 0.5, {-1.0, 1.0}));
  auto m = moments(k, 5);
  CHECK(m.at(0) == 0.0);
  CHECK(m.at(2) == 0.0);
  CHECK(m.at(4) == 0.0);
  CHECK(second_moment_of_symmetric_part(k) == 0.0);
}

TEST_CASE("decompose reproduces the kernel pointwise") {
  auto k = normalized(KernelSpec::potential(1, 0.1, 1.0 / 3.0, {-1.0, 2.0}));
  auto parts = decompose(k);
  CHECK(parts.symmetric.is_symmetric());
  CHECK(parts.antisymmetric.is_antisymmetric());
  for (double z : {-0.09, -0.03, 0.001, 0.04, 0.0999}) {
    CAPTURE(z);
    CHECK(parts.symmetric(z) + parts.antisymmetric(z) == doctest::Approx(k(z)).epsilon(1e-14));
    CHECK(parts.symmetric(z) == doctest::Approx(parts.symmetric(-z)).epsilon(1e-14));
    CHECK(parts.antisymmetric(z) == doctest::Approx(-parts.antisymmetric(-z)).epsilon(1e-14));
  }
}

TEST_CASE("symmetric kernels cannot be normalized") {
  auto k = KernelSpec::potential(1, 0.1, 0.5, {1.0, 1.0});
  CHECK_THROWS_AS(scaling_constant(k), DegenerateFirstMoment);
}

TEST_CASE("dic kernel is mean free with unit drift") {
  auto k = dic_kernel(0.2, 16);
  auto m = moments(k, 3);
  CHECK(m.at(0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
  CHECK(m.at(1) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("two-dimensional sector first moment points along the axis") {
  auto k = normalized(KernelSpec::potential(2, 0.1, 0.5, {-1.0, 1.0, 0.5, 1}));
  auto m = moments(k, 2);
  CHECK(m.at(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.at(1, 0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(k.direction()[1] == 1.0);
}

TEST_CASE("l1 norm and first absolute moment of the sign kernel") {
  auto k = normalized(KernelSpec::piecewise_constant_sign(0.1));
  CHECK(l1_norm(k) == doctest::Approx(20.0).epsilon(1e-13));
  CHECK(first_absolute_moment(k) == doctest::Approx(1.0).epsilon(1e-13));
}
