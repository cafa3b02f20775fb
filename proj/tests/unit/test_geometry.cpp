#include <doctest.h>

#include <cmath>
#include <limits>

#include "nonlocal/errors.hpp"
#include "nonlocal/geometry.hpp"

using namespace nonlocal;

TEST_CASE("interval grid layout") {
  auto g = build_grid(Domain::interval(0.0, 1.0, 0.1), 8);
  CHECK(g->spacing() == doctest::Approx(0.0125));
  CHECK(g->extent(0) == 96);
  CHECK(g->omega_extent(0) == 80);
  CHECK(g->omega_size() == 80);
  CHECK(g->count(Region::OuterCollar) == 16);
  CHECK(g->count(Region::InnerCollar) == 16);
  CHECK(g->count(Region::InteriorCore) == 64);
  // cell centered
  CHECK(g->coordinate(g->id(8), 0) == doctest::Approx(0.00625));
  CHECK(g->coordinate(g->id(0), 0) == doctest::Approx(-0.09375));
  CHECK(g->region(0) == Region::OuterCollar);
  CHECK(g->region(8) == Region::InnerCollar);
  CHECK(g->region(40) == Region::InteriorCore);
  CHECK(g->neighbor(0, -1) == -1);
  CHECK(g->neighbor(0, 3) == 3);
}

TEST_CASE("box grid is x fastest") {
  auto g = build_grid(Domain::box(0.0, 1.0, 0.0, 0.5, 0.125), 2);
  CHECK(g->extent(0) == 20);
  CHECK(g->extent(1) == 12);
  CHECK(g->size() == 240);
  CHECK(g->omega_size() == 16 * 8);
  auto id = g->id(3, 5);
  CHECK(id == 5u * 20u + 3u);
  CHECK(g->index(id) == std::array<int, 2>{3, 5});
  CHECK(g->neighbor(id, 1, 1) == static_cast<std::ptrdiff_t>(g->id(4, 6)));
  std::size_t total = g->count(Region::InteriorCore) + g->count(Region::InnerCollar) +
                      g->count(Region::OuterCollar);
  CHECK(total == g->size());
}

TEST_CASE("degenerate domains are rejected") {
  CHECK_THROWS_AS(Domain::interval(0.0, 0.2, 0.1), DegenerateDomain);
  CHECK_THROWS_AS(Domain::interval(1.0, 0.0, 0.1), InvalidArgument);
  CHECK_THROWS_AS(Domain::interval(0.0, 1.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(build_grid(Domain::interval(0.0, 1.0, 0.1), 1), ResolutionTooCoarse);
  CHECK_THROWS_AS(Domain::box(0.0, 1.0, 0.0, 0.1, 0.1), DegenerateDomain);
}

TEST_CASE("grid spacing must divide the domain") {
  CHECK_THROWS_AS(build_grid(Domain::interval(0.0, 1.01, 0.1), 8), GridMismatch);
}

TEST_CASE("extension and projection round trip") {
  auto g = build_grid(Domain::interval(0.0, 1.0, 0.1), 4);
  auto u = GridFunction::sample(g, [](double x, double) { return x * x; }, SupportTag::OnOmega);
  CHECK(u.size() == g->omega_size());
  auto e = extend_by_zero(u);
  CHECK(e.size() == g->size());
  for (std::size_t i = 0; i < g->size(); ++i)
    if (!g->in_omega(i)) CHECK(e[i] == 0.0);
  auto back = project(e);
  CHECK(back.values == u.values);
}

TEST_CASE("zero-collar sampling") {
  auto g = build_grid(Domain::interval(0.0, 1.0, 0.1), 4);
  auto u = GridFunction::sample(g, [](double, double) { return 1.0; }, SupportTag::ZeroOnCollar);
  for (std::size_t i = 0; i < g->size(); ++i) CHECK(u[i] == (g->in_omega(i) ? 1.0 : 0.0));
}

TEST_CASE("lp norms of a constant") {
  auto g = build_grid(Domain::interval(0.0, 2.0, 0.1), 4);
  auto one = GridFunction::sample(g, [](double, double) { return 1.0; }, SupportTag::OnOmega);
  CHECK(lp_norm(one, 1.0) == doctest::Approx(2.0));
  CHECK(lp_norm(one, 2.0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(lp_norm(one, std::numeric_limits<double>::infinity()) == 1.0);
}
