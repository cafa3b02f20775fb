#include "nonlocal/geometry.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nonlocal/errors.hpp"

namespace nonlocal {

Domain::Domain(int dimension, std::vector<double> lo, std::vector<double> hi, double delta)
    : dimension_(dimension), lo_(std::move(lo)), hi_(std::move(hi)), delta_(delta) {
  if (dimension_ != 1 && dimension_ != 2) throw InvalidArgument("domain dimension must be 1 or 2");
  if (lo_.size() != static_cast<std::size_t>(dimension_) ||
      hi_.size() != static_cast<std::size_t>(dimension_))
    throw InvalidArgument("domain bounds do not match the dimension");
  if (!(delta_ > 0.0) || !std::isfinite(delta_)) throw InvalidArgument("delta must be positive");
  for (int a = 0; a < dimension_; ++a) {
    const double lo_a = lo_[static_cast<std::size_t>(a)], hi_a = hi_[static_cast<std::size_t>(a)];
    if (!std::isfinite(lo_a) || !std::isfinite(hi_a) || !(hi_a > lo_a))
      throw InvalidArgument("domain needs hi > lo on every axis");
    if (!(delta_ < 0.5 * (hi_a - lo_a)))
      throw DegenerateDomain("delta must be smaller than half of every box edge");
  }
}

Domain Domain::interval(double lo, double hi, double delta) { return Domain(1, {lo}, {hi}, delta); }

Domain Domain::box(double xlo, double xhi, double ylo, double yhi, double delta) {
  return Domain(2, {xlo, ylo}, {xhi, yhi}, delta);
}

std::string_view to_string(Region r) {
  switch (r) {
    case Region::InteriorCore: return "interior";
    case Region::InnerCollar: return "inner_collar";
    case Region::OuterCollar: return "outer_collar";
  }
  return "unknown";
}

Grid::Grid(Domain domain, int n_per_delta) : domain_(std::move(domain)), n_(n_per_delta) {
  if (n_ < 2) throw ResolutionTooCoarse("n_per_delta must be at least 2");
  h_ = domain_.delta() / n_;
  const int d = domain_.dimension();
  volume_ = d == 1 ? h_ : h_ * h_;
  std::array<int, 2> omega{1, 1};
  for (int a = 0; a < d; ++a) {
    const double len = domain_.hi(a) - domain_.lo(a);
    const double cells = len / h_;
    const double rounded = std::round(cells);
    if (std::abs(cells - rounded) > 1e-9 * std::max(1.0, cells))
      throw GridMismatch("box edge " + std::to_string(len) + " is not a multiple of h = " +
                         std::to_string(h_));
    omega[static_cast<std::size_t>(a)] = static_cast<int>(rounded);
    if (omega[static_cast<std::size_t>(a)] <= 2 * n_)
      throw DegenerateDomain("interior core would contain no nodes");
    extent_[static_cast<std::size_t>(a)] = omega[static_cast<std::size_t>(a)] + 2 * n_;
  }

  const std::size_t total =
      static_cast<std::size_t>(extent_[0]) * static_cast<std::size_t>(extent_[1]);
  region_.resize(total);
  omega_pos_.assign(total, -1);
  for (std::size_t i = 0; i < total; ++i) {
    const auto j = index(i);
    bool outside = false;
    int depth = std::numeric_limits<int>::max();
    for (int a = 0; a < d; ++a) {
      const int ja = j[static_cast<std::size_t>(a)] - n_;
      const int m = omega[static_cast<std::size_t>(a)];
      if (ja < 0 || ja >= m) {
        outside = true;
        break;
      }
      depth = std::min(depth, std::min(ja, m - 1 - ja));
    }
    // A cell center at index depth k sits (k + 1/2) h from the boundary.
    if (outside) {
      region_[i] = Region::OuterCollar;
    } else if (depth < n_) {
      region_[i] = Region::InnerCollar;
    } else {
      region_[i] = Region::InteriorCore;
    }
    if (!outside) {
      omega_pos_[i] = static_cast<std::ptrdiff_t>(omega_nodes_.size());
      omega_nodes_.push_back(i);
    }
  }
}

std::array<int, 2> Grid::index(std::size_t id) const {
  const int nx = extent_[0];
  return {static_cast<int>(id % static_cast<std::size_t>(nx)),
          static_cast<int>(id / static_cast<std::size_t>(nx))};
}

std::size_t Grid::id(int jx, int jy) const {
  if (jx < 0 || jx >= extent_[0] || jy < 0 || jy >= extent_[1])
    throw InvalidArgument("lattice index out of range");
  return static_cast<std::size_t>(jy) * static_cast<std::size_t>(extent_[0]) +
         static_cast<std::size_t>(jx);
}

std::ptrdiff_t Grid::neighbor(std::size_t id, int kx, int ky) const {
  const auto j = index(id);
  const int x = j[0] + kx, y = j[1] + ky;
  if (x < 0 || x >= extent_[0] || y < 0 || y >= extent_[1]) return -1;
  return static_cast<std::ptrdiff_t>(y) * extent_[0] + x;
}

double Grid::coordinate(std::size_t id, int axis) const {
  const auto j = index(id);
  return domain_.lo(axis) + (j[static_cast<std::size_t>(axis)] - n_ + 0.5) * h_;
}

std::array<double, 2> Grid::point(std::size_t id) const {
  if (dimension() == 1) return {coordinate(id, 0), 0.0};
  return {coordinate(id, 0), coordinate(id, 1)};
}

std::size_t Grid::count(Region r) const {
  std::size_t c = 0;
  for (auto x : region_) c += (x == r);
  return c;
}

GridPtr build_grid(const Domain& domain, int n_per_delta) {
  return std::make_shared<const Grid>(domain, n_per_delta);
}

GridFunction GridFunction::zeros(GridPtr grid, SupportTag tag) {
  const std::size_t n = tag == SupportTag::OnOmega ? grid->omega_size() : grid->size();
  return GridFunction{std::move(grid), std::vector<double>(n, 0.0), tag};
}

GridFunction GridFunction::sample(GridPtr grid, const std::function<double(double, double)>& f,
                                  SupportTag tag) {
  GridFunction u = zeros(grid, tag);
  if (tag == SupportTag::OnOmega) {
    const auto& nodes = grid->omega_nodes();
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const auto p = grid->point(nodes[k]);
      u.values[k] = f(p[0], p[1]);
    }
    return u;
  }
  for (std::size_t i = 0; i < grid->size(); ++i) {
    if (tag == SupportTag::ZeroOnCollar && !grid->in_omega(i)) continue;
    const auto p = grid->point(i);
    u.values[i] = f(p[0], p[1]);
  }
  return u;
}

GridFunction extend_by_zero(const GridFunction& u) {
  if (u.tag != SupportTag::OnOmega) throw InvalidArgument("extend_by_zero expects an Omega function");
  if (u.values.size() != u.grid->omega_size()) throw GridMismatch("value count does not match Omega");
  GridFunction out = GridFunction::zeros(u.grid, SupportTag::ZeroOnCollar);
  const auto& nodes = u.grid->omega_nodes();
  for (std::size_t k = 0; k < nodes.size(); ++k) out.values[nodes[k]] = u.values[k];
  return out;
}

GridFunction project(const GridFunction& u) {
  if (u.tag == SupportTag::OnOmega) throw InvalidArgument("project expects an Omega_delta function");
  if (u.values.size() != u.grid->size()) throw GridMismatch("value count does not match the grid");
  GridFunction out = GridFunction::zeros(u.grid, SupportTag::OnOmega);
  const auto& nodes = u.grid->omega_nodes();
  for (std::size_t k = 0; k < nodes.size(); ++k) out.values[k] = u.values[nodes[k]];
  return out;
}

double lp_norm(const GridFunction& u, double p) {
  if (!(p >= 1.0)) throw InvalidArgument("lp_norm needs p >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : u.values) m = std::max(m, std::abs(v));
    return m;
  }
  const double vol = u.grid->cell_volume();
  double s = 0.0;
  if (p == 2.0) {
    for (double v : u.values) s += v * v;
    return std::sqrt(s * vol);
  }
  if (p == 1.0) {
    for (double v : u.values) s += std::abs(v);
    return s * vol;
  }
  for (double v : u.values) s += std::pow(std::abs(v), p);
  return std::pow(s * vol, 1.0 / p);
}

}  // namespace nonlocal
