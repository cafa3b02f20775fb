#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string_view>
#include <vector>

namespace nonlocal {

/// Axis-aligned box Omega together with the horizon delta.
class Domain {
 public:
  Domain(int dimension, std::vector<double> lo, std::vector<double> hi, double delta);

  static Domain interval(double lo, double hi, double delta);
  static Domain box(double xlo, double xhi, double ylo, double yhi, double delta);

  int dimension() const noexcept { return dimension_; }
  double lo(int axis) const { return lo_.at(static_cast<std::size_t>(axis)); }
  double hi(int axis) const { return hi_.at(static_cast<std::size_t>(axis)); }
  double delta() const noexcept { return delta_; }

  bool operator==(const Domain& other) const = default;

 private:
  int dimension_;
  std::vector<double> lo_, hi_;
  double delta_;
};

enum class Region : std::uint8_t { InteriorCore, InnerCollar, OuterCollar };

std::string_view to_string(Region r);

/// Cell-centered lattice over Omega_delta with spacing h = delta / n_per_delta.
/// Node ids run x-fastest: id = jy * nx + jx.
class Grid {
 public:
  Grid(Domain domain, int n_per_delta);

  const Domain& domain() const noexcept { return domain_; }
  int dimension() const noexcept { return domain_.dimension(); }
  double spacing() const noexcept { return h_; }
  int n_per_delta() const noexcept { return n_; }
  double cell_volume() const noexcept { return volume_; }

  /// Nodes along an axis over Omega_delta, and over Omega.
  int extent(int axis) const { return extent_.at(static_cast<std::size_t>(axis)); }
  int omega_extent(int axis) const { return extent(axis) - 2 * n_; }

  std::size_t size() const noexcept { return region_.size(); }
  std::size_t omega_size() const noexcept { return omega_nodes_.size(); }

  Region region(std::size_t id) const { return region_.at(id); }
  bool in_omega(std::size_t id) const { return region_.at(id) != Region::OuterCollar; }

  std::array<int, 2> index(std::size_t id) const;
  std::size_t id(int jx, int jy = 0) const;
  /// Id of the node offset by (kx, ky), or -1 when it falls off the lattice.
  std::ptrdiff_t neighbor(std::size_t id, int kx, int ky = 0) const;

  double coordinate(std::size_t id, int axis) const;
  std::array<double, 2> point(std::size_t id) const;

  /// Ids of Omega nodes in increasing order, and the inverse map (-1 off Omega).
  const std::vector<std::size_t>& omega_nodes() const noexcept { return omega_nodes_; }
  std::ptrdiff_t omega_position(std::size_t id) const { return omega_pos_.at(id); }

  std::size_t count(Region r) const;

  bool operator==(const Grid& other) const {
    return domain_ == other.domain_ && n_ == other.n_;
  }

 private:
  Domain domain_;
  int n_;
  double h_;
  double volume_;
  std::array<int, 2> extent_{1, 1};
  std::vector<Region> region_;
  std::vector<std::size_t> omega_nodes_;
  std::vector<std::ptrdiff_t> omega_pos_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr build_grid(const Domain& domain, int n_per_delta);

enum class SupportTag { OnOmegaDelta, OnOmega, ZeroOnCollar };

/// Real values on grid nodes. OnOmega functions store one value per Omega node
/// (in omega_nodes() order); the other tags store one value per lattice node.
struct GridFunction {
  GridPtr grid;
  std::vector<double> values;
  SupportTag tag = SupportTag::OnOmegaDelta;

  std::size_t size() const noexcept { return values.size(); }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }

  static GridFunction zeros(GridPtr grid, SupportTag tag = SupportTag::OnOmegaDelta);
  /// Samples f at every node of Omega_delta (or Omega for OnOmega); for
  /// ZeroOnCollar the collar values are set to zero.
  static GridFunction sample(GridPtr grid, const std::function<double(double, double)>& f,
                             SupportTag tag = SupportTag::OnOmegaDelta);
};

/// E: Omega function -> Omega_delta function, zero on the collar.
GridFunction extend_by_zero(const GridFunction& u);

/// P: restriction of an Omega_delta function to Omega.
GridFunction project(const GridFunction& u);

/// (sum |u_i|^p h^d)^(1/p); p = infinity gives the max norm.
double lp_norm(const GridFunction& u, double p);

}  // namespace nonlocal
