#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nonlocal {

enum class KernelFamily {
  PotentialSector,
  PiecewiseConstantSign,
  OneSided,
  Polynomial,
  MollifierDerivative,
  Tabulated,
};

std::string_view to_string(KernelFamily family);
KernelFamily kernel_family_from_string(std::string_view name);

/// Angular profile theta = plus * chi_{S+} + minus * chi_{S-}.
///
/// In one dimension S+ = {+1} and S- = {-1}, so (minus, plus) are the two
/// values theta(-1), theta(+1). In two dimensions S+ and S- are the antipodal
/// sectors {w : +-w.e_axis > t} of the unit circle.
struct AngularProfile {
  double minus = 0.0;
  double plus = 1.0;
  double half_angle = 0.0;  // t in [0, 1)
  int axis = 0;
};

/// Immutable description of a kernel mu_delta supported in the closed ball of
/// radius delta. The power-law families (PotentialSector, PiecewiseConstantSign,
/// OneSided) evaluate C * theta(z/|z|) * |z|^(beta-1); Polynomial, the
/// mollifier derivative and Tabulated kernels are one-dimensional.
class KernelSpec {
 public:
  /// Unnormalized C * theta * |z|^(beta-1) with C = 1.
  static KernelSpec potential(int dimension, double delta, double beta,
                              AngularProfile theta = {});
  /// sign(z) on (-delta, delta); normalized it becomes sign(z) / delta^2.
  static KernelSpec piecewise_constant_sign(double delta);
  /// z^(beta-1) on (0, delta).
  static KernelSpec one_sided(double delta, double beta = 0.5);
  /// Even powers of s = z/delta are scaled by 1/delta and odd powers by
  /// 1/delta^2, which keeps the zeroth and first moments independent of delta.
  static KernelSpec polynomial(double delta,
                               std::vector<double> coefficients = default_polynomial_coefficients());
  /// -eta_delta' for the standard mollifier with unit mass.
  static KernelSpec mollifier_derivative(double delta);
  /// Piecewise constant values on 2m equal cells covering [-delta, delta].
  static KernelSpec tabulated(double delta, std::vector<double> cell_values);

  /// Coefficients whose kernel has moments 1, 1, 0, 0, 0 of orders 0..4.
  static std::vector<double> default_polynomial_coefficients();

  KernelFamily family() const noexcept { return family_; }
  int dimension() const noexcept { return dimension_; }
  double delta() const noexcept { return delta_; }
  double beta() const noexcept { return beta_; }
  const AngularProfile& theta() const noexcept { return theta_; }
  const std::vector<double>& coefficients() const noexcept { return coefficients_; }
  const std::vector<double>& table() const noexcept { return table_; }
  double normalization() const noexcept { return scale_; }

  KernelSpec with_normalization(double c) const;
  KernelSpec scaled(double factor) const;

  bool is_power_law() const noexcept;
  /// True when the kernel is unbounded at the origin (power law with beta < 1).
  bool is_singular() const noexcept;
  bool is_symmetric() const;
  bool is_antisymmetric() const;

  /// Unit direction a the first moment is normalized toward.
  std::array<double, 2> direction() const noexcept;

  double operator()(double z) const;
  double operator()(std::span<const double> z) const;

  /// theta(w) for a direction given by its angle (d = 2) or sign (d = 1).
  double theta_at_angle(double angle) const;
  double theta_at_sign(double sign) const;

  /// Interior breakpoints in [-delta, delta] where the kernel is not smooth.
  std::vector<double> breakpoints() const;

 private:
  KernelSpec() = default;
  void validate() const;

  KernelFamily family_ = KernelFamily::PotentialSector;
  int dimension_ = 1;
  double delta_ = 1.0;
  double beta_ = 1.0;
  AngularProfile theta_{};
  std::vector<double> coefficients_;
  std::vector<double> table_;
  double scale_ = 1.0;
};

enum class MomentSource { ClosedForm, Reference, Mixed };

using MultiIndex = std::array<int, 2>;

struct KernelMoments {
  double zeroth = 0.0;
  std::vector<double> first;
  /// Every multi-index of total order <= max_order, including orders 0 and 1.
  std::map<MultiIndex, double> higher;
  int max_order = 0;
  MomentSource source = MomentSource::ClosedForm;

  double at(int p, int q = 0) const;
};

/// Moments int z^alpha mu(z) dz for |alpha| <= max_order (max_order <= 5).
KernelMoments moments(const KernelSpec& kernel, int max_order);

/// Multiplicative constant that brings the first moment onto the unit
/// direction a. Throws DegenerateFirstMoment for kernels with no drift.
double scaling_constant(const KernelSpec& kernel);

KernelSpec normalized(const KernelSpec& kernel);

struct KernelParts {
  KernelSpec symmetric;
  KernelSpec antisymmetric;
};

/// mu_s(z) = (mu(z) + mu(-z))/2 and mu_a(z) = (mu(z) - mu(-z))/2, expressed in
/// the same family so that each part keeps closed-form moments.
KernelParts decompose(const KernelSpec& kernel);

/// int z^2 mu_s dz in 1D, trace of the second-moment tensor of mu_s in 2D.
double second_moment_of_symmetric_part(const KernelSpec& kernel);

/// Interior points where a one-dimensional polynomial kernel changes sign.
std::vector<double> sign_change_points(const KernelSpec& kernel);

/// int |mu|.
double l1_norm(const KernelSpec& kernel);

/// int |z| |mu|, the moment bound M.
double first_absolute_moment(const KernelSpec& kernel);

/// Kernel for a piecewise-linear asymmetric mean-free profile of the kind used
/// in digital image correlation, cell-averaged onto `cells_per_side` cells.
KernelSpec dic_kernel(double delta, int cells_per_side);

}  // namespace nonlocal
