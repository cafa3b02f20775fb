#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nonlocal/geometry.hpp"
#include "nonlocal/kernel.hpp"
#include "nonlocal/operator.hpp"
#include "nonlocal/test_functions.hpp"

namespace nonlocal {

/// Kernel as a function of the horizon, for delta sweeps.
using KernelFactory = std::function<KernelSpec(double delta)>;

/// Deterministic uniform generator; the stream depends only on the seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  double uniform(double lo = -1.0, double hi = 1.0);
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

GridFunction random_function(const GridPtr& grid, Rng& rng, SupportTag tag = SupportTag::OnOmegaDelta);

enum class NormKind { Lp, Pointwise, Duality };
enum class Evaluation { Reference, Assembled };

struct ConvergenceReport {
  std::vector<double> deltas;
  std::vector<double> errors;
  std::vector<int> n_per_delta;
  double fitted_order = 0.0;
  double predicted_order = 0.0;
  NormKind norm = NormKind::Lp;
  double p = 2.0;
  /// Modulus of moment convergence; identically zero for the built-in families.
  double omega = 0.0;
};

/// Least-squares slope of log(error) against log(delta) over the last four points.
double fit_order(const std::vector<double>& deltas, const std::vector<double>& errors);

/// Rate implied by the first nonzero moment of order m >= 2: m - 1, or m for
/// the even part of the polynomial family (whose even powers scale by 1/delta).
double predicted_order(const KernelSpec& kernel);

/// n_per_delta = max(8, round(0.4 / delta)).
int default_n_per_delta(double delta);

struct StudyOptions {
  double lo = 0.0;
  double hi = 1.0;
  double p = 2.0;
  int quad_order = 2;
  Evaluation evaluation = Evaluation::Reference;
  /// Zero selects default_n_per_delta.
  int n_per_delta = 0;
};

/// D_delta u at a point by reference quadrature.
double nonlocal_derivative_at(const KernelSpec& kernel, const TestFunction& u, double x);

/// ||D_delta u - a . grad u|| over Omega nodes per delta.
ConvergenceReport strong_convergence_study(const TestFunction& u, const KernelFactory& family,
                                           const std::vector<double>& deltas,
                                           const StudyOptions& options = {});

/// |<D_delta u, phi> + <u, a . grad phi>| per delta.
ConvergenceReport weak_convergence_study(const TestFunction& u, const TestFunction& phi,
                                         const KernelFactory& family,
                                         const std::vector<double>& deltas,
                                         const StudyOptions& options = {});

struct IbpResiduals {
  double sym = 0.0;
  double antisym = 0.0;
  double combined = 0.0;
  /// ||u|| ||v|| ||matrix||_2, the natural size of every term.
  double scale = 0.0;
};

/// Residuals of the three integration-by-parts identities, with duality
/// pairings as cell sums and the collar double integral as a double cell sum
/// over inner collar x outer collar.
IbpResiduals ibp_residual(const GridFunction& u, const GridFunction& v, const KernelSpec& kernel,
                          const GridPtr& grid, int quad_order = 1);

/// |<D u, v> - <u, D* v>| / (||u|| ||v||).
double adjoint_residual(const NonlocalOperator& op, const GridFunction& u, const GridFunction& v);

enum class Subspace { Full, ZeroOnCollar };

struct SpectralReport {
  std::vector<int> grid_sizes;
  std::vector<double> min_singular_values;
  std::vector<std::complex<double>> spectrum_sample;
  double kernel_mean = 0.0;
  double norm2 = 0.0;
  double max_abs_real = 0.0;
  double max_abs_imag = 0.0;
};

SpectralReport spectrum_probe(const KernelSpec& kernel, const GridPtr& grid, Subspace subspace,
                              int quad_order = 1);

/// Smallest singular value of the operator restricted to zero-collar data.
double sigma_min(const NonlocalOperator& op);

/// sigma_min for each n_per_delta on a fixed domain and horizon.
SpectralReport compactness_decay(const KernelSpec& kernel, const Domain& domain,
                                 const std::vector<int>& n_per_delta, int quad_order = 1);

/// min ||D u|| / ||u|| over zero-collar u, i.e. sigma_min.
double poincare_ratio(const KernelSpec& kernel, const GridPtr& grid, int quad_order = 1);

/// ||D h|| over interior-core nodes divided by ||h|| over Omega, h sampled on Omega_delta.
double witness_ratio(const NonlocalOperator& op, const TestFunction& h);

/// D_delta u(0) for u(x) = x^2 sin(1/x) ("oscillating") or u = 0 ("zero"),
/// with a one-dimensional power-law kernel.
double oscillation_value(const KernelSpec& kernel, const TestFunction& u);

enum class FigureKind { AbsVal, Cusp };

struct FigureTable {
  std::vector<double> x, u, du, Du;
  double value_at_kink = 0.0;       // average of the two nodes straddling 0.5
  double smooth_max_error = 0.0;    // max |Du - u'| for |x - 0.5| > 2 delta
  double smooth_max = 0.0;          // max |Du| for |x - 0.5| > 2 delta
  double overall_max = 0.0;         // max |Du| over Omega
};

FigureTable reproduce_figure(FigureKind which, const KernelSpec& kernel, const GridPtr& grid,
                             int quad_order = 1);

}  // namespace nonlocal
