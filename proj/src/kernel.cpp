#include "nonlocal/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nonlocal/errors.hpp"
#include "nonlocal/quadrature.hpp"

namespace nonlocal {

namespace {

constexpr double kPi = std::numbers::pi;

double eta(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - s * s));
}

// int_{-1}^{1} eta(s) ds, evaluated once.
double eta_mass() {
  static const double mass = [] {
    return adaptive_gauss([](double s) { return eta(s); }, -1.0, 0.0, 1e-16) * 2.0;
  }();
  return mass;
}

double int_pow(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

// Angle of the sector axis.
double axis_angle(const AngularProfile& t) { return t.axis == 0 ? 0.0 : 0.5 * kPi; }

// int over the arc [a, b] of cos^p(phi) sin^q(phi).
double arc_trig_moment(double a, double b, int p, int q) {
  const auto& rule = gauss_legendre(24);
  // Split so each piece is at most a quarter turn; the integrand is a
  // trigonometric polynomial of low degree and the rule is exact to roundoff.
  const int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / (0.5 * kPi))));
  const double step = (b - a) / pieces;
  double total = 0.0;
  for (int k = 0; k < pieces; ++k) {
    const double lo = a + k * step;
    const double half = 0.5 * step;
    const double mid = lo + half;
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double phi = mid + half * rule.nodes[i];
      s += rule.weights[i] * int_pow(std::cos(phi), p) * int_pow(std::sin(phi), q);
    }
    total += half * s;
  }
  return total;
}

}  // namespace

std::string_view to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::PotentialSector: return "potential";
    case KernelFamily::PiecewiseConstantSign: return "pcs";
    case KernelFamily::OneSided: return "one_sided";
    case KernelFamily::Polynomial: return "polynomial";
    case KernelFamily::MollifierDerivative: return "mollifier";
    case KernelFamily::Tabulated: return "tabulated";
  }
  return "unknown";
}

KernelFamily kernel_family_from_string(std::string_view name) {
  for (auto f : {KernelFamily::PotentialSector, KernelFamily::PiecewiseConstantSign,
                 KernelFamily::OneSided, KernelFamily::Polynomial,
                 KernelFamily::MollifierDerivative, KernelFamily::Tabulated}) {
    if (to_string(f) == name) return f;
  }
  throw InvalidArgument("unknown kernel family '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// construction

void KernelSpec::validate() const {
  if (!finite_positive(delta_)) throw InvalidArgument("kernel delta must be positive");
  if (dimension_ != 1 && dimension_ != 2)
    throw InvalidArgument("kernel dimension must be 1 or 2");
  if (is_power_law()) {
    if (!std::isfinite(beta_) || beta_ <= 1.0 - dimension_)
      throw NonIntegrableExponent("beta = " + std::to_string(beta_) +
                                  " is not integrable in dimension " +
                                  std::to_string(dimension_));
    if (!(theta_.half_angle >= 0.0 && theta_.half_angle < 1.0))
      throw InvalidArgument("sector half-angle parameter must lie in [0, 1)");
    if (theta_.axis < 0 || theta_.axis >= dimension_)
      throw InvalidArgument("sector axis out of range");
  } else if (dimension_ != 1) {
    throw InvalidArgument(std::string(to_string(family_)) + " kernels are one-dimensional");
  }
  if (family_ == KernelFamily::Polynomial && coefficients_.empty())
    throw InvalidArgument("polynomial kernel needs at least one coefficient");
  if (family_ == KernelFamily::Tabulated &&
      (table_.empty() || table_.size() % 2 != 0))
    throw InvalidArgument("tabulated kernel needs an even, nonzero number of cells");
}

KernelSpec KernelSpec::potential(int dimension, double delta, double beta, AngularProfile theta) {
  KernelSpec k;
  k.family_ = KernelFamily::PotentialSector;
  k.dimension_ = dimension;
  k.delta_ = delta;
  k.beta_ = beta;
  k.theta_ = theta;
  k.validate();
  return k;
}

KernelSpec KernelSpec::piecewise_constant_sign(double delta) {
  KernelSpec k = potential(1, delta, 1.0, AngularProfile{-1.0, 1.0, 0.0, 0});
  k.family_ = KernelFamily::PiecewiseConstantSign;
  return k;
}

KernelSpec KernelSpec::one_sided(double delta, double beta) {
  KernelSpec k = potential(1, delta, beta, AngularProfile{0.0, 1.0, 0.0, 0});
  k.family_ = KernelFamily::OneSided;
  return k;
}

KernelSpec KernelSpec::polynomial(double delta, std::vector<double> coefficients) {
  KernelSpec k;
  k.family_ = KernelFamily::Polynomial;
  k.delta_ = delta;
  k.coefficients_ = std::move(coefficients);
  k.validate();
  return k;
}

KernelSpec KernelSpec::mollifier_derivative(double delta) {
  KernelSpec k;
  k.family_ = KernelFamily::MollifierDerivative;
  k.delta_ = delta;
  k.validate();
  return k;
}

KernelSpec KernelSpec::tabulated(double delta, std::vector<double> cell_values) {
  KernelSpec k;
  k.family_ = KernelFamily::Tabulated;
  k.delta_ = delta;
  k.table_ = std::move(cell_values);
  k.validate();
  return k;
}

std::vector<double> KernelSpec::default_polynomial_coefficients() {
  return {225.0 / 128.0, 3675.0 / 128.0, -525.0 / 64.0,
          -6615.0 / 64.0, 945.0 / 128.0, 10395.0 / 128.0};
}

KernelSpec KernelSpec::with_normalization(double c) const {
  if (!std::isfinite(c)) throw InvalidArgument("normalization must be finite");
  KernelSpec k = *this;
  k.scale_ = c;
  return k;
}

KernelSpec KernelSpec::scaled(double factor) const { return with_normalization(scale_ * factor); }

// ---------------------------------------------------------------------------
// queries

bool KernelSpec::is_power_law() const noexcept {
  return family_ == KernelFamily::PotentialSector ||
         family_ == KernelFamily::PiecewiseConstantSign || family_ == KernelFamily::OneSided;
}

bool KernelSpec::is_singular() const noexcept { return is_power_law() && beta_ < 1.0; }

bool KernelSpec::is_symmetric() const {
  if (scale_ == 0.0) return true;
  switch (family_) {
    case KernelFamily::PotentialSector:
    case KernelFamily::PiecewiseConstantSign:
    case KernelFamily::OneSided:
      return theta_.plus == theta_.minus;
    case KernelFamily::Polynomial:
      for (std::size_t j = 1; j < coefficients_.size(); j += 2)
        if (coefficients_[j] != 0.0) return false;
      return true;
    case KernelFamily::MollifierDerivative:
      return false;
    case KernelFamily::Tabulated: {
      const std::size_t n = table_.size();
      for (std::size_t j = 0; j < n / 2; ++j)
        if (table_[j] != table_[n - 1 - j]) return false;
      return true;
    }
  }
  return false;
}

bool KernelSpec::is_antisymmetric() const {
  if (scale_ == 0.0) return true;
  switch (family_) {
    case KernelFamily::PotentialSector:
    case KernelFamily::PiecewiseConstantSign:
    case KernelFamily::OneSided:
      return theta_.plus == -theta_.minus;
    case KernelFamily::Polynomial:
      for (std::size_t j = 0; j < coefficients_.size(); j += 2)
        if (coefficients_[j] != 0.0) return false;
      return true;
    case KernelFamily::MollifierDerivative:
      return true;
    case KernelFamily::Tabulated: {
      const std::size_t n = table_.size();
      for (std::size_t j = 0; j < n / 2; ++j)
        if (table_[j] != -table_[n - 1 - j]) return false;
      return true;
    }
  }
  return false;
}

std::array<double, 2> KernelSpec::direction() const noexcept {
  if (dimension_ == 2 && theta_.axis == 1) return {0.0, 1.0};
  return {1.0, 0.0};
}

double KernelSpec::theta_at_sign(double sign) const {
  if (sign > 0.0) return theta_.plus;
  if (sign < 0.0) return theta_.minus;
  return 0.0;
}

double KernelSpec::theta_at_angle(double angle) const {
  if (dimension_ == 1) return theta_at_sign(std::cos(angle));
  const double c = theta_.axis == 0 ? std::cos(angle) : std::sin(angle);
  if (c > theta_.half_angle) return theta_.plus;
  if (c < -theta_.half_angle) return theta_.minus;
  return 0.0;
}

double KernelSpec::operator()(double z) const {
  if (dimension_ != 1) {
    const double p[2] = {z, 0.0};
    return (*this)(std::span<const double>(p, 2));
  }
  if (!std::isfinite(z)) throw InvalidArgument("kernel evaluated at a non-finite point");
  const double az = std::abs(z);
  if (az > delta_) return 0.0;
  switch (family_) {
    case KernelFamily::PotentialSector:
    case KernelFamily::PiecewiseConstantSign:
    case KernelFamily::OneSided: {
      if (z == 0.0) return 0.0;
      const double th = theta_at_sign(z);
      if (th == 0.0) return 0.0;
      return scale_ * th * std::pow(az, beta_ - 1.0);
    }
    case KernelFamily::Polynomial: {
      const double s = z / delta_;
      double even = 0.0, odd = 0.0;
      for (std::size_t j = coefficients_.size(); j-- > 0;) {
        if (j % 2 == 0) {
          even = even * s * s + coefficients_[j];
        } else {
          odd = odd * s * s + coefficients_[j];
        }
      }
      // even collects c_0 + c_2 s^2 + ...; odd collects c_1 + c_3 s^2 + ...
      return scale_ * (even / delta_ + s * odd / (delta_ * delta_));
    }
    case KernelFamily::MollifierDerivative: {
      const double s = z / delta_;
      if (std::abs(s) >= 1.0) return 0.0;
      const double q = 1.0 - s * s;
      return scale_ * eta(s) * 2.0 * s / (q * q) / (eta_mass() * delta_ * delta_);
    }
    case KernelFamily::Tabulated: {
      const int cells = static_cast<int>(table_.size());
      const double width = 2.0 * delta_ / cells;
      int j = static_cast<int>(std::floor((z + delta_) / width));
      j = std::clamp(j, 0, cells - 1);
      return scale_ * table_[static_cast<std::size_t>(j)];
    }
  }
  return 0.0;
}

double KernelSpec::operator()(std::span<const double> z) const {
  if (z.size() < static_cast<std::size_t>(dimension_))
    throw InvalidArgument("point has fewer coordinates than the kernel dimension");
  if (dimension_ == 1) return (*this)(z[0]);
  const double x = z[0], y = z[1];
  if (!std::isfinite(x) || !std::isfinite(y))
    throw InvalidArgument("kernel evaluated at a non-finite point");
  const double r = std::hypot(x, y);
  if (r > delta_ || r == 0.0) return 0.0;
  const double c = (theta_.axis == 0 ? x : y) / r;
  double th = 0.0;
  if (c > theta_.half_angle) {
    th = theta_.plus;
  } else if (c < -theta_.half_angle) {
    th = theta_.minus;
  }
  if (th == 0.0) return 0.0;
  return scale_ * th * std::pow(r, beta_ - 1.0);
}

std::vector<double> KernelSpec::breakpoints() const {
  std::vector<double> b{-delta_, 0.0, delta_};
  if (family_ == KernelFamily::Tabulated) {
    const int cells = static_cast<int>(table_.size());
    for (int j = 1; j < cells; ++j) b.push_back(-delta_ + 2.0 * delta_ * j / cells);
  }
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

// ---------------------------------------------------------------------------
// moments

double KernelMoments::at(int p, int q) const {
  auto it = higher.find(MultiIndex{p, q});
  if (it == higher.end()) throw InvalidArgument("moment not computed for this multi-index");
  return it->second;
}

namespace {

double closed_form_moment_1d(const KernelSpec& k, int m) {
  const double d = k.delta();
  const double c = k.normalization();
  switch (k.family()) {
    case KernelFamily::PotentialSector:
    case KernelFamily::PiecewiseConstantSign:
    case KernelFamily::OneSided: {
      const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
      const double weight = k.theta().plus + sgn * k.theta().minus;
      if (weight == 0.0) return 0.0;
      const double e = m + k.beta();
      return c * weight * std::pow(d, e) / e;
    }
    case KernelFamily::Polynomial: {
      double total = 0.0;
      const auto& cf = k.coefficients();
      for (std::size_t j = 0; j < cf.size(); ++j) {
        const int n = m + static_cast<int>(j);
        if (n % 2 != 0 || cf[j] == 0.0) continue;
        const int e = (j % 2 == 0) ? 1 : 2;
        total += cf[j] * int_pow(d, m + 1 - e) * 2.0 / (n + 1);
      }
      return c * total;
    }
    case KernelFamily::Tabulated: {
      const auto& t = k.table();
      const int cells = static_cast<int>(t.size());
      double total = 0.0;
      for (int j = 0; j < cells; ++j) {
        const double a = -d + 2.0 * d * j / cells;
        const double b = -d + 2.0 * d * (j + 1) / cells;
        total += t[static_cast<std::size_t>(j)] * (int_pow(b, m + 1) - int_pow(a, m + 1)) / (m + 1);
      }
      return c * total;
    }
    case KernelFamily::MollifierDerivative:
      break;
  }
  throw InvalidArgument("no closed form for this family");
}

double closed_form_moment_2d(const KernelSpec& k, int p, int q) {
  const auto& th = k.theta();
  const double phi0 = std::acos(th.half_angle);
  const double alpha = axis_angle(th);
  const double e = p + q + k.beta() + 1.0;
  const double radial = std::pow(k.delta(), e) / e;
  double angular = 0.0;
  if (th.plus != 0.0) angular += th.plus * arc_trig_moment(alpha - phi0, alpha + phi0, p, q);
  if (th.minus != 0.0)
    angular += th.minus * arc_trig_moment(alpha + kPi - phi0, alpha + kPi + phi0, p, q);
  return k.normalization() * radial * angular;
}

}  // namespace

KernelMoments moments(const KernelSpec& kernel, int max_order) {
  if (max_order < 0 || max_order > 5)
    throw InvalidArgument("moment order must lie in [0, 5]");
  KernelMoments out;
  out.max_order = max_order;
  const bool anti = kernel.is_antisymmetric();
  const bool sym = kernel.is_symmetric();
  const bool zero = kernel.normalization() == 0.0;

  auto parity_zero = [&](int order) {
    return zero || (anti && order % 2 == 0) || (sym && order % 2 == 1);
  };

  if (kernel.dimension() == 1) {
    const bool closed = kernel.family() != KernelFamily::MollifierDerivative;
    out.source = closed ? MomentSource::ClosedForm : MomentSource::Reference;
    for (int m = 0; m <= max_order; ++m) {
      double v = 0.0;
      if (!parity_zero(m)) {
        if (closed) {
          v = closed_form_moment_1d(kernel, m);
        } else {
          v = reference_integrate(kernel, [m](double z) { return int_pow(z, m); });
        }
      }
      out.higher[MultiIndex{m, 0}] = v;
    }
    out.zeroth = out.at(0);
    if (max_order >= 1) out.first = {out.at(1)};
    return out;
  }

  out.source = MomentSource::ClosedForm;
  for (int order = 0; order <= max_order; ++order) {
    for (int p = order; p >= 0; --p) {
      const int q = order - p;
      out.higher[MultiIndex{p, q}] = parity_zero(order) ? 0.0 : closed_form_moment_2d(kernel, p, q);
    }
  }
  out.zeroth = out.at(0, 0);
  if (max_order >= 1) out.first = {out.at(1, 0), out.at(0, 1)};
  return out;
}

double scaling_constant(const KernelSpec& kernel) {
  const KernelMoments m = moments(kernel, 1);
  const auto a = kernel.direction();
  double along = m.first[0] * a[0];
  if (kernel.dimension() == 2) along += m.first[1] * a[1];
  const double bound = first_absolute_moment(kernel);
  if (!(std::abs(along) > 1e-12 * bound) || !std::isfinite(along))
    throw DegenerateFirstMoment("kernel has no first moment along its direction");
  return 1.0 / along;
}

KernelSpec normalized(const KernelSpec& kernel) { return kernel.scaled(scaling_constant(kernel)); }

KernelParts decompose(const KernelSpec& kernel) {
  switch (kernel.family()) {
    case KernelFamily::PotentialSector:
    case KernelFamily::PiecewiseConstantSign:
    case KernelFamily::OneSided: {
      const auto& t = kernel.theta();
      AngularProfile ts = t, ta = t;
      ts.plus = ts.minus = 0.5 * (t.plus + t.minus);
      ta.plus = 0.5 * (t.plus - t.minus);
      ta.minus = -ta.plus;
      const double c = kernel.normalization();
      return {KernelSpec::potential(kernel.dimension(), kernel.delta(), kernel.beta(), ts)
                  .with_normalization(c),
              KernelSpec::potential(kernel.dimension(), kernel.delta(), kernel.beta(), ta)
                  .with_normalization(c)};
    }
    case KernelFamily::Polynomial: {
      std::vector<double> even = kernel.coefficients(), odd = kernel.coefficients();
      for (std::size_t j = 0; j < even.size(); ++j) (j % 2 == 0 ? odd : even)[j] = 0.0;
      const double c = kernel.normalization();
      return {KernelSpec::polynomial(kernel.delta(), even).with_normalization(c),
              KernelSpec::polynomial(kernel.delta(), odd).with_normalization(c)};
    }
    case KernelFamily::MollifierDerivative:
      return {kernel.with_normalization(0.0), kernel};
    case KernelFamily::Tabulated: {
      const auto& t = kernel.table();
      const std::size_t n = t.size();
      std::vector<double> s(n), a(n);
      for (std::size_t j = 0; j < n; ++j) {
        s[j] = 0.5 * (t[j] + t[n - 1 - j]);
        a[j] = 0.5 * (t[j] - t[n - 1 - j]);
      }
      const double c = kernel.normalization();
      return {KernelSpec::tabulated(kernel.delta(), s).with_normalization(c),
              KernelSpec::tabulated(kernel.delta(), a).with_normalization(c)};
    }
  }
  throw InvalidArgument("unknown kernel family");
}

double second_moment_of_symmetric_part(const KernelSpec& kernel) {
  const KernelMoments m = moments(decompose(kernel).symmetric, 2);
  if (kernel.dimension() == 1) return m.at(2);
  return m.at(2, 0) + m.at(0, 2);
}

namespace {

// Points in (-delta, delta) where a bounded 1D kernel changes sign.
std::vector<double> sign_changes(const KernelSpec& k) {
  std::vector<double> roots;
  if (k.family() != KernelFamily::Polynomial) return roots;
  const int samples = 4096;
  const double d = k.delta();
  auto x_at = [&](int i) { return -d + 2.0 * d * i / samples; };
  double prev = k(x_at(0));
  for (int i = 1; i <= samples; ++i) {
    const double x = x_at(i);
    const double cur = k(x);
    if ((prev < 0.0 && cur > 0.0) || (prev > 0.0 && cur < 0.0)) {
      double lo = x_at(i - 1), hi = x;
      const double flo = prev;
      for (int it = 0; it < 200 && hi - lo > 1e-16 * d; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = k(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    if (cur != 0.0) prev = cur;
  }
  return roots;
}

double absolute_moment(const KernelSpec& k, int m) {
  const double c = std::abs(k.normalization());
  if (c == 0.0) return 0.0;
  const double d = k.delta();
  if (k.is_power_law()) {
    const auto& t = k.theta();
    const double w = std::abs(t.plus) + std::abs(t.minus);
    if (k.dimension() == 1) {
      const double e = m + k.beta();
      return c * w * std::pow(d, e) / e;
    }
    const double e = m + k.beta() + 1.0;
    return c * w * 2.0 * std::acos(t.half_angle) * std::pow(d, e) / e;
  }
  if (k.family() == KernelFamily::Tabulated) {
    const auto& t = k.table();
    const int cells = static_cast<int>(t.size());
    double total = 0.0;
    for (int j = 0; j < cells; ++j) {
      double a = -d + 2.0 * d * j / cells;
      double b = -d + 2.0 * d * (j + 1) / cells;
      // int |z|^m over [a, b]
      double part;
      if (a >= 0.0) {
        part = (int_pow(b, m + 1) - int_pow(a, m + 1)) / (m + 1);
      } else if (b <= 0.0) {
        part = (int_pow(-a, m + 1) - int_pow(-b, m + 1)) / (m + 1);
      } else {
        part = (int_pow(-a, m + 1) + int_pow(b, m + 1)) / (m + 1);
      }
      total += std::abs(t[static_cast<std::size_t>(j)]) * part;
    }
    return c * total;
  }
  const auto extra = sign_changes(k);
  return reference_integrate(
      k,
      [&k, m](double z) {
        const double v = k(z);
        const double s = v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
        return s * int_pow(std::abs(z), m);
      },
      1e-14, extra);
}

}  // namespace

std::vector<double> sign_change_points(const KernelSpec& kernel) { return sign_changes(kernel); }

double l1_norm(const KernelSpec& kernel) { return absolute_moment(kernel, 0); }

double first_absolute_moment(const KernelSpec& kernel) { return absolute_moment(kernel, 1); }

KernelSpec dic_kernel(double delta, int cells_per_side) {
  if (cells_per_side < 1) throw InvalidArgument("dic kernel needs at least one cell per side");
  // g(s) = s on [-1, 0] and 3s - 1 on (0, 1]: piecewise linear, asymmetric,
  // integrates to zero. Averages over cells are midpoint values.
  const int m = cells_per_side;
  std::vector<double> values(static_cast<std::size_t>(2 * m));
  for (int j = 0; j < 2 * m; ++j) {
    const double s = -1.0 + (j + 0.5) / m;
    values[static_cast<std::size_t>(j)] = s < 0.0 ? s : 3.0 * s - 1.0;
  }
  return normalized(KernelSpec::tabulated(delta, std::move(values)));
}

}  // namespace nonlocal
