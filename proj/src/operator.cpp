#include "nonlocal/operator.hpp"

#include <cmath>
#include <cstdio>
#include <memory>

#include "nonlocal/errors.hpp"
#include "nonlocal/parallel.hpp"

namespace nonlocal {

NonlocalOperator::NonlocalOperator(KernelSpec kernel, GridPtr grid, Stencil stencil,
                                   SparseMatrix integral, SparseMatrix ep, SparseMatrix matrix,
                                   bool transposed)
    : kernel_(std::move(kernel)),
      grid_(std::move(grid)),
      stencil_(std::move(stencil)),
      integral_(std::move(integral)),
      ep_(std::move(ep)),
      matrix_(std::move(matrix)),
      transposed_(transposed) {}

bool NonlocalOperator::mean_free() const noexcept { return std::abs(stencil_.zeroth_sum) <= 1e-12; }

Eigen::MatrixXd NonlocalOperator::omega_block() const {
  const Grid& g = *grid_;
  const auto n = static_cast<Eigen::Index>(g.omega_size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int r = 0; r < matrix_.outerSize(); ++r) {
    const auto pr = g.omega_position(static_cast<std::size_t>(r));
    if (pr < 0) continue;
    for (SparseMatrix::InnerIterator it(matrix_, r); it; ++it) {
      const auto pc = g.omega_position(static_cast<std::size_t>(it.col()));
      if (pc < 0) continue;
      m(pr, pc) = it.value();
    }
  }
  return m;
}

NonlocalOperator assemble_from_stencil(const KernelSpec& kernel, const GridPtr& grid,
                                       const Stencil& stencil) {
  const Grid& g = *grid;
  if (stencil.dimension != g.dimension()) throw GridMismatch("stencil and grid dimensions differ");
  if (stencil.n != g.n_per_delta()) throw IncompatibleHorizon("stencil reach differs from the grid's");
  const auto& nodes = g.omega_nodes();
  const double mean = stencil.zeroth_sum;

  using Entry = Eigen::Triplet<double>;
  std::vector<std::vector<Entry>> chunks(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t r = b; r < e; ++r) {
      const std::size_t i = nodes[r];
      auto& row = chunks[r];
      row.reserve(stencil.offsets.size());
      for (std::size_t k = 0; k < stencil.offsets.size(); ++k) {
        const auto j = g.neighbor(i, stencil.offsets[k][0], stencil.offsets[k][1]);
        if (j < 0) throw GridMismatch("stencil reaches beyond the collar");
        row.emplace_back(static_cast<int>(i), static_cast<int>(j), stencil.weights[k]);
      }
    }
  });

  const auto n = static_cast<Eigen::Index>(g.size());
  std::vector<Entry> integral_entries, ep_entries, matrix_entries;
  for (std::size_t r = 0; r < nodes.size(); ++r) {
    const int i = static_cast<int>(nodes[r]);
    for (const auto& t : chunks[r]) {
      integral_entries.push_back(t);
      matrix_entries.push_back(t);
    }
    ep_entries.emplace_back(i, i, 1.0);
    if (mean != 0.0) matrix_entries.emplace_back(i, i, -mean);
  }
  SparseMatrix integral(n, n), ep(n, n), matrix(n, n);
  integral.setFromTriplets(integral_entries.begin(), integral_entries.end());
  ep.setFromTriplets(ep_entries.begin(), ep_entries.end());
  matrix.setFromTriplets(matrix_entries.begin(), matrix_entries.end());
  return NonlocalOperator(kernel, grid, stencil, std::move(integral), std::move(ep),
                          std::move(matrix));
}

NonlocalOperator assemble(const KernelSpec& kernel, const GridPtr& grid, int quad_order) {
  return assemble_from_stencil(kernel, grid, build_stencil(kernel, *grid, quad_order));
}

namespace {

Stencil parity_part(const Stencil& s, double sign) {
  Stencil out = s;
  const int n = s.n;
  const int ylo = s.dimension == 1 ? 0 : -n, yhi = s.dimension == 1 ? 0 : n;
  const int w = s.width();
  for (int ky = ylo; ky <= yhi; ++ky)
    for (int kx = -n; kx <= n; ++kx) {
      const int row = s.dimension == 1 ? 0 : ky + n;
      out.dense[static_cast<std::size_t>(row * w + kx + n)] =
          0.5 * (s.weight(kx, ky) + sign * s.weight(-kx, -ky));
    }
  // Recompute offsets and the pairwise sum.
  out.offsets.clear();
  out.weights.clear();
  double total = out.weight(0, 0);
  for (int ky = ylo; ky <= yhi; ++ky)
    for (int kx = -n; kx <= n; ++kx) {
      const double v = out.weight(kx, ky);
      if (v != 0.0) {
        out.offsets.push_back({kx, ky});
        out.weights.push_back(v);
      }
      if (ky > 0 || (ky == 0 && kx > 0)) total += out.weight(kx, ky) + out.weight(-kx, -ky);
    }
  out.zeroth_sum = total;
  return out;
}

void require_same_grid(const GridPtr& a, const GridPtr& b) {
  if (!a || !b || (a != b && !(*a == *b))) throw GridMismatch("function lives on a different grid");
}

}  // namespace

Stencil symmetric_part(const Stencil& s) { return parity_part(s, 1.0); }
Stencil antisymmetric_part(const Stencil& s) { return parity_part(s, -1.0); }

GridFunction apply(const NonlocalOperator& op, const GridFunction& u) {
  require_same_grid(op.grid(), u.grid);
  if (u.tag == SupportTag::OnOmega || u.values.size() != op.grid()->size())
    throw GridMismatch("operator expects a function on Omega_delta");
  const Eigen::Map<const Eigen::VectorXd> x(u.values.data(), static_cast<Eigen::Index>(u.size()));
  GridFunction out = GridFunction::zeros(op.grid(), op.is_adjoint() ? SupportTag::OnOmegaDelta
                                                                      : SupportTag::ZeroOnCollar);
  Eigen::Map<Eigen::VectorXd> y(out.values.data(), static_cast<Eigen::Index>(out.size()));
  y = op.matrix() * x;
  return out;
}

NonlocalOperator adjoint(const NonlocalOperator& op) {
  SparseMatrix it = op.integral_part().transpose();
  SparseMatrix ep = op.ep_part().transpose();
  SparseMatrix m = op.matrix().transpose();
  return NonlocalOperator(op.kernel(), op.grid(), op.stencil(), std::move(it), std::move(ep),
                          std::move(m), !op.is_adjoint());
}

double pairing(const GridFunction& u, const GridFunction& v) {
  require_same_grid(u.grid, v.grid);
  if (u.size() != v.size()) throw LengthMismatch("pairing of functions with different lengths");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u.values[i] * v.values[i];
  return s * u.grid->cell_volume();
}

double operator_norm_2(const SparseMatrix& a, int iterations) {
  const Eigen::Index n = a.cols();
  if (n == 0) return 0.0;
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i) + 0.3);
  x.normalize();
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Eigen::VectorXd y = a.transpose() * (a * x);
    const double ny = y.norm();
    if (ny == 0.0) return 0.0;
    lambda = x.dot(y);
    x = y / ny;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

void dump_matrix_coo(const NonlocalOperator& op, const std::string& path) {
  std::unique_ptr<std::FILE, int (*)(std::FILE*)> f(std::fopen(path.c_str(), "w"), &std::fclose);
  if (!f) throw InvalidArgument("cannot open '" + path + "' for writing");
  const auto& m = op.matrix();
  std::fprintf(f.get(), "%% rows %ld cols %ld nnz %ld\n", static_cast<long>(m.rows()),
               static_cast<long>(m.cols()), static_cast<long>(m.nonZeros()));
  for (int r = 0; r < m.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(m, r); it; ++it)
      std::fprintf(f.get(), "%d %ld %.17g\n", r, static_cast<long>(it.col()), it.value());
}

// ---------------------------------------------------------------------------
// vector operators

VectorOperator build_vector_operator(const std::vector<KernelSpec>& kernels,
                                     const std::vector<double>& coefficients, VectorKind kind,
                                     const GridPtr& grid, int quad_order) {
  if (kernels.size() != coefficients.size())
    throw LengthMismatch("kernel and coefficient counts differ");
  if (kernels.empty()) throw LengthMismatch("vector operator needs at least one component");
  VectorOperator v;
  v.kind = kind;
  v.coefficients = coefficients;
  for (const auto& k : kernels) v.components.push_back(assemble(k, grid, quad_order));
  return v;
}

GridFunction apply_combination(const VectorOperator& op, const GridFunction& u) {
  GridFunction out = GridFunction::zeros(op.components.front().grid(), SupportTag::ZeroOnCollar);
  for (std::size_t k = 0; k < op.components.size(); ++k) {
    const GridFunction d = apply(op.components[k], u);
    for (std::size_t i = 0; i < out.size(); ++i) out.values[i] += op.coefficients[k] * d.values[i];
  }
  return out;
}

std::vector<GridFunction> apply_gradient(const VectorOperator& op, const GridFunction& u) {
  std::vector<GridFunction> out;
  for (std::size_t k = 0; k < op.components.size(); ++k) {
    GridFunction d = apply(op.components[k], u);
    for (double& x : d.values) x *= op.coefficients[k];
    out.push_back(std::move(d));
  }
  return out;
}

GridFunction apply_divergence(const VectorOperator& op, const std::vector<GridFunction>& v) {
  if (v.size() != op.components.size())
    throw LengthMismatch("vector field has the wrong number of components");
  GridFunction out = GridFunction::zeros(op.components.front().grid(), SupportTag::ZeroOnCollar);
  for (std::size_t k = 0; k < op.components.size(); ++k) {
    const GridFunction d = apply(op.components[k], v[k]);
    for (std::size_t i = 0; i < out.size(); ++i) out.values[i] += op.coefficients[k] * d.values[i];
  }
  return out;
}

DivergenceCheck divergence_theorem_check(const VectorOperator& op, const std::vector<GridFunction>& v) {
  if (v.size() != op.components.size())
    throw LengthMismatch("vector field has the wrong number of components");
  for (const auto& c : op.components)
    if (!c.kernel().is_antisymmetric())
      throw NotAntisymmetric("divergence theorem needs antisymmetric component kernels");
  const Grid& g = *op.components.front().grid();
  for (const auto& f : v) require_same_grid(op.components.front().grid(), f.grid);

  DivergenceCheck out;
  const GridFunction div = apply_divergence(op, v);
  for (std::size_t i = 0; i < g.size(); ++i) out.lhs += div.values[i];

  for (std::size_t k = 0; k < op.components.size(); ++k) {
    const Stencil& st = op.components[k].stencil();
    const double c = op.coefficients[k];
    const auto& vk = v[k].values;
    for (std::size_t i : g.omega_nodes()) {
      const bool inner = g.region(i) == Region::InnerCollar;
      for (std::size_t m = 0; m < st.offsets.size(); ++m) {
        const auto j = static_cast<std::size_t>(g.neighbor(i, st.offsets[m][0], st.offsets[m][1]));
        const double w = st.weights[m];
        out.scale += std::abs(c * w) * (std::abs(vk[j]) + std::abs(vk[i]));
        if (inner && g.region(j) == Region::OuterCollar) out.rhs += c * (vk[i] + vk[j]) * w;
      }
    }
  }
  const double vol = g.cell_volume();
  out.lhs *= vol;
  out.rhs *= vol;
  out.scale *= vol;
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

double divergence_theorem_residual(const VectorOperator& op, const std::vector<GridFunction>& v) {
  return divergence_theorem_check(op, v).residual;
}

Eigen::Matrix2d shape_tensor(const std::vector<NonlocalOperator>& components) {
  Eigen::Matrix2d k = Eigen::Matrix2d::Zero();
  for (std::size_t c = 0; c < components.size() && c < 2; ++c) {
    const Stencil& st = components[c].stencil();
    for (int l = 0; l < st.dimension && l < 2; ++l) k(static_cast<Eigen::Index>(c), l) = st.first_moment(l);
  }
  return k;
}

Eigen::MatrixXd approximate_deformation_gradient(const std::vector<NonlocalOperator>& components,
                                                 const std::vector<GridFunction>& y,
                                                 std::size_t node) {
  if (components.empty()) throw LengthMismatch("no kernel components");
  const auto& grid = components.front().grid();
  const int d = grid->dimension();
  if (static_cast<int>(components.size()) != d || static_cast<int>(y.size()) != d)
    throw LengthMismatch("deformation gradient needs d kernels and d deformation components");
  if (node >= grid->size() || !grid->in_omega(node))
    throw InvalidArgument("deformation gradient requested outside Omega");
  for (const auto& f : y) require_same_grid(grid, f.grid);

  Eigen::MatrixXd shape(d, d), first(d, d);
  for (int k = 0; k < d; ++k) {
    const Stencil& st = components[static_cast<std::size_t>(k)].stencil();
    for (int l = 0; l < d; ++l) shape(k, l) = st.first_moment(l);
  }
  for (int j = 0; j < d; ++j) {
    const auto& yj = y[static_cast<std::size_t>(j)].values;
    for (int k = 0; k < d; ++k) {
      const auto& m = components[static_cast<std::size_t>(k)].matrix();
      double s = 0.0;
      for (SparseMatrix::InnerIterator it(m, static_cast<Eigen::Index>(node)); it; ++it)
        s += it.value() * yj[static_cast<std::size_t>(it.col())];
      first(j, k) = s;
    }
  }
  const double scale = shape.cwiseAbs().maxCoeff();
  const double det = shape.determinant();
  if (!(std::abs(det) >= 1e-12 * std::pow(scale, d)) || scale == 0.0)
    throw SingularShapeTensor("shape tensor is singular");
  return first * shape.transpose().inverse();
}

}  // namespace nonlocal
