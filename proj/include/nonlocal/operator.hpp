#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <string>
#include <vector>

#include "nonlocal/geometry.hpp"
#include "nonlocal/kernel.hpp"
#include "nonlocal/quadrature.hpp"

namespace nonlocal {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Assembled extended derivative: rows and columns are Omega_delta nodes,
/// collar rows vanish, and matrix = integral_part - mean * ep_part.
class NonlocalOperator {
 public:
  NonlocalOperator(KernelSpec kernel, GridPtr grid, Stencil stencil, SparseMatrix integral,
                   SparseMatrix ep, SparseMatrix matrix, bool transposed = false);

  const KernelSpec& kernel() const noexcept { return kernel_; }
  const GridPtr& grid() const noexcept { return grid_; }
  const Stencil& stencil() const noexcept { return stencil_; }
  int quad_order() const noexcept { return stencil_.order; }
  const SparseMatrix& matrix() const noexcept { return matrix_; }
  const SparseMatrix& integral_part() const noexcept { return integral_; }
  const SparseMatrix& ep_part() const noexcept { return ep_; }
  double mean() const noexcept { return stencil_.zeroth_sum; }
  bool mean_free() const noexcept;
  bool is_adjoint() const noexcept { return transposed_; }

  /// Omega-by-Omega block, i.e. the operator restricted to zero-collar data.
  Eigen::MatrixXd omega_block() const;

 private:
  KernelSpec kernel_;
  GridPtr grid_;
  Stencil stencil_;
  SparseMatrix integral_, ep_, matrix_;
  bool transposed_;
};

NonlocalOperator assemble(const KernelSpec& kernel, const GridPtr& grid, int quad_order);
/// Assembly from precomputed weights (used for parity projections of a stencil).
NonlocalOperator assemble_from_stencil(const KernelSpec& kernel, const GridPtr& grid,
                                       const Stencil& stencil);

/// (w_k + w_{-k}) / 2 and (w_k - w_{-k}) / 2.
Stencil symmetric_part(const Stencil& s);
Stencil antisymmetric_part(const Stencil& s);

GridFunction apply(const NonlocalOperator& op, const GridFunction& u);
NonlocalOperator adjoint(const NonlocalOperator& op);

/// <u, v> = h^d sum u_i v_i over all nodes.
double pairing(const GridFunction& u, const GridFunction& v);

/// Largest singular value by power iteration on A^T A.
double operator_norm_2(const SparseMatrix& a, int iterations = 300);

/// Coordinate text: one "row col value" line per stored entry.
void dump_matrix_coo(const NonlocalOperator& op, const std::string& path);

enum class VectorKind { LinearCombination, Gradient, Divergence };

struct VectorOperator {
  std::vector<NonlocalOperator> components;
  std::vector<double> coefficients;
  VectorKind kind = VectorKind::LinearCombination;
};

VectorOperator build_vector_operator(const std::vector<KernelSpec>& kernels,
                                     const std::vector<double>& coefficients, VectorKind kind,
                                     const GridPtr& grid, int quad_order = 1);

/// sum_k c_k D_k u.
GridFunction apply_combination(const VectorOperator& op, const GridFunction& u);
/// (c_1 D_1 u, ..., c_m D_m u).
std::vector<GridFunction> apply_gradient(const VectorOperator& op, const GridFunction& u);
/// sum_k c_k D_k v_k.
GridFunction apply_divergence(const VectorOperator& op, const std::vector<GridFunction>& v);

struct DivergenceCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  /// Sum of the magnitudes of every term entering the left side.
  double scale = 0.0;
};

/// Both sides of int_Omega D v = sum over inner collar x outer collar of
/// [v(x) + v(y)] . mu(y - x), evaluated with the stencil weights.
DivergenceCheck divergence_theorem_check(const VectorOperator& op, const std::vector<GridFunction>& v);
double divergence_theorem_residual(const VectorOperator& op, const std::vector<GridFunction>& v);

/// Discrete shape tensor K_kl = sum_m w^(k)_m (m_l h).
Eigen::Matrix2d shape_tensor(const std::vector<NonlocalOperator>& components);

/// F = (sum_m [y(x + m h) - y(x)] (x) w_m) K^{-T} at one node, which is exact
/// for affine y.
Eigen::MatrixXd approximate_deformation_gradient(const std::vector<NonlocalOperator>& components,
                                                 const std::vector<GridFunction>& y,
                                                 std::size_t node);

}  // namespace nonlocal
