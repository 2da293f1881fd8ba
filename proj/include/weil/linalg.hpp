#pragma once

// Dense complex linear algebra helpers shared by the models, hecke and
// harness layers.

#include <Eigen/Dense>
#include <vector>

#include "weil/arith.hpp"

namespace weil {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// ||U U^* - I||_F
double unitarity_defect(const Matrix& u);

/// Largest singular value.
double operator_norm(const Matrix& a);

/// The scalar s minimizing ||a - s b||_F (b must be nonzero).
Complex best_scalar(const Matrix& a, const Matrix& b);

/// Residual of the best scalar fit, ||a - s b||_F.
double scalar_fit_residual(const Matrix& a, const Matrix& b);

/// Basis of { X : X A_i = B_i X for all i }, for unitary A_i, B_i. The first
/// pair is diagonalized by a Schur decomposition and X is parametrized
/// blockwise between matching eigenspaces; the remaining pairs then cut the
/// parameter space down. Solutions are returned with ||X||_F = 1 and are
/// orthonormal in the Frobenius inner product.
std::vector<Matrix> intertwiner_space(const std::vector<Matrix>& a, const std::vector<Matrix>& b, double tol = 1e-8);

/// dim { X : X A_i = A_i X }.
inline std::size_t commutant_dimension(const std::vector<Matrix>& a, double tol = 1e-8) {
  return intertwiner_space(a, a, tol).size();
}

}  // namespace weil
