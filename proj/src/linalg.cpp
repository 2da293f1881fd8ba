#include "weil/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace weil {

double unitarity_defect(const Matrix& u) {
  return (u * u.adjoint() - Matrix::Identity(u.rows(), u.cols())).norm();
}

double operator_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.adjoint() * a, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

Complex best_scalar(const Matrix& a, const Matrix& b) {
  const double bb = b.squaredNorm();
  if (bb == 0.0) throw std::invalid_argument("best_scalar against a zero matrix");
  return (b.adjoint() * a).trace() / bb;
}

double scalar_fit_residual(const Matrix& a, const Matrix& b) { return (a - best_scalar(a, b) * b).norm(); }

namespace {

struct Eigenbasis {
  Matrix vectors;  // columns orthonormal
  Vector values;
};

// Unitary matrices are normal, so their Schur form is diagonal.
Eigenbasis schur_eigenbasis(const Matrix& u) {
  Eigen::ComplexSchur<Matrix> schur(u);
  if (schur.info() != Eigen::Success) throw std::runtime_error("Schur decomposition failed");
  return {schur.matrixU(), schur.matrixT().diagonal()};
}

}  // namespace

std::vector<Matrix> intertwiner_space(const std::vector<Matrix>& a, const std::vector<Matrix>& b, double tol) {
  if (a.empty() || a.size() != b.size()) throw std::invalid_argument("intertwiner_space needs matching generator lists");
  const Eigen::Index n = a.front().rows();
  const Eigenbasis ea = schur_eigenbasis(a.front());
  const Eigenbasis eb = schur_eigenbasis(b.front());

  // X A_0 = B_0 X forces X to map the lambda-eigenspace of A_0 into the
  // lambda-eigenspace of B_0: X = sum c_ij v_i u_j^* over matching pairs.
  std::vector<std::pair<Eigen::Index, Eigen::Index>> params;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (std::abs(eb.values(i) - ea.values(j)) < 1e-6) params.emplace_back(i, j);
  if (params.empty()) return {};

  const Eigen::Index m = static_cast<Eigen::Index>(params.size());
  const Eigen::Index extra = static_cast<Eigen::Index>(a.size()) - 1;
  Matrix constraints(std::max<Eigen::Index>(1, extra * n * n), m);
  constraints.setZero();
  for (Eigen::Index k = 1; k <= extra; ++k) {
    const Matrix ua = ea.vectors.adjoint() * a[static_cast<std::size_t>(k)];  // rows u_j^* A_k
    const Matrix bv = b[static_cast<std::size_t>(k)] * eb.vectors;             // cols B_k v_i
    for (Eigen::Index c = 0; c < m; ++c) {
      auto [i, j] = params[static_cast<std::size_t>(c)];
      Matrix r = eb.vectors.col(i) * ua.row(j) - bv.col(i) * ea.vectors.col(j).adjoint();
      constraints.block((k - 1) * n * n, c, n * n, 1) = Eigen::Map<const Vector>(r.data(), n * n);
    }
  }

  Eigen::SelfAdjointEigenSolver<Matrix> es(constraints.adjoint() * constraints);
  std::vector<Matrix> out;
  for (Eigen::Index c = 0; c < m; ++c) {
    if (es.eigenvalues()(c) > tol) continue;
    Matrix x = Matrix::Zero(n, n);
    for (Eigen::Index q = 0; q < m; ++q) {
      auto [i, j] = params[static_cast<std::size_t>(q)];
      x += es.eigenvectors()(q, c) * eb.vectors.col(i) * ea.vectors.col(j).adjoint();
    }
    x /= x.norm();
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace weil
