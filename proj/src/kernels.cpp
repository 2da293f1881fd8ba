#include "weil/kernels.hpp"

namespace weil::kernels {

std::vector<Matrix> torus_operators(const WeilSystem& system, const HeckeTorus& torus, const Realization& r) {
  const auto& elements = torus.elements();
  const auto n = static_cast<std::int64_t>(elements.size());
  std::vector<Matrix> out(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t j = 0; j < n; ++j) {
    out[static_cast<std::size_t>(j)] = system.weil_op(r, elements[static_cast<std::size_t>(j)]).matrix;
  }
  return out;
}

std::vector<Matrix> torus_operators_serial(const WeilSystem& system, const HeckeTorus& torus, const Realization& r) {
  std::vector<Matrix> out;
  out.reserve(torus.elements().size());
  for (const auto& g : torus.elements()) out.push_back(system.weil_op(r, g).matrix);
  return out;
}

std::vector<Matrix> character_projectors(const std::vector<Matrix>& ops) {
  const auto n = static_cast<std::int64_t>(ops.size());
  if (n == 0) return {};
  const auto& roots = roots_of_unity(n);
  const Eigen::Index dim = ops.front().rows();
  std::vector<Matrix> out(static_cast<std::size_t>(n));
  // One projector per task; each sums over j in a fixed order, so the
  // result does not depend on the thread count.
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < n; ++k) {
    Matrix acc = Matrix::Zero(dim, dim);
    for (std::int64_t j = 0; j < n; ++j) acc.noalias() += roots(-k * j) * ops[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(k)] = acc / static_cast<double>(n);
  }
  return out;
}

std::vector<Matrix> character_projectors_serial(const std::vector<Matrix>& ops) {
  const auto n = static_cast<std::int64_t>(ops.size());
  if (n == 0) return {};
  const auto& roots = roots_of_unity(n);
  const Eigen::Index dim = ops.front().rows();
  std::vector<Matrix> out;
  for (std::int64_t k = 0; k < n; ++k) {
    Matrix p(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
      for (Eigen::Index c = 0; c < dim; ++c) {
        Complex s = 0;
        for (std::int64_t j = 0; j < n; ++j) s += std::conj(roots(k * j)) * ops[static_cast<std::size_t>(j)](r, c);
        p(r, c) = s / static_cast<double>(n);
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<ColumnSup> column_sups(const Matrix& columns) {
  const Eigen::Index n = columns.cols();
  std::vector<ColumnSup> out(static_cast<std::size_t>(n));
#pragma omp parallel for
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index arg = 0;
    const double v = columns.col(c).cwiseAbs().maxCoeff(&arg);
    out[static_cast<std::size_t>(c)] = {v, arg};
  }
  return out;
}

std::vector<ColumnSup> column_sups_serial(const Matrix& columns) {
  std::vector<ColumnSup> out;
  for (Eigen::Index c = 0; c < columns.cols(); ++c) {
    ColumnSup best{-1.0, 0};
    for (Eigen::Index x = 0; x < columns.rows(); ++x) {
      const double a = std::abs(columns(x, c));
      if (a > best.value) best = {a, x};
    }
    out.push_back(best);
  }
  return out;
}

}  // namespace weil::kernels
