#pragma once

// The data-parallel inner loops of the Hecke decomposition. Each kernel has
// an OpenMP version and a plain serial reference; the two must agree to
// rounding and the tests hold them to it.

#include <vector>

#include "weil/groups.hpp"
#include "weil/linalg.hpp"
#include "weil/models.hpp"

namespace weil::kernels {

/// rho(g^j) for j = 0..N-1, in generator-power order.
std::vector<Matrix> torus_operators(const WeilSystem& system, const HeckeTorus& torus, const Realization& r);
std::vector<Matrix> torus_operators_serial(const WeilSystem& system, const HeckeTorus& torus, const Realization& r);

/// P_k = (1/N) sum_j conj(chi_k(g^j)) ops[j] for k = 0..N-1.
std::vector<Matrix> character_projectors(const std::vector<Matrix>& ops);
std::vector<Matrix> character_projectors_serial(const std::vector<Matrix>& ops);

/// max_x |v(x)| for each column, together with the argmax.
struct ColumnSup {
  double value;
  Eigen::Index argmax;
};
std::vector<ColumnSup> column_sups(const Matrix& columns);
std::vector<ColumnSup> column_sups_serial(const Matrix& columns);

}  // namespace weil::kernels
