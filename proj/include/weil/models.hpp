#pragma once

// Models of the Heisenberg representation attached to enhanced Lagrangians,
// the canonical intertwiners between them, and the Weil representation
// realized in a model.
//
// A model H_L = { f : H -> C | f((l,z) h) = psi(z) f(h), l in L } is stored
// through its values on a transversal: a Realization fixes sigma on L and a
// vector tau with omega(sigma, tau) = 1, and amplitude x is f((x tau, 0)).
// Every element (v, z) of H factors uniquely as (alpha sigma, w)(beta tau, 0)
// with alpha = omega(v, tau), beta = omega(sigma, v), w = z - alpha beta / 2,
// so f((v, z)) = psi(w) F[beta]. All operators below are assembled from that
// single evaluation rule.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "weil/groups.hpp"
#include "weil/linalg.hpp"

namespace weil {

/// Raised when the intertwiner constraint system has no consistent
/// solution; this can only mean a bug in the operator assembly.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Realization {
 public:
  /// Transversal chosen by a fixed rule: tau = (0, 1/s1) if s1 != 0,
  /// else tau = (-1/s2, 0).
  explicit Realization(EnhancedLagrangian lagrangian);
  /// Transversal along `direction`, rescaled so omega(sigma, tau) = 1.
  /// Throws std::invalid_argument if direction lies on the Lagrangian.
  Realization(EnhancedLagrangian lagrangian, const SymplecticVector& direction);

  const EnhancedLagrangian& lagrangian() const { return lagrangian_; }
  const SymplecticVector& sigma() const { return lagrangian_.sigma(); }
  const SymplecticVector& transversal() const { return tau_; }
  std::int64_t dimension() const { return lagrangian_.modulus(); }
  std::int64_t modulus() const { return lagrangian_.modulus(); }

  /// The Heisenberg point (x tau, 0) labelled by index x.
  HeisenbergElement point(std::int64_t x) const;

  /// f(h) = psi(phase) * F[index] for f in this model.
  struct Location {
    std::int64_t index;
    FieldElement phase;
  };
  Location locate(const HeisenbergElement& h) const;

  bool operator==(const Realization& o) const { return lagrangian_ == o.lagrangian_ && tau_ == o.tau_; }
  bool operator!=(const Realization& o) const { return !(*this == o); }

 private:
  EnhancedLagrangian lagrangian_;
  SymplecticVector tau_;
};

std::string to_string(const Realization& r);

struct ModelVector {
  Realization realization;
  Vector amplitudes;

  double norm2() const { return amplitudes.squaredNorm(); }
};

struct HeisOperator {
  Realization realization;
  Matrix matrix;
};

struct Intertwiner {
  Realization source;
  Realization target;
  Matrix matrix;
};

struct WeilOperator {
  SympMatrix g;
  Realization realization;
  Matrix matrix;
};

/// ((1,0),0) and ((0,1),0), which generate H together with the center.
std::vector<HeisenbergElement> heisenberg_generators(std::int64_t p);

/// Everything attached to one prime: the additive character table and the
/// normalization of the canonical intertwiners. Immutable after
/// construction, so one instance can be shared between threads.
class WeilSystem {
 public:
  /// Solves the intertwiner constraint system; throws ConstructionError if
  /// it is inconsistent.
  explicit WeilSystem(std::int64_t p);

  std::int64_t modulus() const { return p_; }

  /// The coefficient c with F = c * raw_averaging for transverse pairs with
  /// omega(sigma_source, sigma_target) = 1.
  Complex transverse_normalization() const { return c0_; }
  /// Largest disagreement seen among the constraint equations.
  double constraint_residual() const { return residual_; }

  HeisOperator heisenberg_op(const Realization& r, const HeisenbergElement& h) const;

  /// The map f -> f(g^{-1} .) from the model on `source` to the model on
  /// `target`, whose line must be g applied to the source line.
  Matrix geometric_action(const SympMatrix& g, const Realization& source, const Realization& target) const;

  /// F(f)(h) = sum_{m in M} f(m h) with M the target line. Throws
  /// std::invalid_argument when the two lines coincide.
  Matrix raw_averaging(const Realization& target, const Realization& source) const;

  /// The identity map on functions on H, written between two frames of the
  /// same line.
  Matrix reframe(const Realization& target, const Realization& source) const;

  Intertwiner canonical_intertwiner(const Realization& target, const Realization& source) const;

  /// F_{target, aux} F_{aux, source}.
  Intertwiner intertwiner_via(const Realization& target, const Realization& source, const Realization& aux) const;

  /// rho(g) = F_{L, gL} composed with the geometric action L -> gL.
  WeilOperator weil_op(const Realization& r, const SympMatrix& g) const;

  ModelVector change_realization(const ModelVector& v, const Realization& target) const;

  /// Solves X pi(h) = pi(g h) X over the Heisenberg generators. The
  /// solution is unique up to scale; it is returned scaled to be unitary.
  /// Throws std::logic_error if the solution space is not one-dimensional.
  Matrix projective_egorov_solver(const SympMatrix& g, const Realization& r) const;

  /// Dimension of the commutant of pi over the given realization.
  std::size_t commutant_dimension(const Realization& r) const;

  const Complex& psi(const FieldElement& a) const { return psi_[static_cast<std::size_t>(a.value())]; }

 private:
  std::int64_t p_;
  std::vector<Complex> psi_;
  Complex c0_{};
  double residual_ = 0.0;
};

}  // namespace weil
