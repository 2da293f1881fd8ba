#pragma once

// The symplectic plane (V, omega) over F_p, its Heisenberg group, SL_2(F_p)
// and the Hecke torus of a cat map.

#include <cstdint>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "weil/arith.hpp"

namespace weil {

struct SymplecticVector {
  FieldElement x;
  FieldElement y;

  SymplecticVector(FieldElement x_, FieldElement y_);
  SymplecticVector(std::int64_t x_, std::int64_t y_, std::int64_t p) : SymplecticVector({x_, p}, {y_, p}) {}
  static SymplecticVector zero(std::int64_t p) { return {FieldElement::zero(p), FieldElement::zero(p)}; }

  std::int64_t modulus() const { return x.modulus(); }
  bool is_zero() const { return x.is_zero() && y.is_zero(); }

  SymplecticVector operator+(const SymplecticVector& o) const { return {x + o.x, y + o.y}; }
  SymplecticVector operator-(const SymplecticVector& o) const { return {x - o.x, y - o.y}; }
  SymplecticVector operator-() const { return {-x, -y}; }
  SymplecticVector operator*(const FieldElement& a) const { return {x * a, y * a}; }
  bool operator==(const SymplecticVector& o) const { return x == o.x && y == o.y; }
  bool operator!=(const SymplecticVector& o) const { return !(*this == o); }
};

inline SymplecticVector operator*(const FieldElement& a, const SymplecticVector& v) { return v * a; }

/// omega(u, v) = u1 v2 - u2 v1.
inline FieldElement omega(const SymplecticVector& u, const SymplecticVector& v) { return u.x * v.y - u.y * v.x; }

std::string to_string(const SymplecticVector& v);

/// (v, z) with product (v,z)(v',z') = (v+v', z+z'+ omega(v,v')/2).
struct HeisenbergElement {
  SymplecticVector v;
  FieldElement z;

  static HeisenbergElement identity(std::int64_t p) { return {SymplecticVector::zero(p), FieldElement::zero(p)}; }
  static HeisenbergElement central(const FieldElement& z) { return {SymplecticVector::zero(z.modulus()), z}; }

  std::int64_t modulus() const { return z.modulus(); }
  HeisenbergElement operator*(const HeisenbergElement& o) const { return {v + o.v, z + o.z + omega(v, o.v).half()}; }
  HeisenbergElement inverse() const { return {-v, -z}; }
  bool operator==(const HeisenbergElement& o) const { return v == o.v && z == o.z; }
  bool operator!=(const HeisenbergElement& o) const { return !(*this == o); }
};

HeisenbergElement heis_mul(const HeisenbergElement& a, const HeisenbergElement& b);

/// Element [[a, b], [c, d]] of SL_2(F_p) = Sp(V, omega).
class SympMatrix {
 public:
  /// Throws std::invalid_argument when ad - bc != 1.
  SympMatrix(FieldElement a, FieldElement b, FieldElement c, FieldElement d);
  SympMatrix(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t p)
      : SympMatrix({a, p}, {b, p}, {c, p}, {d, p}) {}
  static SympMatrix identity(std::int64_t p) { return {1, 0, 0, 1, p}; }

  const FieldElement& a() const { return a_; }
  const FieldElement& b() const { return b_; }
  const FieldElement& c() const { return c_; }
  const FieldElement& d() const { return d_; }
  std::int64_t modulus() const { return a_.modulus(); }
  FieldElement trace() const { return a_ + d_; }

  SympMatrix operator*(const SympMatrix& o) const;
  SymplecticVector operator*(const SymplecticVector& v) const { return {a_ * v.x + b_ * v.y, c_ * v.x + d_ * v.y}; }
  SympMatrix inverse() const { return {d_, -b_, -c_, a_}; }
  SympMatrix pow(std::int64_t e) const;
  bool is_identity() const;

  bool operator==(const SympMatrix& o) const { return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_; }
  bool operator!=(const SympMatrix& o) const { return !(*this == o); }

  /// Injective key in [0, p^4).
  std::int64_t key() const;

 private:
  FieldElement a_, b_, c_, d_;
};

std::string to_string(const SympMatrix& g);

/// g . (v, z) = (g v, z): an automorphism of H, trivial on the center.
HeisenbergElement matrix_act(const SympMatrix& g, const HeisenbergElement& h);

/// An element of SL_2(Z) with |trace| > 2, the classical cat map.
struct CatMap {
  std::int64_t a, b, c, d;

  /// Parses "a,b;c,d"; throws std::invalid_argument on malformed input,
  /// det != 1 or |a + d| <= 2.
  static CatMap parse(const std::string& text);
  /// Throws std::invalid_argument unless det = 1 and |trace| > 2.
  void validate() const;
  std::int64_t trace() const { return a + d; }
  std::int64_t discriminant() const { return trace() * trace() - 4; }
  SympMatrix reduce(std::int64_t p) const { return {a, b, c, d, p}; }
  std::string to_string() const;
};

/// A line L in V (every line is Lagrangian in dimension two) with a chosen
/// nonzero vector sigma on it.
class EnhancedLagrangian {
 public:
  /// Throws std::invalid_argument for sigma = 0.
  explicit EnhancedLagrangian(SymplecticVector sigma);

  const SymplecticVector& sigma() const { return sigma_; }
  std::int64_t modulus() const { return sigma_.modulus(); }
  bool same_line(const EnhancedLagrangian& o) const { return omega(sigma_, o.sigma_).is_zero(); }
  /// a . (L, sigma) = (L, a sigma).
  EnhancedLagrangian scaled(const FieldElement& a) const { return EnhancedLagrangian(sigma_ * a); }
  EnhancedLagrangian transformed(const SympMatrix& g) const { return EnhancedLagrangian(g * sigma_); }
  /// For same-line pairs, the a with other.sigma = a sigma.
  FieldElement ratio_to(const EnhancedLagrangian& other) const;

  bool operator==(const EnhancedLagrangian& o) const { return sigma_ == o.sigma_; }
  bool operator!=(const EnhancedLagrangian& o) const { return !(*this == o); }

 private:
  SymplecticVector sigma_;
};

std::string to_string(const EnhancedLagrangian& l);

/// One representative per line: sigma = (1, m) for m in F_p, then (0, 1).
std::vector<EnhancedLagrangian> enumerate_lagrangians(std::int64_t p);

enum class TorusKind { split, inert, ramified };
std::string to_string(TorusKind kind);

/// Split iff tr(A)^2 - 4 is a nonzero square mod p, inert iff a non-square,
/// ramified iff p divides it. Throws for a non-hyperbolic A or a bad p.
TorusKind classify_prime(const CatMap& cat, std::int64_t p);

/// The centralizer of A in SL_2(F_p), a cyclic group of order p - 1 (split)
/// or p + 1 (inert). Elements are stored in generator-power order, so
/// elements()[j] = generator^j.
class HeckeTorus {
 public:
  /// Throws std::invalid_argument for a ramified prime or a non-regular
  /// reduction, std::logic_error if no generator is found.
  HeckeTorus(const CatMap& cat, std::int64_t p);

  std::int64_t modulus() const { return p_; }
  const SympMatrix& cat_map() const { return a_; }
  TorusKind kind() const { return kind_; }
  std::int64_t order() const { return static_cast<std::int64_t>(elements_.size()); }
  const SympMatrix& generator() const { return elements_.at(1 % elements_.size()); }
  const std::vector<SympMatrix>& elements() const { return elements_; }
  /// Exponent j with element = generator^j; throws std::out_of_range for
  /// non-members.
  std::int64_t log(const SympMatrix& element) const;
  bool contains(const SympMatrix& g) const { return log_.count(g.key()) != 0; }

 private:
  std::int64_t p_;
  SympMatrix a_;
  TorusKind kind_;
  std::vector<SympMatrix> elements_;
  std::unordered_map<std::int64_t, std::int64_t> log_;
};

/// Uniform sample from SL_2(F_p) by rejection.
SympMatrix random_sympmatrix(std::int64_t p, std::mt19937_64& rng);
HeisenbergElement random_heisenberg(std::int64_t p, std::mt19937_64& rng);

/// Eigenvectors of g in F_p^2 by exhaustive search, one per eigenline.
std::vector<SymplecticVector> eigenlines(const SympMatrix& g);

}  // namespace weil
