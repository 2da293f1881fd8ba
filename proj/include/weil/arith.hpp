#pragma once

// Exact arithmetic in F_p and the character functions built on it.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace weil {

using Complex = std::complex<double>;

bool is_odd_prime(std::int64_t n);

/// A residue modulo an odd prime. The modulus travels with the value so that
/// mixing elements of different fields is caught at the operation site.
class FieldElement {
 public:
  /// Throws std::invalid_argument unless `modulus` is an odd prime.
  FieldElement(std::int64_t value, std::int64_t modulus);

  static FieldElement zero(std::int64_t modulus) { return {0, modulus, Unchecked{}}; }
  static FieldElement one(std::int64_t modulus) { return {1, modulus, Unchecked{}}; }

  std::int64_t value() const { return value_; }
  std::int64_t modulus() const { return modulus_; }
  bool is_zero() const { return value_ == 0; }

  FieldElement operator+(const FieldElement& o) const {
    check_same(o);
    std::int64_t s = value_ + o.value_;
    return {s >= modulus_ ? s - modulus_ : s, modulus_, Unchecked{}};
  }
  FieldElement operator-(const FieldElement& o) const {
    check_same(o);
    std::int64_t s = value_ - o.value_;
    return {s < 0 ? s + modulus_ : s, modulus_, Unchecked{}};
  }
  FieldElement operator-() const { return {value_ == 0 ? 0 : modulus_ - value_, modulus_, Unchecked{}}; }
  FieldElement operator*(const FieldElement& o) const {
    check_same(o);
    return {(value_ * o.value_) % modulus_, modulus_, Unchecked{}};
  }
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  /// Multiplication by an integer scalar, reduced mod p.
  FieldElement scaled(std::int64_t k) const;

  /// Throws std::domain_error for zero.
  FieldElement inverse() const;
  /// a * inv(2).
  FieldElement half() const;
  FieldElement pow(std::int64_t e) const;

  bool operator==(const FieldElement& o) const { return value_ == o.value_ && modulus_ == o.modulus_; }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

 private:
  struct Unchecked {};
  FieldElement(std::int64_t value, std::int64_t modulus, Unchecked) : value_(value), modulus_(modulus) {}
  void check_same(const FieldElement& o) const {
    if (modulus_ != o.modulus_) throw std::invalid_argument("field elements with different moduli");
  }

  std::int64_t value_;
  std::int64_t modulus_;
};

std::string to_string(const FieldElement& a);

/// Table of the N-th roots of unity exp(2 pi i k / N). Tables are shared
/// per N and immutable once built.
class RootsOfUnity {
 public:
  explicit RootsOfUnity(std::int64_t order);
  std::int64_t order() const { return static_cast<std::int64_t>(table_.size()); }
  /// exp(2 pi i k / N) for any integer k.
  const Complex& operator()(std::int64_t k) const {
    std::int64_t n = order();
    std::int64_t r = k % n;
    return table_[static_cast<std::size_t>(r < 0 ? r + n : r)];
  }

 private:
  std::vector<Complex> table_;
};

/// Process-wide cached table; safe to call concurrently.
const RootsOfUnity& roots_of_unity(std::int64_t order);

/// psi(a) = exp(2 pi i a / p).
Complex additive_char(const FieldElement& a);

/// Legendre symbol: +1 on nonzero squares, -1 on non-squares, 0 at zero.
int legendre(const FieldElement& a);
int legendre(std::int64_t a, std::int64_t p);

/// A character of a cyclic group of order N with a fixed generator g:
/// chi_k(g^j) = exp(2 pi i k j / N).
class CyclicCharacter {
 public:
  CyclicCharacter(std::int64_t group_order, std::int64_t index);
  std::int64_t group_order() const { return order_; }
  std::int64_t index() const { return index_; }
  /// Value at g^element_log; requires 0 <= element_log < N.
  Complex value(std::int64_t element_log) const;
  CyclicCharacter operator*(const CyclicCharacter& o) const;
  CyclicCharacter conj() const { return {order_, (order_ - index_) % order_}; }

 private:
  std::int64_t order_;
  std::int64_t index_;
};

/// Smallest generator of F_p^*.
std::int64_t primitive_root(std::int64_t p);

/// Distinct prime factors in increasing order.
std::vector<std::int64_t> prime_factors(std::int64_t n);

}  // namespace weil
