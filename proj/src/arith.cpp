#include "weil/arith.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace weil {

bool is_odd_prime(std::int64_t n) {
  if (n < 3 || n % 2 == 0) return false;
  for (std::int64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

FieldElement::FieldElement(std::int64_t value, std::int64_t modulus) : modulus_(modulus) {
  if (!is_odd_prime(modulus))
    throw std::invalid_argument("modulus " + std::to_string(modulus) + " is not an odd prime");
  value_ = value % modulus;
  if (value_ < 0) value_ += modulus;
}

FieldElement FieldElement::scaled(std::int64_t k) const {
  std::int64_t r = k % modulus_;
  if (r < 0) r += modulus_;
  return {(value_ * r) % modulus_, modulus_, Unchecked{}};
}

FieldElement FieldElement::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  std::int64_t base = value_, acc = 1;
  while (e > 0) {
    if (e & 1) acc = acc * base % modulus_;
    base = base * base % modulus_;
    e >>= 1;
  }
  return {acc, modulus_, Unchecked{}};
}

FieldElement FieldElement::inverse() const {
  if (value_ == 0) throw std::domain_error("zero has no inverse in F_" + std::to_string(modulus_));
  // Extended Euclid on (value, p).
  std::int64_t r0 = modulus_, r1 = value_, s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  s0 %= modulus_;
  if (s0 < 0) s0 += modulus_;
  return {s0, modulus_, Unchecked{}};
}

FieldElement FieldElement::half() const {
  // inv(2) = (p + 1) / 2
  return scaled((modulus_ + 1) / 2);
}

std::string to_string(const FieldElement& a) {
  return std::to_string(a.value()) + " mod " + std::to_string(a.modulus());
}

RootsOfUnity::RootsOfUnity(std::int64_t order) {
  if (order < 1) throw std::invalid_argument("roots of unity need a positive order");
  table_.resize(static_cast<std::size_t>(order));
  for (std::int64_t k = 0; k < order; ++k) {
    // Exact values at the quarter points keep character sums clean.
    if (4 * k % order == 0) {
      static constexpr Complex quarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      table_[static_cast<std::size_t>(k)] = quarter[4 * k / order];
      continue;
    }
    double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(order);
    table_[static_cast<std::size_t>(k)] = std::polar(1.0, angle);
  }
}

const RootsOfUnity& roots_of_unity(std::int64_t order) {
  static std::mutex mutex;
  static std::map<std::int64_t, std::unique_ptr<RootsOfUnity>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<RootsOfUnity>(order);
  return *slot;
}

Complex additive_char(const FieldElement& a) { return roots_of_unity(a.modulus())(a.value()); }

int legendre(const FieldElement& a) {
  if (a.is_zero()) return 0;
  // Euler's criterion.
  return a.pow((a.modulus() - 1) / 2).value() == 1 ? 1 : -1;
}

int legendre(std::int64_t a, std::int64_t p) { return legendre(FieldElement(a, p)); }

CyclicCharacter::CyclicCharacter(std::int64_t group_order, std::int64_t index) : order_(group_order) {
  if (group_order < 1) throw std::invalid_argument("cyclic group order must be positive");
  index_ = index % group_order;
  if (index_ < 0) index_ += group_order;
}

Complex CyclicCharacter::value(std::int64_t element_log) const {
  if (element_log < 0 || element_log >= order_)
    throw std::out_of_range("element log outside [0, N)");
  return roots_of_unity(order_)(index_ * element_log);
}

CyclicCharacter CyclicCharacter::operator*(const CyclicCharacter& o) const {
  if (order_ != o.order_) throw std::invalid_argument("characters of different groups");
  return {order_, index_ + o.index_};
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::int64_t primitive_root(std::int64_t p) {
  auto factors = prime_factors(p - 1);
  for (std::int64_t g = 2; g < p; ++g) {
    FieldElement x(g, p);
    bool ok = true;
    for (auto q : factors) {
      if (x.pow((p - 1) / q).value() == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("no primitive root found");
}

}  // namespace weil
