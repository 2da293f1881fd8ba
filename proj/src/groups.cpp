#include "weil/groups.hpp"

#include <cstdlib>
#include <sstream>

namespace weil {

SymplecticVector::SymplecticVector(FieldElement x_, FieldElement y_) : x(x_), y(y_) {
  if (x.modulus() != y.modulus()) throw std::invalid_argument("vector coordinates over different fields");
}

std::string to_string(const SymplecticVector& v) {
  return "(" + std::to_string(v.x.value()) + "," + std::to_string(v.y.value()) + ")";
}

HeisenbergElement heis_mul(const HeisenbergElement& a, const HeisenbergElement& b) { return a * b; }

SympMatrix::SympMatrix(FieldElement a, FieldElement b, FieldElement c, FieldElement d)
    : a_(a), b_(b), c_(c), d_(d) {
  if (a * d - b * c != FieldElement::one(a.modulus()))
    throw std::invalid_argument("matrix determinant is not 1 mod " + std::to_string(a.modulus()));
}

SympMatrix SympMatrix::operator*(const SympMatrix& o) const {
  return {a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_};
}

SympMatrix SympMatrix::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  SympMatrix acc = identity(modulus()), base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

bool SympMatrix::is_identity() const { return *this == identity(modulus()); }

std::int64_t SympMatrix::key() const {
  std::int64_t p = modulus();
  return ((a_.value() * p + b_.value()) * p + c_.value()) * p + d_.value();
}

std::string to_string(const SympMatrix& g) {
  std::ostringstream os;
  os << "[[" << g.a().value() << "," << g.b().value() << "],[" << g.c().value() << "," << g.d().value() << "]]";
  return os.str();
}

HeisenbergElement matrix_act(const SympMatrix& g, const HeisenbergElement& h) { return {g * h.v, h.z}; }

CatMap CatMap::parse(const std::string& text) {
  CatMap m{};
  char sep1 = 0, sep2 = 0, sep3 = 0;
  std::istringstream is(text);
  if (!(is >> m.a >> sep1 >> m.b >> sep2 >> m.c >> sep3 >> m.d) || sep1 != ',' || sep2 != ';' || sep3 != ',')
    throw std::invalid_argument("cat map must look like \"a,b;c,d\", got \"" + text + "\"");
  is >> std::ws;
  if (!is.eof()) throw std::invalid_argument("trailing characters in cat map \"" + text + "\"");
  m.validate();
  return m;
}

void CatMap::validate() const {
  if (a * d - b * c != 1) throw std::invalid_argument("cat map " + to_string() + " has determinant != 1");
  if (std::llabs(trace()) <= 2) throw std::invalid_argument("cat map " + to_string() + " is not hyperbolic");
}

std::string CatMap::to_string() const {
  std::ostringstream os;
  os << a << "," << b << ";" << c << "," << d;
  return os.str();
}

EnhancedLagrangian::EnhancedLagrangian(SymplecticVector sigma) : sigma_(sigma) {
  if (sigma_.is_zero()) throw std::invalid_argument("enhanced Lagrangian needs a nonzero vector");
}

FieldElement EnhancedLagrangian::ratio_to(const EnhancedLagrangian& other) const {
  if (!same_line(other)) throw std::invalid_argument("ratio of enhanced Lagrangians on different lines");
  return sigma_.x.is_zero() ? other.sigma_.y * sigma_.y.inverse() : other.sigma_.x * sigma_.x.inverse();
}

std::string to_string(const EnhancedLagrangian& l) {
  return std::to_string(l.sigma().x.value()) + ":" + std::to_string(l.sigma().y.value());
}

std::vector<EnhancedLagrangian> enumerate_lagrangians(std::int64_t p) {
  std::vector<EnhancedLagrangian> out;
  out.reserve(static_cast<std::size_t>(p + 1));
  for (std::int64_t m = 0; m < p; ++m) out.emplace_back(SymplecticVector(1, m, p));
  out.emplace_back(SymplecticVector(0, 1, p));
  return out;
}

std::string to_string(TorusKind kind) {
  switch (kind) {
    case TorusKind::split: return "split";
    case TorusKind::inert: return "inert";
    case TorusKind::ramified: return "ramified";
  }
  return "?";
}

TorusKind classify_prime(const CatMap& cat, std::int64_t p) {
  cat.validate();
  if (!is_odd_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not an odd prime");
  switch (legendre(cat.discriminant(), p)) {
    case 0: return TorusKind::ramified;
    case 1: return TorusKind::split;
    default: return TorusKind::inert;
  }
}

HeckeTorus::HeckeTorus(const CatMap& cat, std::int64_t p) : p_(p), a_(cat.reduce(p)), kind_(classify_prime(cat, p)) {
  if (kind_ == TorusKind::ramified)
    throw std::invalid_argument("prime " + std::to_string(p) + " is ramified for " + cat.to_string());
  if (a_.b().is_zero() && a_.c().is_zero() && a_.a() == a_.d())
    throw std::invalid_argument("cat map reduces to a scalar mod " + std::to_string(p));

  // For regular A the centralizer is F_p[A]^* intersected with SL_2.
  std::vector<SympMatrix> members;
  for (std::int64_t x = 0; x < p; ++x) {
    for (std::int64_t y = 0; y < p; ++y) {
      FieldElement fx(x, p), fy(y, p);
      FieldElement ea = fx + fy * a_.a(), eb = fy * a_.b(), ec = fy * a_.c(), ed = fx + fy * a_.d();
      if (ea * ed - eb * ec != FieldElement::one(p)) continue;
      members.emplace_back(ea, eb, ec, ed);
    }
  }
  const std::int64_t expected = kind_ == TorusKind::split ? p - 1 : p + 1;
  if (static_cast<std::int64_t>(members.size()) != expected)
    throw std::logic_error("centralizer of " + to_string(a_) + " has " + std::to_string(members.size()) +
                           " elements, expected " + std::to_string(expected));

  const auto factors = prime_factors(expected);
  for (const auto& g : members) {
    if (!g.pow(expected).is_identity()) continue;
    bool primitive = true;
    for (auto q : factors) {
      if (g.pow(expected / q).is_identity()) {
        primitive = false;
        break;
      }
    }
    if (!primitive) continue;
    SympMatrix cur = SympMatrix::identity(p);
    for (std::int64_t j = 0; j < expected; ++j) {
      elements_.push_back(cur);
      log_.emplace(cur.key(), j);
      cur = cur * g;
    }
    if (static_cast<std::int64_t>(log_.size()) != expected) throw std::logic_error("torus log table is not a bijection");
    return;
  }
  throw std::logic_error("no generator found for the Hecke torus mod " + std::to_string(p));
}

std::int64_t HeckeTorus::log(const SympMatrix& element) const {
  auto it = log_.find(element.key());
  if (it == log_.end()) throw std::out_of_range(to_string(element) + " is not in the Hecke torus");
  return it->second;
}

SympMatrix random_sympmatrix(std::int64_t p, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> d(0, p - 1);
  while (true) {
    FieldElement a(d(rng), p), b(d(rng), p), c(d(rng), p), e(d(rng), p);
    if (a * e - b * c == FieldElement::one(p)) return {a, b, c, e};
  }
}

HeisenbergElement random_heisenberg(std::int64_t p, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> d(0, p - 1);
  return {SymplecticVector(d(rng), d(rng), p), FieldElement(d(rng), p)};
}

std::vector<SymplecticVector> eigenlines(const SympMatrix& g) {
  std::vector<SymplecticVector> out;
  for (const auto& l : enumerate_lagrangians(g.modulus())) {
    if (omega(l.sigma(), g * l.sigma()).is_zero()) out.push_back(l.sigma());
  }
  return out;
}

}  // namespace weil
