#include "weil/models.hpp"

#include <algorithm>
#include <cmath>

namespace weil {

namespace {

SymplecticVector default_transversal(const SymplecticVector& sigma) {
  const std::int64_t p = sigma.modulus();
  if (!sigma.x.is_zero()) return {FieldElement::zero(p), sigma.x.inverse()};
  return {-sigma.y.inverse(), FieldElement::zero(p)};
}

}  // namespace

Realization::Realization(EnhancedLagrangian lagrangian)
    : lagrangian_(lagrangian), tau_(default_transversal(lagrangian.sigma())) {}

Realization::Realization(EnhancedLagrangian lagrangian, const SymplecticVector& direction)
    : lagrangian_(lagrangian), tau_(direction) {
  const FieldElement w = omega(lagrangian_.sigma(), direction);
  if (w.is_zero()) throw std::invalid_argument("transversal direction lies on the Lagrangian line");
  tau_ = direction * w.inverse();
}

HeisenbergElement Realization::point(std::int64_t x) const {
  const std::int64_t p = modulus();
  return {tau_ * FieldElement::one(p).scaled(x), FieldElement::zero(p)};
}

Realization::Location Realization::locate(const HeisenbergElement& h) const {
  const FieldElement alpha = omega(h.v, tau_);
  const FieldElement beta = omega(lagrangian_.sigma(), h.v);
  return {beta.value(), h.z - (alpha * beta).half()};
}

std::string to_string(const Realization& r) {
  return to_string(r.lagrangian()) + "|" + std::to_string(r.transversal().x.value()) + ":" +
         std::to_string(r.transversal().y.value());
}

std::vector<HeisenbergElement> heisenberg_generators(std::int64_t p) {
  return {{SymplecticVector(1, 0, p), FieldElement::zero(p)}, {SymplecticVector(0, 1, p), FieldElement::zero(p)}};
}

WeilSystem::WeilSystem(std::int64_t p) : p_(p) {
  if (!is_odd_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not an odd prime");
  const auto& roots = roots_of_unity(p);
  psi_.reserve(static_cast<std::size_t>(p));
  for (std::int64_t a = 0; a < p; ++a) psi_.push_back(roots(a));

  // Invariance makes the coefficient of a transverse pair depend only on the
  // SL_2-orbit, i.e. on omega(sigma_L, sigma_M); the sign rule then reduces
  // the whole family to one number c0. Each pairwise-transverse triple gives
  // an independent equation for c0 through the convolution property; all of
  // them must agree, and the pair and unitarity relations must hold.
  const std::int64_t g = primitive_root(p);
  std::vector<Realization> frames;
  const std::int64_t dirs[4][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
  for (int k = 0; k < 4; ++k) {
    const FieldElement scale = FieldElement(g, p).pow(k);
    frames.emplace_back(EnhancedLagrangian(SymplecticVector(dirs[k][0], dirs[k][1], p) * scale));
  }
  auto chi = [&](const Realization& a, const Realization& b) {
    return legendre(omega(a.sigma(), b.sigma()));
  };

  std::vector<Complex> estimates;
  const Matrix identity = Matrix::Identity(p, p);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    for (std::size_t j = 0; j < frames.size(); ++j) {
      if (i == j) continue;
      for (std::size_t k = 0; k < frames.size(); ++k) {
        if (k == i || k == j) continue;
        const auto &l = frames[i], &m = frames[j], &n = frames[k];
        const Matrix composed = raw_averaging(n, m) * raw_averaging(m, l);
        const Matrix direct = raw_averaging(n, l);
        const Complex lambda = best_scalar(composed, direct);
        residual_ = std::max(residual_, (composed - lambda * direct).norm() / composed.norm());
        estimates.push_back(static_cast<double>(chi(l, n) * chi(m, n) * chi(l, m)) / lambda);
      }
    }
  }
  c0_ = estimates.front();
  for (const auto& e : estimates) residual_ = std::max(residual_, std::abs(e - c0_));

  for (std::size_t i = 0; i < frames.size(); ++i) {
    for (std::size_t j = 0; j < frames.size(); ++j) {
      if (i == j) continue;
      const auto &l = frames[i], &m = frames[j];
      const Matrix forward = c0_ * static_cast<double>(chi(l, m)) * raw_averaging(m, l);
      const Matrix back = c0_ * static_cast<double>(chi(m, l)) * raw_averaging(l, m);
      residual_ = std::max(residual_, (back * forward - identity).norm() / std::sqrt(double(p)));
      residual_ = std::max(residual_, unitarity_defect(forward) / std::sqrt(double(p)));
    }
  }
  if (residual_ > 1e-9)
    throw ConstructionError("intertwiner constraints inconsistent mod " + std::to_string(p) +
                            " (residual " + std::to_string(residual_) + ")");
}

HeisOperator WeilSystem::heisenberg_op(const Realization& r, const HeisenbergElement& h) const {
  Matrix m = Matrix::Zero(p_, p_);
  for (std::int64_t x = 0; x < p_; ++x) {
    const auto loc = r.locate(r.point(x) * h);
    m(x, loc.index) = psi(loc.phase);
  }
  return {r, std::move(m)};
}

Matrix WeilSystem::geometric_action(const SympMatrix& g, const Realization& source, const Realization& target) const {
  if (!target.lagrangian().same_line(source.lagrangian().transformed(g)))
    throw std::invalid_argument("geometric action target is not g applied to the source line");
  const SympMatrix inv = g.inverse();
  Matrix m = Matrix::Zero(p_, p_);
  for (std::int64_t y = 0; y < p_; ++y) {
    const auto loc = source.locate(matrix_act(inv, target.point(y)));
    m(y, loc.index) = psi(loc.phase);
  }
  return m;
}

Matrix WeilSystem::raw_averaging(const Realization& target, const Realization& source) const {
  if (target.lagrangian().same_line(source.lagrangian()))
    throw std::invalid_argument("averaging between non-transverse Lagrangians");
  Matrix m = Matrix::Zero(p_, p_);
  const FieldElement one = FieldElement::one(p_);
  for (std::int64_t y = 0; y < p_; ++y) {
    const HeisenbergElement h = target.point(y);
    for (std::int64_t t = 0; t < p_; ++t) {
      const HeisenbergElement mh = HeisenbergElement{target.sigma() * one.scaled(t), FieldElement::zero(p_)} * h;
      const auto loc = source.locate(mh);
      m(y, loc.index) += psi(loc.phase);
    }
  }
  return m;
}

Matrix WeilSystem::reframe(const Realization& target, const Realization& source) const {
  if (!target.lagrangian().same_line(source.lagrangian()))
    throw std::invalid_argument("reframe between different lines");
  Matrix m = Matrix::Zero(p_, p_);
  for (std::int64_t y = 0; y < p_; ++y) {
    const auto loc = source.locate(target.point(y));
    m(y, loc.index) = psi(loc.phase);
  }
  return m;
}

Intertwiner WeilSystem::canonical_intertwiner(const Realization& target, const Realization& source) const {
  const auto& ls = source.lagrangian();
  const auto& lt = target.lagrangian();
  if (ls.same_line(lt)) {
    if (target == source) return {source, target, Matrix::Identity(p_, p_)};
    const double sign = legendre(ls.ratio_to(lt));
    return {source, target, sign * reframe(target, source)};
  }
  const double sign = legendre(omega(ls.sigma(), lt.sigma()));
  return {source, target, (sign * c0_) * raw_averaging(target, source)};
}

Intertwiner WeilSystem::intertwiner_via(const Realization& target, const Realization& source,
                                        const Realization& aux) const {
  return {source, target, canonical_intertwiner(target, aux).matrix * canonical_intertwiner(aux, source).matrix};
}

WeilOperator WeilSystem::weil_op(const Realization& r, const SympMatrix& g) const {
  const Realization moved(r.lagrangian().transformed(g));
  const Matrix f = canonical_intertwiner(r, moved).matrix;
  // The geometric action is monomial; multiply column by column.
  const SympMatrix inv = g.inverse();
  Matrix out = Matrix::Zero(p_, p_);
  for (std::int64_t y = 0; y < p_; ++y) {
    const auto loc = r.locate(matrix_act(inv, moved.point(y)));
    out.col(loc.index) += f.col(y) * psi(loc.phase);
  }
  return {g, r, std::move(out)};
}

ModelVector WeilSystem::change_realization(const ModelVector& v, const Realization& target) const {
  return {target, canonical_intertwiner(target, v.realization).matrix * v.amplitudes};
}

Matrix WeilSystem::projective_egorov_solver(const SympMatrix& g, const Realization& r) const {
  std::vector<Matrix> a, b;
  for (const auto& h : heisenberg_generators(p_)) {
    a.push_back(heisenberg_op(r, h).matrix);
    b.push_back(heisenberg_op(r, matrix_act(g, h)).matrix);
  }
  auto sols = intertwiner_space(a, b);
  if (sols.size() != 1)
    throw std::logic_error("Egorov solution space has dimension " + std::to_string(sols.size()) + ", expected 1");
  return sols.front() * std::sqrt(static_cast<double>(p_));
}

std::size_t WeilSystem::commutant_dimension(const Realization& r) const {
  std::vector<Matrix> gens;
  for (const auto& h : heisenberg_generators(p_)) gens.push_back(heisenberg_op(r, h).matrix);
  return weil::commutant_dimension(gens);
}

}  // namespace weil
