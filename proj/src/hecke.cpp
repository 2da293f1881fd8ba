#include "weil/hecke.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "weil/kernels.hpp"

namespace weil {

std::int64_t HeckeSpectrum::total_multiplicity() const {
  std::int64_t s = 0;
  for (const auto& sp : spaces) s += sp.multiplicity;
  return s;
}

HeckeSpectrum hecke_spectrum(const WeilSystem& system, const HeckeTorus& torus, const Realization& r) {
  auto ops = std::make_shared<const std::vector<Matrix>>(kernels::torus_operators(system, torus, r));
  const auto projectors = kernels::character_projectors(*ops);

  std::vector<CharacterSpace> spaces(projectors.size());
  for (std::size_t k = 0; k < projectors.size(); ++k) {
    // Hermitian part only guards against rounding; P_k is Hermitian exactly.
    const Matrix herm = 0.5 * (projectors[k] + projectors[k].adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
    auto& space = spaces[k];
    space.character = static_cast<std::int64_t>(k);
    std::vector<Eigen::Index> kept;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const double ev = es.eigenvalues()(i);
      space.spectral_gap_defect = std::max(space.spectral_gap_defect, std::min(std::abs(ev), std::abs(ev - 1.0)));
      if (ev > kRankThreshold) kept.push_back(i);
    }
    space.indeterminate = space.spectral_gap_defect > kIndeterminateDefect;
    space.multiplicity = static_cast<std::int64_t>(kept.size());
    space.basis.resize(r.dimension(), space.multiplicity);
    for (std::size_t c = 0; c < kept.size(); ++c) space.basis.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(kept[c]);
  }
  return {torus, r, std::move(ops), std::move(spaces)};
}

Vector normalize_eigenvector(const Vector& v) {
  const double n = v.norm();
  if (n == 0.0) throw std::invalid_argument("cannot normalize a zero vector");
  Vector out = v * (std::sqrt(static_cast<double>(v.size())) / n);
  const double cutoff = 1e-6 * out.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (std::abs(out(i)) > cutoff) {
      out *= std::abs(out(i)) / out(i);
      out(i) = std::abs(out(i));
      break;
    }
  }
  return out;
}

std::vector<HeckeEigenfunction> eigenfunction(const HeckeSpectrum& spectrum, std::int64_t k) {
  if (k < 0 || k >= static_cast<std::int64_t>(spectrum.spaces.size()))
    throw std::out_of_range("character index out of range");
  const auto& space = spectrum.spaces[static_cast<std::size_t>(k)];
  if (space.indeterminate) throw std::domain_error("character space " + std::to_string(k) + " is indeterminate");
  if (space.multiplicity == 0) throw std::domain_error("character " + std::to_string(k) + " does not occur");

  // Gram-Schmidt on P e_0, P e_1, ... gives a basis that depends only on the
  // eigenspace, not on the eigensolver.
  const Matrix& u = space.basis;
  std::vector<Vector> basis;
  for (Eigen::Index x = 0; x < u.rows() && static_cast<std::int64_t>(basis.size()) < space.multiplicity; ++x) {
    Vector w = u * u.row(x).adjoint();
    for (const auto& b : basis) w -= b.dot(w) * b;
    const double n = w.norm();
    if (n < 1e-6) continue;
    basis.push_back(w / n);
  }
  if (static_cast<std::int64_t>(basis.size()) != space.multiplicity)
    throw std::logic_error("could not build a canonical basis for character " + std::to_string(k));

  std::vector<HeckeEigenfunction> out;
  for (const auto& b : basis) {
    out.push_back({k, space.multiplicity, space.multiplicity > 1, {spectrum.realization, normalize_eigenvector(b)}});
  }
  return out;
}

double eigen_residual(const HeckeSpectrum& spectrum, const Vector& v, std::int64_t k) {
  const auto& ops = *spectrum.operators;
  const auto n = static_cast<std::int64_t>(ops.size());
  const auto& roots = roots_of_unity(n);
  double worst = 0.0;
  for (std::int64_t j = 0; j < n; ++j) {
    const Vector d = ops[static_cast<std::size_t>(j)] * v - roots(k * j) * v;
    worst = std::max(worst, d.norm() / v.norm());
  }
  return worst;
}

Realization torus_fixed_realization(const HeckeTorus& torus) {
  if (torus.kind() != TorusKind::split) throw std::invalid_argument("torus is not split; no fixed Lagrangian exists");
  const auto lines = eigenlines(torus.cat_map());
  if (lines.size() != 2) throw std::logic_error("split cat map without two eigenlines");
  return Realization(EnhancedLagrangian(lines[0]), lines[1]);
}

HeckeEigenfunction split_closed_form(const WeilSystem& system, const HeckeTorus& torus,
                                     const CyclicCharacter& field_character) {
  const std::int64_t p = torus.modulus();
  if (field_character.group_order() != p - 1) throw std::invalid_argument("closed form needs a character of F_p^*");
  const Realization r = torus_fixed_realization(torus);

  // Discrete logs in F_p^* relative to the smallest primitive root.
  const FieldElement root(primitive_root(p), p);
  std::vector<std::int64_t> dlog(static_cast<std::size_t>(p), -1);
  FieldElement cur = FieldElement::one(p);
  for (std::int64_t j = 0; j < p - 1; ++j) {
    dlog[static_cast<std::size_t>(cur.value())] = j;
    cur *= root;
  }

  Vector psi = Vector::Zero(p);
  for (std::int64_t x = 1; x < p; ++x)
    psi(x) = static_cast<double>(legendre(x, p)) * field_character.value(dlog[static_cast<std::size_t>(x)]);
  psi = normalize_eigenvector(psi);

  // The generator acts on sigma by a scalar a and on the eigenfunction by chi(a).
  const SympMatrix& g = torus.generator();
  const FieldElement a = r.lagrangian().ratio_to(r.lagrangian().transformed(g));
  const Complex predicted = field_character.value(dlog[static_cast<std::size_t>(a.value())]);
  const Vector moved = system.weil_op(r, g).matrix * psi;
  if ((moved - predicted * psi).norm() > 1e-8 * psi.norm())
    throw std::logic_error("closed form is not an eigenvector of the torus generator");

  const auto& roots = roots_of_unity(torus.order());
  std::int64_t k = 0;
  for (std::int64_t i = 1; i < torus.order(); ++i)
    if (std::abs(roots(i) - predicted) < std::abs(roots(k) - predicted)) k = i;
  // chi = chi_q shares its torus character with the delta at 0.
  const bool degenerate = 2 * field_character.index() == p - 1;
  return {k, degenerate ? 2 : 1, degenerate, {r, psi}};
}

}  // namespace weil
