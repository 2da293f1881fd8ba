#pragma once

// Decomposition of a Weil model under the Hecke torus into character
// spaces, extraction of Hecke eigenfunctions, and the closed form available
// when the torus splits.

#include <cstdint>
#include <memory>
#include <vector>

#include "weil/groups.hpp"
#include "weil/models.hpp"

namespace weil {

struct CharacterSpace {
  std::int64_t character = 0;
  std::int64_t multiplicity = 0;
  /// Orthonormal columns spanning the eigenspace (p x multiplicity).
  Matrix basis;
  /// Projector eigenvalues strayed from {0, 1}; the multiplicity is not
  /// trustworthy and downstream code should not use this record.
  bool indeterminate = false;
  /// Worst distance of a projector eigenvalue from {0, 1}.
  double spectral_gap_defect = 0.0;
};

struct HeckeSpectrum {
  HeckeTorus torus;
  Realization realization;
  /// rho(g^j), j = 0..N-1; shared so that spectra copy cheaply.
  std::shared_ptr<const std::vector<Matrix>> operators;
  std::vector<CharacterSpace> spaces;  // indexed by character

  std::int64_t dimension() const { return realization.dimension(); }
  std::int64_t total_multiplicity() const;
};

struct HeckeEigenfunction {
  std::int64_t character = 0;  // torus character index
  std::int64_t multiplicity = 0;
  bool degenerate = false;
  ModelVector vector;

  const Vector& amplitudes() const { return vector.amplitudes; }
  const Realization& realization() const { return vector.realization; }
};

/// Eigenvalues of the character projectors above this count toward the
/// multiplicity.
inline constexpr double kRankThreshold = 0.5;
/// Distance from {0, 1} beyond which a projector spectrum is flagged.
inline constexpr double kIndeterminateDefect = 1e-6;

HeckeSpectrum hecke_spectrum(const WeilSystem& system, const HeckeTorus& torus, const Realization& r);

/// Normalized eigenfunctions (||Psi||^2 = p) for character k. One vector
/// when the multiplicity is 1; otherwise a canonical orthonormal basis
/// (Gram-Schmidt of the projected standard basis in index order) with the
/// degenerate flag set. Throws std::domain_error when the multiplicity is 0
/// or the record is indeterminate.
std::vector<HeckeEigenfunction> eigenfunction(const HeckeSpectrum& spectrum, std::int64_t k);

/// Rescale to ||v||^2 = p and rotate the first non-negligible amplitude to
/// the positive real axis.
Vector normalize_eigenvector(const Vector& v);

/// The realization (sigma, tau) with sigma and tau on the two eigenlines of
/// A. Throws std::invalid_argument for an inert torus.
Realization torus_fixed_realization(const HeckeTorus& torus);

/// Psi(x) = chi_q(x) chi(x), Psi(0) = 0, in the torus-fixed realization,
/// with chi a character of F_p^* (index relative to the smallest primitive
/// root). The torus character index is found by evaluating on the torus
/// generator. Throws std::invalid_argument for an inert torus.
HeckeEigenfunction split_closed_form(const WeilSystem& system, const HeckeTorus& torus,
                                     const CyclicCharacter& field_character);

/// max over torus elements of ||rho(B) v - chi_k(B) v|| / ||v||.
double eigen_residual(const HeckeSpectrum& spectrum, const Vector& v, std::int64_t k);

}  // namespace weil
