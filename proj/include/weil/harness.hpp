#pragma once

// Experiment driver: prime sweeps for the supremum bound, the projector
// identity for a_x, value-distribution statistics and report writers.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "weil/hecke.hpp"
#include "weil/stats.hpp"

namespace weil {

inline constexpr double kSupremumBound = 2.0;
inline constexpr double kSupremumTolerance = 1e-9;

/// The realization of the standard observable: L = span(0, 1).
Realization defining_realization(std::int64_t p);

struct SupremumRecord {
  std::int64_t p = 0;
  TorusKind kind = TorusKind::inert;
  std::string realization;
  std::int64_t character = 0;
  std::int64_t multiplicity = 0;
  double sup = 0.0;
  std::int64_t argmax = 0;
  double a_max = 0.0;
  double norm2 = 0.0;
  bool pass = false;
  /// Multiplicity-1 character at p >= 5; only these decide the exit status.
  bool gating = false;
};

/// Requires ||Psi||^2 = p to 1e-6 p; throws std::invalid_argument otherwise.
SupremumRecord supremum_check(const HeckeEigenfunction& psi, TorusKind kind);

enum class RealizationPolicy { defining, all };

struct SweepConfig {
  CatMap cat{2, 1, 1, 1};
  std::vector<std::int64_t> primes;
  RealizationPolicy realizations = RealizationPolicy::defining;
  /// Skip degenerate character spaces instead of reporting them.
  bool multiplicity_one_only = false;
  std::uint64_t seed = 1;
  int jobs = 1;

  void validate() const;
};

struct SweepResult {
  std::vector<SupremumRecord> records;
  std::vector<std::string> log;
  std::int64_t gating_failures = 0;
  std::int64_t prime_failures = 0;

  bool ok() const { return gating_failures == 0 && prime_failures == 0; }
};

/// Records for one prime. Ramified primes produce a log entry and no records.
SweepResult sweep_prime(const SweepConfig& cfg, std::int64_t p);

/// Runs sweep_prime over cfg.primes with cfg.jobs workers and merges the
/// results in prime order. A failing prime is logged; the others still run.
SweepResult universal_sweep(const SweepConfig& cfg);

struct ProjectorIdentity {
  double direct = 0.0;     // |Psi(x)|^2
  double projector = 0.0;  // <P_x Psi, Psi> evaluated in the chosen model
};

/// a_x computed directly and as (1/|L|) sum_l psi_x(l) <pi(l) Psi, Psi>,
/// with L the line of psi's realization and the matrix coefficients taken
/// after moving Psi into `model`.
ProjectorIdentity projector_identity_check(const WeilSystem& system, const ModelVector& psi, std::int64_t x,
                                           const Realization& model);
inline ProjectorIdentity projector_identity_check(const WeilSystem& system, const ModelVector& psi, std::int64_t x) {
  return projector_identity_check(system, psi, x, psi.realization);
}

struct DistributionReport {
  std::vector<std::int64_t> primes;  // inert primes that contributed
  std::vector<std::string> rejected;  // other primes with the reason
  std::int64_t sample_count = 0;
  stats::Histogram histogram;
  double ks_distance = 0.0;
  std::array<double, 4> moments{};            // E|Psi(x)|^k, k = 1..4
  std::array<double, 4> reference_moments{};  // E|2 cos theta|^k
};

/// |Psi(x)| over x for every multiplicity-1 eigenfunction at an inert
/// prime, defining realization. Throws std::invalid_argument for split or
/// ramified primes.
std::vector<double> distribution_samples(const CatMap& cat, std::int64_t p);

/// Statistics of a pooled sample. Throws std::invalid_argument if empty.
DistributionReport summarize_distribution(std::vector<double> samples, int bins = 40);

/// Pools distribution_samples over the inert primes of cfg.primes; the
/// others are listed in `rejected`. Throws std::invalid_argument if no
/// sample is left.
DistributionReport value_distribution(const SweepConfig& cfg);

// Report formats.
void write_records_csv(std::ostream& os, const std::vector<SupremumRecord>& records);
void write_records_jsonl(std::ostream& os, const std::vector<SupremumRecord>& records);
void write_eigenfunctions_csv_header(std::ostream& os);
void write_eigenfunctions_csv(std::ostream& os, TorusKind kind, const std::vector<HeckeEigenfunction>& fns);
void write_distribution_json(std::ostream& os, const DistributionReport& report);
/// One matrix row per line, entries "re,im" separated by spaces.
void write_matrix(std::ostream& os, const Matrix& m);
Matrix read_matrix(std::istream& is);

/// Parses "5..61", "5,7,11" or a single prime. Ranges keep the odd primes
/// they contain; listed values must be odd primes.
std::vector<std::int64_t> parse_primes(const std::string& text);

}  // namespace weil
