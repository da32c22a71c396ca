#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "rse/characters.hpp"

// Representation objects and their local data: desk-scale stand-ins for
// cuspidal automorphic representations, their Satake and archimedean
// parameters, twists, contragredients, isobaric sums, and analytic conductors.
namespace rse::automorphic {

using Complex = std::complex<double>;

/// Thrown when a per-prime table does not cover a requested prime.
class InsufficientDataError : public std::runtime_error {
 public:
  InsufficientDataError(const std::string& what, std::uint64_t prime)
      : std::runtime_error(what), prime_(prime) {}
  std::uint64_t prime() const { return prime_; }

 private:
  std::uint64_t prime_;
};

enum class GammaKind { Real, Complex };

/// Langlands parameters at the real place, one Gamma_v factor per entry.
struct ArchimedeanParameters {
  std::vector<Complex> mu;
  std::vector<GammaKind> kinds;
};

/// Local data at one prime: up to n nonzero Satake parameters (ramified
/// primes padded with zeros) and the applicable theta bound.
struct SatakeParameters {
  std::uint64_t prime = 0;
  std::vector<Complex> values;
  double theta_bound = 0.0;
};

/// theta_n = 1/2 - 1/(n^2+1), the generic local bound for degree n.
double theta_for_degree(int n);

class AutomorphicRep {
 public:
  // --- constructors for the supported kinds -------------------------------
  /// The trivial GL(1) representation (L-function zeta).
  static AutomorphicRep trivial();
  static AutomorphicRep gl1(characters::DirichletCharacter chi);
  /// The discriminant newform Delta (weight 12, level 1), with normalized
  /// eigenvalues lambda(p) = tau(p)/p^{11/2} tabulated for p <= prime_limit.
  static AutomorphicRep delta(std::uint64_t prime_limit);
  /// Generic GL(n) data from a per-prime parameter table.
  static AutomorphicRep generic(int degree, std::uint64_t conductor,
                                ArchimedeanParameters arch,
                                std::unordered_map<std::uint64_t, std::vector<Complex>> table,
                                std::uint64_t prime_limit);
  static AutomorphicRep isobaric(std::vector<AutomorphicRep> components);

  /// Parse the line-oriented ingestion format:
  ///   degree n
  ///   conductor N
  ///   archimedean mu_1 ... mu_n     (complex as re+imj)
  ///   p alpha_1 ... alpha_n         (one line per prime)
  static AutomorphicRep from_stream(std::istream& in);
  static AutomorphicRep from_file(const std::string& path);

  // --- structure ----------------------------------------------------------
  int degree() const;
  std::uint64_t conductor() const;
  double real_twist() const { return twist_t_; }
  /// Largest prime with tabulated Satake data.
  std::uint64_t prime_limit() const;
  double theta_bound() const;
  bool is_isobaric() const;
  const std::vector<AutomorphicRep>& components() const;

  // --- operations ---------------------------------------------------------
  SatakeParameters satake_at(std::uint64_t p) const;
  ArchimedeanParameters archimedean() const;
  AutomorphicRep contragredient() const;
  AutomorphicRep twisted_by(const characters::DirichletCharacter& chi) const;
  AutomorphicRep twisted_by(double t) const;
  /// C(it + i*real_twist, rep) = q * prod_j (|mu_j + i(t + twist)| + 3).
  double analytic_conductor(double t = 0.0) const;

  /// Describes the object for provenance tags and CSV headers.
  std::string name() const;

  /// True when the two representations have identical Satake data at every
  /// unramified prime up to `limit` (multiset comparison, tolerance tol).
  bool same_satake(const AutomorphicRep& other, std::uint64_t limit,
                   double tol = 1e-9) const;

 private:
  struct Data;
  explicit AutomorphicRep(std::shared_ptr<const Data> data, double twist_t)
      : data_(std::move(data)), twist_t_(twist_t) {}

  std::shared_ptr<const Data> data_;
  double twist_t_ = 0.0;
};

/// Normalized Delta eigenvalues lambda(p) = tau(p)/p^{11/2} for all primes
/// p <= limit. Cached per process; the tau expansion runs once.
const std::unordered_map<std::uint64_t, double>& delta_lambda_table(
    std::uint64_t limit);

/// Writes the ingestion-format table for a representation (used to produce
/// the checked-in Delta sample).
void write_satake_file(const AutomorphicRep& rep, std::ostream& out,
                       std::uint64_t prime_limit);

}  // namespace rse::automorphic
