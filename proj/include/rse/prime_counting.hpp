#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "rse/analytic.hpp"
#include "rse/rankin_selberg.hpp"

// The prime-counting pipeline: psi-sums of Lambda_{pi x pi'} in arithmetic
// progressions, main terms, Siegel-Walfisz error measurement, the
// character-orthogonality decomposition with ramified corrections, and
// short-interval sums.
namespace rse::prime_counting {

using analytic::SmoothingKernel;
using automorphic::AutomorphicRep;
using automorphic::Complex;
using characters::DirichletCharacter;
using rankin_selberg::CoefficientStream;
using rankin_selberg::RSPair;

/// One Siegel-Walfisz measurement.
struct SWReport {
  double x = 0.0;
  std::uint64_t q = 1;
  std::uint64_t a = 1;
  Complex psi_value;
  Complex main_term;
  Complex error;
  double normalized_error = 0.0;  // |error| / x
};

struct ShortIntervalReport {
  double X = 0.0;
  double T = 1.0;
  double sum_abs_lambda = 0.0;
  double ratio = 0.0;  // sum * T / X
};

/// Sum_{n <= x, n = a (mod q)} Lambda(n) from a precomputed stream.
/// Throws std::domain_error if gcd(a, q) > 1, InsufficientXError if the
/// stream is shorter than x.
Complex psi_ap(const CoefficientStream& stream, double x, std::uint64_t q,
               std::uint64_t a);

/// Detection of pi' = ~pi (x) |det|^{iu}: solves for u from the Satake trace
/// at the first unramified prime and verifies at 25 primes to 1e-9. Returns
/// the detected u, or nothing when the pair has no pole.
std::optional<double> detect_dual_twist(const RSPair& pair);

/// M(x) = x^{1-iu} / (1-iu) when detect_dual_twist succeeds, else 0.
Complex main_term(const RSPair& pair, double x);

/// error = psi_ap - (1/phi(q)) * sum over primitive characters chi inducing
/// the characters mod q of main_term(twisted pair, x).
SWReport sw_error(const RSPair& pair, const CoefficientStream& stream,
                  double x, std::uint64_t q, std::uint64_t a);

struct OrthogonalityDecomposition {
  Complex direct;        // sum over n = a (q) of Lambda(n) phi(n)
  Complex via_characters;  // (1/phi(q)) sum_psi conj(psi(a)) sum_n ...
  double difference = 0.0;
  double scale = 0.0;  // max(|direct|, 1): normalizer for the comparison
};

OrthogonalityDecomposition orthogonality_decomposition(
    const RSPair& pair, const CoefficientStream& stream, double x,
    std::uint64_t q, std::uint64_t a, const SmoothingKernel& kernel);

struct RamifiedCorrection {
  Complex exact_difference;
  double bound = 0.0;
};

/// Exact difference sum_n Lambda_{pi x pi'}(n) psi(n) phi(n) -
/// sum_n Lambda_{pi x (pi' (x) chi)}(n) phi(n), where chi is the primitive
/// character inducing psi, plus the theta-shaped bound
/// n'n sum_{p | q N N'} sum_{l <= log(2x)/log p} p^{l(theta_n+theta_n')} log p.
/// The kernel is the linear ramp with y = x (support up to 2x).
RamifiedCorrection ramified_correction(const RSPair& pair,
                                       const DirichletCharacter& psi,
                                       double x);

/// Exact Sum_{X < n <= X e^{1/T}} |Lambda(n)| and its ratio against X/T.
ShortIntervalReport short_interval_sum(const CoefficientStream& stream,
                                       double X, double T);

struct SWExperiment {
  std::vector<SWReport> reports;
  // Per-x maxima of the normalized error, in grid order.
  std::vector<std::pair<double, double>> max_normalized_error;
  bool monotone_trend = false;  // last-x max < first-x max
  bool q_in_range = true;       // q <= (log max x)^A
};

/// One SWReport per (x, a) with a coprime to q, plus per-x summary rows.
SWExperiment sw_experiment(const RSPair& pair, const CoefficientStream& stream,
                           const std::vector<double>& x_grid, std::uint64_t q,
                           double A);

void export_sw_csv(const SWExperiment& exp, std::ostream& out);
void export_sw_json(const SWExperiment& exp, std::ostream& out);

}  // namespace rse::prime_counting
