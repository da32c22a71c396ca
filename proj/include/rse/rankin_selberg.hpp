#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rse/automorphic.hpp"
#include "rse/characters.hpp"

// Rankin-Selberg pairing machinery: local factors, lambda and Lambda
// coefficient streams, GL(1)-twisted pairs, the 12-factor auxiliary product
// D(s), the conductor quantity Q, and the coefficient inequalities.
namespace rse::rankin_selberg {

using automorphic::AutomorphicRep;
using automorphic::Complex;
using automorphic::InsufficientDataError;
using characters::DirichletCharacter;

struct RSPair {
  AutomorphicRep left;
  AutomorphicRep right;

  /// theta_n + theta_n' for the combined local bound.
  double theta() const { return left.theta_bound() + right.theta_bound(); }

  /// The n*n' products alpha_j * alpha'_{j'} at p (unramified convention;
  /// ramified primes contribute the products of the zero-padded parameters).
  std::vector<Complex> combined_satake(std::uint64_t p) const;

  std::string name() const { return left.name() + " x " + right.name(); }
};

/// Arrays lambda(n), Lambda(n) for n <= limit of one L-function.
/// lambda is multiplicative with lambda(1) = 1; Lambda is supported on
/// prime powers.
struct CoefficientStream {
  std::uint64_t limit = 0;
  std::vector<Complex> lambda;     // index n, entries 0..limit
  std::vector<Complex> biglambda;  // index n, entries 0..limit
  std::string provenance;
};

/// Both coefficient streams of L(s, left x right) up to X.
/// lambda(p^k) from the local Euler factor via Newton's identities,
/// Lambda(p^k) = log(p) * sum of k-th powers of the combined parameters.
CoefficientStream rs_stream(const RSPair& pair, std::uint64_t X);

CoefficientStream rs_lambda_stream(const RSPair& pair, std::uint64_t X);
CoefficientStream rs_biglambda_stream(const RSPair& pair, std::uint64_t X);

/// (left, right twisted by chi and |det|^{it}).
RSPair twisted_pair(const RSPair& pair, const DirichletCharacter& chi,
                    double t = 0.0);

/// One factor of D(s) with its multiplicity.
struct AuxiliaryFactor {
  RSPair pair;
  int multiplicity = 1;
  // Set on the untwisted squared factors: their duplicate copy arises from a
  // chi * conj(chi) pairing, identical away from the twist modulus but with
  // trivial local factors at primes dividing it.
  bool duplicate_drops_ramified = false;
};

/// D(s) = L(s, Pi x ~Pi) for Pi = pi (+) pi*chi (+) ~pi' (+) ~pi'*conj(chi):
/// the 12 Rankin-Selberg factors (squared factors with multiplicity 2) and
/// the combined coefficient stream computed from the concatenated Satake
/// parameters of the isobaric pair.
struct AuxiliaryProduct {
  std::vector<AuxiliaryFactor> factors;
  RSPair isobaric_pair;
  CoefficientStream stream;
  std::uint64_t twist_modulus = 1;
};

AuxiliaryProduct auxiliary_product(const AutomorphicRep& pi,
                                   const AutomorphicRep& pi_prime,
                                   const DirichletCharacter& chi,
                                   std::uint64_t X);

/// Q = (C(pi) C(pi'))^{2(n+n')} * C(chi)^{(n+n')^2}.
double conductor_Q(const AutomorphicRep& pi, const AutomorphicRep& pi_prime,
                   const DirichletCharacter& chi);

/// Dirichlet convolution of lambda streams (pointwise product of the
/// L-functions); used as the second route for the D(s) stream.
std::vector<Complex> dirichlet_convolve(const std::vector<Complex>& a,
                                        const std::vector<Complex>& b);

/// lambda_D via 12-fold Dirichlet convolution of the factor streams.
std::vector<Complex> auxiliary_lambda_by_convolution(
    const AuxiliaryProduct& aux);

struct DecouplingViolation {
  std::uint64_t n = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool lambda_side = true;  // lambda inequality vs Lambda inequality
};

struct DecouplingReport {
  std::vector<DecouplingViolation> violations;
  double worst_margin = 0.0;  // max over n of lhs - rhs (negative when clean)
  bool ok() const { return violations.empty(); }
};

/// Checks |lambda_{pi x pi'}(n)| <= sqrt(lambda_{pi x ~pi}(n) *
/// lambda_{pi' x ~pi'}(n)) + tol and the Lambda analogue for all n <= X.
DecouplingReport check_decoupling(const RSPair& pair, std::uint64_t X,
                                  double tol = 1e-9);

/// CSV export: header naming the pair, then rows n, Re lambda, Im lambda,
/// Re Lambda, Im Lambda.
void export_csv(const CoefficientStream& stream, std::ostream& out);

}  // namespace rse::rankin_selberg
