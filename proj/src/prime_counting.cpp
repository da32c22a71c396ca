#include "rse/prime_counting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>

#include "rse/arith.hpp"

#include "json.hpp"

namespace rse::prime_counting {

using analytic::InsufficientXError;
using analytic::mellin_phi;

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

Complex psi_ap(const CoefficientStream& stream, double x, std::uint64_t q,
               std::uint64_t a) {
  if (q == 0) throw std::domain_error("psi_ap: q must be positive");
  if (std::gcd(a % q, q) != 1)
    throw std::domain_error("psi_ap: gcd(a, q) must be 1");
  auto cutoff = static_cast<std::uint64_t>(std::floor(x));
  if (x < 2.0) return 0.0;
  if (stream.limit < cutoff)
    throw InsufficientXError("psi_ap: stream limit " +
                             std::to_string(stream.limit) + " < x");
  Complex sum = 0.0;
  for (std::uint64_t n = (q == 1) ? 2 : (a % q == 0 ? q : a % q); n <= cutoff;
       n += (q == 1 ? 1 : q))
    sum += stream.biglambda[n];
  return sum;
}

std::optional<double> detect_dual_twist(const RSPair& pair) {
  if (pair.left.degree() != pair.right.degree()) return std::nullopt;
  const AutomorphicRep dual = pair.left.contragredient();

  // Collect the first 25 primes where both sides are unramified.
  constexpr int kPrimes = 25;
  std::vector<std::uint64_t> usable;
  std::vector<std::vector<Complex>> dual_params, right_params;
  std::uint64_t limit =
      std::min(pair.left.prime_limit(), pair.right.prime_limit());
  if (limit < 2) return std::nullopt;
  for (std::uint64_t p : arith::sieve_primes(std::min<std::uint64_t>(
           limit, 1000))) {
    auto d = dual.satake_at(p).values;
    auto r = pair.right.satake_at(p).values;
    auto nonzero = [](const std::vector<Complex>& v) {
      for (auto& z : v)
        if (std::abs(z) < 1e-15) return false;
      return true;
    };
    if (!nonzero(d) || !nonzero(r)) continue;
    usable.push_back(p);
    dual_params.push_back(std::move(d));
    right_params.push_back(std::move(r));
    if (static_cast<int>(usable.size()) == kPrimes) break;
  }
  if (usable.empty()) return std::nullopt;

  auto matches = [&](double u) {
    for (std::size_t i = 0; i < usable.size(); ++i) {
      double ang = -u * std::log(double(usable[i]));
      Complex rot{std::cos(ang), std::sin(ang)};
      auto a = dual_params[i];
      for (auto& z : a) z *= rot;
      auto b = right_params[i];
      auto key = [](const Complex& z1, const Complex& z2) {
        if (z1.real() != z2.real()) return z1.real() < z2.real();
        return z1.imag() < z2.imag();
      };
      std::sort(a.begin(), a.end(), key);
      std::sort(b.begin(), b.end(), key);
      for (std::size_t j = 0; j < a.size(); ++j)
        if (std::abs(a[j] - b[j]) > 1e-9) return false;
    }
    return true;
  };

  // Solve for u from the Satake trace at the first prime with a nonzero
  // trace; the 2*pi/log(p) branch ambiguity is resolved by verification.
  for (std::size_t i = 0; i < usable.size(); ++i) {
    Complex td = 0.0, tr = 0.0;
    for (auto& z : dual_params[i]) td += z;
    for (auto& z : right_params[i]) tr += z;
    if (std::abs(td) < 1e-9 || std::abs(tr) < 1e-9) continue;
    double logp = std::log(double(usable[i]));
    double u0 = (std::arg(td) - std::arg(tr)) / logp;
    for (int k = -3; k <= 3; ++k) {
      double u = u0 + kTwoPi * k / logp;
      if (matches(u)) return u;
    }
    return std::nullopt;  // trace informative but no branch matched
  }
  // All traces vanished; the only cheap candidate left is u = 0.
  if (matches(0.0)) return 0.0;
  return std::nullopt;
}

Complex main_term(const RSPair& pair, double x) {
  auto u = detect_dual_twist(pair);
  if (!u) return 0.0;
  if (*u == 0.0) return x;
  Complex one_minus_iu{1.0, -*u};
  return std::exp(one_minus_iu * std::log(x)) / one_minus_iu;
}

namespace {

// Aggregate main term over the primitive characters inducing the characters
// mod q, divided by phi(q); independent of the residue class, so experiment
// loops compute it once per (x, q).
Complex aggregate_main_term(const RSPair& pair, double x, std::uint64_t q) {
  Complex aggregate = 0.0;
  std::set<std::pair<std::uint64_t, std::vector<std::uint32_t>>> seen;
  for (auto& psi : characters::characters_mod(q)) {
    auto chi = psi.primitivize();
    if (!seen.insert({chi.modulus(), chi.exponents()}).second) continue;
    aggregate += main_term(rankin_selberg::twisted_pair(pair, chi), x);
  }
  return aggregate / double(characters::euler_phi(q));
}

SWReport sw_report_with_main(const CoefficientStream& stream, double x,
                             std::uint64_t q, std::uint64_t a, Complex mt) {
  SWReport rep;
  rep.x = x;
  rep.q = q;
  rep.a = a;
  rep.psi_value = psi_ap(stream, x, q, a);
  rep.main_term = mt;
  rep.error = rep.psi_value - rep.main_term;
  rep.normalized_error = std::abs(rep.error) / x;
  return rep;
}

}  // namespace

SWReport sw_error(const RSPair& pair, const CoefficientStream& stream,
                  double x, std::uint64_t q, std::uint64_t a) {
  return sw_report_with_main(stream, x, q, a,
                             aggregate_main_term(pair, x, q));
}

OrthogonalityDecomposition orthogonality_decomposition(
    const RSPair& pair, const CoefficientStream& stream, double x,
    std::uint64_t q, std::uint64_t a, const SmoothingKernel& kernel) {
  (void)pair;
  if (std::gcd(a % q, q) != 1 && q > 1)
    throw std::domain_error("orthogonality_decomposition: gcd(a, q) must be 1");
  double support = kernel.x + kernel.y;
  if (double(stream.limit) < support)
    throw InsufficientXError(
        "orthogonality_decomposition: stream shorter than kernel support");
  (void)x;

  OrthogonalityDecomposition out;
  std::uint64_t top = static_cast<std::uint64_t>(std::floor(support));

  Complex direct = 0.0;
  for (std::uint64_t n = 1; n <= top; ++n) {
    if (q > 1 && n % q != a % q) continue;
    direct += stream.biglambda[n] * mellin_phi(double(n), kernel);
  }
  out.direct = direct;

  Complex via = 0.0;
  for (auto& psi : characters::characters_mod(q)) {
    Complex inner = 0.0;
    for (std::uint64_t n = 1; n <= top; ++n) {
      auto v = psi(static_cast<std::int64_t>(n));
      if (v.is_zero) continue;
      inner += stream.biglambda[n] * v.value() * mellin_phi(double(n), kernel);
    }
    via += psi(static_cast<std::int64_t>(a)).conj().value() * inner;
  }
  out.via_characters = via / double(characters::euler_phi(q));

  out.scale = std::max(1.0, std::abs(out.direct));
  out.difference = std::abs(out.direct - out.via_characters);
  return out;
}

RamifiedCorrection ramified_correction(const RSPair& pair,
                                       const DirichletCharacter& psi,
                                       double x) {
  SmoothingKernel kernel(x, x);  // support up to 2x, matching the bound
  auto limit = static_cast<std::uint64_t>(std::ceil(2.0 * x));
  auto chi = psi.primitivize();

  auto plain = rankin_selberg::rs_stream(pair, limit);
  auto twisted =
      rankin_selberg::rs_stream(rankin_selberg::twisted_pair(pair, chi), limit);

  Complex diff = 0.0;
  for (std::uint64_t n = 1; n <= limit; ++n) {
    double w = mellin_phi(double(n), kernel);
    if (w == 0.0) continue;
    auto v = psi(static_cast<std::int64_t>(n));
    diff += plain.biglambda[n] * v.value() * w - twisted.biglambda[n] * w;
  }

  // Bound: n'n sum_{p | q N N'} sum_{l <= log(2x)/log p} p^{l theta} log p.
  double theta = pair.theta();
  std::uint64_t qnn =
      psi.modulus() * pair.left.conductor() * pair.right.conductor();
  double bound = 0.0;
  for (auto& [p, e] : arith::factorize(qnn).factors) {
    (void)e;
    double logp = std::log(double(p));
    int lmax = static_cast<int>(std::floor(std::log(2.0 * x) / logp));
    for (int l = 1; l <= lmax; ++l) bound += std::pow(double(p), l * theta) * logp;
  }
  bound *= double(pair.left.degree()) * double(pair.right.degree());
  return {diff, bound};
}

ShortIntervalReport short_interval_sum(const CoefficientStream& stream,
                                       double X, double T) {
  if (T < 1.0) throw std::domain_error("short_interval_sum: T must be >= 1");
  double upper = X * std::exp(1.0 / T);
  auto hi = static_cast<std::uint64_t>(std::floor(upper));
  if (stream.limit < hi)
    throw InsufficientXError("short_interval_sum: stream limit " +
                             std::to_string(stream.limit) +
                             " < X e^{1/T} = " + std::to_string(upper));
  ShortIntervalReport rep;
  rep.X = X;
  rep.T = T;
  auto lo = static_cast<std::uint64_t>(std::floor(X));
  for (std::uint64_t n = lo + 1; n <= hi; ++n)
    rep.sum_abs_lambda += std::abs(stream.biglambda[n]);
  rep.ratio = rep.sum_abs_lambda * T / X;
  return rep;
}

SWExperiment sw_experiment(const RSPair& pair, const CoefficientStream& stream,
                           const std::vector<double>& x_grid, std::uint64_t q,
                           double A) {
  SWExperiment exp;
  double xmax = 0.0;
  for (double x : x_grid) xmax = std::max(xmax, x);
  exp.q_in_range = double(q) <= std::pow(std::log(xmax), A);

  for (double x : x_grid) {
    double worst = 0.0;
    Complex mt = aggregate_main_term(pair, x, q);
    for (std::uint64_t a = 1; a <= std::max<std::uint64_t>(q, 1); ++a) {
      if (std::gcd(a, q) != 1) continue;
      auto rep = sw_report_with_main(stream, x, q, a, mt);
      exp.reports.push_back(rep);
      worst = std::max(worst, rep.normalized_error);
    }
    exp.max_normalized_error.emplace_back(x, worst);
  }
  if (exp.max_normalized_error.size() >= 2)
    exp.monotone_trend = exp.max_normalized_error.back().second <
                         exp.max_normalized_error.front().second;
  return exp;
}

void export_sw_csv(const SWExperiment& exp, std::ostream& out) {
  out << "x,q,a,re_psi,im_psi,re_main,im_main,abs_error,normalized_error\n";
  out.precision(17);
  for (auto& r : exp.reports) {
    out << r.x << "," << r.q << "," << r.a << "," << r.psi_value.real() << ","
        << r.psi_value.imag() << "," << r.main_term.real() << ","
        << r.main_term.imag() << "," << std::abs(r.error) << ","
        << r.normalized_error << "\n";
  }
}

void export_sw_json(const SWExperiment& exp, std::ostream& out) {
  nlohmann::json j;
  j["summary"] = nlohmann::json::array();
  for (auto& [x, m] : exp.max_normalized_error)
    j["summary"].push_back({{"x", x}, {"max_normalized_error", m}});
  j["monotone_trend"] = exp.monotone_trend;
  j["q_in_range"] = exp.q_in_range;
  out << j.dump(2) << "\n";
}

}  // namespace rse::prime_counting
