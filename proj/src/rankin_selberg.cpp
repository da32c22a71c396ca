#include "rse/rankin_selberg.hpp"

#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "rse/arith.hpp"

namespace rse::rankin_selberg {

std::vector<Complex> RSPair::combined_satake(std::uint64_t p) const {
  auto a = left.satake_at(p).values;
  auto b = right.satake_at(p).values;
  std::vector<Complex> out;
  out.reserve(a.size() * b.size());
  for (auto& x : a)
    for (auto& y : b) out.push_back(x * y);
  return out;
}

namespace {

// Local lambda(p^k) for k = 0..kmax from the combined parameters:
// 1/prod(1 - beta_i T) = exp(sum_k s_k T^k / k), via c_k = (1/k) sum_{j<=k}
// s_j c_{k-j} (Newton's identities). Also returns the power sums s_k.
struct LocalFactor {
  std::vector<Complex> lambda;      // index k
  std::vector<Complex> power_sums;  // index k, s_0 unused
};

LocalFactor local_factor(const std::vector<Complex>& betas, unsigned kmax) {
  LocalFactor lf;
  lf.lambda.assign(kmax + 1, Complex{0.0, 0.0});
  lf.power_sums.assign(kmax + 1, Complex{0.0, 0.0});
  lf.lambda[0] = 1.0;

  std::vector<Complex> pw(betas.size(), Complex{1.0, 0.0});
  for (unsigned k = 1; k <= kmax; ++k) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < betas.size(); ++i) {
      pw[i] *= betas[i];
      s += pw[i];
    }
    lf.power_sums[k] = s;
    Complex c = 0.0;
    for (unsigned j = 1; j <= k; ++j)
      c += lf.power_sums[j] * lf.lambda[k - j];
    lf.lambda[k] = c / double(k);
  }
  return lf;
}

}  // namespace

CoefficientStream rs_stream(const RSPair& pair, std::uint64_t X) {
  if (X < 1) throw std::domain_error("rs_stream: X must be >= 1");

  CoefficientStream st;
  st.limit = X;
  st.provenance = pair.name();
  st.lambda.assign(X + 1, Complex{0.0, 0.0});
  st.biglambda.assign(X + 1, Complex{0.0, 0.0});
  st.lambda[1] = 1.0;

  // Local data at every prime power <= X.
  std::unordered_map<std::uint64_t, std::vector<Complex>> local_lambda;
  auto primes = arith::sieve_primes(X);
  for (std::uint64_t p : primes) {
    unsigned kmax = 1;
    {
      std::uint64_t pk = p;
      while (pk <= X / p) {
        pk *= p;
        ++kmax;
      }
    }
    auto lf = local_factor(pair.combined_satake(p), kmax);
    double logp = std::log(double(p));
    std::uint64_t pk = 1;
    for (unsigned k = 1; k <= kmax; ++k) {
      pk *= p;
      st.biglambda[pk] = logp * lf.power_sums[k];
    }
    local_lambda[p] = std::move(lf.lambda);
  }

  // Multiplicative fill via smallest prime factors.
  auto spf = arith::smallest_prime_factor_table(static_cast<std::uint32_t>(X));
  for (std::uint64_t n = 2; n <= X; ++n) {
    std::uint64_t p = spf[n];
    std::uint64_t m = n;
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    st.lambda[n] = local_lambda[p][e] * st.lambda[m];
  }
  return st;
}

CoefficientStream rs_lambda_stream(const RSPair& pair, std::uint64_t X) {
  return rs_stream(pair, X);
}

CoefficientStream rs_biglambda_stream(const RSPair& pair, std::uint64_t X) {
  return rs_stream(pair, X);
}

RSPair twisted_pair(const RSPair& pair, const DirichletCharacter& chi,
                    double t) {
  AutomorphicRep right = pair.right.twisted_by(chi);
  if (t != 0.0) right = right.twisted_by(t);
  return RSPair{pair.left, std::move(right)};
}

AuxiliaryProduct auxiliary_product(const AutomorphicRep& pi,
                                   const AutomorphicRep& pi_prime,
                                   const DirichletCharacter& chi,
                                   std::uint64_t X) {
  auto chibar = chi.conj();
  auto chi2 = chi * chi;
  auto chibar2 = chibar * chibar;
  auto pit = pi.contragredient();
  auto pipt = pi_prime.contragredient();

  std::vector<AuxiliaryFactor> factors;
  auto add = [&](AutomorphicRep l, AutomorphicRep r, int mult,
                 bool dup_drops = false) {
    factors.push_back({RSPair{std::move(l), std::move(r)}, mult, dup_drops});
  };

  // Line one of the factorization: the four squared factors. The second copy
  // of each untwisted square comes from a chi * conj(chi) pairing, which has
  // trivial local factors at primes dividing the twist modulus.
  add(pi, pit, 2, true);
  add(pi_prime, pipt, 2, true);
  add(pi, pi_prime.twisted_by(chi), 2);
  add(pit, pipt.twisted_by(chibar), 2);
  // Line two.
  add(pi, pit.twisted_by(chi), 1);
  add(pi_prime, pipt.twisted_by(chi), 1);
  add(pit, pipt, 1);
  add(pi, pi_prime.twisted_by(chi2), 1);
  // Line three.
  add(pi, pit.twisted_by(chibar), 1);
  add(pi_prime, pipt.twisted_by(chibar), 1);
  add(pi, pi_prime, 1);
  add(pit, pipt.twisted_by(chibar2), 1);

  AutomorphicRep big = AutomorphicRep::isobaric(
      {pi, pi.twisted_by(chi), pipt, pipt.twisted_by(chibar)});
  RSPair iso{big, big.contragredient()};
  CoefficientStream stream = rs_stream(iso, X);
  stream.provenance = "D(" + pi.name() + ", " + pi_prime.name() + ", " +
                      "chi[q=" + std::to_string(chi.modulus()) + "])";
  return AuxiliaryProduct{std::move(factors), std::move(iso),
                          std::move(stream), chi.modulus()};
}

double conductor_Q(const AutomorphicRep& pi, const AutomorphicRep& pi_prime,
                   const DirichletCharacter& chi) {
  int n = pi.degree();
  int np = pi_prime.degree();
  double cpi = pi.analytic_conductor();
  double cpp = pi_prime.analytic_conductor();
  double cchi = AutomorphicRep::gl1(chi.primitivize()).analytic_conductor();
  return std::pow(cpi * cpp, 2.0 * (n + np)) *
         std::pow(cchi, double(n + np) * (n + np));
}

std::vector<Complex> dirichlet_convolve(const std::vector<Complex>& a,
                                        const std::vector<Complex>& b) {
  std::size_t X = std::min(a.size(), b.size()) - 1;
  std::vector<Complex> out(X + 1, Complex{0.0, 0.0});
  for (std::size_t d = 1; d <= X; ++d) {
    if (a[d] == Complex{0.0, 0.0}) continue;
    for (std::size_t m = d; m <= X; m += d) out[m] += a[d] * b[m / d];
  }
  return out;
}

std::vector<Complex> auxiliary_lambda_by_convolution(
    const AuxiliaryProduct& aux) {
  std::uint64_t X = aux.stream.limit;
  std::vector<Complex> acc(X + 1, Complex{0.0, 0.0});
  acc[1] = 1.0;
  for (auto& f : aux.factors) {
    auto st = rs_stream(f.pair, X);
    for (int m = 0; m < f.multiplicity; ++m) {
      if (m > 0 && f.duplicate_drops_ramified) {
        auto stripped = st.lambda;
        for (std::uint64_t n = 2; n <= X; ++n)
          if (std::gcd(n, aux.twist_modulus) != 1) stripped[n] = 0.0;
        acc = dirichlet_convolve(acc, stripped);
      } else {
        acc = dirichlet_convolve(acc, st.lambda);
      }
    }
  }
  return acc;
}

DecouplingReport check_decoupling(const RSPair& pair, std::uint64_t X,
                                  double tol) {
  auto st = rs_stream(pair, X);
  auto self_l = rs_stream(RSPair{pair.left, pair.left.contragredient()}, X);
  auto self_r = rs_stream(RSPair{pair.right, pair.right.contragredient()}, X);

  DecouplingReport rep;
  rep.worst_margin = -1e300;
  auto check = [&](std::uint64_t n, Complex v, Complex ml, Complex mr,
                   bool lambda_side) {
    // Majorant streams are nonnegative up to roundoff.
    double prod = std::max(0.0, ml.real()) * std::max(0.0, mr.real());
    double lhs = std::abs(v);
    double rhs = std::sqrt(prod);
    rep.worst_margin = std::max(rep.worst_margin, lhs - rhs);
    if (lhs > rhs + tol) rep.violations.push_back({n, lhs, rhs, lambda_side});
  };
  for (std::uint64_t n = 1; n <= X; ++n) {
    check(n, st.lambda[n], self_l.lambda[n], self_r.lambda[n], true);
    check(n, st.biglambda[n], self_l.biglambda[n], self_r.biglambda[n], false);
  }
  return rep;
}

void export_csv(const CoefficientStream& stream, std::ostream& out) {
  out << "# " << stream.provenance << "\n";
  out << "n,re_lambda,im_lambda,re_biglambda,im_biglambda\n";
  out.precision(17);
  for (std::uint64_t n = 1; n <= stream.limit; ++n) {
    out << n << "," << stream.lambda[n].real() << ","
        << stream.lambda[n].imag() << "," << stream.biglambda[n].real() << ","
        << stream.biglambda[n].imag() << "\n";
  }
}

}  // namespace rse::rankin_selberg
