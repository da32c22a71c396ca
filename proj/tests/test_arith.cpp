#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "rse/arith.hpp"

using namespace rse::arith;

// ---------------------------------------------------------------------------
// Oracles, written independently of the implementations under test.
// ---------------------------------------------------------------------------

namespace {

bool oracle_is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> oracle_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; n <= limit; ++n)
    if (oracle_is_prime(n)) out.push_back(n);
  return out;
}

// prod_{n=1}^{order} (1 - q^n) truncated at `order`, one factor at a time.
std::vector<BigInt> oracle_euler_product(std::size_t order) {
  std::vector<BigInt> acc(order + 1);
  acc[0] = 1;
  for (std::size_t n = 1; n <= order; ++n) {
    // multiply by (1 - q^n) in place, high to low
    for (std::size_t i = order; i >= n; --i) acc[i] -= acc[i - n];
  }
  return acc;
}

// tau(1..limit) via the 24th power computed as 24 successive naive products.
std::vector<BigInt> oracle_tau(std::size_t limit) {
  std::size_t order = limit - 1;
  auto eta = oracle_euler_product(order);
  std::vector<BigInt> acc(order + 1);
  acc[0] = 1;
  for (int rep = 0; rep < 24; ++rep) {
    std::vector<BigInt> next(order + 1);
    for (std::size_t i = 0; i <= order; ++i) {
      if (acc[i] == 0) continue;
      for (std::size_t j = 0; i + j <= order; ++j) next[i + j] += acc[i] * eta[j];
    }
    acc = std::move(next);
  }
  return acc;  // tau(n) = acc[n-1]
}

}  // namespace

// ---------------------------------------------------------------------------

TEST_CASE("sieve matches trial division up to 10^4") {
  auto expect = oracle_primes(10000);
  CHECK(sieve_primes(10000) == expect);
  CHECK(sieve_primes(10000, 4) == expect);  // thread count must not matter
}

TEST_CASE("sieve edge cases") {
  CHECK(sieve_primes(2) == std::vector<std::uint64_t>{2});
  CHECK_THROWS_AS(sieve_primes(1), std::domain_error);
  // crossing the segment boundary
  auto big = sieve_primes(1 << 19);
  CHECK(big.size() == oracle_primes(1 << 19).size());
  CHECK(big.back() == 524287);
}

TEST_CASE("smallest prime factor table") {
  auto spf = smallest_prime_factor_table(1000);
  CHECK(spf[0] == 0);
  CHECK(spf[1] == 0);
  for (std::uint32_t n = 2; n <= 1000; ++n) {
    CHECK(n % spf[n] == 0);
    CHECK(oracle_is_prime(spf[n]));
    for (std::uint32_t d = 2; d < spf[n]; ++d) CHECK(n % d != 0);
  }
}

TEST_CASE("factorize recomposes and matches primality") {
  CHECK_THROWS_AS(factorize(0), std::domain_error);
  CHECK(factorize(1).factors.empty());
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    std::uint64_t n = 2 + rng() % 1000000;
    auto f = factorize(n);
    std::uint64_t prod = 1;
    std::uint64_t last = 0;
    for (auto& [p, e] : f.factors) {
      CHECK(p > last);
      CHECK(oracle_is_prime(p));
      last = p;
      for (unsigned i = 0; i < e; ++i) prod *= p;
    }
    CHECK(prod == n);
  }
  CHECK(is_prime(9973));
  CHECK(!is_prime(9975));
  CHECK(!is_prime(1));
}

TEST_CASE("series arithmetic against hand convolution") {
  std::mt19937_64 rng(11);
  IntegerSeries a(40), b(40);
  for (std::size_t i = 0; i <= 40; ++i) {
    a[i] = BigInt(std::int64_t(rng() % 2001) - 1000);
    b[i] = BigInt(std::int64_t(rng() % 2001) - 1000);
  }
  auto c = a * b;
  for (std::size_t k = 0; k <= 40; ++k) {
    BigInt expect = 0;
    for (std::size_t i = 0; i <= k; ++i) expect += a[i] * b[k - i];
    CHECK(c[k] == expect);
  }
  // sum/difference
  auto s = a + b, d = a - b;
  for (std::size_t k = 0; k <= 40; ++k) {
    CHECK(s[k] == a[k] + b[k]);
    CHECK(d[k] == a[k] - b[k]);
  }
}

TEST_CASE("naive and transform-based products agree") {
  std::mt19937_64 rng(13);
  for (std::size_t order : {16, 257, 4000}) {
    IntegerSeries a(order), b(order);
    for (std::size_t i = 0; i <= order; ++i) {
      // large magnitudes so CRT reassembly is actually exercised
      BigInt v = BigInt(rng()) * BigInt(rng());
      if (rng() & 1) v = -v;
      a[i] = v;
      b[i] = BigInt(std::int64_t(rng() % 4001) - 2000);
    }
    auto n = detail::mul_naive(a, b);
    auto f = detail::mul_ntt(a, b);
    for (std::size_t k = 0; k <= order; ++k) CHECK(n[k] == f[k]);
  }
}

TEST_CASE("pow is repeated multiplication") {
  IntegerSeries a(20);
  a[0] = 1;
  a[1] = -3;
  a[4] = 7;
  IntegerSeries byhand = IntegerSeries::one(20);
  for (int i = 0; i < 5; ++i) byhand = byhand * a;
  auto p = a.pow(5);
  for (std::size_t k = 0; k <= 20; ++k) CHECK(p[k] == byhand[k]);
  auto p0 = a.pow(0);
  CHECK(p0[0] == 1);
  CHECK(p0[5] == 0);
}

TEST_CASE("pentagonal expansion matches factor-by-factor product") {
  auto got = euler_product_series(300);
  auto expect = oracle_euler_product(300);
  for (std::size_t k = 0; k <= 300; ++k) {
    CHECK(got[k] == expect[k]);
    CHECK(abs(got[k]) <= 1);
  }
}

TEST_CASE("tau against the 24-fold naive expansion") {
  auto got = ramanujan_tau(300);
  auto expect = oracle_tau(300);
  REQUIRE(got.size() == 300);
  for (std::size_t i = 0; i < 300; ++i) CHECK(got[i] == expect[i]);
}

TEST_CASE("tau classical values") {
  auto tau = ramanujan_tau(10);
  CHECK(tau[0] == 1);
  CHECK(tau[1] == -24);
  CHECK(tau[2] == 252);
  CHECK(tau[3] == -1472);
  CHECK(tau[4] == 4830);
  CHECK(tau[5] == -6048);
  CHECK(tau[6] == -16744);
  CHECK(tau[7] == 84480);
  CHECK(tau[8] == -113643);
  CHECK(tau[9] == -115920);
}

TEST_CASE("tau Hecke properties at small scale") {
  const std::size_t N = 2000;
  auto tau = ramanujan_tau(N);
  auto at = [&](std::uint64_t n) { return tau[n - 1]; };
  // multiplicativity on coprime arguments
  for (std::uint64_t m = 2; m <= 60; ++m)
    for (std::uint64_t n = m + 1; m * n <= N; ++n)
      if (std::gcd(m, n) == 1) CHECK(at(m * n) == at(m) * at(n));
  // recursion tau(p^{k+1}) = tau(p) tau(p^k) - p^11 tau(p^{k-1})
  for (std::uint64_t p : {2, 3, 5, 7, 11}) {
    BigInt p11 = 1;
    for (int i = 0; i < 11; ++i) p11 *= p;
    std::uint64_t pk = p;
    while (pk * p <= N) {
      BigInt prev = (pk == p) ? BigInt(1) : at(pk / p);
      CHECK(at(pk * p) == at(p) * at(pk) - p11 * prev);
      pk *= p;
    }
  }
}
