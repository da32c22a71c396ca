#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

// Integer and exact power-series substrate: prime sieving, factorization,
// and the eta-product expansion producing the Ramanujan tau coefficients.
namespace rse::arith {

using BigInt = boost::multiprecision::cpp_int;

/// A positive integer together with its full prime factorization,
/// primes strictly increasing.
struct FactoredInteger {
  std::uint64_t value = 1;
  std::vector<std::pair<std::uint64_t, unsigned>> factors;
};

/// All primes <= limit, ascending. Sieving is segmented; the output is
/// value-identical regardless of thread count.
/// Throws std::domain_error if limit < 2.
std::vector<std::uint64_t> sieve_primes(std::uint64_t limit,
                                        unsigned threads = 1);

/// Smallest-prime-factor table for 0..limit (entries 0 and 1 are 0).
std::vector<std::uint32_t> smallest_prime_factor_table(std::uint32_t limit);

/// Full factorization by trial division against sieved primes.
/// Throws std::domain_error if n == 0; n == 1 yields an empty factor list.
FactoredInteger factorize(std::uint64_t n);

bool is_prime(std::uint64_t n);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

/// Truncated power series with exact integer coefficients.
/// Arithmetic truncates at the minimum declared order of the operands and
/// records the resulting order; nothing is dropped below that order.
class IntegerSeries {
 public:
  // Zero series of the given truncation order (order + 1 coefficients).
  explicit IntegerSeries(std::size_t order) : coeff_(order + 1) {}

  static IntegerSeries one(std::size_t order) {
    IntegerSeries s(order);
    s.coeff_[0] = 1;
    return s;
  }

  std::size_t order() const { return coeff_.size() - 1; }

  BigInt& operator[](std::size_t i) { return coeff_[i]; }
  const BigInt& operator[](std::size_t i) const { return coeff_[i]; }

  const std::vector<BigInt>& coefficients() const { return coeff_; }

  IntegerSeries operator+(const IntegerSeries& rhs) const;
  IntegerSeries operator-(const IntegerSeries& rhs) const;

  // Product truncated to min(order(), rhs.order()). Dispatches to an
  // NTT-with-CRT path once the naive convolution gets expensive.
  IntegerSeries operator*(const IntegerSeries& rhs) const;

  // k-th power by repeated squaring, same truncation order.
  IntegerSeries pow(unsigned k) const;

 private:
  std::vector<BigInt> coeff_;
};

namespace detail {
// Both multiplication routes, exposed so tests can cross-check them.
IntegerSeries mul_naive(const IntegerSeries& a, const IntegerSeries& b);
IntegerSeries mul_ntt(const IntegerSeries& a, const IntegerSeries& b);
}  // namespace detail

/// Coefficients of prod_{n>=1} (1 - q^n) to the given order, via the
/// pentagonal number theorem. Every coefficient is 0 or +-1.
IntegerSeries euler_product_series(std::size_t order);

/// tau(1..limit) as exact integers, tau(n) at index n-1.
/// Computed as the q-expansion of q * prod (1-q^n)^24.
std::vector<BigInt> ramanujan_tau(std::size_t limit);

}  // namespace rse::arith
