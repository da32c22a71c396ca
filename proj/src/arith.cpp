#include "rse/arith.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace rse::arith {

namespace {

std::vector<std::uint64_t> base_primes(std::uint64_t limit) {
  // Plain Eratosthenes for the small base set.
  std::vector<char> is_comp(limit + 1, 0);
  std::vector<std::uint64_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (!is_comp[i]) {
      primes.push_back(i);
      for (std::uint64_t j = i * i; j <= limit; j += i) is_comp[j] = 1;
    }
  }
  return primes;
}

void sieve_block(std::uint64_t lo, std::uint64_t hi,
                 const std::vector<std::uint64_t>& base,
                 std::vector<std::uint64_t>& out) {
  // Sieve [lo, hi] (inclusive) against the base primes.
  std::vector<char> comp(hi - lo + 1, 0);
  for (std::uint64_t p : base) {
    if (p * p > hi) break;
    std::uint64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
    for (std::uint64_t j = start; j <= hi; j += p) comp[j - lo] = 1;
  }
  for (std::uint64_t n = std::max<std::uint64_t>(lo, 2); n <= hi; ++n)
    if (!comp[n - lo]) out.push_back(n);
}

}  // namespace

std::vector<std::uint64_t> sieve_primes(std::uint64_t limit, unsigned threads) {
  if (limit < 2) throw std::domain_error("sieve_primes: limit must be >= 2");
  const auto root = static_cast<std::uint64_t>(std::sqrt(double(limit))) + 1;
  auto base = base_primes(root);

  constexpr std::uint64_t kBlock = 1u << 18;  // cache-resident block
  const std::uint64_t nblocks = (limit - 1) / kBlock + 1;
  std::vector<std::vector<std::uint64_t>> parts(nblocks);

  auto work = [&](std::uint64_t b) {
    std::uint64_t lo = 2 + b * kBlock;
    std::uint64_t hi = std::min(limit, lo + kBlock - 1);
    if (lo <= limit) sieve_block(lo, hi, base, parts[b]);
  };

  if (threads <= 1 || nblocks == 1) {
    for (std::uint64_t b = 0; b < nblocks; ++b) work(b);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::uint64_t> next{0};
    unsigned nt = std::min<unsigned>(threads, std::thread::hardware_concurrency());
    for (unsigned t = 0; t < std::max(1u, nt); ++t)
      pool.emplace_back([&] {
        for (std::uint64_t b; (b = next.fetch_add(1)) < nblocks;) work(b);
      });
    for (auto& th : pool) th.join();
  }

  std::vector<std::uint64_t> primes;
  for (auto& part : parts) {
    primes.insert(primes.end(), part.begin(), part.end());
  }
  return primes;
}

std::vector<std::uint32_t> smallest_prime_factor_table(std::uint32_t limit) {
  std::vector<std::uint32_t> spf(std::size_t(limit) + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf[i] == 0) {
      for (std::uint64_t j = i; j <= limit; j += i)
        if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }
  }
  return spf;
}

FactoredInteger factorize(std::uint64_t n) {
  if (n == 0) throw std::domain_error("factorize: n must be positive");
  FactoredInteger f;
  f.value = n;
  std::uint64_t m = n;
  for (std::uint64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p == 0) {
      unsigned e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      f.factors.emplace_back(p, e);
    }
  }
  if (m > 1) f.factors.emplace_back(m, 1u);
  return f;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2))
    if (n % p == 0) return false;
  return true;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  return std::gcd(a, b);
}

// ---------------------------------------------------------------------------
// IntegerSeries arithmetic
// ---------------------------------------------------------------------------

IntegerSeries IntegerSeries::operator+(const IntegerSeries& rhs) const {
  std::size_t ord = std::min(order(), rhs.order());
  IntegerSeries out(ord);
  for (std::size_t i = 0; i <= ord; ++i) out[i] = coeff_[i] + rhs[i];
  return out;
}

IntegerSeries IntegerSeries::operator-(const IntegerSeries& rhs) const {
  std::size_t ord = std::min(order(), rhs.order());
  IntegerSeries out(ord);
  for (std::size_t i = 0; i <= ord; ++i) out[i] = coeff_[i] - rhs[i];
  return out;
}

namespace detail {

IntegerSeries mul_naive(const IntegerSeries& a, const IntegerSeries& b) {
  std::size_t ord = std::min(a.order(), b.order());
  IntegerSeries out(ord);
  for (std::size_t i = 0; i <= ord; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j <= ord; ++j) {
      if (b[j] == 0) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

namespace {

// Three NTT-friendly primes; their product (~1.6e46) exceeds twice the
// largest coefficient that can appear in the eta-power chain at the stream
// limits this engine supports (d(n) n^{11/2} < 1e38 for n < 3e6).
constexpr std::uint64_t kP1 = 4179340454199820289ULL;  // 29 * 2^57 + 1
constexpr std::uint64_t kG1 = 3;
constexpr std::uint64_t kP2 = 1945555039024054273ULL;  // 27 * 2^56 + 1
constexpr std::uint64_t kG2 = 5;
constexpr std::uint64_t kP3 = 2013265921ULL;  // 15 * 2^27 + 1
constexpr std::uint64_t kG3 = 31;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

void ntt(std::vector<std::uint64_t>& v, std::uint64_t p, std::uint64_t g,
         bool invert) {
  const std::size_t n = v.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(v[i], v[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::uint64_t w = powmod(g, (p - 1) / len, p);
    if (invert) w = powmod(w, p - 2, p);
    for (std::size_t i = 0; i < n; i += len) {
      std::uint64_t wn = 1;
      for (std::size_t k = 0; k < len / 2; ++k) {
        std::uint64_t u = v[i + k];
        std::uint64_t t = mulmod(v[i + k + len / 2], wn, p);
        std::uint64_t add = u + t;
        if (add >= p) add -= p;
        v[i + k] = add;
        v[i + k + len / 2] = u >= t ? u - t : u + p - t;
        wn = mulmod(wn, w, p);
      }
    }
  }
  if (invert) {
    std::uint64_t ninv = powmod(n % p, p - 2, p);
    for (auto& x : v) x = mulmod(x, ninv, p);
  }
}

std::vector<std::uint64_t> residues(const IntegerSeries& s, std::size_t size,
                                    std::uint64_t p) {
  std::vector<std::uint64_t> out(size, 0);
  const BigInt mod = p;
  for (std::size_t i = 0; i <= s.order(); ++i) {
    BigInt r = s[i] % mod;
    if (r < 0) r += mod;
    out[i] = r.convert_to<std::uint64_t>();
  }
  return out;
}

std::vector<std::uint64_t> conv_mod(const IntegerSeries& a,
                                    const IntegerSeries& b, std::size_t size,
                                    std::uint64_t p, std::uint64_t g) {
  auto fa = residues(a, size, p);
  ntt(fa, p, g, false);
  if (&a == &b) {
    for (auto& x : fa) x = mulmod(x, x, p);
  } else {
    auto fb = residues(b, size, p);
    ntt(fb, p, g, false);
    for (std::size_t i = 0; i < size; ++i) fa[i] = mulmod(fa[i], fb[i], p);
  }
  ntt(fa, p, g, true);
  return fa;
}

}  // namespace

IntegerSeries mul_ntt(const IntegerSeries& a, const IntegerSeries& b) {
  std::size_t ord = std::min(a.order(), b.order());
  std::size_t size = 1;
  while (size < 2 * ord + 1) size <<= 1;

  auto r1 = conv_mod(a, b, size, kP1, kG1);
  auto r2 = conv_mod(a, b, size, kP2, kG2);
  auto r3 = conv_mod(a, b, size, kP3, kG3);

  // Garner reconstruction: x = r1 + P1 t1 + P1 P2 t2.
  const std::uint64_t p1_inv_p2 = powmod(kP1 % kP2, kP2 - 2, kP2);
  const std::uint64_t p12_inv_p3 =
      powmod(mulmod(kP1 % kP3, kP2 % kP3, kP3), kP3 - 2, kP3);
  const BigInt P1 = kP1, P12 = BigInt(kP1) * kP2;
  const BigInt M = P12 * kP3;
  const BigInt half = M / 2;

  IntegerSeries out(ord);
  for (std::size_t i = 0; i <= ord; ++i) {
    std::uint64_t r1p2 = r1[i] % kP2;
    std::uint64_t d = r2[i] >= r1p2 ? r2[i] - r1p2 : r2[i] + kP2 - r1p2;
    std::uint64_t t1 = mulmod(d, p1_inv_p2, kP2);
    // x12 = r1 + P1 t1 reduced mod P3
    std::uint64_t x12p3 = (r1[i] % kP3 + mulmod(kP1 % kP3, t1 % kP3, kP3)) % kP3;
    std::uint64_t r3p = r3[i] % kP3;
    std::uint64_t d3 = r3p >= x12p3 ? r3p - x12p3 : r3p + kP3 - x12p3;
    std::uint64_t t2 = mulmod(d3, p12_inv_p3, kP3);
    BigInt x = BigInt(r1[i]) + P1 * t1 + P12 * t2;  // 0 <= x < P1 P2 P3
    if (x > half) x -= M;                           // signed coefficient
    out[i] = x;
  }
  return out;
}

}  // namespace detail

IntegerSeries IntegerSeries::operator*(const IntegerSeries& rhs) const {
  std::size_t ord = std::min(order(), rhs.order());
  // Naive convolution cost ~ ord^2/2; switch to NTT once that dominates.
  if (static_cast<std::uint64_t>(ord) * ord / 2 <= (1ULL << 22))
    return detail::mul_naive(*this, rhs);
  return detail::mul_ntt(*this, rhs);
}

IntegerSeries IntegerSeries::pow(unsigned k) const {
  IntegerSeries acc = IntegerSeries::one(order());
  if (k == 0) return acc;
  IntegerSeries base = *this;
  bool started = false;
  // Left-to-right square-and-multiply.
  for (int bit = 31; bit >= 0; --bit) {
    if (started) acc = acc * acc;
    if (k & (1u << bit)) {
      if (started)
        acc = acc * base;
      else {
        acc = base;
        started = true;
      }
    }
  }
  return acc;
}

IntegerSeries euler_product_series(std::size_t order) {
  IntegerSeries s(order);
  s[0] = 1;
  // Generalized pentagonal numbers g_k = k(3k-1)/2, k = 1, -1, 2, -2, ...
  for (long long k = 1;; ++k) {
    long long g1 = k * (3 * k - 1) / 2;
    long long g2 = k * (3 * k + 1) / 2;
    if (g1 > static_cast<long long>(order) &&
        g2 > static_cast<long long>(order))
      break;
    int sign = (k % 2 == 0) ? 1 : -1;
    if (g1 <= static_cast<long long>(order)) s[g1] = sign;
    if (g2 <= static_cast<long long>(order)) s[g2] = sign;
  }
  return s;
}

std::vector<BigInt> ramanujan_tau(std::size_t limit) {
  if (limit < 1) throw std::domain_error("ramanujan_tau: limit must be >= 1");
  // tau(n) is the coefficient of q^{n-1} in prod (1-q^n)^24.
  IntegerSeries eta = euler_product_series(limit - 1);
  IntegerSeries e24 = eta.pow(24);
  std::vector<BigInt> tau(limit);
  for (std::size_t n = 1; n <= limit; ++n) tau[n - 1] = e24[n - 1];
  return tau;
}

}  // namespace rse::arith
