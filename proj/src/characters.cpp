#include "rse/characters.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "rse/arith.hpp"

namespace rse::characters {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

RootOfUnity RootOfUnity::from_fraction(std::uint64_t num, std::uint64_t den) {
  RootOfUnity r;
  r.is_zero = false;
  num %= den;
  std::uint64_t g = std::gcd(num == 0 ? den : num, den);
  r.num = num / g;
  r.den = den / g;
  if (r.num == 0) r.den = 1;
  return r;
}

RootOfUnity RootOfUnity::operator*(const RootOfUnity& rhs) const {
  if (is_zero || rhs.is_zero) return zero();
  std::uint64_t d = std::lcm(den, rhs.den);
  return from_fraction(num * (d / den) + rhs.num * (d / rhs.den), d);
}

RootOfUnity RootOfUnity::conj() const {
  if (is_zero) return zero();
  return from_fraction(num == 0 ? 0 : den - num, den);
}

std::complex<double> RootOfUnity::value() const {
  if (is_zero) return {0.0, 0.0};
  // Exact values at the common small orders keep orthogonality sums clean.
  if (den == 1) return {1.0, 0.0};
  if (den == 2) return {-1.0, 0.0};
  if (den == 4) return num == 1 ? std::complex<double>{0.0, 1.0}
                                : std::complex<double>{0.0, -1.0};
  double a = 2.0 * kPi * double(num) / double(den);
  return {std::cos(a), std::sin(a)};
}

namespace detail {

namespace {

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = (r * a) % m;
    a = (a * a) % m;
    e >>= 1;
  }
  return r;
}

std::uint64_t primitive_root(std::uint64_t p, unsigned a) {
  // Primitive root mod p^a for odd prime p.
  std::uint64_t phi_p = p - 1;
  auto fac = arith::factorize(phi_p);
  std::uint64_t g = 0;
  for (std::uint64_t cand = 2; cand < p; ++cand) {
    bool ok = true;
    for (auto& [q, e] : fac.factors)
      if (powmod(cand, phi_p / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok) {
      g = cand;
      break;
    }
  }
  if (a == 1) return g;
  // Lift: g works mod p^a unless g^{p-1} = 1 mod p^2.
  if (powmod(g, p - 1, p * p) == 1) g += p;
  return g;
}

struct Component {
  std::uint64_t modulus;    // prime-power factor of q
  std::uint64_t generator;  // residue mod `modulus`
  std::uint64_t order;
};

}  // namespace

std::shared_ptr<const UnitGroup> UnitGroup::get(std::uint64_t q) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::shared_ptr<const UnitGroup>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(q);
  if (it != cache.end()) return it->second;

  if (q == 0) throw std::domain_error("UnitGroup: modulus must be positive");
  auto g = std::make_shared<UnitGroup>();
  g->q = q;

  std::vector<Component> comps;
  for (auto& [p, e] : arith::factorize(q).factors) {
    std::uint64_t pe = 1;
    for (unsigned i = 0; i < e; ++i) pe *= p;
    if (p == 2) {
      if (e == 1) continue;  // (Z/2)^* trivial
      comps.push_back({pe, pe - 1, 2});
      if (e >= 3) comps.push_back({pe, 5, pe / 4});
    } else {
      std::uint64_t order = pe / p * (p - 1);
      comps.push_back({pe, primitive_root(p, e), order});
    }
  }

  g->exponent = 1;
  for (auto& c : comps) {
    g->component_orders.push_back(c.order);
    g->exponent = std::lcm(g->exponent, c.order);
  }

  // Per-component discrete-log tables, then assembled per residue mod q.
  std::vector<std::vector<std::uint32_t>> comp_dlog(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i) {
    comp_dlog[i].assign(comps[i].modulus, UINT32_MAX);
    std::uint64_t v = 1;
    for (std::uint64_t k = 0; k < comps[i].order; ++k) {
      comp_dlog[i][v] = static_cast<std::uint32_t>(k);
      v = (v * comps[i].generator) % comps[i].modulus;
    }
  }
  g->dlog.assign(q, {});
  g->coprime.assign(q, 0);
  for (std::uint64_t n = 0; n < q; ++n) {
    if (std::gcd(n, q) != 1) continue;
    std::vector<std::uint32_t> exps(comps.size(), 0);
    bool ok = true;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      std::uint64_t m = comps[i].modulus;
      std::uint64_t r = n % m;
      if (m % 8 == 0) {
        // Joint (-1)^x * 5^y decomposition: i is the sign component and
        // i + 1 the 5-power component.
        if (comps[i].generator != m - 1) continue;  // handled at sign index
        std::uint64_t y = comp_dlog[i + 1][r];
        if (y != UINT32_MAX) {
          exps[i] = 0;
          exps[i + 1] = y;
        } else {
          std::uint64_t y2 = comp_dlog[i + 1][(m - r) % m];
          exps[i] = 1;
          exps[i + 1] = static_cast<std::uint32_t>(y2);
        }
        ++i;  // consumed both components
      } else {
        std::uint32_t d = comp_dlog[i][r];
        if (d == UINT32_MAX) {
          ok = false;
          break;
        }
        exps[i] = d;
      }
    }
    if (ok) {
      g->dlog[n] = std::move(exps);
      g->coprime[n] = 1;
    }
  }

  // Generator residues mod q (CRT lift of each basis element).
  g->component_generators.assign(comps.size(), 1);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    for (std::uint64_t n = 1; n < std::max<std::uint64_t>(q, 2); ++n) {
      if (std::gcd(n, q) != 1 || !g->coprime[n % q]) continue;
      const auto& e = g->dlog[n % q];
      bool match = true;
      for (std::size_t j = 0; j < comps.size(); ++j)
        if (e[j] != (j == i ? 1u : 0u)) {
          match = false;
          break;
        }
      if (match) {
        g->component_generators[i] = n;
        break;
      }
    }
  }

  cache[q] = g;
  return g;
}

}  // namespace detail

DirichletCharacter::DirichletCharacter(std::uint64_t q)
    : group_(detail::UnitGroup::get(q)),
      exps_(group_->component_orders.size(), 0) {}

DirichletCharacter::DirichletCharacter(std::uint64_t q,
                                       std::vector<std::uint32_t> exponents)
    : group_(detail::UnitGroup::get(q)), exps_(std::move(exponents)) {
  if (exps_.size() != group_->component_orders.size())
    throw std::invalid_argument("DirichletCharacter: bad exponent vector size");
  for (std::size_t i = 0; i < exps_.size(); ++i)
    exps_[i] %= group_->component_orders[i];
}

RootOfUnity DirichletCharacter::operator()(std::int64_t n) const {
  std::uint64_t q = modulus();
  std::uint64_t r = ((n % static_cast<std::int64_t>(q)) + q) % q;
  if (q == 1) return RootOfUnity::from_fraction(0, 1);
  if (!group_->coprime[r]) return RootOfUnity::zero();
  const auto& d = group_->dlog[r];
  std::uint64_t E = group_->exponent;
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    std::uint64_t oi = group_->component_orders[i];
    acc = (acc + (std::uint64_t(exps_[i]) * d[i]) % oi * (E / oi)) % E;
  }
  return RootOfUnity::from_fraction(acc, E);
}

std::uint64_t DirichletCharacter::order() const {
  std::uint64_t ord = 1;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    std::uint64_t oi = group_->component_orders[i];
    ord = std::lcm(ord, oi / std::gcd<std::uint64_t>(oi, exps_[i]));
  }
  return ord;
}

bool DirichletCharacter::is_even() const {
  RootOfUnity v = (*this)(-1);
  return v.den == 1;
}

std::uint64_t DirichletCharacter::conductor() const {
  if (conductor_cache_) return conductor_cache_;
  std::uint64_t q = modulus();
  for (std::uint64_t d = 1; d <= q; ++d) {
    if (q % d != 0) continue;
    bool trivial_on_kernel = true;
    for (std::uint64_t n = 1; n <= q && trivial_on_kernel; n += d) {
      if (std::gcd(n, q) != 1) continue;
      RootOfUnity v = (*this)(static_cast<std::int64_t>(n));
      if (v.is_zero || v.num != 0) trivial_on_kernel = false;
    }
    if (trivial_on_kernel) {
      conductor_cache_ = d;
      return d;
    }
  }
  conductor_cache_ = q;
  return q;
}

DirichletCharacter DirichletCharacter::primitivize() const {
  std::uint64_t f = conductor();
  if (f == modulus()) return *this;
  for (auto& cand : characters_mod(f)) {
    bool agree = true;
    for (std::uint64_t n = 1; n <= modulus() && agree; ++n) {
      if (std::gcd(n, modulus()) != 1) continue;
      if (!(cand(static_cast<std::int64_t>(n)) ==
            (*this)(static_cast<std::int64_t>(n))))
        agree = false;
    }
    if (agree) return cand;
  }
  throw std::logic_error("primitivize: no inducing character found");
}

DirichletCharacter DirichletCharacter::induced_mod(std::uint64_t m) const {
  if (m % modulus() != 0)
    throw std::invalid_argument("induced_mod: m must be a multiple of q");
  if (m == modulus()) return *this;
  auto target = detail::UnitGroup::get(m);
  std::vector<std::uint32_t> exps(target->component_orders.size(), 0);
  for (std::size_t i = 0; i < exps.size(); ++i) {
    std::uint64_t gen = target->component_generators[i];
    RootOfUnity v = (*this)(static_cast<std::int64_t>(gen));
    if (v.is_zero)
      throw std::logic_error("induced_mod: generator not coprime to q");
    std::uint64_t oi = target->component_orders[i];
    // v = e(num/den) with den | oi by construction.
    if (oi % v.den != 0)
      throw std::logic_error("induced_mod: order mismatch");
    exps[i] = static_cast<std::uint32_t>(v.num * (oi / v.den) % oi);
  }
  return DirichletCharacter(m, std::move(exps));
}

DirichletCharacter DirichletCharacter::operator*(
    const DirichletCharacter& rhs) const {
  if (modulus() != rhs.modulus()) {
    std::uint64_t m = std::lcm(modulus(), rhs.modulus());
    return induced_mod(m) * rhs.induced_mod(m);
  }
  std::vector<std::uint32_t> exps(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i)
    exps[i] = (exps_[i] + rhs.exps_[i]) % group_->component_orders[i];
  return DirichletCharacter(modulus(), std::move(exps));
}

DirichletCharacter DirichletCharacter::conj() const {
  std::vector<std::uint32_t> exps(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    std::uint64_t oi = group_->component_orders[i];
    exps[i] = static_cast<std::uint32_t>((oi - exps_[i]) % oi);
  }
  return DirichletCharacter(modulus(), std::move(exps));
}

std::vector<DirichletCharacter> characters_mod(std::uint64_t q) {
  auto group = detail::UnitGroup::get(q);
  const auto& orders = group->component_orders;
  std::vector<DirichletCharacter> chars;
  std::vector<std::uint32_t> exps(orders.size(), 0);
  while (true) {
    chars.emplace_back(q, exps);
    // Mixed-radix increment (lexicographic order).
    std::size_t i = orders.size();
    while (i > 0) {
      --i;
      if (++exps[i] < orders[i]) break;
      exps[i] = 0;
      if (i == 0) return chars;
    }
    if (orders.empty()) return chars;
  }
}

std::uint64_t euler_phi(std::uint64_t q) {
  std::uint64_t phi = 1;
  for (auto& [p, e] : arith::factorize(q).factors) {
    std::uint64_t pe = 1;
    for (unsigned i = 0; i + 1 < e; ++i) pe *= p;
    phi *= pe * (p - 1);
  }
  return phi;
}

std::complex<double> orthogonality_sum(std::uint64_t q, std::int64_t a,
                                       std::int64_t n) {
  std::uint64_t ar = ((a % static_cast<std::int64_t>(q)) + q) % q;
  if (std::gcd(ar, q) != 1)
    throw std::domain_error("orthogonality_sum: gcd(a, q) must be 1");
  std::complex<double> sum = 0;
  for (auto& chi : characters_mod(q))
    sum += chi(a).conj().value() * chi(n).value();
  return sum;
}

}  // namespace rse::characters
