#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

// Dirichlet characters mod q: the finite-level GL(1) objects over Q.
//
// Over Q with modulus ideal (q), the narrow ray class group is isomorphic to
// (Z/qZ)^* (the totally-positive condition absorbs the archimedean place), so
// ray class characters specialize to ordinary Dirichlet characters. Characters
// are represented by exponent vectors against a fixed generator basis of
// (Z/qZ)^* obtained from the CRT decomposition (with the usual 2-power special
// case), so products, conjugates, and root-of-unity values are exact.
namespace rse::characters {

/// Exact root of unity e^{2*pi*i*num/den}, or zero. den >= 1, 0 <= num < den,
/// gcd(num, den) = 1 unless num = 0.
struct RootOfUnity {
  bool is_zero = true;
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static RootOfUnity zero() { return {}; }
  static RootOfUnity from_fraction(std::uint64_t num, std::uint64_t den);

  RootOfUnity operator*(const RootOfUnity& rhs) const;
  RootOfUnity conj() const;
  std::complex<double> value() const;
  bool operator==(const RootOfUnity& rhs) const = default;
};

namespace detail {
// Structure of (Z/qZ)^*: generator basis and discrete-log tables.
struct UnitGroup {
  std::uint64_t q = 1;
  std::vector<std::uint64_t> component_orders;  // order of each basis element
  std::uint64_t exponent = 1;                   // lcm of component orders
  // Residues mod q realizing each basis element.
  std::vector<std::uint64_t> component_generators;
  // dlog[n]: exponent vector of n when coprime[n], unspecified otherwise.
  std::vector<std::vector<std::uint32_t>> dlog;
  std::vector<std::uint8_t> coprime;

  static std::shared_ptr<const UnitGroup> get(std::uint64_t q);
};
}  // namespace detail

class DirichletCharacter {
 public:
  // Principal character mod q.
  explicit DirichletCharacter(std::uint64_t q);
  DirichletCharacter(std::uint64_t q, std::vector<std::uint32_t> exponents);

  std::uint64_t modulus() const { return group_->q; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }

  /// chi(n): zero when gcd(n, q) > 1, otherwise an exact root of unity.
  RootOfUnity operator()(std::int64_t n) const;
  std::complex<double> value(std::int64_t n) const { return (*this)(n).value(); }

  /// Order of chi in the character group.
  std::uint64_t order() const;
  bool is_principal() const { return order() == 1; }
  /// chi(-1) = +1 (even) or -1 (odd).
  bool is_even() const;

  /// Smallest d | q such that chi factors through (Z/dZ)^*.
  std::uint64_t conductor() const;
  /// The primitive character mod conductor() inducing chi.
  DirichletCharacter primitivize() const;
  bool is_primitive() const { return conductor() == modulus(); }

  /// The character mod m (m a multiple of the modulus) induced by chi.
  DirichletCharacter induced_mod(std::uint64_t m) const;

  DirichletCharacter operator*(const DirichletCharacter& rhs) const;
  DirichletCharacter conj() const;

  bool operator==(const DirichletCharacter& rhs) const {
    return modulus() == rhs.modulus() && exps_ == rhs.exps_;
  }

 private:
  std::shared_ptr<const detail::UnitGroup> group_;
  std::vector<std::uint32_t> exps_;
  mutable std::uint64_t conductor_cache_ = 0;  // 0 = not yet computed
};

/// All phi(q) characters mod q, in deterministic (lexicographic exponent
/// vector) order; the principal character comes first.
std::vector<DirichletCharacter> characters_mod(std::uint64_t q);

std::uint64_t euler_phi(std::uint64_t q);

/// Sum over chi mod q of conj(chi(a)) * chi(n).
/// Equals phi(q) when n = a (mod q) and gcd(n, q) = 1, else 0.
/// Throws std::domain_error if gcd(a, q) > 1.
std::complex<double> orthogonality_sum(std::uint64_t q, std::int64_t a,
                                       std::int64_t n);

}  // namespace rse::characters
