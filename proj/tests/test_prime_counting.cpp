#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>

#include "rse/analytic.hpp"
#include "rse/automorphic.hpp"
#include "rse/characters.hpp"
#include "rse/prime_counting.hpp"
#include "rse/rankin_selberg.hpp"

using namespace rse::prime_counting;
using rse::analytic::InsufficientXError;
using rse::analytic::SmoothingKernel;
using rse::automorphic::AutomorphicRep;
using rse::characters::characters_mod;
using rse::rankin_selberg::rs_stream;
using rse::rankin_selberg::RSPair;
using rse::rankin_selberg::twisted_pair;
using Cx = std::complex<double>;

namespace {

// Classical von Mangoldt by trial division.
double oracle_von_mangoldt(std::uint64_t n) {
  if (n < 2) return 0.0;
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      p = d;
      break;
    }
  if (p == 0) return std::log(double(n));
  std::uint64_t m = n;
  while (m % p == 0) m /= p;
  return m == 1 ? std::log(double(p)) : 0.0;
}

RSPair zeta_pair(std::uint64_t) {
  return RSPair{AutomorphicRep::trivial(), AutomorphicRep::trivial()};
}

rse::characters::DirichletCharacter char_of_order(std::uint64_t q,
                                                  std::uint64_t order) {
  for (auto& chi : characters_mod(q))
    if (chi.order() == order) return chi;
  throw std::runtime_error("missing character");
}

}  // namespace

TEST_CASE("progression psi sums match direct sieving") {
  auto st = rs_stream(zeta_pair(0), 5000);
  for (std::uint64_t q : {1, 3, 5}) {
    for (std::uint64_t a = 1; a <= q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      double expect = 0.0;
      for (std::uint64_t n = 2; n <= 5000; ++n)
        if (q == 1 || n % q == a % q) expect += oracle_von_mangoldt(n);
      Cx got = psi_ap(st, 5000.0, q, a);
      CHECK(std::abs(got.real() - expect) < 1e-7);
      CHECK(std::abs(got.imag()) < 1e-9);
    }
  }
  CHECK_THROWS_AS(psi_ap(st, 5000.0, 6, 2), std::domain_error);
  CHECK_THROWS_AS(psi_ap(st, 9000.0, 3, 1), InsufficientXError);
}

TEST_CASE("partition identity over residue classes") {
  auto d = AutomorphicRep::delta(3000);
  RSPair pair{d, d};
  auto st = rs_stream(pair, 3000);
  for (std::uint64_t q : {3, 8}) {
    Cx classes = 0.0;
    for (std::uint64_t a = 1; a <= q; ++a)
      if (std::gcd(a, q) == 1) classes += psi_ap(st, 3000.0, q, a);
    // part supported on prime powers sharing a factor with q
    Cx shared = 0.0;
    for (std::uint64_t n = 2; n <= 3000; ++n)
      if (std::gcd(n, q) > 1) shared += st.biglambda[n];
    Cx all = psi_ap(st, 3000.0, 1, 1);
    CHECK(std::abs(classes + shared - all) < 1e-9);
  }
}

TEST_CASE("dual twist detection") {
  auto d = AutomorphicRep::delta(300);
  // self-dual pair: u = 0
  auto u0 = detect_dual_twist(RSPair{d, d});
  REQUIRE(u0.has_value());
  CHECK(*u0 == doctest::Approx(0.0).epsilon(1e-12));

  // pi' = ~pi (x) |det|^{iu}
  for (double u : {0.7, -1.3, 0.001}) {
    auto got = detect_dual_twist(RSPair{d, d.contragredient().twisted_by(u)});
    REQUIRE(got.has_value());
    CHECK(*got == doctest::Approx(u).epsilon(1e-9));
  }

  // genuinely twisted pair: no pole
  CHECK(!detect_dual_twist(RSPair{d, d.twisted_by(char_of_order(5, 4))})
             .has_value());
  // mismatched degrees: no pole
  CHECK(!detect_dual_twist(RSPair{d, AutomorphicRep::trivial()}).has_value());
  // zeta pair
  auto uz = detect_dual_twist(zeta_pair(0));
  REQUIRE(uz.has_value());
  CHECK(*uz == doctest::Approx(0.0));
}

TEST_CASE("main term") {
  auto d = AutomorphicRep::delta(300);
  CHECK(std::abs(main_term(zeta_pair(0), 1e4) - Cx{1e4, 0.0}) < 1e-9);
  CHECK(std::abs(main_term(RSPair{d, d}, 500.0) - Cx{500.0, 0.0}) < 1e-9);
  // twisted main term: |x^{1-iu}/(1-iu)| = x / sqrt(1+u^2)
  double u = 0.7;
  Cx m = main_term(RSPair{d, d.contragredient().twisted_by(u)}, 1000.0);
  CHECK(std::abs(m) == doctest::Approx(1000.0 / std::hypot(1.0, u)).epsilon(1e-6));
  // no pole: zero main term
  CHECK(main_term(RSPair{d, d.twisted_by(char_of_order(5, 4))}, 1000.0) ==
        Cx{0.0, 0.0});
}

TEST_CASE("sw error at small scale behaves like the classical psi") {
  auto st = rs_stream(zeta_pair(0), 10000);
  auto rep = sw_error(zeta_pair(0), st, 10000.0, 1, 1);
  // |psi(10^4) - 10^4| / 10^4 is around 1.3e-3
  CHECK(rep.normalized_error < 5e-3);
  CHECK(std::abs(rep.main_term - Cx{10000.0, 0.0}) < 1e-6);
}

TEST_CASE("orthogonality decomposition: two routes agree") {
  auto d = AutomorphicRep::delta(2000);
  RSPair pair{d, d};
  auto st = rs_stream(pair, 2000);
  SmoothingKernel kernel(1000.0, 1000.0);
  for (std::uint64_t q : {1, 3, 5, 8}) {
    for (std::uint64_t a = 1; a <= q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      auto dec =
          orthogonality_decomposition(pair, st, 1000.0, q, a, kernel);
      CHECK(dec.difference / dec.scale < 1e-9);
    }
  }
  CHECK_THROWS_AS(
      orthogonality_decomposition(pair, st, 2000.0, 3, 1,
                                  SmoothingKernel(1500.0, 1000.0)),
      InsufficientXError);
  CHECK_THROWS_AS(
      orthogonality_decomposition(pair, st, 1000.0, 6, 2, kernel),
      std::domain_error);
}

TEST_CASE("ramified correction") {
  auto d = AutomorphicRep::delta(1100);
  RSPair pair{d, d};
  // q = 8 characters induced from conductor 4: difference supported on p = 2
  for (auto& psi : characters_mod(8)) {
    if (psi.conductor() != 4) continue;
    auto rc = ramified_correction(pair, psi, 500.0);
    CHECK(std::abs(rc.exact_difference) <= rc.bound);
    CHECK(rc.bound > 0.0);
  }
  // psi already primitive and coprime to all levels: difference vanishes
  auto chi5 = char_of_order(5, 4);
  auto rc0 = ramified_correction(pair, chi5, 300.0);
  CHECK(std::abs(rc0.exact_difference) < 1e-9);
  // bound is monotone in x
  auto psi8 = [&] {
    for (auto& c : characters_mod(8))
      if (c.conductor() == 4) return c;
    throw std::runtime_error("unreachable");
  }();
  CHECK(ramified_correction(pair, psi8, 200.0).bound <=
        ramified_correction(pair, psi8, 500.0).bound);
}

TEST_CASE("short interval sums") {
  auto st = rs_stream(zeta_pair(0), 12000);
  double X = 10000.0, T = 10.0;
  auto rep = short_interval_sum(st, X, T);
  double expect = 0.0;
  double hi = X * std::exp(1.0 / T);
  for (std::uint64_t n = 10001; double(n) <= hi; ++n)
    expect += oracle_von_mangoldt(n);
  CHECK(rep.sum_abs_lambda == doctest::Approx(expect).epsilon(1e-9));
  CHECK(rep.ratio == doctest::Approx(expect * T / X).epsilon(1e-12));

  // window too narrow to catch the next prime power: zero
  auto tight = short_interval_sum(st, 10007.5, 1e6);
  CHECK(tight.sum_abs_lambda == 0.0);

  CHECK_THROWS_AS(short_interval_sum(st, 11999.0, 2.0), InsufficientXError);
  CHECK_THROWS_AS(short_interval_sum(st, 100.0, 0.5), std::domain_error);
}

TEST_CASE("cauchy-schwarz interval bound") {
  auto d = AutomorphicRep::delta(1300);
  auto chi = char_of_order(5, 4);
  RSPair pair{d, d.twisted_by(chi)};
  auto st = rs_stream(pair, 1300);
  auto self_l = rs_stream(RSPair{d, d.contragredient()}, 1300);
  auto self_r = rs_stream(
      RSPair{d.twisted_by(chi), d.twisted_by(chi).contragredient()}, 1300);
  for (double X : {200.0, 500.0, 1000.0}) {
    double T = 4.0;
    auto lhs = short_interval_sum(st, X, T).sum_abs_lambda;
    double sl = 0.0, sr = 0.0;
    double hi = X * std::exp(1.0 / T);
    for (std::uint64_t n = std::uint64_t(X) + 1; double(n) <= hi; ++n) {
      sl += std::max(0.0, self_l.biglambda[n].real());
      sr += std::max(0.0, self_r.biglambda[n].real());
    }
    CHECK(lhs <= std::sqrt(sl * sr) + 1e-9);
  }
}

TEST_CASE("experiment harness") {
  auto d = AutomorphicRep::delta(2000);
  RSPair pair{d, d};
  auto st = rs_stream(pair, 2000);
  auto exp = sw_experiment(pair, st, {500.0, 2000.0}, 3, 10.0);
  CHECK(exp.reports.size() == 4);  // phi(3) residues x 2 grid points
  CHECK(exp.max_normalized_error.size() == 2);
  CHECK(exp.q_in_range);
  for (auto& r : exp.reports) {
    CHECK(r.q == 3);
    CHECK(r.normalized_error >= 0.0);
  }
  // the per-x maximum actually is the maximum of its reports
  for (auto& [x, m] : exp.max_normalized_error) {
    double worst = 0.0;
    for (auto& r : exp.reports)
      if (r.x == x) worst = std::max(worst, r.normalized_error);
    CHECK(m == doctest::Approx(worst));
  }

  // exporters
  std::stringstream csv, json;
  export_sw_csv(exp, csv);
  export_sw_json(exp, json);
  std::string line;
  std::getline(csv, line);
  CHECK(line ==
        "x,q,a,re_psi,im_psi,re_main,im_main,abs_error,normalized_error");
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 4);
  CHECK(json.str().find("max_normalized_error") != std::string::npos);
  CHECK(json.str().find("monotone_trend") != std::string::npos);

  // out-of-range q sets the flag
  auto exp2 = sw_experiment(pair, st, {500.0, 2000.0}, 1999, 1.0);
  CHECK(!exp2.q_in_range);
}
