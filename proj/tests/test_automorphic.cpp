#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <fstream>
#include <sstream>

#include "rse/arith.hpp"
#include "rse/automorphic.hpp"
#include "rse/characters.hpp"

using namespace rse::automorphic;
using rse::characters::characters_mod;
using rse::characters::DirichletCharacter;

namespace {

// Independent route to the normalized eigenvalues: the tau table itself.
double oracle_lambda(std::uint64_t p) {
  static auto tau = rse::arith::ramanujan_tau(200);
  return double(tau[p - 1].convert_to<double>()) / std::pow(double(p), 5.5);
}

}  // namespace

TEST_CASE("theta bounds per degree") {
  CHECK(theta_for_degree(1) == doctest::Approx(0.0));
  CHECK(theta_for_degree(2) == doctest::Approx(0.5 - 1.0 / 5.0));
  CHECK(theta_for_degree(3) == doctest::Approx(0.5 - 1.0 / 10.0));
}

TEST_CASE("trivial representation") {
  auto one = AutomorphicRep::trivial();
  CHECK(one.degree() == 1);
  CHECK(one.conductor() == 1);
  for (std::uint64_t p : {2, 3, 97}) {
    auto s = one.satake_at(p);
    REQUIRE(s.values.size() == 1);
    CHECK(s.values[0] == Complex{1.0, 0.0});
  }
}

TEST_CASE("gl1 wraps a character") {
  auto chi = characters_mod(5)[1];
  auto rep = AutomorphicRep::gl1(chi);
  CHECK(rep.degree() == 1);
  CHECK(rep.conductor() == chi.conductor());
  for (std::uint64_t p : {2, 3, 7, 11})
    CHECK(std::abs(rep.satake_at(p).values[0] - chi.value(p)) < 1e-15);
  CHECK(rep.satake_at(5).values[0] == Complex{0.0, 0.0});  // ramified

  // contragredient = conjugate character
  auto bar = rep.contragredient();
  for (std::uint64_t p : {2, 3, 7})
    CHECK(std::abs(bar.satake_at(p).values[0] - std::conj(chi.value(p))) <
          1e-15);
}

TEST_CASE("delta satake data") {
  auto d = AutomorphicRep::delta(200);
  CHECK(d.degree() == 2);
  CHECK(d.conductor() == 1);
  for (std::uint64_t p : {2, 3, 5, 7, 11, 97, 199}) {
    auto s = d.satake_at(p);
    REQUIRE(s.values.size() == 2);
    // unitary roots of X^2 - lambda X + 1
    CHECK(std::abs(std::abs(s.values[0]) - 1.0) < 1e-12);
    CHECK(std::abs(s.values[0] * s.values[1] - Complex{1.0, 0.0}) < 1e-12);
    CHECK(std::abs(s.values[0] + s.values[1] - Complex{oracle_lambda(p), 0.0}) <
          1e-12);
  }
  CHECK_THROWS_AS(d.satake_at(211), InsufficientDataError);
  CHECK(d.prime_limit() >= 199);

  // self-dual up to conjugation of the parameter multiset
  CHECK(d.same_satake(d.contragredient(), 200));
}

TEST_CASE("twists") {
  auto d = AutomorphicRep::delta(100);
  auto chi = characters_mod(5)[1];
  auto t = d.twisted_by(chi);
  for (std::uint64_t p : {2, 3, 7}) {
    auto a = d.satake_at(p).values;
    auto b = t.satake_at(p).values;
    for (int j = 0; j < 2; ++j)
      CHECK(std::abs(b[j] - a[j] * chi.value(p)) < 1e-14);
  }
  // ramified prime of the twist kills the parameters
  for (auto& z : t.satake_at(5).values) CHECK(z == Complex{0.0, 0.0});

  // |det|^{it} twist scales by p^{-it}
  auto u = d.twisted_by(0.5);
  for (std::uint64_t p : {2, 11}) {
    Complex scale = std::exp(Complex{0.0, -0.5 * std::log(double(p))});
    auto a = d.satake_at(p).values;
    auto b = u.satake_at(p).values;
    for (int j = 0; j < 2; ++j) CHECK(std::abs(b[j] - a[j] * scale) < 1e-14);
  }
  CHECK(u.real_twist() == doctest::Approx(0.5));
  CHECK(u.contragredient().real_twist() == doctest::Approx(-0.5));
}

TEST_CASE("isobaric sums concatenate") {
  auto d = AutomorphicRep::delta(100);
  auto one = AutomorphicRep::trivial();
  auto iso = AutomorphicRep::isobaric({d, one});
  CHECK(iso.degree() == 3);
  auto s = iso.satake_at(7);
  REQUIRE(s.values.size() == 3);
  auto ds = d.satake_at(7).values;
  CHECK(std::abs(s.values[0] - ds[0]) < 1e-15);
  CHECK(std::abs(s.values[1] - ds[1]) < 1e-15);
  CHECK(std::abs(s.values[2] - Complex{1.0, 0.0}) < 1e-15);
  CHECK(iso.conductor() == 1);
  CHECK(iso.is_isobaric());
  CHECK(iso.components().size() == 2);
}

TEST_CASE("analytic conductor") {
  // degree 1, conductor 1, mu = 0: C(it) = |it| + 3
  auto one = AutomorphicRep::trivial();
  CHECK(one.analytic_conductor(0.0) == doctest::Approx(3.0));
  CHECK(one.analytic_conductor(2.0) == doctest::Approx(5.0));

  auto chi = characters_mod(5)[1];  // conductor 5
  auto rep = AutomorphicRep::gl1(chi);
  CHECK(rep.analytic_conductor(0.0) >= 5.0 * 3.0 - 1e-9);

  auto d = AutomorphicRep::delta(50);
  auto arch = d.archimedean();
  REQUIRE(arch.mu.size() == 2);
  double expect = 1.0;
  for (auto& mu : arch.mu) expect *= std::abs(mu) + 3.0;
  CHECK(d.analytic_conductor(0.0) == doctest::Approx(expect));
}

TEST_CASE("ingestion format round trip") {
  auto d = AutomorphicRep::delta(100);
  std::stringstream ss;
  write_satake_file(d, ss, 100);
  auto back = AutomorphicRep::from_stream(ss);
  CHECK(back.degree() == 2);
  CHECK(back.conductor() == 1);
  CHECK(back.same_satake(d, 100, 1e-9));
  auto am = back.archimedean();
  REQUIRE(am.mu.size() == 2);
}

TEST_CASE("checked-in sample parses and matches the built-in table") {
  auto rep = AutomorphicRep::from_file(std::string(RSE_DATA_DIR) +
                                       "/delta_satake_1e4.txt");
  CHECK(rep.degree() == 2);
  CHECK(rep.prime_limit() >= 9973);
  auto d = AutomorphicRep::delta(10000);
  CHECK(rep.same_satake(d, 10000, 1e-6));
}

TEST_CASE("malformed ingestion input") {
  std::stringstream ss("degree 2\nconductor x\n");
  CHECK_THROWS(AutomorphicRep::from_stream(ss));
}
