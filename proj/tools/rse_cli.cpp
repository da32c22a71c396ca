// Batch command-line surface over the library: coefficient export, invariant
// verification, prime-counting experiments, and the near-1 L-value table.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/validation error,
// 3 insufficient data.

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <numeric>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rse/analytic.hpp"
#include "rse/arith.hpp"
#include "rse/automorphic.hpp"
#include "rse/characters.hpp"
#include "rse/prime_counting.hpp"
#include "rse/rankin_selberg.hpp"

namespace {

using Complex = std::complex<double>;
using rse::automorphic::AutomorphicRep;
using rse::characters::DirichletCharacter;
using rse::rankin_selberg::RSPair;

constexpr double kPi = 3.14159265358979323846;

DirichletCharacter parse_chi(const std::string& spec) {
  // "q:index" into the deterministic characters_mod ordering.
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::domain_error("character specifier must be q:index, got '" +
                            spec + "'");
  std::uint64_t q = std::stoull(spec.substr(0, colon));
  std::size_t idx = std::stoull(spec.substr(colon + 1));
  auto chars = rse::characters::characters_mod(q);
  if (idx >= chars.size())
    throw std::domain_error("character index " + std::to_string(idx) +
                            " out of range for modulus " + std::to_string(q));
  return chars[idx];
}

AutomorphicRep parse_rep(const std::string& spec, std::uint64_t prime_limit) {
  if (spec == "trivial") return AutomorphicRep::trivial();
  if (spec == "delta") return AutomorphicRep::delta(prime_limit);
  if (spec.rfind("chi:", 0) == 0)
    return AutomorphicRep::gl1(parse_chi(spec.substr(4)));
  return AutomorphicRep::from_file(spec);  // anything else: ingestion file
}

RSPair parse_pair(const std::string& spec, std::uint64_t prime_limit) {
  auto comma = spec.find(',');
  if (comma == std::string::npos)
    throw std::domain_error("--pair must be 'left,right', got '" + spec + "'");
  return RSPair{parse_rep(spec.substr(0, comma), prime_limit),
                parse_rep(spec.substr(comma + 1), prime_limit)};
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  if (out.empty()) throw std::domain_error("empty numeric list");
  return out;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& spec) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(std::stoull(tok));
  return out;
}

// Stream sink: --out path or stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::domain_error("cannot open output file " + path);
    }
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

// ---------------------------------------------------------------------------
// coeffs
// ---------------------------------------------------------------------------

struct CoeffsConfig {
  std::string pair = "delta,delta";
  std::uint64_t limit = 1000;
  std::string twist_chi;
  double twist_t = 0.0;
  std::string out;
  std::string format = "csv";
};

int cmd_coeffs(const CoeffsConfig& cfg) {
  RSPair pair = parse_pair(cfg.pair, cfg.limit);
  if (!cfg.twist_chi.empty() || cfg.twist_t != 0.0) {
    DirichletCharacter chi =
        cfg.twist_chi.empty() ? DirichletCharacter(1) : parse_chi(cfg.twist_chi);
    pair = rse::rankin_selberg::twisted_pair(pair, chi, cfg.twist_t);
  }
  auto stream = rse::rankin_selberg::rs_stream(pair, cfg.limit);
  Output out(cfg.out);
  if (cfg.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (std::uint64_t n = 1; n <= stream.limit; ++n)
      rows.push_back({{"n", n},
                      {"re_lambda", stream.lambda[n].real()},
                      {"im_lambda", stream.lambda[n].imag()},
                      {"re_biglambda", stream.biglambda[n].real()},
                      {"im_biglambda", stream.biglambda[n].imag()}});
    out.get() << nlohmann::json{{"pair", stream.provenance}, {"rows", rows}}
                     .dump(2)
              << "\n";
  } else {
    rse::rankin_selberg::export_csv(stream, out.get());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyConfig {
  std::uint64_t limit = 10000;
  std::string only;
  std::string file;  // optional ingestion file added to the local-bound suite
  double tol = 1e-9;
  std::string out;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  double margin = 0.0;  // suite-specific worst case; negative is comfortable
  std::string detail;
};

DirichletCharacter char_of_order(std::uint64_t q, std::uint64_t order) {
  for (auto& chi : rse::characters::characters_mod(q))
    if (chi.order() == order) return chi;
  throw std::domain_error("no character of order " + std::to_string(order) +
                          " mod " + std::to_string(q));
}

CheckResult check_nonneg(std::uint64_t limit, double tol) {
  CheckResult r{"nonneg", true, 0.0, ""};
  double worst = 1e300;
  auto delta = AutomorphicRep::delta(limit);
  for (auto& chi : {char_of_order(5, 4), char_of_order(8, 2)}) {
    auto aux = rse::rankin_selberg::auxiliary_product(delta, delta, chi, limit);
    for (std::uint64_t n = 1; n <= limit; ++n) {
      worst = std::min(worst, aux.stream.lambda[n].real());
      worst = std::min(worst, aux.stream.biglambda[n].real());
    }
  }
  r.margin = worst;
  r.pass = worst >= -tol;
  r.detail = "min coefficient over both auxiliary products";
  return r;
}

CheckResult check_decoupling(std::uint64_t limit, double tol) {
  CheckResult r{"decoupling", true, -1e300, ""};
  auto delta = AutomorphicRep::delta(limit);
  std::vector<RSPair> pairs;
  pairs.push_back(RSPair{delta, delta.twisted_by(char_of_order(5, 4))});
  pairs.push_back(
      RSPair{delta, AutomorphicRep::gl1(rse::characters::characters_mod(8)[1])});
  for (auto& pair : pairs) {
    auto rep = rse::rankin_selberg::check_decoupling(pair, limit, tol);
    r.margin = std::max(r.margin, rep.worst_margin);
    if (!rep.ok()) r.pass = false;
  }
  r.detail = "worst lhs - rhs over both test pairs";
  return r;
}

CheckResult check_local_bounds(std::uint64_t limit, const std::string& file) {
  CheckResult r{"grc", true, -1e300, ""};
  auto delta = AutomorphicRep::delta(limit);
  auto primes = rse::arith::sieve_primes(std::max<std::uint64_t>(limit, 2));

  // Pairs: combined products must satisfy both |aa'| <= p and
  // |aa'| <= p^{theta_n + theta_n'}.
  std::vector<RSPair> pairs = {
      RSPair{delta, delta},
      RSPair{delta, delta.twisted_by(char_of_order(5, 4))},
      RSPair{AutomorphicRep::trivial(), delta},
  };
  for (auto& pair : pairs) {
    double theta = pair.theta();
    for (auto p : primes) {
      double bound = std::min(double(p), std::pow(double(p), theta));
      for (auto& z : pair.combined_satake(p))
        r.margin = std::max(r.margin, std::abs(z) - bound);
    }
  }
  // Single ingested representation: |alpha_j(p)| <= p^{theta_n}.
  if (!file.empty()) {
    auto rep = AutomorphicRep::from_file(file);
    for (auto p : primes) {
      if (p > rep.prime_limit()) break;
      double bound = std::pow(double(p), rep.theta_bound());
      for (auto& z : rep.satake_at(p).values)
        r.margin = std::max(r.margin, std::abs(z) - bound);
    }
  }
  r.pass = r.margin <= 1e-9;
  r.detail = "worst |alpha| - bound over all stored parameters";
  return r;
}

CheckResult check_residue(double tol) {
  CheckResult r{"residue", true, 0.0, ""};
  std::mt19937 rng(20260826);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    unsigned k = 1 + (trial % 2);
    std::size_t ord = 2 * k + 1;
    Complex s0{uni(rng), uni(rng)};
    auto random_jet = [&] {
      std::vector<Complex> c(ord + 1);
      for (auto& z : c) z = Complex{uni(rng), uni(rng)};
      return rse::analytic::TaylorJet(s0, c);
    };
    auto f = random_jet(), g = random_jet(), h = random_jet();
    Complex direct = rse::analytic::residue_extract(f, g, h, k);

    // Contour route: the jets define honest polynomials in (s - s0); the
    // terms of degree >= 2k integrate to zero, so the circle integral of
    // (fg)^k h / (s-s0)^{2k} is exactly the same residue.
    auto poly = [&](const rse::analytic::TaylorJet& j, Complex ds) {
      Complex v = 0.0, pw = 1.0;
      for (std::size_t i = 0; i <= j.order(); ++i, pw *= ds) v += j[i] * pw;
      return v;
    };
    const int nodes = 4096;
    const double radius = 0.5;
    Complex contour = 0.0;
    for (int m = 0; m < nodes; ++m) {
      double ang = 2.0 * kPi * m / nodes;
      Complex ds = radius * Complex{std::cos(ang), std::sin(ang)};
      Complex val = std::pow(poly(f, ds) * poly(g, ds), double(k)) *
                    poly(h, ds) / std::pow(ds, 2.0 * k);
      contour += val * ds * Complex{0.0, 1.0} * (2.0 * kPi / nodes);
    }
    contour /= Complex{0.0, 2.0 * kPi};

    double scale = std::max(1.0, std::abs(direct));
    worst = std::max(worst, std::abs(direct - contour) / scale);
  }
  // Exact-zero case: f(s0) = g(s0) = 0 forces valuation >= 2k.
  for (unsigned k : {1u, 2u}) {
    std::vector<Complex> fc(2 * k + 2), gc(2 * k + 2), hc(2 * k + 2);
    for (std::size_t i = 1; i < fc.size(); ++i) {
      fc[i] = Complex{uni(rng), uni(rng)};
      gc[i] = Complex{uni(rng), uni(rng)};
    }
    for (auto& z : hc) z = Complex{uni(rng), uni(rng)};
    Complex s0{0.25, -0.5};
    Complex v = rse::analytic::residue_extract(
        {s0, fc}, {s0, gc}, {s0, hc}, k);
    worst = std::max(worst, std::abs(v));
  }
  r.margin = worst;
  r.pass = worst <= std::max(tol, 1e-8);
  r.detail = "worst relative gap, jet extraction vs 4096-node contour";
  return r;
}

CheckResult check_mellin() {
  CheckResult r{"mellin", true, 0.0, ""};
  rse::analytic::SmoothingKernel kernel(7.0, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    Complex s{0.5 + 2.5 * i / 19.0, (i % 5) - 2.0};
    // Defining integral: the flat part below r = 1 is exactly 1/s
    // (elementary antiderivative), the rest is numeric.
    auto f = [&](double r) {
      return rse::analytic::mellin_phi(r, kernel) *
             std::pow(Complex{r, 0.0}, s - 1.0);
    };
    auto fre = [&](double r) { return f(r).real(); };
    auto fim = [&](double r) { return f(r).imag(); };
    double top = kernel.x + kernel.y;
    Complex quad = 1.0 / s;
    quad += Complex{rse::analytic::integrate_real(fre, 1.0, top, 1e-12),
                    rse::analytic::integrate_real(fim, 1.0, top, 1e-12)};
    Complex closed = rse::analytic::mellin_phi_hat(s, kernel);
    worst = std::max(worst, std::abs(quad - closed));
  }
  // phi_hat(1) = x + y/2.
  worst = std::max(
      worst, std::abs(rse::analytic::mellin_phi_hat(1.0, kernel) - 8.5));
  r.margin = worst;
  r.pass = worst <= 1e-10;
  r.detail = "worst |closed form - quadrature| over 20 sample points";
  return r;
}

CheckResult check_orthogonality(std::uint64_t limit, double tol) {
  CheckResult r{"orthogonality", true, 0.0, ""};
  auto delta = AutomorphicRep::delta(limit);
  RSPair pair{delta, delta};
  auto stream = rse::rankin_selberg::rs_stream(pair, limit);
  rse::analytic::SmoothingKernel kernel(limit / 2.0, limit / 2.0);
  double worst = 0.0;
  for (std::uint64_t q : {3, 5, 8}) {
    for (std::uint64_t a = 1; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      auto dec = rse::prime_counting::orthogonality_decomposition(
          pair, stream, double(limit), q, a, kernel);
      worst = std::max(worst, dec.difference / dec.scale);
    }
  }
  r.margin = worst;
  r.pass = worst <= tol;
  r.detail = "worst relative two-route difference, q in {3,5,8}";
  return r;
}

CheckResult check_ramified(std::uint64_t limit) {
  CheckResult r{"ramified", true, -1e300, ""};
  auto delta = AutomorphicRep::delta(2 * limit + 2);
  RSPair pair{delta, delta};
  for (auto& psi : rse::characters::characters_mod(8)) {
    if (psi.conductor() != 4) continue;
    auto rc =
        rse::prime_counting::ramified_correction(pair, psi, double(limit));
    r.margin = std::max(r.margin, std::abs(rc.exact_difference) - rc.bound);
  }
  r.pass = r.margin <= 0.0;
  r.detail = "worst |exact difference| - bound, induced characters mod 8";
  return r;
}

int cmd_verify(const VerifyConfig& cfg) {
  std::vector<CheckResult> results;
  auto want = [&](const std::string& name) {
    return cfg.only.empty() || cfg.only == name;
  };
  if (want("nonneg")) results.push_back(check_nonneg(cfg.limit, cfg.tol));
  if (want("decoupling"))
    results.push_back(check_decoupling(cfg.limit, cfg.tol));
  if (want("grc")) results.push_back(check_local_bounds(cfg.limit, cfg.file));
  if (want("residue")) results.push_back(check_residue(cfg.tol));
  if (want("mellin")) results.push_back(check_mellin());
  if (want("orthogonality"))
    results.push_back(check_orthogonality(cfg.limit, cfg.tol));
  if (want("ramified")) results.push_back(check_ramified(cfg.limit / 2));
  if (results.empty())
    throw std::domain_error("--only '" + cfg.only + "' matches no suite");

  bool all_pass = true;
  nlohmann::json report = nlohmann::json::array();
  for (auto& r : results) {
    all_pass = all_pass && r.pass;
    report.push_back({{"name", r.name},
                      {"pass", r.pass},
                      {"margin", r.margin},
                      {"detail", r.detail}});
  }
  Output out(cfg.out);
  out.get() << nlohmann::json{{"checks", report}, {"all_pass", all_pass}}
                   .dump(2)
            << "\n";
  return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// sw
// ---------------------------------------------------------------------------

struct SWConfig {
  std::string pair = "delta,delta";
  std::uint64_t q = 0;
  std::string x_grid = "1e4";
  double A = 10.0;
  std::string out;
  std::string format = "csv";
};

int cmd_sw(const SWConfig& cfg) {
  if (cfg.q < 1) throw std::domain_error("--q must be >= 1");
  auto grid = parse_grid(cfg.x_grid);
  double xmax = *std::max_element(grid.begin(), grid.end());
  auto limit = static_cast<std::uint64_t>(std::ceil(xmax));

  RSPair pair = parse_pair(cfg.pair, limit);
  auto stream = rse::rankin_selberg::rs_stream(pair, limit);
  auto exp =
      rse::prime_counting::sw_experiment(pair, stream, grid, cfg.q, cfg.A);
  if (!exp.q_in_range)
    std::cerr << "warning: q exceeds (log max x)^A; running anyway\n";

  Output out(cfg.out);
  if (cfg.format == "json")
    rse::prime_counting::export_sw_json(exp, out.get());
  else
    rse::prime_counting::export_sw_csv(exp, out.get());
  return 0;
}

// ---------------------------------------------------------------------------
// siegel-trend
// ---------------------------------------------------------------------------

struct SiegelConfig {
  std::string pair = "delta,delta";
  std::string conductors;  // comma list; may be empty
  double x0 = 1000.0;
  std::uint64_t limit = 20000;
  std::string out;
};

int cmd_siegel_trend(const SiegelConfig& cfg) {
  // Convergent-side demo only: |L| is proxied at sigma slightly right of 1,
  // via exp(sum Lambda(n) / (log n * n^sigma)) over the stream.
  Output out(cfg.out);
  out.get() << "conductor,c_chi,sigma,l_proxy,q_value\n";
  out.get().precision(17);
  if (cfg.conductors.empty()) return 0;

  RSPair base = parse_pair(cfg.pair, cfg.limit);
  for (std::uint64_t f : parse_u64_list(cfg.conductors)) {
    DirichletCharacter chi(1);
    bool found = false;
    for (auto& c : rse::characters::characters_mod(f)) {
      if (c.order() == 2 && c.is_primitive()) {
        chi = c;
        found = true;
        break;
      }
    }
    if (!found)
      throw std::domain_error("no primitive quadratic character mod " +
                              std::to_string(f));
    double c_chi = AutomorphicRep::gl1(chi).analytic_conductor();
    double sigma = 1.0 + 1.0 / std::log(c_chi * cfg.x0);
    auto twisted = rse::rankin_selberg::twisted_pair(base, chi);
    auto stream = rse::rankin_selberg::rs_stream(twisted, cfg.limit);
    Complex logL = 0.0;
    for (std::uint64_t n = 2; n <= stream.limit; ++n) {
      if (stream.biglambda[n] == Complex{0.0, 0.0}) continue;
      logL += stream.biglambda[n] /
              (std::log(double(n)) * std::pow(double(n), sigma));
    }
    double proxy = std::exp(logL.real());
    double Q = rse::rankin_selberg::conductor_Q(base.left, base.right, chi);
    out.get() << f << "," << c_chi << "," << sigma << "," << proxy << "," << Q
              << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rankin-Selberg coefficient and prime-counting toolkit"};
  app.require_subcommand(1);

  unsigned threads = 1;
  app.add_option("--threads", threads, "worker thread budget")
      ->check(CLI::Range(1u, 256u));

  CoeffsConfig cc;
  auto* coeffs = app.add_subcommand("coeffs", "export coefficient streams");
  coeffs->add_option("--pair", cc.pair, "left,right object specifiers");
  coeffs->add_option("--limit", cc.limit)->check(CLI::PositiveNumber);
  coeffs->add_option("--twist-chi", cc.twist_chi, "q:index twist");
  coeffs->add_option("--twist-t", cc.twist_t, "|det|^{it} twist");
  coeffs->add_option("--out", cc.out);
  coeffs->add_option("--format", cc.format)
      ->check(CLI::IsMember({"csv", "json"}));

  VerifyConfig vc;
  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  verify->add_option("--limit", vc.limit)->check(CLI::PositiveNumber);
  verify->add_option("--only", vc.only,
                     "nonneg|decoupling|grc|residue|mellin|orthogonality|"
                     "ramified");
  verify->add_option("--file", vc.file, "ingestion file for the grc suite");
  verify->add_option("--tol", vc.tol)->check(CLI::PositiveNumber);
  verify->add_option("--out", vc.out);

  SWConfig sc;
  auto* sw = app.add_subcommand("sw", "arithmetic-progression experiment");
  sw->add_option("--pair", sc.pair);
  sw->add_option("--q", sc.q)->required();
  sw->add_option("--x", sc.x_grid, "comma-separated x grid");
  sw->add_option("--A", sc.A);
  sw->add_option("--out", sc.out);
  sw->add_option("--format", sc.format)->check(CLI::IsMember({"csv", "json"}));

  SiegelConfig gc;
  auto* siegel =
      app.add_subcommand("siegel-trend", "near-1 L-value table (demo)");
  siegel->add_option("--pair", gc.pair);
  siegel->add_option("--conductors", gc.conductors,
                     "comma-separated quadratic conductors");
  siegel->add_option("--x0", gc.x0)->check(CLI::PositiveNumber);
  siegel->add_option("--limit", gc.limit)->check(CLI::PositiveNumber);
  siegel->add_option("--out", gc.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  (void)threads;  // library-level parallelism is budgeted internally

  try {
    if (coeffs->parsed()) return cmd_coeffs(cc);
    if (verify->parsed()) return cmd_verify(vc);
    if (sw->parsed()) return cmd_sw(sc);
    if (siegel->parsed()) return cmd_siegel_trend(gc);
  } catch (const rse::automorphic::InsufficientDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const rse::analytic::InsufficientXError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
