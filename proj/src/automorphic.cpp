#include "rse/automorphic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>

#include "rse/arith.hpp"

namespace rse::automorphic {

double theta_for_degree(int n) {
  return 0.5 - 1.0 / (double(n) * n + 1.0);
}

// ---------------------------------------------------------------------------
// Delta eigenvalue table
// ---------------------------------------------------------------------------

const std::unordered_map<std::uint64_t, double>& delta_lambda_table(
    std::uint64_t limit) {
  static std::mutex mu;
  static std::uint64_t cached_limit = 0;
  static std::unordered_map<std::uint64_t, double> table;
  std::lock_guard<std::mutex> lock(mu);
  if (limit > cached_limit) {
    auto tau = arith::ramanujan_tau(limit);
    table.clear();
    for (std::uint64_t p : arith::sieve_primes(limit)) {
      double t = tau[p - 1].convert_to<double>();
      table[p] = t / std::pow(double(p), 5.5);
    }
    cached_limit = limit;
  }
  return table;
}

// ---------------------------------------------------------------------------
// Representation data
// ---------------------------------------------------------------------------

struct AutomorphicRep::Data {
  enum class Kind { GL1, Newform, Generic, Isobaric } kind = Kind::GL1;

  // GL1: the character itself (twists folded in).
  std::optional<characters::DirichletCharacter> chi;

  // Newform.
  int weight = 0;
  std::uint64_t level = 1;
  std::shared_ptr<const std::unordered_map<std::uint64_t, double>> eigen;

  // Generic.
  int degree = 1;
  std::uint64_t conductor = 1;
  ArchimedeanParameters arch;
  std::shared_ptr<const std::unordered_map<std::uint64_t, std::vector<Complex>>>
      table;
  bool conjugated = false;

  std::uint64_t prime_limit = 0;

  // Character twist for Newform/Generic (modulus 1 = untwisted).
  characters::DirichletCharacter twist_chi{1};

  // Isobaric.
  std::vector<AutomorphicRep> comps;
};

namespace {

std::vector<Complex> newform_local_roots(double lam) {
  // Roots of X^2 - lam X + 1 = 0.
  double disc = lam * lam - 4.0;
  if (disc <= 0.0) {
    double im = std::sqrt(-disc) / 2.0;
    return {{lam / 2.0, im}, {lam / 2.0, -im}};
  }
  double r = std::sqrt(disc) / 2.0;
  return {{lam / 2.0 + r, 0.0}, {lam / 2.0 - r, 0.0}};
}

std::string chi_name(const characters::DirichletCharacter& chi) {
  std::ostringstream os;
  os << "chi[q=" << chi.modulus() << "]";
  return os.str();
}

}  // namespace

AutomorphicRep AutomorphicRep::trivial() {
  return gl1(characters::DirichletCharacter(1));
}

AutomorphicRep AutomorphicRep::gl1(characters::DirichletCharacter chi) {
  auto d = std::make_shared<Data>();
  d->kind = Data::Kind::GL1;
  d->chi = std::move(chi);
  d->degree = 1;
  d->prime_limit = UINT64_MAX;
  return AutomorphicRep(std::move(d), 0.0);
}

AutomorphicRep AutomorphicRep::delta(std::uint64_t prime_limit) {
  auto d = std::make_shared<Data>();
  d->kind = Data::Kind::Newform;
  d->weight = 12;
  d->level = 1;
  d->degree = 2;
  d->eigen = std::make_shared<const std::unordered_map<std::uint64_t, double>>(
      delta_lambda_table(prime_limit));
  d->prime_limit = prime_limit;
  // Gamma_C(s + 11/2) stored as the Gamma_R pair {11/2, 13/2}.
  d->arch.mu = {{5.5, 0.0}, {6.5, 0.0}};
  d->arch.kinds = {GammaKind::Real, GammaKind::Real};
  return AutomorphicRep(std::move(d), 0.0);
}

AutomorphicRep AutomorphicRep::generic(
    int degree, std::uint64_t conductor, ArchimedeanParameters arch,
    std::unordered_map<std::uint64_t, std::vector<Complex>> table,
    std::uint64_t prime_limit) {
  auto d = std::make_shared<Data>();
  d->kind = Data::Kind::Generic;
  d->degree = degree;
  d->conductor = conductor;
  d->arch = std::move(arch);
  d->table = std::make_shared<
      const std::unordered_map<std::uint64_t, std::vector<Complex>>>(
      std::move(table));
  d->prime_limit = prime_limit;
  return AutomorphicRep(std::move(d), 0.0);
}

AutomorphicRep AutomorphicRep::isobaric(std::vector<AutomorphicRep> components) {
  if (components.empty())
    throw std::invalid_argument("isobaric: need at least one component");
  auto d = std::make_shared<Data>();
  d->kind = Data::Kind::Isobaric;
  d->comps = std::move(components);
  return AutomorphicRep(std::move(d), 0.0);
}

int AutomorphicRep::degree() const {
  if (data_->kind == Data::Kind::Isobaric) {
    int n = 0;
    for (auto& c : data_->comps) n += c.degree();
    return n;
  }
  if (data_->kind == Data::Kind::Newform) return 2;
  return data_->degree;
}

std::uint64_t AutomorphicRep::conductor() const {
  switch (data_->kind) {
    case Data::Kind::GL1:
      return data_->chi->conductor();
    case Data::Kind::Newform: {
      // Stand-in for the twisted conductor: level * f^degree.
      std::uint64_t f = data_->twist_chi.conductor();
      return data_->level * f * f;
    }
    case Data::Kind::Generic: {
      std::uint64_t f = data_->twist_chi.conductor();
      std::uint64_t c = data_->conductor;
      for (int i = 0; i < data_->degree; ++i) c *= f;
      return c;
    }
    case Data::Kind::Isobaric: {
      std::uint64_t c = 1;
      for (auto& comp : data_->comps) c *= comp.conductor();
      return c;
    }
  }
  return 1;
}

std::uint64_t AutomorphicRep::prime_limit() const {
  if (data_->kind == Data::Kind::Isobaric) {
    std::uint64_t lim = UINT64_MAX;
    for (auto& c : data_->comps) lim = std::min(lim, c.prime_limit());
    return lim;
  }
  return data_->prime_limit;
}

double AutomorphicRep::theta_bound() const {
  switch (data_->kind) {
    case Data::Kind::GL1:
    case Data::Kind::Newform:
      return 0.0;  // unitary GL1 / holomorphic newform
    case Data::Kind::Generic:
      return theta_for_degree(data_->degree);
    case Data::Kind::Isobaric: {
      double th = 0.0;
      for (auto& c : data_->comps) th = std::max(th, c.theta_bound());
      return th;
    }
  }
  return 0.0;
}

bool AutomorphicRep::is_isobaric() const {
  return data_->kind == Data::Kind::Isobaric;
}

const std::vector<AutomorphicRep>& AutomorphicRep::components() const {
  if (data_->kind != Data::Kind::Isobaric)
    throw std::logic_error("components: not an isobaric sum");
  return data_->comps;
}

SatakeParameters AutomorphicRep::satake_at(std::uint64_t p) const {
  SatakeParameters out;
  out.prime = p;
  out.theta_bound = theta_bound();

  if (data_->kind == Data::Kind::Isobaric) {
    for (auto& c : data_->comps) {
      auto sub = c.satake_at(p);
      out.values.insert(out.values.end(), sub.values.begin(), sub.values.end());
    }
  } else {
    switch (data_->kind) {
      case Data::Kind::GL1:
        out.values = {(*data_->chi)(static_cast<std::int64_t>(p)).value()};
        break;
      case Data::Kind::Newform: {
        if (p > data_->prime_limit)
          throw InsufficientDataError(
              "satake_at: newform eigenvalue table ends before p=" +
                  std::to_string(p),
              p);
        auto it = data_->eigen->find(p);
        if (it == data_->eigen->end())
          throw InsufficientDataError(
              "satake_at: missing eigenvalue at p=" + std::to_string(p), p);
        if (data_->level % p == 0)
          out.values = {{it->second, 0.0}, {0.0, 0.0}};
        else
          out.values = newform_local_roots(it->second);
        break;
      }
      case Data::Kind::Generic: {
        if (p > data_->prime_limit)
          throw InsufficientDataError(
              "satake_at: parameter table ends before p=" + std::to_string(p),
              p);
        auto it = data_->table->find(p);
        if (it == data_->table->end())
          throw InsufficientDataError(
              "satake_at: missing parameters at p=" + std::to_string(p), p);
        out.values = it->second;
        out.values.resize(data_->degree, Complex{0.0, 0.0});
        if (data_->conjugated)
          for (auto& v : out.values) v = std::conj(v);
        break;
      }
      case Data::Kind::Isobaric:
        break;  // handled above
    }
    // Character twist (zero at primes dividing the twisting modulus).
    if (data_->twist_chi.modulus() > 1) {
      Complex c = data_->twist_chi(static_cast<std::int64_t>(p)).value();
      for (auto& v : out.values) v *= c;
    }
  }

  // Real twist |det|^{it}: scale by p^{-it}.
  if (twist_t_ != 0.0) {
    double a = -twist_t_ * std::log(double(p));
    Complex c{std::cos(a), std::sin(a)};
    for (auto& v : out.values) v *= c;
  }
  return out;
}

ArchimedeanParameters AutomorphicRep::archimedean() const {
  switch (data_->kind) {
    case Data::Kind::GL1: {
      // mu = 0 for even characters, 1 for odd.
      bool even = data_->chi->is_even();
      ArchimedeanParameters a;
      a.mu = {Complex{even ? 0.0 : 1.0, 0.0}};
      a.kinds = {GammaKind::Real};
      return a;
    }
    case Data::Kind::Newform:
    case Data::Kind::Generic: {
      ArchimedeanParameters a = data_->arch;
      if (data_->conjugated)
        for (auto& m : a.mu) m = std::conj(m);
      return a;
    }
    case Data::Kind::Isobaric: {
      ArchimedeanParameters a;
      for (auto& c : data_->comps) {
        auto sub = c.archimedean();
        a.mu.insert(a.mu.end(), sub.mu.begin(), sub.mu.end());
        a.kinds.insert(a.kinds.end(), sub.kinds.begin(), sub.kinds.end());
      }
      return a;
    }
  }
  return {};
}

AutomorphicRep AutomorphicRep::contragredient() const {
  if (data_->kind == Data::Kind::Isobaric) {
    std::vector<AutomorphicRep> comps;
    comps.reserve(data_->comps.size());
    for (auto& c : data_->comps) comps.push_back(c.contragredient());
    auto rep = isobaric(std::move(comps));
    return rep;
  }
  auto d = std::make_shared<Data>(*data_);
  if (d->kind == Data::Kind::GL1) {
    d->chi = d->chi->conj();
  } else {
    d->twist_chi = d->twist_chi.conj();
    if (d->kind == Data::Kind::Generic) d->conjugated = !d->conjugated;
    // Newform eigenvalues are real; the table is its own conjugate.
  }
  return AutomorphicRep(std::move(d), -twist_t_);
}

AutomorphicRep AutomorphicRep::twisted_by(
    const characters::DirichletCharacter& chi) const {
  if (data_->kind == Data::Kind::Isobaric) {
    std::vector<AutomorphicRep> comps;
    for (auto& c : data_->comps) comps.push_back(c.twisted_by(chi));
    auto rep = isobaric(std::move(comps));
    return AutomorphicRep(rep.data_, twist_t_);
  }
  auto d = std::make_shared<Data>(*data_);
  if (d->kind == Data::Kind::GL1)
    d->chi = *d->chi * chi;
  else
    d->twist_chi = d->twist_chi * chi;
  return AutomorphicRep(std::move(d), twist_t_);
}

AutomorphicRep AutomorphicRep::twisted_by(double t) const {
  return AutomorphicRep(data_, twist_t_ + t);
}

double AutomorphicRep::analytic_conductor(double t) const {
  auto arch = archimedean();
  if (arch.mu.empty())
    throw std::runtime_error("analytic_conductor: missing archimedean data");
  double c = double(conductor());
  double shift = t + twist_t_;
  for (std::size_t j = 0; j < arch.mu.size(); ++j) {
    double term = std::abs(arch.mu[j] + Complex{0.0, shift}) + 3.0;
    c *= (arch.kinds[j] == GammaKind::Complex) ? term * term : term;
  }
  return c;
}

std::string AutomorphicRep::name() const {
  std::ostringstream os;
  switch (data_->kind) {
    case Data::Kind::GL1:
      if (data_->chi->modulus() == 1)
        os << "trivial";
      else
        os << chi_name(*data_->chi);
      break;
    case Data::Kind::Newform:
      os << "delta";
      if (data_->twist_chi.modulus() > 1)
        os << "*" << chi_name(data_->twist_chi);
      break;
    case Data::Kind::Generic:
      os << "gl" << data_->degree << "[N=" << data_->conductor << "]";
      if (data_->conjugated) os << "~";
      if (data_->twist_chi.modulus() > 1)
        os << "*" << chi_name(data_->twist_chi);
      break;
    case Data::Kind::Isobaric: {
      bool first = true;
      for (auto& c : data_->comps) {
        if (!first) os << "+";
        os << c.name();
        first = false;
      }
      break;
    }
  }
  if (twist_t_ != 0.0) os << "|t=" << twist_t_;
  return os.str();
}

bool AutomorphicRep::same_satake(const AutomorphicRep& other,
                                 std::uint64_t limit, double tol) const {
  if (degree() != other.degree()) return false;
  auto primes = arith::sieve_primes(limit);
  for (std::uint64_t p : primes) {
    auto a = satake_at(p).values;
    auto b = other.satake_at(p).values;
    auto key = [](const Complex& z1, const Complex& z2) {
      if (z1.real() != z2.real()) return z1.real() < z2.real();
      return z1.imag() < z2.imag();
    };
    std::sort(a.begin(), a.end(), key);
    std::sort(b.begin(), b.end(), key);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (std::abs(a[i] - b[i]) > tol) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Ingestion format
// ---------------------------------------------------------------------------

namespace {

Complex parse_complex(const std::string& tok) {
  // re+imj / re-imj / re (imaginary part optional).
  if (tok.empty()) throw std::invalid_argument("empty complex token");
  if (tok.back() != 'j') return Complex{std::stod(tok), 0.0};
  std::string body = tok.substr(0, tok.size() - 1);
  // Split at the last sign that is not an exponent sign or leading.
  for (std::size_t i = body.size(); i-- > 1;) {
    char c = body[i];
    if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      double re = std::stod(body.substr(0, i));
      std::string ims = body.substr(i);
      double im = (ims == "+" || ims == "-") ? (ims == "+" ? 1.0 : -1.0)
                                             : std::stod(ims);
      return Complex{re, im};
    }
  }
  // Pure imaginary.
  return Complex{0.0, std::stod(body)};
}

std::string format_complex(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "j";
  return os.str();
}

}  // namespace

AutomorphicRep AutomorphicRep::from_stream(std::istream& in) {
  int degree = 0;
  std::uint64_t conductor = 0;
  ArchimedeanParameters arch;
  std::unordered_map<std::uint64_t, std::vector<Complex>> table;
  std::uint64_t max_p = 0;

  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "degree") {
      ls >> degree;
    } else if (head == "conductor") {
      ls >> conductor;
    } else if (head == "archimedean") {
      std::string tok;
      while (ls >> tok) {
        arch.mu.push_back(parse_complex(tok));
        arch.kinds.push_back(GammaKind::Real);
      }
    } else {
      std::uint64_t p = std::stoull(head);
      std::vector<Complex> vals;
      std::string tok;
      while (ls >> tok) vals.push_back(parse_complex(tok));
      table[p] = std::move(vals);
      max_p = std::max(max_p, p);
    }
  }
  if (degree <= 0 || conductor == 0)
    throw std::invalid_argument("ingestion file: missing degree or conductor");
  if (static_cast<int>(arch.mu.size()) != degree)
    throw std::invalid_argument(
        "ingestion file: archimedean count must equal degree");
  return generic(degree, conductor, std::move(arch), std::move(table), max_p);
}

AutomorphicRep AutomorphicRep::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open ingestion file: " + path);
  return from_stream(in);
}

void write_satake_file(const AutomorphicRep& rep, std::ostream& out,
                       std::uint64_t prime_limit) {
  out << "degree " << rep.degree() << "\n";
  out << "conductor " << rep.conductor() << "\n";
  out << "archimedean";
  for (auto& m : rep.archimedean().mu) out << " " << format_complex(m);
  out << "\n";
  for (std::uint64_t p : arith::sieve_primes(prime_limit)) {
    out << p;
    for (auto& v : rep.satake_at(p).values) out << " " << format_complex(v);
    out << "\n";
  }
}

}  // namespace rse::automorphic
