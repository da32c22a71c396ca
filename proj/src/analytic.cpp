#include "rse/analytic.hpp"

#include <algorithm>
#include <cmath>

namespace rse::analytic {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

// ---------------------------------------------------------------------------
// Taylor jets
// ---------------------------------------------------------------------------

TaylorJet TaylorJet::constant(Complex base_point, Complex value,
                              std::size_t order) {
  std::vector<Complex> c(order + 1, Complex{0.0, 0.0});
  c[0] = value;
  return TaylorJet(base_point, std::move(c));
}

TaylorJet TaylorJet::operator*(const TaylorJet& rhs) const {
  if (base_ != rhs.base_)
    throw std::invalid_argument("TaylorJet: base points differ");
  std::size_t ord = std::min(order(), rhs.order());
  std::vector<Complex> out(ord + 1, Complex{0.0, 0.0});
  for (std::size_t i = 0; i <= ord; ++i)
    for (std::size_t j = 0; i + j <= ord; ++j) out[i + j] += coeff_[i] * rhs[j];
  return TaylorJet(base_, std::move(out));
}

TaylorJet TaylorJet::operator+(const TaylorJet& rhs) const {
  if (base_ != rhs.base_)
    throw std::invalid_argument("TaylorJet: base points differ");
  std::size_t ord = std::min(order(), rhs.order());
  std::vector<Complex> out(ord + 1);
  for (std::size_t i = 0; i <= ord; ++i) out[i] = coeff_[i] + rhs[i];
  return TaylorJet(base_, std::move(out));
}

TaylorJet TaylorJet::pow(unsigned k) const {
  TaylorJet acc = TaylorJet::constant(base_, 1.0, order());
  for (unsigned i = 0; i < k; ++i) acc = acc * *this;
  return acc;
}

// ---------------------------------------------------------------------------
// Gamma
// ---------------------------------------------------------------------------

Complex complex_gamma(Complex s) {
  // Lanczos, g = 7, 9 terms.
  static const double kCoeff[] = {
      0.99999999999980993,     676.5203681218851,    -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,  12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

  if (s.imag() == 0.0 && s.real() <= 0.0 &&
      s.real() == std::floor(s.real()))
    throw std::domain_error("complex_gamma: pole at nonpositive integer");

  if (s.real() < 0.5) {
    // Reflection: Gamma(s) = pi / (sin(pi s) Gamma(1 - s)).
    return kPi / (std::sin(kPi * s) * complex_gamma(1.0 - s));
  }
  Complex z = s - 1.0;
  Complex a = kCoeff[0];
  for (int i = 1; i < 9; ++i) a += kCoeff[i] / (z + double(i));
  Complex t = z + 7.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

Complex gamma_v(Complex s, PlaceType type) {
  if (type == PlaceType::Real)
    return std::pow(kPi, -s / 2.0) * complex_gamma(s / 2.0);
  return 2.0 * std::pow(2.0 * kPi, -s) * complex_gamma(s);
}

// ---------------------------------------------------------------------------
// Series evaluation
// ---------------------------------------------------------------------------

DirichletEvalResult dirichlet_eval(const CoefficientStream& stream, Complex s,
                                   double tol) {
  const std::uint64_t X = stream.limit;
  const double sigma = s.real();

  // Measured coefficient growth over the top half of the stream; the tail is
  // then bounded by sum_{n > X} n^{g - sigma}.
  double g = 0.0;
  for (std::uint64_t n = std::max<std::uint64_t>(2, X / 2); n <= X; ++n) {
    double a = std::abs(stream.lambda[n]);
    if (a > 1.0) g = std::max(g, std::log(a) / std::log(double(n)));
  }
  double tail = 1e300;
  if (sigma > g + 1.0)
    tail = std::pow(double(X), g - sigma + 1.0) / (sigma - g - 1.0);
  if (tail > tol)
    throw InsufficientXError(
        "dirichlet_eval: tail bound " + std::to_string(tail) +
        " exceeds tolerance at Re(s) = " + std::to_string(sigma));

  Complex sum = 0.0;
  for (std::uint64_t n = X; n >= 1; --n)
    sum += stream.lambda[n] * std::exp(-s * std::log(double(n)));
  return {sum, tail};
}

Complex smoothed_sum(const CoefficientStream& stream, double beta, double x) {
  if (double(stream.limit) < 50.0 * x)
    throw InsufficientXError(
        "smoothed_sum: stream limit must be >= 50 x (dropped tail would "
        "matter)");
  Complex sum = 0.0;
  for (std::uint64_t n = stream.limit; n >= 1; --n) {
    double w = std::exp(-double(n) / x);
    if (w == 0.0) continue;
    sum += stream.lambda[n] * std::pow(double(n), -beta) * w;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Mellin pair
// ---------------------------------------------------------------------------

double mellin_phi(double r, const SmoothingKernel& kernel) {
  if (r <= 0.0) throw std::domain_error("mellin_phi: r must be positive");
  if (r <= kernel.x) return 1.0;
  if (r <= kernel.x + kernel.y) return (kernel.x + kernel.y - r) / kernel.y;
  return 0.0;
}

Complex mellin_phi_hat(Complex s, const SmoothingKernel& kernel) {
  const double x = kernel.x, y = kernel.y;
  Complex denom = s * s + s;
  if (std::abs(denom) >= 1e-4) {
    Complex num = std::pow(x + y, s + 1.0) - std::pow(x, s + 1.0);
    return num / (y * denom);
  }
  // Near a removable cancellation at s = 0 or s = -1: expand the numerator
  // locally (4 terms) and divide out the vanishing linear factor by hand.
  const double lx = std::log(x), lxy = std::log(x + y);
  if (std::abs(s) < std::abs(s + 1.0)) {
    // Around s = 0: numerator = sum_m c_m s^m with c_0 = y.
    // phi_hat = (c_0/s + c_1 + c_2 s + c_3 s^2) / (y (s + 1)).
    double c0 = y;
    double fac = 1.0;
    Complex series = 0.0;
    double pxy = x + y, px = x;
    // c_m = ((x+y) lxy^m - x lx^m) / m!
    Complex spow = 1.0;
    for (int m = 1; m <= 3; ++m) {
      fac *= m;
      double cm = (pxy * std::pow(lxy, m) - px * std::pow(lx, m)) / fac;
      series += cm * spow;
      spow *= s;
    }
    return (c0 / s + series) / (y * (s + 1.0));
  }
  // Around s = -1: with u = s + 1, numerator = sum_{m>=1} u^m (lxy^m - lx^m)/m!.
  Complex u = s + 1.0;
  double fac = 1.0;
  Complex series = 0.0;
  Complex upow = 1.0;
  for (int m = 1; m <= 4; ++m) {
    fac *= m;
    double cm = (std::pow(lxy, m) - std::pow(lx, m)) / fac;
    series += cm * upow;
    upow *= u;
  }
  return series / (y * (u - 1.0));
}

// ---------------------------------------------------------------------------
// Residue extraction
// ---------------------------------------------------------------------------

Complex residue_extract(const TaylorJet& f, const TaylorJet& g,
                        const TaylorJet& h, unsigned k) {
  if (k < 1) throw std::invalid_argument("residue_extract: k must be >= 1");
  if (f.base_point() != g.base_point() || f.base_point() != h.base_point())
    throw std::invalid_argument("residue_extract: jets must share base point");
  const std::size_t need = 2 * k - 1;
  if (f.order() < need || g.order() < need || h.order() < need)
    throw std::invalid_argument(
        "residue_extract: jet order must be >= 2k - 1");
  TaylorJet prod = (f * g).pow(k) * h;
  return prod[need];
}

// ---------------------------------------------------------------------------
// Quadrature (adaptive Gauss-Kronrod 7-15)
// ---------------------------------------------------------------------------

namespace {

// Positive Kronrod abscissae and weights; Gauss-7 is embedded at the odd
// indices.
const double kKX[8] = {0.991455371120813, 0.949107912342759,
                       0.864864423359769, 0.741531185599394,
                       0.586087235467691, 0.405845151377397,
                       0.207784955007898, 0.0};
const double kKW[8] = {0.022935322010529, 0.063092092629979,
                       0.104790010322250, 0.140653259715525,
                       0.169004726639267, 0.190350578064785,
                       0.204432940075298, 0.209482141084728};
const double kGW[4] = {0.129484966168870, 0.279705391489277,
                       0.381830050505119, 0.417959183673469};

template <typename F>
void gk15(const F& f, double a, double b, Complex& kres, double& err,
          double& resabs) {
  const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
  Complex resk = 0.0, resg = 0.0;
  double rabs = 0.0;
  for (int i = 0; i < 8; ++i) {
    Complex fv;
    if (i == 7) {
      fv = f(c);
      resk += kKW[i] * fv;
      resg += kGW[3] * fv;
      rabs += kKW[i] * std::abs(fv);
    } else {
      Complex f1 = f(c - hw * kKX[i]);
      Complex f2 = f(c + hw * kKX[i]);
      resk += kKW[i] * (f1 + f2);
      rabs += kKW[i] * (std::abs(f1) + std::abs(f2));
      if (i % 2 == 1) resg += kGW[i / 2] * (f1 + f2);
    }
  }
  kres = resk * hw;
  err = std::abs((resk - resg) * hw);
  resabs = rabs * hw;
}

template <typename F>
Complex adaptive(const F& f, double a, double b, double tol, int depth,
                 bool& ok) {
  Complex v;
  double err, resabs;
  gk15(f, a, b, v, err, resabs);
  // Stop on the requested budget or at the rounding floor of the panel:
  // below ~50 eps * integral(|f|) the estimate is pure noise.
  double floor_err = 1e-14 * resabs;
  if (err <= std::max(tol, floor_err) || depth >= 40) {
    if (err > std::max(tol * 16.0, floor_err) && depth >= 40) ok = false;
    return v;
  }
  double m = 0.5 * (a + b);
  return adaptive(f, a, m, tol * 0.5, depth + 1, ok) +
         adaptive(f, m, b, tol * 0.5, depth + 1, ok);
}

}  // namespace

QuadratureResult integrate_vertical(
    const std::function<Complex(Complex)>& integrand, double sigma,
    double half_height, double tol) {
  auto f = [&](double t) { return integrand(Complex{sigma, t}); };

  // Dyadic panel boundaries concentrated near t = 0, where Gamma-type
  // integrands carry their mass.
  std::vector<double> cuts{0.0};
  for (double t = std::min(1.0, half_height); t < half_height; t *= 2.0)
    cuts.push_back(t);
  cuts.push_back(half_height);

  bool ok = true;
  Complex total = 0.0;
  double per_panel = tol / double(2 * cuts.size());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += adaptive(f, cuts[i], cuts[i + 1], per_panel, 0, ok);
    total += adaptive(f, -cuts[i + 1], -cuts[i], per_panel, 0, ok);
  }
  if (!ok)
    throw QuadratureError(
        "integrate_vertical: requested tolerance not reached within the "
        "subdivision budget");
  // (1/(2 pi i)) * integral f(sigma + it) i dt.
  return {total / (2.0 * kPi), tol, true};
}

double integrate_real(const std::function<double(double)>& f, double a,
                      double b, double tol) {
  auto wrap = [&](double t) { return Complex{f(t), 0.0}; };
  bool ok = true;
  Complex v = adaptive(wrap, a, b, tol, 0, ok);
  if (!ok)
    throw QuadratureError("integrate_real: tolerance not reached");
  return v.real();
}

}  // namespace rse::analytic
