#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "rse/rankin_selberg.hpp"

// Complex-analytic toolkit: Gamma functions, Dirichlet-series evaluation for
// Re(s) > 1, exponentially smoothed sums, the Mellin pair of the
// prime-counting pipeline, vertical-line quadrature, and the residue
// extractor for poles of even order.
namespace rse::analytic {

using Complex = std::complex<double>;
using rankin_selberg::CoefficientStream;

/// Finitely many normalized Taylor coefficients f^(l)(s0)/l! of a holomorphic
/// function at a base point. Products and sums truncate at the minimum
/// declared order of the operands.
class TaylorJet {
 public:
  TaylorJet(Complex base_point, std::vector<Complex> coefficients)
      : base_(base_point), coeff_(std::move(coefficients)) {
    if (coeff_.empty()) throw std::invalid_argument("TaylorJet: order >= 0");
  }

  static TaylorJet constant(Complex base_point, Complex value,
                            std::size_t order);

  Complex base_point() const { return base_; }
  std::size_t order() const { return coeff_.size() - 1; }
  const Complex& operator[](std::size_t i) const { return coeff_[i]; }

  TaylorJet operator*(const TaylorJet& rhs) const;
  TaylorJet operator+(const TaylorJet& rhs) const;
  TaylorJet pow(unsigned k) const;

 private:
  Complex base_;
  std::vector<Complex> coeff_;
};

/// The piecewise-linear Mellin kernel: 1 on (0, x], linear ramp down on
/// (x, x+y], 0 beyond. Requires 0 < y <= x.
struct SmoothingKernel {
  double x = 1.0;
  double y = 1.0;
  SmoothingKernel(double x_, double y_) : x(x_), y(y_) {
    if (!(x > 0.0) || !(y > 0.0) || y > x)
      throw std::domain_error("SmoothingKernel: need 0 < y <= x");
  }
};

/// Gamma(s) by Lanczos approximation with reflection for Re(s) < 1/2.
/// Throws std::domain_error at nonpositive integers.
Complex complex_gamma(Complex s);

enum class PlaceType { Real, Complex };

/// Gamma_v: pi^{-s/2} Gamma(s/2) at a real place, 2 (2 pi)^{-s} Gamma(s) at a
/// complex place.
Complex gamma_v(Complex s, PlaceType type);

struct DirichletEvalResult {
  Complex value;       // partial sum over the stream
  double tail_bound;   // certified bound on the dropped tail
};

/// Thrown when a stream is too short for the requested evaluation.
class InsufficientXError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Sum_{n <= X} lambda(n) n^{-s} with a certified tail estimate from the
/// measured coefficient growth. Throws InsufficientXError when the tail
/// bound cannot be brought below tol (in particular for Re(s) <= 1).
DirichletEvalResult dirichlet_eval(const CoefficientStream& stream, Complex s,
                                   double tol = 1e-6);

/// Sum_{n <= X} lambda(n) n^{-beta} e^{-n/x}. Requires stream limit >= 50 x.
Complex smoothed_sum(const CoefficientStream& stream, double beta, double x);

/// The kernel evaluated at r > 0.
double mellin_phi(double r, const SmoothingKernel& kernel);

/// Closed-form Mellin transform ((x+y)^{s+1} - x^{s+1}) / (y (s^2+s)),
/// continued through the removable points s in {0, -1} by a local expansion.
Complex mellin_phi_hat(Complex s, const SmoothingKernel& kernel);

/// Res_{s=s0} (f g)^k h / (s-s0)^{2k}: the coefficient of (s-s0)^{2k-1} in
/// (f g)^k h, computed as a truncated-series convolution of the jets.
/// All jets must share the base point and have order >= 2k-1.
Complex residue_extract(const TaylorJet& f, const TaylorJet& g,
                        const TaylorJet& h, unsigned k);

struct QuadratureResult {
  Complex value;
  double error_estimate;
  bool converged = true;
};

/// Thrown when adaptive quadrature cannot reach the tolerance in budget.
class QuadratureError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// (1/(2 pi i)) * integral over the segment [sigma - iT, sigma + iT] of
/// integrand(s) ds, by adaptive Gauss-Kronrod on dyadic panels in t.
QuadratureResult integrate_vertical(
    const std::function<Complex(Complex)>& integrand, double sigma,
    double half_height, double tol = 1e-10);

/// Adaptive Gauss-Kronrod on a real interval (helper, also used by the
/// Mellin-pair verification).
double integrate_real(const std::function<double(double)>& f, double a,
                      double b, double tol = 1e-12);

}  // namespace rse::analytic
