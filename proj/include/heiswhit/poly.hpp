#pragma once

#include <initializer_list>
#include <span>
#include <vector>

namespace heiswhit {

/// Closed real interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double lo_, double hi_);

  double length() const { return hi - lo; }
};

/**
 * Dense univariate polynomial with double coefficients in ascending order.
 *
 * The variable is whatever the caller says it is: most of the library keeps
 * polynomials in a local coordinate (x - origin) to stay well conditioned on
 * short intervals. Trailing coefficients with |c| < 1e-14 * max|c| are trimmed
 * on construction and after every arithmetic operation, so degree() never
 * reports spurious growth after cancellation. The zero polynomial has no
 * coefficients and degree -1.
 */
class Poly {
 public:
  Poly() = default;
  Poly(std::initializer_list<double> coeffs);
  explicit Poly(std::vector<double> coeffs);

  static Poly constant(double c);
  /// The monomial c * x^k.
  static Poly monomial(int k, double c = 1.0);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<double>& coeffs() const { return coeffs_; }
  /// Coefficient of x^k; zero past the degree.
  double coeff(int k) const;

  /// Horner evaluation.
  double operator()(double x) const;
  /// k-th derivative at x, without materializing the derivative polynomial.
  double derivative_at(double x, int k) const;

  Poly derivative() const;
  Poly derivative(int k) const;
  /// Antiderivative with zero constant term.
  Poly antiderivative() const;

  /// p(alpha * x + beta), expanded.
  Poly compose_affine(double alpha, double beta) const;

  Poly& operator+=(const Poly& q);
  Poly& operator-=(const Poly& q);
  Poly& operator*=(double s);

  friend Poly operator+(Poly p, const Poly& q) { return p += q; }
  friend Poly operator-(Poly p, const Poly& q) { return p -= q; }
  friend Poly operator-(Poly p) { return p *= -1.0; }
  friend Poly operator*(Poly p, double s) { return p *= s; }
  friend Poly operator*(double s, Poly p) { return p *= s; }
  friend Poly operator*(const Poly& p, const Poly& q);

  /// Sum of |c_k| * |x|^k; a magnitude bound used for rounding estimates.
  double magnitude_at(double x) const;

 private:
  void trim();
  std::vector<double> coeffs_;
};

enum class ArithKind { add, sub, mul, scale };
enum class CalculusKind { derivative, antiderivative };

/// Coefficientwise or convolution result. For `scale`, the scalar is q's
/// constant coefficient.
Poly arith(const Poly& p, const Poly& q, ArithKind kind);
Poly calculus(const Poly& p, CalculusKind kind);

/// Exact signed integral of p over [iv.lo, iv.hi].
double integrate(const Poly& p, const Interval& iv);

/// All real roots of p in iv, sorted, each located to within tol. Roots of
/// even multiplicity are found through the critical points of p. Throws
/// IdenticallyZero for the zero polynomial and NonConvergence if a bisection
/// exhausts its iteration budget.
std::vector<double> real_roots(const Poly& p, const Interval& iv, double tol = 1e-13);

/// Taylor polynomial sum_{k<=order} jet[k]/k! u^k in the local variable u = x - a.
Poly taylor_from_jet(std::span<const double> jet, int order);

/// Integral of |p| over iv, computed by splitting at real_roots. The zero
/// polynomial integrates to zero.
double abs_integral(const Poly& p, const Interval& iv, double tol = 1e-13);

}  // namespace heiswhit
